"""Hom-Yang-Baxter operators on K + L and the braid relations they induce."""
from homlie import families
from homlie.exactla import det
from homlie.homalg import HomAlgebra, LinearSelfMap
from homlie.hybe import (
    braid_operators, build_B_alpha, check_braid_relations, check_hybe, is_invertible_operator,
)

cases = {
    "sl(2), lambda = 2": families.twisted(families.sl2(2)),
    "Heisenberg (2, 3)": families.twisted(families.heisenberg(2, 3)),
    "abelian(3)": HomAlgebra(families.abelian(3), LinearSelfMap.identity(3)),
}
for name, L in cases.items():
    B = build_B_alpha(L)
    ops = braid_operators(B, 3)
    print(f"{name}: B is {B.matrix.rows}x{B.matrix.cols}, HYBE {check_hybe(B)}, "
          f"braid relations on 3 strands {check_braid_relations(ops)}, "
          f"det alpha {det(L.alpha.matrix)}, invertible {is_invertible_operator(B)}")

# four strands for sl(2): three generators, 256x256 each
ops = braid_operators(build_B_alpha(cases["sl(2), lambda = 2"]), 4)
print("sl(2) on 4 strands:", check_braid_relations(ops))

# a nilpotent twisting map still satisfies the HYBE but B is singular
B = build_B_alpha(HomAlgebra(families.abelian(2), LinearSelfMap.from_images([[0, 0], [1, 0]])))
print("nilpotent alpha: HYBE", check_hybe(B), "invertible", is_invertible_operator(B))
