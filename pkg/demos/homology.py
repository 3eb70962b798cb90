"""Twisted Chevalley-Eilenberg homology of small Hom-Lie algebras."""
from homlie import families
from homlie.homalg import HomAlgebra, LinearSelfMap
from homlie.homology import build_ce_complex, h0_dim, homology_table, make_module


def show(name, L, mode):
    M = make_module(L, mode)
    rows = homology_table(build_ce_complex(L, M))
    print(f"{name}, {mode} coefficients")
    for r in rows:
        print(f"  H_{r['degree']}: {r['homology_dim']}   (chain dim {r['chain_dim']}, rank d {r['rank_d']})")
    print("  H_0 from the action matrix:", h0_dim(L, M))


# classical limits first: alpha = Id recovers ordinary Lie algebra homology
for name, A in (("abelian(3)", families.abelian(3)), ("sl(2)", families.sl2()[0]),
                ("Heisenberg", families.heisenberg()[0])):
    show(name, HomAlgebra(A, LinearSelfMap.identity(A.dim)), "trivial")

# then genuinely twisted ones
show("sl(2), lambda = 2", families.twisted(families.sl2(2)), "adjoint")
show("Heisenberg, (2, 3)", families.twisted(families.heisenberg(2, 3)), "adjoint")

# degree cap for bigger algebras; the top row is then only an upper bound
L = families.twisted(families.sl_n(3, [2, 3]))
rows = homology_table(build_ce_complex(L, make_module(L, "adjoint"), max_degree=2))
print("sl(3) twisted, first degrees:", [(r["homology_dim"], r["truncated"]) for r in rows])
