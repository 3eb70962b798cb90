"""Hom-Yang-Baxter operators and braid-group operators from Hom-Lie algebras.

The carrier is ``K (+) L`` with basis ``(1, 0), (0, e_1), ..., (0, e_n)`` and
twisting map ``Id (+) alpha``.  Tensor powers use the Kronecker index
convention of :func:`homlie.exactla.kronecker`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactla import Matrix, kronecker, kronecker_all, mat_rank, matmul
from .homalg import AlgebraError, HomAlgebra, LinearSelfMap, is_hom_lie

MAX_OPERATOR_ROWS = 10_000


class HybeError(ValueError):
    pass


@dataclass(frozen=True)
class HybeOperator:
    carrier_dim: int
    strands: int
    matrix: Matrix
    alpha_ext: LinearSelfMap

    def commutes_with_alpha(self) -> bool:
        a = kronecker_all([self.alpha_ext.matrix] * self.strands)
        return matmul(self.matrix, a) == matmul(a, self.matrix)


def extended_alpha(L: HomAlgebra) -> LinearSelfMap:
    """``Id (+) alpha`` on ``K (+) L``."""
    n = L.dim
    entries = {(0, 0): 1}
    for i, j, v in L.alpha.matrix.nonzero():
        entries[(1 + i, 1 + j)] = v
    return LinearSelfMap(Matrix.from_sparse(n + 1, n + 1, entries))


def swap_operator(dim: int) -> Matrix:
    """The flip ``u (x) v -> v (x) u`` on a ``dim``-dimensional space."""
    return Matrix.from_sparse(dim * dim, dim * dim,
                              {(j * dim + i, i * dim + j): 1 for i in range(dim) for j in range(dim)})


def build_B_alpha(L: HomAlgebra, check: bool = True) -> HybeOperator:
    """``B((a,x) (x) (b,y)) = (b, alpha y) (x) (a, alpha x) + (1,0) (x) (0, [x,y])``."""
    if check and not is_hom_lie(L.algebra, L.alpha):
        raise AlgebraError("algebra is not Hom-Lie")
    n = L.dim
    N = n + 1
    A = extended_alpha(L)
    B = matmul(kronecker(A.matrix, A.matrix), swap_operator(N))
    extra = {}
    for x, y, k, v in L.algebra.entries():
        extra[(1 + k, (1 + x) * N + (1 + y))] = v
    B = B + Matrix.from_sparse(N * N, N * N, extra)
    op = HybeOperator(N, 2, B, A)
    if check and not op.commutes_with_alpha():
        raise HybeError("operator does not commute with alpha (x) alpha; is alpha multiplicative?")
    return op


def _hybe_sides(B: HybeOperator):
    a = B.alpha_ext.matrix
    aB = kronecker(a, B.matrix)
    Ba = kronecker(B.matrix, a)
    return matmul(aB, matmul(Ba, aB)), matmul(Ba, matmul(aB, Ba))


def check_hybe(B: HybeOperator) -> bool:
    """``(a(x)B)(B(x)a)(a(x)B) == (B(x)a)(a(x)B)(B(x)a)`` exactly."""
    if B.strands != 2:
        raise HybeError(f"HYBE is stated for 2-strand operators, got {B.strands}")
    lhs, rhs = _hybe_sides(B)
    return lhs == rhs


def braid_operators(B: HybeOperator, n: int, check: bool = True) -> list[HybeOperator]:
    """``B_i = a^(i-1) (x) B (x) a^(n-i-1)`` for ``1 <= i <= n-1``."""
    if n < 2:
        raise HybeError("need at least 2 strands")
    if B.carrier_dim ** n > MAX_OPERATOR_ROWS:
        raise HybeError(f"{B.carrier_dim}^{n} rows exceeds the limit of {MAX_OPERATOR_ROWS}")
    if check and not check_hybe(B):
        raise HybeError("operator does not satisfy the HYBE")
    a = B.alpha_ext.matrix
    ops = []
    for i in range(1, n):
        factors = [a] * (i - 1) + [B.matrix] + [a] * (n - i - 1)
        ops.append(HybeOperator(B.carrier_dim, n, kronecker_all(factors), B.alpha_ext))
    return ops


def braid_relation_failures(ops: list[HybeOperator]) -> list[tuple]:
    """Pairs ``(i, j)`` (1-based) violating the braid or far-commutation relation."""
    shapes = {op.matrix.shape for op in ops}
    if len(shapes) > 1:
        raise HybeError(f"operators act on different spaces: {sorted(shapes)}")
    bad = []
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            P, Q = ops[i].matrix, ops[j].matrix
            if j == i + 1:
                ok = matmul(P, matmul(Q, P)) == matmul(Q, matmul(P, Q))
            else:
                ok = matmul(P, Q) == matmul(Q, P)
            if not ok:
                bad.append((i + 1, j + 1))
    return bad


def check_braid_relations(ops: list[HybeOperator]) -> bool:
    return not braid_relation_failures(ops)


def is_invertible_operator(B: HybeOperator) -> bool:
    return mat_rank(B.matrix) == B.matrix.rows
