"""Builders for concrete algebras and their twisting endomorphisms.

Each finite builder returns ``(algebra, alpha)`` where ``alpha`` is an
algebra endomorphism, ready for :func:`homlie.homalg.twist`.  The Witt-type
family lives on an infinite basis and is handled by :class:`SparseAlgebra`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .exactla import ONE, ZERO, Matrix, inverse, matmul, rational, solve
from .homalg import (
    AlgebraError, FinAlgebra, HomAlgebra, LinearSelfMap, ad, commutator_algebra,
    exp_derivation, inner_automorphism, is_multiplicative, make_algebra, twist,
)


def _unit_matrix(n: int, i: int, j: int) -> Matrix:
    return Matrix.from_sparse(n, n, {(i, j): 1})


def _flatten(m: Matrix) -> list:
    return [v for r in m.to_rows() for v in r]


def algebra_from_matrix_basis(mats: Sequence[Matrix], labels: Sequence[str], commutator: bool = True) -> FinAlgebra:
    """Structure constants of a span of square matrices closed under the product
    (``commutator=False``) or the commutator bracket."""
    d = len(mats)
    coords = Matrix.from_columns([_flatten(m) for m in mats])
    c = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            p = matmul(a, b)
            if commutator:
                p = p - matmul(b, a)
            x = solve(coords, _flatten(p))
            if x is None:
                raise AlgebraError(f"span not closed: {labels[i]}*{labels[j]}")
            for k, v in enumerate(x):
                if v:
                    c[(i, j, k)] = v
    return make_algebra(d, labels, c)


def _nonzero(values, what="parameter"):
    vals = [rational(v) for v in values]
    if any(v == 0 for v in vals):
        raise AlgebraError(f"{what} must be nonzero")
    return vals


# -- Lie families --------------------------------------------------------------

def sl_basis(n: int):
    """``(labels, matrices, pairs)``: h_1..h_{n-1} first, then E_ij (i != j).

    ``pairs[k]`` is ``(i, j)`` (0-based) for the E_ij entries and ``None`` for h_i.
    """
    labels, mats, pairs = [], [], []
    for i in range(n - 1):
        labels.append("h" if n == 2 else f"h{i + 1}")
        mats.append(_unit_matrix(n, i, i) - _unit_matrix(n, i + 1, i + 1))
        pairs.append(None)
    for i, j in itertools.product(range(n), repeat=2):
        if i == j:
            continue
        if n == 2:
            labels.append("e" if i < j else "f")
        else:
            labels.append(f"E{i + 1}{j + 1}")
        mats.append(_unit_matrix(n, i, j))
        pairs.append((i, j))
    return labels, mats, pairs


def sl_n(n: int, lambdas: Sequence = ()) -> tuple[FinAlgebra, LinearSelfMap]:
    """sl(n) with the diagonal endomorphism scaling E_ij by a product of lambdas.

    ``lambdas`` has ``n - 1`` nonzero entries (defaults to all ones); e_i = E_{i,i+1}
    is scaled by ``lambdas[i]`` and f_i by its inverse.
    """
    if n < 2:
        raise AlgebraError("sl(n) needs n >= 2")
    lambdas = list(lambdas) or [ONE] * (n - 1)
    if len(lambdas) != n - 1:
        raise AlgebraError(f"sl({n}) needs {n - 1} parameters, got {len(lambdas)}")
    lam = _nonzero(lambdas)
    labels, mats, pairs = sl_basis(n)
    L = algebra_from_matrix_basis(mats, labels)
    scales = []
    for p in pairs:
        if p is None:
            scales.append(ONE)
            continue
        i, j = p
        prod = ONE
        for k in range(min(i, j), max(i, j)):
            prod *= lam[k]
        scales.append(prod if i < j else 1 / prod)
    alpha = LinearSelfMap.diag(scales)
    if not is_multiplicative(L, alpha):  # pragma: no cover - holds by construction
        raise AlgebraError("sl(n) scaling map is not a morphism")
    return L, alpha


def sl2(lam=1) -> tuple[FinAlgebra, LinearSelfMap]:
    return sl_n(2, [lam])


def heisenberg(l1=1, l2=1) -> tuple[FinAlgebra, LinearSelfMap]:
    """3-dimensional Heisenberg algebra (e, f, h) with alpha = diag(l1, l2, l1*l2)."""
    l1, l2 = _nonzero([l1, l2])
    mats = [_unit_matrix(3, 0, 1), _unit_matrix(3, 1, 2), _unit_matrix(3, 0, 2)]
    H = algebra_from_matrix_basis(mats, ["e", "f", "h"])
    alpha = LinearSelfMap.diag([l1, l2, l1 * l2])
    if not is_multiplicative(H, alpha):  # pragma: no cover
        raise AlgebraError("Heisenberg scaling map is not a morphism")
    return H, alpha


def abelian(n: int) -> FinAlgebra:
    return make_algebra(n, [f"x{i}" for i in range(n)], {})


def gl_n(n: int) -> FinAlgebra:
    """gl(n): the commutator algebra of the n x n matrices."""
    return commutator_algebra(matrix_algebra(n))


def matrix_hom_lie(n: int, x: Sequence[Sequence]) -> tuple[FinAlgebra, LinearSelfMap]:
    """gl(n) with the adjoint map ``g -> x g x^{-1}`` for a rational invertible ``x``."""
    X = Matrix(x)
    if X.shape != (n, n):
        raise AlgebraError(f"conjugating matrix must be {n}x{n}")
    inverse(X)  # raises on singular x
    M = matrix_algebra(n)
    alpha = inner_automorphism(M, _flatten(X))
    return gl_n(n), alpha


# -- associative families ------------------------------------------------------

def matrix_algebra(n: int) -> FinAlgebra:
    """M_n(Q) on E_ij (row-major), E_ij E_kl = delta_jk E_il."""
    if n < 1:
        raise AlgebraError("matrix algebra needs n >= 1")
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    c = {}
    for (i, j), a in idx.items():
        for l in range(n):
            c[(a, idx[(j, l)], idx[(i, l)])] = 1
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return make_algebra(n * n, labels, c)


def matrix_inner(n: int, u: Sequence[Sequence]) -> tuple[FinAlgebra, LinearSelfMap]:
    """M_n(Q) with conjugation by the invertible matrix ``u``."""
    M = matrix_algebra(n)
    U = Matrix(u)
    if U.shape != (n, n):
        raise AlgebraError(f"conjugating matrix must be {n}x{n}")
    return M, inner_automorphism(M, _flatten(U))


def matrix_exp_ad(n: int, i: int = 0, j: int = 1, t=1) -> tuple[FinAlgebra, LinearSelfMap]:
    """M_n(Q) with exp(ad(t E_ij)), i != j (0-based); ad of a nilpotent element."""
    if i == j:
        raise AlgebraError("E_ii is not nilpotent")
    M = matrix_algebra(n)
    x = [ZERO] * (n * n)
    x[i * n + j] = rational(t)
    return M, exp_derivation(M, ad(M, x))


def _check_group_table(table: Sequence[Sequence[int]]) -> int:
    """Validate a Cayley table; return the identity index."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise AlgebraError("Cayley table must be a non-empty square")
    if any(not (0 <= g < n) for r in table for g in r):
        raise AlgebraError("Cayley table entry out of range")
    ident = next((e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))), None)
    if ident is None:
        raise AlgebraError("Cayley table has no identity")
    for g in range(n):
        if not any(table[g][h] == ident and table[h][g] == ident for h in range(n)):
            raise AlgebraError(f"element {g} has no inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise AlgebraError(f"Cayley table not associative at {(a, b, c)}")
    return ident


def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def group_algebra(cayley: Sequence[Sequence[int]], endo: Sequence[int],
                  labels: Sequence[str] | None = None) -> tuple[FinAlgebra, LinearSelfMap]:
    """Group algebra Q[G] with the linear extension of a group endomorphism.

    ``endo[g]`` is the image of element ``g``.
    """
    _check_group_table(cayley)
    n = len(cayley)
    if len(endo) != n or any(not (0 <= g < n) for g in endo):
        raise AlgebraError("endomorphism must map each element to an element")
    for g, h in itertools.product(range(n), repeat=2):
        if endo[cayley[g][h]] != cayley[endo[g]][endo[h]]:
            raise AlgebraError(f"map is not a group morphism at {(g, h)}")
    if labels is None:
        labels = [f"g{g}" for g in range(n)]
    A = make_algebra(n, labels, {(g, h, cayley[g][h]): 1 for g in range(n) for h in range(n)})
    alpha = LinearSelfMap(Matrix.from_sparse(n, n, {(endo[g], g): 1 for g in range(n)}))
    return A, alpha


def cyclic_group_algebra(n: int, power: int = 1) -> tuple[FinAlgebra, LinearSelfMap]:
    """Q[C_n] with g -> g^power."""
    return group_algebra(cyclic_table(n), [(power * g) % n for g in range(n)])


def _poly_mul_trunc(p: list, q: list, d: int) -> list:
    out = [ZERO] * d
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q[: d - i]):
            out[i + j] += a * b
    return out


def truncated_poly(d: int, p_coeffs: Sequence) -> tuple[FinAlgebra, LinearSelfMap]:
    """Q[x]/(x^d) with the substitution x -> p(x).

    ``p_coeffs[k]`` is the coefficient of x^k; the constant term must vanish.
    """
    if d < 1:
        raise AlgebraError("truncation degree must be >= 1")
    p = [rational(v) for v in p_coeffs]
    if p and p[0] != 0:
        raise AlgebraError("substitution polynomial must have zero constant term")
    p = (p + [ZERO] * d)[:d]
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, d)]
    A = make_algebra(d, labels[:d], {(i, j, i + j): 1 for i in range(d) for j in range(d) if i + j < d})
    images = []
    power = [ONE] + [ZERO] * (d - 1)
    for _ in range(d):
        images.append(power)
        power = _poly_mul_trunc(power, p, d)
    alpha = LinearSelfMap.from_images(images)
    return A, alpha


# -- Witt-type line algebra ----------------------------------------------------

SparseVector = dict  # basis index -> Fraction, zero entries omitted


def _clean(v: dict) -> dict:
    return {k: x for k, x in v.items() if x}


def _axpy(out: dict, a, v: dict):
    for k, x in v.items():
        out[k] = out.get(k, ZERO) + a * x


@dataclass(frozen=True)
class SparseAlgebra:
    """A Lie algebra on a countable basis given by rules on basis indices."""

    bracket_rule: Callable[[int, int], dict]
    alpha_rule: Callable[[int], dict]
    index_domain: Callable[[int], bool]
    name: str = ""

    def basis(self, n: int) -> dict:
        if not self.index_domain(n):
            raise AlgebraError(f"basis index {n} outside the algebra")
        return {n: ONE}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for m, a in u.items():
            for n, b in v.items():
                _axpy(out, a * b, self.bracket_rule(m, n))
        return _clean(out)

    def alpha(self, u: dict) -> dict:
        out: dict = {}
        for n, a in u.items():
            _axpy(out, a, self.alpha_rule(n))
        return _clean(out)

    def twisted_bracket(self, u: dict, v: dict) -> dict:
        return self.alpha(self.bracket(u, v))

    def jacobi_defect(self, x: dict, y: dict, z: dict) -> dict:
        b = self.bracket
        out: dict = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            _axpy(out, ONE, b(p, b(q, r)))
        return _clean(out)

    def hom_jacobi_defect(self, x: dict, y: dict, z: dict) -> dict:
        """``[a x, [y, z]] + [a z, [x, y]] + [a y, [z, x]]`` for the twisted bracket."""
        b, a = self.twisted_bracket, self.alpha
        out: dict = {}
        for p, q, r in ((x, y, z), (z, x, y), (y, z, x)):
            _axpy(out, ONE, b(a(p), b(q, r)))
        return _clean(out)

    def multiplicativity_defect(self, x: dict, y: dict) -> dict:
        out = dict(self.alpha(self.bracket(x, y)))
        _axpy(out, -ONE, self.bracket(self.alpha(x), self.alpha(y)))
        return _clean(out)


def witt_line(lam=0) -> SparseAlgebra:
    """Vector fields t^{n+1} d/dt (n >= -1) with the shift t -> t + lam.

    Basis L_n with [L_m, L_n] = (n - m) L_{m+n} and
    alpha(L_n) = sum_k C(n+1, k) lam^(n+1-k) L_{k-1}.
    """
    lam = rational(lam)

    def domain(n: int) -> bool:
        return n >= -1

    def bracket_rule(m: int, n: int) -> dict:
        if not (domain(m) and domain(n)):
            raise AlgebraError(f"index below -1 requested: {(m, n)}")
        return {m + n: Fraction(n - m)} if n != m else {}

    def alpha_rule(n: int) -> dict:
        if not domain(n):
            raise AlgebraError(f"index below -1 requested: {n}")
        return _clean({k - 1: comb(n + 1, k) * lam ** (n + 1 - k) for k in range(n + 2)})

    return SparseAlgebra(bracket_rule, alpha_rule, domain, name=f"witt_line({lam})")


def window_report(W: SparseAlgebra, lo: int = -1, hi: int = 6) -> dict:
    """Check Jacobi, Hom-Jacobi and multiplicativity on every basis triple/pair in a window.

    Returns counts of checked and failing cases plus the first failure of each kind.
    """
    idx = range(lo, hi + 1)
    rep = {"window": (lo, hi), "triples": 0, "pairs": 0,
           "jacobi_failures": [], "hom_jacobi_failures": [], "multiplicative_failures": []}
    for m, n in itertools.product(idx, repeat=2):
        rep["pairs"] += 1
        if W.multiplicativity_defect(W.basis(m), W.basis(n)):
            rep["multiplicative_failures"].append((m, n))
    for m, n, p in itertools.product(idx, repeat=3):
        rep["triples"] += 1
        x, y, z = W.basis(m), W.basis(n), W.basis(p)
        if W.jacobi_defect(x, y, z):
            rep["jacobi_failures"].append((m, n, p))
        if W.hom_jacobi_defect(x, y, z):
            rep["hom_jacobi_failures"].append((m, n, p))
    return rep


# -- shortcuts ------------------------------------------------------------------

def twisted(builder_output) -> HomAlgebra:
    """Convenience: ``twist(*builder(...))``."""
    A, alpha = builder_output
    return twist(A, alpha)
