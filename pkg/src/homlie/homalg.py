"""Finite-dimensional algebras by structure constants and their Hom-twists.

An algebra of dimension ``n`` is stored as a tensor ``c[i][j][k]``: the
coefficient of ``e_k`` in ``e_i * e_j``.  A linear self-map is stored as a
square matrix whose columns are the images of the basis vectors.

All axiom checks run over basis triples; every axiom involved is
multilinear, so this is a complete check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactla import (
    ONE, ZERO, Matrix, basis_vector, matmul, rational, solve, vector, zero_vector,
)

Vector = tuple  # tuple of Fractions


class AlgebraError(ValueError):
    """Raised when an algebra or map fails a structural precondition."""


# -- algebras -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinAlgebra:
    dim: int
    basis_labels: tuple
    c: tuple
    _products: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # sparse basis products: _products[i][j] = ((k, c_ijk), ...)
        prods = tuple(
            tuple(tuple((k, v) for k, v in enumerate(self.c[i][j]) if v) for j in range(self.dim))
            for i in range(self.dim)
        )
        object.__setattr__(self, "_products", prods)

    def __eq__(self, other):
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return (self.dim, self.basis_labels, self.c) == (other.dim, other.basis_labels, other.c)

    def __hash__(self):
        return hash((self.dim, self.basis_labels, self.c))

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def basis(self, i) -> Vector:
        if isinstance(i, str):
            i = self.index(i)
        return basis_vector(self.dim, i)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        return apply_mul(self, x, y)

    def entries(self):
        """Yield ``(i, j, k, value)`` for the nonzero structure constants."""
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self._products[i][j]:
                    yield i, j, k, v

    def format_vector(self, v: Sequence) -> str:
        terms = []
        for k, x in enumerate(v):
            if x:
                coef = "" if x == 1 else "-" if x == -1 else f"{x}*"
                terms.append(f"{coef}{self.basis_labels[k]}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def make_algebra(dim: int, labels: Sequence[str] | None, c) -> FinAlgebra:
    """Validate and build a :class:`FinAlgebra`.

    ``c`` is either a nested ``dim x dim x dim`` sequence or a mapping
    ``{(i, j, k): value}`` listing only the nonzero constants.
    """
    if labels is None:
        labels = [f"e{i}" for i in range(dim)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != dim:
        raise AlgebraError(f"{len(labels)} labels for dimension {dim}")
    if len(set(labels)) != dim:
        raise AlgebraError("basis labels must be distinct")
    if hasattr(c, "items"):
        t = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in c.items():
            if not all(0 <= x < dim for x in (i, j, k)):
                raise AlgebraError(f"structure index {(i, j, k)} out of range for dim {dim}")
            t[i][j][k] += rational(v)
        tensor = tuple(tuple(tuple(row) for row in plane) for plane in t)
    else:
        if len(c) != dim or any(len(p) != dim or any(len(r) != dim for r in p) for p in c):
            raise AlgebraError(f"structure tensor is not {dim}x{dim}x{dim}")
        tensor = tuple(tuple(vector(r) for r in p) for p in c)
    return FinAlgebra(dim, labels, tensor)


def _check_len(A: FinAlgebra, *vs):
    for v in vs:
        if len(v) != A.dim:
            raise AlgebraError(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")


def apply_mul(A: FinAlgebra, x: Sequence, y: Sequence) -> Vector:
    """Bilinear product of two coordinate vectors."""
    _check_len(A, x, y)
    out = [ZERO] * A.dim
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if not a:
            continue
        row = A._products[i]
        for j, b in ys:
            ab = rational(a) * rational(b)
            for k, v in row[j]:
                out[k] += ab * v
    return tuple(out)


def add(*vs: Sequence) -> Vector:
    return tuple(sum(xs, ZERO) for xs in zip(*vs))


def sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(a, x: Sequence) -> Vector:
    a = rational(a)
    return tuple(a * v for v in x)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


# -- linear self-maps ---------------------------------------------------------

@dataclass(frozen=True)
class LinearSelfMap:
    """A square matrix; column ``j`` is the image of ``e_j``."""

    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_square():
            raise AlgebraError(f"self-map must be square, got {self.matrix.shape}")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @classmethod
    def identity(cls, n: int) -> "LinearSelfMap":
        return cls(Matrix.identity(n))

    @classmethod
    def diag(cls, values) -> "LinearSelfMap":
        return cls(Matrix.diag(values))

    @classmethod
    def from_images(cls, images: Sequence[Sequence]) -> "LinearSelfMap":
        return cls(Matrix.from_columns(images, nrows=len(images)))

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def image(self, j: int) -> Vector:
        return self.matrix.col(j)

    def compose(self, other: "LinearSelfMap") -> "LinearSelfMap":
        """``self o other``."""
        return LinearSelfMap(matmul(self.matrix, other.matrix))

    def power(self, k: int) -> "LinearSelfMap":
        return LinearSelfMap(self.matrix.power(k))

    def __add__(self, other):
        return LinearSelfMap(self.matrix + other.matrix)

    def __sub__(self, other):
        return LinearSelfMap(self.matrix - other.matrix)

    def __neg__(self):
        return LinearSelfMap(-self.matrix)

    def scale(self, a) -> "LinearSelfMap":
        return LinearSelfMap(self.matrix.scale(a))

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.dim)


def as_map(alpha) -> LinearSelfMap:
    if isinstance(alpha, LinearSelfMap):
        return alpha
    if isinstance(alpha, Matrix):
        return LinearSelfMap(alpha)
    return LinearSelfMap(Matrix(alpha))


def _check_map(A: FinAlgebra, alpha: LinearSelfMap):
    if alpha.dim != A.dim:
        raise AlgebraError(f"map of dimension {alpha.dim} on a {A.dim}-dimensional algebra")


# -- subgroups of S3 ----------------------------------------------------------

def _sign(p: tuple) -> int:
    inv = sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b])
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class SubgroupS3:
    """A subgroup of the symmetric group on three letters.

    ``elements`` holds ``(perm, sign)`` with ``perm[i]`` the 0-based image
    of ``i``, so ``x_{sigma(1)}`` is ``xs[perm[0]]``.
    """

    tag: str
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _subgroup(tag, perms) -> SubgroupS3:
    return SubgroupS3(tag, tuple((p, _sign(p)) for p in perms))


_ID = (0, 1, 2)
SUBGROUPS = {
    "E": _subgroup("E", [_ID]),
    "T12": _subgroup("T12", [_ID, (1, 0, 2)]),
    "T13": _subgroup("T13", [_ID, (2, 1, 0)]),
    "T23": _subgroup("T23", [_ID, (0, 2, 1)]),
    "A3": _subgroup("A3", [_ID, (1, 2, 0), (2, 0, 1)]),
    "S3": _subgroup("S3", list(itertools.permutations(range(3)))),
}
_ALIASES = {"e": "E", "1": "E", "12": "T12", "13": "T13", "23": "T23", "a3": "A3", "s3": "S3"}


def subgroup(tag: str | SubgroupS3) -> SubgroupS3:
    """Look up a subgroup by tag (``E, T12, T13, T23, A3, S3`` or CLI aliases)."""
    if isinstance(tag, SubgroupS3):
        return tag
    key = _ALIASES.get(tag.lower(), tag.upper())
    try:
        return SUBGROUPS[key]
    except KeyError:
        raise ValueError(f"unknown subgroup {tag!r}") from None


# -- axiom checks -------------------------------------------------------------

def is_multiplicative(A: FinAlgebra, alpha) -> bool:
    alpha = as_map(alpha)
    _check_map(A, alpha)
    return multiplicativity_counterexample(A, alpha) is None


def multiplicativity_counterexample(A: FinAlgebra, alpha):
    """First basis pair ``(i, j)`` with alpha(e_i e_j) != alpha(e_i) alpha(e_j), or None."""
    alpha = as_map(alpha)
    _check_map(A, alpha)
    imgs = [alpha.image(i) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            if alpha(A.c[i][j]) != apply_mul(A, imgs[i], imgs[j]):
                return (i, j)
    return None


def is_skew_symmetric(A: FinAlgebra) -> bool:
    n = A.dim
    return all(A.c[i][j][k] == -A.c[j][i][k] for i in range(n) for j in range(n) for k in range(n))


def hom_assoc_defect(A: FinAlgebra, alpha, G, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """Signed sum over ``G`` of ``(x_s1 x_s2) a(x_s3) - a(x_s1)(x_s2 x_s3)``."""
    alpha = as_map(alpha)
    _check_map(A, alpha)
    _check_len(A, x, y, z)
    xs = (vector(x), vector(y), vector(z))
    out = zero_vector(A.dim)
    for perm, sign in subgroup(G):
        a, b, c = (xs[p] for p in perm)
        term = sub(apply_mul(A, apply_mul(A, a, b), alpha(c)), apply_mul(A, alpha(a), apply_mul(A, b, c)))
        out = add(out, term) if sign > 0 else sub(out, term)
    return out


def hom_assoc_counterexample(A: FinAlgebra, alpha, G):
    """Lowest lexicographic basis triple ``(i, j, k)`` violating the G-axiom.

    Returns ``((i, j, k), defect)`` or ``None``.
    """
    alpha = as_map(alpha)
    _check_map(A, alpha)
    G = subgroup(G)
    n = A.dim
    imgs = [alpha.image(i) for i in range(n)]
    # (e_p e_q) a(e_r) and a(e_p)(e_q e_r) are reused across permutations
    left: dict = {}
    right: dict = {}

    def lterm(p, q, r):
        key = (p, q, r)
        if key not in left:
            left[key] = apply_mul(A, A.c[p][q], imgs[r])
        return left[key]

    def rterm(p, q, r):
        key = (p, q, r)
        if key not in right:
            right[key] = apply_mul(A, imgs[p], A.c[q][r])
        return right[key]

    for triple in itertools.product(range(n), repeat=3):
        out = [ZERO] * n
        for perm, sign in G:
            p, q, r = (triple[s] for s in perm)
            lt, rt = lterm(p, q, r), rterm(p, q, r)
            for k in range(n):
                out[k] += sign * (lt[k] - rt[k])
        if any(out):
            return triple, tuple(out)
    return None


def is_g_hom_associative(A: FinAlgebra, alpha, G) -> bool:
    return hom_assoc_counterexample(A, alpha, G) is None


def is_hom_lie(L: FinAlgebra, alpha) -> bool:
    return is_skew_symmetric(L) and is_g_hom_associative(L, alpha, "A3")


# -- constructions ------------------------------------------------------------

@dataclass(frozen=True)
class HomAlgebra:
    """An algebra with its twisting map.

    Constructing this directly performs no checks; use :func:`twist` for the
    validated path.  ``provenance`` is ``(untwisted algebra, twisting map)``
    when built by :func:`twist`.
    """

    algebra: FinAlgebra
    alpha: LinearSelfMap
    provenance: tuple | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def bracket(self, x, y) -> Vector:
        return apply_mul(self.algebra, x, y)


def twisted_product(A: FinAlgebra, alpha) -> FinAlgebra:
    """The algebra with product ``alpha o mu`` (no multiplicativity check)."""
    alpha = as_map(alpha)
    _check_map(A, alpha)
    n = A.dim
    c = tuple(tuple(alpha(A.c[i][j]) for j in range(n)) for i in range(n))
    return FinAlgebra(n, A.basis_labels, c)


def twist(A: FinAlgebra, alpha) -> HomAlgebra:
    """Deform ``A`` along the endomorphism ``alpha``: product becomes ``alpha o mu``.

    Refuses maps that are not multiplicative for ``A``.
    """
    alpha = as_map(alpha)
    _check_map(A, alpha)
    bad = multiplicativity_counterexample(A, alpha)
    if bad is not None:
        i, j = bad
        raise AlgebraError(
            f"map is not multiplicative: fails on ({A.basis_labels[i]}, {A.basis_labels[j]})")
    At = twisted_product(A, alpha)
    if not is_multiplicative(At, alpha):  # pragma: no cover - guaranteed when the check above passes
        raise AlgebraError("twisted product lost multiplicativity")
    return HomAlgebra(At, alpha, provenance=(A, alpha))


def commutator_algebra(A: FinAlgebra) -> FinAlgebra:
    n = A.dim
    c = tuple(
        tuple(tuple(A.c[i][j][k] - A.c[j][i][k] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return FinAlgebra(n, A.basis_labels, c)


def is_algebra_morphism(A: FinAlgebra, B: FinAlgebra, f: Matrix) -> bool:
    """``f(xy) = f(x) f(y)`` on basis pairs; ``f`` is ``dim B x dim A``."""
    if f.shape != (B.dim, A.dim):
        raise AlgebraError(f"morphism matrix of shape {f.shape}, expected {(B.dim, A.dim)}")
    imgs = f.columns()
    return all(
        f.apply(A.c[i][j]) == apply_mul(B, imgs[i], imgs[j])
        for i in range(A.dim) for j in range(A.dim)
    )


def left_mult_matrix(A: FinAlgebra, u: Sequence) -> Matrix:
    """Matrix of ``x -> u x``."""
    return Matrix.from_columns([apply_mul(A, u, A.basis(j)) for j in range(A.dim)], nrows=A.dim)


def right_mult_matrix(A: FinAlgebra, u: Sequence) -> Matrix:
    """Matrix of ``x -> x u``."""
    return Matrix.from_columns([apply_mul(A, A.basis(j), u) for j in range(A.dim)], nrows=A.dim)


def ad(A: FinAlgebra, x: Sequence) -> LinearSelfMap:
    """``y -> xy - yx``."""
    return LinearSelfMap(left_mult_matrix(A, x) - right_mult_matrix(A, x))


def is_derivation(A: FinAlgebra, D) -> bool:
    D = as_map(D)
    _check_map(A, D)
    imgs = [D.image(i) for i in range(A.dim)]
    basis = [A.basis(i) for i in range(A.dim)]
    return all(
        D(A.c[i][j]) == add(apply_mul(A, imgs[i], basis[j]), apply_mul(A, basis[i], imgs[j]))
        for i in range(A.dim) for j in range(A.dim)
    )


def nilpotency_index(D, bound: int) -> int | None:
    """Smallest ``k <= bound`` with ``D^k = 0``, or None."""
    D = as_map(D)
    P = LinearSelfMap.identity(D.dim)
    for k in range(1, bound + 1):
        P = P.compose(D)
        if P.matrix.is_zero():
            return k
    return None


def exp_derivation(A: FinAlgebra, D) -> LinearSelfMap:
    """``exp D`` for a nilpotent derivation, as the exact finite sum."""
    D = as_map(D)
    _check_map(A, D)
    if not is_derivation(A, D):
        raise AlgebraError("map is not a derivation")
    k = nilpotency_index(D, A.dim + 1)
    if k is None:
        raise AlgebraError(f"derivation is not nilpotent within {A.dim + 1} steps")
    total = LinearSelfMap.identity(A.dim)
    P = LinearSelfMap.identity(A.dim)
    for i in range(1, k):
        P = P.compose(D)
        total = total + P.scale(Fraction(1, factorial(i)))
    if not is_multiplicative(A, total):  # pragma: no cover - exp of a derivation is an automorphism
        raise AlgebraError("exp(D) is not multiplicative")
    return total


def find_unit(A: FinAlgebra) -> Vector | None:
    """Two-sided unit, found by solving ``1 e_i = e_i 1 = e_i`` linearly."""
    n = A.dim
    # unknown u: sum_k u_k c[k][i][l] = delta_il and sum_k u_k c[i][k][l] = delta_il
    rows, rhs = [], []
    for i in range(n):
        for l in range(n):
            rows.append([A.c[k][i][l] for k in range(n)])
            rhs.append(ONE if i == l else ZERO)
            rows.append([A.c[i][k][l] for k in range(n)])
            rhs.append(ONE if i == l else ZERO)
    return solve(Matrix(rows, shape=(len(rows), n)), rhs)


def element_inverse(A: FinAlgebra, u: Sequence, unit: Sequence | None = None) -> Vector:
    if unit is None:
        unit = find_unit(A)
        if unit is None:
            raise AlgebraError("algebra has no unit")
    v = solve(left_mult_matrix(A, u), unit)
    if v is None or apply_mul(A, v, u) != tuple(unit):
        raise AlgebraError("element is not invertible")
    return v


def inner_automorphism(A: FinAlgebra, u: Sequence) -> LinearSelfMap:
    """Conjugation ``x -> u x u^{-1}``."""
    u = vector(u)
    _check_len(A, u)
    unit = find_unit(A)
    if unit is None:
        raise AlgebraError("algebra has no unit")
    v = element_inverse(A, u, unit)
    images = [apply_mul(A, apply_mul(A, u, A.basis(j)), v) for j in range(A.dim)]
    alpha = LinearSelfMap.from_images(images)
    if not is_multiplicative(A, alpha):  # pragma: no cover - conjugation is an automorphism
        raise AlgebraError("conjugation map is not multiplicative")
    return alpha
