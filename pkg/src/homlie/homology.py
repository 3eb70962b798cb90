"""Hom-modules over Hom-Lie algebras and the twisted Chevalley-Eilenberg complex.

Chains in degree p are ``M (x) Lambda^p L``.  The basis of ``Lambda^p L`` is
the strictly increasing index tuples in lexicographic order, and a chain
basis element ``m_a (x) e_S`` has index ``a * C(n, p) + rank(S)``.

The boundary of ``m (x) x_1 ^ ... ^ x_p`` is::

    sum_i (-1)^(i+1) (m x_i) (x) a(x_1 ... ^x_i ... x_p)
  + sum_{i<j} (-1)^(i+j) aM(m) (x) [x_i, x_j] ^ a(x_1 ... ^x_i ... ^x_j ... x_p)

Only the leftover factors are twisted by ``a``; the bracket ``[x_i, x_j]`` is not.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactla import ONE, ZERO, Matrix, mat_rank, matmul, rational
from .homalg import AlgebraError, HomAlgebra, LinearSelfMap, as_map, is_hom_lie


class ModuleAxiomError(AlgebraError):
    pass


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class HomModule:
    """Right Hom-module: ``action[a][i][b]`` is the coefficient of m_b in m_a . e_i."""

    m_dim: int
    alpha_M: LinearSelfMap
    action: tuple
    labels: tuple = ()

    def act(self, m: Sequence, x: Sequence) -> tuple:
        out = [ZERO] * self.m_dim
        for a, ma in enumerate(m):
            if not ma:
                continue
            for i, xi in enumerate(x):
                if not xi:
                    continue
                s = rational(ma) * rational(xi)
                for b, v in enumerate(self.action[a][i]):
                    if v:
                        out[b] += s * v
        return tuple(out)

    def action_matrix(self) -> Matrix:
        """Matrix of ``M (x) L -> M``; column ``a * dim L + i`` is m_a . e_i."""
        n = len(self.action[0]) if self.m_dim else 0
        entries = {}
        for a in range(self.m_dim):
            for i in range(n):
                for b, v in enumerate(self.action[a][i]):
                    if v:
                        entries[(b, a * n + i)] = v
        return Matrix.from_sparse(self.m_dim, self.m_dim * n, entries)


def _as_tensor(data, m_dim, n):
    if len(data) != m_dim or any(len(data[a]) != n or any(len(r) != m_dim for r in data[a]) for a in range(m_dim)):
        raise AlgebraError(f"action tensor must be {m_dim}x{n}x{m_dim}")
    return tuple(tuple(tuple(rational(v) for v in data[a][i]) for i in range(n)) for a in range(m_dim))


def hom_module_failures(L: HomAlgebra, M: HomModule, first_only: bool = False) -> list:
    """All basis violations of the two Hom-module axioms.

    Entries are ``(axiom, indices, lhs, rhs)``.  Axiom 1 is
    ``aM(m)[x, y] = (m x) a(y) - (m y) a(x)`` over ``(m, x, y)``; axiom 2 is
    ``aM(m x) = aM(m) a(x)`` over ``(m, x)``.
    """
    n = L.dim
    if M.alpha_M.dim != M.m_dim:
        raise AlgebraError("module map dimension does not match module")
    if len(M.action) != M.m_dim or any(len(r) != n for r in M.action):
        raise AlgebraError(f"action tensor does not match algebra dimension {n}")
    aL, aM = L.alpha, M.alpha_M
    mbasis = [tuple(ONE if b == a else ZERO for b in range(M.m_dim)) for a in range(M.m_dim)]
    lbasis = [L.algebra.basis(i) for i in range(n)]
    out = []
    for a, i, j in itertools.product(range(M.m_dim), range(n), range(n)):
        m, x, y = mbasis[a], lbasis[i], lbasis[j]
        lhs = M.act(aM(m), L.bracket(x, y))
        mx_ay = M.act(M.act(m, x), aL(y))
        my_ax = M.act(M.act(m, y), aL(x))
        rhs = tuple(p - q for p, q in zip(mx_ay, my_ax))
        if lhs != rhs:
            out.append((1, (a, i, j), lhs, rhs))
            if first_only:
                return out
    for a, i in itertools.product(range(M.m_dim), range(n)):
        m, x = mbasis[a], lbasis[i]
        lhs = aM(M.act(m, x))
        rhs = M.act(aM(m), aL(x))
        if lhs != rhs:
            out.append((2, (a, i), lhs, rhs))
            if first_only:
                return out
    return out


def check_hom_module(L: HomAlgebra, M: HomModule) -> bool:
    return not hom_module_failures(L, M, first_only=True)


def make_module(L: HomAlgebra, mode="adjoint", alpha_M=None) -> HomModule:
    """``mode`` is ``"adjoint"``, ``"trivial"`` or an explicit action tensor (with ``alpha_M``)."""
    n = L.dim
    if isinstance(mode, str):
        if mode == "adjoint":
            return HomModule(n, L.alpha, L.algebra.c, L.algebra.basis_labels)
        if mode == "trivial":
            return HomModule(1, LinearSelfMap.identity(1), ((tuple([ZERO]),) * n,), ("1",))
        raise ValueError(f"unknown module mode {mode!r}")
    if alpha_M is None:
        raise ValueError("explicit module data needs alpha_M")
    alpha_M = as_map(alpha_M)
    M = HomModule(alpha_M.dim, alpha_M, _as_tensor(mode, alpha_M.dim, n))
    bad = hom_module_failures(L, M, first_only=True)
    if bad:
        axiom, idx, _, _ = bad[0]
        raise ModuleAxiomError(f"Hom-module axiom {axiom} fails at basis indices {idx}")
    return M


# -- exterior algebra helpers ----------------------------------------------------

def wedge_basis(n: int, p: int) -> list[tuple]:
    return list(itertools.combinations(range(n), p))


def insert_sorted(k: int, T: tuple):
    """``e_k ^ e_T`` as ``(sign, sorted tuple)``, or ``None`` if k is in T."""
    if k in T:
        return None
    pos = sum(1 for t in T if t < k)
    return (-1 if pos % 2 else 1), T[:pos] + (k,) + T[pos:]


def append_sorted(T: tuple, k: int):
    """``e_T ^ e_k`` as ``(sign, sorted tuple)``, or ``None`` if k is in T."""
    if k in T:
        return None
    pos = sum(1 for t in T if t < k)
    return (-1 if (len(T) - pos) % 2 else 1), T[:pos] + (k,) + T[pos:]


def compound_images(alpha: LinearSelfMap, q: int) -> dict:
    """``Lambda^q alpha`` as ``{S: {T: coef}}`` for sorted q-tuples S, T."""
    n = alpha.dim
    cols = [{k: v for k, v in enumerate(alpha.image(j)) if v} for j in range(n)]
    out = {}
    for S in itertools.combinations(range(n), q):
        acc = {(): ONE}
        for s in S:
            nxt: dict = {}
            for T, c in acc.items():
                for k, v in cols[s].items():
                    ins = append_sorted(T, k)
                    if ins is None:
                        continue
                    sign, T2 = ins
                    nxt[T2] = nxt.get(T2, ZERO) + sign * c * v
            acc = {T: c for T, c in nxt.items() if c}
        out[S] = acc
    return out


# -- chain complex -------------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Chain groups C_0..C_N with ``boundaries[p-1] = d_p : C_p -> C_{p-1}``."""

    dims: tuple
    boundaries: tuple
    basis_index: tuple = ()
    truncated: bool = False
    _ranks: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, p: int) -> Matrix:
        return self.boundaries[p - 1]

    def rank(self, p: int) -> int:
        """Rank of d_p; zero outside 1..N."""
        if p < 1 or p > self.top:
            return 0
        if p not in self._ranks:
            self._ranks[p] = mat_rank(self.d(p))
        return self._ranks[p]


def build_ce_complex(L: HomAlgebra, M: HomModule, max_degree: int | None = None,
                     check: bool = True) -> ChainComplex:
    n = L.dim
    if check:
        if not is_hom_lie(L.algebra, L.alpha):
            raise AlgebraError("algebra is not Hom-Lie")
        bad = hom_module_failures(L, M, first_only=True)
        if bad:
            raise ModuleAxiomError(f"Hom-module axiom {bad[0][0]} fails at basis indices {bad[0][1]}")
    top = n if max_degree is None else min(max_degree, n)
    truncated = top < n
    bases = [wedge_basis(n, p) for p in range(top + 1)]
    index = [{T: r for r, T in enumerate(B)} for B in bases]
    compounds = [compound_images(L.alpha, q) for q in range(max(top - 1, 0) + 1)]
    c = L.algebra.c
    brackets = [[{k: v for k, v in enumerate(c[i][j]) if v} for j in range(n)] for i in range(n)]
    acts = [[{b: v for b, v in enumerate(M.action[a][i]) if v} for i in range(n)] for a in range(M.m_dim)]
    am = [{b: v for b, v in enumerate(M.alpha_M.image(a)) if v} for a in range(M.m_dim)]

    boundaries = []
    for p in range(1, top + 1):
        nsrc, ntgt = len(bases[p]), len(bases[p - 1])
        entries: dict = {}

        def put(b, T, col, val):
            key = (b * ntgt + index[p - 1][T], col)
            entries[key] = entries.get(key, ZERO) + val

        for a in range(M.m_dim):
            for S in bases[p]:
                col = a * nsrc + index[p][S]
                for i in range(p):
                    sign = -1 if i % 2 else 1
                    rest = S[:i] + S[i + 1:]
                    for b, mv in acts[a][S[i]].items():
                        for T, tv in compounds[p - 1][rest].items():
                            put(b, T, col, sign * mv * tv)
                for i, j in itertools.combinations(range(p), 2):
                    sign = -1 if (i + j) % 2 else 1
                    rest = S[:i] + S[i + 1:j] + S[j + 1:]
                    for k, kv in brackets[S[i]][S[j]].items():
                        for T, tv in compounds[p - 2][rest].items():
                            ins = insert_sorted(k, T)
                            if ins is None:
                                continue
                            s2, T2 = ins
                            for b, mv in am[a].items():
                                put(b, T2, col, sign * s2 * kv * tv * mv)
        boundaries.append(Matrix.from_sparse(M.m_dim * ntgt, M.m_dim * nsrc, entries))

    dims = tuple(M.m_dim * len(B) for B in bases)
    basis_index = tuple(tuple((a, T) for a in range(M.m_dim) for T in B) for B in bases)
    return ChainComplex(dims, tuple(boundaries), basis_index, truncated)


def verify_d_squared(c: ChainComplex) -> bool:
    return all(matmul(c.d(p), c.d(p + 1)).is_zero() for p in range(1, c.top))


def homology_table(c: ChainComplex, check: bool = True) -> list[dict]:
    """Rows ``{degree, chain_dim, rank_d, rank_d_next, homology_dim, truncated}``.

    In a truncated complex the top row uses rank 0 for the unknown next
    differential, so its value is an upper bound and flagged.
    """
    if check and not verify_d_squared(c):
        raise ComplexError("boundary maps do not square to zero")
    rows = []
    for p in range(c.top + 1):
        rd, rn = c.rank(p), c.rank(p + 1)
        rows.append({
            "degree": p,
            "chain_dim": c.dims[p],
            "rank_d": rd,
            "rank_d_next": rn,
            "homology_dim": c.dims[p] - rd - rn,
            "truncated": c.truncated and p == c.top,
        })
    return rows


def homology_dims(c: ChainComplex, check: bool = True) -> list[int]:
    return [r["homology_dim"] for r in homology_table(c, check)]


def h0_dim(L: HomAlgebra, M: HomModule) -> int:
    """``dim M - rank(M (x) L -> M)``; for the adjoint module, ``dim L - dim [L, L]``."""
    return M.m_dim - mat_rank(M.action_matrix())


def euler_characteristic(values: Sequence[int]) -> int:
    return sum(v if p % 2 == 0 else -v for p, v in enumerate(values))
