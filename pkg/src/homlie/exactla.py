"""Exact rational scalars and dense matrices over Q.

Scalars are :class:`fractions.Fraction` (always stored in lowest terms with a
positive denominator).  :class:`Matrix` is an immutable dense matrix whose
rank and kernel are computed by fraction-free integer elimination.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# below this fill ratio the sparse eliminator is used
_SPARSE_DENSITY = 0.25


def rational(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or a ``"p/q"`` string) to a Fraction.

    Floats are rejected: every scalar in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"bad rational literal {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(rational(q))


def rat_arith(a, b, op: str):
    a = rational(a)
    if op == "neg":
        return -a
    if op == "inv":
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a
    b = rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


def vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(rational(v) for v in values)


def zero_vector(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> tuple[Fraction, ...]:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


class Matrix:
    """Immutable dense matrix of Fractions.

    ``Matrix([[1, 2], [3, 4]])`` builds from rows.  Empty shapes need an
    explicit ``shape``, e.g. ``Matrix([], shape=(0, 3))``.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Sequence[Sequence] = (), shape: tuple[int, int] | None = None):
        data = tuple(tuple(rational(x) for x in row) for row in entries)
        if shape is None:
            if not data:
                raise ValueError("shape required for a matrix without rows")
            shape = (len(data), len(data[0]))
        nrows, ncols = shape
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"ragged or mis-shaped entries for shape {shape}")
        self.rows = nrows
        self.cols = ncols
        self._data = data

    @classmethod
    def _trusted(cls, data: tuple, nrows: int, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = nrows
        m.cols = ncols
        m._data = data
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._trusted(tuple((ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(tuple(basis_vector(n, i) for i in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [rational(v) for v in values]
        n = len(vals)
        rows = []
        for i, v in enumerate(vals):
            row = [ZERO] * n
            row[i] = v
            rows.append(tuple(row))
        return cls._trusted(tuple(rows), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if nrows is None:
            if not cols:
                raise ValueError("nrows required for a matrix without columns")
            nrows = len(cols[0])
        if any(len(c) != nrows for c in cols):
            raise ValueError("columns of unequal length")
        data = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._trusted(data, nrows, len(cols))

    @classmethod
    def from_sparse(cls, nrows: int, ncols: int, entries) -> "Matrix":
        """Build from ``{(i, j): value}`` (or an iterable of such triples)."""
        rows = [[ZERO] * ncols for _ in range(nrows)]
        items = entries.items() if hasattr(entries, "items") else ((k[:2], k[2]) for k in entries)
        for (i, j), v in items:
            rows[i][j] += rational(v)
        return cls._trusted(tuple(tuple(r) for r in rows), nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def to_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def nonzero(self):
        """Yield ``(i, j, value)`` for every nonzero entry, row-major."""
        for i, r in enumerate(self._data):
            for j, v in enumerate(r):
                if v:
                    yield i, j, v

    def nnz(self) -> int:
        return sum(1 for r in self._data for v in r if v)

    def is_zero(self) -> bool:
        return not any(v for r in self._data for v in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self._data)
        return f"Matrix([{body}], shape={self.shape})"

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        data = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return Matrix._trusted(data, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        data = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return Matrix._trusted(data, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def transpose(self) -> "Matrix":
        data = tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols))
        return Matrix._trusted(tuple(tuple(r) for r in data), self.cols, self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        v = vector(v)
        support = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in support), ZERO) for r in self._data)

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def to_text(self) -> str:
        """``rows cols`` header followed by one whitespace-separated line per row."""
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(format_rational(v) for v in r) for r in self._data]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols = (int(t) for t in lines[0].split())
        rows = [[parse_rational(t) for t in ln.split()] for ln in lines[1:]]
        return cls(rows, shape=(nrows, ncols))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product, skipping zero entries on both sides."""
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    b_rows = [[(j, v) for j, v in enumerate(r) if v] for r in b._data]
    ncols = b.cols
    out = []
    for r in a._data:
        acc: dict[int, Fraction] = {}
        for k, x in enumerate(r):
            if not x:
                continue
            for j, y in b_rows[k]:
                acc[j] = acc.get(j, ZERO) + x * y
        row = [ZERO] * ncols
        for j, v in acc.items():
            row[j] = v
        out.append(tuple(row))
    return Matrix._trusted(tuple(out), a.rows, ncols)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row/column pair (i1, i2) maps to i1 * dim2 + i2."""
    rows = []
    zero_row = (ZERO,) * (a.cols * b.cols)
    for ra in a._data:
        for rb in b._data:
            if not any(ra) or not any(rb):
                rows.append(zero_row)
                continue
            row = []
            for x in ra:
                if x:
                    row.extend(x * y for y in rb)
                else:
                    row.extend((ZERO,) * b.cols)
            rows.append(tuple(row))
    return Matrix._trusted(tuple(rows), a.rows * b.rows, a.cols * b.cols)


def kronecker_all(mats: Sequence[Matrix]) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = kronecker(out, m)
    return out


# -- fraction-free elimination ------------------------------------------------

def _row_lcm(row: Sequence[Fraction]) -> int:
    den = 1
    for v in row:
        if v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    return den


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = _row_lcm(row)
    return [int(v * den) for v in row]


def _bareiss_echelon(int_rows: list[list[int]], ncols: int):
    """Bareiss elimination on integer rows.

    Returns ``(echelon, pivots)`` where ``echelon[r]`` has its leading entry
    in column ``pivots[r]``.  Every intermediate division is exact.
    """
    a = [list(r) for r in int_rows]
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        pr = a[r]
        for i in range(r + 1, nrows):
            ri = a[i]
            f = ri[c]
            if f:
                a[i] = [0] * (c + 1) + [(piv * ri[j] - f * pr[j]) // prev for j in range(c + 1, ncols)]
            else:
                a[i] = [0] * (c + 1) + [piv * ri[j] // prev for j in range(c + 1, ncols)]
        prev = piv
        pivots.append(c)
        r += 1
    echelon = [{j: v for j, v in enumerate(a[i]) if v} for i in range(r)]
    return echelon, pivots


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def _sparse_echelon(int_rows: list[list[int]], ncols: int):
    """Fraction-free elimination on sparse rows with content removal.

    Rows whose entry in a pivot column is zero are left untouched, so fill-in
    stays local; dividing out the row content keeps integers small.
    """
    pivot_rows: dict[int, dict[int, int]] = {}
    for dense in int_rows:
        row = {j: v for j, v in enumerate(dense) if v}
        while row:
            c = min(row)
            prow = pivot_rows.get(c)
            if prow is None:
                pivot_rows[c] = _primitive(row)
                break
            a, p = row[c], prow[c]
            g = math.gcd(a, p)
            sa, sp = p // g, a // g
            new = {j: sa * v for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - sp * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
    pivots = sorted(pivot_rows)
    return [pivot_rows[c] for c in pivots], pivots


def _echelon(m: Matrix, method: str = "auto"):
    int_rows = [_integer_row(r) for r in m._data]
    if method == "auto":
        size = m.rows * m.cols
        method = "sparse" if size and m.nnz() < _SPARSE_DENSITY * size else "bareiss"
    if method == "bareiss":
        return _bareiss_echelon(int_rows, m.cols)
    if method == "sparse":
        return _sparse_echelon(int_rows, m.cols)
    raise ValueError(f"unknown elimination method {method!r}")


def mat_rank(m: Matrix, method: str = "auto") -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _echelon(m, method)
    return len(pivots)


def _back_substitute(echelon, pivots, ncols: int, fixed: dict[int, Fraction]) -> list[Fraction]:
    """Solve the echelon system with the given non-pivot values (others 0)."""
    x = [ZERO] * ncols
    for j, v in fixed.items():
        x[j] = v
    for row, p in zip(reversed(echelon), reversed(pivots)):
        s = sum((Fraction(v) * x[j] for j, v in row.items() if j != p), ZERO)
        x[p] = -s / row[p]
    return x


def _primitive_integer_vector(x: list[Fraction]) -> tuple[Fraction, ...]:
    den = _row_lcm(x)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


def mat_kernel(m: Matrix, method: str = "auto") -> Matrix:
    """Basis of the right null space, one primitive integer column per free variable."""
    if m.cols == 0:
        return Matrix.zeros(0, 0)
    if m.rows == 0:
        return Matrix.identity(m.cols)
    echelon, pivots = _echelon(m, method)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        x = _back_substitute(echelon, pivots, m.cols, {f: ONE})
        basis.append(_primitive_integer_vector(x))
    return Matrix.from_columns(basis, nrows=m.cols)


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of ``m x = b``, or ``None`` if the system is inconsistent."""
    b = vector(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    if m.rows == 0:
        return zero_vector(m.cols)
    aug = Matrix._trusted(tuple(r + (v,) for r, v in zip(m._data, b)), m.rows, m.cols + 1)
    echelon, pivots = _echelon(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    # free variables at 0; the augmented column is fixed at -1 so the pivot rows read A x = b
    x = _back_substitute(echelon, pivots, m.cols + 1, {m.cols: Fraction(-1)})
    return tuple(x[: m.cols])


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    cols = []
    for j in range(n):
        x = solve(m, basis_vector(n, j))
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(x)
    inv = Matrix.from_columns(cols, nrows=n)
    if matmul(m, inv) != Matrix.identity(n):
        raise ZeroDivisionError("matrix is singular")
    return inv


def det(m: Matrix) -> Fraction:
    """Determinant via Bareiss; the last pivot of a full-rank run is the determinant."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    dens = [_row_lcm(r) for r in m._data]
    a = [[int(v * d) for v in r] for r, d in zip(m._data, dens)]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            f = a[i][c]
            a[i] = [0] * (c + 1) + [(piv * a[i][j] - f * a[c][j]) // prev for j in range(c + 1, n)]
        prev = piv
    return Fraction(sign * a[n - 1][n - 1], math.prod(dens))
