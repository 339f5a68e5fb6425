"""Exact integer matrix arithmetic and classical canonical-form oracles."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .arith import length, rem_star, quo_star  # noqa: F401  (re-exported)
from .errors import DimensionError, IntegrityError, SingularMatrixError


class IntMat:
    """Immutable dense matrix of Python ints, stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("IntMat needs at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows, nrows, ncols):
        obj = object.__new__(cls)
        obj._rows = rows
        obj.nrows = nrows
        obj.ncols = ncols
        return obj

    @classmethod
    def empty(cls, nrows, ncols):
        """Shape with a zero dimension (e.g. an n x 0 expansion block)."""
        if nrows and ncols:
            return cls.zeros(nrows, ncols)
        return cls._raw(tuple(() for _ in range(nrows)), nrows, ncols)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls._raw(tuple((0,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_columns(cls, cols):
        cols = [tuple(c) for c in cols]
        if not cols:
            raise DimensionError("no columns")
        return cls(list(zip(*cols)))

    # -- access ---------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return list(zip(*self._rows)) if self.ncols else []

    def entries(self):
        return [x for r in self._rows for x in r]

    def tolist(self):
        return [list(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, IntMat):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntMat({self.tolist()!r})"

    def is_square(self):
        return self.nrows == self.ncols

    # -- structure ------------------------------------------------------

    @property
    def T(self):
        if not self.nrows or not self.ncols:
            return IntMat.empty(self.ncols, self.nrows)
        return IntMat._raw(tuple(zip(*self._rows)), self.ncols, self.nrows)

    def submatrix(self, r0, r1, c0, c1):
        rows = tuple(r[c0:c1] for r in self._rows[r0:r1])
        return IntMat._raw(rows, r1 - r0, c1 - c0)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        rows = tuple(a + b for a, b in zip(self._rows, other._rows))
        return IntMat._raw(rows, self.nrows, self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return IntMat._raw(
            self._rows + other._rows, self.nrows + other.nrows, self.ncols
        )

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self._rows]
        rows[i][j] = value
        return IntMat(rows)

    def with_column(self, j, values):
        rows = [list(r) for r in self._rows]
        for i, v in enumerate(values):
            rows[i][j] = v
        return IntMat(rows)

    def map(self, f):
        return IntMat._raw(
            tuple(tuple(f(x) for x in r) for r in self._rows), self.nrows, self.ncols
        )

    def norm(self):
        """Max absolute entry."""
        return max((abs(x) for r in self._rows for x in r), default=0)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        _same_shape(self, other)
        return IntMat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other):
        _same_shape(self, other)
        return IntMat._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, c):
        if not isinstance(c, int):
            return NotImplemented
        return self.map(lambda x: c * x)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)


def _same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def as_intmat(a):
    return a if isinstance(a, IntMat) else IntMat(a)


@dataclass(frozen=True)
class SmithForm:
    """Positive diagonal s_1 | s_2 | ... | s_n."""

    diag: tuple

    def __post_init__(self):
        d = tuple(int(x) for x in self.diag)
        object.__setattr__(self, "diag", d)
        if not d:
            raise DimensionError("empty Smith form")
        if any(s < 1 for s in d):
            raise ValueError(f"invariant factors must be positive: {d}")
        for a, b in zip(d, d[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    def __len__(self):
        return len(self.diag)

    def __iter__(self):
        return iter(self.diag)

    def __getitem__(self, i):
        return self.diag[i]

    @property
    def n(self):
        return len(self.diag)

    @property
    def largest(self):
        return self.diag[-1]

    @property
    def det(self):
        return prod(self.diag)

    def matrix(self):
        return IntMat.diag(self.diag)

    def scaled(self, c):
        return SmithForm(tuple(c * s for s in self.diag))

    def halved(self):
        if any(s % 2 for s in self.diag):
            raise ValueError("not the Smith form of an even matrix")
        return SmithForm(tuple(s // 2 for s in self.diag))

    def nontrivial(self):
        """Indices j with s_j > 1."""
        return [j for j, s in enumerate(self.diag) if s > 1]


# -- basic products and reductions --------------------------------------


def matmul(a, b):
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if not a.nrows or not b.ncols:
        return IntMat.empty(a.nrows, b.ncols)
    if not a.ncols:
        return IntMat.zeros(a.nrows, b.ncols)
    bcols = b.columns()
    rows = tuple(
        tuple(sum(x * y for x, y in zip(r, c)) for c in bcols) for r in a.rows
    )
    return IntMat._raw(rows, a.nrows, b.ncols)


def matvec(a, v):
    v = tuple(v)
    if a.ncols != len(v):
        raise DimensionError(f"cannot multiply {a.shape} by vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(r, v)) for r in a.rows)


def colmod(b, s):
    """Reduce column j of b into [0, s_j - 1]."""
    s = tuple(s)
    if b.ncols != len(s):
        raise DimensionError("colmod: column count does not match S")
    return IntMat._raw(
        tuple(tuple(x % m for x, m in zip(r, s)) for r in b.rows), b.nrows, b.ncols
    )


def rowmod(b, s):
    """Reduce row i of b into [0, s_i - 1]."""
    s = tuple(s)
    if b.nrows != len(s):
        raise DimensionError("rowmod: row count does not match S")
    return IntMat._raw(
        tuple(tuple(x % m for x in r) for r, m in zip(b.rows, s)), b.nrows, b.ncols
    )


def is_zero_colmod(b, s):
    return all(x % m == 0 for r in b.rows for x, m in zip(r, s))


def scale_columns(b, s):
    """b * diag(s)."""
    return IntMat._raw(
        tuple(tuple(x * m for x, m in zip(r, s)) for r in b.rows), b.nrows, b.ncols
    )


def divide_columns_exact(b, s):
    """b * diag(s)^-1, raising IntegrityError unless every division is exact."""
    out = []
    for r in b.rows:
        row = []
        for x, m in zip(r, s):
            q, t = divmod(x, m)
            if t:
                raise IntegrityError(f"{x} is not divisible by {m}")
            row.append(q)
        out.append(tuple(row))
    return IntMat._raw(tuple(out), b.nrows, b.ncols)


# -- determinant and inverses -------------------------------------------


def det_exact(a):
    """Signed determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = a.nrows
    m = [list(r) for r in a.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def rational_inverse(a):
    """A^-1 as rows of Fractions (Gauss-Jordan over Q)."""
    if not a.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = a.nrows
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(a.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def integer_inverse(u):
    """Exact inverse of a unimodular matrix."""
    inv = rational_inverse(u)
    if any(x.denominator != 1 for r in inv for x in r):
        raise IntegrityError("matrix is not unimodular")
    return IntMat([[int(x) for x in r] for r in inv])


# -- Hermite form --------------------------------------------------------


def _xgcd(a, b):
    """(g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_lower(a):
    """Lower triangular row Hermite form of a nonsingular square matrix.

    Works modulo the running determinant so entries stay bounded.
    """
    if not a.is_square():
        raise DimensionError("Hermite form needs a square matrix")
    n = a.nrows
    dmod = abs(det_exact(a))
    if dmod == 0:
        raise SingularMatrixError("matrix is singular")
    work = [[x % dmod for x in r] for r in a.rows]
    pivots = [None] * n
    modulus = dmod
    for j in range(n - 1, -1, -1):
        # combine column j of the active rows into one pivot row
        active = work
        acc = None
        rest = []
        for r in active:
            if acc is None:
                acc = r
                continue
            if r[j] == 0:
                rest.append(r)
                continue
            if acc[j] == 0:
                acc, r = r, acc
                rest.append(r)
                continue
            g, x, y = _xgcd(acc[j], r[j])
            p, q = acc[j] // g, r[j] // g
            new_acc = [(x * u + y * v) % modulus for u, v in zip(acc, r)]
            other = [(-q * u + p * v) % modulus for u, v in zip(acc, r)]
            acc = new_acc
            rest.append(other)
        g, x, _ = _xgcd(acc[j], modulus)
        piv = [(x * u) % modulus for u in acc[: j + 1]]
        piv[j] = g
        pivots[j] = piv
        modulus //= g
        work = [r[:j] for r in rest] if j else []
        if modulus == 0:
            raise SingularMatrixError("matrix is singular")
    h = [p + [0] * (n - len(p)) for p in pivots]
    for j in range(n - 1, -1, -1):
        hjj = h[j][j]
        for i in range(j + 1, n):
            q = h[i][j] // hjj
            if q:
                hi, hj = h[i], h[j]
                for k in range(j + 1):
                    hi[k] -= q * hj[k]
    return IntMat(h)


# -- Smith form with multipliers ----------------------------------------


def smith_classical(a):
    """Classical Smith form with multipliers.

    Returns (S, U0, V0, V0inv) with U0 * A * V0 = diag(S), U0 and V0 unimodular
    and V0inv the exact inverse of V0 (tracked alongside, never recomputed).
    """
    if not a.is_square():
        raise DimensionError("Smith form needs a square matrix")
    n = a.nrows
    s = [list(r) for r in a.rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in s:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]
        vinv[j], vinv[k] = vinv[k], vinv[j]

    def add_row(dst, src, c):
        # row dst += c * row src
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        # col dst += c * col src; inverse op is row src -= c * row dst
        for r in s:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]
        vinv[src] = [x - c * y for x, y in zip(vinv[src], vinv[dst])]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                raise SingularMatrixError("matrix is singular")
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = s[t][t]
            clean = True
            for i in range(t + 1, n):
                if s[i][t]:
                    q = _round_div(s[i][t], p)
                    if q:
                        add_row(i, t, -q)
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    q = _round_div(s[t][j], p)
                    if q:
                        add_col(j, t, -q)
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return (
        SmithForm(tuple(s[i][i] for i in range(n))),
        IntMat(u),
        IntMat(v),
        IntMat(vinv),
    )


def _round_div(a, b):
    """Nearest-integer quotient, keeping remainders small."""
    q, r = divmod(a, b)
    # r carries the sign of b, so stepping q by one leaves |b| - |r|
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def smith_form(a):
    return smith_classical(a)[0]


def is_unimodular(a):
    return a.is_square() and abs(det_exact(a)) == 1


def lcm_all(values):
    out = 1
    for x in values:
        out = out * x // gcd(out, x)
    return out
