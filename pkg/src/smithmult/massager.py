"""Smith massagers: construction, verification and the permitted column moves.

A Smith massager for a nonsingular A with Smith form S is an integer M with

    A M = 0 colmod S,   and   W M = I colmod S  for some integer W.

It plays the role of V in AV = US without the unimodularity requirement, and
in reduced form (M = colmod(M, S)) it is small.
"""

from dataclasses import dataclass
from math import gcd

from .arith import length, prime_factors
from .errors import DimensionError, SingularMatrixError
from .kernel import (
    IntMat,
    SmithForm,
    colmod,
    det_exact,
    is_zero_colmod,
    lcm_all,
    smith_classical,
)
from .linearize import linearize_columns, recover_massager


@dataclass(frozen=True)
class MassagerPair:
    S: SmithForm
    M: IntMat
    W: IntMat = None

    @property
    def n(self):
        return self.S.n


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    partial: bool = False
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if not self.accepted:
            return f"reject ({self.reason})"
        return "accept (partial)" if self.partial else "accept"


def _is_skewed(a, factor=2):
    lengths = [length(c) for c in a.columns()]
    return max(lengths) * len(lengths) > factor * sum(lengths)


def smith_massager(a, linearize_skewed=True):
    """Smith form and a reduced Smith massager with certificate W.

    Deterministic: the classical Smith decomposition U0 A V0 = S gives
    M = colmod(V0, S) and W = V0^-1.  Matrices with skewed column lengths are
    linearized first and the massager is read back off the larger matrix.
    """
    if not a.is_square():
        raise DimensionError("Smith massager needs a square matrix")
    if linearize_skewed and a.nrows > 1 and _is_skewed(a):
        lin = linearize_columns(a)
        if lin.extra:
            S_D, _, V0, V0inv = smith_classical(lin.D)
            S, M, W = recover_massager(lin, S_D, colmod(V0, S_D), V0inv)
            return MassagerPair(S, M, W)
    S, _, V0, V0inv = smith_classical(a)
    return MassagerPair(S, colmod(V0, S), V0inv)


def _rank_mod_p(rows, p):
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def rank_condition(S, M, primes=None):
    """Necessary condition for property (ii).

    For every prime p, the last k columns of M must be independent mod p,
    where k counts the invariant factors divisible by p.
    """
    n = S.n
    if primes is None:
        primes = prime_factors(S.largest) if S.largest > 1 else []
    rows = M.tolist()
    for p in primes:
        k = sum(1 for s in S if s % p == 0)
        if k and _rank_mod_p([r[n - k:] for r in rows], p) < k:
            return False, p
    return True, None


def verify_massager(a, S, M, W=None, check_smith=True):
    """Check the massager properties of (S, M) for a, with W as witness if given."""
    S = S if isinstance(S, SmithForm) else SmithForm(tuple(S))
    n = a.nrows
    if not a.is_square() or M.shape != (n, n) or S.n != n:
        return Verdict(False, reason="shape mismatch")
    if W is not None and W.shape != (n, n):
        return Verdict(False, reason="shape mismatch")
    if check_smith:
        if det_exact(a) == 0:
            return Verdict(False, reason="singular matrix")
        if smith_classical(a)[0] != S:
            return Verdict(False, reason="S is not the Smith form of A")
    if not is_zero_colmod(a @ M, S):
        return Verdict(False, reason="A M is not 0 colmod S")
    if W is None:
        ok, p = rank_condition(S, M)
        if not ok:
            return Verdict(False, reason=f"rank condition fails mod {p}")
        return Verdict(True, partial=True)
    wm = W @ M
    if not is_zero_colmod(wm - IntMat.identity(n), S):
        return Verdict(False, reason="W M is not I colmod S")
    return Verdict(True)


# -- column operations preserving the massager property ----------------


def add_modulus_multiple(pair, i, v):
    """Column i += s_i * v for an arbitrary integer column v."""
    s = pair.S[i]
    cols = list(pair.M.columns())
    cols[i] = tuple(x + s * y for x, y in zip(cols[i], v))
    return MassagerPair(pair.S, colmod(IntMat.from_columns(cols), pair.S), pair.W)


def add_later_column(pair, i, j, c):
    """Column i += c * column j, allowed only for i < j."""
    if not i < j:
        raise ValueError("only a later column may be added to an earlier one")
    cols = list(pair.M.columns())
    cols[i] = tuple(x + c * y for x, y in zip(cols[i], cols[j]))
    W = pair.W
    if W is not None:
        rows = W.tolist()
        rows[j] = [x - c * y for x, y in zip(rows[j], rows[i])]
        W = IntMat(rows)
    return MassagerPair(pair.S, colmod(IntMat.from_columns(cols), pair.S), W)


def scale_column(pair, i, c):
    """Column i *= c for c a unit modulo s_i."""
    s = pair.S[i]
    if gcd(c, s) != 1:
        raise ValueError(f"{c} is not a unit modulo {s}")
    cols = list(pair.M.columns())
    cols[i] = tuple(c * x for x in cols[i])
    W = pair.W
    if W is not None:
        cinv = pow(c, -1, s) if s > 1 else 0
        rows = W.tolist()
        rows[i] = [cinv * x for x in rows[i]]
        W = IntMat(rows)
    return MassagerPair(pair.S, colmod(IntMat.from_columns(cols), pair.S), W)


def massager_col_op(pair, op, **kw):
    """Dispatch one of the sanctioned moves by name."""
    if op == "add_multiple":
        return add_modulus_multiple(pair, kw["i"], kw["v"])
    if op == "add_later":
        return add_later_column(pair, kw["i"], kw["j"], kw["c"])
    if op == "scale":
        return scale_column(pair, kw["i"], kw["c"])
    raise ValueError(f"unknown column operation {op!r}")


# -- lattice characterizations ----------------------------------------


def _vm(M, v):
    v = tuple(v)
    if len(v) != M.nrows:
        raise DimensionError("vector length does not match M")
    return [sum(x * r[j] for x, r in zip(v, M.rows)) for j in range(M.ncols)]


def in_row_lattice(S, M, v):
    """Is v an integer combination of the rows of A?"""
    return all(x % s == 0 for x, s in zip(_vm(M, v), S))


def denominator_of(S, M, v):
    """Denominator of v A^-1, read off v M S^-1."""
    return lcm_all(s // gcd(x, s) for x, s in zip(_vm(M, v), S))


def is_left_equivalent(H, S, M):
    """Does H generate the same row lattice as the matrix (S, M) belongs to?"""
    if not H.is_square() or H.nrows != S.n:
        raise DimensionError("H must be square of the massager's size")
    return abs(det_exact(H)) == S.det and is_zero_colmod(H @ M, S)


def require_nonsingular(a):
    if not a.is_square():
        raise DimensionError("matrix must be square")
    if det_exact(a) == 0:
        raise SingularMatrixError("matrix is singular")
