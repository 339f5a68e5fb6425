"""Smith form with unimodular multipliers by massager perturbation.

Pipeline for a nonsingular A:

1. Smith form 2S and a reduced massager M of 2A (so S is the Smith form of A).
2. B = M + R (2S) for a random R with entries in [0, lambda - 1].
3. Certify that B is left equivalent to [[h1, 0], [hbar, I]].
4. V = B H^-1, which only touches the first column.
5. U = A V S^-1, an exact column-wise division.

Steps 2-3 fail (NotTrivial) with probability below 1/2 at the default
lambda; failures are retried with fresh randomness.  Every returned triple
is re-verified, so results are always correct.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .arith import iroot_ceil, length
from .errors import (
    NOT_TRIVIAL,
    DimensionError,
    IntegrityError,
    RetriesExhausted,
    SingularMatrixError,
)
from .kernel import (
    IntMat,
    SmithForm,
    colmod,
    det_exact,
    divide_columns_exact,
    scale_columns,
)
from .massager import MassagerPair, smith_massager
from .rng import fresh_seed, make_rng, uniform_below


@dataclass(frozen=True)
class TrivialHermite:
    h1: int
    hbar: tuple

    def __post_init__(self):
        object.__setattr__(self, "hbar", tuple(int(x) for x in self.hbar))
        if self.h1 < 1:
            raise ValueError("h1 must be positive")
        if any(not 0 <= x < self.h1 for x in self.hbar):
            raise ValueError("hbar must be reduced modulo h1")

    @property
    def n(self):
        return len(self.hbar) + 1

    def matrix(self):
        n = self.n
        rows = [[self.h1] + [0] * (n - 1)]
        for i, h in enumerate(self.hbar):
            rows.append([h] + [int(i == j) for j in range(n - 1)])
        return IntMat(rows)


@dataclass(frozen=True)
class MultiplierTriple:
    S: SmithForm
    V: IntMat
    U: IntMat
    # bookkeeping, not part of the mathematical value
    attempts: int = field(default=1, compare=False)
    not_trivial: int = field(default=0, compare=False)
    seed: int = field(default=None, compare=False)
    lam: int = field(default=None, compare=False)
    B: IntMat = field(default=None, compare=False, repr=False)
    H: TrivialHermite = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class PerturbParams:
    lam: int
    seed: int = None
    unsafe: bool = False

    def check(self, S):
        if self.lam < 1:
            raise ValueError("lambda must be positive")
        if not self.unsafe and self.lam < lambda_bound(S, S.n):
            raise ValueError("lambda below the safe bound needs unsafe=True")


def lambda_bound(S, n=None):
    """105 * max(n, ceil((det 2S)^(1/n)))."""
    n = S.n if n is None else n
    return 105 * max(n, iroot_ceil(2**n * S.det, n))


def sample_perturbation(n, lam, rng):
    return IntMat([[uniform_below(rng, lam) for _ in range(n)] for _ in range(n)])


def perturb(M, two_s, R):
    """B = M + R * diag(2S)."""
    if M.shape != R.shape or M.ncols != two_s.n:
        raise DimensionError("perturbation shapes do not match")
    return M + scale_columns(R, two_s)


# -- unbalanced products ------------------------------------------------


def _chunks(x, t, count):
    """First ``count`` sign-magnitude 2^t-digits of x."""
    sgn, a = (1, x) if x >= 0 else (-1, -x)
    mask = (1 << t) - 1
    out = []
    for _ in range(count):
        out.append(sgn * (a & mask))
        a >>= t
    return out


def _split_columns(m, t):
    """Chunk every column of m into ceil(length / t) digit columns.

    Returns the chunk columns and, per original column, how many it got.
    """
    cols, counts = [], []
    for c in m.columns():
        k = max(1, -(-length(c) // t))
        digs = [_chunks(x, t, k) for x in c]
        for a in range(k):
            cols.append([d[a] for d in digs])
        counts.append(k)
    return cols, counts


def unbalanced_matvec(m, w):
    """Exact m * w for m with very uneven column lengths.

    Both operands are cut into 2^t-digits with t = ceil(d / ncols), where d
    bounds the total column length of m and the length of w; the product
    becomes one balanced product with a block-Toeplitz right factor.
    """
    w = tuple(w)
    nr, nc = m.shape
    if nc != len(w):
        raise DimensionError("matvec shape mismatch")
    if nc == 0:
        return (0,) * nr
    d = max(sum(length(c) for c in m.columns()), length(list(w)))
    t = max(1, -(-d // nc))
    mcols, counts = _split_columns(m, t)
    q = max(1, -(-length(list(w)) // t))
    wd = [_chunks(x, t, q) for x in w]
    width = max(counts) + q - 1
    wbar = []
    for j, k in enumerate(counts):
        for a in range(k):
            row = [0] * width
            for b in range(q):
                row[a + b] = wd[j][b]
            wbar.append(row)
    # balanced product (nr x K) (K x width)
    prod = [
        [sum(mcols[i][r] * wbar[i][s] for i in range(len(mcols))) for s in range(width)]
        for r in range(nr)
    ]
    out = []
    for r in range(nr):
        acc = 0
        for s in range(width - 1, -1, -1):
            acc = (acc << t) + prod[r][s]
        out.append(acc)
    return tuple(out)


def unbalanced_matmul(a, m):
    """Exact a * m for small a and m with uneven column lengths."""
    if a.ncols != m.nrows:
        raise DimensionError("matmul shape mismatch")
    n = max(1, m.ncols)
    d = max(length(a), -(-sum(length(c) for c in m.columns()) // n))
    mcols, counts = _split_columns(m, d)
    arows = a.rows
    prod = [[sum(x * y for x, y in zip(r, c)) for c in mcols] for r in arows]
    out = [[0] * m.ncols for _ in range(a.nrows)]
    for i in range(a.nrows):
        pos = 0
        for j, k in enumerate(counts):
            acc = 0
            for s in range(k - 1, -1, -1):
                acc = (acc << d) + prod[i][pos + s]
            out[i][j] = acc
            pos += k
    return IntMat(out)


# -- Hermite certification and extraction ---------------------------------


def trivial_lower_hermite(b, massager=None):
    """Hermite form of b with n-1 trivial columns, or NOT_TRIVIAL."""
    if not b.is_square():
        raise DimensionError("need a square matrix")
    n = b.nrows
    pair = massager if massager is not None else smith_massager(b)
    sb, mb = pair.S, pair.M
    if n > 1 and sb[n - 2] != 1:
        return NOT_TRIVIAL
    h1 = sb[n - 1]
    m1 = mb[0, n - 1]
    if gcd(h1, m1) != 1:
        return NOT_TRIVIAL
    inv = pow(m1, -1, h1) if h1 > 1 else 0
    hbar = tuple((-inv * mb[i, n - 1]) % h1 for i in range(1, n))
    return TrivialHermite(h1, hbar)


def extract_unimodular(b, h):
    """V = B H^-1: column 1 is (B_1 - B_{2..n} hbar) / h1, the rest is B."""
    n = b.nrows
    if h.n != n:
        raise DimensionError("Hermite form has the wrong size")
    c1 = b.col(0)
    if n > 1:
        rest = b.submatrix(0, n, 1, n)
        corr = unbalanced_matvec(rest, h.hbar)
        c1 = tuple(x - y for x, y in zip(c1, corr))
    v1 = []
    for x in c1:
        q, r = divmod(x, h.h1)
        if r:
            raise IntegrityError("B H^-1 is not integral; H is not the Hermite form of B")
        v1.append(q)
    return b.with_column(0, v1)


def compute_U(a, v, S):
    """U = A V S^-1 with exact column divisions."""
    return divide_columns_exact(unbalanced_matmul(a, v), S)


# -- full pipeline ---------------------------------------------------------


def _attempt(a, pair2, two_s, lam, seed, index, R=None):
    """One perturbation attempt; returns (index, triple-or-None)."""
    n = a.nrows
    if R is None:
        R = sample_perturbation(n, lam, make_rng(seed, (index,)))
    b = perturb(pair2.M, two_s, R)
    h = trivial_lower_hermite(b)
    if h is NOT_TRIVIAL:
        return index, None
    v = extract_unimodular(b, h)
    S = two_s.halved()
    u = compute_U(a, v, S)
    return index, (S, v, u, b, h)


def verify_triple(a, S, v, u):
    """A V = U S, |det V| = |det U| = 1 and |det A| = prod S."""
    if a @ v != scale_columns(u, S):
        return False
    if abs(det_exact(v)) != 1 or abs(det_exact(u)) != 1:
        return False
    return abs(det_exact(a)) == S.det


def smith_form_multipliers(
    a,
    seed=None,
    max_retries=40,
    lam=None,
    unsafe_lambda=False,
    massager=None,
    perturbations=None,
    jobs=1,
):
    """Smith form S and unimodular V, U with A V = U S.

    ``massager`` pins the massager of 2A (a MassagerPair with S = 2S) and
    ``perturbations`` pins the R matrices of the first attempts; both exist to
    replay stored examples.  ``jobs`` > 1 runs attempts in parallel; the
    lowest-index success is returned, so the result does not depend on it.
    """
    if not a.is_square():
        raise DimensionError("need a square matrix")
    if det_exact(a) == 0:
        raise SingularMatrixError("matrix is singular")
    n = a.nrows
    seed = fresh_seed() if seed is None else int(seed)
    pair2 = massager if massager is not None else smith_massager(2 * a)
    two_s = pair2.S
    pair2 = MassagerPair(two_s, colmod(pair2.M, two_s), pair2.W)
    S = two_s.halved()
    if lam is None:
        lam = lambda_bound(S, n)
    PerturbParams(lam, seed, unsafe_lambda).check(S)
    pinned = list(perturbations or [])

    def run(indices):
        args = [(a, pair2, two_s, lam, seed, i, pinned[i] if i < len(pinned) else None)
                for i in indices]
        if jobs > 1 and len(indices) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                return list(ex.map(_attempt_star, args))
        return [_attempt(*x) for x in args]

    i = 0
    while i < max_retries:
        batch = list(range(i, min(max_retries, i + max(1, jobs))))
        for index, res in sorted(run(batch), key=lambda t: t[0]):
            if res is None:
                continue
            S_, v, u, b, h = res
            if not verify_triple(a, S_, v, u):
                raise IntegrityError("multiplier verification failed")
            return MultiplierTriple(
                S_, v, u, attempts=index + 1, not_trivial=index,
                seed=seed, lam=lam, B=b, H=h,
            )
        i = batch[-1] + 1
    raise RetriesExhausted(max_retries, not_trivial=max_retries, failed=0)


def _attempt_star(args):
    return _attempt(*args)


# -- size bounds -----------------------------------------------------------


@dataclass(frozen=True)
class SizeReport:
    v_ok: tuple
    u_ok: tuple
    v_bounds: tuple
    u_bounds: tuple
    avg_bitlength_v: float
    avg_bitlength_u: float

    @property
    def violations(self):
        return sum(not x for x in self.v_ok) + sum(not x for x in self.u_ok)

    @property
    def ok(self):
        return self.violations == 0


def check_sizes(triple, a, lam=None):
    """Per-column size bounds on V and U with constant 420.

    The constant assumes lambda <= 210 n ||A||; for a larger (overridden)
    lambda the bounds are scaled to the actual lambda.
    """
    S, V, U = triple.S, triple.V, triple.U
    n = a.nrows
    na = a.norm()
    det = abs(det_exact(a))
    cna = 420 * n * na
    if lam is not None:
        cna = max(cna, 2 * lam)
    vb = tuple(cna * ((det + n) if j == 0 else S[j]) for j in range(n))
    ub = tuple(n * na * cna * ((det + n) if j == 0 else 1) for j in range(n))
    vcols, ucols = V.columns(), U.columns()
    v_ok = tuple(max(abs(x) for x in c) <= bnd for c, bnd in zip(vcols, vb))
    u_ok = tuple(max(abs(x) for x in c) <= bnd for c, bnd in zip(ucols, ub))
    return SizeReport(
        v_ok, u_ok, vb, ub,
        sum(length(c) for c in vcols) / n,
        sum(length(c) for c in ucols) / n,
    )
