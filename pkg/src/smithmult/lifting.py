"""p-adic lifting: modulus choice, inverse mod X, residues, solving, integrality.

Everything here is exact.  The only randomness is the prime p, which is
sampled once per context.
"""

import math
from dataclasses import dataclass, field

from .arith import is_prime, smod
from .errors import (
    FAIL,
    NOT_INTEGRAL,
    DimensionError,
    LasVegasFailure,
    SingularMatrixError,
)
from .kernel import IntMat, det_exact, matmul
from .rng import uniform_between


@dataclass(frozen=True)
class LiftingContext:
    A: IntMat
    p: int
    X: int
    invAmodX: IntMat
    e: int = field(default=0, compare=False)

    def __post_init__(self):
        a, p, X = self.A, self.p, self.X
        n = a.nrows
        e, y = 0, X
        while y % p == 0:
            y //= p
            e += 1
        if y != 1 or e < 1:
            raise ValueError(f"X = {X} is not a power of p = {p}")
        if X % 2 == 0:
            raise ValueError("X must be odd")
        if X < lifting_threshold(n, a.norm()):
            raise ValueError("X is below the lifting threshold")
        prod = matmul(a, self.invAmodX)
        if any((x - (i == j)) % X for i, r in enumerate(prod.rows) for j, x in enumerate(r)):
            raise ValueError("invAmodX is not an inverse of A modulo X")
        object.__setattr__(self, "e", e)

    @property
    def n(self):
        return self.A.nrows


@dataclass(frozen=True)
class HighOrderResidue:
    k: int
    D: IntMat  # symmetric range mod X^k
    R: IntMat  # I - A D = R X^k
    digits: tuple = field(default=(), compare=False, repr=False)


def lifting_threshold(n, norm_a):
    """max(10000, ceil(3.61 n^2 ||A||)), in exact integers."""
    return max(10000, -(-361 * n * n * norm_a // 100))


def prime_range(a):
    """Open interval (6 log C, 12 log C) with C the Hadamard bound of a.

    Logs are base 2; the interval is clamped to (6, 12) for tiny inputs.
    """
    n = a.nrows
    norm = max(1, a.norm())
    logc = max(1.0, n * math.log2(norm) + 0.5 * n * math.log2(n))
    return math.floor(6 * logc), math.ceil(12 * logc)


def inverse_mod_p(a, p):
    """Rem(A^-1, p) by Gauss-Jordan over Z/p, or None when singular mod p."""
    n = a.nrows
    m = [[x % p for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(a.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], -1, p)
        m[c] = [x * inv % p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return IntMat([r[n:] for r in m])


def inverse_mod_X(a, p, X):
    """Rem(A^-1, X) for X a power of p: invert mod p, then Newton iterate."""
    b = inverse_mod_p(a, p)
    if b is None:
        raise SingularMatrixError(f"matrix is not invertible modulo {p}")
    n = a.nrows
    two_i = IntMat.diag([2] * n)
    q = p
    while q < X:
        # precision doubles; q stays a power of p, so X divides the final q
        q = q * q
        b = matmul(b, two_i - matmul(a, b)).map(lambda x: x % q)
    return b.map(lambda x: x % X)


def choose_lifting_modulus(a, rng, p=None):
    """One Las Vegas attempt at a lifting context; FAIL on a bad draw.

    ``p`` may be forced (tests); otherwise it is drawn uniformly from the
    prime range.
    """
    if not a.is_square():
        raise DimensionError("lifting needs a square matrix")
    n = a.nrows
    if p is None:
        lo, hi = prime_range(a)
        p = uniform_between(rng, lo + 1, hi - 1)
    if p < 3 or not is_prime(p):
        return FAIL
    if inverse_mod_p(a, p) is None:
        return FAIL
    target = lifting_threshold(n, a.norm())
    X = p
    while X < target:
        X *= p
    return LiftingContext(a, p, X, inverse_mod_X(a, p, X))


def draw_prime(a, rng):
    """Uniform prime from the prime range (composite draws are redrawn)."""
    lo, hi = prime_range(a)
    while True:
        p = uniform_between(rng, lo + 1, hi - 1)
        if is_prime(p):
            return p


def lifting_context(a, rng, max_retries=20):
    """Retry choose_lifting_modulus; singular input is detected exactly.

    Only primes dividing det A use up the retry budget.
    """
    for attempt in range(1, max_retries + 1):
        ctx = choose_lifting_modulus(a, rng, p=draw_prime(a, rng))
        if ctx is not FAIL:
            return ctx
        if attempt == 3 and det_exact(a) == 0:
            raise SingularMatrixError("matrix is singular")
    if det_exact(a) == 0:
        raise SingularMatrixError("matrix is singular")
    raise LasVegasFailure(f"no lifting modulus found in {max_retries} attempts")


# -- residues and X-adic arithmetic ----------------------------------------


def inverse_digits(ctx, k):
    """X-adic digits C_0..C_{k-1} of Rem(A^-1, X^k) and the final residue."""
    a, X = ctx.A, ctx.X
    n = a.nrows
    r = IntMat.identity(n)
    digits = []
    for _ in range(k):
        c = matmul(ctx.invAmodX, r).map(lambda x: x % X)
        digits.append(c)
        t = r - matmul(a, c)
        r = t.map(lambda x: x // X)
    return digits, r


def high_order_residue(ctx, k):
    """D in symmetric range with A^-1 = D + A^-1 R X^k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    digits, _ = inverse_digits(ctx, k)
    Xk = ctx.X**k
    d0 = from_xadic(digits, ctx.X)
    D = d0.map(lambda x: smod(x, Xk))
    n = ctx.n
    t = IntMat.identity(n) - matmul(ctx.A, D)
    q = []
    for row in t.rows:
        qr = []
        for x in row:
            y, rr = divmod(x, Xk)
            if rr:
                raise ArithmeticError("I - A D is not divisible by X^k")
            qr.append(y)
        q.append(qr)
    return HighOrderResidue(k, D, IntMat(q), tuple(digits))


def to_xadic(b, X, d):
    """d coefficient matrices of Rem(b, X^d), each with entries in [0, X-1]."""
    Xd = X**d
    rows = [[x % Xd for x in r] for r in b.rows]
    out = []
    for _ in range(d):
        out.append(IntMat._raw(tuple(tuple(x % X for x in r) for r in rows), b.nrows, b.ncols))
        rows = [[x // X for x in r] for r in rows]
    return out


def from_xadic(coeffs, X):
    acc = None
    for c in reversed(coeffs):
        acc = c if acc is None else acc * X + c
    return acc


def xadic_mul(C, bexp, X, d=None):
    """X-adic digits of Rem(C B, X^d) where bexp holds the digits of B."""
    d = len(bexp) if d is None else d
    if len(bexp) < d:
        raise ValueError("not enough X-adic coefficients")
    if C.norm() >= X:
        raise ValueError("||C|| must be below X")
    for b in bexp[:d]:
        if any(x < 0 or x >= X for x in b.entries()):
            raise ValueError("X-adic coefficient out of range")
    out = []
    carry = None
    for i in range(d):
        t = matmul(C, bexp[i])
        if carry is not None:
            t = t + carry
        out.append(t.map(lambda x: x % X))
        carry = t.map(lambda x: x // X)
    return out


def _xadic_add_shifted(acc, digits, shift, X):
    """acc += X^shift * digits, truncated to len(acc) digits (in place)."""
    carry = None
    for i in range(shift, len(acc)):
        t = acc[i]
        if i - shift < len(digits):
            t = t + digits[i - shift]
        if carry is not None:
            t = t + carry
        acc[i] = t.map(lambda x: x % X)
        carry = t.map(lambda x: x // X)


def solve_mod(ctx, B, d):
    """Rem(A^-1 B, X^d), with all intermediates kept X-adic."""
    if B.nrows != ctx.n:
        raise DimensionError("right-hand side has the wrong number of rows")
    X = ctx.X
    digits, _ = inverse_digits(ctx, d)
    bexp = to_xadic(B, X, d)
    acc = [IntMat.zeros(B.nrows, B.ncols) for _ in range(d)]
    for i, c in enumerate(digits):
        term = xadic_mul(c, bexp[: d - i], X, d - i)
        _xadic_add_shifted(acc, term, i, X)
    return from_xadic(acc, X)


def _min_power(X, bound):
    """Smallest h >= 1 with X^h > bound."""
    h, y = 1, X
    while y <= bound:
        y *= X
        h += 1
    return h


def integrality_certify(ctx, s, B):
    """Rem(s A^-1 B, s) when s A^-1 B is integral, else NOT_INTEGRAL."""
    if s < 1:
        raise ValueError("s must be positive")
    a, X = ctx.A, ctx.X
    n = a.nrows
    if B.nrows != n:
        raise DimensionError("right-hand side has the wrong number of rows")
    nb = B.norm()
    if nb == 0:
        return IntMat.zeros(n, B.ncols)
    na = a.norm()
    h = _min_power(X, 2 * s * n ** (-(-n // 2)) * na ** (n - 1) * nb)
    res = high_order_residue(ctx, h)
    # 0.6 s n ||B|| kept as 3 s n ||B|| / 5
    ell = 1
    while 5 * X**ell <= 2 * n * na * 3 * s * n * nb:
        ell += 1
    Y = solve_mod(ctx, (s * res.R) @ B, ell)
    Xl = X**ell
    C = Y.map(lambda x: smod(x, Xl))
    if 5 * C.norm() < 3 * s * n * nb:
        Xh = X**h
        return C.map(lambda x: x * Xh % s)
    return NOT_INTEGRAL
