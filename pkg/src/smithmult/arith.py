"""Scalar integer helpers: roots, residues, primality, factoring."""

import math

# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def length(a):
    """Bit length with length(0) = 1.

    Sequences (vectors, nested rows, IntMat) give the max over their entries.
    """
    if isinstance(a, int):
        return max(1, abs(a).bit_length())
    return max((length(x) for x in _flatten(a)), default=1)


def _flatten(a):
    if hasattr(a, "entries"):
        return a.entries()
    out = []
    for x in a:
        if isinstance(x, int):
            out.append(x)
        else:
            out.extend(_flatten(x))
    return out


def rem(a, m):
    """Remainder in [0, m-1]."""
    return a % m


def quo(a, m):
    return a // m


def smod(a, m):
    """Symmetric remainder in (-m/2, m/2]."""
    r = a % m
    if 2 * r > m:
        r -= m
    return r


def rem_star(a, x):
    """Sign-preserving remainder: |r| < x and r has the sign of a (or is 0)."""
    if x < 2:
        from .errors import InvalidModulusError

        raise InvalidModulusError(f"modulus must be >= 2, got {x}")
    if a >= 0:
        return a % x
    return -((-a) % x)


def quo_star(a, x):
    if x < 2:
        from .errors import InvalidModulusError

        raise InvalidModulusError(f"modulus must be >= 2, got {x}")
    if a >= 0:
        return a // x
    return -((-a) // x)


def iroot_ceil(a, k):
    """Smallest r >= 0 with r**k >= a, for a >= 0 and k >= 1."""
    if a < 0 or k < 1:
        raise ValueError("need a >= 0 and k >= 1")
    if a <= 1:
        return a
    lo, hi = 1, 1 << (-(-a.bit_length() // k))
    # invariant: lo**k < a <= hi**k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k >= a:
            hi = mid
        else:
            lo = mid
    return hi


def is_prime(n):
    """Miller-Rabin; deterministic below 3.3e24, which covers every use here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n):
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, g, r, q = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def prime_factors(n, trial_bound=10**6):
    """Sorted distinct prime factors of |n| (n != 0)."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no finite factorization")
    found = set()
    p = 2
    while p <= trial_bound and p * p <= n:
        if n % p == 0:
            found.add(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found.add(m)
            continue
        f = _pollard_brent(m)
        stack.extend((f, m // f))
    return sorted(found)
