"""Independent reference computations, written separately from the package.

Everything here is slow and obviously correct: rational elimination, triple
loops, and invariant factors from gcds of minors.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def to_rows(a):
    return [list(r) for r in (a.rows if hasattr(a, "rows") else a)]


def naive_matmul(a, b):
    a, b = to_rows(a), to_rows(b)
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc += a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def fraction_det(a):
    m = [[Fraction(x) for x in r] for r in to_rows(a)]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return int(det)


def fraction_solve(a, b):
    """A^-1 B over Q (None if singular)."""
    a, b = to_rows(a), to_rows(b)
    n = len(a)
    m = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [r[n:] for r in m]


def fraction_inverse(a):
    n = len(to_rows(a))
    return fraction_solve(a, [[int(i == j) for j in range(n)] for i in range(n)])


def residue_mod(q, modulus):
    """A rational q with denominator prime to modulus, as an element of Z/modulus."""
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


def smith_by_minors(a):
    """Invariant factors as ratios of determinantal divisors (small n only)."""
    rows = to_rows(a)
    n = len(rows)
    divisors = [1]
    for k in range(1, n + 1):
        g = 0
        for ri in combinations(range(n), k):
            for ci in combinations(range(n), k):
                g = gcd(g, fraction_det([[rows[i][j] for j in ci] for i in ri]))
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, n + 1))


def is_integral(rows):
    return all(x.denominator == 1 for r in rows for x in r)


def is_lower_hermite(h):
    h = to_rows(h)
    n = len(h)
    for i in range(n):
        if h[i][i] <= 0:
            return False
        for j in range(n):
            if j > i and h[i][j] != 0:
                return False
            if j < i and not 0 <= h[i][j] < h[j][j]:
                return False
    return True


def adjugate(a):
    det = fraction_det(a)
    inv = fraction_inverse(a)
    return [[int(x * det) for x in r] for r in inv]
