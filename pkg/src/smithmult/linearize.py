"""Partial linearization of matrices with skewed entry lengths.

A matrix whose column (or row) bitlengths are very uneven is replaced by a
slightly larger matrix D with entries of at most d bits, where d is the
average length.  D keeps the determinant, the nontrivial Smith invariants and
the leading block of the inverse/adjoint of the original matrix.

Every construction factors as D = L * diag(A', I) * T with L unimodular and

    T = [[I, 0],
         [G, H]]      (H unit lower triangular),

where A' is A itself, or a signed row/column permutation of it in
permutation mode.  Massager recovery and reconstruction only need G and H.
"""

from dataclasses import dataclass

from .arith import length
from .errors import DimensionError
from .kernel import IntMat, SmithForm, colmod


@dataclass(frozen=True)
class Linearization:
    D: IntMat
    d: int
    e: tuple
    mode: str  # "columns", "rows" or "permutation"
    n: int
    m: int
    G: IntMat
    H: IntMat
    # permutation mode: A'[i][j] = row_signs[i] * A[row_perm[i]][col_perm[j]]
    row_perm: tuple = None
    col_perm: tuple = None
    row_signs: tuple = None
    relaxed: bool = False  # caller-supplied e; the 2^d bound may not hold

    @property
    def shape(self):
        return self.D.shape

    @property
    def extra(self):
        return self.D.ncols - self.m


def column_expansion(v, e, d):
    """The n x e block C*_{e,d}(v): 2^d-digits 1..e-1 of v, then Quo(v, 2^(ed)).

    Signs are split so each entry carries the sign of the matching entry of v.
    """
    v = tuple(v)
    if e < 0 or d < 1:
        raise ValueError("need e >= 0 and d >= 1")
    if e == 0:
        return IntMat.empty(len(v), 0)
    rows = []
    for x in v:
        sgn, a = (1, x) if x >= 0 else (-1, -x)
        a >>= d
        digits = []
        for _ in range(e - 1):
            digits.append(sgn * (a & ((1 << d) - 1)))
            a >>= d
        digits.append(sgn * a)
        rows.append(digits)
    return IntMat(rows)


def _low_digit(x, d):
    return x & ((1 << d) - 1) if x >= 0 else -((-x) & ((1 << d) - 1))


def choose_parameters(lengths):
    """(d, e) with d the ceiling average length and e_i minimal."""
    k = len(lengths)
    d = max(1, -(-sum(lengths) // k))
    e = tuple(max(0, -(-ln // d) - 1) for ln in lengths)
    return d, e


def _columns_blocks(a, e, d):
    """Column linearization of a; returns (D, E, F) as nested lists."""
    n, m = a.shape
    big = 1 << d
    extra = sum(e)
    cols = a.columns()
    # unexpanded columns are copied verbatim (they may hold -2^d gadget entries)
    top = [[_low_digit(x, d) if e[j] else x for j, x in enumerate(r)] for r in a.rows]
    for i in range(m):
        if e[i]:
            block = column_expansion(cols[i], e[i], d)
            for r, br in zip(top, block.rows):
                r.extend(br)
    width = m + extra
    bottom = []
    off = m
    for i in range(m):
        for k in range(e[i]):
            row = [0] * width
            row[i if k == 0 else off + k - 1] = -big
            row[off + k] = 1
            bottom.append(row)
        off += e[i]
    E = [r[:m] for r in bottom]
    F = [r[m:] for r in bottom]
    return top + bottom, E, F


def _unit_lower_solve(h, g):
    """H^-1 G for unit lower triangular H (lists of lists)."""
    k = len(h)
    out = []
    for i in range(k):
        row = list(g[i])
        for j in range(i):
            c = h[i][j]
            if c:
                oj = out[j]
                for t in range(len(row)):
                    row[t] -= c * oj[t]
        out.append(row)
    return out


def _as_mat(rows, nrows, ncols):
    if not nrows or not ncols:
        return IntMat.empty(nrows, ncols)
    return IntMat(rows)


def _check_bounds(lin):
    D = lin.D
    if lin.relaxed:
        return
    if D.norm() > 1 << lin.d:
        raise AssertionError("linearization entry bound violated")
    k = sum(lin.e)
    if lin.mode == "permutation":
        if D.nrows >= 3 * lin.n:
            raise AssertionError("permutation-mode dimension bound violated")
    elif lin.mode == "columns":
        if k and not (D.nrows < lin.n + lin.m and D.ncols < 2 * lin.m):
            raise AssertionError("column-mode dimension bound violated")
    else:
        if k and not (D.ncols < lin.n + lin.m and D.nrows < 2 * lin.n):
            raise AssertionError("row-mode dimension bound violated")


def linearize_columns(a, e=None, d=None):
    """Expand the long columns of a so every entry fits in about d bits."""
    n, m = a.shape
    relaxed = e is not None
    if e is None:
        lengths = [length(c) for c in a.columns()]
        d0, e = choose_parameters(lengths)
        if d is None:
            d = d0
        else:
            e = tuple(max(0, -(-ln // d) - 1) for ln in lengths)
    elif d is None:
        raise ValueError("explicit expansion counts need an explicit d")
    e = tuple(e)
    if len(e) != m:
        raise DimensionError("one expansion count per column")
    rows, E, F = _columns_blocks(a, e, d)
    k = sum(e)
    lin = Linearization(
        D=IntMat(rows), d=d, e=e, mode="columns", n=n, m=m,
        G=_as_mat(E, k, m), H=_as_mat(F, k, k), relaxed=relaxed,
    )
    _check_bounds(lin)
    return lin


def linearize_rows(a, e=None, d=None):
    """Row version: the transpose of the column linearization of a^T."""
    n, m = a.shape
    inner = linearize_columns(a.T, e=e, d=d)
    k = sum(inner.e)
    D1 = inner.D
    # right factor of D is [[I, 0], [Q^T, I]] with Q = C* F^-1
    cstar = [r[n:] for r in D1.rows[:m]]
    f = inner.H.tolist()
    finv = _unit_lower_solve(f, [[int(i == j) for j in range(k)] for i in range(k)])
    q = [[sum(x * y for x, y in zip(r, c)) for c in zip(*finv)] for r in cstar] if k else []
    qt = [list(c) for c in zip(*q)] if k else []
    lin = Linearization(
        D=D1.T, d=inner.d, e=inner.e, mode="rows", n=n, m=m,
        G=_as_mat(qt, k, m), H=IntMat.identity(k) if k else IntMat.empty(0, 0),
        relaxed=inner.relaxed,
    )
    _check_bounds(lin)
    return lin


def diagonal_order(a):
    """Row and column orders placing a largest remaining entry on each diagonal slot."""
    n = a.nrows
    triples = sorted(
        ((abs(a[i, j]), i, j) for i in range(n) for j in range(n)),
        key=lambda t: (-t[0], t[1], t[2]),
    )
    rows, cols = [], []
    used_r, used_c = set(), set()
    for _, i, j in triples:
        if i not in used_r and j not in used_c:
            rows.append(i)
            cols.append(j)
            used_r.add(i)
            used_c.add(j)
            if len(rows) == n:
                break
    return tuple(rows), tuple(cols)


def _perm_sign(p):
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, cyc = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            cyc += 1
        if cyc % 2 == 0:
            sign = -sign
    return sign


def permut_bound(a):
    """Brute-force PermutBnd (max over permutations of summed diagonal lengths).

    Exponential; meant for tests on tiny matrices.
    """
    from itertools import permutations

    n = a.nrows
    return max(
        sum(length(a[i, s[i]]) for i in range(n)) for s in permutations(range(n))
    )


def linearize_permutation(a):
    """Two-sided linearization driven by a permutation bound."""
    if not a.is_square():
        raise DimensionError("permutation mode needs a square matrix")
    n = a.nrows
    rp, cp = diagonal_order(a)
    signs = [1] * n
    if _perm_sign(rp) * _perm_sign(cp) < 0:
        signs[0] = -1
    ap = IntMat([[signs[i] * a[rp[i], cp[j]] for j in range(n)] for i in range(n)])
    lengths = [length(ap[i, i]) for i in range(n)]
    d, e = choose_parameters(lengths)
    k = sum(e)

    # stage 1: columns, with lengths read off the diagonal (may overflow 2^d
    # above the diagonal; stage 2 fixes that)
    rows1, E1, F1 = _columns_blocks(ap, e, d)
    n1 = n + k
    D1 = IntMat(rows1)
    # stage 2: rows of D1, expanding the first n rows with the same counts
    e2 = tuple(e) + (0,) * k
    rows2, E2, F2 = _columns_blocks(D1.T, e2, d)
    D = IntMat(rows2).T
    # Q2 = C*_2 F2^-1 where C*_2 = top n1 rows, tail columns of the stage-2 block
    cstar = [r[n1:] for r in rows2[:n1]]
    finv = _unit_lower_solve(F2, [[int(i == j) for j in range(k)] for i in range(k)])
    q2 = [[sum(x * y for x, y in zip(r, c)) for c in zip(*finv)] for r in cstar] if k else []
    q2t = [list(c) for c in zip(*q2)] if k else []
    g = [list(r) for r in E1] + [r[:n] for r in q2t]
    h = [list(r) + [0] * k for r in F1] + [
        r[n:] + [int(i == j) for j in range(k)] for i, r in enumerate(q2t)
    ]
    lin = Linearization(
        D=D, d=d, e=e, mode="permutation", n=n, m=n,
        G=_as_mat(g, 2 * k, n), H=_as_mat(h, 2 * k, 2 * k),
        row_perm=rp, col_perm=cp, row_signs=tuple(signs),
    )
    _check_bounds(lin)
    return lin


def linearize(a, mode="columns"):
    if mode in ("columns", "cols"):
        return linearize_columns(a)
    if mode == "rows":
        return linearize_rows(a)
    if mode in ("permutation", "permut"):
        return linearize_permutation(a)
    raise ValueError(f"unknown linearization mode {mode!r}")


# -- recovery -----------------------------------------------------------


def _hinv_g(lin):
    k = lin.H.nrows
    if not k:
        return []
    return _unit_lower_solve(lin.H.tolist(), lin.G.tolist())


def _unpermute_matrix(lin, ap):
    """A from A' = P_r A P_c."""
    if lin.mode != "permutation":
        return ap
    n = lin.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[lin.row_perm[i]][lin.col_perm[j]] = lin.row_signs[i] * ap[i, j]
    return IntMat(out)


def reconstruct(lin):
    """Recover the original matrix exactly from D."""
    n, m = lin.n, lin.m
    D = lin.D
    top = D.submatrix(0, n, 0, m)
    if lin.extra:
        x = _hinv_g(lin)
        tail = D.submatrix(0, n, m, D.ncols).tolist()
        corr = IntMat([[sum(a * b for a, b in zip(r, c)) for c in zip(*x)] for r in tail])
        top = top - corr
    return _unpermute_matrix(lin, top)


def recover_massager(lin, S_D, M_D, W_D=None):
    """Massager of the original square matrix from one of D.

    S_D must be diag(1, ..., 1, S); returns (S, M) or (S, M, W) when W_D is given.
    """
    if lin.n != lin.m:
        raise DimensionError("massager recovery needs a square original")
    n, nbar = lin.n, lin.D.nrows
    S_D = S_D if isinstance(S_D, SmithForm) else SmithForm(tuple(S_D))
    if S_D.n != nbar or M_D.shape != (nbar, nbar):
        raise DimensionError("massager shape does not match D")
    if any(s != 1 for s in S_D.diag[: nbar - n]):
        raise ValueError("Smith form of D is not diag(I, S)")
    S = SmithForm(S_D.diag[nbar - n:])
    M1 = colmod(M_D, S_D).submatrix(0, n, nbar - n, nbar)
    W = None
    if W_D is not None:
        W = W_D.submatrix(nbar - n, nbar, 0, n)
        if lin.extra:
            x = _hinv_g(lin)
            tail = W_D.submatrix(nbar - n, nbar, n, nbar).tolist()
            W = W - IntMat([[sum(a * b for a, b in zip(r, c)) for c in zip(*x)] for r in tail])
    if lin.mode == "permutation":
        cp = lin.col_perm
        rows = [None] * n
        for j in range(n):
            rows[cp[j]] = M1.row(j)
        M1 = IntMat(rows)
        if W is not None:
            w = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    w[i][cp[j]] = W[i, j]
            W = IntMat(w)
    M1 = colmod(M1, S)
    return (S, M1) if W_D is None else (S, M1, W)


def principal_submatrix(lin, B):
    """Leading n x n block of B (an inverse, adjoint or Hermite form of D).

    In permutation mode the block belongs to A' = P_r A P_c; it is mapped back
    as P_c * block * P_r, which is the right transform for inverses and
    adjoints of A.
    """
    nbar = lin.D.nrows
    if B.shape != (nbar, nbar):
        raise DimensionError("B must have the shape of D")
    n = lin.n
    blk = B.submatrix(0, n, 0, n)
    if lin.mode != "permutation":
        return blk
    rp, cp, sg = lin.row_perm, lin.col_perm, lin.row_signs
    out = [[0] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            out[cp[j]][rp[i]] = sg[i] * blk[j, i]
    return IntMat(out)


def padded_smith(S, nbar):
    """diag(1, ..., 1, S) of size nbar."""
    return SmithForm((1,) * (nbar - S.n) + tuple(S.diag))

