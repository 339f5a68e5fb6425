"""Outer product adjoint formulas and proper fractional parts of A^-1.

With unimodular V, U and A V = U S, the triple (V colmod S, S, U^-1 rowmod S)
satisfies Rem(s A^-1, s) = Rem(Vbar (s S^-1) Ubar, s) for s the largest
invariant factor.  Only the indices with s_j > 1 carry information, so only
those columns of Vbar and rows of Ubar are stored.
"""

import json
from dataclasses import dataclass

from .arith import smod
from .errors import DimensionError, IntegrityError
from .kernel import (
    IntMat,
    SmithForm,
    colmod,
    integer_inverse,
    rational_inverse,
    rowmod,
    scale_columns,
)


@dataclass(frozen=True)
class OuterProductAdjoint:
    S: SmithForm
    index: tuple  # positions j with s_j > 1
    vbar_cols: tuple  # one reduced column of Vbar per index
    ubar_rows: tuple  # one reduced row of Ubar per index

    @property
    def n(self):
        return self.S.n

    @property
    def s(self):
        return self.S.largest

    @property
    def Vbar(self):
        n = self.n
        cols = [(0,) * n] * n
        for j, c in zip(self.index, self.vbar_cols):
            cols[j] = c
        return IntMat.from_columns(cols)

    @property
    def Ubar(self):
        n = self.n
        rows = [(0,) * n] * n
        for j, r in zip(self.index, self.ubar_rows):
            rows[j] = r
        return IntMat(rows)

    @classmethod
    def from_dense(cls, vbar, S, ubar):
        n = S.n
        if vbar.shape != (n, n) or ubar.shape != (n, n):
            raise DimensionError("Vbar and Ubar must be n x n")
        vbar, ubar = colmod(vbar, S), rowmod(ubar, S)
        idx = tuple(S.nontrivial())
        return cls(
            S, idx,
            tuple(vbar.col(j) for j in idx),
            tuple(ubar.row(j) for j in idx),
        )

    def storage_bits(self):
        """Total bit length of the stored integers (S, Vbar, Ubar)."""
        vals = list(self.S) + [x for c in self.vbar_cols for x in c]
        vals += [x for r in self.ubar_rows for x in r]
        return sum(max(1, abs(x).bit_length()) for x in vals)

    # -- serialization ------------------------------------------------------

    def to_dict(self):
        return {
            "n": self.n,
            "s": str(self.s),
            "diag": [str(x) for x in self.S],
            "vbar": [
                {"col": j, "values": [str(x) for x in c]}
                for j, c in zip(self.index, self.vbar_cols)
            ],
            "ubar": [
                {"row": j, "values": [str(x) for x in r]}
                for j, r in zip(self.index, self.ubar_rows)
            ],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        S = SmithForm(tuple(int(x) for x in d["diag"]))
        if int(d["n"]) != S.n or int(d["s"]) != S.largest:
            raise ValueError("inconsistent OPA header")
        vb = {int(e["col"]): tuple(int(x) for x in e["values"]) for e in d["vbar"]}
        ub = {int(e["row"]): tuple(int(x) for x in e["values"]) for e in d["ubar"]}
        idx = tuple(S.nontrivial())
        zero = (0,) * S.n
        return cls(S, idx, tuple(vb.get(j, zero) for j in idx), tuple(ub.get(j, zero) for j in idx))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def outer_product_adjoint(a, triple, check=None):
    """OPA from verified multipliers.

    ``check`` compares against an exact rational inverse; by default it runs
    for n <= 8.
    """
    S, V, U = triple.S, triple.V, triple.U
    if a @ V != scale_columns(U, S):
        raise IntegrityError("triple does not satisfy A V = U S")
    uinv = integer_inverse(U)
    opa = OuterProductAdjoint.from_dense(colmod(V, S), S, rowmod(uinv, S))
    if check is None:
        check = a.nrows <= 8
    if check and frac_inverse(opa) != frac_inverse_oracle(a, S.largest):
        raise IntegrityError("outer product adjoint does not match s A^-1")
    return opa


def frac_solve(opa, b):
    """Rem(s A^-1 b, s), touching only the nontrivial indices."""
    b = tuple(b)
    n, s = opa.n, opa.s
    if len(b) != n:
        raise DimensionError("right-hand side has the wrong length")
    b = [x % s for x in b]
    out = [0] * n
    for j, c, r in zip(opa.index, opa.vbar_cols, opa.ubar_rows):
        sj = opa.S[j]
        t = sum(x * y for x, y in zip(r, b)) % sj
        if not t:
            continue
        f = (s // sj) * t
        for i in range(n):
            out[i] += c[i] * f
    return tuple(x % s for x in out)


def frac_inverse(opa):
    """Rem(s A^-1, s) as one outer product."""
    n, s = opa.n, opa.s
    out = [[0] * n for _ in range(n)]
    for j, c, r in zip(opa.index, opa.vbar_cols, opa.ubar_rows):
        f = s // opa.S[j]
        for i in range(n):
            ci = c[i] * f
            if ci:
                row = out[i]
                for k in range(n):
                    row[k] += ci * r[k]
    return IntMat([[x % s for x in row] for row in out])


def symmetric_lift(m, s):
    """Entries of m in the symmetric range modulo s."""
    return m.map(lambda x: smod(x, s))


def frac_inverse_oracle(a, s):
    """Rem(s A^-1, s) from an exact rational inverse (reference only)."""
    out = []
    for row in rational_inverse(a):
        r = []
        for x in row:
            y = x * s
            if y.denominator != 1:
                raise IntegrityError("s A^-1 is not integral")
            r.append(int(y) % s)
        out.append(r)
    return IntMat(out)
