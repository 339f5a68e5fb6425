"""Replay the stored 7x7 example with its pinned massager and perturbation."""

from smithmult import fixtures
from smithmult.massager import MassagerPair
from smithmult.matio import format_matrix
from smithmult.multipliers import smith_form_multipliers


def main():
    t = smith_form_multipliers(
        fixtures.A7, seed=0, lam=fixtures.LAMBDA7, unsafe_lambda=True,
        massager=MassagerPair(fixtures.TWO_S7, fixtures.M7),
        perturbations=[fixtures.R7],
    )
    print("S:", " ".join(map(str, t.S)))
    print("h1:", t.H.h1)
    print("hbar:", " ".join(map(str, t.H.hbar)))
    print("V:\n" + format_matrix(t.V), end="")
    print("U:\n" + format_matrix(t.U), end="")
    same = (t.B, t.V, t.U) == (fixtures.B7, fixtures.V7, fixtures.U7)
    print("matches stored B, V, U:", same)
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
