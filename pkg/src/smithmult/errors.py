"""Exception types shared across the package."""


class SingularMatrixError(ValueError):
    """Raised when an operation needs a nonsingular matrix and gets a singular one."""


class DimensionError(ValueError):
    """Raised on incompatible matrix shapes."""


class InvalidModulusError(ValueError):
    pass


class IntegrityError(ArithmeticError):
    """An exact division that must succeed did not.

    This means an upstream certificate was wrong; it never signals bad luck.
    """


class LasVegasFailure(RuntimeError):
    """A randomized step reported FAIL. Retrying with fresh randomness is safe."""


class RetriesExhausted(RuntimeError):
    def __init__(self, attempts, not_trivial=0, failed=0):
        self.attempts = attempts
        self.not_trivial = not_trivial
        self.failed = failed
        super().__init__(
            f"no certified result after {attempts} attempts "
            f"({not_trivial} NotTrivial, {failed} FAIL)"
        )


class _Marker:
    """Falsy named sentinel for non-error negative outcomes."""

    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_marker, (self.name,))


_MARKERS = {}


def _marker(name):
    return _MARKERS.setdefault(name, _Marker(name))


NOT_INTEGRAL = _marker("NotIntegral")
NOT_TRIVIAL = _marker("NotTrivial")
FAIL = _marker("FAIL")


class ParseError(ValueError):
    """Malformed matrix text."""
