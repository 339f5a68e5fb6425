"""Matrix text format: a header line "n m", then n rows of m integers.

Lines starting with '#' and blank lines are ignored.
"""

from .errors import ParseError
from .kernel import IntMat


def parse_matrix(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"bad header {lines[0]!r}") from None
    if n < 1 or m < 1:
        raise ParseError("matrix dimensions must be positive")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}")
    rows = []
    for k, ln in enumerate(body, 1):
        parts = ln.split()
        if len(parts) != m:
            raise ParseError(f"row {k}: expected {m} entries, found {len(parts)}")
        try:
            rows.append([int(x) for x in parts])
        except ValueError:
            raise ParseError(f"row {k}: non-integer entry") from None
    return IntMat(rows)


def format_matrix(a):
    out = [f"{a.nrows} {a.ncols}"]
    out += [" ".join(str(x) for x in r) for r in a.rows]
    return "\n".join(out) + "\n"


def read_matrix(path):
    try:
        with open(path) as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def write_matrix(path, a):
    with open(path, "w") as fh:
        fh.write(format_matrix(a))


def matrix_to_json(a):
    """Rows of decimal strings, so no integer is ever truncated."""
    return [[str(x) for x in r] for r in a.rows]
