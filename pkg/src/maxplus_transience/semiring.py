"""Exact max-plus scalars, vectors and matrices.

Entries are ``fractions.Fraction`` values or one of the two infinity
sentinels.  ``NEG_INF`` is the zero of the max-plus semiring; ``POS_INF``
only appears in min-plus matrices, which are handled by negation.
Nothing in here touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InputError, ResourceError

__all__ = [
    "NEG_INF",
    "POS_INF",
    "MaxPlusMatrix",
    "MaxPlusVector",
    "MinPlusMatrix",
    "as_entry",
    "format_entry",
    "parse_entry",
    "mat_mul",
    "mat_vec",
    "mat_power",
    "mat_powers",
    "brute_force_walk_max",
    "normalize",
    "min_plus_mat_vec",
    "parse_matrix",
    "parse_vector",
    "format_matrix",
    "format_vector",
]


class _Infinity:
    """Signed infinity sentinel, absorbing under addition with finite values."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "-inf" if self.sign < 0 else "+inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, (self.sign,))

    def __hash__(self):
        return hash(("inf", self.sign))

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __ne__(self, other):
        return not self == other

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ArithmeticError("-inf + +inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __lt__(self, other):
        if self.sign < 0:
            return not (isinstance(other, _Infinity) and other.sign < 0)
        return False

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if self.sign > 0:
            return not (isinstance(other, _Infinity) and other.sign > 0)
        return False

    def __ge__(self, other):
        return self == other or self > other


def _infinity(sign):
    return NEG_INF if sign < 0 else POS_INF


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(1)

_TOKEN = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def parse_entry(token: str):
    """Parse ``-inf``, ``+inf``/``inf``, an integer, or ``p/q``."""
    low = token.strip().lower()
    if low == "-inf":
        return NEG_INF
    if low in ("inf", "+inf"):
        return POS_INF
    m = _TOKEN.match(low)
    if not m:
        raise InputError(f"malformed token {token!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise InputError(f"zero denominator in {token!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def as_entry(value):
    """Coerce ints, Fractions, infinity sentinels and strings to an entry."""
    if isinstance(value, _Infinity):
        return value
    if isinstance(value, bool):
        raise InputError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_entry(value)
    if isinstance(value, float) and value == float("-inf"):
        return NEG_INF
    raise InputError(f"unsupported entry {value!r}; use int, Fraction, str or NEG_INF")


def format_entry(value) -> str:
    if isinstance(value, _Infinity):
        return str(value)
    return str(value)


class MaxPlusMatrix:
    """Immutable square matrix over the max-plus semiring."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_entry(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise InputError("matrix dimension must be at least 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"row {i + 1} has {len(row)} entries, expected {n}")
            if any(x is POS_INF for x in row):
                raise InputError("+inf is not a max-plus entry")
        self.rows = rows
        self.n = n

    @classmethod
    def _trusted(cls, rows):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.n = len(rows)
        return obj

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        zero = Fraction(0)
        return cls._trusted(
            tuple(tuple(zero if i == j else NEG_INF for j in range(n)) for i in range(n))
        )

    @classmethod
    def from_edges(cls, n: int, edges) -> "MaxPlusMatrix":
        """Build from ``{(i, j): weight}`` or an iterable of ``(i, j, weight)``."""
        rows = [[NEG_INF] * n for _ in range(n)]
        items = edges.items() if hasattr(edges, "items") else (((i, j), w) for i, j, w in edges)
        for (i, j), w in items:
            rows[i][j] = as_entry(w)
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, MaxPlusMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_entry(x) for x in row) for row in self.rows)
        return f"MaxPlusMatrix([{body}])"

    def finite_entries(self) -> list:
        return [x for row in self.rows for x in row if x is not NEG_INF]

    def edges(self) -> Iterator[tuple]:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x is not NEG_INF:
                    yield i, j, x

    def shift(self, mu) -> "MaxPlusMatrix":
        """Add the finite scalar ``mu`` to every finite entry."""
        mu = as_entry(mu)
        return MaxPlusMatrix._trusted(
            tuple(tuple(x if x is NEG_INF else x + mu for x in row) for row in self.rows)
        )

    def with_entry(self, i: int, j: int, value) -> "MaxPlusMatrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = as_entry(value)
        return MaxPlusMatrix(rows)

    def submatrix(self, keep) -> "MaxPlusMatrix":
        """Entries outside ``keep x keep`` become -inf; dimension is unchanged."""
        keep = set(keep)
        return MaxPlusMatrix._trusted(
            tuple(
                tuple(x if (i in keep and j in keep) else NEG_INF for j, x in enumerate(row))
                for i, row in enumerate(self.rows)
            )
        )

    def transpose(self) -> "MaxPlusMatrix":
        return MaxPlusMatrix._trusted(tuple(zip(*self.rows)))


class MaxPlusVector:
    """Immutable column vector over the max-plus semiring."""

    __slots__ = ("entries", "n")

    def __init__(self, entries: Iterable):
        entries = tuple(as_entry(x) for x in entries)
        if not entries:
            raise InputError("vector dimension must be at least 1")
        if any(x is POS_INF for x in entries):
            raise InputError("+inf is not a max-plus entry")
        self.entries = entries
        self.n = len(entries)

    @classmethod
    def _trusted(cls, entries):
        obj = cls.__new__(cls)
        obj.entries = entries
        obj.n = len(entries)
        return obj

    @classmethod
    def zeros(cls, n: int) -> "MaxPlusVector":
        return cls._trusted((Fraction(0),) * n)

    @classmethod
    def unit(cls, n: int, j: int) -> "MaxPlusVector":
        return cls._trusted(tuple(Fraction(0) if h == j else NEG_INF for h in range(n)))

    @classmethod
    def truncated_unit(cls, n: int, j: int, mu) -> "MaxPlusVector":
        """Unit vector ``e^j`` with every -inf replaced by ``-mu``."""
        mu = as_entry(mu)
        return cls._trusted(tuple(Fraction(0) if h == j else -mu for h in range(n)))

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, MaxPlusVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"MaxPlusVector({' '.join(format_entry(x) for x in self.entries)})"

    def is_finite(self) -> bool:
        return all(x is not NEG_INF for x in self.entries)

    def norm(self):
        """Max entry minus min entry; ``POS_INF`` when some entry is -inf."""
        if all(x is NEG_INF for x in self.entries):
            return Fraction(0)
        if not self.is_finite():
            return POS_INF
        return max(self.entries) - min(self.entries)

    def shift(self, mu) -> "MaxPlusVector":
        mu = as_entry(mu)
        return MaxPlusVector._trusted(tuple(x if x is NEG_INF else x + mu for x in self.entries))


class MinPlusMatrix:
    """Square matrix over the min-plus semiring (``POS_INF`` is its zero)."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_entry(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InputError("min-plus matrix must be square and nonempty")
        if any(x is NEG_INF for row in rows for x in row):
            raise InputError("-inf is not a min-plus entry")
        self.rows = rows
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "MinPlusMatrix":
        return cls([[0 if i == j else POS_INF for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, MinPlusMatrix) and self.rows == other.rows

    def __repr__(self):
        body = "; ".join(" ".join(format_entry(x) for x in row) for row in self.rows)
        return f"MinPlusMatrix([{body}])"

    def negated(self) -> MaxPlusMatrix:
        return MaxPlusMatrix._trusted(tuple(tuple(-x for x in row) for row in self.rows))


def mat_mul(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Max-plus product ``(A (x) B)[i][j] = max_k A[i][k] + B[k][j]``."""
    n = a.n
    if b.n != n:
        raise InputError(f"dimension mismatch: {a.n} vs {b.n}")
    brows = b.rows
    out = []
    for arow in a.rows:
        acc = [NEG_INF] * n
        for k, x in enumerate(arow):
            if x is NEG_INF:
                continue
            for j, y in enumerate(brows[k]):
                if y is NEG_INF:
                    continue
                s = x + y
                cur = acc[j]
                if cur is NEG_INF or s > cur:
                    acc[j] = s
        out.append(tuple(acc))
    return MaxPlusMatrix._trusted(tuple(out))


def mat_vec(a: MaxPlusMatrix, v: MaxPlusVector) -> MaxPlusVector:
    if a.n != v.n:
        raise InputError(f"dimension mismatch: matrix {a.n} vs vector {v.n}")
    ent = v.entries
    out = []
    for row in a.rows:
        best = NEG_INF
        for x, y in zip(row, ent):
            if x is NEG_INF or y is NEG_INF:
                continue
            s = x + y
            if best is NEG_INF or s > best:
                best = s
        out.append(best)
    return MaxPlusVector._trusted(tuple(out))


def mat_powers(a: MaxPlusMatrix) -> Iterator[MaxPlusMatrix]:
    """Yield ``A^0, A^1, A^2, ...`` forever, by repeated left multiplication."""
    p = MaxPlusMatrix.identity(a.n)
    while True:
        yield p
        p = mat_mul(a, p)


def mat_power(a: MaxPlusMatrix, n: int) -> MaxPlusMatrix:
    if n < 0:
        raise InputError("power must be nonnegative")
    p = MaxPlusMatrix.identity(a.n)
    for _ in range(n):
        p = mat_mul(a, p)
    return p


DEFAULT_WALK_BUDGET = 10**7


def brute_force_walk_max(a: MaxPlusMatrix, n: int, i: int, j=None, v=None,
                         budget: int = DEFAULT_WALK_BUDGET):
    """Maximum weight over all length-``n`` walks starting at ``i``.

    With ``j`` given only walks ending at ``j`` count and the result is an
    entry of ``A^n``.  With ``j=None`` every end node counts and the end
    value ``v[end]`` is added (``v`` defaults to zeros), which matches
    ``(A^n (x) v)[i]``.  Walks are enumerated one by one; ``budget`` caps
    the number of partial walks visited.
    """
    if n < 0:
        raise InputError("walk length must be nonnegative")
    if v is not None and not isinstance(v, MaxPlusVector):
        v = MaxPlusVector(v)
    succ = [[(k, x) for k, x in enumerate(row) if x is not NEG_INF] for row in a.rows]
    best = NEG_INF
    visited = 0
    stack = [(i, 0, Fraction(0))]
    while stack:
        node, depth, w = stack.pop()
        visited += 1
        if visited > budget:
            raise ResourceError(f"walk enumeration exceeded budget of {budget} partial walks")
        if depth == n:
            if j is None:
                end = Fraction(0) if v is None else v[node]
                total = w + end
            elif node == j:
                total = w
            else:
                continue
            if total is not NEG_INF and (best is NEG_INF or total > best):
                best = total
            continue
        for k, x in succ[node]:
            stack.append((k, depth + 1, w + x))
    return best


def normalize(a: MaxPlusMatrix, lam) -> MaxPlusMatrix:
    """Subtract the finite scalar ``lam`` from every finite entry."""
    lam = as_entry(lam)
    if isinstance(lam, _Infinity):
        raise InputError("normalization needs a finite shift")
    return a.shift(-lam)


def min_plus_mat_vec(a: MinPlusMatrix, w: Sequence) -> tuple:
    """``A (x)' w`` computed as ``-((-A) (x) (-w))``."""
    w = tuple(as_entry(x) for x in w)
    if len(w) != a.n:
        raise InputError("dimension mismatch")
    neg = MaxPlusVector._trusted(tuple(-x for x in w))
    return tuple(-x for x in mat_vec(a.negated(), neg).entries)


# -- text formats -----------------------------------------------------------

_DIM = re.compile(r"^[1-9]\d*$")


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, line


def _tokens(lineno: int, line: str):
    for m in re.finditer(r"\S+", line):
        yield lineno, m.start() + 1, m.group()


def _entry_at(lineno, col, tok):
    try:
        value = parse_entry(tok)
    except InputError as exc:
        raise InputError(f"line {lineno}, column {col}: {exc}") from None
    if value is POS_INF:
        raise InputError(f"line {lineno}, column {col}: +inf is not a max-plus entry")
    return value


def _read_dim(lines):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise InputError("empty input: expected dimension line") from None
    toks = list(_tokens(lineno, line))
    if len(toks) != 1 or not _DIM.match(toks[0][2]):
        raise InputError(f"line {lineno}, column 1: expected a positive dimension, got {line.strip()!r}")
    return int(toks[0][2])


def parse_matrix(text: str) -> MaxPlusMatrix:
    """Parse the ``tmx`` format: ``N`` then ``N`` rows of ``N`` tokens."""
    lines = _content_lines(text)
    n = _read_dim(lines)
    rows = []
    for lineno, line in lines:
        toks = list(_tokens(lineno, line))
        if len(rows) == n:
            raise InputError(f"line {lineno}, column 1: unexpected extra row")
        if len(toks) != n:
            raise InputError(f"line {lineno}, column 1: expected {n} entries, found {len(toks)}")
        rows.append([_entry_at(*t) for t in toks])
    if len(rows) != n:
        raise InputError(f"expected {n} rows, found {len(rows)}")
    return MaxPlusMatrix(rows)


def parse_vector(text: str) -> MaxPlusVector:
    lines = _content_lines(text)
    n = _read_dim(lines)
    toks = [t for lineno, line in lines for t in _tokens(lineno, line)]
    if len(toks) != n:
        where = f"line {toks[n][0]}, column {toks[n][1]}: " if len(toks) > n else ""
        raise InputError(f"{where}expected {n} vector entries, found {len(toks)}")
    return MaxPlusVector([_entry_at(*t) for t in toks])


def format_matrix(a: MaxPlusMatrix) -> str:
    lines = [str(a.n)]
    lines += [" ".join(format_entry(x) for x in row) for row in a.rows]
    return "\n".join(lines) + "\n"


def format_vector(v: MaxPlusVector) -> str:
    return f"{v.n}\n" + " ".join(format_entry(x) for x in v.entries) + "\n"
