"""Dense arbitrary-precision integer matrices and the shared text format."""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _as_int(x):
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        return x.numerator
    return operator.index(x)


class IntMatrix:
    """Immutable row-major integer matrix.

    Zero rows or zero columns are allowed so that empty blocks (for instance
    an empty right block of a 1-sum) can be carried around uniformly.
    """

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(_as_int(x) for x in r) for r in data)
        if cols is None:
            if not rows:
                raise DimensionError("column count required for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        object.__setattr__(self, "_data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], cols=n)

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values], cols=1)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self._data]!r})"

    def tolist(self):
        return [list(r) for r in self._data]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    @property
    def T(self):
        return IntMatrix([self.col(j) for j in range(self.cols)], cols=self.rows)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None):
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        cols = list(cols)
        return IntMatrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data],
                cols=other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._data)

    def __neg__(self):
        return IntMatrix([[-x for x in r] for r in self._data], cols=self.cols)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionError("row counts differ")
        return IntMatrix([a + b for a, b in zip(self._data, other._data)], cols=self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return IntMatrix(self._data + other._data, cols=self.cols)

    def max_abs(self):
        return max((abs(x) for r in self._data for x in r), default=0)

    def is_square(self):
        return self.rows == self.cols


def as_matrix(obj) -> IntMatrix:
    if isinstance(obj, IntMatrix):
        return obj
    return IntMatrix(obj)


def frac_vector(values) -> tuple[Fraction, ...]:
    """Canonical exact rational vector (lowest terms, positive denominators)."""
    return tuple(Fraction(v) for v in values)


# -- text format -------------------------------------------------------------

def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _read_matrix(lines):
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input") from None
    dims = _ints(header.split(), lineno)
    if len(dims) != 2 or dims[0] <= 0 or dims[1] <= 0:
        raise ParseError("header must be 'm n' with positive counts", lineno)
    m, n = dims
    data = []
    for _ in range(m):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise ParseError(f"expected {m} matrix rows, got {len(data)}", None) from None
        row = _ints(line.split(), lineno)
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", lineno)
        data.append(row)
    return IntMatrix(data, cols=n)


def parse_matrix(text: str) -> IntMatrix:
    lines = _content_lines(text)
    A = _read_matrix(lines)
    for lineno, _ in lines:
        raise ParseError("trailing content after matrix", lineno)
    return A


def format_matrix(A: IntMatrix) -> str:
    out = [f"{A.rows} {A.cols}"]
    out.extend(" ".join(str(x) for x in r) for r in A)
    return "\n".join(out) + "\n"


def parse_instance(text: str):
    """Parse an IP instance file.

    Standard form carries ``b:`` and ``c:`` lines after the matrix; inequality
    form carries ``g:`` and ``h:``.  Returns ``(kind, matrix, vectors)`` where
    kind is ``"standard"`` or ``"inequality"``.
    """
    lines = _content_lines(text)
    A = _read_matrix(lines)
    vectors = {}
    for lineno, line in lines:
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("b", "c", "g", "h"):
            raise ParseError(f"expected 'b:', 'c:', 'g:' or 'h:' line, got {line!r}", lineno)
        if key in vectors:
            raise ParseError(f"duplicate '{key}:' line", lineno)
        vectors[key] = (_ints(rest.split(), lineno), lineno)
    if set(vectors) == {"b", "c"}:
        kind, lens = "standard", {"b": A.rows, "c": A.cols}
    elif set(vectors) == {"g", "h"}:
        kind, lens = "inequality", {"g": A.rows, "h": A.cols}
    else:
        raise ParseError("instance needs either 'b:'/'c:' or 'g:'/'h:' lines")
    for key, size in lens.items():
        vec, lineno = vectors[key]
        if len(vec) != size:
            raise ParseError(f"'{key}:' needs {size} entries, got {len(vec)}", lineno)
    return kind, A, {k: tuple(v) for k, (v, _) in vectors.items()}


def format_instance(A: IntMatrix, first, second, kind="standard") -> str:
    k1, k2 = ("b", "c") if kind == "standard" else ("g", "h")
    return (
        format_matrix(A)
        + f"{k1}: " + " ".join(str(v) for v in first) + "\n"
        + f"{k2}: " + " ".join(str(v) for v in second) + "\n"
    )
