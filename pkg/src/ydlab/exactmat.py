"""Exact rational linear maps.

A ``LinMap`` is a ``cod_dim x dom_dim`` matrix over the rationals. Tensor
products use the row-major convention: for an m-dimensional and an
n-dimensional space, ``e_i (x) e_j`` has flat index ``i*n + j``.

Entries are held as a dictionary of nonzero rows so that the large composite
maps built from tensor powers stay cheap; ``entries`` exposes the dense view.
Integral values are stored as ``int`` and everything else as a reduced
``Fraction``, which keeps the arithmetic exact while avoiding Fraction
overhead on the common +-1 entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, MalformedInput, NotInvertible

Scalar = int | Fraction


def _norm(v) -> Scalar:
    if isinstance(v, bool):
        raise MalformedInput(f"boolean is not a matrix entry: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, str):
        return parse_scalar(v)
    raise MalformedInput(f"unsupported matrix entry: {v!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"`` with decimal integers and ``q > 0``."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise MalformedInput(f"not a rational literal: {text!r}") from None
    if sep and (not den.strip().isdigit() or q <= 0):
        raise MalformedInput(f"denominator must be a positive integer: {text!r}")
    return _norm(Fraction(p, q))


def format_scalar(v: Scalar) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class LinMap:
    """Immutable rational matrix with explicit domain and codomain dimensions."""

    __slots__ = ("cod_dim", "dom_dim", "_rows", "_key")

    def __init__(self, entries: Sequence[Sequence], dom_dim: int | None = None):
        rows = [list(r) for r in entries]
        if not rows:
            raise MalformedInput("a matrix needs at least one row")
        width = len(rows[0]) if dom_dim is None else dom_dim
        data: dict[int, dict[int, Scalar]] = {}
        for i, row in enumerate(rows):
            if len(row) != width:
                raise MalformedInput(f"row {i} has length {len(row)}, expected {width}")
            r = {}
            for j, v in enumerate(row):
                v = _norm(v)
                if v:
                    r[j] = v
            if r:
                data[i] = r
        self._init(len(rows), width, data)

    def _init(self, cod: int, dom: int, rows: dict[int, dict[int, Scalar]]) -> None:
        if cod < 1 or dom < 1:
            raise MalformedInput(f"dimensions must be positive, got {cod}x{dom}")
        self.cod_dim = cod
        self.dom_dim = dom
        self._rows = rows
        self._key = None

    @classmethod
    def from_rows(cls, cod: int, dom: int, rows: Mapping[int, Mapping[int, Scalar]]) -> LinMap:
        """Build from a sparse ``{row: {col: value}}`` mapping; zeros are dropped."""
        data = {}
        for i, r in rows.items():
            if not 0 <= i < cod:
                raise DimensionMismatch(f"row {i} outside codomain of dimension {cod}")
            clean = {}
            for j, v in r.items():
                if not 0 <= j < dom:
                    raise DimensionMismatch(f"column {j} outside domain of dimension {dom}")
                v = _norm(v)
                if v:
                    clean[j] = v
            if clean:
                data[i] = clean
        m = cls.__new__(cls)
        m._init(cod, dom, data)
        return m

    @classmethod
    def from_columns(cls, cod: int, columns: Sequence[Mapping[int, Scalar]]) -> LinMap:
        """Build a map from the images of the basis vectors, given sparsely."""
        rows: dict[int, dict[int, Scalar]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return cls.from_rows(cod, len(columns), rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.cod_dim, self.dom_dim)

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        out = []
        for i in range(self.cod_dim):
            r = self._rows.get(i, {})
            out.append(tuple(Fraction(r.get(j, 0)) for j in range(self.dom_dim)))
        return tuple(out)

    def items(self) -> Iterable[tuple[int, int, Scalar]]:
        """Nonzero entries in row-major order."""
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def row(self, i: int) -> dict[int, Scalar]:
        return dict(self._rows.get(i, {}))

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.cod_dim and 0 <= j < self.dom_dim):
            raise IndexError(ij)
        return Fraction(self._rows.get(i, {}).get(j, 0))

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.cod_dim, self.dom_dim, tuple(self.items()))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return eq(self, other)

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: LinMap) -> LinMap:
        return compose(self, other)

    def __add__(self, other: LinMap) -> LinMap:
        return _combine(self, other, 1)

    def __sub__(self, other: LinMap) -> LinMap:
        return _combine(self, other, -1)

    def __neg__(self) -> LinMap:
        return self.scale(-1)

    def scale(self, c) -> LinMap:
        c = _norm(c)
        return LinMap.from_rows(
            self.cod_dim, self.dom_dim,
            {i: {j: _norm(c * v) for j, v in r.items()} for i, r in self._rows.items()},
        )

    def transpose(self) -> LinMap:
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return LinMap.from_rows(self.dom_dim, self.cod_dim, rows)

    def with_entry(self, i: int, j: int, value) -> LinMap:
        """Copy with one entry replaced; used to build perturbations."""
        rows = {k: dict(r) for k, r in self._rows.items()}
        rows.setdefault(i, {})[j] = value
        return LinMap.from_rows(self.cod_dim, self.dom_dim, rows)

    def __repr__(self) -> str:
        if self.cod_dim * self.dom_dim <= 64:
            body = [[format_scalar(v) for v in r] for r in self.entries]
            return f"LinMap({body})"
        return f"LinMap<{self.cod_dim}x{self.dom_dim}, nnz={self.nnz}>"


def _combine(f: LinMap, g: LinMap, sign: int) -> LinMap:
    if f.shape != g.shape:
        raise DimensionMismatch(f"cannot add {f.shape} and {g.shape}")
    rows = {i: dict(r) for i, r in f._rows.items()}
    for i, r in g._rows.items():
        acc = rows.setdefault(i, {})
        for j, v in r.items():
            acc[j] = acc.get(j, 0) + sign * v
    return LinMap.from_rows(f.cod_dim, f.dom_dim, rows)


def identity(n: int) -> LinMap:
    return LinMap.from_rows(n, n, {i: {i: 1} for i in range(n)})


def zero(cod: int, dom: int) -> LinMap:
    return LinMap.from_rows(cod, dom, {})


def scalar(c) -> LinMap:
    return LinMap([[c]])


def compose(f: LinMap, g: LinMap) -> LinMap:
    """Matrix product ``f . g`` (apply g first)."""
    if f.dom_dim != g.cod_dim:
        raise DimensionMismatch(
            f"cannot compose {f.cod_dim}x{f.dom_dim} after {g.cod_dim}x{g.dom_dim}"
        )
    grows = g._rows
    out: dict[int, dict[int, Scalar]] = {}
    for i, frow in f._rows.items():
        acc: dict[int, Scalar] = {}
        for k, a in frow.items():
            grow = grows.get(k)
            if grow is None:
                continue
            for j, b in grow.items():
                acc[j] = acc.get(j, 0) + a * b
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return LinMap.from_rows(f.cod_dim, g.dom_dim, out)


def chain(*maps: LinMap) -> LinMap:
    """``chain(f, g, h) == f . g . h``, reading right to left like composition."""
    if not maps:
        raise ValueError("chain needs at least one map")
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = compose(m, result)
    return result


def _kron2(f: LinMap, g: LinMap) -> LinMap:
    gc, gd = g.cod_dim, g.dom_dim
    out: dict[int, dict[int, Scalar]] = {}
    for i1, r1 in f._rows.items():
        for i2, r2 in g._rows.items():
            row = {}
            for j1, a in r1.items():
                base = j1 * gd
                for j2, b in r2.items():
                    row[base + j2] = a * b
            out[i1 * gc + i2] = row
    return LinMap.from_rows(f.cod_dim * gc, f.dom_dim * gd, out)


def kron(*maps: LinMap) -> LinMap:
    """Tensor product of maps, first factor slowest."""
    if not maps:
        return scalar(1)
    result = maps[0]
    for m in maps[1:]:
        result = _kron2(result, m)
    return result


def flip(m: int, n: int) -> LinMap:
    """Swap of tensor factors: ``e_i (x) e_j -> e_j (x) e_i`` on an m (x) n space."""
    if m < 1 or n < 1:
        raise MalformedInput("flip dimensions must be positive")
    return LinMap.from_rows(m * n, m * n, {j * m + i: {i * n + j: 1} for i in range(m) for j in range(n)})


def eq(f: LinMap, g: LinMap) -> bool:
    return f.shape == g.shape and f._rows == g._rows


def first_difference(f: LinMap, g: LinMap) -> tuple[int, int, Fraction, Fraction] | None:
    """First (row, col) in row-major order where two same-shaped maps differ."""
    if f.shape != g.shape:
        raise DimensionMismatch(f"cannot compare {f.shape} with {g.shape}")
    for i in sorted(set(f._rows) | set(g._rows)):
        a, b = f._rows.get(i, {}), g._rows.get(i, {})
        if a == b:
            continue
        for j in sorted(set(a) | set(b)):
            if a.get(j, 0) != b.get(j, 0):
                return i, j, Fraction(a.get(j, 0)), Fraction(b.get(j, 0))
    return None


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                factor = rows[k][c]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve(a: LinMap, b: LinMap) -> LinMap:
    """Return one exact solution ``x`` of ``a . x = b``.

    Raises NotInvertible when the system is inconsistent. Free variables
    are set to zero.
    """
    if a.cod_dim != b.cod_dim:
        raise DimensionMismatch(f"solve: {a.shape} against right-hand side {b.shape}")
    n = a.dom_dim
    aug = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    pivots = _row_reduce(aug, n)
    for row in aug[len(pivots):]:
        if any(v != 0 for v in row[n:]):
            raise NotInvertible("linear system is inconsistent")
    x = [[Fraction(0)] * b.dom_dim for _ in range(n)]
    for r, c in enumerate(pivots):
        x[c] = aug[r][n:]
    return LinMap(x)


def rank(a: LinMap) -> int:
    rows = [list(r) for r in a.entries]
    return len(_row_reduce(rows, a.dom_dim))


def inverse(a: LinMap) -> LinMap:
    if a.cod_dim != a.dom_dim:
        raise NotInvertible(f"non-square map {a.shape} has no inverse")
    if rank(a) != a.dom_dim:
        raise NotInvertible("map is singular")
    return solve(a, identity(a.cod_dim))


def parse_matrix(data, where: str = "matrix") -> LinMap:
    """Parse a 2-D array of rational literals (strings; plain ints are accepted too)."""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise MalformedInput(f"{where}: expected a non-empty 2-D array")
    for r in data:
        for v in r:
            if isinstance(v, float):
                raise MalformedInput(f"{where}: floating-point entry {v!r} is not exact")
    try:
        return LinMap(data)
    except MalformedInput as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def format_matrix(m: LinMap) -> list[list[str]]:
    return [[format_scalar(v) for v in r] for r in m.entries]
