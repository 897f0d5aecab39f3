"""Exact dense linear algebra over the rationals.

Matrices carry ``Fraction`` entries.  A ``Subspace`` is stored as the unique
reduced row-echelon basis inside a fixed ambient coordinate space, so equal
subspaces compare equal structurally.  The elimination engine works on
primitive integer rows (each row cleared of denominators and divided by the
gcd of its entries); that is equivalent to rational Gauss-Jordan elimination
but avoids per-entry ``Fraction`` normalisation in the inner loops.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Coeff = int | Fraction
IntRow = dict[int, int]  # sparse row, no explicit zeros


class ContainmentError(ValueError):
    """A claimed subspace containment failed; ``witness`` is a vector of the
    smaller space that does not lie in the larger one."""

    def __init__(self, message: str, witness: dict[int, Fraction]):
        super().__init__(message)
        self.witness = witness


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected (int or Fraction), got {type(x).__name__}")


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def _primitive(row: IntRow) -> IntRow:
    """Divide by the gcd and make the leading (lowest-index) entry positive."""
    if not row:
        return row
    g = _gcd_all(row.values())
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _int_row(vec) -> IntRow:
    """Sparse primitive integer row from a mapping or sequence of rationals."""
    if isinstance(vec, Mapping):
        items = vec.items()
    else:
        items = enumerate(vec)
    frac: dict[int, Fraction] = {}
    for c, v in items:
        f = _as_fraction(v)
        if f:
            frac[c] = f
    if not frac:
        return {}
    den = 1
    for f in frac.values():
        den = den * f.denominator // math.gcd(den, f.denominator)
    return _primitive({c: int(f * den) for c, f in frac.items()})


def _eliminate(v: IntRow, row: IntRow, p: int) -> IntRow:
    """Return a multiple of v with column p cleared against ``row`` (pivot p)."""
    a, b = row[p], v[p]
    g = math.gcd(a, b)
    a //= g
    b //= g
    out = {c: a * x for c, x in v.items()}
    for c, x in row.items():
        n = out.get(c, 0) - b * x
        if n:
            out[c] = n
        else:
            out.pop(c, None)
    g = _gcd_all(out.values())
    if g > 1:
        out = {c: x // g for c, x in out.items()}
    return out


class _Spanner:
    """Incremental row space with one stored row per pivot column."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec: IntRow) -> bool:
        """Reduce ``vec`` against the current rows; keep it if independent."""
        v = vec
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                self.rows[p] = _primitive(dict(v))
                return True
            v = _eliminate(v, row, p)
        return False

    def canonical(self) -> list[IntRow]:
        """Fully reduced rows (zero above and below every pivot), by pivot."""
        pivots = sorted(self.rows)
        done: dict[int, IntRow] = {}
        for p in reversed(pivots):
            r = self.rows[p]
            for q in sorted(c for c in r if c != p and c in self.rows):
                if q in r:  # may already be cleared by an earlier step
                    r = _eliminate(r, done[q], q)
            done[p] = _primitive(r)
        return [done[p] for p in pivots]


class Matrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[Coeff]]):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(
            self, "entries", tuple(tuple(_as_fraction(x) for x in r) for r in entries)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[Coeff]], cols: int | None = None) -> "Matrix":
        entries = [list(r) for r in entries]
        if cols is None:
            if not entries:
                raise ValueError("cannot infer column count from an empty row list")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _rational_row(int_row: IntRow, cols: int) -> list[Fraction]:
    pivot_value = int_row[min(int_row)]
    out = [Fraction(0)] * cols
    for c, v in int_row.items():
        out[c] = Fraction(v, pivot_value)
    return out


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.  Zero rows sink to the bottom."""
    sp = _Spanner()
    for i in range(m.rows):
        sp.insert(_int_row(m.entries[i]))
    canon = sp.canonical()
    out = [_rational_row(r, m.cols) for r in canon]
    while len(out) < m.rows:
        out.append([Fraction(0)] * m.cols)
    return Matrix(m.rows, m.cols, out), len(canon)


def _kernel_rows(n: int, canonical_rows: list[IntRow]) -> list[IntRow]:
    """Null space of the matrix with the given fully reduced rows."""
    by_pivot = {min(r): r for r in canonical_rows}
    free_cols = [c for c in range(n) if c not in by_pivot]
    out = []
    for f in free_cols:
        hits = [(p, r) for p, r in by_pivot.items() if f in r]
        scale = 1
        for p, r in hits:
            scale = scale * r[p] // math.gcd(scale, r[p])
        vec = {f: scale}
        for p, r in hits:
            vec[p] = -r[f] * (scale // r[p])
        out.append(_primitive(vec))
    return out


def kernel(m: Matrix) -> "Subspace":
    """Right null space of ``m`` as a subspace of the column coordinate space."""
    sp = _Spanner()
    for i in range(m.rows):
        sp.insert(_int_row(m.entries[i]))
    return Subspace._from_rows(m.cols, _kernel_rows(m.cols, sp.canonical()))


class Subspace:
    """A linear subspace of Q^n held as its canonical RREF basis.

    The basis rows are stored as primitive integer vectors; dividing each by
    its pivot entry recovers the rational RREF (pivot entries 1, pivot
    columns otherwise zero), which is what :attr:`basis` exposes.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):  # noqa: D401
        sp = _Spanner()
        for v in vectors:
            row = _int_row(v)
            if row and max(row) >= ambient_dim:
                raise ValueError(f"vector index {max(row)} outside ambient dimension {ambient_dim}")
            sp.insert(row)
        self._install(ambient_dim, sp.canonical())

    def _install(self, ambient_dim: int, rows: list[IntRow]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(self, "_pivots", tuple(min(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def _from_rows(cls, ambient_dim: int, rows: list[IntRow]) -> "Subspace":
        """Trusted constructor: ``rows`` must already be canonical."""
        self = object.__new__(cls)
        self._install(ambient_dim, rows)
        return self

    @classmethod
    def from_spanner(cls, ambient_dim: int, sp: _Spanner) -> "Subspace":
        return cls._from_rows(ambient_dim, sp.canonical())

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls._from_rows(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.coordinate_span(ambient_dim, range(ambient_dim))

    @classmethod
    def coordinate_span(cls, ambient_dim: int, cols: Iterable[int]) -> "Subspace":
        return cls._from_rows(ambient_dim, [{c: 1} for c in sorted(set(cols))])

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        return Matrix(self.rank, self.ambient_dim, [_rational_row(r, self.ambient_dim) for r in self._rows])

    def integer_rows(self) -> tuple[IntRow, ...]:
        """The primitive integer form of the RREF basis rows."""
        return self._rows

    def rational_rows(self) -> Iterator[dict[int, Fraction]]:
        for r in self._rows:
            piv = r[min(r)]
            yield {c: Fraction(v, piv) for c, v in r.items()}

    @property
    def is_zero(self) -> bool:
        return not self._rows

    def reduce(self, vector) -> dict[int, Fraction]:
        """Residual of ``vector`` after eliminating this basis; {} iff member.

        The result is supported on non-pivot columns only, so it is the
        canonical representative of ``vector`` modulo this subspace.
        """
        v: dict[int, Fraction] = {}
        items = vector.items() if isinstance(vector, Mapping) else enumerate(vector)
        for c, x in items:
            f = _as_fraction(x)
            if f:
                if c >= self.ambient_dim:
                    raise ValueError(f"vector index {c} outside ambient dimension {self.ambient_dim}")
                v[c] = f
        # rows are mutually reduced, so one ascending pass clears every pivot
        for p, row in zip(self._pivots, self._rows):
            x = v.get(p)
            if not x:
                continue
            factor = x / row[p]
            for c, rv in row.items():
                n = v.get(c, Fraction(0)) - factor * rv
                if n:
                    v[c] = n
                else:
                    v.pop(c, None)
        return v

    def contains(self, vector) -> bool:
        return not self.reduce(vector)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(not self.reduce(dict(r)) for r in other._rows)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        sp = _Spanner()
        for r in self._rows:
            sp.insert(dict(r))
        for r in other._rows:
            sp.insert(dict(r))
        return Subspace.from_spanner(self.ambient_dim, sp)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: row-reduce [B|B] over [C|0]; rows supported on the
        right block form a basis of the intersection."""
        self._check_ambient(other)
        n = self.ambient_dim
        sp = _Spanner()
        for r in self._rows:
            wide = dict(r)
            wide.update({c + n: v for c, v in r.items()})
            sp.insert(wide)
        for r in other._rows:
            sp.insert(dict(r))
        rows = [{c - n: v for c, v in r.items()} for r in sp.canonical() if min(r) >= n]
        return Subspace._from_rows(n, rows)

    def quotient_dim(self, other: "Subspace") -> int:
        """dim(self / other); requires other to be contained in self."""
        self._check_ambient(other)
        for r in other._rows:
            residual = self.reduce(dict(r))
            if residual:
                raise ContainmentError(
                    "quotient undefined: denominator subspace is not contained in the numerator",
                    residual,
                )
        return self.rank - other.rank

    def intersect_suffix(self, start: int) -> "Subspace":
        """Intersection with the trailing coordinate subspace span{e_j : j >= start}.

        For an RREF basis this is exactly the rows whose pivot is >= start.
        """
        return Subspace._from_rows(
            self.ambient_dim, [dict(r) for r, p in zip(self._rows, self._pivots) if p >= start]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self):
        return f"Subspace(dim {self.rank} of Q^{self.ambient_dim})"
