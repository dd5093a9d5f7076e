"""Dense polynomial matrices and module presentations."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import BadSize, IndexOutOfRange, InputError, RingMismatch
from .polyring import Poly, Ring, Vector


class PolyMatrix:
    """``rows x cols`` matrix of polynomials over one ring."""

    def __init__(self, ring: Ring, rows: Sequence[Sequence], ncols: int | None = None):
        self.ring = ring
        self.rows: list[list[Poly]] = [[ring(e) for e in r] for r in rows]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise BadSize("ragged matrix")
        self._ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[str]]) -> PolyMatrix:
        return cls(ring, [[ring.parse(e) for e in r] for r in rows])

    @classmethod
    def from_columns(cls, ring: Ring, cols: Sequence[Sequence[Poly]], nrows: int | None = None) -> PolyMatrix:
        if not cols:
            return cls(ring, [[] for _ in range(nrows or 0)])
        return cls(ring, [[c[i] for c in cols] for i in range(len(cols[0]))], len(cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> PolyMatrix:
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: Ring, entries: Sequence) -> PolyMatrix:
        n = len(entries)
        return cls(ring, [[ring(entries[i]) if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Poly]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Poly]]:
        return [self.column(j) for j in range(self.ncols)]

    def column_vectors(self) -> list[Vector]:
        return [Vector.from_polys(c, self.ring) for c in self.columns()]

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [list(c) for c in self.columns()])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        for i in rows:
            if not 0 <= i < self.nrows:
                raise IndexOutOfRange(f"row {i}")
        for j in cols:
            if not 0 <= j < self.ncols:
                raise IndexOutOfRange(f"column {j}")
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def select_rows(self, rows: Sequence[int]) -> PolyMatrix:
        return self.submatrix(rows, range(self.ncols))

    def select_columns(self, cols: Sequence[int]) -> PolyMatrix:
        return self.submatrix(range(self.nrows), cols)

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.ncols != other.nrows:
            raise BadSize(f"{self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        R = self.ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(R, out, other.ncols)

    def hstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.nrows != other.nrows:
            raise BadSize("row counts differ")
        return PolyMatrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)])

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    def map_entries(self, fn) -> PolyMatrix:
        return PolyMatrix(self.ring, [[fn(e) for e in r] for r in self.rows])

    def change_ring(self, ring: Ring) -> PolyMatrix:
        return PolyMatrix(ring, [[e.change_ring(ring) for e in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.rows]

    def __str__(self):
        cells = self.to_strings()
        if not cells:
            return "[]"
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


@dataclass
class ModulePresentation:
    """Cokernel of ``relations``: rows are generators, columns relations.

    ``mult`` (optional) is the multiplication table of an algebra structure:
    ``mult[i][j]`` is the coordinate vector of ``b_i * b_j``; ``unit`` holds
    the coordinates of 1.
    """

    ring: Ring
    labels: list[str]
    relations: PolyMatrix
    mult: list | None = dc_field(default=None, repr=False)
    unit: list | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.relations.nrows != len(self.labels) and self.relations.ncols:
            raise InputError("relation matrix rows must match the generator count")

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def columns(self) -> list[list[Poly]]:
        return self.relations.columns()

    def submodule(self):
        from .ideals import Submodule

        return Submodule.from_columns(self.ring, self.ngens, self.columns())

    def with_relations(self, relations: PolyMatrix) -> ModulePresentation:
        return ModulePresentation(self.ring, self.labels, relations, self.mult, self.unit)
