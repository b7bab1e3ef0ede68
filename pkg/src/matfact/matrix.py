"""Dense matrices of polynomials.

Map convention: a matrix with ``rows x cols`` sends the free module on the
``cols`` source generators to the free module on the ``rows`` target
generators; column ``j`` is the image of source generator ``j``.
"""

from __future__ import annotations

from .errors import RingMismatchError
from .poly import Poly, Ring


class PolyMatrix:
    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: Ring, entries, nrows: int | None = None, ncols: int | None = None):
        rows = tuple(tuple(ring(x) for x in row) for row in entries)
        self.ring = ring
        self.nrows = len(rows) if nrows is None else nrows
        self.ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        if rows and (len(rows) != self.nrows or any(len(r) != self.ncols for r in rows)):
            raise ValueError("ragged or mis-sized matrix")
        if not rows and self.nrows:
            rows = tuple(tuple(ring.zero() for _ in range(self.ncols)) for _ in range(self.nrows))
        self.entries = rows

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> PolyMatrix:
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> PolyMatrix:
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, ring: Ring, n: int, p) -> PolyMatrix:
        p = ring(p)
        z = ring.zero()
        return cls(ring, [[p if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def block(cls, ring: Ring, blocks) -> PolyMatrix:
        """Assemble from a 2-d grid of matrices (``None`` means a zero block)."""
        heights = [next(b.nrows for b in row if b is not None) for row in blocks]
        widths = [next(blocks[i][j].ncols for i in range(len(blocks)) if blocks[i][j] is not None)
                  for j in range(len(blocks[0]))]
        rows = []
        for bi, row in enumerate(blocks):
            for r in range(heights[bi]):
                out = []
                for bj, b in enumerate(row):
                    if b is None:
                        out.extend([ring.zero()] * widths[bj])
                    else:
                        out.extend(b.entries[r])
                rows.append(out)
        return cls(ring, rows, sum(heights), sum(widths))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "PolyMatrix([" + "; ".join(", ".join(str(p) for p in row) for row in self.entries) + "])"

    def rows(self):
        return self.entries

    def column(self, j: int) -> tuple[Poly, ...]:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def nonzero_cells(self):
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                if p:
                    yield i, j, p

    def _check(self, other: PolyMatrix):
        if other.ring != self.ring:
            raise RingMismatchError("matrices over different rings")

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                          self.nrows, self.ncols)

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], self.nrows, self.ncols)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return self.scale(other)
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for row in self.entries:
            r = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                r.append(acc)
            out.append(r)
        return PolyMatrix(self.ring, out, self.nrows, other.ncols)

    def scale(self, c) -> PolyMatrix:
        c = self.ring(c)
        return PolyMatrix(self.ring, [[a * c for a in r] for r in self.entries], self.nrows, self.ncols)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [list(c) for c in zip(*self.entries)] if self.nrows else [],
                          self.ncols, self.nrows)

    def map(self, fn, ring: Ring | None = None) -> PolyMatrix:
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(a) for a in r] for r in self.entries], self.nrows, self.ncols)

    def normal_form(self, W: Poly) -> PolyMatrix:
        return self.map(lambda a: a.normal_form(W))

    def evaluate(self, point) -> list[list]:
        return [[a.evaluate(point) for a in r] for r in self.entries]

    def substitute(self, images, target: Ring) -> PolyMatrix:
        return self.map(lambda a: a.substitute(images, target), target)

    def submatrix(self, rows, cols) -> PolyMatrix:
        rows, cols = list(rows), list(cols)
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols))


def kron(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    """Kronecker product, row/column index ``(i_A, i_B)`` in lexicographic order."""
    ring = A.ring
    rows = []
    for ra in A.entries:
        for rb in B.entries:
            rows.append([a * b for a in ra for b in rb])
    return PolyMatrix(ring, rows, A.nrows * B.nrows, A.ncols * B.ncols)
