"""Exact linear algebra over a :class:`~matfact.field.Field`.

Matrices are lists of rows (lists of field elements). Sparse vectors are
``dict[int, coeff]`` with no zero values. Prime fields are routed through
``python-flint``'s ``nmod_mat`` where a dense kernel is worthwhile; everything
else uses Gaussian elimination written here.
"""

from __future__ import annotations

from dataclasses import dataclass

import flint

from .field import Field, PrimeField

# below this many entries the pure-Python path beats the flint conversion cost
_FLINT_MIN_ENTRIES = 400


def _use_flint(field: Field, nrows: int, ncols: int) -> bool:
    return isinstance(field, PrimeField) and nrows * ncols >= _FLINT_MIN_ENTRIES


def _to_nmod(rows, ncols: int, p: int) -> flint.nmod_mat:
    if not rows:
        return flint.nmod_mat(0, ncols, [], p)
    return flint.nmod_mat([list(r) for r in rows], p)


def row_reduce(rows, field: Field, ncols: int | None = None):
    """Reduced row echelon form. Returns ``(rref_rows, pivot_columns)``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if _use_flint(field, len(rows), ncols):
        R, rk = _to_nmod(rows, ncols, field.p).rref()
        out = [[int(x) for x in R.table()[i]] for i in range(rk)]
        pivots = [next(j for j, x in enumerate(r) if x) for r in out]
        return out, pivots
    M = [[field(x) for x in r] for r in rows]
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        if pr == len(M):
            break
        sel = next((i for i in range(pr, len(M)) if not field.is_zero(M[i][c])), None)
        if sel is None:
            continue
        M[pr], M[sel] = M[sel], M[pr]
        inv = field.inv(M[pr][c])
        M[pr] = [field(x * inv) for x in M[pr]]
        for i in range(len(M)):
            if i != pr and not field.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [field(a - f * b) for a, b in zip(M[i], M[pr])]
        pivots.append(c)
        pr += 1
    return M[:pr], pivots


def rank(rows, field: Field, ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    if _use_flint(field, len(rows), ncols):
        return _to_nmod(rows, ncols, field.p).rank()
    return len(row_reduce(rows, field, ncols)[1])


def nullspace(rows, field: Field, ncols: int) -> list[list]:
    """Basis of ``{v : rows * v = 0}``, one vector per free column."""
    R, pivots = row_reduce(rows, field, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = field(1)
        for r, pc in zip(R, pivots):
            if not field.is_zero(r[free]):
                v[pc] = field(-r[free])
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Solution:
    """Outcome of :func:`solve`: a particular solution (or ``None``) and the kernel basis."""

    particular: list | None
    kernel: list[list]

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve(rows, rhs, field: Field, ncols: int | None = None) -> Solution:
    """Solve ``rows * x = rhs`` exactly."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = row_reduce(aug, field, ncols + 1) if aug else ([], [])
    kernel = nullspace(rows, field, ncols)
    if ncols in pivots:
        return Solution(None, kernel)
    x = [0] * ncols
    for r, pc in zip(R, pivots):
        x[pc] = field(r[ncols])
    return Solution(x, kernel)


def matmul(A, B, field: Field):
    if not A:
        return []
    n = len(B[0]) if B else 0
    cols = list(zip(*B)) if B else [() for _ in range(n)]
    return [[field(sum(a * b for a, b in zip(row, col))) for col in cols] for row in A]


# -- sparse ------------------------------------------------------------------


def _reduce_against(v: dict, pivots: dict, field: Field) -> dict:
    p = field.p if isinstance(field, PrimeField) else None
    while v:
        k = min(v)
        piv = pivots.get(k)
        if piv is None:
            return v
        f = v[k]
        if p is not None:
            for i, c in piv.items():
                nv = (v.get(i, 0) - f * c) % p
                if nv:
                    v[i] = nv
                else:
                    v.pop(i, None)
            continue
        for i, c in piv.items():
            nv = field(v.get(i, 0) - f * c)
            if field.is_zero(nv):
                v.pop(i, None)
            else:
                v[i] = nv
    return v


class SparseEchelon:
    """Incremental echelon basis of a span of sparse vectors.

    ``add`` returns True when the vector enlarged the span. Pivots are keyed by
    the smallest index of the reduced vector, which is normalised to 1.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        return _reduce_against(dict(vec), self.pivots, self.field)

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        k = min(v)
        inv = self.field.inv(v[k])
        self.pivots[k] = {i: self.field(c * inv) for i, c in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


# dense flint elimination is far faster than sparse Python elimination with fill-in
_FLINT_MAX_ENTRIES = 16_000_000


def sparse_rank(vectors, field: Field, dim: int | None = None) -> int:
    """Rank of a family of sparse vectors (``dim`` is the ambient dimension)."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    if dim is not None and _use_flint(field, len(vectors), dim) and len(vectors) * dim <= _FLINT_MAX_ENTRIES:
        flat = [0] * (len(vectors) * dim)
        for r, v in enumerate(vectors):
            base = r * dim
            for i, c in v.items():
                flat[base + i] = c
        return flint.nmod_mat(len(vectors), dim, flat, field.p).rank()
    ech = SparseEchelon(field)
    for v in vectors:
        ech.add(v)
    return len(ech)


def sparse_to_dense(vectors, dim: int) -> list[list]:
    rows = []
    for v in vectors:
        r = [0] * dim
        for i, c in v.items():
            r[i] = c
        rows.append(r)
    return rows
