"""The Hom complex between two factorizations and stable (homotopy) Hom dimensions.

For fixed internal degree ``t`` the Hom complex is a complex of finite
dimensional k-spaces ``Hom^i_t``; the k-basis of ``Hom^i_t`` consists of
*elementary morphisms* (one monomial in one matrix cell). ``Hom^i_t`` only
depends on ``i mod 2`` and ``u = t + i*D/2``, so pieces are cached by
``(parity, u)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .core import (MatrixFactorization, MfMorphism, blocks_for, is_closed)
from .errors import NotClosedError, RingMismatchError
from .linalg import sparse_rank, sparse_to_dense, solve
from .matrix import PolyMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Elementary:
    """Monomial ``mono`` in cell ``(row, col)`` of block ``(target_part, source_part)``."""

    target_part: int
    source_part: int
    row: int
    col: int
    mono: tuple[int, ...]


class _Piece:
    __slots__ = ("basis", "index")

    def __init__(self, basis):
        self.basis = basis
        self.index = {b: n for n, b in enumerate(basis)}

    def __len__(self):
        return len(self.basis)


class HomSpace:
    """Lazily computed Hom complex ``Hom•(E, F)``."""

    def __init__(self, E: MatrixFactorization, F: MatrixFactorization):
        if E.ring != F.ring or E.potential != F.potential:
            raise RingMismatchError("Hom needs factorizations of the same potential over the same ring")
        self.E, self.F = E, F
        self.ring = E.ring
        self.field = E.ring.field
        self.half = E.half
        self._pieces: dict = {}
        self._dcols: dict = {}
        self._ranks: dict = {}

    # -- bases ----------------------------------------------------------------

    def piece(self, parity: int, u: int) -> _Piece:
        key = (parity % 2, u)
        pc = self._pieces.get(key)
        if pc is None:
            basis = []
            for tp, sp in blocks_for(parity):
                tdeg, sdeg = self.F.part_degrees(tp), self.E.part_degrees(sp)
                for r, td in enumerate(tdeg):
                    for s, sd in enumerate(sdeg):
                        for m in self.ring.monomials(sd - td + u):
                            basis.append((tp, sp, r, s, m))
            pc = self._pieces[key] = _Piece(basis)
        return pc

    def dim(self, parity: int, u: int) -> int:
        return len(self.piece(parity, u))

    def lowest_u(self) -> float:
        """Smallest ``u`` with a nonzero piece (in either parity)."""
        best = float("inf")
        for parity in (0, 1):
            for tp, sp in blocks_for(parity):
                for td in self.F.part_degrees(tp):
                    for sd in self.E.part_degrees(sp):
                        best = min(best, td - sd)
        return best

    # -- differential ------------------------------------------------------

    def d_columns(self, parity: int, u: int) -> list[dict]:
        """Sparse images ``d(e)`` of the basis of piece ``(parity, u)`` in piece ``(1-parity, u+D/2)``."""
        key = (parity % 2, u)
        cols = self._dcols.get(key)
        if cols is not None:
            return cols
        F_, E_ = self.F, self.E
        tgt = self.piece(parity + 1, u + self.half).index
        fld = self.field
        sign = -1 if parity % 2 == 0 else 1
        cols = []
        for tp, sp, r, s, m in self.piece(parity, u).basis:
            v: dict = {}
            # δ_F ∘ e lands in block (1 - tp, sp), column s
            dF = F_.delta(1 - tp, tp)
            for r2 in range(dF.nrows):
                p = dF.entries[r2][r]
                for e, c in p.terms.items():
                    k = tgt[(1 - tp, sp, r2, s, tuple(a + b for a, b in zip(e, m)))]
                    v[k] = v.get(k, 0) + c
            # e ∘ δ_E lands in block (tp, 1 - sp), row r
            dE = E_.delta(sp, 1 - sp)
            for s2 in range(dE.ncols):
                p = dE.entries[s][s2]
                for e, c in p.terms.items():
                    k = tgt[(tp, 1 - sp, r, s2, tuple(a + b for a, b in zip(e, m)))]
                    v[k] = v.get(k, 0) + sign * c
            cols.append({k: fc for k, c in v.items() if (fc := fld(c)) != 0})
        self._dcols[key] = cols
        return cols

    def d_rank(self, parity: int, u: int) -> int:
        key = (parity % 2, u)
        rk = self._ranks.get(key)
        if rk is None:
            cols = self.d_columns(parity, u)
            rk = sparse_rank(cols, self.field, self.dim(parity + 1, u + self.half))
            self._ranks[key] = rk
        return rk

    def d_matrix(self, parity: int, u: int) -> list[list]:
        """Dense matrix of ``d`` (rows: target basis, cols: source basis)."""
        cols = self.d_columns(parity, u)
        n = self.dim(parity + 1, u + self.half)
        dense_cols = sparse_to_dense(cols, n)
        return [list(r) for r in zip(*dense_cols)] if dense_cols else [[] for _ in range(n)]

    def cohomology_dim(self, parity: int, u: int) -> int:
        return self.dim(parity, u) - self.d_rank(parity, u) - self.d_rank(parity + 1, u - self.half)

    # -- conversion between morphisms and coordinates ---------------------

    def coordinates(self, f: MfMorphism) -> dict:
        """Sparse coordinates of ``f`` in its piece; raises if ``f`` is not homogeneous."""
        pc = self.piece(f.parity, f.u)
        out = {}
        for (tp, sp), M in f.blocks.items():
            for r, s, p in M.nonzero_cells():
                for e, c in p.terms.items():
                    k = pc.index.get((tp, sp, r, s, e))
                    if k is None:
                        raise ValueError(f"morphism is not homogeneous of degree u={f.u}: term in cell {(r, s)}")
                    out[k] = c
        return out

    def element(self, parity: int, u: int, vector, degree: int | None = None) -> MfMorphism:
        """Morphism with the given coordinates (dense list or sparse dict)."""
        pc = self.piece(parity, u)
        items = vector.items() if isinstance(vector, dict) else enumerate(vector)
        cells: dict = {}
        for k, c in items:
            if c == 0:
                continue
            tp, sp, r, s, m = pc.basis[k]
            cells.setdefault((tp, sp), {}).setdefault((r, s), {})[m] = c
        ring = self.ring
        blocks = {}
        for tp, sp in blocks_for(parity):
            nr, nc = self.F.part_rank(tp), self.E.part_rank(sp)
            cellmap = cells.get((tp, sp), {})
            rows = [[ring.zero() if (r, s) not in cellmap else
                     type(ring.zero()).from_terms(ring, cellmap[(r, s)]) for s in range(nc)] for r in range(nr)]
            blocks[(tp, sp)] = PolyMatrix(ring, rows, nr, nc)
        if degree is None:
            degree = parity % 2
        internal = u - degree * self.half
        return MfMorphism(self.E, self.F, degree, internal, blocks)

    def basis_morphisms(self, parity: int, u: int, degree: int | None = None) -> list[MfMorphism]:
        return [self.element(parity, u, {k: 1}, degree) for k in range(self.dim(parity, u))]

    # -- homotopies ------------------------------------------------------------

    def solve_homotopy(self, f: MfMorphism) -> MfMorphism | None:
        target = self.coordinates(f)
        p, u = f.parity, f.u
        src_p, src_u = p + 1, u - self.half
        n_src = self.dim(src_p, src_u)
        n_tgt = self.dim(p, u)
        if n_src == 0:
            return self.element(src_p, src_u, {}, f.degree - 1) if not target else None
        A = self.d_matrix(src_p, src_u)
        rhs = [target.get(k, 0) for k in range(n_tgt)]
        sol = solve(A, rhs, self.field, n_src)
        if not sol.solvable:
            return None
        return self.element(src_p, src_u, sol.particular, f.degree - 1)


@dataclass(frozen=True)
class HomComplexPiece:
    """``Hom^i`` at internal degree ``t``: a k-basis and the matrix of ``d`` to ``Hom^{i+1}``."""

    cohomological_degree: int
    internal_degree: int
    basis: tuple[Elementary, ...]
    differential_matrix: tuple[tuple, ...] | None

    @property
    def dim(self) -> int:
        return len(self.basis)


def _matmul_sparse(A_cols, B_cols):
    """Columns of ``A*B`` given sparse columns of A and of B."""
    out = []
    for col in B_cols:
        v: dict = {}
        for k, c in col.items():
            for i, a in A_cols[k].items():
                v[i] = v.get(i, 0) + a * c
        out.append(v)
    return out


def hom_complex(E: MatrixFactorization, F: MatrixFactorization, window: tuple[int, int] | None = None,
                degrees=(-1, 0, 1, 2), space: HomSpace | None = None) -> list[HomComplexPiece]:
    """Pieces ``Hom^i_t`` for ``t`` in the internal-degree window and ``i`` in ``degrees``.

    Empty pieces are omitted. ``d∘d = 0`` is checked exactly on every
    consecutive pair; a violation raises ``AssertionError``.
    """
    H = space or HomSpace(E, F)
    lo, hi = window if window is not None else default_window(E)
    fld = H.field
    out = []
    for t in range(lo, hi + 1):
        for i in degrees:
            p, u = i % 2, t + i * H.half
            pc = H.piece(p, u)
            if not len(pc):
                continue
            dmat = None
            if i + 1 in degrees:
                dmat = tuple(tuple(r) for r in H.d_matrix(p, u))
            if i - 1 in degrees and i + 1 in degrees:
                dd = _matmul_sparse(H.d_columns(p, u), H.d_columns(p + 1, u - H.half))
                if any(fld(c) != 0 for col in dd for c in col.values()):
                    raise AssertionError(f"d∘d != 0 at t={t}, i={i}")
            basis = tuple(Elementary(*b) for b in pc.basis)
            out.append(HomComplexPiece(i, t, basis, dmat))
    return out


def default_window(E: MatrixFactorization) -> tuple[int, int]:
    """``[-4 D, 4 D]`` with ``D`` the doubled degree of the potential."""
    return (-4 * E.D, 4 * E.D)


def stable_hom_dim(E: MatrixFactorization, F: MatrixFactorization, parity, internal_degree: int,
                   space: HomSpace | None = None) -> int:
    """``dim H^i Hom•(E, F)`` at internal degree ``internal_degree``, ``i`` the parity (0 or 1)."""
    p = _parity(parity)
    H = space or HomSpace(E, F)
    return H.cohomology_dim(p, internal_degree + p * H.half)


def _parity(parity) -> int:
    if isinstance(parity, str):
        if parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
        return 0 if parity == "even" else 1
    return int(parity) % 2


@dataclass(frozen=True)
class StableHomTable:
    """Stable Hom dimensions over a window, with edge diagnostics."""

    parity: int
    window: tuple[int, int]
    dims: dict
    lower_certified: bool
    upper_edge_zero: bool
    warnings: tuple[str, ...]

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def to_dict(self):
        return {"parity": "even" if self.parity == 0 else "odd", "window": list(self.window),
                "dims": {str(t): d for t, d in sorted(self.dims.items()) if d},
                "total": self.total, "lower_certified": self.lower_certified,
                "upper_edge_zero": self.upper_edge_zero, "warnings": list(self.warnings)}


def stable_hom_table(E, F, parity, window=None, space: HomSpace | None = None) -> StableHomTable:
    p = _parity(parity)
    H = space or HomSpace(E, F)
    lo, hi = window if window is not None else default_window(E)
    dims = {t: H.cohomology_dim(p, t + p * H.half) for t in range(lo, hi + 1)}
    # below lowest_u every piece is empty, so nothing is lost below the window
    lower = lo - 1 + p * H.half < H.lowest_u()
    edge = [t for t in range(max(lo, hi - H.half), hi + 1) if dims[t]]
    warnings = []
    if not lower:
        warnings.append(f"pieces below internal degree {lo} may be nonzero; lower window edge not certified")
    if edge:
        warnings.append(f"nonzero stable Hom at the upper window edge (t={edge}); totals may be truncated")
    for w in warnings:
        log.info(w)
    return StableHomTable(p, (lo, hi), dims, lower, not edge, tuple(warnings))


def total_stable_hom_dim(E, F, parity, window=None, space: HomSpace | None = None) -> int:
    return stable_hom_table(E, F, parity, window, space).total


def is_null_homotopic(f: MfMorphism) -> bool:
    if not is_closed(f):
        raise NotClosedError("is_null_homotopic needs a closed morphism")
    return HomSpace(f.source, f.target).solve_homotopy(f) is not None
