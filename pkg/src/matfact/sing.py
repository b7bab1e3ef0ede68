"""Cokernel functor to graded modules over ``S = R/(W)`` and its constructive inverse.

Graded pieces of S-modules are computed on the k-basis of standard
monomials (those not divisible by the leading monomial of ``W``), with all
products reduced to normal form modulo ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import MatrixFactorization, MfMorphism, is_closed, morphism, require_verified, shift
from .errors import HomogeneityError, NotMCMError
from .hom import HomSpace, default_window
from .linalg import SparseEchelon, nullspace, solve, sparse_rank
from .matrix import PolyMatrix
from .poly import INHOMOGENEOUS, Poly, Ring, graded_piece_basis, standard_monomials


# -- S-module pieces ----------------------------------------------------------


def _s_basis(ring: Ring, W: Poly, degree: int, gen_degrees) -> list:
    out = []
    for j, g in enumerate(gen_degrees):
        out.extend((m, j) for m in standard_monomials(ring, degree - g, W))
    return out


def _nf_vector(column, mono, W: Poly, index: dict) -> dict:
    """Coordinates of ``mono * column`` reduced mod W in a standard basis ``index``."""
    v: dict = {}
    for i, p in enumerate(column):
        if not p:
            continue
        q = p.mul_monomial(mono).normal_form(W)
        for e, c in q.terms.items():
            k = index[(e, i)]
            v[k] = v.get(k, 0) + c
    return v


def map_piece_over_S(matrix: PolyMatrix, W: Poly, src_degrees, tgt_degrees, degree: int):
    """Sparse images of the S-basis of the source piece; returns ``(columns, n_src, n_tgt)``."""
    ring = matrix.ring
    src = _s_basis(ring, W, degree, src_degrees)
    tgt = _s_basis(ring, W, degree, tgt_degrees)
    index = {b: n for n, b in enumerate(tgt)}
    fld = ring.field
    cols = []
    for m, j in src:
        v = _nf_vector(matrix.column(j), m, W, index)
        cols.append({k: fc for k, c in v.items() if (fc := fld(c)) != 0})
    return cols, len(src), len(tgt)


@dataclass(frozen=True, eq=False)
class GradedModulePresentation:
    """``coker(relations)`` over ``S = R/(W)``: generators in ``gen_degrees``,
    one relation per column of ``relations``, of degree ``relation_degrees[j]``."""

    ring: Ring
    potential: Poly
    gen_degrees: tuple[int, ...]
    relations: PolyMatrix
    relation_degrees: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gen_degrees", tuple(self.gen_degrees))
        object.__setattr__(self, "relation_degrees", tuple(self.relation_degrees))
        if self.relations.shape != (len(self.gen_degrees), len(self.relation_degrees)):
            raise ValueError("relation matrix shape does not match the degree data")
        W = self.potential
        reduced = self.relations.normal_form(W)
        for i, j, p in reduced.nonzero_cells():
            d = p.weighted_degree()
            if d is INHOMOGENEOUS or d != self.relation_degrees[j] - self.gen_degrees[i]:
                raise HomogeneityError(f"relation entry ({i + 1},{j + 1}) = {p} has the wrong degree")
        object.__setattr__(self, "relations", reduced)

    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    def piece(self, degree: int):
        """``(basis, echelon of relation span)`` for degree ``degree`` of ``S^gens``."""
        hit = self._cache.get(degree)
        if hit is not None:
            return hit
        ring, W = self.ring, self.potential
        basis = _s_basis(ring, W, degree, self.gen_degrees)
        index = {b: n for n, b in enumerate(basis)}
        ech = SparseEchelon(ring.field)
        for j, rd in enumerate(self.relation_degrees):
            col = self.relations.column(j)
            for m in standard_monomials(ring, degree - rd, W):
                v = _nf_vector(col, m, W, index)
                ech.add({k: fc for k, c in v.items() if (fc := ring.field(c)) != 0})
        self._cache[degree] = (basis, index, ech)
        return basis, index, ech

    def hilbert(self, degree: int) -> int:
        basis, _, ech = self.piece(degree)
        return len(basis) - len(ech)

    def hilbert_function(self, lo: int, hi: int) -> dict[int, int]:
        return {d: self.hilbert(d) for d in range(lo, hi + 1)}

    def min_degree(self) -> int:
        return min(self.gen_degrees) if self.gen_degrees else 0

    def annihilated_by_W(self, bound: int) -> bool:
        """Exact check that ``W * e_i`` lies in the relation span, for all generators."""
        W = self.potential
        for i, g in enumerate(self.gen_degrees):
            d = g + W.weighted_degree()
            if d > bound:
                continue
            basis, index, ech = self.piece(d)
            col = [W if k == i else self.ring.zero() for k in range(self.ngens)]
            v = _nf_vector(col, (0,) * self.ring.nvars, W, index)
            if not ech.contains({k: c for k, c in v.items() if self.ring.field(c) != 0}):
                return False
        return True

    def direct_sum(self, other: GradedModulePresentation) -> GradedModulePresentation:
        ring = self.ring
        rows = [list(r) + [ring.zero()] * other.relations.ncols for r in self.relations.entries]
        rows += [[ring.zero()] * self.relations.ncols + list(r) for r in other.relations.entries]
        rel = PolyMatrix(ring, rows, self.ngens + other.ngens, self.relations.ncols + other.relations.ncols)
        return GradedModulePresentation(ring, self.potential, self.gen_degrees + other.gen_degrees, rel,
                                        self.relation_degrees + other.relation_degrees)


def coker_functor(mf: MatrixFactorization) -> GradedModulePresentation:
    """``coker(delta1: E1 -> E0)`` as a graded S-module."""
    return GradedModulePresentation(mf.ring, mf.potential, mf.degrees0, mf.delta1, mf.degrees1)


# -- the 2-periodic complex -------------------------------------------------


@dataclass(frozen=True)
class PeriodicComplex:
    """Consecutive terms of ``com(E)``: ``positions[k]`` has generators in
    ``degrees[k]``; ``maps[k]`` goes from position ``k`` to ``k + 1`` (reduced mod W)."""

    potential: Poly
    positions: tuple[int, ...]
    degrees: tuple[tuple[int, ...], ...]
    maps: tuple[PolyMatrix, ...]


def term_degrees(mf: MatrixFactorization, n: int) -> tuple[int, ...]:
    """Generator degrees of ``com(E)^n``: ``E0 ⊗ L^k`` for ``n = 2k``, ``E1 ⊗ L^{k+1}`` for ``n = 2k+1``."""
    k, r = divmod(n, 2)
    if r == 0:
        return tuple(a - k * mf.D for a in mf.degrees0)
    return tuple(b - (k + 1) * mf.D for b in mf.degrees1)


def term_map(mf: MatrixFactorization, n: int) -> PolyMatrix:
    """``com^n -> com^{n+1}``: ``δ0`` out of even positions, ``δ1`` out of odd ones."""
    return mf.delta0 if n % 2 == 0 else mf.delta1


def two_periodic_complex(mf: MatrixFactorization, length: int, start: int = 0) -> PeriodicComplex:
    """``length`` consecutive maps of ``com(E)`` starting at position ``start``
    (``E0`` restricted to the zero locus sits in position 0)."""
    if length <= 0:
        return PeriodicComplex(mf.potential, (), (), ())
    W = mf.potential
    positions = tuple(range(start, start + length + 1))
    degs = tuple(term_degrees(mf, n) for n in positions)
    maps = tuple(term_map(mf, n).normal_form(W) for n in positions[:-1])
    return PeriodicComplex(W, positions, degs, maps)


@dataclass(frozen=True)
class Defect:
    position: int
    degree: int
    defect: int

    def to_dict(self):
        return {"position": self.position, "degree": self.degree, "defect": self.defect}


@dataclass(frozen=True)
class ExactnessReport:
    max_degree: int
    positions: tuple[int, ...]
    checked: int
    defects: tuple[Defect, ...]

    @property
    def ok(self) -> bool:
        return not self.defects

    def to_dict(self):
        return {"ok": self.ok, "max_degree": self.max_degree, "positions": list(self.positions),
                "checked": self.checked, "defects": [d.to_dict() for d in self.defects]}


def _rank_at(mf, n, degree):
    cols, _, ntgt = map_piece_over_S(term_map(mf, n), mf.potential, term_degrees(mf, n),
                                     term_degrees(mf, n + 1), degree)
    return sparse_rank(cols, mf.field, ntgt), len(cols)


def check_exactness(mf: MatrixFactorization, max_internal_degree: int = 20,
                    positions=(-1, 0, 1)) -> ExactnessReport:
    """Compare ``dim ker`` and ``dim im`` at each position of ``com(E)`` and
    each internal degree up to the bound. Refuses unverified input."""
    require_verified(mf)
    defects = []
    checked = 0
    for n in positions:
        degs = term_degrees(mf, n)
        if not degs:
            continue
        for d in range(min(degs), max_internal_degree + 1):
            r_out, dim = _rank_at(mf, n, d)
            if dim == 0:
                continue
            r_in, _ = _rank_at(mf, n - 1, d)
            checked += 1
            if dim - r_out != r_in:
                defects.append(Defect(n, d, dim - r_out - r_in))
    return ExactnessReport(max_internal_degree, tuple(positions), checked, tuple(defects))


@dataclass(frozen=True)
class ConnectingRow:
    degree: int
    coker: int
    free: int
    coker_shift: int
    defects: tuple[int, int, int]

    def to_dict(self):
        return {"degree": self.degree, "dims": [self.coker, self.free, self.coker_shift],
                "defects": list(self.defects)}


@dataclass(frozen=True)
class ConnectingReport:
    rows: tuple[ConnectingRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.defects == (0, 0, 0) for r in self.rows)

    def to_dict(self):
        return {"ok": self.ok, "rows": [r.to_dict() for r in self.rows if r.coker or r.free or r.coker_shift]}


def connecting_sequence_check(mf: MatrixFactorization, max_internal_degree: int = 20) -> ConnectingReport:
    """Exactness of ``0 -> C(E) -> (E1 ⊗ L)|X0 -> C(E[1]) -> 0`` in each degree.

    The first map is induced by ``δ0``; the defects are the kernel of the
    first map, the middle homology and the cokernel of the last map.
    """
    require_verified(mf)
    W = mf.potential
    M = coker_functor(mf)
    M1 = coker_functor(shift(mf))
    free_deg = tuple(b - mf.D for b in mf.degrees1)
    lo = min(mf.degrees0 + free_deg, default=0)
    rows = []
    for d in range(lo, max_internal_degree + 1):
        c = M.hilbert(d)
        c1 = M1.hilbert(d)
        # image of C(E) = image of δ0 on E0|X0
        cols, _, nfree = map_piece_over_S(mf.delta0, W, mf.degrees0, free_deg, d)
        r = sparse_rank(cols, mf.field, nfree)
        # projection onto C(E[1]) has kernel = span of the relations of E[1]
        _, _, ech = M1.piece(d)
        proj_rank = nfree - len(ech)
        rows.append(ConnectingRow(d, c, nfree, c1, (c - r, (nfree - proj_rank) - r, c1 - proj_rank)))
    return ConnectingReport(tuple(rows))


# -- stabilization ------------------------------------------------------------


def default_degree_bound(gen_degrees, D: int) -> int:
    return 3 * max(gen_degrees, default=0) + 3 * D


def _r_index(ring, degree, gen_degrees):
    basis = graded_piece_basis(ring, degree, gen_degrees)
    return basis, {b: n for n, b in enumerate(basis)}


def _column_vector(column, mono, index):
    v: dict = {}
    for i, p in enumerate(column):
        for e, c in p.terms.items():
            k = index[(tuple(a + b for a, b in zip(e, mono)), i)]
            v[k] = v.get(k, 0) + c
    return v


@dataclass(frozen=True)
class Stabilization:
    """Result of :func:`stabilize_with_data`: the factorization and the chosen
    presentation generators that became the basis of ``E0``."""

    mf: MatrixFactorization
    chosen: tuple[int, ...]
    bound: int


def stabilize_with_data(M: GradedModulePresentation, degree_bound: int | None = None) -> Stabilization:
    ring, W = M.ring, M.potential
    fld = ring.field
    D = W.weighted_degree()
    bound = degree_bound if degree_bound is not None else default_degree_bound(M.gen_degrees, D)
    P = M.gen_degrees
    n = len(P)
    # N = relations + W * P, as spanning columns over R
    span_cols = [(M.relations.column(j), M.relation_degrees[j]) for j in range(M.relations.ncols)]
    for i in range(n):
        span_cols.append((tuple(W if k == i else ring.zero() for k in range(n)), P[i] + D))

    def N_piece(d):
        basis, index = _r_index(ring, d, P)
        vecs = []
        for col, cd in span_cols:
            for m in ring.monomials(d - cd):
                v = _column_vector(col, m, index)
                v = {k: fc for k, c in v.items() if (fc := fld(c)) != 0}
                if v:
                    vecs.append(v)
        return basis, index, vecs

    # minimal generators: a subset of the presentation generators
    chosen: list[int] = []
    for d in sorted(set(P)):
        basis, index, vecs = N_piece(d)
        ech = SparseEchelon(fld)
        for v in vecs:
            ech.add(v)
        for j in range(n):
            if P[j] < d:
                for m in ring.monomials(d - P[j]):
                    ech.add({index[(m, j)]: 1})
        for j in range(n):
            if P[j] == d and ech.add({index[((0,) * ring.nvars, j)]: 1}):
                chosen.append(j)
    chosen.sort(key=lambda j: (P[j], j))
    a = tuple(P[j] for j in chosen)
    pos = {j: k for k, j in enumerate(chosen)}

    # K = F0 ∩ N degree by degree; record a k-basis of each piece in F0 coordinates
    K_pieces: dict[int, list[dict]] = {}
    K_gens: list[tuple[int, tuple]] = []   # (degree, column over F0)
    lo = min(a, default=0)
    for d in range(lo, bound + 1):
        basis, index, vecs = N_piece(d)
        if not basis:
            continue
        inside = {k for k, (m, j) in enumerate(basis) if j in pos}
        outside = [k for k in range(len(basis)) if k not in inside]
        # combinations of spanning vectors with no component outside F0
        if outside:
            out_pos = {k: r for r, k in enumerate(outside)}
            rows = [[0] * len(vecs) for _ in outside]
            for c_idx, v in enumerate(vecs):
                for k, c in v.items():
                    if k in out_pos:
                        rows[out_pos[k]][c_idx] = c
            combos = nullspace(rows, fld, len(vecs)) if vecs else []
            kvecs = []
            for cmb in combos:
                acc: dict = {}
                for c_idx, coef in enumerate(cmb):
                    if coef:
                        for k, c in vecs[c_idx].items():
                            acc[k] = acc.get(k, 0) + coef * c
                kvecs.append({k: fc for k, c in acc.items() if (fc := fld(c)) != 0})
        else:
            kvecs = vecs
        # re-express in F0 coordinates (monomial, position in chosen)
        f_basis, f_index = _r_index(ring, d, a)
        ech = SparseEchelon(fld)
        for v in kvecs:
            ech.add({f_index[(basis[k][0], pos[basis[k][1]])]: c for k, c in v.items()})
        piece = [dict(p) for p in ech.pivots.values()]
        K_pieces[d] = piece
        # (R_+ K)_d from lower pieces times variables
        sub = SparseEchelon(fld)
        for vi, vdeg in enumerate(ring.degrees):
            for w in K_pieces.get(d - vdeg, ()):
                shifted = {}
                for k, c in w.items():
                    m, g = f_basis_lookup(ring, d - vdeg, a)[k]
                    mm = list(m)
                    mm[vi] += 1
                    shifted[f_index[(tuple(mm), g)]] = c
                sub.add(shifted)
        for w in piece:
            if sub.add(w):
                col = [dict() for _ in a]
                for k, c in w.items():
                    m, g = f_basis[k]
                    col[g][m] = c
                K_gens.append((d, tuple(Poly(ring, {e: fld(c) for e, c in cterms.items()}) for cterms in col)))
    b = tuple(dg for dg, _ in K_gens)
    if len(b) != len(a):
        raise NotMCMError(f"kernel of the generator map has {len(b)} minimal generators but the free module "
                          f"has rank {len(a)}: module is not maximal Cohen-Macaulay (bound {bound})")
    for d, piece in K_pieces.items():
        free_dim = sum(len(ring.monomials(d - bj)) for bj in b)
        if free_dim != len(piece):
            raise NotMCMError(f"kernel is not free: dimension {len(piece)} != {free_dim} in degree {d} "
                              f"(bound {bound})")
    delta1 = PolyMatrix(ring, [[K_gens[j][1][i] for j in range(len(b))] for i in range(len(a))], len(a), len(b))
    delta0 = _solve_factor_through(delta1, a, b, W, D)
    if delta0 is None:
        raise NotMCMError("W does not factor through the kernel inclusion")
    mf = MatrixFactorization(ring, W, a, b, delta1, delta0)
    require_verified(mf)
    return Stabilization(mf, tuple(chosen), bound)


_FB_CACHE: dict = {}


def f_basis_lookup(ring, d, a):
    key = (ring, d, a)
    hit = _FB_CACHE.get(key)
    if hit is None:
        hit = _FB_CACHE[key] = graded_piece_basis(ring, d, a)
        if len(_FB_CACHE) > 4096:
            _FB_CACHE.clear()
    return hit


def _solve_factor_through(delta1: PolyMatrix, a, b, W: Poly, D: int) -> PolyMatrix | None:
    """Solve ``delta1 * Y = W * I`` for ``Y`` homogeneous (column i in degree ``a_i + D``)."""
    ring = delta1.ring
    fld = ring.field
    cols_out = []
    for i, ai in enumerate(a):
        d = ai + D
        t_basis, t_index = _r_index(ring, d, a)
        unknowns = [(j, m) for j, bj in enumerate(b) for m in ring.monomials(d - bj)]
        rows = [[0] * len(unknowns) for _ in t_basis]
        for u_idx, (j, m) in enumerate(unknowns):
            for k, c in _column_vector(delta1.column(j), m, t_index).items():
                rows[k][u_idx] = fld(rows[k][u_idx] + c)
        rhs = [0] * len(t_basis)
        for e, c in W.terms.items():
            rhs[t_index[(e, i)]] = c
        sol = solve(rows, rhs, fld, len(unknowns))
        if not sol.solvable:
            return None
        col = [ring.zero() for _ in b]
        terms = [dict() for _ in b]
        for u_idx, (j, m) in enumerate(unknowns):
            if sol.particular[u_idx]:
                terms[j][m] = sol.particular[u_idx]
        col = [Poly(ring, t) for t in terms]
        cols_out.append(col)
    return PolyMatrix(ring, [[cols_out[i][j] for i in range(len(a))] for j in range(len(b))], len(b), len(a))


def stabilize(M: GradedModulePresentation, degree_bound: int | None = None) -> MatrixFactorization:
    """A factorization whose cokernel is ``M`` (``M`` must be MCM over S).

    Lifts minimal generators of ``M`` to a free module ``F0``, takes the kernel
    ``F1`` of ``F0 -> M`` (certified free up to ``degree_bound``), sets
    ``delta1`` to the inclusion and solves ``delta1 * delta0 = W``.
    Raises :class:`NotMCMError` when the kernel is not free at this bound.
    """
    return stabilize_with_data(M, degree_bound).mf


# -- round trip ---------------------------------------------------------------


def lift_through(delta_target: PolyMatrix, rhs: PolyMatrix, tgt_degrees, rhs_src_degrees,
                 rhs_row_degrees) -> PolyMatrix | None:
    """Solve ``delta_target * X = rhs`` for a degree-0 map ``X``.

    ``delta_target`` maps generators of degrees ``tgt_degrees`` (its columns)
    into a module whose generators have degrees ``rhs_row_degrees``; ``rhs``
    has source generators of degrees ``rhs_src_degrees``.
    """
    ring = rhs.ring
    fld = ring.field
    cols = []
    for j, sd in enumerate(rhs_src_degrees):
        t_basis, t_index = _r_index(ring, sd, rhs_row_degrees)
        unknowns = [(k, m) for k, td in enumerate(tgt_degrees) for m in ring.monomials(sd - td)]
        rows = [[0] * len(unknowns) for _ in t_basis]
        for u_idx, (k, m) in enumerate(unknowns):
            for r, c in _column_vector(delta_target.column(k), m, t_index).items():
                rows[r][u_idx] = fld(rows[r][u_idx] + c)
        rhs_vec = [0] * len(t_basis)
        for r, c in _column_vector(rhs.column(j), (0,) * ring.nvars, t_index).items():
            rhs_vec[r] = fld(c)
        sol = solve(rows, rhs_vec, fld, len(unknowns))
        if not sol.solvable:
            return None
        terms = [dict() for _ in tgt_degrees]
        for u_idx, (k, m) in enumerate(unknowns):
            if sol.particular[u_idx]:
                terms[k][m] = sol.particular[u_idx]
        cols.append([Poly(ring, t) for t in terms])
    return PolyMatrix(ring, [[cols[j][k] for j in range(len(rhs_src_degrees))] for k in range(len(tgt_degrees))],
                      len(tgt_degrees), len(rhs_src_degrees))


def induced_map_bijective(g0: PolyMatrix, M_src: GradedModulePresentation, M_tgt: GradedModulePresentation,
                          degree: int) -> bool:
    """Is the map ``M_src -> M_tgt`` induced by ``g0`` on generators bijective in ``degree``?"""
    W = M_src.potential
    fld = M_src.ring.field
    if M_src.hilbert(degree) != M_tgt.hilbert(degree):
        return False
    basis_t, index_t, ech_t = M_tgt.piece(degree)
    span = SparseEchelon(fld)
    for piv in ech_t.pivots.values():
        span.add(piv)
    for m, j in _s_basis(M_src.ring, W, degree, M_src.gen_degrees):
        v = _nf_vector(g0.column(j), m, W, index_t)
        span.add({k: fc for k, c in v.items() if (fc := fld(c)) != 0})
    return len(span) == len(basis_t)


@dataclass(frozen=True)
class RoundtripReport:
    stabilized: MatrixFactorization
    hom_mismatches: tuple
    closed: bool
    bijective_degrees: tuple[int, ...]
    failed_degrees: tuple[int, ...]
    bound: int
    window: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.closed and not self.hom_mismatches and not self.failed_degrees

    def to_dict(self):
        s = self.stabilized
        return {"ok": self.ok, "stabilized_ranks": [s.rank0, s.rank1],
                "stabilized_degrees": [list(s.degrees0), list(s.degrees1)],
                "hom_mismatches": [list(m) for m in self.hom_mismatches], "g_closed": self.closed,
                "coker_g_bijective_through": self.bound, "failed_degrees": list(self.failed_degrees),
                "window": list(self.window)}


def comparison_morphism(stab: Stabilization, mf: MatrixFactorization) -> MfMorphism | None:
    """Closed morphism ``g: stabilized -> mf`` lifting the identity of the cokernel."""
    F = stab.mf
    ring = mf.ring
    g0 = PolyMatrix(ring, [[ring.one() if stab.chosen[k] == i else ring.zero() for k in range(F.rank0)]
                           for i in range(mf.rank0)], mf.rank0, F.rank0)
    g1 = lift_through(mf.delta1, g0 * F.delta1, mf.degrees1, F.degrees1, mf.degrees0)
    if g1 is None:
        return None
    return morphism(F, mf, g0, g1)


def cokernel_roundtrip_check(mf: MatrixFactorization, degree_bound: int | None = None, family=None,
                             window: tuple[int, int] | None = None) -> RoundtripReport:
    """Stabilize the cokernel of ``mf`` and compare with ``mf``.

    Checks stable Hom dimensions against every object of ``family`` (default:
    ``mf`` itself) in both directions and parities over ``window``, and that the
    comparison morphism is closed with bijective cokernel map up to the bound.
    """
    require_verified(mf)
    M = coker_functor(mf)
    stab = stabilize_with_data(M, degree_bound)
    F = stab.mf
    window = window or default_window(mf)
    family = list(family) if family is not None else [mf]
    mismatches = []
    for idx, T in enumerate(family):
        for (a1, b1), (a2, b2), tag in (((T, mf), (T, F), "into"), ((mf, T), (F, T), "from")):
            H1, H2 = HomSpace(a1, b1), HomSpace(a2, b2)
            for p in (0, 1):
                for t in range(window[0], window[1] + 1):
                    d1 = H1.cohomology_dim(p, t + p * H1.half)
                    d2 = H2.cohomology_dim(p, t + p * H2.half)
                    if d1 != d2:
                        mismatches.append((idx, tag, p, t, d1, d2))
    g = comparison_morphism(stab, mf)
    closed = g is not None and is_closed(g)
    good, bad = [], []
    if g is not None:
        Mg = coker_functor(F)
        lo = min(mf.degrees0 + F.degrees0, default=0)
        for d in range(lo, stab.bound + 1):
            (good if induced_map_bijective(g.blocks[(0, 0)], Mg, M, d) else bad).append(d)
    return RoundtripReport(F, tuple(mismatches), closed, tuple(good), tuple(bad), stab.bound, tuple(window))
