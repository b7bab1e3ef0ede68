"""Restriction of scalars along finite free maps ``R -> R'`` of graded polynomial rings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import MatrixFactorization, degree_ratio
from .errors import HomogeneityError, RingMapError
from .linalg import rank, solve
from .matrix import PolyMatrix
from .poly import INHOMOGENEOUS, NEG_INF, Poly, Ring
from .sing import coker_functor


class FiniteRingMap:
    """``x_i -> images[i]`` from ``source`` to ``target`` with ``target`` free over
    the image on ``basis`` (homogeneous elements of ``target``, usually monomials).

    ``ratio`` is the common ``deg(image) / deg(x)``; a homogeneous element of
    ``target`` of degree ``d`` has source degree ``d / ratio``.
    """

    def __init__(self, source: Ring, target: Ring, images, basis, check_bound: int | None = None):
        if source.field != target.field:
            raise RingMapError("source and target rings must have the same field")
        self.source, self.target = source, target
        if isinstance(images, dict):
            images = [images[v] for v in source.variables]
        self.images = tuple(target(p) for p in images)
        if len(self.images) != source.nvars:
            raise RingMapError(f"need {source.nvars} images, got {len(self.images)}")
        try:
            self.ratio = degree_ratio(source, self.images)
        except HomogeneityError as exc:
            raise RingMapError(str(exc)) from exc
        self.basis = tuple(target(b) for b in basis)
        if not self.basis:
            raise RingMapError("module basis must be nonempty")
        self.basis_degrees = []
        for b in self.basis:
            d = b.weighted_degree()
            if d is INHOMOGENEOUS or d == NEG_INF:
                raise RingMapError(f"basis element {b} must be nonzero and homogeneous")
            self.basis_degrees.append(d)
        self.basis_degrees = tuple(self.basis_degrees)
        self._mono_images: dict = {}
        self._systems: dict = {}
        self.validate(check_bound)

    def __repr__(self):
        imgs = ", ".join(f"{v} -> {p}" for v, p in zip(self.source.variables, self.images))
        return f"FiniteRingMap({imgs}; basis {[str(b) for b in self.basis]})"

    @property
    def rank(self) -> int:
        return len(self.basis)

    def source_degree(self, d: int):
        v = Fraction(d) / self.ratio
        return int(v) if v.denominator == 1 else None

    def image_of_monomial(self, m) -> Poly:
        hit = self._mono_images.get(m)
        if hit is None:
            hit = self.target.one()
            for img, e in zip(self.images, m):
                if e:
                    hit = hit * img ** e
            self._mono_images[m] = hit
        return hit

    def apply(self, p: Poly) -> Poly:
        return p.substitute(self.images, self.target)

    def _system(self, d: int):
        """Unknowns ``(l, source monomial)`` and the matrix of their images in ``target_d``."""
        hit = self._systems.get(d)
        if hit is not None:
            return hit
        unknowns = []
        for l, bd in enumerate(self.basis_degrees):
            sd = self.source_degree(d - bd)
            if sd is None:
                continue
            for m in self.source.monomials(sd):
                unknowns.append((l, m))
        tmonos = self.target.monomials(d)
        index = {m: k for k, m in enumerate(tmonos)}
        rows = [[0] * len(unknowns) for _ in tmonos]
        for u, (l, m) in enumerate(unknowns):
            for e, c in (self.image_of_monomial(m) * self.basis[l]).terms.items():
                rows[index[e]][u] = c
        hit = self._systems[d] = (unknowns, index, rows)
        return hit

    def express(self, q: Poly) -> list[Poly]:
        """Coefficients ``a_l`` in ``source`` with ``q = Σ_l f(a_l) * basis[l]``."""
        q = self.target(q)
        fld = self.source.field
        coeffs = [dict() for _ in self.basis]
        for d, part in q.homogeneous_components().items():
            unknowns, index, rows = self._system(d)
            rhs = [0] * len(index)
            for e, c in part.terms.items():
                rhs[index[e]] = c
            sol = solve(rows, rhs, fld, len(unknowns)) if unknowns else None
            if sol is None or not sol.solvable:
                raise RingMapError(f"{part} is not in the span of the basis over the source ring")
            for u, (l, m) in enumerate(unknowns):
                if sol.particular[u]:
                    coeffs[l][m] = sol.particular[u]
        return [Poly.from_terms(self.source, c) for c in coeffs]

    def validate(self, bound: int | None = None) -> None:
        """Freeness on ``basis`` in each degree up to ``bound``, and closure under multiplication."""
        if bound is None:
            bound = 2 * (max(self.basis_degrees) + max(p.weighted_degree() for p in self.images))
        for d in range(0, bound + 1):
            unknowns, index, rows = self._system(d)
            r = rank(rows, self.source.field, len(unknowns)) if unknowns and index else 0
            if r != len(unknowns):
                raise RingMapError(f"basis is not free over the source ring in degree {d}")
            if r != len(index):
                raise RingMapError(f"basis does not span the target ring in degree {d}")

    def multiplication_matrix(self, q: Poly) -> PolyMatrix:
        """Matrix over ``source`` of multiplication by ``q`` in the basis."""
        cols = [self.express(self.target(q) * b) for b in self.basis]
        n = self.rank
        return PolyMatrix(self.source, [[cols[k][l] for k in range(n)] for l in range(n)], n, n)

    def compose(self, after: FiniteRingMap) -> FiniteRingMap:
        """``after ∘ self``; basis ``after.basis[a] * after(self.basis[b])`` ordered by ``a`` then ``b``."""
        if after.source != self.target:
            raise RingMapError("composition: rings do not match")
        images = [after.apply(p) for p in self.images]
        basis = [ba * after.apply(bb) for ba in after.basis for bb in self.basis]
        return FiniteRingMap(self.source, after.target, images, basis)


def restrict_scalars(mf: MatrixFactorization, ring_map: FiniteRingMap, potential: Poly | None = None) -> MatrixFactorization:
    """``f★ mf`` over the source ring: each entry becomes a ``rank x rank`` block.

    Generator ``(i, l)`` (``l`` indexing the basis, ``i`` outer) has source
    degree ``(deg e_i + deg basis[l]) / ratio``. Entry ``((i, l), (j, k))`` is
    the ``l``-th coefficient of ``δ_ij * basis[k]``.
    """
    if mf.ring != ring_map.target:
        raise RingMapError("factorization does not live on the target ring of the map")
    src = ring_map.source
    if potential is None:
        mu = ring_map.multiplication_matrix(mf.potential)
        W = mu[0, 0]
        if mu != PolyMatrix.scalar(src, ring_map.rank, W):
            raise RingMapError("potential is not the image of a source polynomial")
    else:
        W = src(potential)
        if ring_map.apply(W) != mf.potential:
            raise RingMapError("the image of the given source potential differs from the factorization's potential")
    n = ring_map.rank

    def degrees(degs):
        out = []
        for d in degs:
            for bd in ring_map.basis_degrees:
                v = ring_map.source_degree(d + bd)
                if v is None:
                    raise HomogeneityError(f"generator degree {d} + basis degree {bd} is not divisible by the "
                                           f"degree ratio {ring_map.ratio}; rescale the variable weights")
                out.append(v)
        return tuple(out)

    def push(M: PolyMatrix) -> PolyMatrix:
        rows = [[src.zero()] * (M.ncols * n) for _ in range(M.nrows * n)]
        for i, j, p in M.nonzero_cells():
            for k, b in enumerate(ring_map.basis):
                coeffs = ring_map.express(p * b)
                for l, a in enumerate(coeffs):
                    rows[i * n + l][j * n + k] = a
        return PolyMatrix(src, rows, M.nrows * n, M.ncols * n)

    return MatrixFactorization(src, W, degrees(mf.degrees0), degrees(mf.degrees1), push(mf.delta1),
                               push(mf.delta0), mf.twist)


@dataclass(frozen=True)
class PushforwardCokerReport:
    rows: tuple
    mismatches: tuple
    bound: int

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self):
        return {"ok": self.ok, "bound": self.bound, "mismatches": [list(m) for m in self.mismatches],
                "dims": [list(r) for r in self.rows if r[1] or r[2]]}


def pushforward_coker_check(mf: MatrixFactorization, ring_map: FiniteRingMap, degree_bound: int = 20,
                            pushed: MatrixFactorization | None = None) -> PushforwardCokerReport:
    """Hilbert function of ``C(f★ mf)`` in source degree ``d`` against that of
    ``C(mf)`` in target degree ``ratio * d``, for all ``d <= degree_bound``.

    Target degrees that are not multiples of the ratio must carry nothing.
    """
    pushed = pushed or restrict_scalars(mf, ring_map)
    M_src, M_tgt = coker_functor(pushed), coker_functor(mf)
    c = ring_map.ratio
    lo = min(min(pushed.degrees0, default=0), 0)
    rows, bad = [], []
    for d in range(lo, degree_bound + 1):
        a = M_src.hilbert(d)
        td = d * c
        b = M_tgt.hilbert(int(td)) if td.denominator == 1 else 0
        rows.append((d, a, b))
        if a != b:
            bad.append((d, a, b))
    # nothing may sit in target degrees between the multiples of the ratio
    tlo = int(lo * c) - 1
    thi = int(degree_bound * c)
    for td in range(tlo, thi + 1):
        if (Fraction(td) / c).denominator != 1:
            dim = M_tgt.hilbert(td)
            if dim:
                bad.append(("unmatched target degree", td, dim))
    return PushforwardCokerReport(tuple(rows), tuple(bad), degree_bound)


def permutation_equivalent(A: MatrixFactorization, B: MatrixFactorization, max_tries: int = 200_000):
    """Permutations ``(p0, p1)`` of generators with ``B`` equal to ``A`` reordered, or ``None``.

    Candidates are searched only among generators of equal degree.
    """
    if (A.ring, A.potential, A.rank0, A.rank1) != (B.ring, B.potential, B.rank0, B.rank1):
        return None
    if sorted(A.degrees0) != sorted(B.degrees0) or sorted(A.degrees1) != sorted(B.degrees1):
        return None

    def bucket_perms(da, db):
        groups = {}
        for k, d in enumerate(da):
            groups.setdefault(d, []).append(k)
        slots = {}
        for k, d in enumerate(db):
            slots.setdefault(d, []).append(k)
        keys = sorted(groups)
        for choice in itertools.product(*(itertools.permutations(groups[d]) for d in keys)):
            perm = [None] * len(db)
            for d, ch in zip(keys, choice):
                for slot, src in zip(slots[d], ch):
                    perm[slot] = src
            yield tuple(perm)

    tries = 0
    for p0 in bucket_perms(A.degrees0, B.degrees0):
        for p1 in bucket_perms(A.degrees1, B.degrees1):
            tries += 1
            if tries > max_tries:
                return None
            if (A.delta1.submatrix(p0, p1) == B.delta1 and A.delta0.submatrix(p1, p0) == B.delta0):
                return p0, p1
    return None
