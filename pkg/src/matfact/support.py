"""Fiber cohomology of a factorization at rational points of the zero locus."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .core import MatrixFactorization
from .errors import NotOnZeroLocusError
from .linalg import matmul, rank
from .poly import Poly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalPoint:
    coordinates: tuple

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)


def _coords(point, ring):
    coords = point.coordinates if isinstance(point, RationalPoint) else tuple(point)
    if len(coords) != ring.nvars:
        raise ValueError(f"point {coords} has {len(coords)} coordinates, ring has {ring.nvars} variables")
    return tuple(ring.field(c) for c in coords)


def _require_on_zero_locus(W: Poly, coords):
    value = W.evaluate(coords)
    if not W.ring.field.is_zero(value):
        raise NotOnZeroLocusError(f"W does not vanish at {coords} (value {value})")


@dataclass(frozen=True)
class FiberComplex:
    """``δ1`` and ``δ0`` evaluated at a point: ``k^rank1 -> k^rank0 -> k^rank1``."""

    point: tuple
    delta1: tuple
    delta0: tuple
    rank1: int
    rank0: int
    field: object


def fiber_complex(mf: MatrixFactorization, point) -> FiberComplex:
    ring = mf.ring
    fld = ring.field
    coords = _coords(point, ring)
    _require_on_zero_locus(mf.potential, coords)
    d1 = tuple(tuple(fld(v) for v in row) for row in mf.delta1.evaluate(coords))
    d0 = tuple(tuple(fld(v) for v in row) for row in mf.delta0.evaluate(coords))
    for name, prod_ in (("delta0*delta1", matmul(d0, d1, fld)), ("delta1*delta0", matmul(d1, d0, fld))):
        if any(not fld.is_zero(v) for row in prod_ for v in row):
            raise ArithmeticError(f"{name} is nonzero at {coords}: input is not a factorization")
    return FiberComplex(coords, d1, d0, mf.rank1, mf.rank0, fld)


def fiber_cohomology(fc: FiberComplex) -> tuple[int, int]:
    """``(h0, h1)`` with ``h0 = dim ker δ0 - rank δ1`` and ``h1 = dim ker δ1 - rank δ0``."""
    fld = fc.field
    r1 = rank([list(r) for r in fc.delta1], fld, fc.rank1) if fc.rank0 and fc.rank1 else 0
    r0 = rank([list(r) for r in fc.delta0], fld, fc.rank0) if fc.rank0 and fc.rank1 else 0
    return fc.rank0 - r0 - r1, fc.rank1 - r1 - r0


def singular_locus_test(W: Poly, point) -> bool:
    """True when every partial derivative of ``W`` vanishes at the point (a singular point of ``W = 0``)."""
    ring = W.ring
    coords = _coords(point, ring)
    _require_on_zero_locus(W, coords)
    for w in characteristic_warnings(W):
        log.warning(w)
    return all(ring.field.is_zero(W.derivative(i).evaluate(coords)) for i in range(ring.nvars))


def characteristic_warnings(W: Poly) -> list[str]:
    """Caveats for the Jacobian criterion in positive characteristic."""
    p = W.ring.field.characteristic
    if not p:
        return []
    out = []
    for name, w in zip(W.ring.variables, W.ring.weights):
        if w % p == 0:
            out.append(f"characteristic {p} divides the weight of {name}: Jacobian test may misreport")
    dW = W.weighted_degree() // 2
    if dW % p == 0:
        out.append(f"characteristic {p} divides deg W = {dW}: the Euler relation gives no control")
    return out


def zero_locus_points(W: Poly) -> list[tuple]:
    """All rational points of ``W = 0`` over a finite field (exhaustive)."""
    ring = W.ring
    fld = ring.field
    return [pt for pt in itertools.product(fld.elements(), repeat=ring.nvars)
            if fld.is_zero(W.evaluate(pt))]


@dataclass(frozen=True)
class PointResult:
    point: tuple
    h0: int
    h1: int
    singular: bool

    def to_dict(self):
        return {"point": [int(c) if not hasattr(c, "numerator") or c.denominator == 1 else str(c)
                          for c in self.point], "h0": self.h0, "h1": self.h1, "singular": self.singular}


@dataclass(frozen=True)
class SupportReport:
    points: tuple[PointResult, ...]
    warnings: tuple[str, ...]

    @property
    def support(self) -> tuple[tuple, ...]:
        return tuple(r.point for r in self.points if r.h0 or r.h1)

    @property
    def smooth_support_points(self) -> tuple[tuple, ...]:
        """Support points that are smooth on the zero locus: each one is a hard failure."""
        return tuple(r.point for r in self.points if (r.h0 or r.h1) and not r.singular)

    @property
    def unbalanced(self) -> tuple[tuple, ...]:
        return tuple(r.point for r in self.points if r.h0 != r.h1)

    @property
    def ok(self) -> bool:
        return not self.smooth_support_points and not self.unbalanced

    def to_dict(self):
        return {"ok": self.ok, "points": [r.to_dict() for r in self.points],
                "support": [list(p) for p in self.support],
                "smooth_support_points": [list(p) for p in self.smooth_support_points],
                "warnings": list(self.warnings)}


def support_sample(mf: MatrixFactorization, points=None) -> SupportReport:
    """Fiber cohomology at each point (all rational points of the zero locus by default)."""
    W = mf.potential
    pts = zero_locus_points(W) if points is None else [_coords(p, mf.ring) for p in points]
    warnings = characteristic_warnings(W)
    out = []
    for pt in pts:
        fc = fiber_complex(mf, pt)
        h0, h1 = fiber_cohomology(fc)
        sing = all(mf.ring.field.is_zero(W.derivative(i).evaluate(pt)) for i in range(mf.ring.nvars))
        out.append(PointResult(tuple(pt), h0, h1, sing))
    return SupportReport(tuple(out), tuple(warnings))


def sample_zero_locus(W: Poly, count: int, rng, exhaustive_vars: int = 2) -> list[tuple]:
    """Rational points of ``W = 0``: all of them for at most ``exhaustive_vars``
    variables, otherwise the origin plus about ``count`` points found by drawing
    random leading coordinates and trying every value of the last one."""
    ring = W.ring
    fld = ring.field
    if ring.nvars <= exhaustive_vars:
        return zero_locus_points(W)
    p = fld.p
    origin = tuple(0 for _ in range(ring.nvars))
    found = {origin}
    tries = 0
    while len(found) < count + 1 and tries < 50 * count:
        tries += 1
        prefix = tuple(rng.randrange(p) for _ in range(ring.nvars - 1))
        for z in range(p):
            pt = prefix + (z,)
            if fld.is_zero(W.evaluate(pt)):
                found.add(pt)
    return sorted(found)
