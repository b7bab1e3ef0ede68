"""Graded matrix factorizations and their morphisms.

Grading conventions (all degrees doubled, see :mod:`matfact.poly`):

* ``E0`` has generators in degrees ``degrees0``, ``E1`` in ``degrees1``.
* The twist line bundle ``L`` is the shift by ``D = deg W``; ``L^{1/2}`` is the
  shift by ``D // 2``.
* ``delta1: E1 -> E0`` has entry ``(i, j)`` of degree ``degrees1[j] - degrees0[i]``;
  ``delta0: E0 -> E1 ⊗ L`` has entry ``(j, i)`` of degree
  ``degrees0[i] - degrees1[j] + D``.

Morphisms use the half-twisted module ``E(L^{1/2}) = E0 ⊕ E1 ⊗ L^{1/2}``, whose
two *parts* have generator degrees ``degrees0`` and ``degrees1 - D/2``. A
morphism of cohomological degree ``i`` and internal degree ``t`` is a block
matrix between parts whose entry ``(r, s)`` in block ``(target part, source
part)`` has degree ``src[s] - tgt[r] + t + i*D/2``. Even morphisms use blocks
``(0, 0), (1, 1)``, odd ones ``(0, 1), (1, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import (FactorizationError, HomogeneityError, NotClosedError,
                     RingMismatchError)
from .matrix import PolyMatrix, kron
from .poly import INHOMOGENEOUS, NEG_INF, Poly, Ring

EVEN_BLOCKS = ((0, 0), (1, 1))
ODD_BLOCKS = ((0, 1), (1, 0))


def blocks_for(parity: int):
    return EVEN_BLOCKS if parity % 2 == 0 else ODD_BLOCKS


@dataclass(frozen=True)
class Violation:
    """One failed check. ``cell`` is 1-based ``(row, col)``."""

    kind: str
    matrix: str
    cell: tuple[int, int] | None
    detail: str

    def to_dict(self):
        return {"kind": self.kind, "matrix": self.matrix,
                "cell": list(self.cell) if self.cell else None, "detail": self.detail}


@dataclass(frozen=True)
class VerifyReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    ring: Ring
    potential: Poly
    degrees0: tuple[int, ...]
    degrees1: tuple[int, ...]
    delta1: PolyMatrix
    delta0: PolyMatrix
    twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "degrees0", tuple(int(d) for d in self.degrees0))
        object.__setattr__(self, "degrees1", tuple(int(d) for d in self.degrees1))
        if self.potential.ring != self.ring:
            raise RingMismatchError("potential lives in a different ring")
        if self.potential.is_zero():
            raise FactorizationError("the potential must be nonzero")
        if not self.potential.is_homogeneous():
            raise HomogeneityError(f"potential {self.potential} is not quasi-homogeneous")
        r0, r1 = len(self.degrees0), len(self.degrees1)
        if self.delta1.shape != (r0, r1):
            raise FactorizationError(f"delta1 must be {r0}x{r1}, got {self.delta1.shape[0]}x{self.delta1.shape[1]}")
        if self.delta0.shape != (r1, r0):
            raise FactorizationError(f"delta0 must be {r1}x{r0}, got {self.delta0.shape[0]}x{self.delta0.shape[1]}")
        for m in (self.delta0, self.delta1):
            if m.ring != self.ring:
                raise RingMismatchError("matrix entries live in a different ring")

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization) and self.ring == other.ring
                and self.potential == other.potential and self.degrees0 == other.degrees0
                and self.degrees1 == other.degrees1 and self.delta1 == other.delta1
                and self.delta0 == other.delta0 and self.twist == other.twist)

    def __hash__(self):
        return hash((self.ring, self.potential, self.degrees0, self.degrees1, self.delta1, self.delta0))

    def __repr__(self):
        return (f"MatrixFactorization(W={self.potential}, ranks=({self.rank0},{self.rank1}), "
                f"delta1={self.delta1!r}, delta0={self.delta0!r})")

    @property
    def rank0(self) -> int:
        return len(self.degrees0)

    @property
    def rank1(self) -> int:
        return len(self.degrees1)

    @property
    def D(self) -> int:
        """Doubled degree of the potential (the degree of ``L``)."""
        return self.potential.weighted_degree()

    @property
    def half(self) -> int:
        return self.D // 2

    @property
    def field(self):
        return self.ring.field

    def part_degrees(self, part: int) -> tuple[int, ...]:
        """Generator degrees of the two parts of ``E(L^{1/2})``."""
        if part == 0:
            return self.degrees0
        return tuple(b - self.half for b in self.degrees1)

    def part_rank(self, part: int) -> int:
        return self.rank0 if part == 0 else self.rank1

    def delta(self, target_part: int, source_part: int) -> PolyMatrix:
        if (target_part, source_part) == (0, 1):
            return self.delta1
        if (target_part, source_part) == (1, 0):
            return self.delta0
        raise ValueError("the differential is odd")

    def verify(self) -> VerifyReport:
        return verify(self)

    def with_matrices(self, delta1=None, delta0=None) -> MatrixFactorization:
        return replace(self, delta1=delta1 if delta1 is not None else self.delta1,
                       delta0=delta0 if delta0 is not None else self.delta0)


def _entry_degree_violations(name, M: PolyMatrix, row_deg, col_deg, shift):
    out = []
    for i, j, p in M.nonzero_cells():
        want = col_deg[j] - row_deg[i] + shift
        got = p.weighted_degree()
        if got is INHOMOGENEOUS or got != want:
            what = "inhomogeneous" if got is INHOMOGENEOUS else f"degree {got}"
            out.append(Violation("homogeneity", name, (i + 1, j + 1),
                                 f"entry {p} is {what}, expected degree {want}"))
    return out


def verify(mf: MatrixFactorization) -> VerifyReport:
    """Check ``delta1*delta0 = W*I``, ``delta0*delta1 = W*I`` entrywise and all
    homogeneity constraints; every violated cell is listed."""
    W = mf.potential
    violations: list[Violation] = []
    for name, prod, n in (("delta1*delta0", mf.delta1 * mf.delta0, mf.rank0),
                          ("delta0*delta1", mf.delta0 * mf.delta1, mf.rank1)):
        for i in range(n):
            for j in range(n):
                want = W if i == j else mf.ring.zero()
                got = prod[i, j]
                if got != want:
                    violations.append(Violation("composition", name, (i + 1, j + 1), f"{got} != {want}"))
    violations += _entry_degree_violations("delta1", mf.delta1, mf.degrees0, mf.degrees1, 0)
    violations += _entry_degree_violations("delta0", mf.delta0, mf.degrees1, mf.degrees0, mf.D)
    return VerifyReport(tuple(violations))


def require_verified(mf: MatrixFactorization):
    rep = verify(mf)
    if not rep.ok:
        raise FactorizationError(f"not a matrix factorization: {rep.violations[0].detail}", rep.violations)


# -- constructors -------------------------------------------------------------


def rank_one(a: Poly, b: Poly, degree0: int = 0) -> MatrixFactorization:
    """The factorization ``(delta1, delta0) = (a, b)`` of ``a*b``."""
    ring = a.ring
    da, db = a.weighted_degree(), b.weighted_degree()
    for p, d in ((a, da), (b, db)):
        if d is INHOMOGENEOUS or d == NEG_INF:
            raise HomogeneityError(f"{p} must be a nonzero homogeneous polynomial")
    return MatrixFactorization(ring, a * b, (degree0,), (degree0 + da,),
                               PolyMatrix(ring, [[a]]), PolyMatrix(ring, [[b]]))


def trivial_factorization(W: Poly, degree0: int = 0) -> MatrixFactorization:
    """``(1, W)``: contractible, with zero cokernel."""
    return rank_one(W.ring.one(), W, degree0)


def zero_factorization(W: Poly) -> MatrixFactorization:
    return MatrixFactorization(W.ring, W, (), (), PolyMatrix.zeros(W.ring, 0, 0), PolyMatrix.zeros(W.ring, 0, 0))


def from_matrices(ring: Ring, potential, delta1, delta0, degrees0=None, degrees1=None,
                  twist=0) -> MatrixFactorization:
    """Build from matrices, inferring generator degrees when only ``degrees0`` (or nothing) is given."""
    potential = ring(potential)
    d1 = delta1 if isinstance(delta1, PolyMatrix) else PolyMatrix(ring, delta1)
    d0 = delta0 if isinstance(delta0, PolyMatrix) else PolyMatrix(ring, delta0)
    r0, r1 = d1.shape
    if degrees1 is None:
        degrees0 = tuple(degrees0) if degrees0 is not None else (0,) * r0
        if r0 == 0:
            degrees1 = (0,) * r1
        else:
            degrees1 = []
            for j in range(r1):
                col = [(i, d1[i, j]) for i in range(r0) if d1[i, j]]
                if not col:
                    raise HomogeneityError(f"cannot infer degree of E1 generator {j + 1}: zero column")
                i, p = col[0]
                degrees1.append(degrees0[i] + p.weighted_degree())
    return MatrixFactorization(ring, potential, tuple(degrees0), tuple(degrees1), d1, d0, twist)


def _identity(ring, n):
    return PolyMatrix.identity(ring, n)


def tensor_sum_potentials(A: MatrixFactorization, B: MatrixFactorization) -> MatrixFactorization:
    """Factorization of ``W_A + W_B`` with differential ``δ_A ⊗ 1 + (-1)^{|a|} 1 ⊗ δ_B``.

    ``E0 = A0⊗B0 ⊕ A1⊗B1⊗L`` and ``E1 = A1⊗B0 ⊕ A0⊗B1``; generators are
    ordered by ``(index in A, index in B)`` within each summand.
    """
    if A.ring != B.ring:
        raise RingMismatchError("tensor factors must share a ring")
    if A.D != B.D:
        raise HomogeneityError(f"potentials have different degrees ({A.D} vs {B.D})")
    W = A.potential + B.potential
    if W.is_zero():
        raise FactorizationError("W1 + W2 = 0")
    ring, D = A.ring, A.D
    IA0, IA1, IB0, IB1 = (_identity(ring, n) for n in (A.rank0, A.rank1, B.rank0, B.rank1))
    delta1 = PolyMatrix.block(ring, [
        [kron(A.delta1, IB0), kron(IA0, B.delta1)],
        [-kron(IA1, B.delta0), kron(A.delta0, IB1)],
    ]) if (A.rank0 or A.rank1) and (B.rank0 or B.rank1) else None
    delta0 = PolyMatrix.block(ring, [
        [kron(A.delta0, IB0), -kron(IA1, B.delta1)],
        [kron(IA0, B.delta0), kron(A.delta1, IB1)],
    ]) if delta1 is not None else None
    deg0 = [a + b for a in A.degrees0 for b in B.degrees0] + [a + b - D for a in A.degrees1 for b in B.degrees1]
    deg1 = [a + b for a in A.degrees1 for b in B.degrees0] + [a + b for a in A.degrees0 for b in B.degrees1]
    if delta1 is None:
        return zero_factorization(W)
    return MatrixFactorization(ring, W, tuple(deg0), tuple(deg1), delta1, delta0)


def koszul_factorization(a, b) -> MatrixFactorization:
    """Tensor product of the rank-one factorizations ``(a_i, b_i)``; ranks ``2^(n-1)``."""
    a, b = list(a), list(b)
    if not a or len(a) != len(b):
        raise ValueError("need equally many (>= 1) polynomials a_i and b_i")
    mf = rank_one(a[0], b[0])
    for ai, bi in zip(a[1:], b[1:]):
        mf = tensor_sum_potentials(mf, rank_one(ai, bi))
    return mf


# -- triangulated structure ---------------------------------------------------


def shift(mf: MatrixFactorization) -> MatrixFactorization:
    """``E[1]``: ``E[1]_0 = E1 ⊗ L``, ``E[1]_1 = E0``, both differentials negated."""
    return MatrixFactorization(mf.ring, mf.potential, tuple(b - mf.D for b in mf.degrees1), mf.degrees0,
                               -mf.delta0, -mf.delta1, mf.twist + 1)


def twist_by(mf: MatrixFactorization, k: int) -> MatrixFactorization:
    """Internal degree shift: every generator degree moves by ``k``."""
    return replace(mf, degrees0=tuple(d + k for d in mf.degrees0), degrees1=tuple(d + k for d in mf.degrees1))


def direct_sum(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.ring != b.ring:
        raise RingMismatchError("direct summands must share a ring")
    if a.potential != b.potential:
        raise FactorizationError(f"potential mismatch: {a.potential} vs {b.potential}")
    if a.twist != b.twist:
        raise FactorizationError(f"twist mismatch: {a.twist} vs {b.twist}")
    ring = a.ring

    def diag(x: PolyMatrix, y: PolyMatrix):
        rows = [list(r) + [ring.zero()] * y.ncols for r in x.entries]
        rows += [[ring.zero()] * x.ncols + list(r) for r in y.entries]
        return PolyMatrix(ring, rows, x.nrows + y.nrows, x.ncols + y.ncols)

    return MatrixFactorization(ring, a.potential, a.degrees0 + b.degrees0, a.degrees1 + b.degrees1,
                               diag(a.delta1, b.delta1), diag(a.delta0, b.delta0), a.twist)


# -- morphisms ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MfMorphism:
    """Homogeneous element of the Hom complex.

    ``degree`` is the cohomological degree ``i`` (the ``L^{i/2}`` twist),
    ``internal`` the internal degree ``t``; ``blocks`` maps ``(target part,
    source part)`` to a matrix.
    """

    source: MatrixFactorization
    target: MatrixFactorization
    degree: int
    internal: int
    blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        E, F = self.source, self.target
        if E.ring != F.ring or E.potential != F.potential:
            raise RingMismatchError("source and target must share ring and potential")
        full = {}
        for tp, sp in blocks_for(self.degree):
            M = self.blocks.get((tp, sp))
            if M is None:
                M = PolyMatrix.zeros(E.ring, F.part_rank(tp), E.part_rank(sp))
            if M.shape != (F.part_rank(tp), E.part_rank(sp)):
                raise ValueError(f"block {(tp, sp)} has shape {M.shape}")
            full[(tp, sp)] = M
        extra = set(self.blocks) - set(full)
        if any(not self.blocks[k].is_zero() for k in extra):
            raise ValueError(f"blocks {sorted(extra)} have the wrong parity")
        object.__setattr__(self, "blocks", full)

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def u(self) -> int:
        """Degree of the underlying map of half-twisted modules."""
        return self.internal + self.degree * self.source.half

    def __eq__(self, other):
        return (isinstance(other, MfMorphism) and self.source == other.source and self.target == other.target
                and self.parity == other.parity and self.u == other.u and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.parity, self.u))

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.blocks.values())

    def __add__(self, other: MfMorphism) -> MfMorphism:
        if (other.parity, other.u) != (self.parity, self.u):
            raise ValueError("can only add morphisms of equal degree")
        return replace(self, blocks={k: M + other.blocks[k] for k, M in self.blocks.items()})

    def __neg__(self):
        return replace(self, blocks={k: -M for k, M in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> MfMorphism:
        return replace(self, blocks={k: M.scale(c) for k, M in self.blocks.items()})

    def homogeneity_violations(self) -> list[Violation]:
        out = []
        for (tp, sp), M in self.blocks.items():
            out += _entry_degree_violations(f"block{(tp, sp)}", M, self.target.part_degrees(tp),
                                            self.source.part_degrees(sp), self.u)
        return out

    def is_homogeneous(self) -> bool:
        return not self.homogeneity_violations()


def morphism(source, target, f0, f1, degree=0, internal=0) -> MfMorphism:
    """Build from the component leaving ``E0`` (``f0``) and leaving ``E1`` (``f1``)."""
    ring = source.ring
    f0 = f0 if isinstance(f0, PolyMatrix) else PolyMatrix(ring, f0, target.part_rank(degree % 2), source.rank0)
    f1 = f1 if isinstance(f1, PolyMatrix) else PolyMatrix(ring, f1, target.part_rank((degree + 1) % 2), source.rank1)
    if degree % 2 == 0:
        blocks = {(0, 0): f0, (1, 1): f1}
    else:
        blocks = {(1, 0): f0, (0, 1): f1}
    return MfMorphism(source, target, degree, internal, blocks)


def identity(mf: MatrixFactorization) -> MfMorphism:
    return MfMorphism(mf, mf, 0, 0, {(0, 0): _identity(mf.ring, mf.rank0), (1, 1): _identity(mf.ring, mf.rank1)})


def zero_morphism(source, target, degree=0, internal=0) -> MfMorphism:
    return MfMorphism(source, target, degree, internal, {})


def compose(g: MfMorphism, f: MfMorphism) -> MfMorphism:
    """``g ∘ f``."""
    if f.target != g.source:
        raise ValueError("composition: target of f is not the source of g")
    blocks = {}
    for tp, sp in blocks_for(f.degree + g.degree):
        acc = None
        for mp in (0, 1):
            if (tp, mp) in g.blocks and (mp, sp) in f.blocks:
                term = g.blocks[(tp, mp)] * f.blocks[(mp, sp)]
                acc = term if acc is None else acc + term
        blocks[(tp, sp)] = acc
    return MfMorphism(f.source, g.target, f.degree + g.degree, f.internal + g.internal,
                      {k: v for k, v in blocks.items() if v is not None})


def differential(f: MfMorphism) -> MfMorphism:
    """``d f = δ_F ∘ f - (-1)^{|f|} f ∘ δ_E``."""
    E, F = f.source, f.target
    sign = -1 if f.parity == 0 else 1
    blocks = {}
    for tp, sp in blocks_for(f.degree + 1):
        # δ_F f: through part (1 - tp) of F; f δ_E: through part (1 - sp) of E
        left = F.delta(tp, 1 - tp) * f.blocks[(1 - tp, sp)]
        right = f.blocks[(tp, 1 - sp)] * E.delta(1 - sp, sp)
        blocks[(tp, sp)] = left + right.scale(sign)
    return MfMorphism(E, F, f.degree + 1, f.internal, blocks)


def is_closed(f: MfMorphism) -> bool:
    return differential(f).is_zero()


def cone(f: MfMorphism) -> MatrixFactorization:
    """Mapping cone ``F ⊕ E[1]`` of a closed even morphism of degree zero.

    ``delta1 = [[δ1_F, f0], [0, -δ0_E]]`` and ``delta0 = [[δ0_F, f1], [0, -δ1_E]]``.
    """
    if f.degree != 0 or f.internal != 0:
        raise ValueError("cone needs an even morphism of cohomological and internal degree 0")
    if not is_closed(f):
        raise NotClosedError("cone of a non-closed morphism: delta^2 would differ from W")
    E, F = f.source, f.target
    f0, f1 = f.blocks[(0, 0)], f.blocks[(1, 1)]
    ring = E.ring

    def grid(a, b, c, d):
        rows = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
        rows += [list(rc) + list(rd) for rc, rd in zip(c.entries, d.entries)]
        return PolyMatrix(ring, rows, a.nrows + c.nrows, a.ncols + b.ncols)

    z = PolyMatrix.zeros
    delta1 = grid(F.delta1, f0, z(ring, E.rank1, F.rank1), -E.delta0)
    delta0 = grid(F.delta0, f1, z(ring, E.rank0, F.rank0), -E.delta1)
    deg0 = F.degrees0 + tuple(b - E.D for b in E.degrees1)
    deg1 = F.degrees1 + E.degrees0
    return MatrixFactorization(ring, F.potential, deg0, deg1, delta1, delta0, F.twist)


def homotopy_solve(f: MfMorphism) -> MfMorphism | None:
    """A homotopy ``h`` with ``d h = f``, or ``None`` when none exists."""
    from .hom import HomSpace

    if not is_closed(f):
        raise NotClosedError("homotopy_solve needs a closed morphism")
    return HomSpace(f.source, f.target).solve_homotopy(f)


# -- pullback -----------------------------------------------------------------


def degree_ratio(source: Ring, images) -> Fraction:
    """Common ratio ``deg(image_i) / deg(x_i)``; raises if images are not
    homogeneous or the ratio is not uniform."""
    ratio = None
    for name, deg, img in zip(source.variables, source.degrees, images):
        d = img.weighted_degree()
        if d is INHOMOGENEOUS or d == NEG_INF:
            raise HomogeneityError(f"image of {name} ({img}) must be a nonzero homogeneous polynomial")
        r = Fraction(d, deg)
        if ratio is None:
            ratio = r
        elif r != ratio:
            raise HomogeneityError(f"substitution is not degree compatible at {name}: ratio {r} != {ratio}")
    return ratio if ratio is not None else Fraction(1)


def _scale_degrees(degs, ratio):
    out = []
    for d in degs:
        v = d * ratio
        if v.denominator != 1:
            raise HomogeneityError(f"generator degree {d} does not rescale to an integer under ratio {ratio}")
        out.append(int(v))
    return tuple(out)


def pullback(mf: MatrixFactorization, substitution, target: Ring | None = None) -> MatrixFactorization:
    """Entrywise substitution ``x_i -> substitution[x_i]``.

    ``substitution`` is a dict keyed by variable name or a list in variable
    order; images must be homogeneous of degree ``c * deg x_i`` for one common
    ratio ``c`` (generator degrees are multiplied by ``c``).
    """
    ring = mf.ring
    if isinstance(substitution, dict):
        missing = set(ring.variables) - set(substitution)
        if missing:
            raise ValueError(f"no image given for {sorted(missing)}")
        images = [substitution[v] for v in ring.variables]
    else:
        images = list(substitution)
    if target is None:
        target = next((p.ring for p in images if isinstance(p, Poly)), ring)
    images = [target(p) for p in images]
    ratio = degree_ratio(ring, images)
    return MatrixFactorization(
        target, mf.potential.substitute(images, target),
        _scale_degrees(mf.degrees0, ratio), _scale_degrees(mf.degrees1, ratio),
        mf.delta1.substitute(images, target), mf.delta0.substitute(images, target), mf.twist)
