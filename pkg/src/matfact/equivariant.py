"""Equivariant factorizations for finite abelian groups acting diagonally.

A group ``Γ = Z/d_1 x ... x Z/d_r`` is described by its cyclic orders. A
character is a tuple of residues ``(c_1, ..., c_r)`` with ``c_k mod d_k``;
the group acts on each variable through a character and on each generator
of ``E0``/``E1`` through its *weight*. A monomial ``x^m`` has character
``Σ m_v * action_v``.

A matrix entry from a generator of weight ``w_src`` to one of weight
``w_tgt`` is invariant when all its monomials have character
``w_src - w_tgt``. ``δ0`` lands in ``E1 ⊗ χ``, which adds ``χ``.

In the Hom complex, degree ``2n`` components take values in ``F ⊗ χ^n``; in
degree ``2n+1`` the component leaving ``E0`` takes values in ``F1 ⊗ χ^{n+1}``
and the one leaving ``E1`` in ``F0 ⊗ χ^n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .core import MatrixFactorization, MfMorphism, cone, pullback, shift, verify
from .errors import GroupDataError
from .field import lcm
from .hom import HomSpace, default_window
from .linalg import sparse_rank
from .poly import Poly, Ring


def _as_char(c, orders) -> tuple[int, ...]:
    if isinstance(c, int):
        c = (c,)
    c = tuple(int(x) for x in c)
    if len(c) != len(orders):
        raise GroupDataError(f"character {c} does not match a group with {len(orders)} cyclic factors")
    return tuple(x % d for x, d in zip(c, orders))


@dataclass(frozen=True)
class GroupData:
    """Finite abelian group, its diagonal action on the variables and the character ``chi`` of ``W``."""

    orders: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    chi: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        if any(d < 1 for d in orders):
            raise GroupDataError("cyclic orders must be positive")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "action", tuple(_as_char(a, orders) for a in self.action))
        object.__setattr__(self, "chi", _as_char(self.chi, orders))

    @classmethod
    def trivial(cls, nvars: int) -> GroupData:
        return cls((), tuple(() for _ in range(nvars)), ())

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def char(self, c) -> tuple[int, ...]:
        return _as_char(c, self.orders)

    def add(self, a, b, k: int = 1) -> tuple[int, ...]:
        return tuple((x + k * y) % d for x, y, d in zip(a, b, self.orders))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, b, -1)

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def monomial_character(self, mono) -> tuple[int, ...]:
        out = [0] * len(self.orders)
        for e, a in zip(mono, self.action):
            if e:
                for k, ak in enumerate(a):
                    out[k] += e * ak
        return tuple(x % d for x, d in zip(out, self.orders))

    def characters(self):
        """All characters of the group (it is self-dual)."""
        return list(itertools.product(*(range(d) for d in self.orders)))

    elements = characters

    def check(self, ring: Ring, potential: Poly) -> list[str]:
        """Problems with this data for ``ring`` and ``potential`` (empty when usable)."""
        problems = []
        if len(self.action) != ring.nvars:
            problems.append(f"action gives {len(self.action)} characters for {ring.nvars} variables")
            return problems
        fld = ring.field
        if fld.characteristic and self.order % fld.characteristic == 0:
            problems.append(f"characteristic {fld.characteristic} divides the group order {self.order}")
        try:
            fld.root_of_unity(self.exponent)
        except ValueError as exc:
            problems.append(str(exc))
        for e in potential.terms:
            if self.monomial_character(e) != self.chi:
                problems.append(f"term with exponents {e} of W has character {self.monomial_character(e)}, "
                                f"expected chi = {self.chi}")
        return problems

    def validate(self, ring: Ring, potential: Poly):
        problems = self.check(ring, potential)
        if problems:
            raise GroupDataError("; ".join(problems))

    def evaluate(self, c, g, fld):
        """Value of character ``c`` at group element ``g`` in ``fld``."""
        e = self.exponent
        zeta = fld.root_of_unity(e)
        k = sum(ci * gi * (e // d) for ci, gi, d in zip(c, g, self.orders)) % e
        return fld(zeta ** k) if not fld.characteristic else pow(zeta, k, fld.characteristic)


@dataclass(frozen=True, eq=False)
class EquivariantMF:
    base: MatrixFactorization
    group: GroupData
    weights0: tuple[tuple[int, ...], ...]
    weights1: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        w0 = tuple(g.char(w) for w in self.weights0)
        w1 = tuple(g.char(w) for w in self.weights1)
        if len(w0) != self.base.rank0 or len(w1) != self.base.rank1:
            raise GroupDataError("one weight per generator of E0 and E1 is required")
        object.__setattr__(self, "weights0", w0)
        object.__setattr__(self, "weights1", w1)
        g.validate(self.base.ring, self.base.potential)

    def weights(self, part: int):
        return self.weights0 if part == 0 else self.weights1

    def __eq__(self, other):
        return (isinstance(other, EquivariantMF) and self.base == other.base and self.group == other.group
                and self.weights0 == other.weights0 and self.weights1 == other.weights1)

    def __hash__(self):
        return hash((self.base, self.group, self.weights0, self.weights1))


@dataclass(frozen=True)
class EquivariantViolation:
    matrix: str
    cell: tuple[int, int]
    exponents: tuple[int, ...]
    found: tuple[int, ...]
    expected: tuple[int, ...]

    def to_dict(self):
        return {"matrix": self.matrix, "cell": list(self.cell), "exponents": list(self.exponents),
                "found": list(self.found), "expected": list(self.expected)}


@dataclass(frozen=True)
class EquivariantReport:
    base_ok: bool
    violations: tuple[EquivariantViolation, ...]

    @property
    def ok(self) -> bool:
        return self.base_ok and not self.violations

    def to_dict(self):
        return {"ok": self.ok, "base_ok": self.base_ok, "violations": [v.to_dict() for v in self.violations]}


def verify_equivariant(emf: EquivariantMF) -> EquivariantReport:
    """Check every monomial of ``δ1`` and ``δ0`` against the character forced by the weights."""
    g = emf.group
    out = []
    for name, M, src, tgt, extra in (("delta1", emf.base.delta1, emf.weights1, emf.weights0, g.zero()),
                                     ("delta0", emf.base.delta0, emf.weights0, emf.weights1, g.chi)):
        for i, j, p in M.nonzero_cells():
            want = g.add(g.sub(src[j], tgt[i]), extra)
            for e in p.terms:
                found = g.monomial_character(e)
                if found != want:
                    out.append(EquivariantViolation(name, (i + 1, j + 1), e, found, want))
    return EquivariantReport(verify(emf.base).ok, tuple(out))


def twist_weights(emf: EquivariantMF, psi) -> EquivariantMF:
    """``E ⊗ psi``: with our sign convention this lowers every weight by ``psi``."""
    g = emf.group
    psi = g.char(psi)
    return EquivariantMF(emf.base, g, tuple(g.sub(w, psi) for w in emf.weights0),
                         tuple(g.sub(w, psi) for w in emf.weights1))


def equivariant_shift(emf: EquivariantMF) -> EquivariantMF:
    """``E[1]``: new ``E0`` is ``E1 ⊗ χ`` and new ``E1`` is ``E0``."""
    g = emf.group
    return EquivariantMF(shift(emf.base), g, tuple(g.sub(w, g.chi) for w in emf.weights1), emf.weights0)


def morphism_violations(f: MfMorphism, E: EquivariantMF, F: EquivariantMF, psi=None) -> list:
    """Monomials of ``f`` whose character differs from the one forced in its Hom degree."""
    g = E.group
    psi = g.zero() if psi is None else g.char(psi)
    bad = []
    for (tp, sp), M in f.blocks.items():
        for r, s, p in M.nonzero_cells():
            want = required_character(E, F, f.degree, tp, sp, r, s, psi)
            for e in p.terms:
                if g.monomial_character(e) != want:
                    bad.append(((tp, sp), (r + 1, s + 1), e))
    return bad


def equivariant_cone(f: MfMorphism, E: EquivariantMF, F: EquivariantMF) -> EquivariantMF:
    """Cone of an invariant closed degree-0 morphism ``f: E -> F``."""
    if morphism_violations(f, E, F):
        raise GroupDataError("cone needs an invariant morphism")
    sh = equivariant_shift(E)
    return EquivariantMF(cone(f), E.group, F.weights0 + sh.weights0, F.weights1 + sh.weights1)


# -- invariant Hom --------------------------------------------------------


def required_character(E: EquivariantMF, F: EquivariantMF, degree: int, tp, sp, r, s, psi):
    g = E.group
    k = degree // 2 + (1 if degree % 2 and sp == 0 else 0)
    base = g.sub(E.weights(sp)[s], F.weights(tp)[r])
    return g.add(g.add(base, psi), g.chi, k)


def _check_pair(E: EquivariantMF, F: EquivariantMF):
    if E.group != F.group:
        raise GroupDataError("equivariant Hom needs the same group data on both sides")


class EquivariantHom:
    """Invariant parts of ``Hom•(E, F ⊗ psi)`` computed by two routes.

    ``select``: keep the elementary morphisms whose character is the forced one.
    ``average``: apply ``(1/|Γ|) Σ_γ γ`` in field arithmetic and work on its image.
    """

    def __init__(self, E: EquivariantMF, F: EquivariantMF, space: HomSpace | None = None):
        _check_pair(E, F)
        self.E, self.F = E, F
        self.group = E.group
        self.space = space or HomSpace(E.base, F.base)
        self.half = self.space.half
        self._chars: dict = {}

    def _u(self, degree, t):
        return t + degree * self.half

    def elementary_characters(self, degree: int, t: int, psi) -> list[bool]:
        """For each elementary morphism of ``Hom^degree_t``: is it invariant for ``psi``?"""
        g = self.group
        psi = g.char(psi)
        key = (degree, t, psi)
        hit = self._chars.get(key)
        if hit is None:
            pc = self.space.piece(degree % 2, self._u(degree, t))
            hit = [g.monomial_character(m) == required_character(self.E, self.F, degree, tp, sp, r, s, psi)
                   for tp, sp, r, s, m in pc.basis]
            self._chars[key] = hit
        return hit

    def averaging_diagonal(self, degree: int, t: int, psi) -> list:
        """Diagonal of the averaging operator on ``Hom^degree_t`` (it is diagonal in the elementary basis)."""
        g = self.group
        fld = self.space.field
        psi = g.char(psi)
        pc = self.space.piece(degree % 2, self._u(degree, t))
        elements = g.elements()
        inv_order = fld.inv(fld(len(elements)))
        diag = []
        for tp, sp, r, s, m in pc.basis:
            c = g.sub(g.monomial_character(m), required_character(self.E, self.F, degree, tp, sp, r, s, psi))
            acc = 0
            for gamma in elements:
                acc = fld(acc + g.evaluate(c, gamma, fld))
            diag.append(fld(acc * inv_order))
        return diag

    def _d_cols(self, degree, t):
        return self.space.d_columns(degree % 2, self._u(degree, t))

    def _tdim(self, degree, t):
        return self.space.dim((degree + 1) % 2, self._u(degree, t) + self.half)

    def cohomology_dim(self, degree: int, t: int, psi=None, route: str = "select") -> int:
        psi = self.group.zero() if psi is None else psi
        if route == "select":
            def part(i):
                keep = self.elementary_characters(i, t, psi)
                cols = [c for c, k in zip(self._d_cols(i, t), keep) if k]
                return sum(keep), sparse_rank(cols, self.space.field, self._tdim(i, t))
        elif route == "average":
            fld = self.space.field

            def part(i):
                diag = self.averaging_diagonal(i, t, psi)
                cols = []
                for c, a in zip(self._d_cols(i, t), diag):
                    if a:
                        cols.append({k: fld(v * a) for k, v in c.items()})
                # rank of the diagonal projector equals its number of nonzero entries
                return sum(1 for a in diag if a), sparse_rank(cols, fld, self._tdim(i, t))
        else:
            raise ValueError(f"unknown route {route!r}")
        n, r_out = part(degree)
        _, r_in = part(degree - 1)
        return n - r_out - r_in

    def averaging_commutes(self, degree: int, t: int, psi=None) -> bool:
        """Exact check that ``A`` is idempotent and ``A' d = d A`` on ``Hom^degree_t``."""
        psi = self.group.zero() if psi is None else psi
        fld = self.space.field
        A = self.averaging_diagonal(degree, t, psi)
        if any(fld(a * a) != a for a in A):
            return False
        A2 = self.averaging_diagonal(degree + 1, t, psi)
        for col, a in zip(self._d_cols(degree, t), A):
            for k, v in col.items():
                if fld(A2[k] * v) != fld(v * a):
                    return False
        return True


def equivariant_hom_dims(E: EquivariantMF, F: EquivariantMF, parity, chi_power: int, internal_degree: int,
                         route: str = "average", space: HomSpace | None = None) -> int:
    """Invariant stable Hom in cohomological degree ``2*chi_power + parity``.

    Degree ``2n`` uses the target twist ``χ^n`` (with the extra ``χ`` on the
    ``E0`` component for odd degree). ``internal_degree`` is the internal
    degree of that Hom piece.
    """
    parity = parity if isinstance(parity, int) else {"even": 0, "odd": 1}[parity]
    fld = E.base.field
    if fld.characteristic and E.group.order % fld.characteristic == 0:
        raise GroupDataError("field characteristic divides the group order")
    return EquivariantHom(E, F, space).cohomology_dim(2 * chi_power + parity, internal_degree, route=route)


# -- consistency checks ---------------------------------------------------


@dataclass(frozen=True)
class SumRuleReport:
    checked: int
    failures: tuple
    commute_failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures and not self.commute_failures

    def to_dict(self):
        return {"ok": self.ok, "checked": self.checked, "failures": [list(f) for f in self.failures],
                "averaging_commute_failures": [list(f) for f in self.commute_failures]}


def character_sum_rule_check(E: EquivariantMF, F: EquivariantMF, window=None, degrees=(0, 1)) -> SumRuleReport:
    """``Σ_ψ dim Hom^Γ(E, F ⊗ ψ) = dim Hom(E, F)`` on every chain piece and on cohomology.

    Also checks that the averaging operator commutes with ``d`` for every ``ψ``.
    """
    H = EquivariantHom(E, F)
    window = window or default_window(E.base)
    fails, comm = [], []
    checked = 0
    for i in degrees:
        for t in range(window[0], window[1] + 1):
            u = t + i * H.half
            total_chain = H.space.dim(i % 2, u)
            if total_chain == 0 and H.space.dim((i + 1) % 2, u - H.half) == 0:
                continue
            checked += 1
            chain = coh = 0
            for psi in E.group.characters():
                chain += sum(H.elementary_characters(i, t, psi))
                coh += H.cohomology_dim(i, t, psi, "average")
                if not H.averaging_commutes(i, t, psi):
                    comm.append((i, t, psi))
            if chain != total_chain:
                fails.append(("chain", i, t, chain, total_chain))
            full = H.space.cohomology_dim(i % 2, u)
            if coh != full:
                fails.append(("cohomology", i, t, coh, full))
    return SumRuleReport(checked, tuple(fails), tuple(comm))


@dataclass(frozen=True)
class CorrespondenceReport:
    rows: tuple
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self):
        return {"ok": self.ok, "nonzero": [list(r) for r in self.rows if r[3] or r[4]],
                "mismatches": [list(m) for m in self.mismatches]}


def quotient_correspondence_check(emf: EquivariantMF, other: EquivariantMF | None = None,
                                  window=None) -> CorrespondenceReport:
    """Invariant stable Hom dims of ``(emf, other)`` by projection and by direct selection must agree."""
    other = other or emf
    H = EquivariantHom(emf, other)
    window = window or default_window(emf.base)
    rows, bad = [], []
    for i in (0, 1):
        for t in range(window[0], window[1] + 1):
            for psi in emf.group.characters():
                a = H.cohomology_dim(i, t, psi, "average")
                b = H.cohomology_dim(i, t, psi, "select")
                rows.append((i, t, psi, a, b))
                if a != b:
                    bad.append((i, t, psi, a, b))
    return CorrespondenceReport(tuple(rows), tuple(bad))


# -- pullback --------------------------------------------------------------


def pull_character(c, source: GroupData, target: GroupData, pi) -> tuple[int, ...]:
    """Compose a character of ``source`` with ``pi: target -> source``.

    ``pi[l]`` is the image in ``source`` of the ``l``-th generator of ``target``.
    """
    out = []
    for l, dl in enumerate(target.orders):
        # exact division is guaranteed by the homomorphism check
        total = sum((c[k] * pi[l][k] * dl) // dk for k, dk in enumerate(source.orders))
        out.append(total % dl)
    return tuple(out)


def check_homomorphism(source: GroupData, target: GroupData, pi) -> None:
    if len(pi) != len(target.orders) or any(len(row) != len(source.orders) for row in pi):
        raise GroupDataError("group homomorphism must give one image per generator of the new group")
    for l, dl in enumerate(target.orders):
        for k, dk in enumerate(source.orders):
            if (dl * pi[l][k]) % dk:
                raise GroupDataError(f"not a homomorphism: generator {l} has order {dl} but its image "
                                     f"component {pi[l][k]} in Z/{dk} does not")


def equivariant_pullback(emf: EquivariantMF, substitution, group: GroupData, pi,
                         target: Ring | None = None) -> EquivariantMF:
    """Pull back along a substitution intertwining ``group`` (on the new ring)
    with ``emf.group`` through ``pi: group -> emf.group``; weights and ``χ`` are composed with ``pi``."""
    src = emf.group
    check_homomorphism(src, group, pi)
    base = pullback(emf.base, substitution, target)
    ring = base.ring
    if isinstance(substitution, dict):
        images = [ring(substitution[v]) for v in emf.base.ring.variables]
    else:
        images = [ring(p) for p in substitution]
    if len(group.action) != ring.nvars:
        raise GroupDataError("group action must give one character per variable of the new ring")
    for name, a, img in zip(emf.base.ring.variables, src.action, images):
        want = pull_character(a, src, group, pi)
        for e in img.terms:
            if group.monomial_character(e) != want:
                raise GroupDataError(f"substitution does not intertwine the actions at {name}: "
                                     f"term {e} has character {group.monomial_character(e)}, expected {want}")
    chi = pull_character(src.chi, src, group, pi)
    if chi != group.chi:
        raise GroupDataError(f"new group must use chi = {chi} (composition of chi with the homomorphism)")
    return EquivariantMF(base, group, tuple(pull_character(w, src, group, pi) for w in emf.weights0),
                         tuple(pull_character(w, src, group, pi) for w in emf.weights1))
