"""Sparse multivariate polynomials over an exact field with a weighted grading.

All degrees are *doubled*: a variable of weight ``w`` has degree ``2*w``. This
keeps half of ``deg W`` an integer. User-facing weights are undoubled.

The monomial order is weighted-degree reverse lexicographic, ties broken by
the declared variable order (first variable largest).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import RingMismatchError
from .field import Field, PrimeField, field_from_spec

NEG_INF = float("-inf")


class _Inhomogeneous:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INHOMOGENEOUS"


INHOMOGENEOUS = _Inhomogeneous()


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[tuple[int, ...], ...]:
    n = len(degrees)
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            if left % degrees[i] == 0:
                out.append(tuple(acc + [left // degrees[i]]))
            return
        for e in range(left // degrees[i], -1, -1):
            rec(i + 1, left - e * degrees[i], acc + [e])

    rec(0, d, [])
    out.sort(key=_order_key_factory(degrees), reverse=True)
    return tuple(out)


def _order_key_factory(degrees):
    def key(e):
        return (sum(a * b for a, b in zip(e, degrees)), tuple(-x for x in reversed(e)))

    return key


class Ring:
    """A weighted polynomial ring ``k[x_1..x_n]`` (the ring-spec record)."""

    __slots__ = ("field", "variables", "weights", "degrees", "_key", "_index")

    def __init__(self, field: Field | str | int, variables, weights=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"variable names must be distinct: {variables}")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(variables)))
        if len(weights) != len(variables):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError(f"weights must be >= 1, got {weights}")
        self.field = field_from_spec(field)
        self.variables = variables
        self.weights = weights
        self.degrees = tuple(2 * w for w in weights)
        self._key = (self.field, variables, weights)
        self._index = {v: i for i, v in enumerate(variables)}

    def __repr__(self):
        vs = ", ".join(f"{v}:{w}" for v, w in zip(self.variables, self.weights))
        return f"Ring({self.field!r}[{vs}])"

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c != 0 else {})

    def var(self, name_or_index) -> Poly:
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exponents, coeff=1) -> Poly:
        c = self.field(coeff)
        return Poly(self, {tuple(exponents): c} if c != 0 else {})

    def monomial_degree(self, e) -> int:
        return sum(a * b for a, b in zip(e, self.degrees))

    def order_key(self, e):
        return (self.monomial_degree(e), tuple(-x for x in reversed(e)))

    def monomials(self, degree) -> tuple[tuple[int, ...], ...]:
        """Exponent vectors of doubled degree ``degree``, largest first."""
        if degree != int(degree):
            return ()
        return _monomials(self.degrees, int(degree))

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring != self:
                raise RingMismatchError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, str):
            from .parsing import parse_poly

            return parse_poly(value, self)
        return self.const(value)

    def with_field(self, field) -> Ring:
        return Ring(field, self.variables, self.weights)


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms) -> Poly:
        F = ring.field
        out: dict = {}
        for e, c in (terms.items() if isinstance(terms, dict) else terms):
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError(f"exponent {e} has wrong length for {ring!r}")
            v = F(out.get(e, 0) + c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return cls(ring, out)

    # -- basic protocol ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_poly(self)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F(out.get(e, 0) + c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        F = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, {e: v for e, c in out.items() if (v := F(c)) != 0})

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Poly:
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: F(v * c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, e, c=1) -> Poly:
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {tuple(a + b for a, b in zip(e0, e)): F(v * c) for e0, v in self.terms.items()})

    # -- grading ------------------------------------------------------------

    def weighted_degree(self):
        """Doubled weighted degree; ``NEG_INF`` for zero, ``INHOMOGENEOUS`` when terms disagree."""
        if not self.terms:
            return NEG_INF
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else INHOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return self.weighted_degree() is not INHOMOGENEOUS

    def homogeneous_components(self) -> dict[int, Poly]:
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(self.ring.monomial_degree(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in comps.items()}

    # -- order, division ------------------------------------------------------

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.order_key(t[0]), reverse=True)

    def divmod(self, divisor: Poly) -> tuple[Poly, Poly]:
        """Division by a single divisor: ``self = q*divisor + r`` with no term of
        ``r`` divisible by the leading monomial of ``divisor``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        key = self.ring.order_key
        lm = divisor.leading_monomial()
        lc_inv = F.inv(divisor.terms[lm])
        p = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while p:
            e = max(p, key=key)
            c = p[e]
            if all(a >= b for a, b in zip(e, lm)):
                shift = tuple(a - b for a, b in zip(e, lm))
                f = F(c * lc_inv)
                q[shift] = F(q.get(shift, 0) + f)
                for de, dc in divisor.terms.items():
                    te = tuple(a + b for a, b in zip(de, shift))
                    v = F(p.get(te, 0) - f * dc)
                    if v == 0:
                        p.pop(te, None)
                    else:
                        p[te] = v
            else:
                r[e] = c
                del p[e]
        return Poly(self.ring, {e: c for e, c in q.items() if c != 0}), Poly(self.ring, r)

    def normal_form(self, W: Poly) -> Poly:
        """Canonical representative of ``self`` modulo the principal ideal ``(W)``."""
        return self.divmod(W)[1]

    def exact_div(self, other: Poly) -> Poly | None:
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    # -- evaluation, substitution -------------------------------------------

    def evaluate(self, point):
        F = self.ring.field
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * F(x) ** k
            total += t
        return F(total)

    def substitute(self, images, target: Ring | None = None) -> Poly:
        """Replace variable ``i`` by ``images[i]`` (polys in ``target``)."""
        target = target or (images[0].ring if images else self.ring)
        result = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    pw = cache.get((i, k))
                    if pw is None:
                        pw = cache[(i, k)] = images[i] ** k
                    t = t * pw
            result = result + t
        return result

    def derivative(self, i: int) -> Poly:
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = F(c * e[i])
                if v != 0:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Poly(self.ring, out)

    def change_ring(self, ring: Ring) -> Poly:
        return Poly.from_terms(ring, self.terms.items())


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Functional form of ``+``, ``-``, ``*``."""
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring!r} vs {b.ring!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def weighted_degree(a: Poly):
    return a.weighted_degree()


def normal_form_mod_W(a: Poly, W: Poly) -> Poly:
    return a.normal_form(W)


def graded_piece_basis(ring: Ring, degree, module_degrees) -> list[tuple[tuple[int, ...], int]]:
    """``(monomial, generator)`` pairs spanning degree ``degree`` of ``⊕ R·e_j``
    where ``e_j`` sits in degree ``module_degrees[j]`` (doubled)."""
    out = []
    for j, g in enumerate(module_degrees):
        out.extend((m, j) for m in ring.monomials(degree - g))
    return out


def standard_monomials(ring: Ring, degree, W: Poly):
    """Monomials of ``degree`` not divisible by the leading monomial of ``W``:
    a k-basis of ``(R/W)_degree``."""
    lm = W.leading_monomial()
    return tuple(m for m in ring.monomials(degree) if not all(a >= b for a, b in zip(m, lm)))


def format_poly(p: Poly) -> str:
    ring = p.ring
    if not p.terms:
        return "0"
    F = ring.field
    parts = []
    for e, c in p.sorted_terms():
        if isinstance(F, PrimeField):
            c = F.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(ring.variables, e) if k
        )
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
