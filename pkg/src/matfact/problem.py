"""Line-oriented problem files.

A file is a sequence of sections ``[ring]``, ``[potential]``, ``[mf NAME]``
(repeatable), ``[group]``, ``[points]`` and ``[map]``, each holding
``key = value`` lines. ``#`` starts a comment line. Lists are separated by
``,``; matrix rows and per-generator characters by ``;``. The full grammar is
in ``docs/problem_format.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import MatrixFactorization, from_matrices, verify
from .equivariant import EquivariantMF, GroupData, verify_equivariant
from .errors import GroupDataError, HomogeneityError, MatfactError, PolySyntaxError, ProblemError, RingMapError
from .field import PrimeField, field_from_spec
from .matrix import PolyMatrix
from .parsing import parse_poly
from .poly import Poly, Ring, format_poly
from .pushforward import FiniteRingMap

_HEADER = re.compile(r"^\[\s*([A-Za-z]+)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\]\s*$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_NUMBER = re.compile(r"[+-]?\d+(/[1-9]\d*)?")

SECTION_KEYS = {
    "ring": {"field", "variables", "weights"},
    "potential": {"W"},
    "mf": {"degrees0", "degrees1", "delta1", "delta0", "twist", "weights0", "weights1"},
    "group": {"orders", "action", "chi"},
    "points": {"point"},
    "map": {"variables", "weights", "images", "basis", "potential"},
}
REPEATABLE_KEYS = {("points", "point")}


@dataclass
class MfBlock:
    name: str
    mf: MatrixFactorization
    weights0: tuple | None = None
    weights1: tuple | None = None
    line: int | None = field(default=None, compare=False)


@dataclass
class MapSpec:
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    images: tuple[Poly, ...]
    basis: tuple[Poly, ...]
    potential: Poly | None = None

    def source_ring(self, fld) -> Ring:
        return Ring(fld, self.variables, self.weights)


@dataclass
class ProblemFile:
    ring: Ring
    potential: Poly
    mfs: dict = field(default_factory=dict)
    group: GroupData | None = None
    points: tuple = ()
    map: MapSpec | None = None

    def mf(self, name: str | None = None) -> MatrixFactorization:
        return self.block(name).mf

    def block(self, name: str | None = None) -> MfBlock:
        if not self.mfs:
            raise ProblemError("the problem file defines no [mf] section")
        if name is None:
            return next(iter(self.mfs.values()))
        if name not in self.mfs:
            raise ProblemError(f"no factorization named {name!r} (have {', '.join(self.mfs)})")
        return self.mfs[name]

    def equivariant(self, name: str | None = None) -> EquivariantMF:
        b = self.block(name)
        if self.group is None:
            raise ProblemError("no [group] section")
        if b.weights0 is None or b.weights1 is None:
            raise ProblemError(f"factorization {b.name!r} has no weights0/weights1", b.line)
        return EquivariantMF(b.mf, self.group, b.weights0, b.weights1)

    def ring_map(self) -> FiniteRingMap:
        if self.map is None:
            raise ProblemError("no [map] section")
        m = self.map
        return FiniteRingMap(m.source_ring(self.ring.field), self.ring, m.images, m.basis)


# -- lexical helpers -------------------------------------------------------


def _split(text: str, sep: str, col: int):
    """Split ``text`` (starting at 1-based column ``col``) keeping each piece's column."""
    out = []
    start = 0
    for k, ch in enumerate(text + sep):
        if ch == sep:
            piece = text[start:k]
            lead = len(piece) - len(piece.lstrip())
            out.append((piece.strip(), col + start + lead))
            start = k + 1
    return out


def _ints(text, line, col, what):
    vals = []
    for piece, c in _split(text, ",", col):
        if not re.fullmatch(r"[+-]?\d+", piece):
            raise ProblemError(f"{what}: expected an integer, found {piece!r}", line, c)
        vals.append(int(piece))
    return tuple(vals)


def _names(text, line, col, what):
    vals = []
    for piece, c in _split(text, ",", col):
        if not _NAME.match(piece):
            raise ProblemError(f"{what}: invalid name {piece!r}", line, c)
        vals.append(piece)
    if len(set(vals)) != len(vals):
        raise ProblemError(f"{what}: duplicate names", line, col)
    return tuple(vals)


def _poly(text, line, col, ring):
    try:
        return parse_poly(text, ring)
    except PolySyntaxError as exc:
        raise ProblemError(f"polynomial syntax: {exc.reason}", line, col + exc.position - 1) from None


def _polys(text, line, col, ring):
    return tuple(_poly(p, line, c, ring) for p, c in _split(text, ",", col))


def _matrix(text, line, col, ring):
    rows = [[_poly(p, line, c, ring) for p, c in _split(row, ",", rc)] for row, rc in _split(text, ";", col)]
    if any(len(r) != len(rows[0]) for r in rows):
        raise ProblemError("matrix rows have different lengths", line, col)
    return PolyMatrix(ring, rows, len(rows), len(rows[0]))


def _chars(text, line, col, what):
    """``a,b;c,d`` -> ((a, b), (c, d))."""
    return tuple(_ints(p, line, c, what) for p, c in _split(text, ";", col))


# -- parsing ---------------------------------------------------------------


def _sections(text: str):
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lead = len(raw) - len(raw.lstrip())
        if s.startswith("["):
            m = _HEADER.match(s)
            if not m:
                raise ProblemError(f"malformed section header {s!r}", lineno, lead + 1)
            kind, name = m.group(1), m.group(2)
            if kind not in SECTION_KEYS:
                raise ProblemError(f"unknown section [{kind}]", lineno, lead + 2)
            if (kind == "mf") != (name is not None):
                raise ProblemError("[mf NAME] needs a name; other sections take none", lineno, lead + 1)
            current = {"kind": kind, "name": name, "line": lineno, "entries": {}}
            sections.append(current)
            continue
        m = _ENTRY.match(s)
        if not m:
            raise ProblemError("expected 'key = value'", lineno, lead + 1)
        if current is None:
            raise ProblemError("entry outside of any section", lineno, lead + 1)
        key, value = m.group(1), m.group(2)
        if key not in SECTION_KEYS[current["kind"]]:
            raise ProblemError(f"unknown key {key!r} in [{current['kind']}]", lineno, lead + 1)
        stripped = raw.lstrip()
        eq = stripped.index("=")
        after = stripped[eq + 1:]
        vcol = lead + eq + 2 + len(after) - len(after.lstrip())
        if not value:
            raise ProblemError(f"empty value for {key!r}", lineno, vcol)
        entries = current["entries"]
        if (current["kind"], key) in REPEATABLE_KEYS:
            entries.setdefault(key, []).append((value, lineno, vcol))
        elif key in entries:
            raise ProblemError(f"duplicate key {key!r}", lineno, lead + 1)
        else:
            entries[key] = (value, lineno, vcol)
    return sections


def _need(sec, key):
    if key not in sec["entries"]:
        raise ProblemError(f"[{sec['kind']}] is missing {key!r}", sec["line"])
    return sec["entries"][key]


def parse(text: str, field_override=None, strict: bool = True) -> ProblemFile:
    """Parse and validate a problem file.

    With ``strict`` every factorization must verify; otherwise failing ones are
    kept so that ``verify`` can report them.
    """
    sections = _sections(text)
    singles = {}
    for sec in sections:
        if sec["kind"] != "mf":
            if sec["kind"] in singles:
                raise ProblemError(f"section [{sec['kind']}] appears twice", sec["line"])
            singles[sec["kind"]] = sec
    for kind in ("ring", "potential"):
        if kind not in singles:
            raise ProblemError(f"missing [{kind}] section", 1)

    rs = singles["ring"]
    fv, fl, fc = _need(rs, "field")
    try:
        fld = field_from_spec(field_override if field_override is not None else fv)
    except ValueError as exc:
        raise ProblemError(str(exc), fl, fc) from None
    variables = _names(*_need(rs, "variables"), "variables")
    if "weights" in rs["entries"]:
        weights = _ints(*rs["entries"]["weights"], "weights")
        if len(weights) != len(variables) or any(w <= 0 for w in weights):
            raise ProblemError("weights: one positive integer per variable", rs["entries"]["weights"][1])
    else:
        weights = (1,) * len(variables)
    ring = Ring(fld, variables, weights)

    ps = singles["potential"]
    wv, wl, wc = _need(ps, "W")
    W = _poly(wv, wl, wc, ring)
    if not W or not W.is_homogeneous():
        raise ProblemError("W must be a nonzero quasi-homogeneous polynomial", wl, wc)

    group = None
    if "group" in singles:
        gs = singles["group"]
        orders = _ints(*_need(gs, "orders"), "orders")
        action = _chars(*_need(gs, "action"), "action")
        chi = _ints(*_need(gs, "chi"), "chi")
        try:
            group = GroupData(orders, action, chi)
            group.validate(ring, W)
        except GroupDataError as exc:
            raise ProblemError(f"group: {exc}", gs["line"]) from None

    mfs = {}
    for sec in sections:
        if sec["kind"] != "mf":
            continue
        name = sec["name"]
        if name in mfs:
            raise ProblemError(f"factorization {name!r} defined twice", sec["line"])
        e = sec["entries"]
        d1 = _matrix(*_need(sec, "delta1"), ring)
        d0 = _matrix(*_need(sec, "delta0"), ring)
        deg0 = _ints(*e["degrees0"], "degrees0") if "degrees0" in e else None
        deg1 = _ints(*e["degrees1"], "degrees1") if "degrees1" in e else None
        if deg1 is not None and deg0 is None:
            raise ProblemError("degrees1 given without degrees0", e["degrees1"][1])
        twist = _ints(*e["twist"], "twist")[0] if "twist" in e else 0
        try:
            mf = from_matrices(ring, W, d1, d0, deg0, deg1, twist)
        except (ValueError, MatfactError) as exc:
            raise ProblemError(f"mf {name}: {exc}", sec["line"]) from None
        if strict:
            rep = verify(mf)
            if not rep.ok:
                v = rep.violations[0]
                raise ProblemError(f"mf {name}: {v.matrix} cell ({v.cell[0]},{v.cell[1]}): {v.detail}"
                                   + (f" (and {len(rep.violations) - 1} more)" if len(rep.violations) > 1 else ""),
                                   sec["line"])
        w0 = _chars(*e["weights0"], "weights0") if "weights0" in e else None
        w1 = _chars(*e["weights1"], "weights1") if "weights1" in e else None
        if (w0 is None) != (w1 is None):
            raise ProblemError(f"mf {name}: give both weights0 and weights1", sec["line"])
        if w0 is not None:
            if group is None:
                raise ProblemError(f"mf {name}: weights need a [group] section", e["weights0"][1])
            try:
                emf = EquivariantMF(mf, group, w0, w1)
            except GroupDataError as exc:
                raise ProblemError(f"mf {name}: {exc}", e["weights0"][1]) from None
            if strict:
                rep = verify_equivariant(emf)
                if rep.violations:
                    v = rep.violations[0]
                    raise ProblemError(f"mf {name}: {v.matrix} cell ({v.cell[0]},{v.cell[1]}) is not "
                                       f"equivariant: monomial {v.exponents} has character {v.found}, "
                                       f"expected {v.expected}", e["weights0"][1])
            w0, w1 = emf.weights0, emf.weights1
        mfs[name] = MfBlock(name, mf, w0, w1, sec["line"])

    points = ()
    if "points" in singles:
        pts = []
        for value, line, col in singles["points"]["entries"].get("point", []):
            coords = []
            for piece, c in _split(value, ",", col):
                if not _NUMBER.fullmatch(piece):
                    raise ProblemError(f"point coordinate must be an integer or a fraction, found {piece!r}",
                                       line, c)
                coords.append(fld(Fraction(piece)))
            if len(coords) != ring.nvars:
                raise ProblemError(f"point needs {ring.nvars} coordinates", line, col)
            if not fld.is_zero(W.evaluate(coords)):
                raise ProblemError("point is not on the zero locus of W", line, col)
            pts.append(tuple(coords))
        points = tuple(pts)

    ring_map = None
    if "map" in singles:
        ms = singles["map"]
        svars = _names(*_need(ms, "variables"), "map variables")
        sweights = _ints(*ms["entries"]["weights"], "map weights") if "weights" in ms["entries"] else (1,) * len(svars)
        if len(sweights) != len(svars):
            raise ProblemError("map weights: one per source variable", ms["line"])
        images = _polys(*_need(ms, "images"), ring)
        basis = _polys(*_need(ms, "basis"), ring)
        src = Ring(fld, svars, sweights)
        spot = _poly(*ms["entries"]["potential"], src) if "potential" in ms["entries"] else None
        ring_map = MapSpec(svars, sweights, images, basis, spot)
        try:
            FiniteRingMap(src, ring, images, basis)
        except (RingMapError, HomogeneityError) as exc:
            raise ProblemError(f"map: {exc}", ms["line"]) from None

    return ProblemFile(ring, W, mfs, group, points, ring_map)


def parse_file(path, field_override=None, strict: bool = True) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), field_override, strict)


# -- serialization ---------------------------------------------------------


def _fmt_field(fld) -> str:
    return str(fld.p) if isinstance(fld, PrimeField) else "Q"


def _fmt_value(fld, c) -> str:
    if isinstance(fld, PrimeField):
        return str(fld.signed(c))
    return str(c)


def _fmt_matrix(M: PolyMatrix) -> str:
    return "; ".join(", ".join(format_poly(p) for p in row) for row in M.entries)


def _fmt_chars(ws) -> str:
    return "; ".join(", ".join(str(x) for x in w) for w in ws)


def serialize(pf: ProblemFile) -> str:
    """Canonical text; ``parse(serialize(pf)) == pf``."""
    r = pf.ring
    out = ["[ring]", f"field = {_fmt_field(r.field)}", f"variables = {', '.join(r.variables)}",
           f"weights = {', '.join(str(w) for w in r.weights)}", "", "[potential]",
           f"W = {format_poly(pf.potential)}", ""]
    if pf.group is not None:
        g = pf.group
        out += ["[group]", f"orders = {', '.join(str(d) for d in g.orders)}", f"action = {_fmt_chars(g.action)}",
                f"chi = {', '.join(str(x) for x in g.chi)}", ""]
    for name, b in pf.mfs.items():
        mf = b.mf
        out += [f"[mf {name}]", f"degrees0 = {', '.join(str(d) for d in mf.degrees0)}",
                f"degrees1 = {', '.join(str(d) for d in mf.degrees1)}",
                f"delta1 = {_fmt_matrix(mf.delta1)}", f"delta0 = {_fmt_matrix(mf.delta0)}"]
        if mf.twist:
            out.append(f"twist = {mf.twist}")
        if b.weights0 is not None:
            out += [f"weights0 = {_fmt_chars(b.weights0)}", f"weights1 = {_fmt_chars(b.weights1)}"]
        out.append("")
    if pf.points:
        out.append("[points]")
        out += [f"point = {', '.join(_fmt_value(r.field, c) for c in p)}" for p in pf.points]
        out.append("")
    if pf.map is not None:
        m = pf.map
        out += ["[map]", f"variables = {', '.join(m.variables)}", f"weights = {', '.join(str(w) for w in m.weights)}",
                f"images = {', '.join(format_poly(p) for p in m.images)}",
                f"basis = {', '.join(format_poly(p) for p in m.basis)}"]
        if m.potential is not None:
            out.append(f"potential = {format_poly(m.potential)}")
        out.append("")
    return "\n".join(out)
