"""Canonical JSON documents for polytopes, fans, profiles, building sets, routing schemes and configurations.

Rationals are written as ``"p/q"`` strings (``"p"`` when ``q = 1``), floats
with 17 significant digits, and object keys are sorted, so equal inputs give
byte-identical output.  Parse failures raise ``ParseError`` carrying a JSON
pointer to the offending value.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .errors import InscribedError
from .exact import EXACT, ScalarMode
from .fan import Fan
from .nestohedra import BuildingSet
from .planar import Profile
from .polytope import Polytope, convex_hull
from .trajectory import RoutingScheme


class ParseError(InscribedError):
    def __init__(self, pointer, detail):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {detail}")


# --- writing -----------------------------------------------------------------------

def format_scalar(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _float_text(x):
    if not math.isfinite(x):
        raise ValueError("non-finite float in output")
    s = format(x, ".17g")
    return s if any(c in s for c in ".en") else s + ".0"


def _dump(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, Fraction):
        out.append(json.dumps(format_scalar(obj)))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float_text(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for k, key in enumerate(sorted(obj, key=str)):
            if k:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _dump(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj, key=_sort_key) if isinstance(obj, (set, frozenset)) else obj
        out.append("[")
        for k, item in enumerate(items):
            if k:
                out.append(",")
            _dump(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _sort_key(x):
    if isinstance(x, (set, frozenset)):
        return (len(x), sorted(x, key=str))
    return (0, str(x))


def dumps(obj) -> str:
    """Canonical JSON text."""
    out = []
    _dump(obj, out)
    return "".join(out)


def polytope_doc(P: Polytope):
    return {"dim": P.ambient_dim, "vertices": [list(v) for v in sorted(P.vertices)]}


def fan_doc(F: Fan):
    """Every wall in both directions, sorted; twins are always written out."""
    walls = [{"from": R, "to": S, "normal": list(F.normal(R, S))} for (R, S) in sorted(F.normals)]
    doc = {"dim": F.dim, "regions": sorted(F.regions), "walls": walls}
    if F.link_cycles:
        doc["link_cycles"] = [list(c) for c in F.link_cycles]
    return doc


def lambda_doc(F: Fan, values, anchor=None):
    doc = {"weights": {f"{R}-{S}": x for (R, S), x in zip(F.edges(), values)}}
    if anchor is not None:
        doc["anchor"] = {"region": anchor[0], "vertex": list(anchor[1])}
    return doc


def profile_doc(beta: Profile):
    return {"pi_multiples": list(beta.angles)} if beta.exact else {"radians": list(beta.angles)}


def building_doc(B: BuildingSet):
    return {"ground": B.ground, "sets": B.sets}


# --- reading -----------------------------------------------------------------------

def loads(text, pointer=""):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(pointer, f"invalid JSON ({e.msg} at line {e.lineno} column {e.colno})") from None


def _escape(token):
    return str(token).replace("~", "~0").replace("/", "~1")


def _child(pointer, token):
    return f"{pointer}/{_escape(token)}"


def _field(doc, key, pointer, kind=None, optional=False):
    if not isinstance(doc, dict):
        raise ParseError(pointer, "expected an object")
    if key not in doc:
        if optional:
            return None
        raise ParseError(_child(pointer, key), "missing field")
    value = doc[key]
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(_child(pointer, key), f"expected {name}")
    return value


def _scalar(x, pointer, mode):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise ParseError(pointer, "expected a number or a 'p/q' string")
    if mode.exact and isinstance(x, float):
        raise ParseError(pointer, "floats are not allowed in exact mode; use 'p/q' strings")
    try:
        return mode.scalar(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(pointer, f"cannot read {x!r} as a rational") from None


def _vector(xs, pointer, mode, length=None):
    if not isinstance(xs, list):
        raise ParseError(pointer, "expected an array")
    if length is not None and len(xs) != length:
        raise ParseError(pointer, f"expected {length} entries, got {len(xs)}")
    return tuple(_scalar(x, _child(pointer, k), mode) for k, x in enumerate(xs))


def _dim(doc, pointer):
    d = _field(doc, "dim", pointer, int)
    if d < 1:
        raise ParseError(_child(pointer, "dim"), "dimension must be positive")
    return d


def _label(x, pointer):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(pointer, "expected an integer or string id")
    return x


def parse_polytope(doc, mode: ScalarMode = EXACT, pointer="") -> Polytope:
    d = _dim(doc, pointer)
    verts = _field(doc, "vertices", pointer, list)
    if not verts:
        raise ParseError(_child(pointer, "vertices"), "no vertices")
    vp = _child(pointer, "vertices")
    pts = [_vector(v, _child(vp, k), mode, d) for k, v in enumerate(verts)]
    return convex_hull(pts, mode)


def parse_fan(doc, mode: ScalarMode = EXACT, pointer="") -> Fan:
    d = _dim(doc, pointer)
    rp = _child(pointer, "regions")
    regions = [_label(r, _child(rp, k)) for k, r in enumerate(_field(doc, "regions", pointer, list))]
    if len(set(regions)) != len(regions):
        raise ParseError(rp, "duplicate region id")
    known = set(regions)
    wp = _child(pointer, "walls")
    walls = []
    for k, w in enumerate(_field(doc, "walls", pointer, list)):
        p = _child(wp, k)
        R = _label(_field(w, "from", p), _child(p, "from"))
        S = _label(_field(w, "to", p), _child(p, "to"))
        for key, x in (("from", R), ("to", S)):
            if x not in known:
                raise ParseError(_child(p, key), f"unknown region {x!r}")
        walls.append((R, S, _vector(_field(w, "normal", p, list), _child(p, "normal"), mode, d)))
    cycles = _field(doc, "link_cycles", pointer, list, optional=True) or []
    lp = _child(pointer, "link_cycles")
    for k, c in enumerate(cycles):
        if not isinstance(c, list) or any(x not in known for x in c):
            raise ParseError(_child(lp, k), "link cycle must list known regions")
    extra = {}
    for key in ("generators", "interior"):
        block = _field(doc, key, pointer, dict, optional=True)
        if block is None:
            continue
        bp = _child(pointer, key)
        ids = {str(R): R for R in regions}
        parsed = {}
        for name, value in block.items():
            if name not in ids:
                raise ParseError(_child(bp, name), "unknown region")
            if key == "generators":
                if not isinstance(value, list):
                    raise ParseError(_child(bp, name), "expected an array of rays")
                parsed[ids[name]] = tuple(_vector(g, _child(_child(bp, name), j), mode, d) for j, g in enumerate(value))
            else:
                parsed[ids[name]] = _vector(value, _child(bp, name), mode, d)
        extra[key] = parsed
    try:
        return Fan.from_walls(d, regions, walls, mode, link_cycles=tuple(tuple(c) for c in cycles), **extra)
    except InscribedError as e:
        raise ParseError(wp, str(e)) from None


def parse_lambda(doc, F: Fan, pointer=""):
    """Weights keyed ``"R-S"`` (either order); returns ``(values, anchor)``."""
    weights = _field(doc, "weights", pointer, dict)
    wp = _child(pointer, "weights")
    names = {}
    for R, S in F.edges():
        names[f"{R}-{S}"] = names[f"{S}-{R}"] = (R, S)
    got = {}
    for key, x in weights.items():
        if key not in names:
            raise ParseError(_child(wp, key), "not a wall of the fan")
        got[names[key]] = _scalar(x, _child(wp, key), F.mode)
    missing = [e for e in F.edges() if e not in got]
    if missing:
        raise ParseError(wp, f"missing weight for wall {missing[0][0]}-{missing[0][1]}")
    anchor = None
    a = _field(doc, "anchor", pointer, dict, optional=True)
    if a is not None:
        ap = _child(pointer, "anchor")
        R = _field(a, "region", ap)
        if R not in F.regions:
            raise ParseError(_child(ap, "region"), "unknown region")
        anchor = (R, _vector(_field(a, "vertex", ap, list), _child(ap, "vertex"), F.mode, F.dim))
    return tuple(got[e] for e in F.edges()), anchor


def parse_profile(doc, pointer="") -> Profile:
    if not isinstance(doc, dict):
        raise ParseError(pointer, "expected an object")
    try:
        if "pi_multiples" in doc:
            p = _child(pointer, "pi_multiples")
            return Profile.from_pi_multiples(_vector(_field(doc, "pi_multiples", pointer, list), p, EXACT))
        if "radians" in doc:
            p = _child(pointer, "radians")
            return Profile.from_radians(_vector(_field(doc, "radians", pointer, list), p, ScalarMode.float()))
    except InscribedError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(p, str(e)) from None
    raise ParseError(pointer, "expected 'pi_multiples' or 'radians'")


def parse_building_set(doc, pointer="") -> BuildingSet:
    d = _field(doc, "ground", pointer, int)
    sp = _child(pointer, "sets")
    sets = _field(doc, "sets", pointer, list)
    for k, s in enumerate(sets):
        if not isinstance(s, list) or not s or any(isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= d
                                                   for x in s):
            raise ParseError(_child(sp, k), f"expected a nonempty array of elements of 1..{d}")
    return BuildingSet.of(d, sets)


def parse_routing(doc, mode: ScalarMode = EXACT, pointer="") -> RoutingScheme:
    """Same shape as a fan document; ``regions`` name the nodes and wall normals give the lines."""
    d = _dim(doc, pointer)
    wp = _child(pointer, "walls")
    edges = []
    for k, w in enumerate(_field(doc, "walls", pointer, list)):
        p = _child(wp, k)
        u = _label(_field(w, "from", p), _child(p, "from"))
        v = _label(_field(w, "to", p), _child(p, "to"))
        if u == v:
            raise ParseError(p, "loop edge")
        edges.append((u, v, _vector(_field(w, "normal", p, list), _child(p, "normal"), mode, d)))
    nodes = _field(doc, "regions", pointer, list, optional=True)
    try:
        S = RoutingScheme.of(d, edges, mode)
    except InscribedError as e:
        raise ParseError(wp, str(e)) from None
    if nodes is not None and set(nodes) != set(S.nodes):
        raise ParseError(_child(pointer, "regions"), "regions do not match the nodes used by the walls")
    return S


def parse_config(doc, pointer=""):
    """``{"dim": n, "points": {label: point}}``; labels that look like integers become ints."""
    from .delaunay import LabelledConfig
    d = _dim(doc, pointer)
    pp = _child(pointer, "points")
    pts = _field(doc, "points", pointer, dict)
    if not pts:
        raise ParseError(pp, "no points")
    out = {}
    for name, x in pts.items():
        label = int(name) if name.lstrip("-").isdigit() else name
        out[label] = _vector(x, _child(pp, name), EXACT, d)
    try:
        return LabelledConfig(out)
    except InscribedError as e:
        raise ParseError(pp, str(e)) from None
