"""JSON encoding of tvarkit objects and parsing of problem files.

Rationals travel as strings "p/q" (or plain integers); floats are refused
so that no precision is silently lost.
"""

import json
import re
from fractions import Fraction

from .curve import CURVES, INF, RationalFunction, point_str
from .divisor import HomogeneousElement, PolyhedralDivisor
from .errors import TvarkitError
from .polyhedral import Cone, SigmaPolyhedron, polyhedron_from_inequalities

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class ParseError(TvarkitError):
    code = "parse-error"


# encoding


def q(x):
    return str(Fraction(x))


def ivec(v):
    return [int(x) for x in v]


def qvec(v):
    return [q(x) for x in v]


def cone_json(c):
    return {
        "rays": [ivec(r) for r in c.rays],
        "lineality": [ivec(r) for r in c.lineality],
        "facets": [ivec(r) for r in c.facets],
        "equations": [ivec(r) for r in c.equations],
    }


def polyhedron_json(p):
    return {
        "vertices": [qvec(v) for v in p.vertices],
        "recession": cone_json(p.recession),
        "inequalities": [{"normal": ivec(a), "bound": q(b)} for a, b in p.inequalities],
        "equations": [{"normal": ivec(a), "value": q(b)} for a, b in p.equations],
    }


def function_json(f):
    return {"unit": q(f.unit), "factors": [[q(a), e] for a, e in f.factors]}


def element_json(g):
    out = function_json(g.function)
    out["weight"] = ivec(g.weight)
    return out


def qdivisor_json(d):
    return [{"point": point_str(z), "value": q(c)} for z, c in d.coeffs.items()]


def divisor_json(d):
    return {
        "curve": d.curve,
        "sigma": cone_json(d.sigma),
        "coefficients": [{"point": point_str(z), "polyhedron": polyhedron_json(p)} for z, p in d.coefficients],
    }


def section_json(s):
    if s.divisor.curve == "affine-line":
        return {"module_generator": function_json(s.generator)}
    return {"dimension": s.dimension(), "basis": [function_json(f) for f in s.basis]}


def to_jsonable(x):
    """Fallback conversion for nested payload values."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return q(x)
    if x is INF:
        return "inf"
    if isinstance(x, Cone):
        return cone_json(x)
    if isinstance(x, SigmaPolyhedron):
        return polyhedron_json(x)
    if isinstance(x, RationalFunction):
        return function_json(x)
    if isinstance(x, HomogeneousElement):
        return element_json(x)
    if isinstance(x, PolyhedralDivisor):
        return divisor_json(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def dumps(obj):
    """Canonical, byte-stable JSON text."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# parsing


def parse_rational(x, where):
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise ParseError(f"{where}: floats are not accepted, write rationals as \"p/q\" strings")
    if isinstance(x, str) and _RATIONAL.match(x):
        num, _, den = x.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ParseError(f"{where}: zero denominator")
        return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"{where}: malformed rational {x!r}")


def parse_int(x, where):
    v = parse_rational(x, where)
    if v.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return int(v)


def parse_list(x, where):
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list")
    return x


def parse_vector(x, rank, where, integral=True):
    parse_list(x, where)
    if rank is not None and len(x) != rank:
        raise ParseError(f"{where}: expected {rank} entries, got {len(x)}")
    conv = parse_int if integral else parse_rational
    return tuple(conv(v, f"{where}[{i}]") for i, v in enumerate(x))


def parse_point(x, where):
    if x == "inf":
        return INF
    return parse_rational(x, where)


def parse_function(obj, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unit = parse_rational(obj.get("unit", 1), f"{where}.unit")
    if unit == 0:
        raise ParseError(f"{where}.unit: must be nonzero")
    factors = {}
    for i, fac in enumerate(parse_list(obj.get("factors", []), f"{where}.factors")):
        w = f"{where}.factors[{i}]"
        if not isinstance(fac, list) or len(fac) != 2:
            raise ParseError(f"{w}: expected [root, exponent]")
        root = parse_rational(fac[0], f"{w}[0]")
        factors[root] = factors.get(root, 0) + parse_int(fac[1], f"{w}[1]")
    return RationalFunction(unit, factors)


def parse_element(obj, rank, where):
    f = parse_function(obj, where)
    if "weight" not in obj:
        raise ParseError(f"{where}: missing weight")
    return HomogeneousElement(f, parse_vector(obj["weight"], rank, f"{where}.weight"))


def parse_polyhedron(obj, sigma, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    rank = sigma.dim
    if "vertices" in obj:
        verts = [
            parse_vector(v, rank, f"{where}.vertices[{i}]", integral=False)
            for i, v in enumerate(parse_list(obj["vertices"], f"{where}.vertices"))
        ]
        if not verts:
            raise ParseError(f"{where}.vertices: needs at least one vertex")
        return SigmaPolyhedron.from_vertices(verts, sigma)
    if "inequalities" in obj:
        ineqs = []
        for i, h in enumerate(parse_list(obj["inequalities"], f"{where}.inequalities")):
            w = f"{where}.inequalities[{i}]"
            if not isinstance(h, dict) or "normal" not in h or "bound" not in h:
                raise ParseError(f"{w}: expected {{normal, bound}}")
            ineqs.append((parse_vector(h["normal"], rank, f"{w}.normal"), parse_rational(h["bound"], f"{w}.bound")))
        return polyhedron_from_inequalities(ineqs, sigma)
    raise ParseError(f"{where}: give vertices or inequalities")


class Problem:
    """A parsed problem file."""

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise ParseError("problem: expected a JSON object")
        self.raw = raw
        version = raw.get("version", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise ParseError(f"version: unsupported format version {version!r}")
        if "rank" not in raw:
            raise ParseError("rank: missing")
        self.rank = parse_int(raw["rank"], "rank")
        if self.rank < 1:
            raise ParseError("rank: must be positive")
        self.curve = raw.get("curve")
        if self.curve not in CURVES:
            raise ParseError(f"curve: expected one of {list(CURVES)}, got {self.curve!r}")
        self.task = raw.get("task")
        self.sigma = None
        if "sigma" in raw:
            rays = [parse_vector(r, self.rank, f"sigma[{i}]") for i, r in enumerate(parse_list(raw["sigma"], "sigma"))]
            self.sigma = Cone.from_rays(rays, dim=self.rank)
        self.divisor_spec = raw.get("divisor")
        if self.divisor_spec is not None:
            parse_list(self.divisor_spec, "divisor")
            if self.sigma is None:
                raise ParseError("sigma: required when a divisor is given")
        self.generators = self._elements("generators")
        self.ideal_generators = self._elements("ideal_generators")
        opts = raw.get("options", {}) or {}
        if not isinstance(opts, dict):
            raise ParseError("options: expected an object")
        self.power_e = parse_int(opts["power_e"], "options.power_e") if opts.get("power_e") is not None else None
        self.dim_bound = parse_int(opts["dim_bound"], "options.dim_bound") if opts.get("dim_bound") is not None else None
        self.window_retries = (
            parse_int(opts["window_retries"], "options.window_retries") if opts.get("window_retries") is not None else 3
        )
        self.weight = parse_vector(opts["weight"], self.rank, "options.weight") if opts.get("weight") is not None else None

    def _elements(self, key):
        if self.raw.get(key) is None:
            return None
        items = parse_list(self.raw[key], key)
        return tuple(parse_element(g, self.rank, f"{key}[{i}]") for i, g in enumerate(items))

    def divisor(self):
        """The polyhedral divisor given explicitly, or None."""
        if self.divisor_spec is None and self.sigma is None:
            return None
        coeffs = {}
        for i, entry in enumerate(self.divisor_spec or []):
            w = f"divisor[{i}]"
            if not isinstance(entry, dict) or "point" not in entry or "polyhedron" not in entry:
                raise ParseError(f"{w}: expected {{point, polyhedron}}")
            z = parse_point(entry["point"], f"{w}.point")
            if z in coeffs:
                raise ParseError(f"{w}.point: duplicate point {point_str(z)}")
            coeffs[z] = parse_polyhedron(entry["polyhedron"], self.sigma, f"{w}.polyhedron")
        return PolyhedralDivisor(self.curve, self.sigma, coeffs)


def load_problem(text):
    try:
        raw = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return Problem(raw)


def _reject_float(s):
    raise ParseError(f"floats are not accepted (found {s}); write rationals as \"p/q\" strings")
