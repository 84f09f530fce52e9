"""Command line front end: ``tvarkit <task> -i problem.json``.

Exit status 0 on success, 1 for a mathematical/domain error, 2 when the
problem file cannot be parsed.
"""

import argparse
import random
import sys

from . import serialize as io
from .curve import AFFINE
from .divisor import MultigradedAlgebra, graded_piece, is_elliptic, is_proper
from .errors import TvarkitError
from .ideals import HomogeneousIdeal, closure_generators, ideal_closure, verify_correspondence
from .lattice import efold_sum_membership
from .normality import (
    closure_piece_generator,
    normality_certificate,
    power_closure_equal,
    power_piece_generator,
    is_polynomial_ambient,
    rrv_check,
)
from .normalization import AlgebraPresentation, dpd_presentation, normalize, verify_normalization, weight_cone
from .polyhedral import Cone

TASKS = ("normalize", "closure", "rees-cone", "normality", "sections", "check-proper", "oracle")


class OracleMismatch(TvarkitError):
    code = "oracle-mismatch"


def _report(rep):
    return {name: {"ok": ok, "detail": detail} for name, (ok, detail) in rep.checks.items()}


def _presentation(problem):
    if not problem.generators:
        raise io.ParseError("generators: required for this task")
    return AlgebraPresentation(problem.curve, problem.generators)


def _ambient(problem):
    d = problem.divisor()
    if d is not None:
        return MultigradedAlgebra(d)
    if problem.generators:
        return normalize(_presentation(problem))
    raise io.ParseError("divisor/sigma or generators: needed to define the ambient algebra")


def _ideal(problem, a):
    if not problem.ideal_generators:
        raise io.ParseError("ideal_generators: required for this task")
    return HomogeneousIdeal(a, problem.ideal_generators)


def _generation_box(pres):
    hi = [max(0, max(g.weight[i] for g in pres.generators)) for i in range(pres.rank)]
    lo = [min(0, min(g.weight[i] for g in pres.generators)) for i in range(pres.rank)]
    return tuple(lo), tuple(2 * h for h in hi)


def _proper_json(cert):
    return {
        "proper": cert.proper,
        "reason": cert.reason,
        "ray_degrees": [{"weight": list(m), "degree": io.q(d)} for m, d in cert.ray_degrees],
        "interior_point": list(cert.interior_point) if cert.interior_point is not None else None,
        "interior_degree": io.q(cert.interior_degree) if cert.interior_degree is not None else None,
        "failing_weight": list(cert.failing_weight) if cert.failing_weight is not None else None,
    }


def task_normalize(problem, args):
    pres = _presentation(problem)
    a = normalize(pres)
    out = {
        "weight_cone": weight_cone(pres),
        "sigma": a.sigma,
        "divisor": a.divisor,
        "proper": _proper_json(a.certificate),
        "elliptic": is_elliptic(a),
    }
    if pres.rank == 1:
        dpd = dpd_presentation(pres)
        if isinstance(dpd, tuple):
            out["dpd"] = {"minus": io.qdivisor_json(dpd[0]), "plus": io.qdivisor_json(dpd[1])}
        else:
            out["dpd"] = io.qdivisor_json(dpd)
    if args.verify:
        out["verification"] = _report(verify_normalization(pres, a))
    if args.oracle:
        rep = verify_normalization(pres, a, generation_box=_generation_box(pres))
        out["oracle"] = _report(rep)
        if not rep.ok:
            raise OracleMismatch("normalization oracle disagrees: " + "; ".join(rep.lines()))
    return out


def task_closure(problem, args):
    a = _ambient(problem)
    ideal = _ideal(problem, a)
    rees = ideal_closure(ideal)
    out = {"newton": rees.newton, "rees_cone": rees.rees_cone, "rees_divisor": rees.rees_divisor}
    if a.curve == AFFINE:
        out["closure_generators"] = closure_generators(rees)
    if args.verify:
        out["verification"] = _report(verify_correspondence(rees, a))
    if args.oracle:
        same = ideal_closure(ideal, method="rees").rees_divisor == rees.rees_divisor
        out["oracle"] = {"rees-normalization-agrees": same}
        if not same:
            raise OracleMismatch("closure via the Rees algebra normalization differs")
    return out


def task_rees_cone(problem, args):
    a = _ambient(problem)
    ideal = _ideal(problem, a)
    rees = ideal_closure(ideal)
    return {"newton": rees.newton, "rees_cone": rees.rees_cone, "rees_cone_dual": rees.rees_cone.dual()}


def task_normality(problem, args):
    a = _ambient(problem)
    ideal = _ideal(problem, a)
    res = normality_certificate(ideal, dim_bound=problem.dim_bound)
    points = []
    for z, pt, verdict in res.certificates:
        entry = {"point": z, "p_tilde": pt.polyhedron, "normal": verdict.normal, "witness": None}
        if verdict.witness is not None:
            entry["witness"] = {"m": list(verdict.witness[0]), "e": verdict.witness[1]}
        points.append(entry)
    out = {"status": res.status, "points": points}
    if problem.power_e:
        powers = []
        for e in range(1, problem.power_e + 1):
            cmp = power_closure_equal(ideal, e)
            w = None
            if cmp.witness is not None:
                m, z, i, have = cmp.witness
                w = {"m": list(m), "point": z, "closure_order": i, "power_order": have}
            powers.append({"e": e, "equal": cmp.equal, "witness": w})
        out["powers"] = powers
    rrv = None
    if is_polynomial_ambient(a):
        rrv = rrv_check(ideal)
        w = None
        if rrv.witness is not None:
            e, m, z, i, have = rrv.witness
            w = {"e": e, "m": list(m), "point": z, "closure_order": i, "power_order": have}
        out["rrv"] = {"normal": rrv.normal, "checked": list(rrv.checked), "witness": w}
    if args.oracle:
        checks = {}
        for z, pt, verdict in res.certificates:
            if verdict.witness is not None:
                m, e = verdict.witness
                checks[f"witness-at-{z}"] = not efold_sum_membership(pt.polyhedron, e, m)
        if rrv is not None and rrv.witness is not None:
            e, m = rrv.witness[0], rrv.witness[1]
            power = power_piece_generator(ideal, m, e)
            closure = closure_piece_generator(ideal_closure(ideal), m, e)
            checks["rrv-witness"] = power != closure
        out["oracle"] = checks
        if not all(checks.values()):
            raise OracleMismatch("a normality witness was not confirmed by brute force")
    return out


def task_sections(problem, args):
    a = _ambient(problem)
    if problem.weight is None:
        raise io.ParseError("options.weight: required for the sections task")
    m = problem.weight
    value = a.divisor.evaluate(m)
    piece = graded_piece(a, m)
    out = {
        "weight": list(m),
        "evaluation": io.qdivisor_json(value),
        "round_down": io.qdivisor_json(value.floor()),
        "sections": io.section_json(piece) if not piece.is_zero() else {"dimension": 0, "basis": []},
    }
    return out


def task_check_proper(problem, args):
    d = problem.divisor()
    if d is None:
        raise io.ParseError("divisor/sigma: required for check-proper")
    cert = is_proper(d)
    out = _proper_json(cert)
    out["tail_cone_zero"] = d.sigma.is_zero()
    return out


def task_oracle(problem, args):
    """Independent cross-checks on the problem plus a seeded random battery."""
    from .lattice import hilbert_basis, lattice_points
    from .polyhedral import SigmaPolyhedron

    checks = {}
    if problem.generators:
        pres = _presentation(problem)
        a = normalize(pres)
        rep = verify_normalization(pres, a, generation_box=_generation_box(pres))
        for name, (ok, _) in rep.checks.items():
            checks[f"normalize:{name}"] = ok
    if problem.ideal_generators:
        a = _ambient(problem)
        ideal = _ideal(problem, a)
        rees = ideal_closure(ideal)
        checks["closure:rees-normalization-agrees"] = ideal_closure(ideal, method="rees").rees_divisor == rees.rees_divisor
        for name, (ok, _) in verify_correspondence(rees, a).checks.items():
            checks[f"closure:{name}"] = ok
    rng = random.Random(args.seed)
    ok = True
    for _ in range(20):
        dim = rng.randint(1, 3)
        rays = [tuple(rng.randint(-1, 3) for _ in range(dim)) for _ in range(rng.randint(1, 4))]
        cone = Cone.from_rays(rays, dim=dim)
        if cone != Cone.from_inequalities(cone.facets, cone.equations, dim=dim) or cone.dual().dual() != cone:
            ok = False
        if cone.is_pointed() and cone.is_full_dimensional():
            hb = set(hilbert_basis(cone).elements)
            box = (tuple(-4 for _ in range(dim)), tuple(4 for _ in range(dim)))
            pts = [p for p in lattice_points(SigmaPolyhedron.from_cone(cone), box) if any(p)]
            small = [p for p in pts if max(abs(x) for x in p) <= 2]
            for p in small:
                irreducible = not any(cone.contains(tuple(x - y for x, y in zip(p, h))) for h in pts if h != p)
                if irreducible != (p in hb):
                    ok = False
    checks["random:cones-and-hilbert-bases"] = ok
    out = {"seed": args.seed, "checks": checks}
    if not all(checks.values()):
        raise OracleMismatch("oracle checks failed: " + ", ".join(k for k, v in checks.items() if not v))
    return out


HANDLERS = {
    "normalize": task_normalize,
    "closure": task_closure,
    "rees-cone": task_rees_cone,
    "normality": task_normality,
    "sections": task_sections,
    "check-proper": task_check_proper,
    "oracle": task_oracle,
}


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "(" + ", ".join(str(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def build_parser():
    p = argparse.ArgumentParser(prog="tvarkit", description="Polyhedral divisors on the line: normalization, "
                                "integral closure and normality of homogeneous ideals.")
    p.add_argument("task", choices=TASKS)
    p.add_argument("-i", "--input", required=True, help="problem file (JSON)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--verify", action="store_true", help="attach verification reports")
    p.add_argument("--oracle", action="store_true", help="cross-check with independent brute force")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return p


def run(args):
    """Return (exit status, result object)."""
    result = {"version": io.FORMAT_VERSION, "task": args.task}
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        result.update(status="error", error={"code": "io-error", "message": str(exc)})
        return 2, result
    try:
        problem = io.load_problem(text)
        if problem.task is not None and problem.task != args.task:
            raise io.ParseError(f"task: file says {problem.task!r} but {args.task!r} was requested")
        payload = HANDLERS[args.task](problem, args)
        result.update(status="ok", payload=io.to_jsonable(payload))
        return 0, result
    except io.ParseError as exc:
        result.update(status="error", error={"code": exc.code, "message": str(exc)})
        return 2, result
    except (TvarkitError, ValueError) as exc:
        code = getattr(exc, "code", "domain-error")
        result.update(status="error", error={"code": code, "message": str(exc)})
        return 1, result


def main(argv=None):
    args = build_parser().parse_args(argv)
    status, result = run(args)
    text = io.dumps(result) if args.format == "json" else render_text(io.to_jsonable(result)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status:
        print(f"tvarkit: {result['error']['code']}: {result['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
