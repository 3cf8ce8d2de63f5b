"""Batch entry point: ``valtree <command> --scenario <file|name> --out <dir>``.

Every command writes ``report.json`` into the output directory; ``profile``
also writes ``profile.csv``.  Exit status: 0 on success, 2 when a word ball
exceeds the scenario's element cap, 3 when the scenario does not parse or
validate, 1 for any other library error (the report then carries the message).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .alpsh import integrality_filter, isotropy_certificate
from .errors import BallTooLarge, ParseError, ScenarioError, ValtreeError
from .exactmat import det
from .probe import displacement_profile, load_scenario, stabilizer_census, ultrametric_cover
from .tracerep import alpha, burnside_basis
from .unipotent import composition_rank_bounds, entry_span_lower, layer_decompose
from .valfield import (
    INF,
    format_element,
    normalize,
    parse_element,
    uniformizer,
    valuate,
    valuation_from_dict,
)

COMMANDS = ("valuate", "ball", "profile", "census", "cover", "rank", "trace-rep", "alperin-shalen")


def _val(k):
    return "inf" if k == INF else int(k)


def _elements(sc):
    try:
        return [parse_element(x, sc.field) for x in sc.raw.get("elements", [])]
    except ParseError as exc:
        raise ScenarioError(str(exc)) from exc


def cmd_valuate(sc, args, out):
    rows = []
    for x in _elements(sc):
        rows.append({
            "element": format_element(normalize(x)),
            "valuations": {json.dumps(v.describe(), sort_keys=True): _val(valuate(v, x)) for v in sc.valuations},
        })
    return {
        "uniformizers": [
            {"valuation": v.describe(), "uniformizer": format_element(uniformizer(v))} for v in sc.valuations
        ],
        "elements": rows,
    }


def cmd_ball(sc, args, out):
    R = args.radius if args.radius is not None else sc.r_max
    ball = sc.ball(R)
    return {
        "radius": R,
        "sizes": {str(r): ball.count(r) for r in range(R + 1)},
        "elements": [
            {"matrix": g.to_literals(), "length": ball.lengths[g],
             "word": list(ball.words[g])}
            for g in ball.elements()
        ],
    }


def cmd_profile(sc, args, out):
    prof = displacement_profile(sc, workers=args.workers)
    (out / "profile.csv").write_text(prof.to_csv())
    return prof.to_json()


def cmd_census(sc, args, out):
    R = args.radius if args.radius is not None else int(sc.raw.get("census_radius", sc.r_max))
    members = stabilizer_census(sc, R)
    return {
        "radius": R,
        "count": len(members),
        "stabilizers": [g.to_literals() for g in members],
        "all_certified": all(isotropy_certificate(g, sc.valuations) for g in members),
    }


def cmd_cover(sc, args, out):
    spec = sc.raw.get("cover")
    if not spec:
        raise ScenarioError("scenario has no 'cover' section")
    try:
        points = [parse_element(x, sc.field) for x in spec["points"]]
        d = Fraction(str(spec["scale"]))
        v = valuation_from_dict(spec["valuation"]) if "valuation" in spec else sc.valuations[0]
    except (KeyError, IndexError, ValueError, ParseError) as exc:
        raise ScenarioError(f"invalid cover section: {exc}") from exc
    cert = ultrametric_cover(points, v, d)
    return {
        "valuation": v.describe(),
        "scale": str(d),
        "parts": [[format_element(x) for x in part] for part in cert.parts],
        "diameter_ok": cert.diameter_ok,
        "separation_ok": cert.separation_ok,
        "multiplicity_ok": cert.multiplicity_ok,
    }


def cmd_rank(sc, args, out):
    L = int(sc.raw.get("rank_word_length", 4))
    bounds = composition_rank_bounds(sc.gens, L, n=sc.n)
    ball = sc.ball(L)
    layers = []
    for layer in layer_decompose(sc.n):
        lo, up = bounds.per_layer[layer.k]
        span = entry_span_lower(sc.gens, layer.k, L, ball=ball, n=sc.n)
        layers.append({
            "layer": layer.k,
            "positions": [list(p) for p in layer.positions],
            "residual": layer.residual,
            "lower": lo,
            "upper": up,
            "basis_printed": [[format_element(x) for x in tup] for tup in span.tuples],
        })
    return {
        "word_length": L,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "certified": bounds.certified,
        "saturation_length": bounds.saturation_length,
        "layers": layers,
    }


def cmd_trace_rep(sc, args, out):
    tb = burnside_basis(sc.gens, int(sc.raw.get("max_word_len", 4)), n=sc.n)
    labels = sc.gens.labels
    return {
        "basis_words": [list(w) for w in tb.words],
        "basis": [g.to_literals() for g in tb.basis],
        "gram_determinant": format_element(det(tb.gram)),
        "alpha": {lab: alpha(g, tb).to_literals() for g, lab in zip(sc.gens.gens, labels)},
    }


def cmd_alperin_shalen(sc, args, out):
    return {
        "ring": sc.ring.describe() if sc.ring is not None else None,
        "valuations": [v.describe() for v in sc.valuations],
        "elements": [
            {"element": format_element(x), "integral": integrality_filter(x, sc.valuations)}
            for x in _elements(sc)
        ],
        "generators": [
            {"label": lab, "matrix": g.to_literals(), "isotropy_certificate": isotropy_certificate(g, sc.valuations)}
            for g, lab in zip(sc.gens.gens, sc.gens.labels)
        ],
    }


HANDLERS = {
    "valuate": cmd_valuate,
    "ball": cmd_ball,
    "profile": cmd_profile,
    "census": cmd_census,
    "cover": cmd_cover,
    "rank": cmd_rank,
    "trace-rep": cmd_trace_rep,
    "alperin-shalen": cmd_alperin_shalen,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="valtree", description="Exact valuation and tree-action diagnostics.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--scenario", required=True, help="scenario JSON file or bundled scenario name")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--workers", type=int, default=1, help="worker processes for profile")
    ap.add_argument("--radius", type=int, default=None, help="override the radius for ball/census")
    return ap


def _write(out: Path, report: dict):
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report = {"command": args.command, "scenario": str(args.scenario)}
    try:
        sc = load_scenario(args.scenario)
        report["scenario"] = sc.name
        report["result"] = HANDLERS[args.command](sc, args, out)
        code = 0
    except BallTooLarge as exc:
        report["error"] = {"kind": "BallTooLarge", "message": str(exc)}
        code = 2
    except (ScenarioError, ParseError) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = 3
    except ValtreeError as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = 1
    _write(out, report)
    if code:
        print(f"valtree: {report['error']['kind']}: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
