"""Scenario-driven properness diagnostics for groups acting on products of trees.

A scenario fixes a finite generating set, the valuations whose buildings the
group acts on (diagonally, through the base vertices), an optional
symmetric-space proxy, and the radii/thresholds to sweep.  The profile counts
word-ball elements that move every base vertex by at most C; for a proper
action these counts stop growing once the ball has swallowed the finite set.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .alpsh import isotropy_certificate, ring_from_dict, synthesize_valuations
from .bttree import DEFAULT_T0, base_vertex, displacement_report
from .errors import ParseError, ScenarioError, ValtreeError
from .exactmat import DEFAULT_BALL_CAP, GeneratorSet, Mat, inverse, is_special_linear, word_ball
from .valfield import (
    INF,
    OrderAtInfinity,
    OrderAtIrreducible,
    OrderAtZero,
    RatFunc,
    field_from_spec,
    parse_element,
    valuate,
    valuation_from_dict,
)

BUNDLED = ("sl2-z-half", "laurent-bad", "heisenberg", "sl2z-tracerep")


@dataclass
class GroupScenario:
    name: str
    field: object
    n: int
    gens: GeneratorSet
    valuations: list
    ring: object = None
    sym_enabled: bool = False
    sym_bound: Fraction | None = None
    t0: Fraction = DEFAULT_T0
    thresholds: list = field(default_factory=lambda: [Fraction(0)])
    r_min: int = 0
    r_max: int = 4
    element_cap: int = DEFAULT_BALL_CAP
    raw: dict = field(default_factory=dict, repr=False)

    def base_vertices(self):
        like = self.identity().like()
        return [base_vertex(self.n, v, like) for v in self.valuations]

    def identity(self):
        if self.gens.gens:
            return Mat.identity(self.n, self.gens.gens[0].like())
        return Mat.identity(self.n, RatFunc(1) if self.field == "Q(t)" else Fraction(1))

    def ball(self, radius=None):
        R = self.r_max if radius is None else radius
        return word_ball(self.gens, R, cap=self.element_cap, identity=self.identity())


def _parse_matrix(rows, fld, n):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ScenarioError(f"matrix literal must be {n}x{n}: {rows!r}")
    try:
        return Mat([[parse_element(x, fld) for x in r] for r in rows])
    except ParseError as exc:
        raise ScenarioError(str(exc)) from exc


def scenario_from_dict(d: dict) -> GroupScenario:
    try:
        name = d.get("name", "unnamed")
        fld = field_from_spec(d.get("field", "Q"))
        n = int(d["n"])
        mats = [_parse_matrix(g, fld, n) for g in d.get("generators", [])]
        for g in mats:
            if not is_special_linear(g):
                raise ScenarioError(f"generator {g.format()} is not in SL({n})")
        if "conjugator" in d:
            c = _parse_matrix(d["conjugator"], fld, n)
            ci = inverse(c)
            mats = [c * g * ci for g in mats]
        labels = d.get("labels") or [f"g{i}" for i in range(len(mats))]
        gens = GeneratorSet(mats, labels)
        ring = ring_from_dict(d["ring"]) if "ring" in d else None
        if "valuations" in d:
            vals = [valuation_from_dict(v) for v in d["valuations"]]
        elif ring is not None:
            vals = synthesize_valuations(ring)
        else:
            vals = []
        sym = d.get("sym_proxy", {}) or {}
        radii = d.get("radii", [0, 4])
        sc = GroupScenario(
            name=name,
            field=fld,
            n=n,
            gens=gens,
            valuations=vals,
            ring=ring,
            sym_enabled=bool(sym.get("enabled", False)),
            sym_bound=Fraction(str(sym["bound"])) if sym.get("bound") is not None else None,
            t0=Fraction(str(sym.get("t0", DEFAULT_T0))),
            thresholds=[Fraction(str(c)) for c in d.get("thresholds", [0])],
            r_min=int(radii[0]),
            r_max=int(radii[1]),
            element_cap=int(d.get("element_cap", DEFAULT_BALL_CAP)),
            raw=d,
        )
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError, ValtreeError) as exc:
        raise ScenarioError(f"invalid scenario: {exc}") from exc
    if sc.r_min < 0 or sc.r_max < sc.r_min:
        raise ScenarioError("radii must satisfy 0 <= R_min <= R_max")
    return sc


def load_scenario(path_or_name) -> GroupScenario:
    """Load a scenario from a JSON file, or one of the bundled scenarios by name."""
    p = Path(str(path_or_name))
    if p.exists():
        text = p.read_text()
    elif str(path_or_name) in BUNDLED:
        text = resources.files("valtree").joinpath("scenarios", f"{path_or_name}.json").read_text()
    else:
        raise ScenarioError(f"no scenario file {path_or_name!r}")
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
    return scenario_from_dict(d)


# -- displacement profile ---------------------------------------------------------

@dataclass
class ProfileRow:
    R: int
    C: Fraction
    count: int
    min_disp: int
    max_disp: int


@dataclass
class Profile:
    scenario: str
    rows: list
    ball_sizes: dict
    sym_column: str | None = None

    def counts(self, C):
        return {row.R: row.count for row in self.rows if row.C == C}

    def verdict(self, C) -> str:
        """'stable' iff the count is constant over the three largest radii (empirical only)."""
        counts = self.counts(C)
        top = [counts[R] for R in sorted(counts)[-3:]]
        return "stable" if len(top) == 3 and len(set(top)) == 1 else "growing"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["R", "C", "count", "min_disp", "max_disp"])
        for r in self.rows:
            w.writerow([r.R, str(r.C), r.count, r.min_disp, r.max_disp])
        return buf.getvalue()

    def to_json(self) -> dict:
        Cs = sorted({r.C for r in self.rows})
        return {
            "scenario": self.scenario,
            "sym_column": self.sym_column,
            "ball_sizes": {str(k): v for k, v in self.ball_sizes.items()},
            "rows": [
                {"R": r.R, "C": str(r.C), "count": r.count, "min_disp": r.min_disp, "max_disp": r.max_disp}
                for r in self.rows
            ],
            "verdicts": {str(C): self.verdict(C) for C in Cs},
        }


def _reports(elements, bases, sym, t0):
    return [displacement_report(g, bases, sym=sym, t0=t0) for g in elements]


def element_reports(sc: GroupScenario, elements, workers: int = 1):
    """Displacement reports in the order of ``elements``; identical for any worker count."""
    bases = sc.base_vertices()
    t0 = sc.t0 if sc.field == "Q(t)" else None
    if workers <= 1 or len(elements) < 2 * workers:
        return _reports(elements, bases, sc.sym_enabled, t0)
    size = -(-len(elements) // workers)
    chunks = [elements[i:i + size] for i in range(0, len(elements), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_reports, chunks, [bases] * len(chunks), [sc.sym_enabled] * len(chunks),
                         [t0] * len(chunks))
        return [r for part in parts for r in part]


def displacement_profile(sc: GroupScenario, workers: int = 1, ball=None) -> Profile:
    ball = ball or sc.ball()
    elements = ball.elements()
    lengths = [ball.lengths[g] for g in elements]
    reports = element_reports(sc, elements, workers)
    bound = sc.sym_bound if sc.sym_enabled else None
    rows = []
    sizes = {}
    for R in range(sc.r_min, sc.r_max + 1):
        inside = [rep for rep, k in zip(reports, lengths) if k <= R]
        sizes[R] = len(inside)
        disp = [max(rep.tree_displacements, default=0) for rep in inside]
        for C in sc.thresholds:
            count = sum(1 for rep in inside if rep.within(C, bound))
            rows.append(ProfileRow(R, C, count, min(disp), max(disp)))
    col = None
    if sc.sym_enabled:
        col = f"sym-proxy@{sc.t0}" if sc.field == "Q(t)" else "sym-proxy"
    return Profile(sc.name, rows, sizes, col)


def stabilizer_census(sc: GroupScenario, R: int, ball=None) -> list:
    """Word-ball elements fixing every configured base vertex, in canonical order.

    Each one is checked against the integral-characteristic certificate; a
    failure would contradict the theory and raises ``AssertionError``.
    """
    ball = ball or sc.ball(R)
    bases = sc.base_vertices()
    out = []
    for g in ball.elements(R):
        rep = displacement_report(g, bases)
        if all(d == 0 for d in rep.tree_displacements):
            if not isotropy_certificate(g, sc.valuations):
                raise AssertionError(f"stabilizer {g.format()} fails the isotropy certificate")
            out.append(g)
    return out


# -- ultrametric covers -------------------------------------------------------------

def ultrametric_distance(v, x, y) -> Fraction:
    """2^(-v(x - y)), and 0 for x == y."""
    k = valuate(v, x - y)
    if k == INF:
        return Fraction(0)
    return Fraction(2) ** (-k)


@dataclass
class CoverCertificate:
    parts: list
    scale: Fraction
    diameter_ok: bool
    separation_ok: bool
    multiplicity_ok: bool

    @property
    def ok(self):
        return self.diameter_ok and self.separation_ok and self.multiplicity_ok


def _coerce_point(x, v):
    if isinstance(v, (OrderAtZero, OrderAtInfinity, OrderAtIrreducible)) and not isinstance(x, RatFunc):
        return RatFunc(x)
    return x


def ultrametric_cover(points, v, d) -> CoverCertificate:
    """Partition points into closed d-balls and certify the asdim-0 cover conditions."""
    d = Fraction(d)
    if d <= 0:
        raise ValueError("scale must be positive")
    pts = [_coerce_point(x, v) for x in points]
    n = len(pts)
    dist = [[ultrametric_distance(v, pts[i], pts[j]) for j in range(n)] for i in range(n)]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] <= d:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    part_idx = sorted(groups.values())
    label = {i: k for k, grp in enumerate(part_idx) for i in grp}

    diameter_ok = all(dist[i][j] <= d for grp in part_idx for i in grp for j in grp)
    separation_ok = all(dist[i][j] > d for i in range(n) for j in range(n) if label[i] != label[j])
    multiplicity_ok = all(len({label[j] for j in range(n) if dist[i][j] <= d}) == 1 for i in range(n))
    parts = [[pts[i] for i in grp] for grp in part_idx]
    return CoverCertificate(parts, d, diameter_ok, separation_ok, multiplicity_ok)
