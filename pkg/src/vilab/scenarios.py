"""Canned scenarios reproducing the worked examples, and the report format.

A scenario fixes a ring, a group and a generator source, then runs a list of
queries.  Each query carries the expected outcome and a provenance tag:
PAPER (stated in the source), DERIVED (computed by an independent route and
frozen here) or TRIVIAL.  Reports are deterministic: timing is only included
on request.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .errors import CapExceeded, DimensionError
from .filtration import GLWeight, check_hull_coverage, phi_prime
from .groups import (
    BlockUnipotent,
    Diagonal,
    GroupSpec,
    Rooted,
    Torsion,
    bilinear,
    classical_generators,
    invariant_monomials,
    is_invariant,
    minimal_monomial_generators,
)
from .identities import cauchy_binet, inner_product_rule
from .matrix_ring import RingCtx, delta, g_minor, x_minor
from .poly import from_monomial, gv, mono_degree, parse_poly
from .polarization import delta_power_level, is_member, p_root_level, polarized_algebra

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"


@dataclass
class Query:
    op: str
    label: str
    args: dict
    expected: object
    provenance: str


@dataclass
class Scenario:
    name: str
    ring: RingCtx
    group: GroupSpec
    generators: Callable[[], list]  # computed lazily, over M_{n,n}
    queries: list = dc_field(default_factory=list)
    source: str = ""

    def validate(self) -> None:
        if self.group.n != self.ring.n:
            raise DimensionError(f"group acts on n={self.group.n}, ring has n={self.ring.n}")


@dataclass
class Record:
    index: int
    query: str
    op: str
    verdict: object
    expected: object
    provenance: str
    status: str
    certificate: object = None
    elapsed: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "index": self.index,
            "query": self.query,
            "op": self.op,
            "verdict": self.verdict,
            "expected": self.expected,
            "provenance": self.provenance,
            "status": self.status,
            "certificate": self.certificate,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


@dataclass
class Report:
    scenario: str
    ring: str
    group: dict
    records: list

    @property
    def status(self) -> str:
        states = {r.status for r in self.records}
        if FAIL in states:
            return FAIL
        if INDETERMINATE in states:
            return INDETERMINATE
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def summary(self) -> dict:
        counts = {s: sum(r.status == s for r in self.records) for s in (PASS, FAIL, INDETERMINATE)}
        return {"status": self.status, **counts}

    def to_json(self, timing: bool = False) -> dict:
        return {
            "scenario": self.scenario,
            "ring": self.ring,
            "group": self.group,
            "records": [r.to_json(timing) for r in self.records],
            "summary": self.summary(),
        }

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def text(self) -> str:
        lines = [f"scenario {self.scenario}  ring {self.ring}"]
        for r in self.records:
            lines.append(f"  [{r.status:>13}] {r.query}: {r.verdict} (expected {r.expected}, {r.provenance})")
        s = self.summary()
        lines.append(f"{s['status'].upper()}  pass={s[PASS]} fail={s[FAIL]} indeterminate={s[INDETERMINATE]}")
        return "\n".join(lines)


# -- query execution -----------------------------------------------------------------


def _run_query(q: Query, s: Scenario, gens: list, caps: dict) -> tuple[object, object]:
    """Returns (verdict, certificate); the verdict is INDETERMINATE when a cap was hit."""
    ctx, a = s.ring, q.args
    if q.op == "generators":
        return len(gens), {"generators": [str(g) for g in gens]}
    if q.op == "invariant":
        res = is_invariant(a["f"], s.group, ctx)
        return res.invariant, res.witness or None
    if q.op == "member":
        cert = is_member(a["f"], gens, ctx, **caps)
        if cert.verdict == "indeterminate":
            return INDETERMINATE, cert.to_json()
        ok = cert.verdict != "member" or cert.verify(a["f"])
        return (cert.verdict if ok else "bad-certificate"), cert.to_json()
    if q.op == "proot":
        res = p_root_level(a["f"], gens, ctx, a.get("m_max", 4), **caps)
        if res.status == "indeterminate":
            return INDETERMINATE, res.to_json()
        out = res.to_json()
        if res.found:
            out["reexpands"] = res.verify(a["f"])
            return (res.level if out["reexpands"] else "bad-certificate"), out
        return res.status, out
    if q.op == "deltapow":
        res = delta_power_level(a["f"], gens, ctx, a.get("e_max", 6), **caps)
        if res.status == "indeterminate":
            return INDETERMINATE, res.to_json()
        return (res.level if res.found else res.status), res.to_json()
    if q.op == "dims":
        D = a["degree"]
        inv = sum(1 for m in invariant_monomials(s.group, ctx, D) if mono_degree(m) == D)
        pol = polarized_algebra(gens, ctx, **caps).component(D).rank
        return inv == pol, {"invariants": inv, "polarized": pol, "degree": D}
    if q.op == "identity":
        lhs, rhs = a["sides"]()
        return lhs == rhs, {"terms": len(lhs.terms), "difference": str(lhs - rhs)}
    if q.op == "phiprime":
        got = phi_prime(a["f"], ctx)
        return got.as_poly() == a["target"], {"phiPrime": got.to_json(), "target": str(a["target"])}
    if q.op == "coverage":
        rep = check_hull_coverage(a["pairs"], a.get("alg_gens", gens), ctx, **caps)
        if any(r.covered is None for r in rep.results):
            return INDETERMINATE, rep.to_json()
        return rep.all_covered, rep.to_json()
    raise ValueError(f"unknown query op {q.op!r}")


def run_scenario(s: Scenario, caps: dict | None = None) -> Report:
    caps = dict(caps or {})
    s.validate()
    gens = s.generators()
    records = []
    for i, q in enumerate(s.queries):
        t0 = time.perf_counter()
        try:
            verdict, cert = _run_query(q, s, gens, caps)
            if verdict == INDETERMINATE:
                status = INDETERMINATE
            else:
                status = PASS if verdict == q.expected else FAIL
        except CapExceeded as exc:
            verdict, cert, status = INDETERMINATE, {"reason": str(exc)}, INDETERMINATE
        records.append(Record(i, q.label, q.op, verdict, q.expected, q.provenance, status, cert,
                              time.perf_counter() - t0))
    return Report(s.name, str(s.ring), s.group.to_json(), records)


# -- bundled scenarios ---------------------------------------------------------------


def _monomial_gens(H, ctx: RingCtx, max_deg: int) -> Callable[[], list]:
    return lambda: [from_monomial(ctx.p, m) for m in minimal_monomial_generators(H, ctx.square(), max_deg)]


def _torus(p: int) -> Scenario:
    """Diagonal torus (a^-1, a^(2p)) on k^2 with d = 2p; F = x_1 ... x_2p y_2p."""
    d = 2 * p
    ctx = RingCtx(2, d, p)
    H = Diagonal(((-1,), (d,)), (), 2)
    F = parse_poly("*".join(f"x(1,{j})" for j in range(1, d + 1)) + f"*x(2,{d})", p)
    s = Scenario(f"torus-p{p}", ctx, H, _monomial_gens(H, ctx, d + 1 if p > 2 else 8),
                 source="torus counterexample")
    s.queries = [
        Query("generators", "minimal monomial generators on M_{2,2}", {}, 2 * (d + 1),
              "PAPER" if p == 2 else "DERIVED"),
        Query("invariant", "F is invariant", {"f": F}, True, "PAPER" if p == 2 else "DERIVED"),
        Query("member", f"F nonmember in degree {d + 1}", {"f": F}, "nonmember",
              "PAPER" if p == 2 else "DERIVED"),
    ]
    if p == 2:
        gen_image = parse_poly("x(1,1)^4*x(2,1)", p)
        s.queries += [
            Query("member", "j(x1^4 y1) member", {"f": gen_image}, "member", "TRIVIAL"),
            Query("proot", "p-root level of F", {"f": F}, 1, "DERIVED"),
        ]
    return s


def _mu3_n2() -> Scenario:
    ctx = RingCtx(2, 3, 2)
    H = Diagonal((), (Torsion(3, (1, 1)),), 2)
    f = parse_poly("x(1,1)*x(1,2)*x(1,3)", 2)
    s = Scenario("mu3-char2-n2", ctx, H, _monomial_gens(H, ctx, 6), source="mu_3 scalars, n=2")
    s.queries = [
        Query("generators", "invariants of M_{2,2} generated in degree 3", {}, 20, "PAPER"),
        Query("invariant", "x1 x2 x3 is invariant", {"f": f}, True, "PAPER"),
        Query("member", "x1 x2 x3 nonmember", {"f": f}, "nonmember", "PAPER"),
        Query("proot", "p-root level of x1 x2 x3", {"f": f}, 1, "DERIVED"),
    ]
    return s


def _mu3_n3() -> Scenario:
    ctx = RingCtx(3, 4, 2)
    H = Diagonal((), (Torsion(3, (1, 1, 1)),), 3)
    s = Scenario("mu3-char2-n3", ctx, H, _monomial_gens(H, ctx, 3), source="mu_3 scalars, n=3")
    s.queries = [
        Query("generators", "degree-3 monomials on M_{3,3}", {}, 165, "DERIVED"),
        Query("dims", "graded dimensions agree in degree 3", {"degree": 3}, True, "PAPER"),
        Query("dims", "graded dimensions agree in degree 6", {"degree": 6}, True, "PAPER"),
    ]
    return s


def _col_sets(ctx: RingCtx, r: int):
    return list(itertools.combinations(range(1, ctx.d + 1), r))


def _minor_queries(ctx: RingCtx) -> list:
    """Invariance, transformation rule, Phi' shape and Delta-power level for every n x n minor."""
    rows = tuple(range(1, ctx.n + 1))
    dl = delta(ctx)
    out = []
    for J in _col_sets(ctx, ctx.n):
        f = x_minor(rows, J, ctx.p)
        tag = "".join(map(str, J))
        out += [
            Query("invariant", f"minor (1..n|{tag}) invariant", {"f": f}, True, "PAPER"),
            Query("identity", f"transformation rule for (1..n|{tag})",
                  {"sides": lambda J=J: cauchy_binet(J, ctx)}, True, "PAPER"),
            Query("phiprime", f"phi'(1..n|{tag}) = Delta (x) (1..n|{tag})_g",
                  {"f": f, "target": dl * g_minor(rows, J, ctx.p)}, True, "PAPER"),
            Query("deltapow", f"Delta-power level of (1..n|{tag})", {"f": f}, 0, "PAPER"),
        ]
    return out


def _inner_queries(kind: str, ctx: RingCtx) -> list:
    out = []
    pairs = [(i, j) for i in range(1, ctx.d + 1) for j in range(i if kind == "SOsplit" else i + 1, ctx.d + 1)]
    d1 = bilinear(kind, 1, 1, ctx)
    for i, j in pairs:
        f = bilinear(kind, i, j, ctx)
        out += [
            Query("invariant", f"<x{i},x{j}> invariant", {"f": f}, True, "PAPER"),
            Query("identity", f"transformation rule for <x{i},x{j}>",
                  {"sides": lambda i=i, j=j: inner_product_rule(kind, i, j, ctx)}, True, "PAPER"),
            Query("member", f"<x{i},x{j}> member", {"f": f}, "member", "PAPER"),
        ]
        if kind == "SOsplit":
            target = d1 * gv(ctx.p, 1, i) * gv(ctx.p, 1, j)
            out.append(Query("phiprime", f"phi'<x{i},x{j}> = D_1 (x) (1|{i})_g (1|{j})_g",
                             {"f": f, "target": target}, True, "PAPER"))
    return out


def _classical(kind: str) -> Scenario:
    name = {"SL": "classical-sl", "SOsplit": "classical-so", "Spsplit": "classical-sp"}[kind]
    ctx = RingCtx(2, 3, 5)
    H = Rooted(kind, 2)
    s = Scenario(name, ctx, H, lambda: classical_generators(kind, ctx.square()), source=f"{kind} invariants")
    dl = delta(ctx)
    if kind == "SL":
        s.queries = _minor_queries(ctx)
        pairs = [(dl, GLWeight((1, 1, 0)))]
    elif kind == "SOsplit":
        s.queries = _minor_queries(ctx) + _inner_queries(kind, ctx)
        pairs = [(bilinear(kind, 1, 1, ctx), GLWeight((2, 0, 0))), (dl, GLWeight((1, 1, 0)))]
    else:
        s.queries = _inner_queries(kind, ctx)
        pairs = [(bilinear(kind, 1, 2, ctx), GLWeight((1, 1, 0)))]
    s.queries.append(Query("coverage", "U-invariant generators covered", {"pairs": pairs}, True, "DERIVED"))
    return s


def _block_unipotent() -> Scenario:
    """Blocks (2,1): rows 1 and 2 may absorb multiples of row 3."""
    ctx = RingCtx(3, 4, 0)
    H = BlockUnipotent((2, 1))
    stable = [(3,), (1, 3), (2, 3), (1, 2, 3)]
    s = Scenario("block-unipotent", ctx, H,
                 lambda: [x_minor(R, tuple(range(1, len(R) + 1)), 0) for R in stable],
                 source="block unipotent")
    for r in range(1, 4):
        for R in itertools.combinations(range(1, 4), r):
            f = x_minor(R, tuple(range(1, r + 1)), 0)
            tag = "".join(map(str, R))
            s.queries.append(Query("invariant", f"left-initial minor ({tag}|1..{r}) invariant",
                                   {"f": f}, R in stable, "DERIVED"))
    for R in stable:
        for J in _col_sets(ctx, len(R)):
            f = x_minor(R, J, 0)
            tag = "".join(map(str, R)) + "|" + "".join(map(str, J))
            s.queries.append(Query("member", f"minor ({tag}) member", {"f": f}, "member", "DERIVED"))
    return s


SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "torus-p2": lambda: _torus(2),
    "torus-p3": lambda: _torus(3),
    "mu3-char2-n2": _mu3_n2,
    "mu3-char2-n3": _mu3_n3,
    "classical-sl": lambda: _classical("SL"),
    "classical-so": lambda: _classical("SOsplit"),
    "classical-sp": lambda: _classical("Spsplit"),
    "block-unipotent": _block_unipotent,
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None


# -- input parsing -------------------------------------------------------------------


def parse_inputs(poly_text: str | None, group_json: str | dict | None, ring_spec: str):
    """Parse and cross-check (poly, group, ring); either of the first two may be None."""
    ctx = RingCtx.parse(ring_spec)
    f = parse_poly(poly_text, ctx.p) if poly_text is not None else None
    if f is not None:
        ctx.check_poly(f)
    H = GroupSpec.from_json(group_json) if group_json is not None else None
    if H is not None and H.n != ctx.n:
        raise DimensionError(f"group acts on n={H.n}, ring has n={ctx.n}")
    return f, H, ctx
