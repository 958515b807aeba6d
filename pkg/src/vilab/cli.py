"""Command-line entry point: ``vilab <command> ...``.

Exit codes: 0 pass, 1 fail, 2 indeterminate (a cap was hit), 3 input error.
Polynomial and group arguments accept either a file path or the literal text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CapExceeded, VilabError
from .filtration import GLWeight, check_hull_coverage, h_value, phi_prime
from .groups import (
    BlockUnipotent,
    Diagonal,
    Rooted,
    bilinear,
    classical_generators,
    gram_determinant,
    is_invariant,
    minimal_monomial_generators,
)
from .matrix_ring import RingCtx, delta, u_invariant_generators
from .poly import Poly, from_monomial, parse_poly
from .polarization import (
    MAX_PRODUCTS,
    MAX_TERMS,
    delta_power_level,
    is_member,
    module_span,
    p_root_level,
)
from .scenarios import SCENARIOS, get_scenario, parse_inputs, run_scenario

EXIT_PASS, EXIT_FAIL, EXIT_INDETERMINATE, EXIT_INPUT = 0, 1, 2, 3


def _text_arg(value: str) -> str:
    if os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def _poly_lines(text: str, p: int) -> list[Poly]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_poly(line, p))
    return out


def _emit(obj, args) -> None:
    if getattr(args, "emit", "json") == "text" and isinstance(obj, dict):
        for k, v in obj.items():
            print(f"{k}: {v}")
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _caps(args) -> dict:
    return {"max_products": args.max_products, "max_terms": args.max_terms}


def _default_gens(H, ctx: RingCtx, args, degree_hint: int) -> list[Poly]:
    """Generators of the invariants on M_{n,n} when none are given explicitly.

    Diagonal groups are sieved up to --gen-deg, by default the degree of the
    query; higher-degree generators are then not seen.
    """
    sq = ctx.square()
    if isinstance(H, Diagonal):
        max_deg = args.gen_deg if args.gen_deg is not None else max(degree_hint, 1)
        return [from_monomial(ctx.p, m) for m in minimal_monomial_generators(H, sq, max_deg)]
    if isinstance(H, Rooted) and H.kind != "GL":
        return classical_generators(H.kind, sq)
    if isinstance(H, (Rooted, BlockUnipotent)):
        return [f for f in u_invariant_generators(sq) if is_invariant(f, H, sq)]
    raise VilabError("no default generator family for this group; pass --gens")


def _load(args, need_poly: bool = True, want_gens: bool = True):
    poly_text = _text_arg(args.poly) if need_poly else None
    group = _text_arg(args.group) if getattr(args, "group", None) else None
    f, H, ctx = parse_inputs(poly_text, group, args.ring)
    if not want_gens:
        gens = None
    elif getattr(args, "gens", None):
        gens = _poly_lines(_text_arg(args.gens), ctx.p)
    elif H is not None:
        gens = _default_gens(H, ctx, args, f.degree() if f else 1)
    else:
        gens = None
    return f, H, ctx, gens


def _require_gens(gens):
    if gens is None:
        raise VilabError("need --group or --gens")
    return gens


# -- commands ------------------------------------------------------------------------


def cmd_invariants(args) -> int:
    _, H, ctx, _ = _load(args, need_poly=False, want_gens=False)
    gens = minimal_monomial_generators(H, ctx, args.max_deg)
    _emit({"ring": str(ctx), "maxDeg": args.max_deg, "count": len(gens),
           "generators": [str(from_monomial(ctx.p, m)) for m in gens]}, args)
    return EXIT_PASS


def cmd_member(args) -> int:
    f, H, ctx, gens = _load(args)
    cert = is_member(f, _require_gens(gens), ctx, **_caps(args))
    out = cert.to_json()
    if cert.verdict == "member":
        out["reexpands"] = cert.verify(f)
    _emit(out, args)
    return {"member": EXIT_PASS, "nonmember": EXIT_FAIL}.get(cert.verdict, EXIT_INDETERMINATE)


def _level_exit(res) -> int:
    return {"found": EXIT_PASS, "notFound": EXIT_FAIL}.get(res.status, EXIT_INDETERMINATE)


def cmd_proot(args) -> int:
    f, H, ctx, gens = _load(args)
    res = p_root_level(f, _require_gens(gens), ctx, args.m_max, **_caps(args))
    out = res.to_json()
    if res.found:
        out["reexpands"] = res.verify(f)
    _emit(out, args)
    return _level_exit(res)


def cmd_deltapow(args) -> int:
    f, H, ctx, gens = _load(args)
    res = delta_power_level(f, _require_gens(gens), ctx, args.e_max, **_caps(args))
    _emit(res.to_json(), args)
    return _level_exit(res)


def cmd_span(args) -> int:
    f, _, ctx, _ = _load(args)
    out = {}
    for deg, part in sorted(f.homogeneous_parts().items()):
        span = module_span(part, ctx)
        out[str(deg)] = {"dimension": span.dimension, "basis": [str(r) for r in span.rows]}
    _emit({"ring": str(ctx), "components": out}, args)
    return EXIT_PASS


def cmd_hweight(args) -> int:
    w = GLWeight.parse(args.weight)
    _emit({"weight": w.to_json(), "h": h_value(w)}, args)
    return EXIT_PASS


def cmd_phiprime(args) -> int:
    f, _, ctx, _ = _load(args)
    hull = phi_prime(f, ctx)
    _emit({"ring": str(ctx), "phiPrime": hull.to_json(), "text": str(hull)}, args)
    return EXIT_PASS


def _default_pairs(H, ctx: RingCtx) -> list:
    if isinstance(H, Rooted) and H.kind in ("SL", "SOsplit"):
        pairs = []
        if H.kind == "SOsplit":
            for r in range(1, ctx.n):
                idx = tuple(range(1, r + 1))
                w = [2 if i < r else 0 for i in range(ctx.d)]
                pairs.append((gram_determinant("SOsplit", idx, idx, ctx), GLWeight(tuple(w))))
        pairs.append((delta(ctx), GLWeight(tuple(1 if i < ctx.n else 0 for i in range(ctx.d)))))
        return pairs
    if isinstance(H, Rooted) and H.kind == "Spsplit" and ctx.n == 2:
        return [(bilinear("Spsplit", 1, 2, ctx), GLWeight((1, 1) + (0,) * (ctx.d - 2)))]
    raise VilabError("no default U-invariant pairs for this group; pass --pairs")


def cmd_coverage(args) -> int:
    _, H, ctx, gens = _load(args, need_poly=False)
    if args.pairs:
        raw = json.loads(_text_arg(args.pairs))
        pairs = [(parse_poly(item["poly"], ctx.p), GLWeight(tuple(item["weight"]))) for item in raw]
    else:
        pairs = _default_pairs(H, ctx)
    rep = check_hull_coverage(pairs, _require_gens(gens), ctx, args.degree_cap, **_caps(args))
    _emit(rep.to_json(), args)
    if any(r.covered is None for r in rep.results):
        return EXIT_INDETERMINATE
    return EXIT_PASS if rep.all_covered else EXIT_FAIL


def cmd_scenario(args) -> int:
    report = run_scenario(get_scenario(args.name), _caps(args))
    if args.emit == "text":
        print(report.text())
    else:
        print(report.dumps(timing=args.timing))
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(report.status, EXIT_INDETERMINATE)


# -- parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors, not "indeterminate"
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vilab", description="Exact workbench for vector invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, poly=True, group=True, gens=False):
        p.add_argument("--ring", required=True, help="ring spec NxD@pP, e.g. 2x4@p2")
        if poly:
            p.add_argument("--poly", required=True, help="polynomial file or literal")
        if group:
            p.add_argument("--group", help="group JSON file or literal")
        if gens:
            p.add_argument("--gens", help="generator file (one polynomial per line) or literal")
            p.add_argument("--gen-deg", type=int, help="sieve degree for diagonal-group generators")
        p.add_argument("--emit", choices=("json", "text"), default="json")
        p.add_argument("--max-products", type=int, default=MAX_PRODUCTS)
        p.add_argument("--max-terms", type=int, default=MAX_TERMS)

    p = sub.add_parser("invariants", help="minimal invariant monomials of a diagonal group")
    common(p, poly=False)
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("member", help="membership in the polarized algebra")
    common(p, gens=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("proot", help="smallest m with f^(p^m) in the polarized algebra")
    common(p, gens=True)
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(func=cmd_proot)

    p = sub.add_parser("deltapow", help="smallest e with Delta^e f in the polarized algebra")
    common(p, gens=True)
    p.add_argument("--e-max", type=int, default=6)
    p.set_defaults(func=cmd_deltapow)

    p = sub.add_parser("span", help="basis of <GL_d . f>")
    common(p, group=False)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("hweight", help="h value of a weight")
    p.add_argument("--weight", required=True, help="comma-separated column degrees")
    p.add_argument("--emit", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_hweight)

    p = sub.add_parser("phiprime", help="Phi'(f) as a sum of u (x) y")
    common(p, group=False)
    p.set_defaults(func=cmd_phiprime)

    p = sub.add_parser("coverage", help="good-filtration coverage probe")
    common(p, poly=False, gens=True)
    p.add_argument("--pairs", help='JSON list of {"poly": ..., "weight": [...]}')
    p.add_argument("--degree-cap", type=int, default=8)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("scenario", help="run a bundled scenario")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--emit", choices=("json", "text"), default="json")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds (not deterministic)")
    p.add_argument("--max-products", type=int, default=MAX_PRODUCTS)
    p.add_argument("--max-terms", type=int, default=MAX_TERMS)
    p.set_defaults(func=cmd_scenario)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (VilabError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
