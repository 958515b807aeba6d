"""T_d-weights, the h functional, the filtration A_m and the leading-term maps.

A monomial's weight under the diagonal torus of GL_d is its column-degree
vector e.  With positive roots chi_i - chi_j (i < j) and the standard dot
product, h(e) = sum_{i<j} (e_i - e_j) = sum_i (d + 1 - 2i) e_i.

Everything is computed on the U^-\\G side: Phi'(b)(U^- g) = phi(g . b), which
is a polynomial in x and the entries of a generic g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, DimensionError
from .linalg import SpanBasis
from .matrix_ring import RingCtx, act_column, g_minor, generic_matrix, generic_unitriangular
from .poly import G, X, Monomial, Poly, decode, family, gv, mono_key, mono_split, poly_substitute
from .polarization import PolarizedAlgebra, module_span

PRODUCT_CAP = 100_000
COVERAGE_DEGREE_CAP = 8


@dataclass(frozen=True)
class GLWeight:
    e: tuple

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))

    @classmethod
    def parse(cls, text: str) -> "GLWeight":
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def d(self) -> int:
        return len(self.e)

    def __add__(self, other: "GLWeight") -> "GLWeight":
        if self.d != other.d:
            raise DimensionError("weights of different length")
        return GLWeight(tuple(a + b for a, b in zip(self.e, other.e)))

    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.e, self.e[1:]))

    def fundamental(self) -> tuple:
        """Multiplicities of omega_1..omega_d: e_r = lambda_r - lambda_{r+1}."""
        lam = self.e + (0,)
        return tuple(lam[r] - lam[r + 1] for r in range(self.d))

    @classmethod
    def from_fundamental(cls, mult: Sequence[int]) -> "GLWeight":
        return cls(tuple(sum(mult[i:]) for i in range(len(mult))))

    def to_json(self) -> list:
        return list(self.e)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.e)) + ")"


def monomial_weight(m: Monomial, d: int) -> GLWeight:
    e = [0] * d
    for v, k in m:
        if family(v) == X:
            j = decode(v).indices[1]
            if j > d:
                raise DimensionError(f"column {j} beyond d={d}")
            e[j - 1] += k
    return GLWeight(tuple(e))


def h_value(w: GLWeight | Sequence[int]) -> int:
    e = w.e if isinstance(w, GLWeight) else tuple(w)
    d = len(e)
    return sum((d + 1 - 2 * i) * ei for i, ei in enumerate(e, start=1))


def t_weight_decompose(f: Poly, ctx: RingCtx) -> dict[GLWeight, Poly]:
    ctx.check_poly(f)
    if f.families() - {X}:
        raise ValueError("weight decomposition needs a polynomial in x only")
    parts: dict[GLWeight, dict] = {}
    for m, c in f.terms.items():
        parts.setdefault(monomial_weight(m, ctx.d), {})[m] = c
    return {w: Poly._raw(f.p, t) for w, t in sorted(parts.items(), key=lambda kv: kv[0].e, reverse=True)}


def filtration_level(f: Poly, ctx: RingCtx) -> int:
    """Least m with f in A_m: the largest h over the weights of <GL_d . f>."""
    if not f:
        raise ValueError("filtration level of the zero polynomial is undefined")
    best = None
    for part in f.homogeneous_parts().values():
        for row in module_span(part, ctx).rows:
            for m in row.terms:
                hv = h_value(monomial_weight(m, ctx.d))
                if best is None or hv > best:
                    best = hv
    return best


def phi_leading(f: Poly, ctx: RingCtx) -> Poly:
    """Sum of the weight components of f whose h equals f's filtration level (may be 0)."""
    level = filtration_level(f, ctx)
    out = {m: c for m, c in f.terms.items() if h_value(monomial_weight(m, ctx.d)) == level}
    return Poly._raw(f.p, out)


# -- Phi' and Y'(omega) --------------------------------------------------------------


@dataclass
class HullElement:
    """sum of uPart (x only) tensor gPart (g only), one block per x-weight."""

    terms: list  # [(uPart, gPart)]
    p: int = 0

    def as_poly(self) -> Poly:
        out = Poly.zero(self.p)
        for u, g in self.terms:
            out = out + u * g
        return out

    def weights(self, d: int) -> list[GLWeight]:
        return [monomial_weight(u.leading_monomial(), d) for u, _ in self.terms]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HullElement):
            return NotImplemented
        return self.as_poly() == other.as_poly()

    def __mul__(self, other: "HullElement") -> "HullElement":
        return HullElement([(u1 * u2, g1 * g2) for u1, g1 in self.terms for u2, g2 in other.terms],
                           self.p)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> list:
        return [{"u": str(u), "g": str(g)} for u, g in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({u}) ⊗ ({g})" for u, g in self.terms)


def tensor_split(P: Poly, d: int) -> HullElement:
    """Write an x/g polynomial as a shortest sum of x-part times g-part, per x-weight."""
    by_weight: dict[GLWeight, dict] = {}
    for m, c in P.terms.items():
        xm, gm = mono_split(m, X)
        by_weight.setdefault(monomial_weight(xm, d), {}).setdefault(gm, {})[xm] = c
    terms = []
    for w in sorted(by_weight, key=lambda w: w.e, reverse=True):
        coeffs = by_weight[w]
        gmons = sorted(coeffs, key=mono_key, reverse=True)
        basis = SpanBasis(P.p, track=False)
        for gm in gmons:
            basis.add(Poly._raw(P.p, coeffs[gm]))
        # coordinates of each x-coefficient in the RREF basis are its values at the pivots
        pivots = basis.pivots
        rows = basis.rows
        for piv, row in zip(pivots, rows):
            gpart = {gm: coeffs[gm][piv] for gm in gmons if piv in coeffs[gm]}
            terms.append((row, Poly._raw(P.p, gpart)))
    return HullElement(terms, P.p)


def phi_prime(f: Poly, ctx: RingCtx) -> HullElement:
    """Phi'(f): the top-h component of f(xg) for generic g, split as sum u (x) y."""
    if not f:
        raise ValueError("phi' of the zero polynomial is undefined")
    if not f.is_homogeneous():
        raise ValueError("phi' needs a homogeneous polynomial")
    level = filtration_level(f, ctx)
    expanded = act_column(f, generic_matrix(ctx.p, ctx.d), ctx)
    return tensor_split(_level_part(expanded, level, ctx.d), ctx.d)


def _level_part(P: Poly, level: int, d: int) -> Poly:
    out = {}
    for m, c in P.terms.items():
        if h_value(monomial_weight(mono_split(m, X)[0], d)) == level:
            out[m] = c
    return Poly._raw(P.p, out)


def standard_tableaux(row_lengths: Sequence[int], d: int) -> list[tuple]:
    """Tableaux with rows strictly increasing and columns weakly increasing, entries in 1..d."""
    out = []

    def extend(prefix: list, k: int):
        if k == len(row_lengths):
            out.append(tuple(prefix))
            return
        above = prefix[-1] if prefix else None
        for row in itertools.combinations(range(1, d + 1), row_lengths[k]):
            if above is None or all(a <= b for a, b in zip(above, row)):
                prefix.append(row)
                extend(prefix, k + 1)
                prefix.pop()

    extend([], 0)
    return out


def y_prime_basis(omega: Sequence[int], d: int, p: int = 0) -> list[Poly]:
    """Standard bitableaux (1..r | E-row) in the generic g with e_r rows of length r."""
    mult = list(omega)
    if len(mult) > d or any(m < 0 for m in mult):
        raise ValueError("multiplicities must be non-negative, at most d of them")
    lengths = [r for r in range(len(mult), 0, -1) for _ in range(mult[r - 1])]
    out = []
    for tab in standard_tableaux(lengths, d):
        prod = Poly.constant(p, 1)
        for row in tab:
            prod = prod * g_minor(tuple(range(1, len(row) + 1)), row, p)
        out.append(prod)
    return out


def left_translate(f: Poly, u: Sequence[Sequence]) -> Poly:
    """f(ug) for a d x d matrix u: g(r,s) -> sum_q u(r,q) g(q,s)."""
    p = f.p
    d = len(u)
    sigma = {}
    for v in f.variables():
        if family(v) != G:
            continue
        r, s = decode(v).indices
        img = Poly.zero(p)
        for q in range(1, d + 1):
            c = u[r - 1][q - 1]
            c = c if isinstance(c, Poly) else Poly.constant(p, c)
            if c:
                img = img + c * gv(p, q, s)
        sigma[v] = img
    return poly_substitute(f, sigma)


def is_lower_coset_invariant(f: Poly, d: int) -> bool:
    """f(ug) == f(g) for a generic lower unitriangular u."""
    return left_translate(f, generic_unitriangular(f.p, d, lower=True)) == f


def product_rule_check(omega: Sequence[int], omega_prime: Sequence[int], d: int, p: int = 0,
                       cap: int = PRODUCT_CAP) -> bool:
    """Y'(w) Y'(w') spans Y'(w + w')."""
    a = y_prime_basis(omega, d, p)
    b = y_prime_basis(omega_prime, d, p)
    if len(a) * len(b) > cap:
        raise CapExceeded("products", cap)
    size = max(len(omega), len(omega_prime))
    pad = lambda w: list(w) + [0] * (size - len(w))
    total = [x + y for x, y in zip(pad(omega), pad(omega_prime))]
    target = SpanBasis.from_polys(p, y_prime_basis(total, d, p), track=False)
    prods = SpanBasis.from_polys(p, (s * t for s in a for t in b), track=False)
    return prods.same_span(target)


# -- coverage probe ----------------------------------------------------------------


@dataclass
class CoverageResult:
    pair: int
    weight: GLWeight
    covered: bool | None  # None when indeterminate
    degree: int
    missing: int = 0
    reason: str = ""

    def to_json(self) -> dict:
        out = {"pair": self.pair, "weight": self.weight.to_json(), "covered": self.covered,
               "degree": self.degree}
        if self.covered is None:
            out["reason"] = self.reason
        return out


@dataclass
class CoverageReport:
    results: list
    annotation: str = ""

    @property
    def all_covered(self) -> bool:
        return all(r.covered for r in self.results)

    def to_json(self) -> dict:
        return {"results": [r.to_json() for r in self.results], "annotation": self.annotation}


def _level_image(alg: PolarizedAlgebra, degree: int, level: int, ctx: RingCtx) -> SpanBasis:
    """Span of Phi'(b) for b in A_level within the degree component.

    A_level meets the (GL_d-stable) component V in the kernel of
    b -> (components of g.b with h > level); Phi' of a kernel element is the
    h == level component of g.b.
    """
    rows = alg.component(degree).rows
    gen = generic_matrix(ctx.p, ctx.d)
    high = SpanBasis(ctx.p, track=True)
    levels = []
    image = SpanBasis(ctx.p, track=False)
    for k, b in enumerate(rows):
        expanded = act_column(b, gen, ctx)
        hi, lv = {}, {}
        for m, c in expanded.terms.items():
            hv = h_value(monomial_weight(mono_split(m, X)[0], ctx.d))
            if hv > level:
                hi[m] = c
            elif hv == level:
                lv[m] = c
        levels.append(Poly._raw(ctx.p, lv))
        independent, relation = high.add(Poly._raw(ctx.p, hi))
        if not independent:
            combo = Poly.zero(ctx.p)
            for idx, c in relation.items():
                combo = combo + levels[idx].scale(c)
            if combo:
                image.add(combo)
    return image


def check_hull_coverage(u_gens: Iterable[tuple[Poly, GLWeight]], alg_gens: Sequence[Poly],
                        ctx: RingCtx, degree_cap: int = COVERAGE_DEGREE_CAP,
                        **caps) -> CoverageReport:
    """Is a_i (x) Y'(omega_i) contained in Phi'(gr) of the algebra generated by <GL_d . algGens>?"""
    alg = PolarizedAlgebra(list(alg_gens), ctx, square=False, **caps)
    results = []
    for idx, (a, w) in enumerate(u_gens):
        w = w if isinstance(w, GLWeight) else GLWeight(tuple(w))
        if w.d != ctx.d:
            raise DimensionError(f"weight {w} does not have d={ctx.d} entries")
        if not w.is_dominant():
            raise ValueError(f"weight {w} is not dominant")
        degree = a.degree() if a else 0
        if degree > degree_cap:
            results.append(CoverageResult(idx, w, None, degree, reason=f"degree above cap {degree_cap}"))
            continue
        try:
            image = _level_image(alg, degree, h_value(w), ctx)
        except CapExceeded as exc:
            results.append(CoverageResult(idx, w, None, degree, reason=str(exc)))
            continue
        missing = sum(1 for y in y_prime_basis(w.fundamental(), ctx.d, ctx.p)
                      if image.reduce(a * y))
        results.append(CoverageResult(idx, w, missing == 0, degree, missing))
    report = CoverageReport(results)
    if results and report.all_covered:
        report.annotation = ("every pair is covered: the polarized algebra has a good filtration "
                             "and equals the invariant algebra")
    return report
