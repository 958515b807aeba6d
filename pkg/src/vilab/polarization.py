"""The polarized algebra GL_d * j(A) generated by the GL_d-translates of j(f), f in A.

``<GL_d * f>`` is computed by one substitution of the generic matrix: the
coefficients of the g-monomials in f(xg) span exactly the linear span of all
translates, because k is infinite.  The algebra generated by the modules
``V_i = <GL_d * j(f_i)>`` is graded, and its degree-D component is

    A_D = sum over e of W_e * A'_{D-e}

where W_e is the sum of the V_i of degree e and A' only uses factors of
degree >= e (products are enumerated as nondecreasing multisets).  Each
component is kept as a :class:`SpanBasis`; with tracking switched on every
row remembers how it is built, and membership certificates expand that
history into explicit sums of products of module-basis elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from . import field
from .errors import CapExceeded
from .linalg import SpanBasis
from .matrix_ring import RingCtx, act_column, delta, embed_j, generic_matrix
from .poly import G, Poly, mono_key, poly_pow

MAX_PRODUCTS = 100_000
MAX_TERMS = 200_000
P_ROOT_M_MAX = 4
DELTA_E_MAX = 6


@dataclass(frozen=True)
class ModuleSpan:
    seed: Poly
    basis: SpanBasis
    degree: int

    @property
    def dimension(self) -> int:
        return self.basis.rank

    @property
    def rows(self) -> list[Poly]:
        return self.basis.rows


@lru_cache(maxsize=4096)
def module_span(f: Poly, ctx: RingCtx) -> ModuleSpan:
    """Basis of <GL_d * f> from the g-coefficients of f(xg) with g generic."""
    ctx.check_poly(f)
    expanded = act_column(f, generic_matrix(ctx.p, ctx.d), ctx)
    parts = expanded.split_family(G)
    basis = SpanBasis(ctx.p, track=False)
    for key in sorted(parts, key=mono_key, reverse=True):
        basis.add(parts[key])
    return ModuleSpan(f, basis, f.degree())


# -- certificates ------------------------------------------------------------------


@dataclass
class MembershipCertificate:
    verdict: str  # "member" | "nonmember" | "indeterminate"
    degree: int | None
    combination: list = dc_field(default_factory=list)  # [(coeff, (factor Poly, ...)), ...]
    residual: Poly | None = None
    reason: str = ""

    @property
    def member(self) -> bool:
        return self.verdict == "member"

    def expand(self, p: int) -> Poly:
        total = Poly.zero(p)
        for c, factors in self.combination:
            term = Poly.constant(p, c)
            for f in factors:
                term = term * f
            total = total + term
        return total

    def verify(self, f: Poly) -> bool:
        """Member certificates must re-expand to the query exactly."""
        if self.verdict != "member":
            return False
        return self.expand(f.p) == f

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "degree": self.degree}
        if self.verdict == "member":
            out["combination"] = [
                {"coeff": str(c), "factors": [str(f) for f in factors]}
                for c, factors in self.combination
            ]
        elif self.verdict == "nonmember":
            out["residualTerms"] = len(self.residual.terms)
            out["residual"] = str(self.residual)
        else:
            out["reason"] = self.reason
        return out


class PolarizedAlgebra:
    """Graded components of the algebra generated by <GL_d * j(f)> for the given f."""

    def __init__(self, gens: Sequence[Poly], ctx: RingCtx,
                 max_products: int = MAX_PRODUCTS, max_terms: int = MAX_TERMS,
                 square: bool = True):
        # square=False lets seeds live on all of M_{n,d} (the GL_d-stable
        # algebra generated by arbitrary polynomials)
        self.ctx = ctx
        self.p = ctx.p
        self.max_products = max_products
        self.max_terms = max_terms
        self.gens = list(gens)
        self.modules: list[ModuleSpan] = []
        self.module_source: list[int] = []
        for gi, f in enumerate(self.gens):
            if square:
                embed_j(f, ctx)
            else:
                ctx.check_poly(f)
            for deg, part in f.homogeneous_parts().items():
                if deg > 0:
                    self.modules.append(module_span(part, ctx))
                    self.module_source.append(gi)
        self.degrees = sorted({m.degree for m in self.modules})
        self._module_rows = [m.basis.rows for m in self.modules]
        self._w: dict[tuple[int, bool], SpanBasis] = {}
        self._comp: dict[tuple[int, int, bool], SpanBasis] = {}
        self._expansions: dict = {}

    # ---- spans
    def factor(self, mi: int, ri: int) -> Poly:
        return self._module_rows[mi][ri]

    def _check_terms(self, basis: SpanBasis) -> None:
        if len(basis._occ) + basis.rank > self.max_terms:
            raise CapExceeded("spanned terms", self.max_terms)

    def generator_span(self, e: int, track: bool = False) -> SpanBasis:
        """W_e: the sum of all module spans of degree e."""
        key = (e, track)
        if key not in self._w:
            basis = SpanBasis(self.p, track)
            for mi, mod in enumerate(self.modules):
                if mod.degree == e:
                    for ri, row in enumerate(self._module_rows[mi]):
                        basis.add(row, ("f", mi, ri))
            self._check_terms(basis)
            self._w[key] = basis
        return self._w[key]

    def _component(self, D: int, emin: int, track: bool) -> SpanBasis:
        key = (D, emin, track)
        if key in self._comp:
            return self._comp[key]
        basis = SpanBasis(self.p, track)
        if D == 0:
            basis.add(Poly.constant(self.p, 1), ("one",))
            self._comp[key] = basis
            return basis
        products = 0
        for e in self.degrees:
            if e < emin or e > D:
                continue
            W = self.generator_span(e, track)
            rest = D - e
            if rest == 0:
                for piv, row in zip(W.pivots, W.rows):
                    basis.add(row, ("w", e, piv))
                continue
            B = self._component(rest, e, track)
            if not B.rank:
                continue
            same = rest == e
            w_items = list(zip(W.pivots, W.rows))
            b_items = list(zip(B.pivots, B.rows))
            for i, (pa, ra) in enumerate(w_items):
                for j, (pb, rb) in enumerate(b_items):
                    if same and j < i:
                        continue
                    products += 1
                    if products > self.max_products:
                        raise CapExceeded("products", self.max_products)
                    basis.add(ra * rb, ("prod", e, pa, rest, pb))
                    if products % 2000 == 0:
                        self._check_terms(basis)
        self._check_terms(basis)
        self._comp[key] = basis
        return basis

    def component(self, degree: int, track: bool = False) -> SpanBasis:
        """Degree-``degree`` piece of the polarized algebra."""
        if degree < 0:
            raise ValueError("degree must be non-negative")
        return self._component(degree, 0, track)

    # ---- certificate expansion
    def _mul_expansions(self, a: dict, b: dict) -> dict:
        p = self.p
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple(sorted(ka + kb))
                s = out.get(k, 0) + ca * cb
                out[k] = s % p if p else s
        return {k: c for k, c in out.items() if c}

    def _accumulate(self, out: dict, exp: dict, c) -> None:
        p = self.p
        for k, v in exp.items():
            s = out.get(k, 0) + c * v
            if p:
                s %= p
            if s:
                out[k] = s
            else:
                out.pop(k, None)

    def _expand_label(self, label) -> dict:
        if label in self._expansions:
            return self._expansions[label]
        kind = label[0]
        if kind == "one":
            out = {(): field.normalize(self.p, 1)}
        elif kind == "f":
            out = {((label[1], label[2]),): field.normalize(self.p, 1)}
        elif kind == "w":
            out = self._expand_row(self.generator_span(label[1], True), label[2])
        elif kind == "prod":
            _, e, pa, rest, pb = label
            left = self._expand_row(self.generator_span(e, True), pa)
            right = self._expand_row(self._component(rest, e, True), pb)
            out = self._mul_expansions(left, right)
        else:
            raise ValueError(f"unknown label {label!r}")
        self._expansions[label] = out
        return out

    def _expand_row(self, basis: SpanBasis, piv) -> dict:
        key = ("row", id(basis), piv)
        if key in self._expansions:
            return self._expansions[key]
        out: dict = {}
        for idx, c in basis.row_combination(piv).items():
            self._accumulate(out, self._expand_label(basis.inputs[idx]), c)
        self._expansions[key] = out
        return out

    def _expand_inputs(self, basis: SpanBasis, comb: dict) -> dict:
        out: dict = {}
        for idx, c in comb.items():
            self._accumulate(out, self._expand_label(basis.inputs[idx]), c)
        return out

    # ---- membership
    def _homogeneous_certificate(self, f: Poly, degree: int) -> MembershipCertificate:
        try:
            quick = self.component(degree, track=False)
            residual = quick.reduce(f)
            if residual:
                return MembershipCertificate("nonmember", degree, residual=residual)
            tracked = self.component(degree, track=True)
            result = tracked.member(f)
        except CapExceeded as exc:
            return MembershipCertificate("indeterminate", degree, reason=str(exc))
        expansion = self._expand_inputs(tracked, result.combination)
        combination = [
            (c, tuple(self.factor(mi, ri) for mi, ri in key))
            for key, c in sorted(expansion.items())
        ]
        return MembershipCertificate("member", degree, combination=combination)

    def certificate(self, f: Poly) -> MembershipCertificate:
        self.ctx.check_poly(f)
        if not f:
            return MembershipCertificate("member", 0)
        parts = f.homogeneous_parts()
        certs = [self._homogeneous_certificate(part, deg) for deg, part in parts.items()]
        for c in certs:
            if c.verdict == "nonmember":
                return c
        for c in certs:
            if c.verdict == "indeterminate":
                return c
        if len(certs) == 1:
            return certs[0]
        merged = [term for c in certs for term in c.combination]
        return MembershipCertificate("member", max(parts), combination=merged)


@lru_cache(maxsize=64)
def _algebra(gens: tuple, ctx: RingCtx, max_products: int, max_terms: int) -> PolarizedAlgebra:
    return PolarizedAlgebra(gens, ctx, max_products, max_terms)


def polarized_algebra(gens: Sequence[Poly], ctx: RingCtx, max_products: int = MAX_PRODUCTS,
                      max_terms: int = MAX_TERMS) -> PolarizedAlgebra:
    return _algebra(tuple(gens), ctx, max_products, max_terms)


def polarized_component(gens: Sequence[Poly], ctx: RingCtx, degree: int, **caps) -> SpanBasis:
    return polarized_algebra(gens, ctx, **caps).component(degree)


def is_member(f: Poly, gens: Sequence[Poly], ctx: RingCtx, **caps) -> MembershipCertificate:
    return polarized_algebra(gens, ctx, **caps).certificate(f)


# -- p-root closure and Delta-power clearing ---------------------------------------


@dataclass
class LevelResult:
    """Outcome of a level search: found (level set), notFound, or indeterminate."""

    status: str
    level: int | None
    bound: int
    certificate: MembershipCertificate | None = None
    exponent: int | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        out = {"status": self.status, "level": self.level, "bound": self.bound}
        if self.exponent is not None:
            out["exponent"] = self.exponent
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass
class PRootResult(LevelResult):
    def relation(self) -> str:
        """The integral dependence X^{p^m} - r witnessed by the certificate."""
        return f"X^{self.exponent} - r" if self.found else ""

    def verify(self, f: Poly) -> bool:
        return self.found and self.certificate.expand(f.p) == poly_pow(f, self.exponent)

    def to_json(self) -> dict:
        out = super().to_json()
        if self.found:
            out["relation"] = self.relation()
        return out


def p_root_level(f: Poly, gens: Sequence[Poly], ctx: RingCtx, m_max: int = P_ROOT_M_MAX,
                 **caps) -> PRootResult:
    """Smallest m <= m_max with f^(p^m) in the polarized algebra."""
    if ctx.p == 0:
        raise ValueError("p-root closure needs positive characteristic")
    alg = polarized_algebra(gens, ctx, **caps)
    for m in range(m_max + 1):
        q = ctx.p**m
        cert = alg.certificate(poly_pow(f, q))
        if cert.verdict == "member":
            return PRootResult("found", m, m_max, cert, q)
        if cert.verdict == "indeterminate":
            return PRootResult("indeterminate", m, m_max, cert, q)
    return PRootResult("notFound", None, m_max)


def delta_power_level(f: Poly, gens: Sequence[Poly], ctx: RingCtx, e_max: int = DELTA_E_MAX,
                      **caps) -> LevelResult:
    """Smallest e <= e_max with Delta^e * f in the polarized algebra."""
    alg = polarized_algebra(gens, ctx, **caps)
    dl = delta(ctx)
    current = f
    for e in range(e_max + 1):
        cert = alg.certificate(current)
        if cert.verdict == "member":
            return LevelResult("found", e, e_max, cert, e)
        if cert.verdict == "indeterminate":
            return LevelResult("indeterminate", e, e_max, cert, e)
        current = current * dl
    return LevelResult("notFound", None, e_max)
