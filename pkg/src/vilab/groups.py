"""Subgroups H of GL_n acting on the rows of x, and invariance decisions.

H acts by ``(hF)(x) = F(h^{-1} x)``.  Diagonal groups are described by
character data so that finite diagonal groups whose entries live in an
extension field (mu_3 in characteristic 2, say) never need that field.
Connected classical groups are handled through their torus and root
subgroups: F is invariant iff the torus weights vanish and every root
element u(t) fixes F identically in t.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import field
from .errors import CapExceeded, DimensionError, GroupSpecError
from .linalg import identity, inverse, mat_mul, to_matrix
from .matrix_ring import RingCtx, act_row, functional_poly, poly_det, x_minor
from .poly import (
    T,
    X,
    Monomial,
    Poly,
    decode,
    encode_t,
    family,
    mono_key,
    xv,
)

GROUP_CAP = 10_000
CLASSICAL_KINDS = ("GL", "SL", "SOsplit", "Spsplit")


# -- specifications -------------------------------------------------------------


@dataclass(frozen=True)
class Torsion:
    modulus: int
    weights: tuple


@dataclass(frozen=True)
class CharacterWeight:
    free: tuple
    torsion: tuple

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)


class GroupSpec:
    variant = ""

    @property
    def n(self) -> int:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_json(obj: str | dict) -> "GroupSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            variant = obj["variant"]
        except (KeyError, TypeError):
            raise GroupSpecError("group JSON needs a 'variant' field") from None
        if variant == "diagonal":
            torsion = tuple(
                Torsion(int(t["modulus"]), tuple(int(w) for w in t["weights"]))
                for t in obj.get("torsion", [])
            )
            return Diagonal(
                tuple(tuple(int(w) for w in row) for row in obj.get("freeWeights", [])),
                torsion,
                obj.get("n"),
            )
        if variant == "generated":
            return Generated(
                tuple(tuple(tuple(r) for r in m) for m in obj["generators"]),
                bool(obj.get("finite", True)),
            )
        if variant == "rooted":
            return Rooted(obj["kind"], int(obj["n"]))
        if variant == "blockUnipotent":
            return BlockUnipotent(tuple(int(b) for b in obj["blocks"]))
        raise GroupSpecError(f"unknown group variant {variant!r}")


@dataclass(frozen=True)
class Diagonal(GroupSpec):
    """Row i is scaled by the character with free part free_weights[i] and torsion residues."""

    free_weights: tuple = ()
    torsion: tuple = ()
    n_rows: int | None = None
    variant = "diagonal"

    def __post_init__(self):
        sizes = set()
        if self.free_weights:
            sizes.add(len(self.free_weights))
            if len({len(r) for r in self.free_weights}) > 1:
                raise GroupSpecError("freeWeights rows must have equal length")
        normalized = []
        for t in self.torsion:
            if t.modulus < 2:
                raise GroupSpecError(f"torsion modulus must be >= 2, got {t.modulus}")
            sizes.add(len(t.weights))
            normalized.append(Torsion(t.modulus, tuple(w % t.modulus for w in t.weights)))
        object.__setattr__(self, "torsion", tuple(normalized))
        if self.n_rows is not None:
            sizes.add(self.n_rows)
        if len(sizes) != 1:
            raise GroupSpecError("cannot determine a consistent n for the diagonal group")
        object.__setattr__(self, "n_rows", sizes.pop())

    @property
    def n(self) -> int:
        return self.n_rows

    @property
    def rank(self) -> int:
        return len(self.free_weights[0]) if self.free_weights else 0

    def weight(self, m: Monomial) -> CharacterWeight:
        free = [0] * self.rank
        tors = [0] * len(self.torsion)
        for v, e in m:
            if family(v) != X:
                continue
            i = decode(v).indices[0] - 1
            if i >= self.n:
                raise DimensionError(f"row {i + 1} beyond n={self.n}")
            for k in range(self.rank):
                free[k] += e * self.free_weights[i][k]
            for k, t in enumerate(self.torsion):
                tors[k] += e * t.weights[i]
        return CharacterWeight(
            tuple(free), tuple(s % t.modulus for s, t in zip(tors, self.torsion))
        )

    def to_json(self) -> dict:
        return {
            "variant": "diagonal",
            "freeWeights": [list(r) for r in self.free_weights],
            "torsion": [{"modulus": t.modulus, "weights": list(t.weights)} for t in self.torsion],
            "n": self.n,
        }


@dataclass(frozen=True)
class Generated(GroupSpec):
    generators: tuple
    finite: bool = True
    variant = "generated"

    def __post_init__(self):
        if not self.generators:
            raise GroupSpecError("need at least one generator")
        n = len(self.generators[0])
        for m in self.generators:
            if len(m) != n or any(len(r) != n for r in m):
                raise GroupSpecError("generators must be square of equal size")

    @property
    def n(self) -> int:
        return len(self.generators[0])

    def matrices(self, p: int) -> list:
        out = []
        for m in self.generators:
            mat = to_matrix(p, m)
            try:
                inverse(p, mat)
            except ZeroDivisionError:
                raise GroupSpecError(f"generator {m} is singular in characteristic {p}") from None
            out.append(mat)
        return out

    def to_json(self) -> dict:
        return {
            "variant": "generated",
            "generators": [[[str(c) if not isinstance(c, int) else c for c in r] for r in m]
                           for m in self.generators],
            "finite": self.finite,
        }


@dataclass(frozen=True)
class Rooted(GroupSpec):
    kind: str
    n_rows: int
    variant = "rooted"

    def __post_init__(self):
        if self.kind not in CLASSICAL_KINDS:
            raise GroupSpecError(f"unknown classical kind {self.kind!r}")
        if self.n_rows < 1:
            raise GroupSpecError("n must be positive")
        if self.kind == "Spsplit" and self.n_rows % 2:
            raise GroupSpecError("Spsplit needs even n")

    @property
    def n(self) -> int:
        return self.n_rows

    def gram(self, p: int):
        return gram_matrix(self.kind, self.n, p)

    def torus_ok(self, m: Monomial) -> bool:
        deg = [0] * self.n
        for v, e in m:
            if family(v) == X:
                deg[decode(v).indices[0] - 1] += e
        if self.kind == "GL":
            return not any(deg)
        if self.kind == "SL":
            return len(set(deg)) == 1
        return all(deg[i] == deg[self.n - 1 - i] for i in range(self.n // 2))

    def root_elements(self, p: int) -> list[tuple[str, list]]:
        return root_elements(self.kind, self.n, p)

    def to_json(self) -> dict:
        return {"variant": "rooted", "kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class BlockUnipotent(GroupSpec):
    blocks: tuple
    variant = "blockUnipotent"

    def __post_init__(self):
        if not self.blocks or any(b < 1 for b in self.blocks):
            raise GroupSpecError("blocks must be a composition of n")

    @property
    def n(self) -> int:
        return sum(self.blocks)

    def above_block_slots(self) -> list[tuple[int, int]]:
        block_of = []
        for b, size in enumerate(self.blocks):
            block_of += [b] * size
        return [(i, j) for i in range(self.n) for j in range(self.n) if block_of[i] < block_of[j]]

    def generic_element(self, p: int, first_param: int = 1) -> list:
        mat = [[Poly.constant(p, 1 if i == j else 0) for j in range(self.n)] for i in range(self.n)]
        for k, (i, j) in enumerate(self.above_block_slots()):
            mat[i][j] = Poly.var(p, encode_t(first_param + k))
        return mat

    def to_json(self) -> dict:
        return {"variant": "blockUnipotent", "blocks": list(self.blocks)}


# -- classical forms and root subgroups ---------------------------------------


def gram_matrix(kind: str, n: int, p: int):
    """Split forms: antidiagonal ones (orthogonal), antidiagonal +1/-1 halves (symplectic).

    ``standard`` is the identity form sum_q x_qi x_qj.
    """
    zero = field.normalize(p, 0)
    mat = [[zero] * n for _ in range(n)]
    for i in range(n):
        if kind == "SOsplit":
            mat[i][n - 1 - i] = field.normalize(p, 1)
        elif kind == "Spsplit":
            mat[i][n - 1 - i] = field.normalize(p, 1 if i < n // 2 else -1)
        elif kind == "standard":
            mat[i][i] = field.normalize(p, 1)
        else:
            raise GroupSpecError(f"{kind} has no invariant bilinear form")
    return mat


def _preserves_form(xm, j, p) -> bool:
    lhs = mat_mul(p, [list(c) for c in zip(*xm)], j)
    rhs = mat_mul(p, j, xm)
    return all((a + b) % p == 0 if p else a + b == 0 for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))


def _elementary(n: int, entries: dict, p: int):
    zero = field.normalize(p, 0)
    mat = [[zero] * n for _ in range(n)]
    for (i, j), c in entries.items():
        mat[i][j] = field.normalize(p, c)
    return mat


def root_elements(kind: str, n: int, p: int) -> list[tuple[str, list]]:
    """One-parameter unipotent elements exp(t X) for each root vector X, in t(1)."""
    if kind in ("SOsplit", "Spsplit") and p == 2:
        raise GroupSpecError(f"{kind} is not supported in characteristic 2")
    out = []
    if kind in ("GL", "SL"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append((f"E{i + 1}{j + 1}", _elementary(n, {(i, j): 1}, p)))
    else:
        form = gram_matrix(kind, n, p)
        seen = set()
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                partner = (n - 1 - j, n - 1 - i)
                if partner == (i, j):
                    candidates = [{(i, j): 1}]
                else:
                    candidates = [{(i, j): 1, partner: c} for c in (1, -1)]
                for entries in candidates:
                    xm = _elementary(n, entries, p)
                    if _preserves_form(xm, form, p):
                        key = frozenset(entries)
                        if key not in seen:
                            seen.add(key)
                            out.append((f"X{i + 1}{j + 1}", xm))
                        break
    t = Poly.var(p, encode_t(1))
    result = []
    for label, xm in out:
        result.append((label, _exp_nilpotent(xm, t, p)))
    return result


def _exp_nilpotent(xm, t: Poly, p: int):
    n = len(xm)
    total = [[Poly.constant(p, 1 if i == j else 0) for j in range(n)] for i in range(n)]
    power = [list(r) for r in identity(p, n)]
    k = 0
    fact = 1
    tk = Poly.constant(p, 1)
    while True:
        power = mat_mul(p, power, xm)
        k += 1
        if not any(any(r) for r in power):
            return total
        fact *= k
        tk = tk * t
        coeff = field.inverse(p, field.normalize(p, fact))
        for i in range(n):
            for j in range(n):
                if power[i][j]:
                    total[i][j] = total[i][j] + tk.scale(power[i][j] * coeff)
        if k > n:
            raise GroupSpecError("root vector is not nilpotent")


def bilinear(kind: str, i: int, j: int, ctx: RingCtx) -> Poly:
    """<x_i, x_j> = x_i^T J x_j for the split form J of the given kind."""
    form = gram_matrix(kind, ctx.n, ctx.p)
    out = Poly.zero(ctx.p)
    for a in range(ctx.n):
        for b in range(ctx.n):
            if form[a][b]:
                out = out + (xv(ctx.p, a + 1, i) * xv(ctx.p, b + 1, j)).scale(form[a][b])
    return out


def gram_determinant(kind: str, rows: Sequence[int], cols: Sequence[int], ctx: RingCtx) -> Poly:
    """<i_1..i_r | j_1..j_r>: determinant of the matrix of pairings <x_i, x_j>."""
    return poly_det([[bilinear(kind, i, j, ctx) for j in cols] for i in rows], ctx.p)


# -- invariance -----------------------------------------------------------------


@dataclass
class Invariance:
    invariant: bool
    witness: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.invariant


def _t_witness(diff: Poly) -> dict:
    parts = diff.split_family(T)
    key = max(parts, key=mono_key)
    return {"tMonomial": str(Poly(diff.p, {key: 1})), "coefficient": str(parts[key])}


def is_invariant(f: Poly, H: GroupSpec, ctx: RingCtx) -> Invariance:
    ctx.check_poly(f)
    if H.n != ctx.n:
        raise DimensionError(f"group acts on n={H.n} rows, ring has n={ctx.n}")
    p = ctx.p
    if isinstance(H, Diagonal):
        for m in sorted(f.terms, key=mono_key, reverse=True):
            w = H.weight(m)
            if not w.is_zero():
                return Invariance(False, {
                    "monomial": str(Poly(p, {m: 1})),
                    "free": list(w.free),
                    "torsion": list(w.torsion),
                })
        return Invariance(True)
    if isinstance(H, Generated):
        for k, h in enumerate(H.matrices(p)):
            if act_row(f, inverse(p, h), ctx.n) != f:
                return Invariance(False, {"generator": k})
        return Invariance(True)
    if isinstance(H, Rooted):
        for m in sorted(f.terms, key=mono_key, reverse=True):
            if not H.torus_ok(m):
                return Invariance(False, {"torus": str(Poly(p, {m: 1}))})
        for label, u in H.root_elements(p):
            diff = act_row(f, u, ctx.n) - f
            if diff:
                return Invariance(False, {"root": label, **_t_witness(diff)})
        return Invariance(True)
    if isinstance(H, BlockUnipotent):
        diff = act_row(f, H.generic_element(p), ctx.n) - f
        if diff:
            return Invariance(False, _t_witness(diff))
        return Invariance(True)
    raise GroupSpecError(f"unsupported group {H!r}")


# -- invariant monomials for diagonal groups --------------------------------------


def _require_diagonal(H: GroupSpec, ctx: RingCtx) -> Diagonal:
    if not isinstance(H, Diagonal):
        raise GroupSpecError("operation needs a diagonal group")
    if H.n != ctx.n:
        raise DimensionError(f"group acts on n={H.n} rows, ring has n={ctx.n}")
    return H


def _monomials_of_degree(variables: Sequence[int], deg: int):
    for combo in itertools.combinations_with_replacement(variables, deg):
        m: dict = {}
        for v in combo:
            m[v] = m.get(v, 0) + 1
        yield tuple(sorted(m.items()))


def invariant_monomials(H: GroupSpec, ctx: RingCtx, max_deg: int) -> list[Monomial]:
    """All weight-zero monomials of degree <= max_deg (the constant included), ascending order."""
    H = _require_diagonal(H, ctx)
    variables = ctx.x_vars()
    out = []
    for deg in range(max_deg + 1):
        out.extend(m for m in _monomials_of_degree(variables, deg) if H.weight(m).is_zero())
    return sorted(out, key=mono_key)


def _proper_divisors(m: Monomial):
    ranges = [range(e + 1) for _, e in m]
    for exps in itertools.product(*ranges):
        if 0 < sum(exps) < sum(e for _, e in m):
            yield tuple((v, k) for (v, _), k in zip(m, exps) if k)


def minimal_monomial_generators(H: GroupSpec, ctx: RingCtx, max_deg: int) -> list[Monomial]:
    """Invariant monomials that are not products of two nonconstant invariant monomials."""
    H = _require_diagonal(H, ctx)
    gens = []
    for m in invariant_monomials(H, ctx, max_deg):
        if not m:
            continue
        if not any(H.weight(q).is_zero() for q in _proper_divisors(m)):
            gens.append(m)
    return gens


def classical_generators(kind: str, ctx: RingCtx) -> list[Poly]:
    """Generators of the invariants of SL_n, split SO_n or split Sp_n on M_{n,d}."""
    if kind not in ("SL", "SOsplit", "Spsplit"):
        raise GroupSpecError(f"no classical generator family for {kind!r}")
    if kind != "SL" and ctx.p == 2:
        raise GroupSpecError(f"{kind} generators need characteristic != 2")
    if kind == "Spsplit" and ctx.n % 2:
        raise GroupSpecError("Spsplit needs even n")
    out = []
    rows = tuple(range(1, ctx.n + 1))
    if kind in ("SL", "SOsplit"):
        for cols in itertools.combinations(range(1, ctx.d + 1), ctx.n):
            out.append(x_minor(rows, cols, ctx.p))
    if kind == "SOsplit":
        for i in range(1, ctx.d + 1):
            for j in range(i, ctx.d + 1):
                out.append(bilinear(kind, i, j, ctx))
    if kind == "Spsplit":
        for i in range(1, ctx.d + 1):
            for j in range(i + 1, ctx.d + 1):
                out.append(bilinear(kind, i, j, ctx))
    return out


# -- finite groups ------------------------------------------------------------


def group_closure(H: Generated, p: int, cap: int = GROUP_CAP) -> list:
    """All elements of the finite group generated by H, breadth-first from the identity."""
    gens = H.matrices(p)
    start = identity(p, H.n)
    key = lambda m: tuple(tuple(r) for r in m)
    seen = {key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(p, a, g)
                k = key(b)
                if k not in seen:
                    seen[k] = b
                    nxt.append(b)
                    if len(seen) > cap:
                        raise CapExceeded("group order", cap)
        frontier = nxt
    return list(seen.values())


def orbit_chern(ell: Poly | Sequence[Sequence], H: GroupSpec, ctx: RingCtx,
                cap: int = GROUP_CAP) -> list[Poly]:
    """Coefficients e_1..e_r of prod (X + h.ell) over the distinct H-orbit elements."""
    if not isinstance(H, Generated) or not H.finite:
        raise GroupSpecError("orbit Chern classes need a finite generated group")
    p = ctx.p
    if not isinstance(ell, Poly):
        ell = functional_poly(ell, p)
    ctx.check_poly(ell)
    orbit: list[Poly] = []
    for h in group_closure(H, p, cap):
        img = act_row(ell, inverse(p, h), ctx.n)
        if img not in orbit:
            orbit.append(img)
    elem = [Poly.constant(p, 1)]
    for lin in orbit:
        elem = [elem[0]] + [elem[k] + lin * elem[k - 1] for k in range(1, len(elem))] + [lin * elem[-1]]
    return elem[1:]
