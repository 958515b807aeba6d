"""Sparse multivariate polynomials over F_p or Q.

Variables come in three families: ``x(i,j)`` entries of the n x d matrix,
``g(r,s)`` entries of a generic d x d group element and ``t(k)`` formal
root parameters.  Each variable is encoded as a single int whose natural
order is the fixed variable order (X < G < T, column-major inside X and G).

A monomial is a tuple of ``(var, exponent)`` pairs sorted by var, with no
zero exponents.  A polynomial maps monomials to canonical coefficients and
never stores zero coefficients; the zero polynomial has no terms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple

from . import field
from .errors import CharacteristicMismatch, ParseError

X, G, T = 0, 1, 2
_FAMILY_BASE = 1_000_000
_STRIDE = 1000
FAMILY_NAMES = {X: "x", G: "g", T: "t"}

Monomial = tuple  # tuple[tuple[int, int], ...]
ONE: Monomial = ()


class VarId(NamedTuple):
    family: int
    indices: tuple

    @property
    def code(self) -> int:
        if self.family == T:
            (k,) = self.indices
            return encode_t(k)
        i, j = self.indices
        return encode_x(i, j) if self.family == X else encode_g(i, j)

    def __str__(self) -> str:
        return var_name(self.code)


def _check_index(*idx: int) -> None:
    for i in idx:
        if not 1 <= i < _STRIDE:
            raise ValueError(f"variable index {i} out of range 1..{_STRIDE - 1}")


def encode_x(i: int, j: int) -> int:
    _check_index(i, j)
    return j * _STRIDE + i


def encode_g(r: int, s: int) -> int:
    _check_index(r, s)
    return _FAMILY_BASE + s * _STRIDE + r


def encode_t(k: int) -> int:
    if not 1 <= k < _FAMILY_BASE:
        raise ValueError(f"parameter index {k} out of range")
    return 2 * _FAMILY_BASE + k


def family(v: int) -> int:
    return v // _FAMILY_BASE


@lru_cache(maxsize=None)
def decode(v: int) -> VarId:
    fam, rest = divmod(v, _FAMILY_BASE)
    if fam == T:
        return VarId(T, (rest,))
    col, row = divmod(rest, _STRIDE)
    return VarId(fam, (row, col))


def var_name(v: int) -> str:
    fam, idx = decode(v)
    return f"{FAMILY_NAMES[fam]}({','.join(map(str, idx))})"


# -- monomials ---------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


@lru_cache(maxsize=1 << 20)
def mono_key(m: Monomial) -> tuple:
    """Sort key for the graded order; ties broken by the variable order (earlier var wins)."""
    return (sum(e for _, e in m), tuple((-v, e) for v, e in m))


def mono_split(m: Monomial, fam: int) -> tuple[Monomial, Monomial]:
    """Split ``m`` into (part in family ``fam``, remaining part)."""
    inside = tuple(ve for ve in m if ve[0] // _FAMILY_BASE == fam)
    if not inside:
        return ONE, m
    if len(inside) == len(m):
        return m, ONE
    return inside, tuple(ve for ve in m if ve[0] // _FAMILY_BASE != fam)


def mono_text(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


# -- polynomials -------------------------------------------------------------


class Poly:
    """Immutable sparse polynomial with coefficients in F_p or Q."""

    __slots__ = ("p", "terms", "_hash")

    def __init__(self, p: int, terms: Mapping[Monomial, object] | None = None):
        self.p = p
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field.normalize(p, c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, p: int, terms: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.p = p
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, p: int, c=1) -> "Poly":
        return cls(p, {ONE: c})

    @classmethod
    def var(cls, p: int, v: int) -> "Poly":
        return cls._raw(p, {((v, 1),): field.normalize(p, 1)})

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls._raw(p, {})

    # ---- basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.p == other.p and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.p, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly(p={self.p}, {self})"

    def __str__(self) -> str:
        return to_text(self)

    # ---- arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p:
                raise CharacteristicMismatch(self.p, other.p)
            return other
        return Poly.constant(self.p, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        p = self.p
        for m, c in small.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(p, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = self.p
        if p:
            return Poly._raw(p, {m: (-c) % p for m, c in self.terms.items()})
        return Poly._raw(p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        p = self.p
        c = field.normalize(p, c)
        if not c:
            return Poly._raw(p, {})
        if p:
            return Poly._raw(p, {m: v * c % p for m, v in self.terms.items()})
        return Poly._raw(p, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        p = self.p
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly._raw(p, {})
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Poly._raw(p, out)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, e: int) -> "Poly":
        return poly_pow(self, e)

    # ---- inspection
    def monomials(self) -> list:
        """Monomials in descending graded order."""
        return sorted(self.terms, key=mono_key, reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=mono_key)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_degree(m), {})[m] = c
        return {k: Poly._raw(self.p, v) for k, v in sorted(parts.items())}

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def families(self) -> set[int]:
        return {family(v) for v in self.variables()}

    def coefficient(self, m: Monomial):
        return self.terms.get(m, 0)

    def split_family(self, fam: int) -> dict[Monomial, "Poly"]:
        """Collect terms by their part in family ``fam``: f = sum key * value."""
        out: dict[Monomial, dict] = {}
        for m, c in self.terms.items():
            key, rest = mono_split(m, fam)
            out.setdefault(key, {})[rest] = c
        return {k: Poly._raw(self.p, v) for k, v in out.items()}

    def evaluate(self, point: Mapping[int, object] | Callable[[int], object]):
        """Evaluate at a point given as var -> value; unmapped vars raise KeyError."""
        p = self.p
        get = point if callable(point) else point.__getitem__
        total = 0
        cache: dict = {}
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in cache:
                    cache[v] = field.normalize(p, get(v))
                val = val * (pow(cache[v], e, p) if p else cache[v] ** e)
                if p:
                    val %= p
            total += val
        return total % p if p else total


def poly_pow(f: Poly, e: int) -> Poly:
    """f**e by repeated squaring."""
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.constant(f.p, 1)
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def poly_substitute(f: Poly, sigma: Mapping[int, Poly]) -> Poly:
    """Replace each variable in ``sigma`` by its image; other variables stay fixed."""
    p = f.p
    for img in sigma.values():
        if img.p != p:
            raise CharacteristicMismatch(p, img.p)
    powers: dict[tuple[int, int], Poly] = {}

    def image_power(v: int, e: int) -> Poly:
        key = (v, e)
        if key not in powers:
            powers[key] = poly_pow(sigma[v], e)
        return powers[key]

    out: dict = {}
    for m, c in f.terms.items():
        fixed = tuple(ve for ve in m if ve[0] not in sigma)
        term = Poly._raw(p, {fixed: c})
        for v, e in m:
            if v in sigma:
                term = term * image_power(v, e)
                if not term.terms:
                    break
        for tm, tc in term.terms.items():
            out[tm] = out.get(tm, 0) + tc
    if p:
        out = {m: c % p for m, c in out.items() if c % p}
    else:
        out = {m: c for m, c in out.items() if c}
    return Poly._raw(p, out)


# -- constructors ------------------------------------------------------------


def xv(p: int, i: int, j: int) -> Poly:
    return Poly.var(p, encode_x(i, j))


def gv(p: int, r: int, s: int) -> Poly:
    return Poly.var(p, encode_g(r, s))


def tv(p: int, k: int) -> Poly:
    return Poly.var(p, encode_t(k))


def from_monomial(p: int, m: Monomial, c=1) -> Poly:
    return Poly(p, {m: c})


def poly_sum(p: int, items: Iterable[Poly]) -> Poly:
    out: dict = {}
    for f in items:
        for m, c in f.terms.items():
            out[m] = out.get(m, 0) + c
    if p:
        out = {m: c % p for m, c in out.items() if c % p}
    else:
        out = {m: c for m, c in out.items() if c}
    return Poly._raw(p, out)


# -- text form ---------------------------------------------------------------


def to_text(f: Poly) -> str:
    if not f.terms:
        return "0"
    p = f.p
    pieces = []
    for m in f.monomials():
        c = f.terms[m]
        neg = p == 0 and c < 0
        mag = -c if neg else c
        ctext = field.to_text(p, mag)
        if not m:
            body = ctext
        elif ctext == "1":
            body = mono_text(m)
        else:
            body = f"{ctext}*{mono_text(m)}"
        pieces.append(("-" if neg else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_INT = re.compile(r"\d+")
_NUMBER = re.compile(r"(\d+)(?:/(\d+))?")


class _Parser:
    def __init__(self, text: str, p: int):
        self.text, self.p, self.pos = text, p, 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def number(self):
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.error("expected number")
        start = self.pos
        self.pos = m.end()
        if m.group(2) is not None:
            if int(m.group(2)) == 0:
                self.error("zero denominator", start)
            return Fraction(int(m.group(1)), int(m.group(2)))
        return int(m.group(1))

    def factor(self) -> Poly:
        self.skip()
        start = self.pos
        ch = self.peek()
        if ch.isdigit():
            base = Poly.constant(self.p, self.number())
        elif ch in "xgt":
            self.pos += 1
            self.expect("(")
            if ch == "t":
                k = self.integer()
                if k < 1:
                    self.error("index must be >= 1", start)
                code = encode_t(k)
            else:
                i = self.integer()
                self.expect(",")
                j = self.integer()
                if i < 1 or j < 1:
                    self.error("indices must be >= 1", start)
                code = encode_x(i, j) if ch == "x" else encode_g(i, j)
            self.expect(")")
            base = Poly.var(self.p, code)
        elif ch == "(":
            self.pos += 1
            base = self.poly()
            self.expect(")")
        else:
            self.error("expected a number, variable or '('")
        if self.peek() == "^":
            self.pos += 1
            base = poly_pow(base, self.integer())
        return base

    def term(self) -> Poly:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def poly(self) -> Poly:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            self.pos += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out


def parse_poly(text: str, p: int) -> Poly:
    """Parse the polynomial grammar; integer coefficients are reduced mod p."""
    field.check_characteristic(p)
    parser = _Parser(text, p)
    if not text.strip():
        parser.error("empty polynomial")
    out = parser.poly()
    if parser.peek():
        parser.error(f"unexpected {parser.peek()!r}")
    return out
