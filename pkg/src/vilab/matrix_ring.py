"""The coordinate ring k[M_{n,d}] and its structural maps.

The right column action is ``(g * F)(x) = F(xg)``, i.e. the substitution
``x(i,j) -> sum_s x(i,s) g(s,j)``.  A generic group element is the matrix of
``g(r,s)`` variables; identities proved with it specialize to every g.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import field
from .errors import DimensionError, ParseError
from .linalg import Matrix, identity, row_reduce, to_matrix
from .poly import (
    X,
    Poly,
    decode,
    encode_t,
    encode_x,
    family,
    gv,
    poly_substitute,
    xv,
)


@dataclass(frozen=True)
class RingCtx:
    n: int
    d: int
    p: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= self.d:
            raise DimensionError(f"need 1 <= n <= d, got n={self.n}, d={self.d}")
        field.check_characteristic(self.p)

    @classmethod
    def parse(cls, text: str) -> "RingCtx":
        """Ring spec ``NxD@pP``; ``p0`` means characteristic 0."""
        m = re.fullmatch(r"\s*(\d+)\s*x\s*(\d+)\s*@\s*p(\d+)\s*", text)
        if not m:
            raise ParseError(f"bad ring spec {text!r} (expected NxD@pP)", text, 0)
        return cls(int(m.group(1)), int(m.group(2)), int(m.group(3)))

    def square(self) -> "RingCtx":
        return RingCtx(self.n, self.n, self.p)

    def with_d(self, d: int) -> "RingCtx":
        return RingCtx(self.n, d, self.p)

    def x_vars(self) -> list[int]:
        return [encode_x(i, j) for j in range(1, self.d + 1) for i in range(1, self.n + 1)]

    def check_poly(self, f: Poly) -> None:
        if f.p != self.p:
            raise DimensionError(f"polynomial has characteristic {f.p}, ring has {self.p}")
        for v in f.variables():
            if family(v) == X:
                i, j = decode(v).indices
                if i > self.n or j > self.d:
                    raise DimensionError(f"x({i},{j}) lies outside M_{{{self.n},{self.d}}}")

    def __str__(self) -> str:
        return f"{self.n}x{self.d}@p{self.p}"


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if len(self.rows) != len(self.cols) or not self.rows:
            raise DimensionError("minor needs equally many (>=1) rows and columns")
        for seq in (self.rows, self.cols):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise DimensionError(f"indices {seq} are not strictly increasing")

    @classmethod
    def parse(cls, text: str) -> "MinorSpec":
        m = re.fullmatch(r"\s*\(\s*([\d\s]+)\|\s*([\d\s]+)\)\s*", text)
        if not m:
            raise ParseError(f"bad minor spec {text!r}", text, 0)
        return cls(tuple(map(int, m.group(1).split())), tuple(map(int, m.group(2).split())))

    def check(self, ctx: RingCtx) -> None:
        if self.rows[0] < 1 or self.rows[-1] > ctx.n or self.cols[0] < 1 or self.cols[-1] > ctx.d:
            raise DimensionError(f"minor {self} does not fit M_{{{ctx.n},{ctx.d}}}")

    def __str__(self) -> str:
        return f"({' '.join(map(str, self.rows))} | {' '.join(map(str, self.cols))})"


@dataclass(frozen=True)
class BiTableau:
    D: tuple
    E: tuple

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(tuple(r) for r in self.D))
        object.__setattr__(self, "E", tuple(tuple(r) for r in self.E))
        if [len(r) for r in self.D] != [len(r) for r in self.E]:
            raise DimensionError("D and E must have the same shape")
        lengths = [len(r) for r in self.D]
        if any(a < b for a, b in zip(lengths, lengths[1:])) or 0 in lengths:
            raise DimensionError("row lengths must be positive and weakly decreasing")

    @classmethod
    def from_json(cls, text: str | dict) -> "BiTableau":
        obj = json.loads(text) if isinstance(text, str) else text
        return cls(obj["D"], obj["E"])

    def to_json(self) -> dict:
        return {"D": [list(r) for r in self.D], "E": [list(r) for r in self.E]}


# -- determinants of polynomial matrices --------------------------------------


def poly_det(mat: Sequence[Sequence[Poly]], p: int) -> Poly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    n = len(mat)
    if n == 0:
        return Poly.constant(p, 1)

    @lru_cache(maxsize=None)
    def sub(row: int, cols: tuple) -> Poly:
        if row == n:
            return Poly.constant(p, 1)
        out = Poly.zero(p)
        for k, c in enumerate(cols):
            entry = mat[row][c]
            if not entry:
                continue
            term = entry * sub(row + 1, cols[:k] + cols[k + 1:])
            out = out - term if k % 2 else out + term
        return out

    return sub(0, tuple(range(n)))


def x_minor(rows: Sequence[int], cols: Sequence[int], p: int) -> Poly:
    return poly_det([[xv(p, i, j) for j in cols] for i in rows], p)


def g_minor(rows: Sequence[int], cols: Sequence[int], p: int) -> Poly:
    """Minor ``(rows | cols)_g`` of the generic group element."""
    return poly_det([[gv(p, r, s) for s in cols] for r in rows], p)


def minor(spec: MinorSpec, ctx: RingCtx) -> Poly:
    spec.check(ctx)
    return x_minor(spec.rows, spec.cols, ctx.p)


def delta(ctx: RingCtx) -> Poly:
    idx = tuple(range(1, ctx.n + 1))
    return x_minor(idx, idx, ctx.p)


# -- group elements ------------------------------------------------------------


def generic_matrix(p: int, d: int) -> list[list[Poly]]:
    return [[gv(p, r, s) for s in range(1, d + 1)] for r in range(1, d + 1)]


def generic_unitriangular(p: int, d: int, first_param: int = 1, lower: bool = False):
    """Unitriangular d x d matrix with a fresh t-parameter in every off-diagonal slot."""
    one, zero = Poly.constant(p, 1), Poly.zero(p)
    k = first_param
    out = []
    for r in range(d):
        row = []
        for s in range(d):
            if r == s:
                row.append(one)
            elif (s > r) != lower:
                row.append(Poly.var(p, encode_t(k)))
                k += 1
            else:
                row.append(zero)
        out.append(row)
    return out


def _entry_poly(p: int, c) -> Poly:
    return c if isinstance(c, Poly) else Poly.constant(p, c)


def act_column(f: Poly, g: Sequence[Sequence], ctx: RingCtx | None = None) -> Poly:
    """(g * f)(x) = f(xg) for a numeric or polynomial d x d matrix g."""
    p = f.p
    d = len(g)
    if any(len(r) != d for r in g):
        raise DimensionError("group element must be square")
    if ctx is not None and ctx.d != d:
        raise DimensionError(f"group element is {d}x{d}, ring has d={ctx.d}")
    entries = [[_entry_poly(p, c) for c in r] for r in g]
    sigma = {}
    for v in f.variables():
        if family(v) != X:
            continue
        i, j = decode(v).indices
        if j > d:
            raise DimensionError(f"x({i},{j}) has column beyond d={d}")
        img = Poly.zero(p)
        for s in range(1, d + 1):
            e = entries[s - 1][j - 1]
            if e:
                img = img + xv(p, i, s) * e
        sigma[v] = img
    return poly_substitute(f, sigma)


def act_row(f: Poly, h: Sequence[Sequence], n: int | None = None) -> Poly:
    """f(hx): the substitution x(i,j) -> sum_q h(i,q) x(q,j)."""
    p = f.p
    n = len(h) if n is None else n
    entries = [[_entry_poly(p, c) for c in r] for r in h]
    sigma = {}
    for v in f.variables():
        if family(v) != X:
            continue
        i, j = decode(v).indices
        if i > n:
            raise DimensionError(f"x({i},{j}) has row beyond n={n}")
        img = Poly.zero(p)
        for q in range(1, n + 1):
            e = entries[i - 1][q - 1]
            if e:
                img = img + xv(p, q, j) * e
        sigma[v] = img
    return poly_substitute(f, sigma)


def embed_j(f: Poly, ctx: RingCtx) -> Poly:
    """View a polynomial on M_{n,n} inside k[M_{n,d}]."""
    ctx.square().check_poly(f)
    return f


# -- unitriangular column reduction and functional factorization ----------------------


def column_reduce_u(x: Sequence[Sequence], p: int) -> Matrix:
    """Upper unitriangular u with xu = (x_1, ..., x_n, 0, ..., 0)."""
    xm = to_matrix(p, x)
    n, d = len(xm), len(xm[0])
    lead = [row[:n] for row in xm]
    _, piv = row_reduce(p, lead)
    if len(piv) < n:
        raise DimensionError("the first n columns are linearly dependent")
    u = identity(p, d)
    for j in range(n, d):
        # solve lead * c = -x_j
        aug = [lead[i] + [(-xm[i][j]) % p if p else -xm[i][j]] for i in range(n)]
        red, _ = row_reduce(p, aug)
        for i in range(n):
            u[i][j] = red[i][n]
    return u


def functional_poly(ell: Sequence[Sequence], p: int) -> Poly:
    """The linear form sum c_ij x(i,j) for the coefficient matrix (c_ij)."""
    terms = {}
    for i, row in enumerate(ell, start=1):
        for j, c in enumerate(row, start=1):
            terms[((encode_x(i, j), 1),)] = c
    return Poly(p, terms)


def factor_functional(ell: Sequence[Sequence], p: int) -> tuple[Matrix, Matrix]:
    """Write ell = g * ell' with ell' supported on the first n columns.

    Returns (g, ell') with ell' as an n x d matrix; the coefficient identity is
    ell = ell' . g^T.  Rows of ell are scanned in order and kept when they are
    independent of the rows kept so far; g^T starts with the kept rows and is
    completed by standard basis vectors in index order.
    """
    c = to_matrix(p, ell)
    n, d = len(c), len(c[0])
    if not any(any(r) for r in c):
        raise ValueError("zero functional")
    kept: list[int] = []
    for i in range(n):
        if len(row_reduce(p, [c[k] for k in kept] + [c[i]])[1]) > len(kept):
            kept.append(i)
    gt = [list(c[k]) for k in kept]
    for e in identity(p, d):
        if len(gt) == d:
            break
        if len(row_reduce(p, gt + [e])[1]) > len(gt):
            gt.append(e)
    zero, one = field.normalize(p, 0), field.normalize(p, 1)
    ell_prime = [[zero] * d for _ in range(n)]
    r = len(kept)
    basis_t = [list(col) for col in zip(*[c[k] for k in kept])]  # d x r
    for i in range(n):
        if i in kept:
            ell_prime[i][kept.index(i)] = one
            continue
        # c_i = sum_k a_k c_{kept[k]}
        aug = [basis_t[s] + [c[i][s]] for s in range(d)]
        red, piv = row_reduce(p, aug)
        for row_idx, col in enumerate(piv):
            if col < r:
                ell_prime[i][col] = red[row_idx][r]
    g = [list(col) for col in zip(*gt)]
    return g, ell_prime


# -- U-invariants and bitableaux ---------------------------------------------


def u_invariant_generators(ctx: RingCtx) -> list[Poly]:
    """Left-initial minors (rows arbitrary, columns 1..r), r = 1..n."""
    out = []
    for r in range(1, ctx.n + 1):
        cols = tuple(range(1, r + 1))
        for rows in itertools.combinations(range(1, ctx.n + 1), r):
            out.append(x_minor(rows, cols, ctx.p))
    return out


def _standard(rows: tuple) -> bool:
    for r in rows:
        if any(a >= b for a, b in zip(r, r[1:])):
            return False
    for upper, lower in zip(rows, rows[1:]):
        if any(a > b for a, b in zip(upper, lower)):
            return False
    return True


def is_standard(bt: BiTableau) -> bool:
    """Rows strictly increasing and columns weakly increasing in both D and E."""
    return _standard(bt.D) and _standard(bt.E)


def bitableau_poly(bt: BiTableau, ctx: RingCtx) -> Poly:
    out = Poly.constant(ctx.p, 1)
    for drow, erow in zip(bt.D, bt.E):
        out = out * minor(MinorSpec(drow, erow), ctx)
    return out
