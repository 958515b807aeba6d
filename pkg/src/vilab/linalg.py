"""Exact linear algebra: spans of polynomials and small dense matrices.

:class:`SpanBasis` keeps its rows in reduced row-echelon form over the
monomial index (columns ordered by descending graded order, so a row's pivot
is its leading monomial).  Because the rows are fully reduced, reducing a
query needs a single pass over the pivots it touches, and the residual is
the unique representative of ``v + span`` supported off the pivot columns.

With ``track=True`` every row also remembers how it was combined from the
inserted vectors, which is what membership certificates are built from.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Hashable, Iterable, Sequence

from . import field
from .errors import CharacteristicMismatch, DimensionError
from .poly import Monomial, Poly, mono_key


def _axpy(target: dict, src: dict, a, p: int) -> None:
    """target -= a * src, in place, dropping zeros."""
    for k, c in src.items():
        s = target.get(k, 0) - a * c
        if p:
            s %= p
        if s:
            target[k] = s
        else:
            target.pop(k, None)


@dataclass
class SpanMembership:
    member: bool
    coordinates: list  # over the inserted vectors, zeros for unused ones
    residual: Poly
    combination: dict = dc_field(default_factory=dict)  # input index -> coeff

    def __bool__(self) -> bool:
        return self.member


class SpanBasis:
    """Span of polynomials, maintained in reduced row-echelon form."""

    def __init__(self, p: int, track: bool = True):
        self.p = p
        self.track = track
        self.inputs: list = []
        self._rows: dict[Monomial, dict] = {}
        self._occ: dict[Monomial, dict] = {}
        self._comb: dict[Monomial, dict] = {}
        self._one = field.normalize(p, 1)

    @classmethod
    def from_polys(cls, p: int, polys: Iterable[Poly], track: bool = True) -> "SpanBasis":
        basis = cls(p, track)
        for f in polys:
            basis.add(f)
        return basis

    # ---- construction
    def _check(self, v: Poly) -> None:
        if v.p != self.p:
            raise CharacteristicMismatch(self.p, v.p)

    def _reduce(self, terms: dict, comb: dict | None):
        p = self.p
        w = dict(terms)
        coords = {}
        for piv in [m for m in terms if m in self._rows]:
            c = terms[piv]
            coords[piv] = c
            _axpy(w, self._rows[piv], c, p)
            if comb is not None:
                _axpy(comb, self._comb[piv], c, p)
        return w, coords

    def add(self, v: Poly, label: Hashable = None) -> tuple[bool, dict | None]:
        """Insert ``v``.  Returns (independent, dependency).

        When ``v`` is dependent and tracking is on, ``dependency`` is the
        kernel relation over inserted vectors (it includes ``v`` itself).
        """
        self._check(v)
        p = self.p
        idx = len(self.inputs)
        self.inputs.append(v if label is None else label)
        comb = {idx: self._one} if self.track else None
        w, _ = self._reduce(v.terms, comb)
        if not w:
            return False, comb
        lead = max(w, key=mono_key)
        inv = field.inverse(p, w[lead])
        if p:
            w = {m: c * inv % p for m, c in w.items()}
            if comb is not None:
                comb = {k: c * inv % p for k, c in comb.items()}
        else:
            w = {m: c * inv for m, c in w.items()}
            if comb is not None:
                comb = {k: c * inv for k, c in comb.items()}
        for piv in list(self._occ.pop(lead, ())):
            row = self._rows[piv]
            a = row[lead]
            for m, c in w.items():
                s = row.get(m, 0) - a * c
                if p:
                    s %= p
                if s:
                    if m not in row:
                        self._occ.setdefault(m, {})[piv] = None
                    row[m] = s
                elif m in row:
                    del row[m]
                    if m != lead:
                        self._occ[m].pop(piv, None)
            if comb is not None:
                _axpy(self._comb[piv], comb, a, p)
        self._rows[lead] = w
        for m in w:
            if m != lead:
                self._occ.setdefault(m, {})[lead] = None
        if comb is not None:
            self._comb[lead] = comb
        return True, None

    def extend(self, polys: Iterable[Poly]) -> None:
        for f in polys:
            self.add(f)

    # ---- queries
    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[Monomial]:
        return sorted(self._rows, key=mono_key, reverse=True)

    @property
    def rows(self) -> list[Poly]:
        return [Poly._raw(self.p, dict(self._rows[m])) for m in self.pivots]

    @property
    def monomial_index(self) -> list[Monomial]:
        mons = set()
        for row in self._rows.values():
            mons.update(row)
        return sorted(mons, key=mono_key, reverse=True)

    def matrix(self) -> tuple[list[Monomial], list[list]]:
        """Dense RREF matrix over the ambient monomial index."""
        index = self.monomial_index
        pos = {m: i for i, m in enumerate(index)}
        mat = []
        for piv in self.pivots:
            r = [0] * len(index)
            for m, c in self._rows[piv].items():
                r[pos[m]] = c
            mat.append(r)
        return index, mat

    def row_combination(self, piv: Monomial) -> dict:
        return dict(self._comb[piv])

    def reduce(self, v: Poly) -> Poly:
        self._check(v)
        w, _ = self._reduce(v.terms, None)
        return Poly._raw(self.p, w)

    def contains(self, v: Poly) -> bool:
        return not self.reduce(v)

    def __contains__(self, v: Poly) -> bool:
        return self.contains(v)

    def member(self, v: Poly) -> SpanMembership:
        self._check(v)
        w, coords = self._reduce(v.terms, None)
        residual = Poly._raw(self.p, w)
        if w:
            return SpanMembership(False, [], residual, {})
        comb: dict = {}
        if self.track:
            p = self.p
            for piv, c in coords.items():
                _axpy(comb, self._comb[piv], -c if not p else (-c) % p, p)
        coordinates = [comb.get(i, 0) for i in range(len(self.inputs))]
        return SpanMembership(True, coordinates, residual, comb)

    def contains_span(self, other: "SpanBasis") -> bool:
        return all(not self._reduce(r, None)[0] for r in other._rows.values())

    def same_span(self, other: "SpanBasis") -> bool:
        return self.rank == other.rank and self.contains_span(other)


def span_member(basis: SpanBasis, v: Poly) -> SpanMembership:
    """Decide whether ``v`` lies in the span; coordinates refer to the inserted vectors."""
    return basis.member(v)


# -- dense matrices over a field ----------------------------------------------

Matrix = list  # list of rows of canonical field values


def to_matrix(p: int, rows: Sequence[Sequence]) -> Matrix:
    return [[field.normalize(p, c) for c in r] for r in rows]


def identity(p: int, n: int) -> Matrix:
    one = field.normalize(p, 1)
    zero = field.normalize(p, 0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(p: int, a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    bt = list(zip(*b))
    out = []
    for r in a:
        row = []
        for col in bt:
            s = sum(x * y for x, y in zip(r, col))
            row.append(s % p if p else s)
        out.append(row)
    return out


def row_reduce(p: int, a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (pivot search scans rows in index order) and pivot columns."""
    m = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inverse(p, m[r][c])
        m[r] = [(x * inv) % p if p else x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [((x - f * y) % p if p else x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(p: int, a: Matrix) -> int:
    return len(row_reduce(p, a)[1]) if a else 0


def inverse(p: int, a: Matrix) -> Matrix:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("matrix is not square")
    aug = [list(r) + e for r, e in zip(a, identity(p, n))]
    red, piv = row_reduce(p, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def solve(p: int, a: Matrix, b: Sequence) -> list | None:
    """One solution of a x = b, or None when inconsistent."""
    ncols = len(a[0])
    aug = [list(r) + [field.normalize(p, bi)] for r, bi in zip(a, b)]
    red, piv = row_reduce(p, aug)
    if ncols in piv:
        return None
    x = [field.normalize(p, 0)] * ncols
    for i, c in enumerate(piv):
        x[c] = red[i][ncols]
    return x


def determinant(p: int, a: Matrix):
    n = len(a)
    m = [list(r) for r in a]
    det = field.normalize(p, 1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return field.normalize(p, 0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det = det * m[c][c]
        inv = field.inverse(p, m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
                if p:
                    m[i] = [x % p for x in m[i]]
    return det % p if p else det
