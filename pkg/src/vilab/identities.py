"""Transformation rules for minors and inner products under the column action.

Each function returns (lhs, rhs) with lhs computed by substituting the
generic matrix and rhs by the closed formula, so callers can compare them.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .groups import bilinear
from .matrix_ring import RingCtx, act_column, g_minor, generic_matrix, x_minor
from .poly import Poly, gv


def cauchy_binet(cols: Sequence[int], ctx: RingCtx) -> tuple[Poly, Poly]:
    """g * (1..n | J)_x  versus  sum_I (1..n | I)_x (I | J)_g."""
    rows = tuple(range(1, ctx.n + 1))
    cols = tuple(cols)
    lhs = act_column(x_minor(rows, cols, ctx.p), generic_matrix(ctx.p, ctx.d), ctx)
    rhs = Poly.zero(ctx.p)
    for idx in itertools.combinations(range(1, ctx.d + 1), ctx.n):
        rhs = rhs + x_minor(rows, idx, ctx.p) * g_minor(idx, cols, ctx.p)
    return lhs, rhs


def inner_product_rule(kind: str, i: int, j: int, ctx: RingCtx) -> tuple[Poly, Poly]:
    """g * <x_i, x_j>  versus  sum_{q,t} <x_q, x_t> g(q,i) g(t,j)."""
    p = ctx.p
    lhs = act_column(bilinear(kind, i, j, ctx), generic_matrix(p, ctx.d), ctx)
    rhs = Poly.zero(p)
    for q in range(1, ctx.d + 1):
        for t in range(1, ctx.d + 1):
            rhs = rhs + bilinear(kind, q, t, ctx) * gv(p, q, i) * gv(p, t, j)
    return lhs, rhs
