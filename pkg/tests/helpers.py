"""Shared strategies and small independent oracles for the test suite."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from vilab.poly import Poly, encode_x

PRIMES = (2, 3, 5, 7)


def coeffs(p):
    if p:
        return st.integers(min_value=0, max_value=p - 1)
    return st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, p, n=2, d=3, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {}
        for _ in range(draw(st.integers(0, 3))):
            v = encode_x(draw(st.integers(1, n)), draw(st.integers(1, d)))
            mono[v] = mono.get(v, 0) + draw(st.integers(1, max_exp))
        terms[tuple(sorted(mono.items()))] = draw(coeffs(p))
    return Poly(p, terms)


def random_matrix(rng: random.Random, p: int, rows: int, cols: int):
    if p:
        return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]


def naive_det(m, p):
    """Leibniz expansion; an oracle independent of the elimination code."""
    import itertools

    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total % p if p else total


def weyl_dimension(lam):
    """dim of the GL_d module with highest weight lam (a partition padded to length d)."""
    d = len(lam)
    num = den = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def ssyt_count(shape, d):
    """Brute-force count of semistandard tableaux (rows weak, columns strict) of a partition shape."""
    import itertools

    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    count = 0
    for vals in itertools.product(range(1, d + 1), repeat=len(cells)):
        t = dict(zip(cells, vals))
        ok = all(t[(r, c)] <= t[(r, c + 1)] for (r, c) in cells if (r, c + 1) in t)
        ok = ok and all(t[(r, c)] < t[(r + 1, c)] for (r, c) in cells if (r + 1, c) in t)
        count += ok
    return count


# -- GF(16) = F_2[a]/(a^4 + a + 1), for faithful evaluation of F_2 polynomials --------


def gf16_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0x10:
            a ^= 0x13
    return r


def gf16_eval(f: Poly, point: dict) -> int:
    assert f.p == 2
    total = 0
    for m, c in f.terms.items():
        val = 1
        for v, e in m:
            for _ in range(e):
                val = gf16_mul(val, point[v])
        total ^= val if c % 2 else 0
    return total
