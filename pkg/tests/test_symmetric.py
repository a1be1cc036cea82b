import random

import pytest
import sympy as sp
from sympy.polys.polyfuncs import symmetrize

from grassbord.gf2poly import Gf2Poly, monomial, parse_poly
from grassbord.symmetric import (
    elementary_symmetric,
    elementary_symmetric_series,
    power_sum_in_elementary,
    verify_newton,
    weighted_degrees,
)


def S(text):
    return parse_poly(text, var="s")


def test_elementary_examples():
    gens = [Gf2Poly.var(1), Gf2Poly.var(2)]
    assert elementary_symmetric(1, gens) == parse_poly("e1 + e2")
    assert elementary_symmetric(2, gens) == parse_poly("e1*e2")
    assert elementary_symmetric(3, gens) == Gf2Poly.zero()


def test_multiplicities_match_repetition():
    gens = [parse_poly("e1"), parse_poly("e1 + e2"), parse_poly("e3")]
    mults = [5, 6, 3]
    repeated = [g for g, m in zip(gens, mults) for _ in range(m)]
    assert elementary_symmetric_series(8, gens, mults) == elementary_symmetric_series(8, repeated)


def test_elementary_permutation_invariant():
    rng = random.Random(7)
    pool = [parse_poly(t) for t in ("e1", "e2", "e1 + e2", "e3^2", "e1*e3 + 1", "e2 + e4")]
    for _ in range(20):
        gens = [rng.choice(pool) for _ in range(rng.randint(1, 6))]
        shuffled = gens[:]
        rng.shuffle(shuffled)
        for m in range(0, 5):
            assert elementary_symmetric(m, gens) == elementary_symmetric(m, shuffled)


def test_power_sum_examples():
    assert power_sum_in_elementary(1) == S("s1")
    assert power_sum_in_elementary(2) == S("s1^2")
    assert power_sum_in_elementary(3) == S("s1^3 + s1*s2 + s3")


@pytest.mark.parametrize("p", range(1, 9))
def test_power_sum_matches_integer_newton(p):
    # integral expression of the power sum via sympy, reduced mod 2
    y = sp.symbols(f"y1:{p + 1}")
    expr, rem, defs = symmetrize(sum(v ** p for v in y), formal=True)
    assert rem == 0
    s = [d[0] for d in defs]
    poly = sp.Poly(expr, *s)
    expect = Gf2Poly(monomial(*m) for m, c in poly.terms() if int(c) % 2)
    assert power_sum_in_elementary(p) == expect


def test_power_sum_weighted_degree():
    for p in range(1, 21):
        assert weighted_degrees(power_sum_in_elementary(p)) == {p}


@pytest.mark.parametrize("q,p", [(3, 2), (4, 3), (8, 7)])
def test_verify_newton_examples(q, p):
    assert verify_newton(q, p)


def test_verify_newton_range():
    with pytest.raises(ValueError):
        verify_newton(2, 3)
