from itertools import combinations, permutations, product
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from grassbord.flag import (
    FlagContext,
    check_lemma_3_3,
    vanishing_pattern,
    is_zero_monomial_fact2,
    absorption_sides,
    normal_form,
    relation_generators,
    staircase_monomial,
    standard_monomials,
    top_class_value,
)
from grassbord.gf2poly import Gf2Poly, monomial, parse_poly
from grassbord.independence import Gf2Matrix, gf2_rank


def P(text):
    return parse_poly(text)


def mono(*exps):
    return Gf2Poly.from_monomial(monomial(*exps))


def flag_polys(N, max_deg=6, max_terms=6):
    m = st.lists(st.integers(0, 4), min_size=N, max_size=N).map(lambda e: monomial(*e))
    return st.lists(m.filter(lambda x: sum(x) <= max_deg), max_size=max_terms).map(Gf2Poly)


def monomials_of_degree(N, deg, max_exp=None):
    max_exp = deg if max_exp is None else max_exp
    for e in product(range(max_exp + 1), repeat=N):
        if sum(e) == deg:
            yield monomial(*e)


class TestRelations:
    def test_small(self):
        assert relation_generators(FlagContext(2)) == [P("e1 + e2"), P("e1*e2")]
        assert relation_generators(FlagContext(3)) == [
            P("e1 + e2 + e3"), P("e1*e2 + e1*e3 + e2*e3"), P("e1*e2*e3")]

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_symmetric(self, N):
        for g in relation_generators(FlagContext(N)):
            for perm in permutations(range(N)):
                moved = Gf2Poly(monomial(*[m[perm[i]] if perm[i] < len(m) else 0 for i in range(N)])
                                for m in g.terms)
                assert moved == g


class TestNormalForm:
    def test_examples(self):
        c2 = FlagContext(2)
        assert normal_form(c2, P("e1")) == P("e2")
        assert normal_form(c2, P("e2^2")) == Gf2Poly.zero()
        assert normal_form(FlagContext(4), Gf2Poly.one()) == Gf2Poly.one()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            normal_form(FlagContext(2), Gf2Poly.var(3))

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
    def test_basis_has_factorial_size(self, N):
        ctx = FlagContext(N)
        std = set(standard_monomials(ctx))
        assert len(std) == factorial(N)
        images = []
        index = {m: i for i, m in enumerate(sorted(std))}
        for deg in range(ctx.top_degree + 2):
            for m in monomials_of_degree(N, deg):
                nf = normal_form(ctx, Gf2Poly.from_monomial(m))
                assert all(t in std for t in nf.terms)
                images.append(sum(1 << index[t] for t in nf.terms))
        assert gf2_rank(Gf2Matrix(len(images), len(std), tuple(images))) == factorial(N)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6).flatmap(lambda N: st.tuples(st.just(N), flag_polys(N))))
    def test_idempotent(self, case):
        N, p = case
        ctx = FlagContext(N)
        nf = normal_form(ctx, p)
        assert normal_form(ctx, nf) == nf

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6).flatmap(lambda N: st.tuples(st.just(N), flag_polys(N, max_deg=4), st.integers(0, N - 1))))
    def test_ideal_vanishes(self, case):
        N, q, which = case
        ctx = FlagContext(N)
        g = relation_generators(ctx)[which]
        assert normal_form(ctx, g * q) == Gf2Poly.zero()

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_matches_sympy_groebner(self, N):
        E = sp.symbols(f"e1:{N + 1}")
        gens = [sum(sp.Mul(*c) for c in combinations(E, m)) for m in range(1, N + 1)]
        G = sp.groebner(gens, *E, order="lex", modulus=2)
        ctx = FlagContext(N)
        for deg in range(ctx.top_degree + 1):
            for m in monomials_of_degree(N, deg):
                expr = sp.Mul(*[E[i] ** a for i, a in enumerate(m)])
                rem = G.reduce(expr)[1]
                expect = Gf2Poly() if rem == 0 else Gf2Poly(
                    monomial(*t) for t, c in sp.Poly(rem, *E, modulus=2).terms() if int(c) % 2)
                assert normal_form(ctx, Gf2Poly.from_monomial(m)) == expect, m


class TestVanishingRule:
    def test_examples(self):
        c3 = FlagContext(3)
        assert is_zero_monomial_fact2(c3, monomial(3))
        assert is_zero_monomial_fact2(c3, monomial(2, 2))
        assert not is_zero_monomial_fact2(c3, monomial(0, 1, 2))
        assert normal_form(c3, mono(2, 2)) == Gf2Poly.zero()

    def test_pattern_with_descending_exponents_is_not_enough(self):
        # e1^2 e2 at N=3 has exponents {2,1,0}: it is the nonzero top class
        c3 = FlagContext(3)
        assert not is_zero_monomial_fact2(c3, monomial(2, 1))
        assert normal_form(c3, mono(2, 1)) == mono(0, 1, 2)

    @pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
    def test_patterns_reduce_to_zero(self, N):
        ctx = FlagContext(N)
        for r in range(1, N + 1):
            for idx in permutations(range(1, N + 1), r):
                m = vanishing_pattern(N, idx)
                assert is_zero_monomial_fact2(ctx, m)
                assert normal_form(ctx, Gf2Poly.from_monomial(m)) == Gf2Poly.zero(), m

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_divisibility_rule_sound(self, N):
        ctx = FlagContext(N)
        for e in product(range(N + 2), repeat=N):
            m = monomial(*e)
            if sum(m) <= ctx.top_degree and is_zero_monomial_fact2(ctx, m):
                assert normal_form(ctx, Gf2Poly.from_monomial(m)) == Gf2Poly.zero(), m


class TestTopClass:
    def test_examples(self):
        c3 = FlagContext(3)
        assert top_class_value(c3, mono(0, 1, 2)) == 1
        assert top_class_value(c3, mono(1, 1, 1)) == 0
        assert top_class_value(c3, mono(2, 1) + mono(0, 2, 1)) == 0

    def test_rejects_wrong_degree(self):
        with pytest.raises(ValueError):
            top_class_value(FlagContext(3), mono(1, 1))

    @pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
    def test_agrees_with_normal_form(self, N):
        ctx = FlagContext(N)
        top = Gf2Poly.from_monomial(ctx.top_monomial())
        assert ctx.top_monomial() == monomial(*range(N))
        for m in monomials_of_degree(N, ctx.top_degree, max_exp=N):
            p = Gf2Poly.from_monomial(m)
            expect = top if top_class_value(ctx, p) else Gf2Poly.zero()
            assert normal_form(ctx, p) == expect, m

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6).flatmap(
        lambda N: st.lists(st.lists(st.integers(0, N), min_size=N, max_size=N), max_size=8)
        .map(lambda rows: (N, rows))))
    def test_invariant_under_reduction(self, case):
        N, rows = case
        ctx = FlagContext(N)
        # rescale each random exponent row onto the top degree
        terms = []
        for row in rows:
            row = list(row)
            while sum(row) < ctx.top_degree:
                row[sum(row) % N] += 1
            while sum(row) > ctx.top_degree:
                i = max(range(N), key=lambda j: row[j])
                row[i] -= 1
            terms.append(monomial(*row))
        p = Gf2Poly(terms)
        assert top_class_value(ctx, p) == top_class_value(ctx, normal_form(ctx, p))


class TestStaircase:
    def test_examples(self):
        assert staircase_monomial(2, 1) == monomial(0, 1)
        assert staircase_monomial(4, 2) == monomial(1, 0, 3, 2, 1)
        assert sum(staircase_monomial(4, 2)) == 7

    def test_degree(self):
        for n in range(2, 9):
            for k in range(1, n):
                N = n + k
                assert sum(staircase_monomial(n, k)) + n * k == N * (N - 1) // 2


class TestAbsorption:
    @pytest.mark.parametrize("n,k,j", [(2, 1, 1), (4, 2, 1), (4, 2, 2), (3, 2, 1)])
    def test_examples(self, n, k, j):
        assert check_lemma_3_3(n, k, j)

    def test_all_small(self):
        cases = [(n, k, j) for n in range(2, 7) for k in range(1, n) for j in range(1, k + 1) if n + k <= 7]
        assert cases
        assert all(check_lemma_3_3(*c) for c in cases)

    def test_sides_shape(self):
        lhs, rhs = absorption_sides(4, 2, 2)
        # N = 6, p = 3: (e1^3 + e2^3) * e1 * e2^5 against e1^4 * e2^5
        assert rhs == mono(4, 5)
        assert lhs == mono(4, 5) + mono(1, 8)

    def test_range(self):
        with pytest.raises(ValueError):
            check_lemma_3_3(2, 2, 1)
