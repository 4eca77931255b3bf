import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold_lab.fox import BadDeficiency, alexander_matrix, fox_alexander, fox_derivative
from fourfold_lab.laurent import (
    LaurentPolynomial,
    cyclotomic_like,
    divexact,
    gcd,
    gcd_many,
    laurent_det,
)
from fourfold_lab.presentations import Presentation, PresentationError, ShadowFamily
from fourfold_lab.words import Word

L = LaurentPolynomial


def poly(*coeffs, low=0):
    return L(low, coeffs)


def torus_alexander_closed_form(p: int, q: int) -> L:
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), computed by exact division."""
    num = cyclotomic_like(p * q) * cyclotomic_like(1)
    den = cyclotomic_like(p) * cyclotomic_like(q)
    return divexact(num, den).normalized()


def seifert_alexander(v_rows) -> L:
    """det(V - t V^T) for an integer Seifert matrix, as a Laurent polynomial."""
    n = len(v_rows)
    t = L.t()
    mat = [
        [L.monomial(v_rows[i][j]) - t * L.monomial(v_rows[j][i]) for j in range(n)]
        for i in range(n)
    ]
    return laurent_det(mat).normalized()


class TestLaurentRing:
    def test_normalization_trims_zeros(self):
        assert poly(0, 1, 0) == L.t(1)
        assert poly(0, 0) == L.zero()

    def test_add_mul(self):
        a = poly(1, 1)  # 1 + t
        b = poly(-1, 1)  # -1 + t
        assert a * b == poly(-1, 0, 1)
        assert a + b == poly(0, 2)

    def test_laurent_degrees(self):
        p = L(-2, (1, 0, 3))  # t^-2 + 3
        assert p.min_degree == -2
        assert p.max_degree == 0
        assert p.as_dict() == {-2: 1, 0: 3}

    def test_evaluate(self):
        p = poly(1, -3, 1)  # 1 - 3t + t^2
        assert p.evaluate(1) == -1
        assert p.evaluate(-1) == 5
        assert L(-1, (1,)).evaluate(2) == Fraction(1, 2)

    def test_pow(self):
        assert L.t() ** 3 == L.t(3)
        assert (poly(1, 1) ** 2) == poly(1, 2, 1)

    def test_reciprocal_and_palindrome(self):
        p = poly(1, -3, 1)
        assert p.reciprocal() == L(-2, (1, -3, 1))
        assert p.is_palindromic()
        assert not poly(1, -2).is_palindromic()

    def test_normalized_sign_and_shift(self):
        p = L(3, (-1, 3, -1))
        assert p.normalized() == poly(1, -3, 1)

    def test_str(self):
        assert str(poly(1, -3, 1)) == "t^2 - 3*t + 1"
        assert str(L.zero()) == "0"


class TestDivGcd:
    def test_divexact(self):
        num = cyclotomic_like(6)
        den = cyclotomic_like(2)
        assert divexact(num, den) == poly(1, 0, 1, 0, 1)

    def test_divexact_rejects_nondivisor(self):
        with pytest.raises(ValueError):
            divexact(poly(1, 0, 1), poly(1, 1))

    def test_divexact_laurent_shift(self):
        num = L(-1, (1, 1))
        assert divexact(num, L.t(1)) == L(-2, (1, 1))

    def test_gcd_cyclotomic_family(self):
        # gcd(t^a - 1, t^b - 1) = t^gcd(a,b) - 1
        for a, b in [(4, 6), (5, 3), (12, 8), (7, 7)]:
            expected = cyclotomic_like(math.gcd(a, b)).normalized()
            assert gcd(cyclotomic_like(a), cyclotomic_like(b)) == expected

    def test_gcd_with_content(self):
        a = poly(2, 2)  # 2(1 + t)
        b = poly(4, 8, 4)  # 4(1 + t)^2
        assert gcd(a, b) == poly(2, 2)

    def test_gcd_zero_cases(self):
        p = poly(1, 1)
        assert gcd(p, L.zero()) == p.normalized()
        assert gcd(L.zero(), L.zero()) == L.zero()

    def test_gcd_many_shortcircuit(self):
        assert gcd_many([poly(2), poly(3), poly(0, 5)]) == L.one()

    def test_laurent_det(self):
        t = L.t()
        one = L.one()
        m = [[t, one], [one, t]]
        assert laurent_det(m) == poly(-1, 0, 1)
        assert laurent_det([]) == L.one()


class TestFoxDerivative:
    def test_single_letters(self):
        w = Word.gen(0)
        assert fox_derivative(w, 0, [1]) == L.one()
        assert fox_derivative(w.inverse(), 0, [1]) == -L(-1, (1,))

    def test_product_rule(self):
        # d(uv)/dx = du/dx + t^phi(u) dv/dx, on random-ish fixed words
        phi = [1, 2]
        u = Word([(0, 2), (1, -1)])
        v = Word([(1, 1), (0, -1)])
        for g in (0, 1):
            lhs = fox_derivative(u * v, g, phi)
            tu = L.t(sum(e * phi[gg] for gg, e in u.runs))
            rhs = fox_derivative(u, g, phi) + tu * fox_derivative(v, g, phi)
            assert lhs == rhs

    def test_fundamental_identity(self):
        # sum_j d(w)/dx_j * (t^phi(j) - 1) = t^phi(w) - 1
        phi = [1, 3]
        w = Word([(0, 1), (1, -2), (0, 3), (1, 1)])
        total = L.zero()
        for j in range(2):
            total = total + fox_derivative(w, j, phi) * (L.t(phi[j]) - L.one())
        expected = L.t(sum(e * phi[g] for g, e in w.runs)) - L.one()
        assert total == expected


def make_pres(gens, *rels):
    p = Presentation(gens)
    return Presentation(gens, [p.parse_word(r) for r in rels])


class TestAlexander:
    def test_unknot_free_group(self):
        p = Presentation(["a"])
        assert fox_alexander(p) == L.one()

    def test_trefoil_vs_seifert_matrix(self):
        p = make_pres(["a", "b"], "a b a B A B")
        delta = fox_alexander(p)
        assert delta == seifert_alexander([[-1, 1], [0, -1]])
        assert delta == poly(1, -1, 1)

    def test_figure_eight_vs_seifert_matrix(self):
        # fibered-surface presentation: two fiber generators graded 0 and a
        # circle generator graded 1
        p = make_pres(
            ["g1", "g2", "m"],
            "m g1 M G2 G1",
            "m g2 M G2 G1 G2",
        )
        delta = fox_alexander(p)
        assert delta == seifert_alexander([[1, 1], [0, -1]])
        assert delta == poly(1, -3, 1)

    def test_torus_knots_match_closed_form(self):
        for p_, q_ in [(2, 3), (2, 5), (3, 4), (3, 5)]:
            pres = make_pres(["u", "v"], f"u^{p_} v^-{q_}")
            assert fox_alexander(pres) == torus_alexander_closed_form(p_, q_)

    def test_explicit_grading_override(self):
        pres = make_pres(["u", "v"], "u^2 v^-3")
        assert fox_alexander(pres, {"u": 3, "v": 2}) == torus_alexander_closed_form(2, 3)

    def test_alexander_at_one_is_unit(self):
        for rel in ["a b a B A B", "a^3 b^-2"]:
            pres = make_pres(["a", "b"], rel)
            assert abs(fox_alexander(pres).evaluate(1)) == 1

    def test_bad_deficiency_raises(self):
        with pytest.raises(BadDeficiency):
            fox_alexander(make_pres(["a", "b"], "a b", "b a"))

    def test_shadows_rejected(self):
        base = Presentation(["a", "b"])
        fam = ShadowFamily("res", "relators", basis=(base.parse_word("a b A B"),))
        p = Presentation(["a", "b"], [base.parse_word("a b a B A B")], [fam])
        with pytest.raises(PresentationError):
            fox_alexander(p)

    def test_matrix_shape(self):
        pres = make_pres(["a", "b"], "a b a B A B")
        m = alexander_matrix(pres, [1, 1])
        assert len(m) == 1 and len(m[0]) == 2


# -- property tests ------------------------------------------------------------

small_polys = st.builds(
    L,
    st.integers(min_value=-3, max_value=3),
    st.lists(st.integers(min_value=-5, max_value=5), max_size=5),
)


@settings(max_examples=80)
@given(small_polys, small_polys)
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    for p in (a, b):
        if not p.is_zero():
            divexact(p, g)  # raises on failure


@settings(max_examples=80)
@given(small_polys, small_polys)
def test_gcd_symmetric(a, b):
    assert gcd(a, b) == gcd(b, a)


@settings(max_examples=60)
@given(small_polys, small_polys, small_polys)
def test_gcd_scales(a, b, c):
    if c.is_zero():
        return
    lhs = gcd(a * c, b * c)
    rhs = gcd(a, b) * c
    assert lhs.is_associate(rhs)


@settings(max_examples=80)
@given(small_polys, small_polys)
def test_mul_evaluates_consistently(a, b):
    x = Fraction(3, 2)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)


words_st = st.lists(
    st.tuples(st.integers(min_value=0, max_value=2), st.sampled_from([1, -1])),
    max_size=10,
).map(Word.from_letters)


@settings(max_examples=80)
@given(words_st, words_st)
def test_fox_product_rule_property(u, v):
    phi = [1, -2, 3]
    for g in range(3):
        tu = L.t(sum(e * phi[gg] for gg, e in u.runs))
        assert fox_derivative(u * v, g, phi) == fox_derivative(u, g, phi) + tu * fox_derivative(v, g, phi)


@settings(max_examples=80)
@given(words_st)
def test_fox_fundamental_identity_property(w):
    phi = [2, 1, -1]
    total = L.zero()
    for j in range(3):
        total = total + fox_derivative(w, j, phi) * (L.t(phi[j]) - L.one())
    assert total == L.t(sum(e * phi[g] for g, e in w.runs)) - L.one()
