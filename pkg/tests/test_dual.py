from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from liedual import (
    Component,
    Domain,
    DualElement,
    IrreducibleFactorReport,
    LaurentElement,
    RationalFunctionRep,
    cobracket_dual,
    coefficient,
    decompose_components,
    from_rational_function,
    is_in_restricted_dual,
    mu_dual,
    pair,
    partial_dual_derivation,
    to_rational_function,
    translate_rank,
)
from liedual.algebra import DomainMismatch, LieDualError, derive
from liedual.dual import (
    InvalidDualElement,
    cobracket_value,
    characteristic_polynomial,
    decomposition_from_json,
    decomposition_to_json,
    dual_from_json,
    dual_to_json,
)
from liedual.recurrence import rank

from conftest import O, W

P, LR = Domain.POLY, Domain.LAURENT
FIB_POLY = DualElement.recursive([1, 1], [0, 1], domain=P)
FIB_LAURENT = DualElement.recursive([1, 1], [0, 1], domain=LR)
TWO_FIVE = DualElement.recursive([7, -10], [4, 17], domain=LR)


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def x(coeffs, domain=LR):
    return LaurentElement(coeffs, domain)


class TestPairing:
    def test_finite(self):
        assert pair(DualElement.finite({2: 1, 5: 3}), x({5: 1, 2: 1}, P)) == 4

    def test_fibonacci(self):
        assert pair(FIB_POLY, x({6: 1}, P)) == 8

    def test_zero(self):
        assert pair(FIB_LAURENT, x({})) == 0

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            pair(FIB_POLY, x({1: 1}))

    def test_coefficients(self):
        assert coefficient(FIB_POLY, 10) == 55
        assert coefficient(FIB_LAURENT, -1) == 1
        geo = DualElement.recursive([2], [1], domain=LR)
        assert coefficient(geo, -3) == Fraction(1, 8)

    def test_laurent_fibonacci_both_ways(self):
        # f_{-n} = (-1)^(n+1) f_n
        vals = FIB_LAURENT.values(-12, 12)
        for n in range(-12, 13):
            expected = fib(n) if n >= 0 else (-1) ** (-n + 1) * fib(-n)
            assert vals[n + 12] == expected

    def test_poly_extra_seed(self):
        # f_0 is free under the polynomial-dual convention
        f = DualElement.recursive([1, 1], [5, 1, 1], domain=P)
        assert f.values(0, 5) == [5, 1, 1, 2, 3, 5]


class TestValidation:
    def test_laurent_needs_nonzero_hr(self):
        with pytest.raises(InvalidDualElement):
            DualElement.recursive([1, 0], [0, 1], domain=LR)

    def test_seed_count(self):
        with pytest.raises(InvalidDualElement):
            DualElement.recursive([1, 1], [0, 1, 1], domain=LR)
        with pytest.raises(InvalidDualElement):
            DualElement.recursive([1, 1], [0], domain=P)

    def test_poly_anchor(self):
        with pytest.raises(InvalidDualElement):
            DualElement.recursive([1], [1], anchor=2, domain=P)

    def test_poly_finite_negative(self):
        with pytest.raises(InvalidDualElement):
            DualElement.finite({-1: 1}, P)


class TestMembership:
    def test_examples(self):
        assert is_in_restricted_dual(DualElement.finite({3: 1}, P))
        assert not is_in_restricted_dual(DualElement.finite({3: 1}, LR))
        assert is_in_restricted_dual(DualElement.recursive([2], [1], domain=LR))
        assert is_in_restricted_dual(DualElement.zero(LR))
        assert is_in_restricted_dual(FIB_POLY)

    @pytest.mark.parametrize("f", [FIB_LAURENT, TWO_FIVE,
                                   DualElement.recursive([3, -3, 1], [1, 4, 9], anchor=-2)],
                             ids=["fib", "2^n+3*5^n", "n^2"])
    def test_characteristic_annihilates(self, f):
        h = characteristic_polynomial(f.rep.h)
        r = f.rep.order
        for n in range(-10, 11):
            shifted = LaurentElement({e + n - r: c for e, c in h.coeffs.items()}, LR)
            assert pair(f, shifted) == 0


class TestDualOperations:
    def test_mu_dual_examples(self):
        assert mu_dual(2, P).terms == {(0, 2): 1, (1, 1): 1, (2, 0): 1}
        assert mu_dual(0, P).terms == {(0, 0): 1}
        assert mu_dual(0, LR, (-2, 2)).terms == {(i, -i): 1 for i in range(-2, 3)}

    def test_mu_dual_needs_window(self):
        with pytest.raises(LieDualError):
            mu_dual(0, LR)

    @pytest.mark.parametrize("n", range(-4, 5))
    def test_mu_dual_duality(self, n):
        t = mu_dual(n, LR, (-6, 6))
        for i, j in product(range(-6, 7), repeat=2):
            assert t.pair(i, j) == (i + j == n)

    def test_partial_dual_examples(self):
        assert partial_dual_derivation(3) == DualElement.finite({4: 4}, LR)
        assert partial_dual_derivation(-1) == DualElement.zero(LR)
        assert partial_dual_derivation(0) == DualElement.finite({1: 1}, LR)

    @pytest.mark.parametrize("n", range(-5, 6))
    def test_partial_dual_duality(self, n):
        f = partial_dual_derivation(n)
        for i in range(-8, 9):
            assert pair(f, x({i: 1})) == pair(DualElement.finite({n: 1}, LR), derive(x({i: 1})))

    def test_cobracket_examples(self):
        assert cobracket_dual(0, P).terms == {(0, 1): 1, (1, 0): -1}
        assert cobracket_dual(1, P).terms == {(0, 2): 2, (2, 0): -2}
        assert cobracket_dual(0, LR, (-1, 2))[(-1, 2)] == 3

    @pytest.mark.parametrize("domain", [P, LR], ids=["poly", "laurent"])
    def test_cobracket_duality(self, domain):
        lo = 0 if domain is P else -6
        for n in range(max(lo, 0) if domain is P else lo, 7):
            t = cobracket_dual(n, domain, (lo, 7))
            for a, b in product(range(lo, 7), repeat=2):
                # <ε^n, [x^a, x^b]> = (b - a) [a + b - 1 = n]
                assert t[(a, b)] == (b - a) * (a + b - 1 == n)

    def test_cobracket_value_recursive(self):
        assert cobracket_value(FIB_LAURENT, 2, 5) == 3 * fib(6)
        assert cobracket_value(FIB_LAURENT, 3, 3) == 0


class TestDecompose:
    def test_two_components(self):
        comps = decompose_components(TWO_FIVE)
        assert comps == [Component(2, (1,)), Component(5, (3,))]

    def test_single_geometric(self):
        f = DualElement.recursive([Fraction(-1, 3)], [7], domain=LR)
        assert decompose_components(f) == [Component(Fraction(-1, 3), (7,))]

    def test_fibonacci_report(self):
        rep = decompose_components(FIB_LAURENT)
        assert isinstance(rep, IrreducibleFactorReport)
        assert rep.factors == (((1, -1, -1), 1),)
        assert "x**2 - x - 1" in str(rep)

    def test_zero(self):
        assert decompose_components(DualElement.zero(P)) == []
        assert decompose_components(DualElement.recursive([2], [0], domain=LR)) == []

    def test_repeated_root(self):
        # (n^2 + 1) 2^n
        f = DualElement.recursive([6, -12, 8], [1, 4, 20], domain=LR)
        assert decompose_components(f) == [Component(2, (1, 0, 1))]

    def test_poly_with_root_zero(self):
        # f_0 = 9 breaks the geometric rule; the defect is a root-0 component
        f = DualElement.recursive([3], [9, 3], domain=P)
        comps = decompose_components(f)
        assert comps == [Component(0, finite={0: 8}), Component(3, (1,))]

    def test_not_in_restricted_dual(self):
        with pytest.raises(InvalidDualElement):
            decompose_components(DualElement.finite({1: 1}, LR))

    @settings(max_examples=40, deadline=None)
    @given(roots=st.lists(st.sampled_from([-3, -2, -1, Fraction(1, 2), 2, 3, 5]),
                          min_size=1, max_size=3, unique=True),
           weights=st.lists(st.integers(-4, 4).filter(bool), min_size=3, max_size=3))
    def test_reconstruction_and_independence(self, roots, weights):
        # build sum_a w_a a^n from its characteristic polynomial
        poly = [Fraction(1)]
        for a in roots:
            poly = [c - a * p for c, p in zip(poly + [0], [0] + poly)]
        h = [-c for c in poly[1:]]
        target = lambda n: sum(w * Fraction(a) ** n for a, w in zip(roots, weights))
        f = DualElement.recursive(h, [target(n) for n in range(len(h))], domain=LR)
        comps = decompose_components(f)
        assert {c.root for c in comps} == set(roots)
        for n in range(-8, 9):
            assert sum(c(n) for c in comps) == coefficient(f, n) == target(n)
        assert rank([[c(n) for n in range(-8, 9)] for c in comps]) == len(comps)

    def test_json_round_trip(self):
        for f in (TWO_FIVE, FIB_LAURENT):
            res = decompose_components(f)
            assert decomposition_from_json(decomposition_to_json(res)) == res


class TestRationalFunction:
    def test_geometric(self):
        q = to_rational_function(DualElement.recursive([2], [1], domain=P))
        assert (q.num, q.den) == ((1,), (1, -2))

    def test_fibonacci(self):
        q = to_rational_function(FIB_POLY)
        assert (q.num, q.den) == ((0, 1), (1, -1, -1))
        assert q.series(13) == [fib(n) for n in range(13)]

    def test_finite(self):
        q = to_rational_function(DualElement.finite({2: 1}, P))
        assert (q.num, q.den) == ((0, 0, 1), (1,))

    def test_gcd_reduction(self):
        q = RationalFunctionRep((1, -1), (1, -2, 1))
        assert (q.num, q.den) == ((1,), (1, -1))

    def test_laurent_rejected(self):
        with pytest.raises(DomainMismatch):
            to_rational_function(FIB_LAURENT)

    @pytest.mark.parametrize("f", [FIB_POLY, DualElement.recursive([1, 1], [5, 1, 1], domain=P),
                                   DualElement.recursive([3, -2], [1, 0], domain=P)])
    def test_round_trip(self, f):
        back = from_rational_function(to_rational_function(f))
        assert back.values(0, 20) == f.values(0, 20)


class TestTranslateRank:
    def test_one_sided_eps0(self):
        assert translate_rank(O, DualElement.finite({0: 1}, P), (0, 6)) == 2

    def test_zero(self):
        assert translate_rank(W, DualElement.zero(LR), (-5, 5)) == 0

    def test_geometric_stabilizes(self):
        geo = DualElement.recursive([2], [1], domain=LR)
        assert translate_rank(W, geo, (-6, 6)) == translate_rank(W, geo, (-10, 10))


class TestJson:
    @pytest.mark.parametrize("f", [FIB_POLY, FIB_LAURENT, TWO_FIVE,
                                   DualElement.finite({-2: Fraction(3, 4), 5: -1}, LR),
                                   DualElement.recursive([2], [1], anchor=-3)])
    def test_round_trip(self, f):
        assert dual_from_json(dual_to_json(f)) == f

    def test_format(self):
        assert dual_to_json(FIB_POLY) == {
            "domain": "poly",
            "rep": {"type": "recursive", "order": 2, "h": ["1", "1"], "anchor": 0, "seeds": ["0", "1"]},
        }

    def test_malformed(self):
        with pytest.raises(InvalidDualElement):
            dual_from_json({"domain": "poly"})
        with pytest.raises(InvalidDualElement):
            dual_from_json({"domain": "poly", "rep": {"type": "recursive", "order": 3,
                                                      "h": ["1"], "seeds": ["1"]}})
