from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from liedual import LieElement, Tensor2, Tensor3, act2, act3, bracket, cybe, swap, witt_r
from liedual.algebra import CENTRAL, KindMismatch
from liedual.tensors import tensor2_from_terms, tensor_from_json, tensor_to_json

from conftest import O, V, W, lie_elements, mono


def t2(kind, *terms):
    return tensor2_from_terms(kind, terms)


class TestAct:
    def test_act2_vanishing(self):
        # [x, x^2]⊗1 + x^2⊗[x, 1] = x^2⊗1 - x^2⊗1
        assert not act2(W, mono(1), t2(W, (2, 0, 1)))

    def test_act2_zero_element(self):
        assert not act2(W, LieElement.zero(W), t2(W, (1, 2, 1), (3, -1, 2)))

    def test_act2_constant(self):
        # [1, x] = 1
        assert act2(W, mono(0), t2(W, (1, 1, 1))) == t2(W, (0, 1, 1), (1, 0, 1))

    def test_act3_expands_slotwise(self):
        t = Tensor3(W, {(2, 3, -1): 1})
        x = mono(4)
        expected = {}
        for slot in range(3):
            key = [2, 3, -1]
            br = bracket(W, x, mono(key[slot]))
            for e, c in br.body.coeffs.items():
                k = list(key)
                k[slot] = e
                expected[tuple(k)] = expected.get(tuple(k), 0) + c
        assert act3(W, x, t) == Tensor3(W, expected)

    def test_act3_diagonal(self):
        assert not act3(W, mono(1), Tensor3(W, {(1, 1, 1): 1}))
        assert not act3(W, LieElement.zero(W), Tensor3(W, {(1, 2, 3): 1}))

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatch):
            act2(V, mono(1, V), t2(W, (1, 2, 1)))

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_module_action(self, data):
        kind = data.draw(st.sampled_from([W, V]))
        x = data.draw(lie_elements(kind, -4, 4, 2))
        y = data.draw(lie_elements(kind, -4, 4, 2))
        terms = data.draw(st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                                          st.integers(-3, 3), max_size=3))
        t = Tensor2(kind, terms)
        lhs = act2(kind, x, act2(kind, y, t)) - act2(kind, y, act2(kind, x, t))
        assert lhs == act2(kind, bracket(kind, x, y), t)


class TestSwap:
    def test_swap(self):
        assert swap(t2(W, (1, 2, 1))) == t2(W, (2, 1, 1))

    def test_involution(self):
        t = t2(V, (1, 2, 3), (CENTRAL, -1, Fraction(1, 2)))
        assert swap(swap(t)) == t

    def test_antisymmetric(self):
        r = t2(W, (1, 2, 1), (2, 1, -1))
        assert swap(r) == -r


class TestCybe:
    def test_witt_n2(self):
        assert not cybe(W, t2(W, (1, 2, 1), (2, 1, -1)))

    def test_zero(self):
        assert not cybe(V, Tensor2(V))

    def test_symmetric_fails(self):
        res = cybe(W, t2(W, (1, 3, 1), (3, 1, 1)))
        # [r12,r13] has [x,x^3]⊗x⊗x^3 + [x^3,x]⊗x^3⊗x, etc.; direct expansion gives
        # -4 x⊗x^3⊗x^3 + 4 x^3⊗x^3⊗x after cancellation
        assert res == Tensor3(W, {(1, 3, 3): -4, (3, 3, 1): 4})

    @pytest.mark.parametrize("kind,ns", [(W, range(-5, 6)), (V, range(-5, 6)), (O, range(0, 6))],
                             ids=["witt", "virasoro", "one-sided"])
    def test_family(self, kind, ns):
        for n in ns:
            if n == 1:
                continue
            res = cybe(kind, witt_r(kind, n).underlying)
            assert not res
            assert not [k for k in res.terms if CENTRAL in k]


class TestJson:
    def test_round_trip(self):
        t = t2(V, (3, CENTRAL, Fraction(1, 2)), (-1, 2, -3))
        data = tensor_to_json(t)
        assert data["terms"][0] == {"labels": ["-1", "2"], "coeff": "-3"}
        assert data["terms"][1] == {"labels": ["3", "c"], "coeff": "1/2"}
        assert tensor_from_json(data) == t

    def test_rank3(self):
        t = Tensor3(V, {(3, CENTRAL, -1): Fraction(1, 2)})
        assert tensor_from_json(tensor_to_json(t)) == t

    def test_minus_sign_glyph(self):
        data = {"kind": "virasoro", "terms": [{"labels": ["3", "c", "−1"], "coeff": "1/2"}]}
        assert tensor_from_json(data) == Tensor3(V, {(3, CENTRAL, -1): Fraction(1, 2)})
