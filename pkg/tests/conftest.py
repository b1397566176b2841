from fractions import Fraction

import pytest
from hypothesis import strategies as st

from liedual import AlgebraKind, LieElement

W, V, O = AlgebraKind.WITT, AlgebraKind.VIRASORO, AlgebraKind.ONE_SIDED_WITT
ALL_KINDS = (O, W, V)


def mono(e, kind=W, c=1):
    return LieElement.monomial(e, kind, c)


small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def lie_elements(draw, kind, lo=-10, hi=10, max_terms=4):
    if kind is O:
        lo = max(lo, 0)
    coeffs = draw(st.dictionaries(st.integers(lo, hi), small_rationals, max_size=max_terms))
    central = draw(small_rationals) if kind is V else 0
    return LieElement.from_coeffs(coeffs, kind, central)


@pytest.fixture(params=ALL_KINDS, ids=lambda k: k.value)
def kind(request):
    return request.param
