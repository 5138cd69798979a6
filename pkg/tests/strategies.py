"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from multiphoton.algebra import ExactScalar, OperatorPoly, PolyCoeff

SYMBOLS = ("mu", "nu", "gt")

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def scalars(draw):
    parts = draw(st.lists(fractions, min_size=4, max_size=4))
    return ExactScalar(*parts)


@st.composite
def coeffs(draw, symbolic=True):
    c = PolyCoeff.const(draw(scalars()))
    if symbolic and draw(st.booleans()):
        name = draw(st.sampled_from(SYMBOLS + tuple(s + "_bar" for s in SYMBOLS)))
        c = c * PolyCoeff.symbol(name, draw(st.integers(1, 2)))
    return c


@st.composite
def operators(draw, max_degree=3, symbolic=True):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        m = draw(st.integers(0, max_degree))
        n = draw(st.integers(0, max_degree - m))
        terms[(m, n)] = draw(coeffs(symbolic))
    return OperatorPoly(terms)


words = st.lists(st.sampled_from(("a", "ad")), min_size=0, max_size=7)
