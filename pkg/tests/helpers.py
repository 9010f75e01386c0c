"""Shared strategies and small utilities for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from feec_bases.forms import DifferentialForm, Polynomial, alternators
from feec_bases.render import parse_form


def P(text, n=3):
    return parse_form(text, n)


@st.composite
def polynomials(draw, n=3, max_deg=4, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[e] = Fraction(draw(st.integers(-9, 9)))
    return Polynomial(n, terms)


@st.composite
def forms(draw, n=3, k=None, max_deg=4):
    if k is None:
        k = draw(st.integers(0, n))
    comps = {}
    for sigma in alternators(k, n):
        if draw(st.booleans()):
            comps[sigma] = draw(polynomials(n, max_deg))
    return DifferentialForm(n, k, comps)
