"""Hypothesis strategies shared across the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from twistorkit.exactalg import BinaryForm, Laurent
from twistorkit.exactalg.scalars import gauss

small = st.integers(-3, 3).map(Fraction)
gaussians = st.builds(gauss, st.integers(-3, 3), st.integers(-3, 3))


def poly_coeffs(max_deg=4, nonzero=False):
    s = st.lists(small, min_size=1, max_size=max_deg + 1)
    return s.filter(lambda c: any(c)) if nonzero else s


@st.composite
def laurents(draw, lo=-3, hi=3, nonzero=False):
    terms = draw(st.dictionaries(st.integers(lo, hi), small, max_size=4))
    p = Laurent.from_dict(terms)
    if nonzero and not p.coeffs:
        p = Laurent.from_dict({draw(st.integers(lo, hi)): Fraction(1)})
    return p


@st.composite
def forms(draw, max_deg=4, scalars=small, nonzero=False):
    d = draw(st.integers(0, max_deg))
    c = draw(st.lists(scalars, min_size=d + 1, max_size=d + 1))
    if nonzero and not any(c):
        c[draw(st.integers(0, d))] = Fraction(1)
    return BinaryForm(d, c)
