from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from xladder.algebra import AlphaRat, XRat

settings.register_profile(
    "xladder",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("xladder")

small_int = st.integers(-4, 4)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def alpha_polys(draw, max_deg=2, nonzero=False):
    coeffs = draw(st.lists(small_int, min_size=1, max_size=max_deg + 1))
    if nonzero and not any(coeffs):
        coeffs[-1] = draw(st.sampled_from([-2, -1, 1, 3]))
    return AlphaRat(coeffs)


@st.composite
def alpha_rats(draw, nonzero=False):
    num = draw(alpha_polys(nonzero=nonzero))
    den = draw(alpha_polys(max_deg=1, nonzero=True))
    return num / den


@st.composite
def x_polys(draw, max_deg=2, nonzero=False):
    coeffs = draw(st.lists(alpha_polys(max_deg=1), min_size=1, max_size=max_deg + 1))
    p = XRat.poly(coeffs)
    if nonzero and p.is_zero():
        p = XRat.poly([AlphaRat([1]), AlphaRat([0, 1])])
    return p


@st.composite
def x_rats(draw):
    return draw(x_polys()) / draw(x_polys(nonzero=True))


# rational points away from the small integers where denominators above vanish
alpha_points = st.fractions(min_value=-5, max_value=5, max_denominator=97).filter(lambda v: v.denominator > 7)
x_points = st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=97).filter(lambda v: v.denominator > 7)
