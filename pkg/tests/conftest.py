from fractions import Fraction

from hypothesis import strategies as st

from vir26.kappa_field import RatFunc

small = st.integers(min_value=-6, max_value=6)


@st.composite
def ratfuncs(draw, nonzero=False):
    num = draw(st.lists(small, min_size=1, max_size=3))
    den = draw(st.lists(small, min_size=1, max_size=3).filter(lambda d: any(d)))
    r = RatFunc(num, den)
    if nonzero and r == 0:
        r = r + 1
    return r


fractions_ = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(Fraction)
