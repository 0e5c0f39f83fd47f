import pytest
from hypothesis import strategies as st

from weylzhu.exactmath import GaussRat

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
gauss = st.builds(lambda a, b: GaussRat(a, b), rationals, rationals)


@pytest.fixture
def mu_third():
    return GaussRat.coerce("1/3")
