import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from diasalg.catalog import random_two_step  # noqa: E402
from diasalg.kernel import GF, QQ, Matrix  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [QQ, GF(2), GF(7)]

fields = st.sampled_from(FIELDS)


@st.composite
def matrices(draw, field=None, max_rows=5, max_cols=5, cols=None):
    f = field or draw(fields)
    r = draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    vals = st.integers(-3, 3) if not f.is_prime else st.integers(0, f.p - 1)
    rows = draw(st.lists(st.lists(vals, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_dense(f, rows, c)


@st.composite
def small_two_step(draw, max_n=3, max_m=3):
    f = draw(fields)
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(0, max_m))
    seed = draw(st.integers(0, 2 ** 31 - 1))
    return random_two_step(n, m, f, seed)
