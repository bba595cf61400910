import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ffcn.ff_core import FieldCtx

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

F3 = FieldCtx(3)
F5 = FieldCtx(5)


@pytest.fixture
def F():
    return F3


@st.composite
def polys(draw, ctx=None, max_deg=5, nonzero=False, monic=False):
    ctx = ctx or draw(st.sampled_from([F3, F5]))
    deg = draw(st.integers(0 if nonzero or monic else -1, max_deg))
    if deg < 0:
        return ctx.zero
    coeffs = draw(st.lists(st.integers(0, ctx.q - 1), min_size=deg, max_size=deg))
    lead = 1 if monic else draw(st.integers(1, ctx.q - 1))
    return ctx.poly(coeffs + [lead])


@st.composite
def poly_pairs(draw, max_deg=5, nonzero_second=False):
    ctx = draw(st.sampled_from([F3, F5]))
    return draw(polys(ctx, max_deg)), draw(polys(ctx, max_deg, nonzero=nonzero_second))
