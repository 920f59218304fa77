import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galtower.exactfield import BACKEND
from galtower.exactfield._kernel import backends

KERNELS = backends()
P = 7
poly = st.lists(st.integers(0, P - 1), max_size=12).map(lambda c: KERNELS["python"].trim(tuple(c)))
nonzero = poly.filter(lambda f: len(f) > 0)

needs_compiled = pytest.mark.skipif("compiled" not in KERNELS, reason="extension not built")


def test_backend_name():
    assert BACKEND in ("compiled", "python")


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(poly, poly)
def test_ring_ops_agree(f, g):
    py, cx = KERNELS["python"], KERNELS["compiled"]
    for name in ("add", "sub", "mul"):
        assert getattr(py, name)(f, g, P) == getattr(cx, name)(f, g, P)
    assert py.neg(f, P) == cx.neg(f, P)
    assert py.deriv(f, P) == cx.deriv(f, P)
    assert py.monic(f, P) == cx.monic(f, P)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(poly, nonzero)
def test_division_agrees(f, g):
    py, cx = KERNELS["python"], KERNELS["compiled"]
    assert py.divmod_(f, g, P) == cx.divmod_(f, g, P)
    assert py.gcd(f, g, P) == cx.gcd(f, g, P)


@settings(max_examples=200, deadline=None)
@given(poly, nonzero)
def test_division_identity(f, g):
    for k in KERNELS.values():
        q, r = k.divmod_(f, g, P)
        assert k.add(k.mul(q, g, P), r, P) == f
        assert len(r) < len(g)


@settings(max_examples=100, deadline=None)
@given(poly, poly)
def test_gcd_divides(f, g):
    for k in KERNELS.values():
        d = k.gcd(f, g, P)
        if d:
            assert d[-1] == 1
            assert k.rem(f, d, P) == () and k.rem(g, d, P) == ()
