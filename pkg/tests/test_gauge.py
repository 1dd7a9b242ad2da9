"""Gauge-transform behavior of certified constants and validators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorsys import (
    GaugeTransform,
    IncompleteGaugeError,
    apply_gauge,
    build_bmw,
    build_tl_chain,
    check_skein,
    random_gauge,
    validate_braiding,
    validate_system,
)
from tensorsys.catalog import fibonacci_system, ising_system
from tensorsys.relations import _tl_scalar, channel_sum


def gauged_fibonacci(seed, **kw):
    fib = fibonacci_system()
    g = random_gauge(fib.base, seed, **kw)
    out = apply_gauge(fib, g)
    validate_system(out.base)
    return fib, out


def test_gauge_transform_rejects_zero():
    with pytest.raises(IncompleteGaugeError):
        GaugeTransform({("a", "a", "a"): 0.0})


def test_incomplete_gauge_raises():
    fib = fibonacci_system().base
    g = GaugeTransform({("τ", "τ", "τ"): 2.0})
    with pytest.raises(IncompleteGaugeError):
        apply_gauge(fib, g)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=10, deadline=None)
def test_gauged_braided_system_validates(seed):
    _, out = gauged_fibonacci(seed, symmetric=False)
    assert validate_braiding(out).passed


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=10, deadline=None)
def test_constants_invariant_under_general_gauge(seed):
    fib, out = gauged_fibonacci(seed, symmetric=False)
    assert abs(_tl_scalar(out.base, "τ", "1") - _tl_scalar(fib.base, "τ", "1")) < 1e-10
    assert abs(channel_sum(out, "τ", "1") - channel_sum(fib, "τ", "1")) < 1e-10
    d0, _ = build_tl_chain(fib.base, "τ", "1", 3)
    d1, _ = build_tl_chain(out.base, "τ", "1", 3)
    assert abs(d0 - d1) < 1e-10


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=5, deadline=None)
def test_bmw_data_invariant_under_gauge(seed):
    fib, out = gauged_fibonacci(seed, symmetric=False)
    c0 = build_bmw(fib, "τ", "1", L=3)
    c1 = build_bmw(out, "τ", "1", L=3)
    assert abs(c0.d - c1.d) < 1e-10
    # g is defined up to sign, so compare g**2
    assert abs(c0.g_candidates[0] ** 2 - c1.g_candidates[0] ** 2) < 1e-10
    g0, g1 = c0.passing_roots()[0], c1.passing_roots()[0]
    m0, _ = check_skein(fib, "τ", "1", c0.d, g0, L=3)
    m1, _ = check_skein(out, "τ", "1", c1.d, g1, L=3)
    assert abs(abs(m0) - abs(m1)) < 1e-10


def test_unit_modulus_gauge_keeps_unitarity():
    import numpy as np
    from tensorsys import ChainSpec, braid_operator, enumerate_basis
    ising = ising_system()
    out = apply_gauge(ising, random_gauge(ising.base, 3, unit_modulus=True))
    validate_system(out.base)
    basis = enumerate_basis(out.base, ChainSpec(("σ",) * 4, frozenset({"1"})))
    b = braid_operator(out, basis, 2).to_dense()
    assert np.max(np.abs(b @ b.conj().T - np.eye(basis.dimension))) < 1e-10


def test_gauge_inverse_composition():
    fib = fibonacci_system().base
    g = random_gauge(fib, 11, symmetric=False)
    ginv = g.inverse()
    for t in fib.rules.triples:
        assert g(*t) * ginv(*t) == pytest.approx(1)
