"""Temperley-Lieb and tangle-algebra relation certification tests."""

import itertools
import math

import pytest

from tensorsys import (
    ChainSpec,
    PreconditionError,
    best_fit_constant,
    bmw_mixed_relations,
    build_bmw,
    build_tl_chain,
    check_homogeneity,
    check_skein,
    enumerate_basis,
    hexagon_variant_scalars,
    identity_operator,
    onedim_tl_constant,
    operator_residual,
    principal_sqrt,
    tl_condition,
    variant_agreement_residual,
    verify_projector_identity,
)
from tensorsys.catalog import (
    cyclic_system,
    fibonacci_system,
    ising_system,
    su2k_system,
)

PHI = (1 + 5 ** 0.5) / 2


def test_principal_sqrt():
    assert principal_sqrt(4) == 2
    assert principal_sqrt(-1) == pytest.approx(1j)
    assert principal_sqrt(1j).real > 0
    # principal branch keeps the root with nonnegative real part
    assert principal_sqrt(-1 - 1e-30j).imag == pytest.approx(-1)


def test_fibonacci_tl_certificate_singleton():
    fib = fibonacci_system().base
    cert = tl_condition(fib, ("τ",) * 4, 1, "1", "1")
    assert cert.singleton and not cert.vacuous
    assert abs(cert.constant - 1 / PHI ** 2) < 1e-12


def test_fibonacci_tl_certificate_prev_matches_next():
    fib = fibonacci_system().base
    nxt = tl_condition(fib, ("τ",) * 5, 2, "1", "1", direction="next")
    prv = tl_condition(fib, ("τ",) * 5, 2, "1", "1", direction="prev")
    assert nxt.singleton and prv.singleton
    assert abs(nxt.constant - prv.constant) < 1e-12


def test_ising_tl_certificate():
    ising = ising_system().base
    for nu in ("1", "ψ"):
        cert = tl_condition(ising, ("σ",) * 4, 2, nu, nu)
        assert cert.singleton
        assert abs(cert.constant - 0.5) < 1e-12


def test_vacuous_certificate():
    ising = ising_system().base
    # σ is not a channel of σ x σ, so the projector gate is closed
    cert = tl_condition(ising, ("σ",) * 4, 1, "σ", "σ")
    assert cert.vacuous and cert.constant is None


def test_certificate_matches_matrix_identity():
    fib = fibonacci_system().base
    lambdas = ("τ",) * 5
    basis = enumerate_basis(fib, ChainSpec(lambdas, frozenset(fib.labels)))
    for i, (nu, nup) in itertools.product(
            range(1, 4), itertools.product(fib.labels, repeat=2)):
        cert = tl_condition(fib, lambdas, i, nu, nup, direction="next")
        if cert.singleton:
            rep = verify_projector_identity(fib, basis, i, i + 1, nu, nup,
                                            cert.constant)
            assert rep.satisfied, (i, nu, nup)
        elif not cert.vacuous:
            fit = best_fit_constant(fib, basis, i, i + 1, nu, nup)
            rep = verify_projector_identity(fib, basis, i, i + 1, nu, nup, fit)
            assert not rep.satisfied, (i, nu, nup)


def test_onedim_constant_matches_certificate():
    ising = ising_system().base
    lambdas = ("σ",) * 4
    for i, nu, nup in [(1, "1", "1"), (1, "1", "ψ"), (2, "ψ", "ψ")]:
        cert = tl_condition(ising, lambdas, i, nu, nup)
        closed = onedim_tl_constant(ising, lambdas, i, nu, nup)
        assert cert.singleton
        assert abs(cert.constant - closed) < 1e-12


def test_onedim_constant_rejects_non_onedim():
    fib = fibonacci_system().base
    with pytest.raises(PreconditionError):
        onedim_tl_constant(fib, ("τ",) * 4, 1, "τ", "τ")


@pytest.mark.parametrize("name,lam,nu,d_expect", [
    ("fibonacci", "τ", "1", PHI),
    ("ising", "σ", "1", math.sqrt(2)),
    ("ising", "σ", "ψ", math.sqrt(2)),
    ("su2k(4)", "1/2", "0", 2 * math.cos(math.pi / 6)),
    ("su2k(5)", "1/2", "0", 2 * math.cos(math.pi / 7)),
    ("su2k(4)", "1", "0", 2.0),
])
def test_tl_chain_constants_and_relations(name, lam, nu, d_expect):
    from tensorsys.catalog import get_system
    sys = get_system(name).base
    d, gens = build_tl_chain(sys, lam, nu, 5)
    assert abs(d - d_expect) < 1e-10
    basis = gens[0].basis
    for i, u in enumerate(gens):
        assert operator_residual(u @ u, d * u) < 1e-10
        for j, v in enumerate(gens):
            if abs(i - j) == 1:
                assert operator_residual(u @ v @ u, u) < 1e-10
            elif abs(i - j) > 1:
                assert operator_residual(u @ v, v @ u) < 1e-10


def test_tl_chain_degenerate_channel():
    sys = cyclic_system(2).base
    # the only channel product equals 1, so d = 1 and the chain is legal
    d, gens = build_tl_chain(sys, "1", "0", 3)
    assert d == pytest.approx(1)


def test_homogeneity_uniform_chain():
    fib = fibonacci_system().base
    rep = check_homogeneity(fib, ("τ",) * 5, ("1",) * 4)
    assert rep.satisfied and rep.residual < 1e-12
    assert all(abs(v - 1 / PHI ** 2) < 1e-12 for v in rep.constants.values())


def test_homogeneity_rejects_multidim_channel():
    fib = fibonacci_system().base
    with pytest.raises(PreconditionError):
        check_homogeneity(fib, ("τ",) * 4, ("τ",) * 3)


def test_homogeneity_mixed_ising_chain():
    ising = ising_system().base
    rep = check_homogeneity(ising, ("σ",) * 4, ("1", "ψ", "1"))
    assert rep.satisfied


def braided_candidates():
    out = []
    for bsys, lam, nu in [
        (fibonacci_system(), "τ", "1"),
        (ising_system(), "σ", "1"),
        (ising_system(), "σ", "ψ"),
        (su2k_system(4), "1", "0"),
    ]:
        out.append(pytest.param(bsys, lam, nu,
                                id=f"{bsys.base.name}-{lam}-{nu}"))
    return out


@pytest.mark.parametrize("bsys,lam,nu", braided_candidates())
def test_hexagon_variant_groups_agree(bsys, lam, nu):
    assert variant_agreement_residual(bsys, lam, nu) < 1e-12
    (s, v1, v4), (sbar, v2, v3) = hexagon_variant_scalars(bsys, lam, nu)
    from tensorsys.relations import _tl_scalar
    c = _tl_scalar(bsys.base, lam, nu)
    # the two groups are inverse partners: their product is the TL constant
    assert abs(s * sbar - c) < 1e-12


@pytest.mark.parametrize("bsys,lam,nu", braided_candidates())
def test_mixed_relations_pass(bsys, lam, nu):
    rep = bmw_mixed_relations(bsys, lam, nu, L=4)
    assert rep.satisfied and rep.residual < 1e-10


@pytest.mark.parametrize("bsys,lam,nu,g_mod,m_expect", [
    (fibonacci_system(), "τ", "1", 1.0, 2 * math.sin(2 * math.pi / 5)),
    (ising_system(), "σ", "1", 1.0, math.sqrt(2 + math.sqrt(2))),
    (su2k_system(4), "1", "0", 1.0, math.sqrt(3)),
])
def test_bmw_certificates(bsys, lam, nu, g_mod, m_expect):
    cert = build_bmw(bsys, lam, nu, L=4)
    roots = cert.passing_roots(1e-10)
    assert len(roots) == 2  # both signs of g satisfy all nine families
    assert cert.proof_identity_residual < 1e-12
    assert cert.scalar_modulus_residual < 1e-12
    for g in roots:
        assert abs(abs(g) - g_mod) < 1e-10
        m, rep = check_skein(bsys, lam, nu, cert.d, g, L=3)
        assert rep.satisfied and m is not None
        assert abs(m.real) < 1e-10
        assert abs(abs(m.imag) - m_expect) < 1e-6


def test_skein_frozen_values():
    fib = fibonacci_system()
    cert = build_bmw(fib, "τ", "1", L=4)
    g = cert.passing_roots()[0]
    m, rep = check_skein(fib, "τ", "1", cert.d, g, L=3)
    assert abs(abs(m) - 1.902113032590307) < 1e-10

    ising = ising_system()
    cert = build_bmw(ising, "σ", "1", L=4)
    for g in cert.passing_roots():
        assert abs(abs(g) - 1) < 1e-12 and abs(g.real) < 1e-12  # g = ±i
        m, rep = check_skein(ising, "σ", "1", cert.d, g, L=3)
        assert abs(abs(m) - 1.847759065022574) < 1e-10


def test_skein_rejects_unit_d():
    cyc = cyclic_system(2)
    with pytest.raises(PreconditionError):
        check_skein(cyc, "1", "0", 1.0, 1.0, L=3)


def test_bmw_wrong_root_fails():
    fib = fibonacci_system()
    cert = build_bmw(fib, "τ", "1", L=4)
    g = cert.passing_roots()[0]
    m, rep = check_skein(fib, "τ", "1", cert.d, 1.3 * g, L=3)
    assert m is None and not rep.satisfied
