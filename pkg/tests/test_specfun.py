import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import special

from prabhakar.errors import DomainError, NonConvergent
from prabhakar.specfun import (
    DEFAULT_CONFIG,
    PrabhakarParams,
    SeriesConfig,
    kernel_values,
    ml3,
    ml3_values,
    prabhakar_kernel,
    recip_gamma,
    spectral_K,
    uniform_bound,
    wright_phi,
    wright_values,
)

# reference values computed once with mpmath at 50+ digits
ML3_FROZEN = [
    ((1.0, 1.0, 1.0, 1.0), 2.7182818284590452354),
    ((0.5, 1.0, 1.0, -3.0), 0.17900115118138995042),
    ((0.5, 0.8, 1.2, -1.0), 0.25818999772223758769),
    ((0.6, 1.3, 0.4, -3.0), 0.61947947146724138368),
    ((0.8, 0.5, -0.4, 2.5), -2.7494921799813093737),
    ((1.5, 2.0, 0.5, -4.0), 0.59073357288859214247),
    ((0.3, 1.0, 1.0, -5.0), 0.13708086902027063889),
    ((0.75, 1.2, 0.8, -30.0), 0.044423782902908426953),
    ((2.0, 1.0, 1.0, -9.0), -0.98999249660044545727),
    ((0.9, -0.5, 1.5, 1.5), 23.758209190559924996),
    ((1.0, 2.5, -2.0, 3.0), -0.2794081747093650183),
    ((0.4, 1.0, 0.25, -2.0), 0.73276835480422391629),
]

WRIGHT_FROZEN = [
    ((0.5, 0.5, -1.0), 0.43939128946772239705),
    ((0.3, 1.0, -2.5), 0.09788563397365911794),
    ((0.25, 0.75, -4.0), 0.021989963340478358643),
    ((0.6, 0.4, -1.5), 0.37703149021619494995),
    ((0.5, -0.5, -2.0), 0.10377687435514867584),
    ((0.4, 1.0, 0.7), 1.5109597911705616225),
]

SPECTRAL_FROZEN = [
    ((0.5, 1.0, 1.0, 1.0), 0.15915494309189534561),
    ((0.4, 1.0, 0.25, 2.0), 0.019178835427468579611),
    ((0.4, 1.0, 1.25, 0.01), 2.9133851172180098565),
    ((0.25, 1.0, 4.0, 50.0), 0.0016751481748287916362),
    ((0.7, 1.0, 0.8, 3.0), 0.04627212754022683866),
    ((0.5, 0.8, 1.2, 0.3), 0.32604614326158709581),
]


@pytest.mark.parametrize(("args", "ref"), ML3_FROZEN)
def test_ml3_frozen(args, ref):
    r = ml3(*args)
    assert r.value == pytest.approx(ref, rel=1e-13, abs=1e-15)
    # the error estimate should not be wildly optimistic
    assert abs(r.value - ref) <= 10 * r.err_estimate + 1e-16


@pytest.mark.parametrize(("args", "ref"), WRIGHT_FROZEN)
def test_wright_frozen(args, ref):
    assert wright_phi(*args) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize(("args", "ref"), SPECTRAL_FROZEN)
def test_spectral_frozen(args, ref):
    assert spectral_K(*args) == pytest.approx(ref, rel=1e-13)


def test_reductions():
    z = np.linspace(-10, 10, 21)
    v, _ = ml3_values(1.0, 1.0, 1.0, z)
    # absolute: at z = -10 the alternating series cancels ~4e4 fold
    np.testing.assert_allclose(v, np.exp(z), rtol=1e-13, atol=1e-12)
    v, _ = ml3_values(0.7, 2.5, 0.0, z)
    np.testing.assert_allclose(v, 1.0 / math.gamma(2.5), rtol=1e-15)
    x = np.linspace(0, 3, 7)
    v, _ = ml3_values(2.0, 1.0, 1.0, -(x**2))
    np.testing.assert_allclose(v, np.cos(x), atol=1e-14)
    # E_{1/2}(z) = exp(z^2) erfc(-z)
    v, _ = ml3_values(0.5, 1.0, 1.0, np.array([-2.0, -0.5, 0.5, 1.5]))
    zz = np.array([-2.0, -0.5, 0.5, 1.5])
    np.testing.assert_allclose(v, special.erfcx(-zz), rtol=1e-13)


def test_terminating_gamma_is_polynomial():
    # gamma = -2: 1/Gamma(mu) - 2 z/Gamma(rho+mu) + z^2/Gamma(2 rho+mu)
    rho, mu, z = 0.7, 1.4, 2.3
    expect = 1 / math.gamma(mu) - 2 * z / math.gamma(rho + mu) + z**2 / math.gamma(2 * rho + mu)
    r = ml3(rho, mu, -2.0, z)
    assert r.value == pytest.approx(expect, rel=1e-14)
    # the zero coefficient at k = 3 ends the sum
    assert r.terms_used <= 4


def test_recip_gamma_poles():
    assert recip_gamma(0.0) == 0.0
    assert recip_gamma(-3.0) == 0.0
    assert recip_gamma(4.0) == pytest.approx(1 / 6)
    assert recip_gamma(-0.5) == pytest.approx(1 / math.gamma(-0.5))


def test_wright_closed_form():
    z = np.linspace(0, 4, 9)
    v, _ = wright_values(0.5, 0.5, -z)
    np.testing.assert_allclose(v, np.exp(-(z**2) / 4) / math.sqrt(math.pi), rtol=1e-12, atol=1e-16)


def test_spectral_half_closed_form():
    r = np.array([0.25, 1.0, 4.0])
    np.testing.assert_allclose(spectral_K(0.5, 1, 1, r), r**-0.5 / (math.pi * (1 + r)), rtol=1e-12)


def test_spectral_extreme_arguments_finite():
    r = np.exp(np.array([-700.0, -50.0, 50.0, 700.0]))
    for alpha in (0.3, 1.5, 2.0):
        v = spectral_K(alpha, 1.0, 1.0, r)
        assert np.all(np.isfinite(v))


def test_kernel_matches_definition():
    P = PrabhakarParams(rho=0.6, mu=1.4, omega=-1.5, gamma=0.7)
    t = 0.8
    expect = t ** (P.mu - 1) * ml3(P.rho, P.mu, P.gamma, P.omega * t**P.rho).value
    assert prabhakar_kernel(P, t) == pytest.approx(expect, rel=1e-15)
    assert kernel_values(0.6, 1.4, -1.5, 0.7, np.array([t]))[0] == pytest.approx(expect, rel=1e-15)


def test_errors():
    with pytest.raises(DomainError):
        PrabhakarParams(rho=-1.0, mu=1.0, omega=0.0, gamma=1.0)
    with pytest.raises(DomainError):
        ml3(0.5, 1.0, 1.0, 60.0)
    with pytest.raises(DomainError):
        prabhakar_kernel(PrabhakarParams(1.0, 1.0, 0.0, 1.0), 0.0)
    with pytest.raises(DomainError):
        wright_phi(1.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        ml3(0.5, 1.0, 1.0, 1.0, method="spectral")
    with pytest.raises(DomainError):
        SeriesConfig(tol=2.0)
    # no spectral fallback (mu - rho*gamma >= 1) and heavy cancellation
    with pytest.raises(NonConvergent):
        ml3(0.6, 1.3, 0.4, -8.0)


@settings(max_examples=60, deadline=None)
@given(
    rho=st.floats(0.2, 2.0),
    mu=st.floats(0.2, 3.0),
    z=st.floats(-3.0, 3.0),
)
def test_shift_recurrence(rho, mu, z):
    # E_{rho,mu}(z) = 1/Gamma(mu) + z E_{rho,mu+rho}(z), within the
    # reported estimates (small rho at negative z is poorly conditioned)
    try:
        a = ml3(rho, mu, 1.0, z)
        b = ml3(rho, mu + rho, 1.0, z)
    except NonConvergent:
        assume(False)
    rhs = 1 / math.gamma(mu) + z * b.value
    slack = 2 * (a.err_estimate + abs(z) * b.err_estimate)
    assert abs(a.value - rhs) <= slack + 1e-12 * max(1.0, abs(rhs))


@settings(max_examples=40, deadline=None)
@given(
    rho=st.floats(0.3, 0.95),
    gamma=st.floats(0.2, 1.5),
    lam=st.floats(0.2, 4.0),
)
def test_series_and_spectral_agree(rho, gamma, lam):
    # the forced series may be badly conditioned; its estimate must say so,
    # and past max_cond it refuses instead of returning noise
    p = ml3(rho, 1.0, gamma, -lam, method="spectral")
    try:
        s = ml3(rho, 1.0, gamma, -lam, method="series")
    except NonConvergent:
        assume(False)
    assert abs(s.value - p.value) <= 2 * (s.err_estimate + p.err_estimate) + 1e-14


def test_forced_series_refuses_when_ill_conditioned():
    with pytest.raises(NonConvergent):
        ml3(0.375, 1.0, 1.0, -4.0, method="series")
    assert ml3(0.375, 1.0, 1.0, -4.0).method == "spectral"


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(0.05, 1.0),
    frac=st.floats(0.05, 1.0),
    beta_=st.floats(0.1, 1.0),
    logr=st.floats(-12, 12),
)
def test_spectral_nonnegative_in_density_regime(alpha, frac, beta_, logr):
    # 0 < alpha <= 1 and 0 < alpha*gamma <= beta <= 1
    gamma = frac * beta_ / alpha
    assert spectral_K(alpha, beta_, gamma, math.exp(logr)) >= -1e-15


@settings(max_examples=40, deadline=None)
@given(
    alpha=st.floats(0.3, 0.99),
    extra=st.floats(0.1, 2.0),
    omega=st.floats(0.3, 3.0),
    logt=st.floats(-6.9, 6.9),
)
def test_uniform_bound_property(alpha, extra, omega, logt):
    beta_ = 1.5
    gamma = (beta_ - 1.0) / alpha + extra
    t = math.exp(logt)
    val = kernel_values(alpha, beta_, -omega, gamma, np.array([t]), DEFAULT_CONFIG)[0]
    assert abs(val) <= uniform_bound(alpha, beta_, gamma, omega) * (1 + 1e-9)
