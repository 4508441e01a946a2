import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prabhakar.errors import DomainError, UnsupportedOrder
from prabhakar.grid import UniformGrid, sample
from prabhakar.operators import (
    OperatorSpec,
    OpKind,
    apply,
    hilfer_prabhakar,
    hilfer_prabhakar_regularized,
    prabhakar_derivative,
    prabhakar_derivative_regularized,
    prabhakar_integral,
)
from prabhakar.specfun import PrabhakarParams


def _cos3(n, a=0.0, b=1.0):
    return sample(
        lambda t: math.cos(3 * t), UniformGrid(a, b, n), derivs=(lambda t: -3 * math.sin(3 * t),)
    )


def test_rl_integral_of_constant():
    g = UniformGrid(0.0, 1.0, 64)
    r = prabhakar_integral(sample(lambda t: 1.0, g), PrabhakarParams(1.0, 0.5, 0.0, 0.0))
    np.testing.assert_allclose(r.values, g.nodes**0.5 / math.gamma(1.5), atol=1e-14)


def test_integral_of_linear_is_exact():
    # gamma = 0, mu = 1 is plain integration
    g = UniformGrid(0.0, 1.0, 16)
    r = prabhakar_integral(sample(lambda t: 2 * t, g), PrabhakarParams(1.0, 1.0, 0.0, 0.0))
    np.testing.assert_allclose(r.values, g.nodes**2, atol=1e-15)


def test_integral_shifted_base_point():
    g = UniformGrid(2.0, 3.0, 32)
    r = prabhakar_integral(sample(lambda t: 1.0, g), PrabhakarParams(1.0, 1.5, 0.0, 0.0))
    np.testing.assert_allclose(r.values, (g.nodes - 2.0) ** 1.5 / math.gamma(2.5), atol=1e-14)


def test_semigroup_second_order():
    P1 = PrabhakarParams(0.7, 0.6, -1.2, 0.5)
    P2 = PrabhakarParams(0.7, 0.9, -1.2, 0.8)
    P12 = PrabhakarParams(0.7, 1.5, -1.2, 1.3)
    errs = []
    for n in (128, 256):
        f = _cos3(n)
        lhs = prabhakar_integral(prabhakar_integral(f, P2), P1)
        errs.append(np.max(np.abs(lhs.values - prabhakar_integral(f, P12).values)))
    assert errs[1] < 1e-5
    assert 1.2 < math.log2(errs[0] / errs[1]) < 2.5


def test_derivative_left_inverse():
    P = PrabhakarParams(0.7, 1.0, -1.2, 0.5)
    errs = []
    for n in (256, 512):
        f = _cos3(n)
        D = prabhakar_derivative(prabhakar_integral(f, P), P)
        mid = n // 2
        errs.append(abs(D.values[mid] - f.values[mid]))
    assert errs[1] < 1e-6
    assert errs[1] < errs[0]


def test_regularized_derivative_kills_constants():
    g = UniformGrid(0.0, 1.0, 64)
    c = sample(lambda t: 3.0, g)
    P = PrabhakarParams(0.7, 0.6, -1.2, 0.5)
    assert np.max(np.abs(prabhakar_derivative_regularized(c, P).values)) == 0.0


def test_derivative_base_node_flagged():
    g = UniformGrid(0.0, 1.0, 32)
    f = sample(lambda t: 1.0 + t, g, derivs=(lambda t: 1.0,))
    D = prabhakar_derivative(f, PrabhakarParams(1.0, 0.5, 0.0, 0.0))
    assert D.flag_mask()[0]
    assert D.values[0] == math.inf
    # D^{1/2}(1 + t) = t^{-1/2}/Gamma(1/2) + t^{1/2}/Gamma(3/2)
    t = g.nodes[1:]
    np.testing.assert_allclose(
        D.values[1:], t**-0.5 / math.gamma(0.5) + t**0.5 / math.gamma(1.5), rtol=1e-10
    )


def test_order_override_must_cover_mu():
    f = _cos3(32)
    with pytest.raises(DomainError):
        prabhakar_derivative_regularized(f, PrabhakarParams(1.0, 1.5, 0.0, 0.0), order=1)


def test_high_order_needs_derivative_samples():
    f = sample(math.exp, UniformGrid(0.0, 1.0, 32))
    with pytest.raises(UnsupportedOrder):
        prabhakar_derivative_regularized(f, PrabhakarParams(1.0, 2.5, 0.0, 0.0))


@pytest.mark.parametrize("n", [64, 256])
def test_hilfer_prabhakar_nu_independent_for_vanishing_start(n):
    p = 2.5
    h = sample(
        lambda t: t ** (p - 1), UniformGrid(0.0, 1.0, n), derivs=(lambda t: (p - 1) * t ** (p - 2),)
    )
    outs = [hilfer_prabhakar(h, 0.4, 0.3, nu, 0.6, -1.0).values for nu in (0.0, 0.5, 1.0)]
    assert np.max(np.abs(outs[0] - outs[2])) <= 1e-12
    assert np.max(np.abs(outs[1] - outs[2])) <= 1e-12
    reg = hilfer_prabhakar_regularized(h, 0.4, 0.3, 0.6, -1.0).values
    np.testing.assert_allclose(reg, outs[2], atol=1e-12)


def test_hilfer_prabhakar_methods_converge_together():
    p = 2.5
    diffs = []
    for n in (128, 256):
        h = sample(
            lambda t: t ** (p - 1), UniformGrid(0.0, 1.0, n), derivs=(lambda t: (p - 1) * t ** (p - 2),)
        )
        b = hilfer_prabhakar(h, 0.4, 0.3, 0.5, 0.6, -1.0).values
        c = hilfer_prabhakar(h, 0.4, 0.3, 0.5, 0.6, -1.0, method="composition").values
        diffs.append(np.max(np.abs(b[1:] - c[1:])))
    assert diffs[1] < 1e-3
    assert diffs[1] < diffs[0]


def test_operator_spec_validation():
    with pytest.raises(DomainError):
        OperatorSpec(OpKind.RL_INTEGRAL)
    with pytest.raises(DomainError):
        OperatorSpec(OpKind.HILFER, mu=1.5, nu=0.5)
    with pytest.raises(DomainError):
        OperatorSpec(OpKind.PRAB_INTEGRAL)
    with pytest.raises(DomainError):
        OperatorSpec(OpKind.HILFER_PRABHAKAR, gamma=0.4, mu=0.3, nu=2.0, rho=0.6, omega=-1.0)
    with pytest.raises(DomainError):
        OperatorSpec(OpKind.HILFER_PRABHAKAR_REGULARIZED, gamma=0.4, mu=0.3, rho=-0.6, omega=-1.0)


def test_apply_dispatch_matches_direct_calls():
    f = _cos3(64)
    P = PrabhakarParams(0.8, 0.7, 0.5, 1.1)
    pairs = [
        (OperatorSpec(OpKind.PRAB_INTEGRAL, P=P), prabhakar_integral(f, P)),
        (OperatorSpec(OpKind.PRAB_DERIVATIVE_REGULARIZED, P=P), prabhakar_derivative_regularized(f, P)),
        (OperatorSpec(OpKind.PRAB_DERIVATIVE, P=P), prabhakar_derivative(f, P)),
        (
            OperatorSpec(OpKind.HILFER_PRABHAKAR, gamma=0.4, mu=0.3, nu=0.2, rho=0.6, omega=-1.0),
            hilfer_prabhakar(f, 0.4, 0.3, 0.2, 0.6, -1.0),
        ),
        (
            OperatorSpec(OpKind.RL_INTEGRAL, alpha=0.5),
            prabhakar_integral(f, PrabhakarParams(1.0, 0.5, 0.0, 0.0)),
        ),
        (
            OperatorSpec(OpKind.CAPUTO, alpha=0.5),
            prabhakar_derivative_regularized(f, PrabhakarParams(1.0, 0.5, 0.0, 0.0)),
        ),
    ]
    for spec, direct in pairs:
        np.testing.assert_array_equal(apply(f, spec).values, direct.values)


@settings(max_examples=30, deadline=None)
@given(
    a=st.floats(-3, 3),
    b=st.floats(-3, 3),
    rho=st.floats(0.3, 1.5),
    mu=st.floats(0.3, 2.0),
    omega=st.floats(-2, 2),
    gamma=st.floats(-1, 2),
)
def test_integral_is_linear(a, b, rho, mu, omega, gamma):
    g = UniformGrid(0.0, 1.0, 32)
    f = sample(math.exp, g)
    h = sample(lambda t: t * t, g)
    P = PrabhakarParams(rho, mu, omega, gamma)
    lhs = prabhakar_integral(a * f + b * h, P).values
    rhs = a * prabhakar_integral(f, P).values + b * prabhakar_integral(h, P).values
    np.testing.assert_allclose(lhs, rhs, rtol=1e-11, atol=1e-11)
