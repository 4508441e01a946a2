"""Closed-form reference results and the shipped identity suite.

The test functions are members of the kernel family
:math:`e^\\sigma_{\\rho,\\eta,\\omega}`, which every operator maps to another
member of the family, so both sides of each identity are known without
quadrature.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from prabhakar.errors import DomainError
from prabhakar.grid import SampledFn, UniformGrid
from prabhakar.operators import (
    OperatorSpec,
    OpKind,
    classical_ops,
    hilfer_prabhakar,
    prabhakar_derivative,
    prabhakar_derivative_regularized,
    prabhakar_integral,
)
from prabhakar.reporting import observed_order
from prabhakar.specfun import DEFAULT_CONFIG, PrabhakarParams, SeriesConfig, kernel_values

__all__ = [
    "IdentityCase",
    "identity_suite",
    "oracle_composition",
    "oracle_hp_kernel",
    "oracle_hp_power",
    "oracle_rl_caputo_bridge",
    "run_identity_suite",
    "sample_kernel",
]

Oracle = Callable[[np.ndarray], np.ndarray]


# {{{ oracles


def _kernel_fn(rho: float, mu: float, omega: float, gamma: float, config: SeriesConfig) -> Oracle:
    def f(t: np.ndarray | float) -> np.ndarray:
        scalar = np.isscalar(t)
        out = kernel_values(rho, mu, omega, gamma, np.atleast_1d(np.asarray(t, float)), config)
        return float(out[0]) if scalar else out

    return f


def oracle_composition(
    P: PrabhakarParams,
    sigma: float,
    eta: float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> Oracle:
    r""":math:`t \mapsto e^{\gamma+\sigma}_{\rho,\mu+\eta,\omega}(t)`, the image
    of :math:`e^\sigma_{\rho,\eta,\omega}` under the Prabhakar integral."""
    if eta <= 0:
        raise DomainError(f"eta must be positive: {eta}")
    return _kernel_fn(P.rho, P.mu + eta, P.omega, P.gamma + sigma, config)


def oracle_hp_power(
    p: float,
    gamma: float,
    mu: float,
    rho: float,
    omega: float,
    config: SeriesConfig = DEFAULT_CONFIG,
    *,
    literal: bool = False,
) -> Oracle:
    r"""Hilfer-Prabhakar derivative of :math:`t^{p-1}`,
    :math:`\Gamma(p)\, x^{p-\mu-1} E^{-\gamma}_{\rho,p-\mu}(\omega x^\rho)`.

    Since :math:`t^{p-1} = \Gamma(p)\, e^0_{\rho,p,\omega}(t)`, the factor
    :math:`\Gamma(p)` is required; ``literal=True`` drops it and returns the
    commonly quoted form without it (which is wrong unless ``p`` is 1 or 2).
    """
    if p <= 1:
        raise DomainError(f"p must exceed 1: {p}")
    if not 0.0 < mu < 1.0:
        raise DomainError(f"mu must be in (0, 1): {mu}")

    base = _kernel_fn(rho, p - mu, omega, -gamma, config)
    if literal:
        return base
    scale = math.gamma(p)
    return lambda x: scale * base(x)


def oracle_hp_kernel(
    beta: float,
    gamma: float,
    mu: float,
    rho: float,
    omega: float,
) -> Oracle:
    r"""Hilfer-Prabhakar derivative of :math:`e^\gamma_{\rho,\beta,\omega}`,
    which is the power law :math:`x^{\beta-\mu-1}/\Gamma(\beta-\mu)`."""
    if beta <= 1:
        raise DomainError(f"beta must exceed 1: {beta}")
    if not 0.0 < mu < 1.0:
        raise DomainError(f"mu must be in (0, 1): {mu}")

    scale = 1.0 / math.gamma(beta - mu)
    return lambda x: scale * np.asarray(x, dtype=float) ** (beta - mu - 1.0)


def oracle_rl_caputo_bridge(
    f_caputo: SampledFn,
    boundary_derivs: list[float] | tuple[float, ...],
    alpha: float,
    a: float,
) -> SampledFn:
    r"""Riemann-Liouville derivative from Caputo samples,

    .. math::

        D^\alpha f = {}^C D^\alpha f
            + \sum_{k=0}^{m-1} \frac{(x - a)^{k-\alpha}}{\Gamma(k - \alpha + 1)}
              f^{(k)}(a^+).

    Where a nonzero boundary term is singular at ``x = a`` the value there is
    ``+inf`` and the node is flagged.
    """
    m = int(math.ceil(alpha))
    if len(boundary_derivs) != m:
        raise DomainError(f"need {m} boundary derivatives, got {len(boundary_derivs)}")

    x = f_caputo.t - a
    values = np.array(f_caputo.values, dtype=float)
    flags = f_caputo.flag_mask().copy()
    for k, fk in enumerate(boundary_derivs):
        if fk == 0.0:
            continue
        c = fk / math.gamma(k - alpha + 1.0)
        pos = x > 0
        values[pos] += c * x[pos] ** (k - alpha)
        if k - alpha < 0:
            values[~pos] = math.inf
            flags[~pos] = True

    return SampledFn(f_caputo.grid, values, flags=flags)


def sample_kernel(
    grid: UniformGrid,
    rho: float,
    eta: float,
    omega: float,
    sigma: float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    r"""Sample :math:`e^\sigma_{\rho,\eta,\omega}(t - a)` on *grid*."""
    if eta < 1:
        raise DomainError(f"e^sigma kernel with eta = {eta} < 1 is unbounded at t = a")

    tau = grid.nodes - grid.a
    values = np.empty(grid.n + 1)
    values[1:] = kernel_values(rho, eta, omega, sigma, tau[1:], config)
    values[0] = 1.0 if eta == 1 else 0.0
    return SampledFn(grid, values)


# }}}


# {{{ identity suite


@dataclass(frozen=True)
class IdentityCase:
    name: str
    params: dict[str, Any]
    #: numerical side, built on a given grid
    lhs: Callable[[UniformGrid], SampledFn]
    #: closed-form side
    rhs: Oracle
    #: allowed max interior error on the finest grid
    tol: float = 1.0e-3
    #: required observed order, if the test function is smooth enough
    order_range: tuple[float, float] | None = None
    a: float = 0.0
    b: float = 1.0
    meta: dict[str, Any] = field(default_factory=dict)

    def errors(self, grids: tuple[int, ...]) -> list[float]:
        out = []
        for n in grids:
            grid = UniformGrid(self.a, self.b, n)
            num = self.lhs(grid)
            t = grid.nodes[2:]
            out.append(float(np.max(np.abs(num.values[2:] - self.rhs(t - self.a)))))
        return out


def _composition_cases(config: SeriesConfig) -> list[IdentityCase]:
    cases = []
    for P, sigma, eta in [
        (PrabhakarParams(rho=0.8, mu=0.6, omega=-1.0, gamma=0.5), 0.25, 2.0),
        (PrabhakarParams(rho=0.5, mu=1.3, omega=2.0, gamma=-0.7), 1.1, 2.5),
    ]:
        cases.append(
            IdentityCase(
                name=f"composition(sigma={sigma},eta={eta})",
                params={**vars(P), "sigma": sigma, "eta": eta},
                lhs=lambda g, P=P, s=sigma, e=eta: prabhakar_integral(
                    sample_kernel(g, P.rho, e, P.omega, s, config), P, config
                ),
                rhs=oracle_composition(P, sigma, eta, config),
                tol=1.0e-4,
                order_range=(1.7, 2.3),
            )
        )
    return cases


def _semigroup_cases(config: SeriesConfig) -> list[IdentityCase]:
    rho, omega, mu, gamma, nu = 0.7, -0.8, 0.4, 0.6, 0.5
    lam, sigma, eta = 1.2, 0.3, 2.0
    params = {"rho": rho, "omega": omega, "mu": mu, "gamma": gamma, "nu": nu,
              "lambda": lam, "sigma": sigma, "eta": eta}

    def phi(g: UniformGrid) -> SampledFn:
        return sample_kernel(g, rho, eta, omega, sigma, config)

    def hp(f: SampledFn) -> SampledFn:
        return hilfer_prabhakar(f, gamma, mu, nu, rho, omega, config)

    cases = []
    # derivative after a Prabhakar integral; delta = gamma leaves an RL integral
    for delta in (0.9, gamma):
        Q = PrabhakarParams(rho=rho, mu=lam, omega=omega, gamma=delta)
        name = "hp-after-integral" if delta != gamma else "hp-after-integral(delta=gamma,RL)"
        cases.append(
            IdentityCase(
                name=name,
                params={**params, "delta": delta},
                lhs=lambda g, Q=Q: hp(prabhakar_integral(phi(g), Q, config)),
                rhs=_kernel_fn(rho, lam - mu + eta, omega, delta - gamma + sigma, config),
            )
        )

    # RL integral commutes with the derivative
    rl = OperatorSpec(OpKind.RL_INTEGRAL, alpha=lam)
    rhs = _kernel_fn(rho, lam - mu + eta, omega, sigma - gamma, config)
    cases.append(
        IdentityCase(
            name="rl-integral-after-hp",
            params=params,
            lhs=lambda g: classical_ops(hp(phi(g)), rl, config),
            rhs=rhs,
        )
    )
    cases.append(
        IdentityCase(
            name="hp-after-rl-integral",
            params=params,
            lhs=lambda g: hp(classical_ops(phi(g), rl, config)),
            rhs=rhs,
        )
    )
    return cases


def _example_cases(config: SeriesConfig) -> list[IdentityCase]:
    p, gamma, mu, rho, omega = 2.5, 0.4, 0.3, 0.6, -1.0
    cases = []
    for nu in (0.0, 0.5, 1.0):
        cases.append(
            IdentityCase(
                name=f"hp-of-power(nu={nu})",
                params={"p": p, "gamma": gamma, "mu": mu, "nu": nu, "rho": rho, "omega": omega},
                lhs=lambda g, nu=nu: hilfer_prabhakar(
                    SampledFn(g, g.nodes ** (p - 1.0)), gamma, mu, nu, rho, omega, config
                ),
                rhs=oracle_hp_power(p, gamma, mu, rho, omega, config),
            )
        )

    beta = 2.0
    cases.append(
        IdentityCase(
            name="hp-of-kernel",
            params={"beta": beta, "gamma": gamma, "mu": mu, "nu": 0.5, "rho": rho, "omega": omega},
            lhs=lambda g: hilfer_prabhakar(
                sample_kernel(g, rho, beta, omega, gamma, config), gamma, mu, 0.5, rho, omega, config
            ),
            rhs=oracle_hp_kernel(beta, gamma, mu, rho, omega),
        )
    )
    return cases


def _derivative_cases(config: SeriesConfig) -> list[IdentityCase]:
    cases = []

    caputo = OperatorSpec(OpKind.CAPUTO, alpha=0.5)
    cases.append(
        IdentityCase(
            name="caputo-of-t",
            params={"alpha": 0.5},
            lhs=lambda g: classical_ops(SampledFn(g, g.nodes), caputo, config),
            rhs=lambda t: np.asarray(t) ** 0.5 / math.gamma(1.5),
        )
    )

    P = PrabhakarParams(rho=0.7, mu=0.4, omega=-0.5, gamma=0.3)
    cases.append(
        IdentityCase(
            name="regularized-prabhakar-of-t",
            params=vars(P),
            lhs=lambda g: prabhakar_derivative_regularized(SampledFn(g, g.nodes), P, config),
            rhs=_kernel_fn(P.rho, 2.0 - P.mu, P.omega, -P.gamma, config),
        )
    )

    # second-order case: Prabhakar derivative of a smooth kernel member
    P2 = PrabhakarParams(rho=0.9, mu=1.4, omega=-0.6, gamma=0.5)
    cases.append(
        IdentityCase(
            name="prabhakar-derivative(m=2)",
            params={**vars(P2), "sigma": 0.2, "eta": 4.0},
            lhs=lambda g: prabhakar_derivative(
                sample_kernel(g, P2.rho, 4.0, P2.omega, 0.2, config), P2, config
            ),
            rhs=_kernel_fn(P2.rho, 4.0 - P2.mu, P2.omega, 0.2 - P2.gamma, config),
            order_range=(1.7, 2.3),
        )
    )

    # RL derivative from the Caputo one plus boundary terms
    alpha = 0.5
    rl_params = PrabhakarParams(rho=1.0, mu=alpha, omega=0.0, gamma=0.0)
    cases.append(
        IdentityCase(
            name="rl-caputo-bridge(f=1+t)",
            params={"alpha": alpha},
            lhs=lambda g: prabhakar_derivative(SampledFn(g, 1.0 + g.nodes), rl_params, config),
            rhs=lambda t: np.asarray(t) ** (1 - alpha) / math.gamma(2 - alpha)
            + np.asarray(t) ** (-alpha) / math.gamma(1 - alpha),
        )
    )

    # regularized derivative of f equals the plain one of f - f(a)
    P3 = PrabhakarParams(rho=0.6, mu=0.7, omega=1.5, gamma=0.8)
    sig, et = 0.5, 2.0
    rhs = _kernel_fn(P3.rho, et - P3.mu, P3.omega, sig - P3.gamma, config)
    cases.append(
        IdentityCase(
            name="plain-of-f-minus-f(a)",
            params={**vars(P3), "sigma": sig, "eta": et, "f": "2 + e^sigma_{rho,eta,omega}"},
            lhs=lambda g: prabhakar_derivative(sample_kernel(g, P3.rho, et, P3.omega, sig, config), P3, config),
            rhs=rhs,
        )
    )
    cases.append(
        IdentityCase(
            name="regularized-of-f",
            params={**vars(P3), "sigma": sig, "eta": et, "f": "2 + e^sigma_{rho,eta,omega}"},
            lhs=lambda g: prabhakar_derivative_regularized(
                SampledFn(g, 2.0 + sample_kernel(g, P3.rho, et, P3.omega, sig, config).values), P3, config
            ),
            rhs=rhs,
        )
    )
    return cases


def identity_suite(config: SeriesConfig = DEFAULT_CONFIG) -> list[IdentityCase]:
    """The shipped list of identities, each with both sides available."""
    return (
        _composition_cases(config)
        + _semigroup_cases(config)
        + _example_cases(config)
        + _derivative_cases(config)
    )


def run_identity_suite(
    grids: tuple[int, ...] = (256, 512),
    config: SeriesConfig = DEFAULT_CONFIG,
) -> list[dict[str, Any]]:
    """Evaluate every case at each grid size and summarize."""
    rows = []
    for case in identity_suite(config):
        errs = case.errors(grids)
        order = observed_order(errs, list(grids))
        holds = errs[-1] <= case.tol
        # an exact result (rounding-level error) has no meaningful order
        if case.order_range is not None and errs[-1] > 1.0e-12:
            lo, hi = case.order_range
            holds = holds and order is not None and lo <= order <= hi
        rows.append(
            {
                "name": case.name,
                "params": case.params,
                "grids": list(grids),
                "max_error": errs,
                "order": order,
                "holds": bool(holds),
            }
        )
    return rows


# }}}
