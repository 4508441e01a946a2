r"""Discretized Prabhakar operators on uniform grids.

Everything is built on one quadrature: the Prabhakar integral

.. math::

    (\mathbf{E}^\gamma_{\rho,\mu,\omega,a^+} f)(t) =
        \int_a^t e^\gamma_{\rho,\mu,\omega}(t - y) f(y) \,\mathrm{d}y,

with *f* interpolated linearly between nodes and the kernel integrated
exactly against each linear piece. The weights only need the kernels
:math:`e^\gamma_{\rho,\mu+1,\omega}` and :math:`e^\gamma_{\rho,\mu+2,\omega}`,
which are the first two antiderivatives of the kernel, so the method keeps
second order in spite of the :math:`t^{\mu-1}` singularity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from prabhakar.errors import DomainError, NonConvergent
from prabhakar.grid import SampledFn, UniformGrid, differentiate
from prabhakar.specfun import DEFAULT_CONFIG, PrabhakarParams, SeriesConfig, ml3_values

__all__ = [
    "OpKind",
    "OperatorSpec",
    "apply",
    "classical_ops",
    "hilfer_prabhakar",
    "hilfer_prabhakar_regularized",
    "integer_order",
    "prabhakar_derivative",
    "prabhakar_derivative_regularized",
    "prabhakar_integral",
]


# {{{ quadrature core


def _antiderivatives(
    grid: UniformGrid,
    rho: float,
    mu: float,
    omega: float,
    gamma: float,
    config: SeriesConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Kernels of order mu + 1 and mu + 2 at ``tau = i h``, zero at ``tau = 0``."""
    tau = grid.h * np.arange(1, grid.n + 1)
    z = omega * tau**rho
    try:
        e1, _ = ml3_values(rho, mu + 1.0, gamma, z, config)
        e2, _ = ml3_values(rho, mu + 2.0, gamma, z, config)
    except NonConvergent as exc:
        node = None if exc.node is None else exc.node + 1
        raise NonConvergent(f"kernel moment evaluation failed: {exc}", node=node) from exc

    F1 = np.zeros(grid.n + 1)
    F2 = np.zeros(grid.n + 1)
    F1[1:] = tau**mu * e1
    F2[1:] = tau ** (mu + 1.0) * e2
    return F1, F2


def _weights(
    grid: UniformGrid,
    rho: float,
    mu: float,
    omega: float,
    gamma: float,
    config: SeriesConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Product-trapezoidal weights ``c_plus(l)``, ``c_minus(l)``, ``l = 1..n``.

    For ``mu = 0`` the zero value of the antiderivative at the origin turns
    the jump of ``F1`` into a unit point mass, i.e. the operator becomes the
    identity plus a regular part, as the ``mu -> 0`` limit requires.
    """
    h = grid.h
    F1, F2 = _antiderivatives(grid, rho, mu, omega, gamma, config)
    tau = h * np.arange(grid.n + 1)
    G = tau * F1 - F2

    A = np.diff(F1)
    B = np.diff(G)
    ell = np.arange(1, grid.n + 1)
    c_plus = ell * A - B / h
    c_minus = B / h - (ell - 1) * A
    return c_plus, c_minus


def _integrate(
    sfn: SampledFn,
    rho: float,
    mu: float,
    omega: float,
    gamma: float,
    config: SeriesConfig,
) -> np.ndarray:
    if mu < 0:
        raise DomainError(f"kernel order must be nonnegative: {mu}")

    f = sfn.values
    if not np.all(np.isfinite(f)):
        raise DomainError("operand has non-finite samples")

    if mu == 0.0 and gamma == 0.0:
        return f.copy()

    c_plus, c_minus = _weights(sfn.grid, rho, mu, omega, gamma, config)
    n = sfn.grid.n

    # g_i = sum_{l=1}^{i} c_plus(l) f_{i-l+1} + c_minus(l) f_{i-l}
    g = np.convolve(f, c_plus)[: n + 1]
    g[:n] -= c_plus[:n] * f[0]
    g += np.convolve(f, np.concatenate([[0.0], c_minus]))[: n + 1]
    g[0] = 0.0 if mu > 0 else f[0]
    return g


# }}}


# {{{ helpers


def integer_order(mu: float) -> int:
    """``m = ceil(mu)``; exactly *mu* when it is an integer."""
    return int(math.ceil(mu))


def _check_order(m: int) -> None:
    if m > 2:
        raise DomainError(f"derivative orders above 2 are not supported (m = {m})")


def _extrapolate_base(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Replace the base node by quadratic extrapolation from nodes 1-3, flagged."""
    out = values.copy()
    out[0] = 3.0 * values[1] - 3.0 * values[2] + values[3]
    flags = np.zeros(values.size, dtype=bool)
    flags[0] = True
    return out, flags


def _boundary_derivs(sfn: SampledFn, m: int) -> list[float]:
    """``f^(k)(a+)`` for ``k < m`` from supplied samples or one-sided stencils."""
    out = [float(sfn.values[0])]
    for k in range(1, m):
        out.append(float(differentiate(sfn, k).values[0]))
    return out


# }}}


# {{{ Prabhakar operators


def prabhakar_integral(
    sfn: SampledFn,
    P: PrabhakarParams,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    r"""Prabhakar integral :math:`\mathbf{E}^\gamma_{\rho,\mu,\omega,a^+} f`."""
    g = _integrate(sfn, P.rho, P.mu, P.omega, P.gamma, config)
    return SampledFn(sfn.grid, g)


def prabhakar_derivative_regularized(
    sfn: SampledFn,
    P: PrabhakarParams,
    config: SeriesConfig = DEFAULT_CONFIG,
    *,
    order: int | None = None,
) -> SampledFn:
    r"""Regularized (Caputo-type) Prabhakar derivative
    :math:`\mathbf{E}^{-\gamma}_{\rho,m-\mu,\omega,a^+} f^{(m)}`.

    :arg order: the integer *m*; defaults to :math:`\lceil\mu\rceil`. Larger
        values are allowed since some inequalities are stated for any
        admissible *m*.
    """
    m = integer_order(P.mu) if order is None else int(order)
    if m < P.mu:
        raise DomainError(f"order m = {m} is below mu = {P.mu}")

    dm = differentiate(sfn, m)
    g = _integrate(dm, P.rho, m - P.mu, P.omega, -P.gamma, config)
    values, flags = _extrapolate_base(g)
    return SampledFn(sfn.grid, values, flags=flags)


def prabhakar_derivative(
    sfn: SampledFn,
    P: PrabhakarParams,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    r"""Prabhakar derivative :math:`\mathbf{D}^\gamma_{\rho,\mu,\omega,a^+} f`.

    Computed as the regularized derivative plus the boundary series
    :math:`\sum_{k<m} e^{-\gamma}_{\rho,k-\mu+1,\omega}(t-a) f^{(k)}(a^+)`,
    which avoids differentiating a quadrature. The base node is flagged, and
    set to ``+inf`` when a boundary term is singular there.
    """
    m = integer_order(P.mu)
    _check_order(m)

    reg = prabhakar_derivative_regularized(sfn, P, config)
    values = reg.values.copy()
    tau = sfn.t[1:] - sfn.grid.a

    singular = False
    for k, fk in enumerate(_boundary_derivs(sfn, m)):
        if fk == 0.0:
            continue
        order = k - P.mu + 1.0
        e, _ = ml3_values(P.rho, order, -P.gamma, P.omega * tau**P.rho, config)
        values[1:] += fk * tau ** (order - 1.0) * e
        singular = singular or order < 1.0

    if singular:
        values[0] = math.inf
    else:
        values[0] = 3.0 * values[1] - 3.0 * values[2] + values[3]

    return SampledFn(sfn.grid, values, flags=reg.flags)


def hilfer_prabhakar_regularized(
    sfn: SampledFn,
    gamma: float,
    mu: float,
    rho: float,
    omega: float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    r"""Regularized Hilfer-Prabhakar derivative
    :math:`\mathbf{E}^{-\gamma}_{\rho,1-\mu,\omega,a^+} f'`, independent of
    :math:`\nu`."""
    if not 0.0 < mu < 1.0:
        raise DomainError(f"mu must be in (0, 1): {mu}")
    return prabhakar_derivative_regularized(
        sfn, PrabhakarParams(rho=rho, mu=mu, omega=omega, gamma=gamma), config
    )


def hilfer_prabhakar(
    sfn: SampledFn,
    gamma: float,
    mu: float,
    nu: float,
    rho: float,
    omega: float,
    config: SeriesConfig = DEFAULT_CONFIG,
    *,
    method: Literal["boundary", "composition"] = "boundary",
) -> SampledFn:
    r"""Hilfer-Prabhakar derivative :math:`\mathbf{D}^{\gamma,\mu,\nu}_{\rho,\omega,a^+} f`.

    The defining composition is

    .. math::

        \mathbf{E}^{-\gamma\nu}_{\rho,\nu(1-\mu),\omega,a^+}
        \frac{\mathrm{d}}{\mathrm{d}t}
        \mathbf{E}^{-\gamma(1-\nu)}_{\rho,(1-\nu)(1-\mu),\omega,a^+} f,

    available as ``method="composition"``. For absolutely continuous *f*
    it equals

    .. math::

        \mathbf{E}^{-\gamma}_{\rho,1-\mu,\omega,a^+} f'
        + f(a^+)\, e^{-\gamma}_{\rho,1-\mu,\omega}(t - a),

    which does not depend on :math:`\nu`; the default ``method="boundary"``
    evaluates this form and so gives results that agree across :math:`\nu`
    to rounding.
    """
    if not 0.0 < mu < 1.0:
        raise DomainError(f"mu must be in (0, 1): {mu}")
    if not 0.0 <= nu <= 1.0:
        raise DomainError(f"nu must be in [0, 1]: {nu}")

    if method == "boundary":
        reg = hilfer_prabhakar_regularized(sfn, gamma, mu, rho, omega, config)
        values = reg.values.copy()
        f0 = float(sfn.values[0])
        if f0 != 0.0:
            tau = sfn.t[1:] - sfn.grid.a
            e, _ = ml3_values(rho, 1.0 - mu, -gamma, omega * tau**rho, config)
            values[1:] += f0 * tau ** (-mu) * e
            values[0] = math.inf
        return SampledFn(sfn.grid, values, flags=reg.flags)

    if method != "composition":
        raise DomainError(f"unknown method: {method!r}")

    inner = _integrate(sfn, rho, (1.0 - nu) * (1.0 - mu), omega, -gamma * (1.0 - nu), config)
    dinner = differentiate(SampledFn(sfn.grid, inner), 1)
    values, flags = _extrapolate_base(dinner.values)
    outer = _integrate(
        SampledFn(sfn.grid, values), rho, nu * (1.0 - mu), omega, -gamma * nu, config
    )
    values, flags = _extrapolate_base(outer)
    return SampledFn(sfn.grid, values, flags=flags)


# }}}


# {{{ operator specifications


class OpKind(enum.Enum):
    RL_INTEGRAL = "rl-integral"
    RL_DERIVATIVE = "rl-derivative"
    CAPUTO = "caputo"
    HILFER = "hilfer"
    PRAB_INTEGRAL = "prab-integral"
    PRAB_DERIVATIVE = "prab-derivative"
    PRAB_DERIVATIVE_REGULARIZED = "prab-derivative-reg"
    HILFER_PRABHAKAR = "hilfer-prabhakar"
    HILFER_PRABHAKAR_REGULARIZED = "hilfer-prabhakar-reg"


_CLASSICAL = {OpKind.RL_INTEGRAL, OpKind.RL_DERIVATIVE, OpKind.CAPUTO, OpKind.HILFER}
_WITH_P = {OpKind.PRAB_INTEGRAL, OpKind.PRAB_DERIVATIVE, OpKind.PRAB_DERIVATIVE_REGULARIZED}


@dataclass(frozen=True)
class OperatorSpec:
    """A fractional operator and its parameters.

    Classical kinds use *alpha* (or *mu*, *nu* for Hilfer); Prabhakar kinds
    use *P*; Hilfer-Prabhakar kinds use *gamma*, *mu*, *nu*, *rho*, *omega*.
    """

    kind: OpKind
    alpha: float | None = None
    mu: float | None = None
    nu: float | None = None
    P: PrabhakarParams | None = None
    gamma: float | None = None
    rho: float | None = None
    omega: float | None = None

    def __post_init__(self) -> None:
        k = self.kind
        if k in {OpKind.RL_INTEGRAL, OpKind.RL_DERIVATIVE, OpKind.CAPUTO}:
            if self.alpha is None or not self.alpha > 0:
                raise DomainError(f"{k.value} needs alpha > 0")
            if k != OpKind.RL_INTEGRAL:
                _check_order(integer_order(self.alpha))
        elif k == OpKind.HILFER:
            self._check_hilfer()
        elif k in _WITH_P:
            if self.P is None:
                raise DomainError(f"{k.value} needs Prabhakar parameters")
            if k != OpKind.PRAB_INTEGRAL:
                _check_order(integer_order(self.P.mu))
        else:
            if self.gamma is None or self.rho is None or self.omega is None:
                raise DomainError(f"{k.value} needs gamma, rho and omega")
            if self.rho <= 0:
                raise DomainError("rho must be positive")
            if k == OpKind.HILFER_PRABHAKAR:
                self._check_hilfer()
            elif self.mu is None or not 0.0 < self.mu < 1.0:
                raise DomainError(f"{k.value} needs mu in (0, 1)")

    def _check_hilfer(self) -> None:
        if self.mu is None or not 0.0 < self.mu < 1.0:
            raise DomainError(f"{self.kind.value} needs mu in (0, 1)")
        if self.nu is None or not 0.0 <= self.nu <= 1.0:
            raise DomainError(f"{self.kind.value} needs nu in [0, 1]")

    @property
    def is_classical(self) -> bool:
        return self.kind in _CLASSICAL


def _power_params(alpha: float) -> PrabhakarParams:
    # gamma = 0 turns every Prabhakar kernel into the power-law kernel
    return PrabhakarParams(rho=1.0, mu=alpha, omega=0.0, gamma=0.0)


def classical_ops(
    sfn: SampledFn,
    spec: OperatorSpec,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    """Riemann-Liouville, Caputo and Hilfer operators as ``gamma = 0`` cases."""
    k = spec.kind
    if k == OpKind.RL_INTEGRAL:
        return prabhakar_integral(sfn, _power_params(spec.alpha), config)
    if k == OpKind.RL_DERIVATIVE:
        return prabhakar_derivative(sfn, _power_params(spec.alpha), config)
    if k == OpKind.CAPUTO:
        return prabhakar_derivative_regularized(sfn, _power_params(spec.alpha), config)
    if k == OpKind.HILFER:
        return hilfer_prabhakar(
            sfn, 0.0, spec.mu, spec.nu, 1.0, 0.0, config, method="composition"
        )
    raise DomainError(f"{k.value} is not a classical operator")


def apply(
    sfn: SampledFn,
    spec: OperatorSpec,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> SampledFn:
    """Apply any operator described by *spec*."""
    k = spec.kind
    if spec.is_classical:
        return classical_ops(sfn, spec, config)
    if k == OpKind.PRAB_INTEGRAL:
        return prabhakar_integral(sfn, spec.P, config)
    if k == OpKind.PRAB_DERIVATIVE:
        return prabhakar_derivative(sfn, spec.P, config)
    if k == OpKind.PRAB_DERIVATIVE_REGULARIZED:
        return prabhakar_derivative_regularized(sfn, spec.P, config)
    if k == OpKind.HILFER_PRABHAKAR:
        return hilfer_prabhakar(sfn, spec.gamma, spec.mu, spec.nu, spec.rho, spec.omega, config)
    return hilfer_prabhakar_regularized(sfn, spec.gamma, spec.mu, spec.rho, spec.omega, config)


# }}}
