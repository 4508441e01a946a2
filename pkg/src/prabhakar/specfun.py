r"""Scalar special functions.

The central object is the three-parameter Mittag-Leffler function

.. math::

    E^\gamma_{\rho,\mu}(z) = \sum_{k=0}^\infty
        \frac{(\gamma)_k}{\Gamma(\rho k + \mu)} \frac{z^k}{k!},

evaluated by its power series with compensated summation and an explicit
error estimate. For large negative arguments the series loses all accuracy to
cancellation; when the parameters allow it we switch to the Laplace-type
representation through the spectral kernel :func:`spectral_K` instead.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import integrate, special

from prabhakar.errors import DomainError, NonConvergent

__all__ = [
    "DEFAULT_CONFIG",
    "MLValue",
    "PrabhakarParams",
    "SeriesConfig",
    "beta",
    "kernel_values",
    "ml3",
    "ml3_values",
    "prabhakar_kernel",
    "recip_gamma",
    "spectral_K",
    "uniform_bound",
    "wright_phi",
    "wright_values",
]

EPS = float(np.finfo(float).eps)

# series condition number above which a negative argument is handed to the
# spectral route (when that route applies)
SPECTRAL_SWITCH_COND = 1.0e3

MLMethod = Literal["auto", "series", "spectral"]


# {{{ configuration and value types


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation and range controls for the power series.

    Passed explicitly to every evaluation; there is no global state.
    """

    tol: float = 1.0e-14
    max_terms: int = 2000
    z_max: float = 50.0
    #: evaluations whose condition number exceeds this raise NonConvergent
    max_cond: float = 1.0e12

    def __post_init__(self) -> None:
        if not 0.0 < self.tol < 1.0:
            raise DomainError(f"tol must be in (0, 1): {self.tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be positive: {self.max_terms}")
        if self.z_max <= 0:
            raise DomainError(f"z_max must be positive: {self.z_max}")
        if self.max_cond < 1:
            raise DomainError(f"max_cond must be at least 1: {self.max_cond}")


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class PrabhakarParams:
    r"""Parameters of the kernel :math:`e^\gamma_{\rho,\mu,\omega}`."""

    rho: float
    mu: float
    omega: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("rho", "mu", "omega", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.rho <= 0:
            raise DomainError(f"rho must be positive: {self.rho}")
        if self.mu <= 0:
            raise DomainError(f"mu must be positive: {self.mu}")


@dataclass(frozen=True)
class MLValue:
    value: float
    #: estimate of the absolute error (truncation plus rounding)
    err_estimate: float
    terms_used: int
    #: "series" or "spectral"
    method: str = "series"


# }}}


# {{{ gamma helpers


def recip_gamma(x: float) -> float:
    """Reciprocal Gamma function, exactly zero at the poles of Gamma."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"recip_gamma needs a finite argument: {x}")
    return _rgamma_exact(x)


def beta(a: float, b: float) -> float:
    return float(special.beta(a, b))


def _rgamma_exact(x: float) -> float:
    if x <= 0 and x == math.floor(x):
        return 0.0
    return float(special.rgamma(x))


def _log_rgamma(x: float) -> tuple[float, float, float]:
    """Return ``(log|1/Gamma(x)|, sign, log envelope)``.

    The envelope bounds ``|1/Gamma(x)|`` smoothly: for ``x <= 0`` we use
    ``Gamma(1 - x) / pi`` from the reflection formula, so a term sitting next
    to a pole cannot fake convergence of the series.
    """
    if x > 0:
        lg = -math.lgamma(x)
        return lg, 1.0, lg

    lenv = math.lgamma(1.0 - x) - math.log(math.pi)
    if x == math.floor(x):
        return -math.inf, 0.0, lenv

    return -math.lgamma(x), float(special.gammasgn(x)), lenv


# }}}


# {{{ generic series


def _sum_series(
    z: np.ndarray,
    slope: float,
    offset: float,
    poch: float | None,
    config: SeriesConfig,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    r"""Sum :math:`\sum_k c_k z^k / (k!\,\Gamma(\mathrm{offset} + \mathrm{slope}\,k))`.

    Here :math:`c_k = (\mathrm{poch})_k` or 1 when *poch* is None. Terms are
    formed in log-magnitude form so that huge Pochhammer or power factors and
    tiny reciprocal Gammas never overflow separately.

    :returns: values, absolute error estimates, terms used and condition
        numbers, all with the shape of *z*.
    """
    z = np.asarray(z, dtype=float).ravel()
    npts = z.size

    with np.errstate(divide="ignore"):
        logz = np.log(np.abs(z))
    sz = np.where(z < 0, -1.0, 1.0)

    # coefficients are tracked both directly (more accurate) and in
    # log-magnitude form (safe from overflow)
    alin = np.ones(npts)
    loga = np.zeros(npts)
    sa = np.ones(npts)

    total = np.zeros(npts)
    comp = np.zeros(npts)
    abssum = np.zeros(npts)
    tail = np.zeros(npts)
    terms = np.zeros(npts, dtype=np.int64)
    active = np.ones(npts, dtype=bool)

    lrg, srg, lenv = _log_rgamma(offset)
    for k in range(config.max_terms):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break

        la = loga[idx]
        lterm = la + lrg
        if np.any(lterm > 700.0):
            raise NonConvergent(
                f"series term overflow at k={k}",
                node=int(idx[np.argmax(lterm)]),
            )

        x = offset + slope * k
        al = alin[idx]
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            if x < 170.0 and lrg < 690.0 and np.all(np.abs(al) < 1.0e250):
                term = al * _rgamma_exact(x)
            else:
                term = sa[idx] * srg * np.exp(lterm)
            env = np.exp(la + lenv)

        # Kahan update
        y = term - comp[idx]
        t = total[idx] + y
        comp[idx] = (t - total[idx]) - y
        total[idx] = t
        abssum[idx] += np.abs(term)

        # advance coefficients to k + 1
        with np.errstate(over="ignore", invalid="ignore"):
            if poch is not None:
                p = poch + k
                alin[idx] *= p * z[idx] / (k + 1)
                if p == 0.0:
                    loga[idx] = -np.inf
                else:
                    loga[idx] += math.log(abs(p))
                    sa[idx] *= math.copysign(1.0, p)
            else:
                alin[idx] *= z[idx] / (k + 1)
        loga[idx] += logz[idx] - math.log(k + 1)
        sa[idx] *= sz[idx]

        lrg, srg, lenv = _log_rgamma(offset + slope * (k + 1))
        with np.errstate(under="ignore"):
            env_next = np.exp(loga[idx] + lenv)

        conv = (env <= config.tol * np.abs(total[idx])) & (
            (env_next < env) | (env_next == 0.0)
        )
        if np.any(conv):
            cidx = idx[conv]
            ratio = np.divide(
                env_next[conv], env[conv], out=np.zeros(cidx.size), where=env[conv] > 0
            )
            tail[cidx] = env_next[conv] / (1.0 - ratio)
            terms[cidx] = k + 1
            active[cidx] = False

    if np.any(active):
        raise NonConvergent(
            f"series did not converge within {config.max_terms} terms",
            node=int(np.flatnonzero(active)[0]),
        )

    value = total
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(abssum == 0.0, 1.0, abssum / np.abs(value))
    err = tail + 2.0 * EPS * abssum

    return value, err, terms, cond


# }}}


# {{{ spectral route


def _spectral_applies(rho: float, mu: float, gamma: float) -> bool:
    return 0.0 < rho < 1.0 and gamma > 0.0 and mu > 0.0 and mu - rho * gamma < 1.0


def _ml3_spectral(rho: float, mu: float, gamma: float, lam: float) -> tuple[float, float]:
    r"""Evaluate :math:`E^\gamma_{\rho,\mu}(-\lambda)` for :math:`\lambda > 0`.

    Uses :math:`E^\gamma_{\rho,\mu}(-\lambda) = T^{-\mu} \int_0^\infty
    e^{-u} K^\gamma_{\rho,\mu}(u / T) \,\mathrm{d}u` with
    :math:`T = \lambda^{1/\rho}`, integrated in the variable :math:`x = \log u`.
    """
    T = lam ** (1.0 / rho)
    logT = math.log(T)
    c = rho * gamma - mu + 1.0
    phase = math.pi * (mu - rho * gamma)
    sin_a = math.sin(math.pi * rho)
    cos_a = math.cos(math.pi * rho)

    def integrand(x: float) -> float:
        u = math.exp(x)
        ra = math.exp(rho * (x - logT))
        theta = math.atan2(ra * sin_a, 1.0 + ra * cos_a)
        r2 = ra * ra + 2.0 * ra * cos_a + 1.0
        return math.exp(c * x - u) * math.sin(gamma * theta + phase) * r2 ** (-0.5 * gamma)

    # breakpoints: decay of e^{cx} on the left, the e^{-u} cutoff on the
    # right and the transition of the kernel near u = T
    breaks = sorted({-8.0 / c if c < 1 else -8.0, 0.0, min(max(logT, -30.0), 4.0)})
    pieces = [(-math.inf, breaks[0])]
    pieces += [(lo, hi) for lo, hi in zip(breaks[:-1], breaks[1:]) if hi > lo]
    pieces.append((breaks[-1], math.log(800.0)))

    total = 0.0
    abserr = 0.0
    # quad flags roundoff when a piece reaches the requested 1e-13 at the
    # rounding floor; mpmath checks put the result at ~1e-16 there
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in pieces:
            val, err = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1.0e-13, limit=200)
            total += val
            abserr += err

    scale = T ** (-rho * gamma) / math.pi
    return scale * total, scale * abserr + 4.0 * EPS * abs(scale * total)


@functools.lru_cache(maxsize=8)
def _gauss_panels(lo: float, hi: float, width: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    npanels = max(1, math.ceil((hi - lo) / width))
    edges = np.linspace(lo, hi, npanels + 1)
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _ml3_spectral_fixed(
    rho: float, mu: float, gamma: float, lam: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Array version of :func:`_ml3_spectral` on a fixed composite rule.

    Meant for the routed arguments, which have ``lam**(1/rho) > 12`` so the
    kernel transition sits to the right of ``log u = 2``.
    """
    lam = np.asarray(lam, dtype=float)
    c = rho * gamma - mu + 1.0
    phase = math.pi * (mu - rho * gamma)
    sin_a = math.sin(math.pi * rho)
    cos_a = math.cos(math.pi * rho)

    # e^{cx} is below 1e-17 left of x_lo; e^{-u} is negligible past u = 800.
    # The kernel factor has complex singularities a distance pi(1-rho)/rho
    # from the real axis, which sets the panel width on the right part.
    x_lo = -40.0 / c
    width = min(0.25, 0.5 * math.pi * (1.0 - rho) / rho)
    xl, wl = _gauss_panels(min(x_lo, -2.0), -2.0, 2.0, 20)
    xr, wr = _gauss_panels(-2.0, math.log(800.0), width, 20)
    x = np.concatenate([xl, xr])
    w = np.concatenate([wl, wr])

    logT = np.log(lam) / rho
    ra = np.exp(rho * (x[None, :] - logT[:, None]))
    theta = np.arctan2(ra * sin_a, 1.0 + ra * cos_a)
    r2 = ra * ra + 2.0 * ra * cos_a + 1.0
    with np.errstate(under="ignore"):
        f = np.exp(c * x - np.exp(x))[None, :] * np.sin(gamma * theta + phase) * r2 ** (-0.5 * gamma)

    scale = np.exp(-rho * gamma * logT) / math.pi
    total = scale * (f @ w)
    err = scale * 64.0 * EPS * (np.abs(f) @ w)
    return total, err


# }}}


# {{{ Mittag-Leffler


def _route_spectral(
    rho: float,
    mu: float,
    gamma: float,
    zf: np.ndarray,
    config: SeriesConfig,
    method: MLMethod,
) -> np.ndarray:
    """Initial choice of evaluation route, True where the spectral one is used."""
    can_spectral = _spectral_applies(rho, mu, gamma)
    if method == "spectral":
        if not can_spectral or np.any(zf >= 0):
            raise DomainError(
                "spectral route needs z < 0, 0 < rho < 1, gamma > 0, mu > 0 "
                "and mu - rho * gamma < 1"
            )
        return np.ones(zf.size, dtype=bool)

    too_big = np.abs(zf) > config.z_max
    if method == "auto" and can_spectral:
        # |z|^(1/rho) is the exponential growth rate of the absolute series,
        # beyond ~12 the cancellation is certainly worse than the switch level
        to_spectral = (zf < 0) & (too_big | (np.abs(zf) ** (1.0 / rho) > 12.0))
        too_big &= ~to_spectral
    else:
        to_spectral = np.zeros(zf.size, dtype=bool)

    if np.any(too_big):
        i = int(np.flatnonzero(too_big)[0])
        raise DomainError(f"|z| = {abs(zf[i])} exceeds z_max = {config.z_max}")

    return to_spectral


def _ml3_dispatch(
    rho: float,
    mu: float,
    gamma: float,
    z: np.ndarray,
    config: SeriesConfig,
    method: MLMethod,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if rho <= 0 or not math.isfinite(rho):
        raise DomainError(f"rho must be positive: {rho}")

    zf = np.asarray(z, dtype=float).ravel()
    if not np.all(np.isfinite(zf)):
        raise DomainError("ml3 argument must be finite")

    to_spectral = _route_spectral(rho, mu, gamma, zf, config, method)
    can_redo = method == "auto" and _spectral_applies(rho, mu, gamma)

    values = np.empty(zf.size)
    errs = np.empty(zf.size)
    terms = np.ones(zf.size, dtype=np.int64)

    sidx = np.flatnonzero(~to_spectral)
    if sidx.size:
        v, e, n, cond = _sum_series(zf[sidx], rho, mu, gamma, config)
        values[sidx] = v
        errs[sidx] = e
        terms[sidx] = n

        bad = cond > SPECTRAL_SWITCH_COND
        if can_redo:
            redo = bad & (zf[sidx] < 0)
            to_spectral[sidx[redo]] = True
            bad &= ~redo
        bad &= cond > config.max_cond
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise NonConvergent(
                f"series condition number {cond[i]:.3e} exceeds "
                f"{config.max_cond:.1e} at z = {zf[sidx[i]]}",
                node=int(sidx[i]),
            )

    return values, errs, terms, to_spectral


def ml3_values(
    rho: float,
    mu: float,
    gamma: float,
    z: np.ndarray | float,
    config: SeriesConfig = DEFAULT_CONFIG,
    method: MLMethod = "auto",
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`ml3`, returning ``(values, err_estimates)``.

    Spectral evaluations use a fixed composite Gauss-Legendre rule here
    rather than adaptive quadrature, which keeps large arrays cheap.
    """
    shape = np.shape(z)
    values, errs, _, spec = _ml3_dispatch(rho, mu, gamma, z, config, method)

    sidx = np.flatnonzero(spec)
    if sidx.size:
        lam = -np.asarray(z, dtype=float).ravel()[sidx]
        values[sidx], errs[sidx] = _ml3_spectral_fixed(rho, mu, gamma, lam)

    return values.reshape(shape), errs.reshape(shape)


def ml3(
    rho: float,
    mu: float,
    gamma: float,
    z: float,
    config: SeriesConfig = DEFAULT_CONFIG,
    method: MLMethod = "auto",
) -> MLValue:
    r"""Three-parameter Mittag-Leffler function :math:`E^\gamma_{\rho,\mu}(z)`.

    With ``method="auto"`` the power series is used unless *z* is negative,
    the series is badly conditioned (or *z* is beyond the series range) and
    the spectral representation applies, i.e. :math:`0 < \rho < 1`,
    :math:`\gamma > 0`, :math:`\mu > 0` and :math:`\mu - \rho\gamma < 1`.
    """
    z = float(z)
    values, errs, terms, spec = _ml3_dispatch(rho, mu, gamma, np.array([z]), config, method)
    if spec[0]:
        value, err = _ml3_spectral(rho, mu, gamma, -z)
        return MLValue(value, err, 1, method="spectral")

    return MLValue(float(values[0]), float(errs[0]), int(terms[0]))


def kernel_values(
    rho: float,
    mu: float,
    omega: float,
    gamma: float,
    t: np.ndarray,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    r"""Vectorized :math:`e^\gamma_{\rho,\mu,\omega}(t)` for ``t > 0``."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("kernel needs t > 0")
    e, _ = ml3_values(rho, mu, gamma, omega * t**rho, config)
    return t ** (mu - 1.0) * e


def prabhakar_kernel(
    params: PrabhakarParams,
    t: float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> float:
    r"""The kernel :math:`e^\gamma_{\rho,\mu,\omega}(t) = t^{\mu-1}
    E^\gamma_{\rho,\mu}(\omega t^\rho)`."""
    t = float(t)
    if not t > 0:
        raise DomainError(f"kernel needs t > 0: {t}")
    p = params
    return t ** (p.mu - 1.0) * ml3(p.rho, p.mu, p.gamma, p.omega * t**p.rho, config).value


# }}}


# {{{ Wright function


def wright_values(
    alpha: float,
    rho: float,
    z: np.ndarray | float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`wright_phi`, returning ``(values, err_estimates)``."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1): {alpha}")

    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > config.z_max):
        raise DomainError(f"|z| exceeds z_max = {config.z_max}")

    v, e, _, cond = _sum_series(z, -alpha, rho, None, config)
    if np.any(cond > config.max_cond):
        i = int(np.argmax(cond))
        raise NonConvergent(
            f"Wright series condition number {cond[i]:.3e} exceeds {config.max_cond:.1e}",
            node=i,
        )
    return v.reshape(z.shape), e.reshape(z.shape)


def wright_phi(
    alpha: float,
    rho: float,
    z: float,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> float:
    r"""Wright function :math:`\phi(-\alpha, \rho; z) = \sum_r
    z^r / (r!\, \Gamma(\rho - \alpha r))`."""
    v, _ = wright_values(alpha, rho, np.array([float(z)]), config)
    return float(v[0])


# }}}


# {{{ spectral kernel


def spectral_K(
    alpha: float,
    beta: float,
    gamma: float,
    r: np.ndarray | float,
) -> np.ndarray | float:
    r"""Spectral kernel :math:`K^\gamma_{\alpha,\beta}(r)`.

    .. math::

        K^\gamma_{\alpha,\beta}(r) = \frac{r^{\alpha\gamma-\beta}}{\pi}
            \frac{\sin(\gamma\theta(r) + \pi(\beta - \alpha\gamma))}
                 {(r^{2\alpha} + 2 r^\alpha\cos\pi\alpha + 1)^{\gamma/2}},

    where :math:`\theta(r) = \arg(1 + r^\alpha e^{i\pi\alpha})`, the
    continuous branch of the arctangent of
    :math:`r^\alpha\sin\pi\alpha / (r^\alpha\cos\pi\alpha + 1)` starting
    from 0 at :math:`r = 0`. Magnitudes are combined in log form so that
    extreme *r* neither overflows nor loses the small factors.
    """
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must be in (0, 2]: {alpha}")
    if beta <= 0 or gamma <= 0:
        raise DomainError("beta and gamma must be positive")

    scalar = np.isscalar(r)
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("spectral_K needs r > 0")

    sin_a = math.sin(math.pi * alpha)
    cos_a = math.cos(math.pi * alpha)
    logr = np.log(r)
    lra = alpha * logr
    with np.errstate(over="ignore", under="ignore"):
        ra = np.exp(np.minimum(lra, 0.0))
        ira = np.exp(np.minimum(-lra, 0.0))
        big = lra > 0
        # |1 + r^a e^{i pi a}|^2 = (r^a + cos)^2 + sin^2, scaled by r^{-2a} when r^a > 1
        small_r2 = (ra + cos_a) ** 2 + sin_a**2
        big_r2 = (1.0 + cos_a * ira) ** 2 + (sin_a * ira) ** 2
        log_r2 = np.where(big, 2.0 * lra + np.log(big_r2), np.log(small_r2))
        theta = np.where(
            big, np.arctan2(sin_a, cos_a + ira), np.arctan2(ra * sin_a, 1.0 + ra * cos_a)
        )
        result = (
            np.exp((alpha * gamma - beta) * logr - 0.5 * gamma * log_r2)
            / math.pi
            * np.sin(gamma * theta + math.pi * (beta - alpha * gamma))
        )
    return float(result) if scalar else result


# }}}


# {{{ uniform bound


def uniform_bound(alpha: float, beta: float, gamma: float, omega: float) -> float:
    r"""Uniform bound on :math:`|e^\gamma_{\alpha,\beta,-\omega}(t)|`, :math:`t > 0`.

    .. math::

        \frac{\Gamma(\gamma - c)\Gamma(c)}
             {\pi\alpha\,\omega^c\,\Gamma(\gamma)\cos(\pi\alpha/2)^{\gamma-c}},
        \qquad c = \frac{\beta - 1}{\alpha}.

    The bound concerns the decaying kernel, i.e. the Mittag-Leffler argument
    is :math:`-\omega t^\alpha` with :math:`\omega > 0`.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1): {alpha}")
    if gamma <= 0 or omega <= 0:
        raise DomainError("gamma and omega must be positive")
    if not alpha * gamma > beta - 1.0 > 0.0:
        raise DomainError(f"need alpha*gamma > beta - 1 > 0, got {alpha=}, {beta=}, {gamma=}")

    c = (beta - 1.0) / alpha
    return (
        math.gamma(gamma - c)
        * math.gamma(c)
        / (
            math.pi
            * alpha
            * omega**c
            * math.gamma(gamma)
            * math.cos(0.5 * math.pi * alpha) ** (gamma - c)
        )
    )


# }}}
