r"""Wright-type densities, their Laplace transforms and the spectral kernel.

The density studied here is

.. math::

    g(x, t) = \frac{\Gamma(\beta)}{\Gamma(\gamma)} t^{-\gamma\alpha}
        x^{\gamma-1} \phi\Bigl(-\alpha, \beta-\alpha\gamma; -\frac{x}{t^\alpha}\Bigr),
    \qquad x > 0,

with space-Laplace transform :math:`\Gamma(\beta) E^\gamma_{\alpha,\beta}(-s t^\alpha)`.
"""

from __future__ import annotations

import functools
import math
import os
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from scipy import integrate, special

from prabhakar.errors import DomainError, NonConvergent, TailTooLarge
from prabhakar.specfun import (
    DEFAULT_CONFIG,
    SeriesConfig,
    _sum_series,
    ml3,
    ml3_values,
    spectral_K,
    wright_values,
)

__all__ = [
    "DensityParams",
    "FIGURES",
    "FigureCurve",
    "LaplacePoint",
    "WRIGHT_CONFIG",
    "density_g",
    "density_values",
    "double_laplace",
    "double_laplace_numeric",
    "figure_curves",
    "laplace_g_closed",
    "laplace_g_numeric",
    "mean_of_g",
    "mean_of_g_numeric",
    "normalization_K",
    "relaxation_hn",
    "run_laplace_suite",
    "run_normalization_suite",
    "wright_mellin_numeric",
    "write_figure_csv",
]

#: The condition number of the alternating Wright series grows like 1/g^2,
#: so its absolute rounding error is about eps / g. Allowing 1e16 keeps that
#: near 1e-8 while reaching far enough out for a tail below 1e-7.
WRIGHT_CONFIG = SeriesConfig(max_cond=1.0e16)

_GL_ORDER = 20


# {{{ parameter types


@dataclass(frozen=True)
class DensityParams:
    """Parameters of the density, restricted to its positivity region."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must be in (0, 1): {self.alpha}")
        if not 0.0 < self.beta <= 1.0:
            raise DomainError(f"beta must be in (0, 1]: {self.beta}")
        if not self.gamma > 0.0:
            raise DomainError(f"gamma must be positive: {self.gamma}")
        if self.beta < self.alpha * self.gamma:
            raise DomainError(
                f"need beta >= alpha*gamma, got beta={self.beta}, alpha*gamma={self.alpha * self.gamma}"
            )


@dataclass(frozen=True)
class LaplacePoint:
    s: float
    varpi: float
    t: float

    def __post_init__(self) -> None:
        if not self.s >= 0.0:
            raise DomainError(f"s must be nonnegative: {self.s}")
        if not self.varpi > 0.0:
            raise DomainError(f"varpi must be positive: {self.varpi}")
        if not self.t > 0.0:
            raise DomainError(f"t must be positive: {self.t}")


# }}}


# {{{ density


def density_values(
    x: np.ndarray,
    t: float,
    dp: DensityParams,
    config: SeriesConfig = WRIGHT_CONFIG,
) -> np.ndarray:
    """Vectorized :func:`density_g` over ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not t > 0:
        raise DomainError("density needs x > 0 and t > 0")
    a, b, g = dp.alpha, dp.beta, dp.gamma
    phi, _ = wright_values(a, b - a * g, -x / t**a, config)
    logc = math.lgamma(b) - math.lgamma(g) - g * a * math.log(t)
    return math.exp(logc) * x ** (g - 1.0) * phi


def density_g(x: float, t: float, dp: DensityParams, config: SeriesConfig = WRIGHT_CONFIG) -> float:
    r""":math:`g(x, t)` for the parameters *dp*."""
    return float(density_values(np.array([float(x)]), t, dp, config)[0])


def laplace_g_closed(s: float, t: float, dp: DensityParams, config: SeriesConfig = DEFAULT_CONFIG) -> float:
    r"""Closed form :math:`\Gamma(\beta) E^\gamma_{\alpha,\beta}(-s t^\alpha)`."""
    if s < 0 or not t > 0:
        raise DomainError("need s >= 0 and t > 0")
    return math.gamma(dp.beta) * ml3(dp.alpha, dp.beta, dp.gamma, -s * t**dp.alpha, config).value


#: absolute accuracy required of the Wright series inside the quadrature range
WRIGHT_ABS_ERR = 1.0e-8


@functools.lru_cache(maxsize=32)
def _z_reach(alpha: float, rho: float, config: SeriesConfig) -> float:
    """Largest argument (on a 1/8 grid) at which the Wright series for
    ``phi(-alpha, rho; -z)`` keeps an absolute error estimate below
    :data:`WRIGHT_ABS_ERR` and a condition number below ``config.max_cond``.

    The condition number alone is not a usable stop: once the sum is pure
    rounding noise its computed value, and so the ratio, no longer grows.
    """
    reach = 0.0
    for start in range(int(config.z_max)):
        z = start + np.arange(1, 9) / 8.0
        try:
            _, err, _, cond = _sum_series(-z, -alpha, rho, None, config)
        except NonConvergent:
            break
        bad = np.flatnonzero((err > WRIGHT_ABS_ERR) | (cond > config.max_cond))
        if bad.size:
            return float(z[bad[0] - 1]) if bad[0] > 0 else reach
        reach = float(z[-1])
    return reach


def _jacobi_panel(width: float, power: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_0^width x^power h(x) dx``."""
    u, w = special.roots_jacobi(n, 0.0, power)
    return 0.5 * width * (1.0 + u), w * (0.5 * width) ** (power + 1.0)


def _singular_rule(
    length: float, power: float, panels: int
) -> tuple[list[tuple[np.ndarray, np.ndarray]], np.ndarray, np.ndarray]:
    """Composite rule on ``(0, length]`` for ``x^power h(x)``: Gauss-Jacobi on
    the first panel, Gauss-Legendre on the rest. Returns per-panel node sets
    (for panel sums) and the concatenated rule."""
    width = length / panels
    parts = [_jacobi_panel(width, power, _GL_ORDER)]
    u, w = np.polynomial.legendre.leggauss(_GL_ORDER)
    for k in range(1, panels):
        lo = k * width
        x = lo + 0.5 * width * (1.0 + u)
        parts.append((x, 0.5 * width * w * x**power))
    nodes = np.concatenate([p[0] for p in parts])
    weights = np.concatenate([p[1] for p in parts])
    return parts, nodes, weights


def _density_moment(
    moment: int,
    s: float,
    t: float,
    dp: DensityParams,
    x_max: float | None,
    panels: int,
    tol: float,
    config: SeriesConfig,
) -> tuple[float, float]:
    r""":math:`\int_0^{x_{max}} x^m e^{-sx} g(x, t)\,dx` with error estimate.

    The error estimate is the change between *panels* and ``2 * panels``
    plus the tail estimate from the decay of the last two panels.
    """
    if s < 0 or not t > 0:
        raise DomainError("need s >= 0 and t > 0")
    if panels < 2:
        raise DomainError("need at least two panels")
    a, b, g = dp.alpha, dp.beta, dp.gamma
    if x_max is None:
        x_max = t**a * _z_reach(a, b - a * g, config)
    if not x_max > 0:
        raise DomainError(f"x_max must be positive: {x_max}")
    logc = math.lgamma(b) - math.lgamma(g) - g * a * math.log(t)

    def smooth(x: np.ndarray) -> np.ndarray:
        phi, _ = wright_values(a, b - a * g, -x / t**a, config)
        return math.exp(logc) * phi * np.exp(-s * x)

    results = []
    for npan in (panels, 2 * panels):
        parts, nodes, weights = _singular_rule(x_max, g - 1.0 + moment, npan)
        vals = smooth(nodes)
        sums = []
        start = 0
        for pn, pw in parts:
            sums.append(float(vals[start : start + pn.size] @ pw))
            start += pn.size
        results.append((sum(sums), sums))

    value, sums = results[-1]
    last, prev = abs(sums[-1]), abs(sums[-2])
    if last <= 1.0e-3 * tol:
        # the density has decayed into rounding noise; the rest is negligible
        tail = last
    else:
        ratio = last / prev if prev > 0 else math.inf
        if ratio >= 1.0:
            raise TailTooLarge(f"integrand is not decaying at x_max = {x_max}")
        tail = last * ratio / (1.0 - ratio)
    if tail > tol:
        raise TailTooLarge(f"estimated tail {tail:.3e} beyond x_max = {x_max} exceeds {tol:.1e}")
    err = abs(results[1][0] - results[0][0]) + tail
    return value, err


def laplace_g_numeric(
    s: float,
    t: float,
    dp: DensityParams,
    x_max: float | None = None,
    panels: int = 16,
    *,
    tol: float = 1.0e-7,
    config: SeriesConfig = WRIGHT_CONFIG,
) -> float:
    r"""Quadrature of :math:`\int_0^\infty e^{-sx} g(x, t)\,dx`.

    *x_max* defaults to the largest argument at which the Wright series keeps
    its error estimate below :data:`WRIGHT_ABS_ERR`; the neglected tail is estimated from the last
    panels and must stay below *tol* (:class:`TailTooLarge` otherwise).
    """
    value, _ = _density_moment(0, s, t, dp, x_max, panels, tol, config)
    return value


def wright_mellin_numeric(
    s: float, alpha: float, rho: float, *, panels: int = 16, tol: float = 1.0e-6
) -> float:
    r"""Numeric Mellin transform :math:`\int_0^\infty x^{s-1}\phi(-\alpha,\rho;-x)\,dx`.

    The exact value is :math:`\Gamma(s)/\Gamma(\rho+\alpha s)`. The integrand
    is the ``t = 1`` density with ``gamma = s`` and ``beta = rho + alpha*s``
    up to the factor :math:`\Gamma(\beta)/\Gamma(\gamma)`, so the same
    parameter restrictions apply.
    """
    dp = DensityParams(alpha, rho + alpha * s, s)
    scale = math.exp(math.lgamma(s) - math.lgamma(dp.beta))
    return scale * laplace_g_numeric(0.0, 1.0, dp, panels=panels, tol=tol)


def mean_of_g(dp: DensityParams) -> float:
    r""":math:`\mathbb{E}X = \gamma\Gamma(\beta)/\Gamma(\alpha+\beta)` at ``t = 1``."""
    return dp.gamma * math.exp(math.lgamma(dp.beta) - math.lgamma(dp.alpha + dp.beta))


def mean_of_g_numeric(
    dp: DensityParams,
    panels: int = 16,
    *,
    tol: float = 1.0e-6,
    config: SeriesConfig = WRIGHT_CONFIG,
) -> float:
    """First moment of ``g(., 1)`` by quadrature."""
    value, _ = _density_moment(1, 0.0, 1.0, dp, None, panels, tol, config)
    return value


def double_laplace(s: float, varpi: float, dp: DensityParams) -> float:
    r""":math:`\Gamma(\beta)\varpi^{\alpha\gamma-\beta}/(\varpi^\alpha + s)^\gamma`."""
    LaplacePoint(s, varpi, 1.0)
    a, b, g = dp.alpha, dp.beta, dp.gamma
    return math.gamma(b) * varpi ** (a * g - b) / (varpi**a + s) ** g


def double_laplace_numeric(
    s: float,
    varpi: float,
    dp: DensityParams,
    *,
    weighted: bool = True,
    panels: int = 32,
    config: SeriesConfig = DEFAULT_CONFIG,
) -> tuple[float, float]:
    r"""Time-Laplace transform of the closed-form space transform, by quadrature.

    With *weighted* the integrand is :math:`t^{\beta-1}\tilde g(s, t)`, the
    function whose transform is :func:`double_laplace`; without it the bare
    :math:`\tilde g(s, t)` is transformed, which agrees only for
    ``beta = 1``. Returns ``(value, error estimate)``.
    """
    LaplacePoint(s, varpi, 1.0)
    a, b, g = dp.alpha, dp.beta, dp.gamma
    # in u = t^alpha the Mittag-Leffler factor is smooth at the origin and
    # t^{power} dt = u^{(power + 1)/alpha - 1} du / alpha
    power = b - 1.0 if weighted else 0.0
    U = (40.0 / varpi) ** a

    results = []
    for npan in (panels, 2 * panels):
        _, u, weights = _singular_rule(U, (power + 1.0) / a - 1.0, npan)
        e, _ = ml3_values(a, b, g, -s * u, config)
        f = math.gamma(b) / a * np.exp(-varpi * u ** (1.0 / a)) * e
        results.append(float(f @ weights))
    # e^{-varpi T} = e^{-40} bounds the neglected tail relative to the value
    return results[1], abs(results[1] - results[0]) + math.exp(-40.0)


def relaxation_hn(s: float, varpi: float, alpha: float, gamma: float) -> float:
    r"""Havriliak-Negami response :math:`\varpi^{\alpha\gamma-1}/(\varpi^\alpha+s)^\gamma`,
    the ``beta = 1`` case of :func:`double_laplace`."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must be in (0, 1]: {alpha}")
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive: {gamma}")
    LaplacePoint(s, varpi, 1.0)
    return varpi ** (alpha * gamma - 1.0) / (varpi**alpha + s) ** gamma


# }}}


# {{{ spectral kernel normalization


def normalization_K(alpha: float, gamma: float, *, tol: float = 1.0e-7) -> float:
    r""":math:`\int_0^\infty K^\gamma_{\alpha,1}(r)\,dr`.

    Integrated in :math:`x = \log r`, where both ends decay exponentially
    (like :math:`e^{\alpha\gamma x}` and :math:`e^{-\alpha x}`). Below
    :math:`x = -40/(\alpha\gamma)` the leading power term is integrated
    exactly.

    For :math:`\alpha = \gamma = 1` the kernel is identically zero: the
    spectral measure of :math:`e^{-t}` is the unit point mass at ``r = 1``,
    and its mass is returned.
    """
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must be in (0, 2]: {alpha}")
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive: {gamma}")
    if alpha > 1.0 and gamma != 1.0:
        raise DomainError("for alpha > 1 only gamma = 1 is supported")
    if alpha == 1.0:
        if gamma == 1.0:
            return 1.0
        if gamma > 1.0:
            raise DomainError("alpha = 1, gamma > 1: the kernel is not integrable at r = 1")

    ag = alpha * gamma
    x_lo = max(-700.0, -40.0 / ag)
    x_hi = 700.0

    def f(x: float) -> float:
        r = math.exp(x)
        return r * spectral_K(alpha, 1.0, gamma, r)

    breaks = [x_lo] + [b for b in (-60.0, -10.0, -1.0, 0.0, 1.0, 10.0, 60.0) if x_lo < b < x_hi] + [x_hi]
    total = 0.0
    abserr = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        v, e = integrate.quad(f, lo, hi, limit=500, epsabs=1.0e-14, epsrel=1.0e-12)
        total += v
        abserr += e

    # K(r) ~ sin(pi(1 - alpha gamma)) r^{alpha gamma - 1} / pi near r = 0
    r0 = math.exp(x_lo)
    total += math.sin(math.pi * (1.0 - ag)) / math.pi * r0**ag / ag

    if abserr > tol:
        raise NonConvergent(f"normalization quadrature error {abserr:.3e} exceeds {tol:.1e}")
    return total


# }}}


# {{{ figures


@dataclass(frozen=True)
class FigureCurve:
    alpha: float
    beta: float
    gamma: float
    r: np.ndarray
    K: np.ndarray

    @property
    def filename(self) -> str:
        return f"alpha{self.alpha:g}_beta{self.beta:g}_gamma{self.gamma:g}.csv"


#: (alpha, gamma) pairs of the three spectral-kernel figures, beta = 1
FIGURES: dict[int, tuple[tuple[float, float], ...]] = {
    1: tuple((0.4, g) for g in (0.25, 0.5, 0.75, 1.0, 1.25)),
    2: tuple((a, 4.0) for a in (0.05, 0.1, 0.15, 0.2, 0.25)),
    3: tuple((a, 0.8) for a in (0.5, 0.6, 0.7, 0.8, 0.9)),
}


def figure_curves(which: int, npoints: int = 400) -> list[FigureCurve]:
    """Curves of one figure on a log grid ``r in [1e-3, 1e3]``."""
    if which not in FIGURES:
        raise DomainError(f"unknown figure {which}; choose from {sorted(FIGURES)}")
    r = np.logspace(-3.0, 3.0, npoints)
    return [
        FigureCurve(a, 1.0, g, r, np.asarray(spectral_K(a, 1.0, g, r)))
        for a, g in FIGURES[which]
    ]


def write_figure_csv(which: int, out_dir: str | os.PathLike[str]) -> list[Path]:
    """Write one ``r,K`` CSV per curve of figure *which*; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for curve in figure_curves(which):
        path = out / f"fig{which}_{curve.filename}"
        with open(path, "w", newline="") as fp:
            fp.write("r,K\n")
            for ri, ki in zip(curve.r, curve.K):
                fp.write(f"{float(ri):.17g},{float(ki):.17g}\n")
        paths.append(path)
    return paths


# }}}


# {{{ suites


NORMALIZATION_CASES: tuple[tuple[float, float, float], ...] = (
    (0.25, 1.0, 1.0),
    (0.5, 1.0, 1.0),
    (0.5, 1.5, 1.0),
    (0.75, 0.8, 1.0),
    (1.0, 1.0, 1.0),
    (1.25, 1.0, 1.0 - 2.0 / 1.25),
    (1.5, 1.0, 1.0 - 2.0 / 1.5),
    (2.0, 1.0, 0.0),
)


def run_normalization_suite(tol: float = 1.0e-5) -> list[dict[str, Any]]:
    """Spectral-kernel normalization against 1 and ``1 - 2/alpha``."""
    rows = []
    for alpha, gamma, expected in NORMALIZATION_CASES:
        got = normalization_K(alpha, gamma)
        err = abs(got - expected)
        rows.append(
            {
                "name": f"normalization(alpha={alpha:g},gamma={gamma:g})",
                "params": {"alpha": alpha, "gamma": gamma, "expected": expected, "value": got},
                "grids": [],
                "max_error": [err],
                "order": None,
                "holds": err <= tol,
            }
        )
    return rows


LAPLACE_DP = DensityParams(0.5, 0.8, 1.2)
LAPLACE_S = (0.0, 0.5, 1.0, 2.0, 5.0)
#: (alpha, gamma) grid for the density normalization at beta = 1
DENSITY_GRID = tuple((a, g) for a in (0.3, 0.5, 0.6) for g in (0.5, 1.0, 1.5))
MELLIN_CASE = (1.5, 0.5, 0.25)  # (s, alpha, rho)


def _row(name: str, params: dict[str, Any], grids: list[int], errs: list[float], tol: float) -> dict[str, Any]:
    return {
        "name": name,
        "params": params,
        "grids": grids,
        "max_error": errs,
        "order": None,
        "holds": errs[-1] <= tol,
    }


def run_laplace_suite(
    panels: tuple[int, ...] = (8, 16),
    config: SeriesConfig = WRIGHT_CONFIG,
) -> list[dict[str, Any]]:
    """Laplace identity, normalization, mean and double-transform checks.

    Each case is run with each panel count in *panels*; ``grids`` lists the
    panel counts.
    """
    dp = LAPLACE_DP
    base = {"alpha": dp.alpha, "beta": dp.beta, "gamma": dp.gamma}
    rows = []

    def run(name: str, params: dict[str, Any], fn: Callable[[int], float], ref: float, tol: float) -> None:
        errs = [abs(fn(p) - ref) for p in panels]
        rows.append(_row(name, {**base, **params, "reference": ref}, list(panels), errs, tol))

    for s in LAPLACE_S:
        run(
            f"laplace(s={s:g},t=1)",
            {"s": s, "t": 1.0},
            lambda p, s=s: laplace_g_numeric(s, 1.0, dp, panels=p, config=config),
            laplace_g_closed(s, 1.0, dp),
            1.0e-6,
        )
    run(
        "laplace(s=1,t=2)",
        {"s": 1.0, "t": 2.0},
        lambda p: laplace_g_numeric(1.0, 2.0, dp, panels=p, config=config),
        laplace_g_closed(1.0, 2.0, dp),
        1.0e-6,
    )
    run("mean", {}, lambda p: mean_of_g_numeric(dp, panels=p, config=config), mean_of_g(dp), 1.0e-5)
    run(
        "double-laplace(s=1,varpi=2)",
        {"s": 1.0, "varpi": 2.0},
        lambda p: double_laplace_numeric(1.0, 2.0, dp, panels=2 * p)[0],
        double_laplace(1.0, 2.0, dp),
        1.0e-5,
    )
    for a, g in DENSITY_GRID:
        run(
            f"density-normalization(alpha={a:g},gamma={g:g})",
            {"alpha": a, "beta": 1.0, "gamma": g, "s": 0.0, "t": 1.0},
            lambda p, a=a, g=g: laplace_g_numeric(0.0, 1.0, DensityParams(a, 1.0, g), panels=p, tol=1.0e-6),
            1.0,
            1.0e-5,
        )
    ms, ma, mr = MELLIN_CASE
    run(
        f"mellin(s={ms:g},alpha={ma:g},rho={mr:g})",
        {"alpha": ma, "rho": mr, "s": ms},
        lambda p: wright_mellin_numeric(ms, ma, mr, panels=p),
        math.exp(math.lgamma(ms) - math.lgamma(mr + ma * ms)),
        1.0e-5,
    )
    return rows


# }}}
