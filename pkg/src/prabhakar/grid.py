"""Uniform grids and functions sampled on them."""

from __future__ import annotations

import csv
import io
import math
import os
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from prabhakar.errors import CSVFormatError, DomainError, EvaluationError, UnsupportedOrder

__all__ = [
    "SampledFn",
    "UniformGrid",
    "differentiate",
    "eval_interp",
    "read_csv",
    "sample",
    "write_csv",
]


@dataclass(frozen=True)
class UniformGrid:
    """Nodes ``t_i = a + i h`` for ``i = 0, ..., n`` with ``h = (b - a) / n``."""

    a: float
    b: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("grid endpoints must be finite")
        if not self.b > self.a:
            raise DomainError(f"need b > a, got a={self.a}, b={self.b}")
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"need an integer n >= 3, got {self.n}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n + 1)


@dataclass(frozen=True, eq=False)
class SampledFn:
    """Samples of a function on a :class:`UniformGrid`.

    *deriv_values*, when given, holds exact samples of the first, second, ...
    derivatives, and *flags* marks nodes whose value is singular or
    extrapolated (set by the operators).
    """

    grid: UniformGrid
    values: np.ndarray
    deriv_values: tuple[np.ndarray, ...] | None = None
    flags: np.ndarray | None = field(default=None)

    def __post_init__(self) -> None:
        npts = self.grid.n + 1
        values = np.array(self.values, dtype=float)
        if values.shape != (npts,):
            raise DomainError(f"expected {npts} values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

        if self.deriv_values is not None:
            rows = tuple(np.array(d, dtype=float) for d in self.deriv_values)
            for i, d in enumerate(rows):
                if d.shape != (npts,):
                    raise DomainError(f"derivative row {i + 1} has shape {d.shape}")
                d.setflags(write=False)
            object.__setattr__(self, "deriv_values", rows or None)

        if self.flags is not None:
            flags = np.array(self.flags, dtype=bool)
            if flags.shape != (npts,):
                raise DomainError(f"flags must have shape ({npts},)")
            flags.setflags(write=False)
            object.__setattr__(self, "flags", flags)

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    def flag_mask(self) -> np.ndarray:
        if self.flags is None:
            return np.zeros(self.grid.n + 1, dtype=bool)
        return self.flags

    def __add__(self, other: SampledFn) -> SampledFn:
        return _combine(self, other, 1.0, 1.0)

    def __sub__(self, other: SampledFn) -> SampledFn:
        return _combine(self, other, 1.0, -1.0)

    def __rmul__(self, alpha: float) -> SampledFn:
        return SampledFn(self.grid, alpha * self.values, flags=self.flags)


def _combine(f: SampledFn, g: SampledFn, alpha: float, beta: float) -> SampledFn:
    if f.grid != g.grid:
        raise DomainError("cannot combine functions on different grids")
    return SampledFn(
        f.grid,
        alpha * f.values + beta * g.values,
        flags=f.flag_mask() | g.flag_mask(),
    )


def sample(
    f: Callable[[float], float],
    grid: UniformGrid,
    derivs: tuple[Callable[[float], float], ...] = (),
) -> SampledFn:
    """Evaluate *f* (and optionally its exact derivatives) at the grid nodes."""

    def evaluate(func: Callable[[float], float]) -> np.ndarray:
        out = np.empty(grid.n + 1)
        for i, ti in enumerate(grid.nodes):
            try:
                out[i] = float(func(float(ti)))
            except Exception as exc:
                raise EvaluationError(f"evaluation failed: {exc}", node=i) from exc
        return out

    values = evaluate(f)
    rows = tuple(evaluate(d) for d in derivs)
    return SampledFn(grid, values, deriv_values=rows or None)


# {{{ differentiation

# fourth-order one-sided stencils for the first two nodes, in units of 1/(12 h)
_LEFT0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
_LEFT1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0])


def _d1(y: np.ndarray, h: float) -> np.ndarray:
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / 12.0
    d[0] = _LEFT0 @ y[:5] / 12.0
    d[1] = _LEFT1 @ y[:5] / 12.0
    d[-1] = -(_LEFT0 @ y[::-1][:5]) / 12.0
    d[-2] = -(_LEFT1 @ y[::-1][:5]) / 12.0
    return d / h


_LEFT0_2 = np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0])
_LEFT1_2 = np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0])


def _d2(y: np.ndarray, h: float) -> np.ndarray:
    d = np.empty_like(y)
    d[2:-2] = (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]) / 12.0
    d[0] = _LEFT0_2 @ y[:6] / 12.0
    d[1] = _LEFT1_2 @ y[:6] / 12.0
    d[-1] = _LEFT0_2 @ y[::-1][:6] / 12.0
    d[-2] = _LEFT1_2 @ y[::-1][:6] / 12.0
    return d / h**2


def differentiate(sfn: SampledFn, order: int = 1) -> SampledFn:
    """Derivative of a sampled function.

    Caller-supplied derivative samples are used when present; otherwise
    fourth-order finite differences. The second derivative uses its own
    stencils, since applying the first-order one twice turns the boundary
    truncation error into an O(h^3) kink.
    """
    if order < 1 or int(order) != order:
        raise DomainError(f"order must be a positive integer: {order}")

    if sfn.deriv_values is not None and len(sfn.deriv_values) >= order:
        rest = sfn.deriv_values[order:]
        return SampledFn(sfn.grid, sfn.deriv_values[order - 1], deriv_values=rest or None)

    if order > 2:
        raise UnsupportedOrder(f"order {order} needs caller-supplied derivative samples")
    if sfn.grid.n < 5:
        raise DomainError("finite differences need n >= 5")

    # use supplied lower-order samples as the starting point when available
    y = sfn.values
    start = 0
    if sfn.deriv_values is not None:
        start = len(sfn.deriv_values)
        y = sfn.deriv_values[-1]

    if order - start == 2:
        y = _d2(y, sfn.grid.h)
    elif order - start == 1:
        y = _d1(y, sfn.grid.h)

    return SampledFn(sfn.grid, y)


# }}}


def eval_interp(sfn: SampledFn, t: float) -> float:
    """Four-point Lagrange interpolation, exact at the nodes."""
    grid = sfn.grid
    t = float(t)
    if not grid.a <= t <= grid.b:
        raise DomainError(f"t = {t} outside [{grid.a}, {grid.b}]")

    s = (t - grid.a) / grid.h
    j = min(int(math.floor(s)), grid.n - 1)
    if s == j:
        return float(sfn.values[j])

    lo = min(max(j - 1, 0), grid.n - 3)
    x = np.arange(lo, lo + 4, dtype=float)
    y = sfn.values[lo : lo + 4]

    result = 0.0
    for i in range(4):
        others = np.delete(x, i)
        result += y[i] * np.prod((s - others) / (x[i] - others))
    return float(result)


# {{{ csv


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(sfn: SampledFn, dest: str | os.PathLike[str] | io.TextIOBase) -> None:
    """Write ``t,value,flag`` rows with 17 significant digits."""

    def dump(fp: io.TextIOBase) -> None:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["t", "value", "flag"])
        for ti, vi, fi in zip(sfn.t, sfn.values, sfn.flag_mask()):
            writer.writerow([_fmt(ti), _fmt(vi), int(fi)])

    if isinstance(dest, io.TextIOBase):
        dump(dest)
    else:
        with open(dest, "w", newline="") as fp:
            dump(fp)


def read_csv(src: str | os.PathLike[str] | io.TextIOBase) -> SampledFn:
    """Read a ``t,value`` CSV with header into a :class:`SampledFn`.

    A third ``flag`` column (as written by :func:`write_csv`) is read back
    into the flags, and only flagged rows may hold a non-finite value. Other
    extra columns are ignored. The ``t`` column must be strictly increasing
    and equispaced to within ``1e-9 h``.
    """
    if isinstance(src, io.TextIOBase):
        rows = list(csv.reader(src))
    else:
        with open(src, newline="") as fp:
            rows = list(csv.reader(fp))

    if not rows:
        raise CSVFormatError("empty file", row=1)
    header = [c.strip().lower() for c in rows[0]]
    if header[:2] != ["t", "value"]:
        raise CSVFormatError(f"expected header 't,value', got {','.join(rows[0])}", row=1)

    has_flag = len(header) > 2 and header[2] == "flag"
    t, v, fl = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < (3 if has_flag else 2):
            raise CSVFormatError("missing columns", row=lineno)
        try:
            t.append(float(row[0]))
            v.append(float(row[1]))
            fl.append(bool(int(row[2])) if has_flag else False)
        except ValueError as exc:
            raise CSVFormatError(f"not a number: {exc}", row=lineno) from exc
        if not math.isfinite(t[-1]) or not (fl[-1] or math.isfinite(v[-1])):
            raise CSVFormatError("non-finite entry", row=lineno)

    if len(t) < 4:
        raise CSVFormatError(f"need at least 4 data rows, got {len(t)}")

    ta = np.array(t)
    n = len(ta) - 1
    h = (ta[-1] - ta[0]) / n
    if not h > 0:
        raise CSVFormatError("t must be strictly increasing", row=2)
    dev = np.abs(np.diff(ta) - h)
    if np.any(dev > 1.0e-9 * h):
        bad = int(np.argmax(dev > 1.0e-9 * h))
        raise CSVFormatError("t is not equispaced", row=bad + 3)

    flags = np.array(fl) if any(fl) else None
    return SampledFn(UniformGrid(float(ta[0]), float(ta[-1]), n), np.array(v), flags=flags)


# }}}
