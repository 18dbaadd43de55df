"""Copula and Markov-kernel contracts shared by every family.

All evaluation methods broadcast over numpy arrays; scalar inputs give
Python floats back. Boundary conventions live in :class:`Copula` so that the
family classes only see the open square (cdf) or an interior ``x`` with
``y in (0, 1)`` (kernel).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .validation import ValidationReport

QUANTILE_TOL = 1e-12
QUANTILE_MAX_ITER = 200
DEFAULT_QUAD_N = 4096


class UnsupportedFamily(NotImplementedError):
    pass


class TransposeUnavailable(NotImplementedError):
    pass


class EmptySample(ValueError):
    pass


def _pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    x, y = np.broadcast_arrays(x, y)
    return x, y, scalar


class Copula:
    """Base class: a bivariate copula with a closed-form Markov kernel.

    Subclasses provide ``_cdf`` on the open square, ``_kernel`` for
    ``x, y in (0, 1)`` and ``jumps(x)`` listing the point masses of
    ``K(x, .)``.
    """

    family = "abstract"

    def cdf(self, x, y):
        x, y, scalar = _pair(x, y)
        xc = np.clip(x, 0.0, 1.0)
        yc = np.clip(y, 0.0, 1.0)
        inner = (xc > 0) & (xc < 1) & (yc > 0) & (yc < 1)
        out = np.where((xc <= 0) | (yc <= 0), 0.0, np.minimum(xc, yc))
        if inner.any():
            out[inner] = self._cdf(xc[inner], yc[inner])
        return float(out) if scalar else out

    def kernel_cdf(self, x, y):
        """K(x, [0, y]); right-continuous in y with K(x, [0, 1]) = 1."""
        x, y, scalar = _pair(x, y)
        xc = np.clip(x, 0.0, 1.0)
        yc = np.clip(y, 0.0, 1.0)
        edge = (xc <= 0) | (xc >= 1)
        out = np.where(yc >= 1, 1.0, 0.0)
        if edge.any():
            out[edge] = self._edge_kernel(yc[edge])
        inner = ~edge & (yc > 0) & (yc < 1)
        if inner.any():
            out[inner] = self._kernel(xc[inner], yc[inner])
        return float(out) if scalar else out

    def _edge_kernel(self, y):
        # K(0, .) and K(1, .): uniform; a lambda-null choice.
        return y

    def _cdf(self, x, y):
        raise NotImplementedError

    def _kernel(self, x, y):
        raise UnsupportedFamily(f"{self.family} has no closed-form Markov kernel")

    def jumps(self, x: float) -> list[tuple[float, float]]:
        """Point masses (location, size) of K(x, .) for interior x."""
        return []

    def transpose(self) -> "Copula":
        raise TransposeUnavailable(f"{self.family} has no analytic transpose")

    def to_spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.family}>"


class UpperBound(Copula):
    family = "M"

    def _cdf(self, x, y):
        return np.minimum(x, y)

    def _kernel(self, x, y):
        return np.where(y >= x, 1.0, 0.0)

    def jumps(self, x):
        return [(float(x), 1.0)]

    def transpose(self):
        return self

    def to_spec(self):
        return {"family": "M"}


class LowerBound(Copula):
    family = "W"

    def _cdf(self, x, y):
        return np.maximum(x + y - 1.0, 0.0)

    def _kernel(self, x, y):
        return np.where(y >= 1.0 - x, 1.0, 0.0)

    def jumps(self, x):
        return [(1.0 - float(x), 1.0)]

    def transpose(self):
        return self

    def to_spec(self):
        return {"family": "W"}


class Independence(Copula):
    family = "Pi"

    def _cdf(self, x, y):
        return x * y

    def _kernel(self, x, y):
        return y.copy()

    def transpose(self):
        return self

    def to_spec(self):
        return {"family": "Pi"}


M = UpperBound()
W = LowerBound()
Pi = Independence()


def cdf(copula: Copula, x, y):
    return copula.cdf(x, y)


def kernel_cdf(copula: Copula, x, y):
    return copula.kernel_cdf(x, y)


# ---------------------------------------------------------------------------
# Checks


def validate_copula(copula: Copula, grid_n: int = 64, tol: float = 1e-9) -> ValidationReport:
    """Boundary values, 2-increasingness of every grid cell, Lipschitz steps.

    The Lipschitz check covers horizontally and vertically adjacent grid
    points; the bound for arbitrary pairs follows by the triangle inequality.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    g = np.linspace(0.0, 1.0, grid_n + 1)
    X, Y = np.meshgrid(g, g, indexing="ij")
    C = copula.cdf(X, Y)

    boundary = np.concatenate([
        np.abs(C[:, 0]), np.abs(C[0, :]), np.abs(C[:, -1] - g), np.abs(C[-1, :] - g),
    ])
    volume = C[1:, 1:] - C[1:, :-1] - C[:-1, 1:] + C[:-1, :-1]
    h = np.diff(g)
    lip_x = np.abs(np.diff(C, axis=0)) - h[:, None]
    lip_y = np.abs(np.diff(C, axis=1)) - h[None, :]

    iv = np.unravel_index(np.argmin(volume), volume.shape)
    residuals = {
        "boundary": float(boundary.max()),
        "two_increasing": float(max(-volume.min(), 0.0)),
        "lipschitz": float(max(lip_x.max(), lip_y.max(), 0.0)),
    }
    locations = {"two_increasing": (float(g[iv[0]]), float(g[iv[1]]))}
    return ValidationReport(residuals, tolerance=tol, locations=locations)


def disintegration_residual(copula: Copula, x: float, y: float, quad_n: int = DEFAULT_QUAD_N) -> float:
    """|int_0^x K(s, [0, y]) ds - C(x, y)| with the midpoint rule."""
    if quad_n < 16:
        raise ValueError("quad_n must be >= 16")
    s = (np.arange(quad_n) + 0.5) * (x / quad_n)
    integral = float(np.sum(copula.kernel_cdf(s, y))) * (x / quad_n)
    return abs(integral - copula.cdf(x, y))


# ---------------------------------------------------------------------------
# Sampling


def kernel_quantile(copula: Copula, x, u):
    """inf{y : K(x, [0, y]) >= u} by bisection, vectorized over x and u."""
    x, u, scalar = _pair(x, u)
    x = x.astype(float).copy()
    u = u.astype(float).copy()
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    done = u <= 0.0
    hi[done] = 0.0
    for _ in range(QUANTILE_MAX_ITER):
        live = ~done & (hi - lo > QUANTILE_TOL)
        if not live.any():
            break
        mid = 0.5 * (lo[live] + hi[live])
        above = copula.kernel_cdf(x[live], mid) >= u[live]
        lo_live, hi_live = lo[live], hi[live]
        hi_live[above] = mid[above]
        lo_live[~above] = mid[~above]
        lo[live], hi[live] = lo_live, hi_live
    return float(hi) if scalar else hi


def make_rng(seed: int) -> np.random.Generator:
    """Philox4x64-10 keyed with the 64-bit seed, counter starting at zero.

    Doubles are numpy's ``(next_uint64 >> 11) * 2**-53``; the stream is
    therefore reproducible from the Philox reference algorithm alone.
    """
    key = int(seed) & (2**64 - 1)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class SampleSet:
    points: np.ndarray
    seed: int

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            write_sample_csv(self, fh)


def write_sample_csv(sample: SampleSet, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["x", "y"])
    for px, py in sample.points:
        writer.writerow([f"{px:.17g}", f"{py:.17g}"])


def read_sample_csv(path, seed: int = 0) -> SampleSet:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return SampleSet(points=data, seed=seed)


def sample(copula: Copula, n: int, seed: int) -> SampleSet:
    """Conditional inverse sampling: x = u1, y = K(x, .)^(-1)(u2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    uu = make_rng(seed).random((n, 2))
    x = uu[:, 0]
    y = kernel_quantile(copula, x, uu[:, 1])
    return SampleSet(points=np.column_stack([x, y]), seed=int(seed))


def empirical_copula(sample: SampleSet, x, y):
    """Empirical copula from rank-normalized coordinates."""
    if sample.n == 0:
        raise EmptySample("empirical copula of an empty sample")
    n = sample.n
    ru = rankdata(sample.x, method="max") / n
    rv = rankdata(sample.y, method="max") / n
    x, y, scalar = _pair(x, y)
    # sort by u so each query is a prefix; count v <= y within it
    order = np.argsort(ru, kind="stable")
    ru, rv = ru[order], rv[order]
    out = np.empty(x.shape)
    for idx in np.ndindex(x.shape):
        k = np.searchsorted(ru, x[idx], side="right")
        out[idx] = np.count_nonzero(rv[:k] <= y[idx]) / n
    return float(out) if scalar else out
