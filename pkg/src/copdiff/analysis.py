"""Copula metrics and finite-difference derivative diagnostics.

Finite differences cannot prove that a derivative fails to exist; gaps are
reported above a threshold, and families that know where their kernels jump
attach those locations with exact gap sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Copula

DEFAULT_STEPS = (1e-4, 1e-5, 1e-6, 1e-7)
D_INF_Y_POINTS = 1025


class StepUnderflow(ValueError):
    pass


@dataclass(frozen=True)
class MetricReport:
    metric: str
    value: float
    grid_n: int
    quad_n: int | None = None
    argmax: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        return {"metric": self.metric, "value": self.value, "grid_n": self.grid_n,
                "quad_n": self.quad_n, "argmax": list(self.argmax) if self.argmax else None}


def d_inf(a: Copula, b: Copula, grid_n: int = 512) -> MetricReport:
    """max |C_a - C_b| over the (grid_n + 1)^2 lattice.

    The true supremum is at most 2/grid_n above the reported value.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    g = np.linspace(0.0, 1.0, grid_n + 1)
    best, where = -1.0, (0.0, 0.0)
    for x in g:
        gap = np.abs(a.cdf(x, g) - b.cdf(x, g))
        k = int(np.argmax(gap))
        if gap[k] > best:
            best, where = float(gap[k]), (float(x), float(g[k]))
    return MetricReport("d_inf", best, grid_n, argmax=where)


def d_p(a: Copula, b: Copula, p: float = 1.0, grid_n: int = 1024) -> MetricReport:
    """Markov-kernel distance D_p by midpoint product quadrature.

    For p = inf the supremum over y runs over a 1025-point grid and each
    x-integral uses ``grid_n`` midpoint panels.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    mids = (np.arange(grid_n) + 0.5) / grid_n
    if np.isinf(p):
        ys = np.linspace(0.0, 1.0, D_INF_Y_POINTS)
        vals = np.array([np.mean(np.abs(a.kernel_cdf(mids, y) - b.kernel_cdf(mids, y))) for y in ys])
        k = int(np.argmax(vals))
        return MetricReport("D_inf", float(vals[k]), D_INF_Y_POINTS, grid_n, argmax=(float(ys[k]),))
    total = 0.0
    # fixed row order keeps the accumulation deterministic
    for x in mids:
        total += float(np.sum(np.abs(a.kernel_cdf(x, mids) - b.kernel_cdf(x, mids)) ** p))
    value = (total / grid_n**2) ** (1.0 / p)
    return MetricReport(f"D_{p:g}", value, grid_n, grid_n)


@dataclass
class DerivativeProbe:
    x: float
    y: float
    h_sequence: tuple[float, ...] = DEFAULT_STEPS
    plus_quotients: list[float] = field(default_factory=list)
    minus_quotients: list[float] = field(default_factory=list)
    plus_estimate: float | None = None
    minus_estimate: float | None = None
    gap: float | None = None

    def to_dict(self) -> dict:
        return {
            "x": self.x, "y": self.y, "h_sequence": list(self.h_sequence),
            "plus_quotients": self.plus_quotients, "minus_quotients": self.minus_quotients,
            "plus": self.plus_estimate, "minus": self.minus_estimate, "gap": self.gap,
        }


def _quotients(c: Copula, x: float, y: float, steps, sign: float) -> list[float]:
    base = c.cdf(x, y)
    out = []
    for h in steps:
        xs = x + sign * h
        if 0.0 <= xs <= 1.0:
            out.append((c.cdf(xs, y) - base) / (sign * h))
    return out


def one_sided_partial(c: Copula, x: float, y: float, side: str = "both",
                      h_sequence=DEFAULT_STEPS) -> DerivativeProbe:
    """One-sided difference quotients of C in x; the estimate is the last one."""
    if side not in ("plus", "minus", "both"):
        raise ValueError(f"side must be plus, minus or both, got {side!r}")
    probe = DerivativeProbe(float(x), float(y), tuple(h_sequence))
    if side in ("plus", "both"):
        probe.plus_quotients = _quotients(c, x, y, h_sequence, +1.0)
        if not probe.plus_quotients:
            raise StepUnderflow(f"x + h leaves [0, 1] for every step at x={x}")
        probe.plus_estimate = probe.plus_quotients[-1]
    if side in ("minus", "both"):
        probe.minus_quotients = _quotients(c, x, y, h_sequence, -1.0)
        if not probe.minus_quotients:
            raise StepUnderflow(f"x - h leaves [0, 1] for every step at x={x}")
        probe.minus_estimate = probe.minus_quotients[-1]
    if side == "both":
        probe.gap = abs(probe.plus_estimate - probe.minus_estimate)
    return probe


def derivative_profile(c: Copula, x: float, y_grid_n: int, h: float = DEFAULT_STEPS[-1]):
    """Plus/minus quotients in x along an interior y-grid at fixed x."""
    ys = np.linspace(0.0, 1.0, y_grid_n + 2)[1:-1]
    base = c.cdf(x, ys)
    plus = (c.cdf(min(x + h, 1.0), ys) - base) / (min(x + h, 1.0) - x)
    minus = (base - c.cdf(max(x - h, 0.0), ys)) / (x - max(x - h, 0.0))
    return ys, plus, minus, np.abs(plus - minus)


def nondiff_scan(c: Copula, x: float, y_grid_n: int = 201, threshold: float = 1e-2,
                 h: float = DEFAULT_STEPS[-1], merge_tol: float = 1e-6) -> list[tuple[float, float]]:
    """(y, gap) where the one-sided x-derivatives of C disagree by > threshold.

    Grid detections are merged with the kernel's enumerated point masses;
    for graph-carried masses (EVC atom graphs, rotation images, shuffle
    graphs) the point mass equals the derivative gap. Analytic entries win
    over nearby grid hits.
    """
    if not 0.0 < x < 1.0:
        raise ValueError("x must be interior")
    hits: list[tuple[float, float]] = [
        (float(loc), float(size)) for loc, size in c.jumps(x)
        if size > threshold and 0.0 < loc < 1.0
    ]
    ys, _, _, gap = derivative_profile(c, x, y_grid_n, h)
    for y, g in zip(ys, gap):
        if g > threshold and all(abs(y - loc) > merge_tol for loc, _ in hits):
            hits.append((float(y), float(g)))
    return sorted(hits)


def kernel_derivative_consistency(c: Copula, x: float, y_grid_n: int = 21, h: float = 1e-5) -> float:
    """max_y |central difference of C in x - K(x, [0, y])| on an interior y-grid."""
    ys = np.linspace(0.0, 1.0, y_grid_n + 2)[1:-1]
    central = (c.cdf(x + h, ys) - c.cdf(x - h, ys)) / (2.0 * h)
    return float(np.max(np.abs(central - c.kernel_cdf(x, ys))))


def schwarz_check(c: Copula, grid_n: int = 21, h: float = 1e-4) -> float:
    """max |d/dy K_C(x, [0, y]) - d/dx K_{C^t}(y, [0, x])| on an interior grid."""
    ct = c.transpose()
    g = np.linspace(0.0, 1.0, grid_n + 2)[1:-1]
    X, Y = np.meshgrid(g, g, indexing="ij")
    left = (c.kernel_cdf(X, Y + h) - c.kernel_cdf(X, Y - h)) / (2.0 * h)
    right = (ct.kernel_cdf(Y, X + h) - ct.kernel_cdf(Y, X - h)) / (2.0 * h)
    return float(np.max(np.abs(left - right)))
