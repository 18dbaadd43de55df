"""Pickands dependence measures and functions.

A Pickands dependence measure is a probability measure on [0, 1] with mean
1/2. It is stored as a finite list of atoms, a histogram density and a
multiple of the standard Cantor measure, which keeps every quantity used
downstream (mass, mean, the distribution function and its running integral)
available in closed form.

The measure-to-function map is

    A(t) = 1 - t + 2 * int_0^t F(z) dz,        F(z) = measure([0, z]),

and the one-sided derivatives follow as D+A(t) = 2F(t) - 1 and
D-A(t) = 2F(t-) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import ValidationReport

MEASURE_TOL = 1e-12
CANTOR_DEPTH = 60


class InvalidMeasure(ValueError):
    """A measure fails the mass-one / mean-one-half constraints."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"not a Pickands dependence measure: {report.summary()}")


class DomainError(ValueError):
    pass


def _as_array(t):
    t = np.asarray(t, dtype=float)
    return t, t.ndim == 0


def _out(values, scalar):
    return float(values) if scalar else values


# ---------------------------------------------------------------------------
# Cantor function


def cantor_cdf(t, depth: int = CANTOR_DEPTH):
    """Cantor function by ternary digit expansion (at most ``depth`` digits)."""
    t, scalar = _as_array(t)
    t = np.clip(t, 0.0, 1.0)
    out = np.where(t >= 1.0, 1.0, 0.0)
    rem = np.where(t >= 1.0, 0.0, t)
    active = t < 1.0
    scale = 0.5
    for _ in range(depth):
        if not active.any():
            break
        t3 = rem * 3.0
        digit = np.minimum(np.floor(t3), 2.0)
        middle = active & (digit == 1.0)
        out = out + np.where(middle | (active & (digit == 2.0)), scale, 0.0)
        active = active & ~middle
        rem = t3 - digit
        scale *= 0.5
    return _out(out, scalar)


def cantor_integral(t, depth: int = CANTOR_DEPTH):
    """I(t) = int_0^t c(s) ds via the self-similarity of the Cantor function."""
    t, scalar = _as_array(t)
    t = np.clip(t, 0.0, 1.0)
    total = np.zeros_like(t)
    mult = np.ones_like(t)
    rem = t.copy()
    active = np.ones(t.shape, dtype=bool)
    for _ in range(depth):
        if not active.any():
            break
        first = active & (rem < 1.0 / 3.0)
        middle = active & (rem >= 1.0 / 3.0) & (rem <= 2.0 / 3.0)
        last = active & (rem > 2.0 / 3.0)
        total = total + np.where(middle, mult * (1.0 / 12.0 + (rem - 1.0 / 3.0) / 2.0), 0.0)
        total = total + np.where(last, mult * (0.25 + (rem - 2.0 / 3.0) / 2.0), 0.0)
        active = first | last
        rem = np.where(first, 3.0 * rem, np.where(last, 3.0 * rem - 2.0, rem))
        mult = mult / 6.0
    return _out(total, scalar)


# ---------------------------------------------------------------------------
# Measures


@dataclass(frozen=True)
class PickandsMeasure:
    """Atoms + piecewise-constant density + scaled Cantor measure on [0, 1].

    ``atoms`` holds ``(location, weight)`` pairs with strictly increasing
    locations; ``breaks`` and ``values`` describe the density (one value per
    piece ``[breaks[k], breaks[k+1])``). Nothing here enforces mass 1 or
    mean 1/2; use :func:`validate_measure` for that.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    breaks: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    singular_weight: float = 0.0
    _locs: np.ndarray = field(init=False, repr=False, compare=False)
    _weights: np.ndarray = field(init=False, repr=False, compare=False)
    _b: np.ndarray = field(init=False, repr=False, compare=False)
    _v: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        breaks = tuple(float(b) for b in self.breaks)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "singular_weight", float(self.singular_weight))

        locs = np.array([t for t, _ in atoms], dtype=float)
        weights = np.array([w for _, w in atoms], dtype=float)
        numbers = np.concatenate([locs, weights, breaks, values, [self.singular_weight]])
        if not np.all(np.isfinite(numbers)):
            raise ValueError("measure entries must be finite")
        if np.any((locs < 0) | (locs > 1)):
            raise ValueError("atom locations must lie in [0, 1]")
        if np.any(np.diff(locs) <= 0):
            raise ValueError("atom locations must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("atom weights must be positive")
        if values and len(breaks) != len(values) + 1:
            raise ValueError("density needs len(breaks) == len(values) + 1")
        if not values and len(breaks) > 1:
            raise ValueError("density breaks given without values")
        b = np.array(breaks if values else (), dtype=float)
        v = np.array(values, dtype=float)
        if b.size and (b[0] < 0 or b[-1] > 1 or np.any(np.diff(b) <= 0)):
            raise ValueError("density breaks must be strictly increasing in [0, 1]")
        if np.any(v < 0):
            raise ValueError("density values must be non-negative")
        if self.singular_weight < 0:
            raise ValueError("singular_weight must be non-negative")
        object.__setattr__(self, "_locs", locs)
        object.__setattr__(self, "_weights", weights)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_v", v)

    # -- constructors -----------------------------------------------------

    @classmethod
    def discrete(cls, locations, weights) -> "PickandsMeasure":
        """Build a purely atomic measure; coincident locations are merged."""
        merged: dict[float, float] = {}
        for t, w in zip(locations, weights):
            merged[float(t)] = merged.get(float(t), 0.0) + float(w)
        return cls(atoms=tuple(sorted(merged.items())))

    @classmethod
    def dirac(cls, t: float) -> "PickandsMeasure":
        return cls(atoms=((t, 1.0),))

    @classmethod
    def cantor(cls) -> "PickandsMeasure":
        return cls(singular_weight=1.0)

    # -- moments ----------------------------------------------------------

    @property
    def mass(self) -> float:
        piece = float(np.sum(self._v * np.diff(self._b))) if self._v.size else 0.0
        return float(np.sum(self._weights)) + piece + self.singular_weight

    @property
    def mean(self) -> float:
        piece = float(np.sum(self._v * np.diff(self._b**2) / 2.0)) if self._v.size else 0.0
        return float(np.sum(self._weights * self._locs)) + piece + 0.5 * self.singular_weight

    def scaled(self, factor: float) -> "PickandsMeasure":
        return PickandsMeasure(
            atoms=tuple((t, w * factor) for t, w in self.atoms),
            breaks=self.breaks,
            values=tuple(v * factor for v in self.values),
            singular_weight=self.singular_weight * factor,
        )

    def with_atom(self, t: float, w: float) -> "PickandsMeasure":
        merged = dict(self.atoms)
        merged[float(t)] = merged.get(float(t), 0.0) + float(w)
        return PickandsMeasure(
            atoms=tuple(sorted(merged.items())),
            breaks=self.breaks,
            values=self.values,
            singular_weight=self.singular_weight,
        )

    def reflected(self) -> "PickandsMeasure":
        """Push-forward under t -> 1 - t (the Cantor measure is symmetric)."""
        atoms = tuple(sorted((1.0 - t, w) for t, w in self.atoms))
        breaks = tuple(1.0 - b for b in reversed(self.breaks))
        values = tuple(reversed(self.values))
        return PickandsMeasure(atoms, breaks, values, self.singular_weight)

    def atom_weight(self, t: float) -> float:
        hit = self._locs == t
        return float(self._weights[hit].sum()) if hit.any() else 0.0

    # -- distribution function ------------------------------------------

    def _density_cdf(self, t):
        if not self._v.size:
            return np.zeros_like(t)
        e = np.clip(t[..., None], self._b[:-1], self._b[1:])
        return np.sum(self._v * (e - self._b[:-1]), axis=-1)

    def _density_cdf_integral(self, t):
        # int_0^t int_0^z rho = sum_k v_k [ (t-b_k)_+^2 - (t-e_k)^2 ] / 2
        if not self._v.size:
            return np.zeros_like(t)
        tt = t[..., None]
        lo = self._b[:-1]
        e = np.clip(tt, lo, self._b[1:])
        piece = np.where(tt > lo, (tt - lo) ** 2 - (tt - e) ** 2, 0.0)
        return np.sum(self._v * piece / 2.0, axis=-1)

    def cdf(self, t, left: bool = False):
        """F(t) = measure([0, t]); with ``left=True`` returns F(t-)."""
        t, scalar = _as_array(t)
        if self._locs.size:
            tt = t[..., None]
            hit = (self._locs < tt) if left else (self._locs <= tt)
            atoms = np.sum(np.where(hit, self._weights, 0.0), axis=-1)
        else:
            atoms = np.zeros_like(t)
        out = atoms + self._density_cdf(t)
        if self.singular_weight:
            out = out + self.singular_weight * cantor_cdf(t)
        return _out(out, scalar)

    def cdf_integral(self, t):
        """int_0^t F(z) dz in closed form."""
        t, scalar = _as_array(t)
        if self._locs.size:
            out = np.sum(self._weights * np.maximum(t[..., None] - self._locs, 0.0), axis=-1)
        else:
            out = np.zeros_like(t)
        out = out + self._density_cdf_integral(t)
        if self.singular_weight:
            out = out + self.singular_weight * cantor_integral(t)
        return _out(out, scalar)

    def support_bounds(self) -> tuple[float, float]:
        lows, highs = [], []
        if self._locs.size:
            lows.append(self._locs[0])
            highs.append(self._locs[-1])
        if self._v.size:
            pos = np.nonzero(self._v > 0)[0]
            if pos.size:
                lows.append(self._b[pos[0]])
                highs.append(self._b[pos[-1] + 1])
        if self.singular_weight > 0:
            lows.append(0.0)
            highs.append(1.0)
        if not lows:
            raise ValueError("empty measure has no support")
        return float(min(lows)), float(max(highs))

    # -- serialization ---------------------------------------------------

    def to_spec(self) -> dict:
        return {
            "atoms": [[t, w] for t, w in self.atoms],
            "density": {"breaks": list(self.breaks), "values": list(self.values)},
            "singular_weight": self.singular_weight,
        }

    @classmethod
    def from_spec(cls, spec: dict) -> "PickandsMeasure":
        density = spec.get("density") or {}
        return cls(
            atoms=tuple((t, w) for t, w in spec.get("atoms", [])),
            breaks=tuple(density.get("breaks", [])),
            values=tuple(density.get("values", [])),
            singular_weight=spec.get("singular_weight", 0.0),
        )


def validate_measure(m: PickandsMeasure, tol: float = MEASURE_TOL) -> ValidationReport:
    return ValidationReport(
        {"mass": abs(m.mass - 1.0), "mean": abs(m.mean - 0.5)},
        tolerance=tol,
    )


def measure_cdf(m: PickandsMeasure, t):
    return m.cdf(t)


def endpoints_LR(m: PickandsMeasure) -> tuple[float, float]:
    """L = sup{F = 0} and R = inf{F = 1}, i.e. the ends of the support."""
    return m.support_bounds()


def normalize(mu: PickandsMeasure) -> PickandsMeasure:
    """Mix a probability measure with a boundary atom so that its mean is 1/2."""
    mean = mu.mean
    if abs(mean - 0.5) <= MEASURE_TOL:
        return mu
    if mean > 0.5:
        alpha = 1.0 / (2.0 * mean)
        return mu.scaled(alpha).with_atom(0.0, 1.0 - alpha)
    if mean < 0.5:
        beta = 1.0 / (2.0 * (1.0 - mean))
        return mu.scaled(beta).with_atom(1.0, 1.0 - beta)
    return mu


def mix_measures(parts) -> PickandsMeasure:
    """Convex combination sum w_i m_i of measures given as (w_i, m_i) pairs."""
    atoms: dict[float, float] = {}
    breaks: set[float] = set()
    singular = 0.0
    for w, m in parts:
        for t, a in m.atoms:
            atoms[t] = atoms.get(t, 0.0) + w * a
        breaks.update(m.breaks if m.values else ())
        singular += w * m.singular_weight
    b = np.array(sorted(breaks))
    values = np.zeros(max(b.size - 1, 0))
    if b.size:
        mids = (b[:-1] + b[1:]) / 2.0
        for w, m in parts:
            if m.values:
                k = np.searchsorted(m._b, mids, side="right") - 1
                inside = (k >= 0) & (k < m._v.size)
                values += w * np.where(inside, m._v[np.clip(k, 0, m._v.size - 1)], 0.0)
    return PickandsMeasure(
        atoms=tuple(sorted((t, a) for t, a in atoms.items() if a > 0)),
        breaks=tuple(b) if values.size else (),
        values=tuple(values),
        singular_weight=singular,
    )


# ---------------------------------------------------------------------------
# Pickands functions


class PickandsFunction:
    """Convex A on [0, 1] with max(1-t, t) <= A <= 1, plus one-sided slopes.

    Subclasses implement ``value``, ``d_plus`` and ``d_minus`` on arrays.
    ``d_plus(1)`` is defined as ``d_minus(1)``.
    """

    provenance = "closed-form"

    def __call__(self, t):
        return self.value(t)

    def value(self, t):
        raise NotImplementedError

    def d_plus(self, t):
        raise NotImplementedError

    def d_minus(self, t):
        raise NotImplementedError

    def g(self, t):
        """G_A(t) = A(t) + D+A(t) (1 - t), with G_A(1) = 1."""
        t, scalar = _as_array(t)
        out = np.where(t >= 1.0, 1.0, self.value(t) + self.d_plus(t) * (1.0 - t))
        return _out(out, scalar)

    def atoms(self) -> list[tuple[float, float]] | None:
        """Atoms of the Pickands measure inside (0, 1); None when unknown."""
        return None

    def endpoints(self) -> tuple[float, float] | None:
        return None

    def reflected(self) -> "PickandsFunction":
        return ReflectedPickands(self)

    def to_spec(self) -> dict:
        raise NotImplementedError


class MeasurePickands(PickandsFunction):
    provenance = "from-measure"

    def __init__(self, measure: PickandsMeasure):
        self.measure = measure

    def value(self, t):
        t, scalar = _as_array(t)
        return _out(1.0 - t + 2.0 * self.measure.cdf_integral(t), scalar)

    def d_plus(self, t):
        t, scalar = _as_array(t)
        out = np.where(t >= 1.0, 2.0 * self.measure.cdf(t, left=True) - 1.0,
                       2.0 * self.measure.cdf(t) - 1.0)
        return _out(out, scalar)

    def d_minus(self, t):
        t, scalar = _as_array(t)
        return _out(2.0 * self.measure.cdf(t, left=True) - 1.0, scalar)

    def atoms(self):
        return [(t, w) for t, w in self.measure.atoms if 0.0 < t < 1.0]

    def endpoints(self):
        return endpoints_LR(self.measure)

    def reflected(self):
        return MeasurePickands(self.measure.reflected())

    def to_spec(self):
        return {"family": "evc", "measure": self.measure.to_spec()}

    def __repr__(self):
        return f"MeasurePickands({self.measure!r})"


class GumbelPickands(PickandsFunction):
    """A(t) = (t^theta + (1-t)^theta)^(1/theta)."""

    def __init__(self, theta: float):
        if not theta >= 1.0:
            raise DomainError(f"Gumbel parameter must be >= 1, got {theta}")
        self.theta = float(theta)

    def value(self, t):
        t, scalar = _as_array(t)
        th = self.theta
        return _out((t**th + (1.0 - t) ** th) ** (1.0 / th), scalar)

    def d_plus(self, t):
        t, scalar = _as_array(t)
        th = self.theta
        s = t**th + (1.0 - t) ** th
        out = s ** (1.0 / th - 1.0) * (t ** (th - 1.0) - (1.0 - t) ** (th - 1.0))
        return _out(out, scalar)

    d_minus = d_plus

    def atoms(self):
        return []

    def endpoints(self):
        return (0.5, 0.5) if np.isinf(self.theta) else (0.0, 1.0)

    def reflected(self):
        return self

    def to_spec(self):
        return {"family": "gumbel", "theta": self.theta}

    def __repr__(self):
        return f"GumbelPickands(theta={self.theta})"


class ReflectedPickands(PickandsFunction):
    """t -> A(1 - t) for Pickands functions without a measure."""

    def __init__(self, base: PickandsFunction):
        self.base = base

    def value(self, t):
        t, scalar = _as_array(t)
        return _out(self.base.value(1.0 - t), scalar)

    def d_plus(self, t):
        t, scalar = _as_array(t)
        return _out(-self.base.d_minus(1.0 - t), scalar)

    def d_minus(self, t):
        t, scalar = _as_array(t)
        return _out(-self.base.d_plus(1.0 - t), scalar)

    def atoms(self):
        inner = self.base.atoms()
        return None if inner is None else sorted((1.0 - t, w) for t, w in inner)

    def endpoints(self):
        ends = self.base.endpoints()
        return None if ends is None else (1.0 - ends[1], 1.0 - ends[0])

    def reflected(self):
        return self.base


def upsilon(m: PickandsMeasure) -> MeasurePickands:
    """Map a Pickands dependence measure to its Pickands dependence function."""
    report = validate_measure(m)
    if not report.passed:
        raise InvalidMeasure(report)
    return MeasurePickands(m)


def d_plus(A: PickandsFunction, t):
    return A.d_plus(t)


def d_minus(A: PickandsFunction, t):
    return A.d_minus(t)


def g_a(A: PickandsFunction, t):
    return A.g(t)


def gumbel_function(theta: float) -> GumbelPickands:
    return GumbelPickands(theta)


def validate_function(A: PickandsFunction, grid_n: int = 1001, tol: float = 1e-12) -> ValidationReport:
    """Bounds, endpoint values, convexity and slope range of A on a grid."""
    t = np.linspace(0.0, 1.0, grid_n)
    a = A.value(t)
    lower = np.maximum(1.0 - t, t)
    dp = A.d_plus(t)
    dm = A.d_minus(t[1:])
    residuals = {
        "lower_bound": float(np.max(np.maximum(lower - a, 0.0))),
        "upper_bound": float(np.max(np.maximum(a - 1.0, 0.0))),
        "endpoints": float(max(abs(a[0] - 1.0), abs(a[-1] - 1.0))),
        "convexity": float(np.max(np.maximum(-np.diff(dp), 0.0))),
        "slope_range": float(np.max(np.maximum(np.abs(dp) - 1.0, 0.0))),
        "one_sided_order": float(np.max(np.maximum(dm - dp[1:], 0.0))),
    }
    return ValidationReport(residuals, tolerance=tol)
