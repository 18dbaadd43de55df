"""Shuffles of M, checkerboards, rotation-kernel copulas and mixtures."""

from __future__ import annotations

from fractions import Fraction
from itertools import count

import numpy as np

from .core import Copula, Pi

DS_TOL = 1e-12


class NotDoublyStochastic(ValueError):
    pass


class WeightsInvalid(ValueError):
    pass


def _stripe(x, N):
    # left-closed stripes; x = 1 belongs to the last one
    return np.minimum(np.floor(np.asarray(x, dtype=float) * N), N - 1).astype(int)


class ShuffleCopula(Copula):
    """Equidistant even shuffle of M: stripe i is moved to stripe sigma(i)."""

    family = "shuffle"

    def __init__(self, N: int, sigma):
        sigma = [int(s) for s in sigma]
        if N < 1 or sorted(sigma) != list(range(1, N + 1)):
            raise ValueError(f"sigma must be a permutation of 1..{N}")
        self.N = int(N)
        self.sigma = tuple(sigma)
        self._shift = (np.array(sigma) - 1 - np.arange(N)) / N

    def h(self, x):
        x = np.asarray(x, dtype=float)
        out = x + self._shift[_stripe(x, self.N)]
        return float(out) if out.ndim == 0 else out

    def _cdf(self, x, y):
        # lambda{s <= x : h(s) <= y}, summed stripe by stripe
        i = np.arange(self.N)
        lo = i / self.N
        hi = (i + 1) / self.N
        top = np.minimum(np.minimum(x[..., None], hi), y[..., None] - self._shift)
        return np.sum(np.maximum(top - lo, 0.0), axis=-1)

    def _kernel(self, x, y):
        return np.where(self.h(x) <= y, 1.0, 0.0)

    def jumps(self, x):
        return [(self.h(x), 1.0)]

    def transpose(self):
        inverse = [0] * self.N
        for i, s in enumerate(self.sigma, start=1):
            inverse[s - 1] = i
        return ShuffleCopula(self.N, inverse)

    def to_spec(self):
        return {"family": "shuffle", "N": self.N, "sigma": list(self.sigma)}


def shuffle_map(s: ShuffleCopula, x):
    return s.h(x)


def shuffle_cdf(s: ShuffleCopula, x, y):
    return s.cdf(x, y)


def shuffle_kernel(s: ShuffleCopula, x, y):
    return s.kernel_cdf(x, y)


class CheckerboardCopula(Copula):
    """T-checkerboard of a base copula B.

    Cell (i, j) carries mass T[i, j] spread as a rescaled copy of B.
    """

    family = "checkerboard"

    def __init__(self, T, base: Copula = Pi):
        T = np.array(T, dtype=float)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise NotDoublyStochastic("T must be a square matrix")
        N = T.shape[0]
        if np.any(T < 0):
            raise NotDoublyStochastic("T has negative entries")
        dev = max(np.abs(T.sum(axis=0) - 1.0 / N).max(), np.abs(T.sum(axis=1) - 1.0 / N).max())
        if dev > DS_TOL:
            raise NotDoublyStochastic(f"N*T is not doubly stochastic (deviation {dev:.3g})")
        self.N = N
        self.T = T
        self.base = base
        # S[i, j] = sum of T over rows < i and columns < j
        self._S = np.zeros((N + 1, N + 1))
        self._S[1:, 1:] = T.cumsum(axis=0).cumsum(axis=1)
        self._row = np.zeros((N, N + 1))
        self._row[:, 1:] = T.cumsum(axis=1)
        self._col = np.zeros((N + 1, N))
        self._col[1:, :] = T.cumsum(axis=0)

    def _cells(self, x, y):
        i = _stripe(x, self.N)
        j = _stripe(y, self.N)
        return i, j, x * self.N - i, y * self.N - j

    def _cdf(self, x, y):
        i, j, a, b = self._cells(x, y)
        inner = self.T[i, j] * self.base.cdf(a, b)
        return self._S[i, j] + a * self._row[i, j] + b * self._col[i, j] + inner

    def _kernel(self, x, y):
        i, j, a, b = self._cells(x, y)
        inner = self.T[i, j] * self.base.kernel_cdf(a, b)
        return self.N * (self._row[i, j] + inner)

    def jumps(self, x):
        i = int(_stripe(x, self.N))
        a = x * self.N - i
        out = []
        for j in range(self.N):
            if self.T[i, j] > 0:
                out.extend(((j + loc) / self.N, self.N * self.T[i, j] * size)
                           for loc, size in self.base.jumps(a))
        return out

    def transpose(self):
        return CheckerboardCopula(self.T.T, self.base.transpose())

    def to_spec(self):
        return {"family": "checkerboard", "N": self.N, "T": self.T.tolist(),
                "base": self.base.to_spec()}


def checkerboard(T, base: Copula = Pi) -> CheckerboardCopula:
    return CheckerboardCopula(T, base)


def cell_masses(a: Copula, N: int) -> np.ndarray:
    """mu_A of every N x N grid cell by inclusion-exclusion of the cdf."""
    g = np.arange(N + 1) / N
    C = a.cdf(*np.meshgrid(g, g, indexing="ij"))
    T = C[1:, 1:] - C[1:, :-1] - C[:-1, 1:] + C[:-1, :-1]
    return np.maximum(T, 0.0)


def checkerboard_approx(a: Copula, N: int, base: Copula = Pi) -> CheckerboardCopula:
    if N < 1:
        raise ValueError("N must be >= 1")
    return CheckerboardCopula(cell_masses(a, N), base)


def farey_offsets(n: int) -> list[float]:
    """First n rationals of [0, 1) ordered by denominator, then numerator."""
    out: list[float] = []
    for q in count(1):
        for p in range(q):
            if Fraction(p, q).denominator == q:
                out.append(p / q)
                if len(out) == n:
                    return out
    return out


class RotationCopula(Copula):
    """Kernel sum_n 2^-n delta_{x + r_n mod 1} with the tail 2^-N put on Pi."""

    family = "rotation"

    def __init__(self, terms: int, offsets=None):
        if terms < 1:
            raise ValueError("terms must be >= 1")
        offsets = farey_offsets(terms) if offsets is None else [float(r) for r in offsets]
        if len(offsets) != terms:
            raise ValueError("need exactly one offset per term")
        if len(set(offsets)) != terms or any(not 0.0 <= r < 1.0 for r in offsets):
            raise ValueError("offsets must be distinct values in [0, 1)")
        self.terms = int(terms)
        self.offsets = np.array(offsets, dtype=float)
        self.weights = 0.5 ** np.arange(1, terms + 1)
        self.tail_weight = 0.5**terms
        self._default_offsets = offsets == farey_offsets(terms)

    def rotate(self, x, n: int):
        """R_{r_n}(x) for 1-based term index n."""
        return (x + self.offsets[n - 1]) % 1.0

    def _cdf(self, x, y):
        r = self.offsets
        xx, yy = x[..., None], y[..., None]
        first = np.maximum(np.minimum(xx, yy - r), 0.0)
        second = np.maximum(np.minimum(xx, yy + 1.0 - r) - (1.0 - r), 0.0)
        return np.sum(self.weights * (first + second), axis=-1) + self.tail_weight * x * y

    def _kernel(self, x, y):
        images = (x[..., None] + self.offsets) % 1.0
        hit = images <= y[..., None]
        return np.sum(np.where(hit, self.weights, 0.0), axis=-1) + self.tail_weight * y

    def jumps(self, x):
        return [((x + r) % 1.0, w) for r, w in zip(self.offsets, self.weights)]

    def transpose(self):
        return RotationCopula(self.terms, [(1.0 - r) % 1.0 for r in self.offsets])

    def to_spec(self):
        spec = {"family": "rotation", "terms": self.terms}
        if not self._default_offsets:
            spec["offsets"] = self.offsets.tolist()
        return spec


def rotation_overlap(x: float, y: float, r: float) -> float:
    """lambda([0, x] intersected with {s : (s + r) mod 1 <= y})."""
    first = max(min(x, y - r), 0.0)
    second = max(min(x, y + 1.0 - r) - (1.0 - r), 0.0)
    return first + second


def rotation_cdf(r: RotationCopula, x, y):
    return r.cdf(x, y)


def rotation_kernel(r: RotationCopula, x, y):
    return r.kernel_cdf(x, y)


class MixtureCopula(Copula):
    family = "mix"

    def __init__(self, parts):
        parts = [(float(w), c) for w, c in parts]
        if not parts or any(w <= 0 for w, _ in parts):
            raise WeightsInvalid("mixture weights must be positive")
        if abs(sum(w for w, _ in parts) - 1.0) > DS_TOL:
            raise WeightsInvalid("mixture weights must sum to 1")
        self.parts = parts

    def _cdf(self, x, y):
        return sum(w * c.cdf(x, y) for w, c in self.parts)

    def _kernel(self, x, y):
        return sum(w * c.kernel_cdf(x, y) for w, c in self.parts)

    def _edge_kernel(self, y):
        return sum(w * c._edge_kernel(y) for w, c in self.parts)

    def jumps(self, x):
        merged: dict[float, float] = {}
        for w, c in self.parts:
            for loc, size in c.jumps(x):
                merged[loc] = merged.get(loc, 0.0) + w * size
        return sorted(merged.items())

    def transpose(self):
        return MixtureCopula([(w, c.transpose()) for w, c in self.parts])

    def to_spec(self):
        return {"family": "mix", "parts": [[w, c.to_spec()] for w, c in self.parts]}


def convex_combination(parts) -> MixtureCopula:
    return MixtureCopula(parts)
