"""Extreme Value copulas C(x, y) = (xy)^A(log x / log(xy)).

The Markov kernel is K(x, [0, y]) = C(x, y)/x * G_A(log x / log(xy)). Every
atom t in (0, 1) of the Pickands measure puts mass on the graph of
f^t(x) = x^(1/t - 1); the mass is 2 t (1 - t) / A(t) times the atom weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Copula
from .pickands import (
    GumbelPickands,
    MeasurePickands,
    PickandsFunction,
    PickandsMeasure,
    upsilon,
    validate_function,
)


class MeasureUnavailable(ValueError):
    pass


class NotAnAtom(ValueError):
    pass


class InvalidPickandsFunction(ValueError):
    pass


def graph_function(t: float, x):
    """f^t(x) = x^(1/t - 1), with f^t(0) = 0."""
    x = np.asarray(x, dtype=float)
    out = np.where(x > 0, np.power(np.where(x > 0, x, 1.0), 1.0 / t - 1.0), 0.0)
    return float(out) if out.ndim == 0 else out


class ExtremeValueCopula(Copula):
    family = "evc"

    def __init__(self, A: PickandsFunction):
        self.A = A
        if isinstance(A, GumbelPickands):
            self.family = "gumbel"

    @property
    def measure(self) -> PickandsMeasure | None:
        return self.A.measure if isinstance(self.A, MeasurePickands) else None

    def _ratio(self, x, y):
        lx = np.log(x)
        lxy = lx + np.log(y)
        return lx / lxy, lxy

    def _cdf(self, x, y):
        phi, lxy = self._ratio(x, y)
        return np.exp(lxy * self.A.value(phi))

    def _kernel(self, x, y):
        phi, lxy = self._ratio(x, y)
        c = np.exp(lxy * self.A.value(phi))
        return c / x * self.A.g(phi)

    def _edge_kernel(self, y):
        return np.ones_like(y)

    def jumps(self, x):
        atoms = self.A.atoms() or []
        out = []
        for t, w in atoms:
            loc = graph_function(t, x)
            c = self.cdf(x, loc)
            out.append((loc, 2.0 * w * (1.0 - t) * c / x))
        return out

    def transpose(self):
        return ExtremeValueCopula(self.A.reflected())

    def to_spec(self):
        return self.A.to_spec()

    def __repr__(self):
        return f"ExtremeValueCopula({self.A!r})"


def evc_from_measure(m: PickandsMeasure) -> ExtremeValueCopula:
    return ExtremeValueCopula(upsilon(m))


def evc_from_function(A: PickandsFunction) -> ExtremeValueCopula:
    report = validate_function(A)
    if not report.passed:
        raise InvalidPickandsFunction(report.summary())
    return ExtremeValueCopula(A)


def gumbel(theta: float) -> ExtremeValueCopula:
    return ExtremeValueCopula(GumbelPickands(theta))


def evc_kernel(c: ExtremeValueCopula, x, y):
    return c.kernel_cdf(x, y)


def _atoms(c: ExtremeValueCopula) -> list[tuple[float, float]]:
    atoms = c.A.atoms()
    if atoms is None:
        raise MeasureUnavailable("Pickands measure unknown for this copula")
    return atoms


def graph_mass(c: ExtremeValueCopula, t: float) -> float:
    """mu_C(graph of f^t) = 2 t (1 - t) / A(t) * measure({t})."""
    weight = dict(_atoms(c)).get(float(t), 0.0)
    if weight == 0.0:
        return 0.0
    return 2.0 * t * (1.0 - t) / c.A.value(t) * weight


@dataclass(frozen=True)
class ComponentMasses:
    dis: float
    rest: float
    per_atom: list[tuple[float, float]]

    def to_dict(self) -> dict:
        return {
            "dis": self.dis,
            "rest": self.rest,
            "per_atom": [{"t": t, "mass": m} for t, m in self.per_atom],
        }


def component_masses(c: ExtremeValueCopula) -> ComponentMasses:
    """Discrete mass per atom graph; ``rest`` lumps the other components."""
    per_atom = [(t, graph_mass(c, t)) for t, _ in _atoms(c)]
    dis = float(sum(m for _, m in per_atom))
    return ComponentMasses(dis=dis, rest=1.0 - dis, per_atom=per_atom)


def support_bounds(c: ExtremeValueCopula, x: float) -> tuple[float, float]:
    """(f^L(x), f^R(x)); L = 0 gives 0 and R = 1 gives 1."""
    ends = c.A.endpoints()
    if ends is None:
        raise MeasureUnavailable("endpoints L, R unknown for this copula")
    L, R = ends
    lo = 0.0 if L <= 0.0 else graph_function(L, x) if L < 1.0 else 1.0
    hi = 1.0 if R >= 1.0 else graph_function(R, x) if R > 0.0 else 0.0
    return lo, hi


def jump_size(c: ExtremeValueCopula, x: float, t: float) -> float:
    """Gap between the one-sided x-derivatives of C at (x, f^t(x))."""
    weight = dict(_atoms(c)).get(float(t), 0.0)
    if weight == 0.0:
        raise NotAnAtom(f"{t} is not an atom of the Pickands measure")
    return 2.0 * weight * (1.0 - t) * c.cdf(x, graph_function(t, x)) / x


def transpose(c: ExtremeValueCopula) -> ExtremeValueCopula:
    return c.transpose()
