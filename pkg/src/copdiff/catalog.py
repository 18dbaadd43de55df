"""Named Pickands measures and one instance of every shipped copula family."""

from __future__ import annotations

import numpy as np

from .constructions import (
    CheckerboardCopula, MixtureCopula, RotationCopula, ShuffleCopula, checkerboard_approx,
    farey_offsets,
)
from .core import M, Pi, W, Copula
from .evc import evc_from_measure, gumbel
from .pickands import PickandsMeasure, mix_measures, normalize


def upper_bound_measure() -> PickandsMeasure:
    """delta_{1/2}; its EVC is M."""
    return PickandsMeasure.dirac(0.5)


def independence_measure() -> PickandsMeasure:
    """(delta_0 + delta_1)/2; its EVC is Pi."""
    return PickandsMeasure.discrete([0.0, 1.0], [0.5, 0.5])


def band_measure() -> PickandsMeasure:
    """Atoms 1/5, 3/5, 1/5 at 1/4, 1/2, 3/4.

    The EVC is supported on the band f^(1/4)(x) <= y <= f^(3/4)(x) and carries
    discrete mass 1/10, 1/2, 1/10 on the three atom graphs.
    """
    return PickandsMeasure.discrete([0.25, 0.5, 0.75], [0.2, 0.6, 0.2])


def mixed_measure() -> PickandsMeasure:
    """Density 1 on [0, 1/2), atoms at 1/2, 3/4 and 1, density 16/35 on [3/4, 1).

    Distribution function: t on [0, 1/2), 3/5 on [1/2, 3/4),
    16/35 t + 1/2 on [3/4, 1), 1 at t = 1.
    """
    return PickandsMeasure(
        atoms=((0.5, 0.1), (0.75, 16 / 35 * 0.75 + 0.5 - 0.6), (1.0, 1.0 - 16 / 35 - 0.5)),
        breaks=(0.0, 0.5, 0.75, 1.0),
        values=(1.0, 0.0, 16 / 35),
    )


def cantor_measure() -> PickandsMeasure:
    return PickandsMeasure.cantor()


def dense_atom_measure(n: int = 64) -> PickandsMeasure:
    """Atoms 2^-k at the first n rationals of (0, 1), recentred to mean 1/2.

    Truncation of a discrete measure with dense atoms; its EVC has discrete
    mass on the graph f^q for every listed q and a derivative gap there.
    """
    qs = farey_offsets(n + 1)[1:]
    w = 0.5 ** np.arange(1, n + 1)
    w[-1] *= 2.0
    return normalize(PickandsMeasure.discrete(qs, w))


def full_support_mixture(base: PickandsMeasure, eps: float = 0.1, n_atoms: int = 32) -> PickandsMeasure:
    """(1 - eps) base + eps (dense atoms + uniform density + Cantor)/3.

    Every term has mean 1/2, so the result is again a Pickands measure whose
    discrete, absolutely continuous and singular parts all have full support
    (up to the truncation of the atom sequence); it is within eps of ``base``
    in total variation.
    """
    uniform = PickandsMeasure(breaks=(0.0, 1.0), values=(1.0,))
    blend = mix_measures([(1 / 3, dense_atom_measure(n_atoms)), (1 / 3, uniform),
                          (1 / 3, PickandsMeasure.cantor())])
    return mix_measures([(1.0 - eps, base), (eps, blend)])


def shipped_instances() -> dict[str, Copula]:
    """One instance of every shipped family, plus the dense-family witnesses."""
    rng = np.random.default_rng(3)
    perm = np.eye(4)[rng.permutation(4)]
    T = (0.5 * perm + 0.5 * np.full((4, 4), 0.25)) / 4
    band = evc_from_measure(band_measure())
    return {
        "M": M,
        "W": W,
        "Pi": Pi,
        "evc-band": band,
        "evc-mixed": evc_from_measure(mixed_measure()),
        "evc-cantor": evc_from_measure(cantor_measure()),
        "evc-dense-atoms": evc_from_measure(dense_atom_measure(32)),
        "evc-full-support": evc_from_measure(full_support_mixture(band_measure())),
        "gumbel": gumbel(2.0),
        "shuffle": ShuffleCopula(3, [2, 3, 1]),
        "checkerboard-Pi": CheckerboardCopula(T, Pi),
        "checkerboard-M": CheckerboardCopula(T, M),
        "checkerboard-approx": checkerboard_approx(band, 8),
        "rotation": RotationCopula(6),
        "mix": MixtureCopula([(0.5, band), (0.3, W), (0.2, RotationCopula(4))]),
    }
