import numpy as np
import pytest
from hypothesis import given, strategies as st

from copdiff.catalog import band_measure, cantor_measure, mixed_measure
from copdiff.pickands import (
    DomainError, InvalidMeasure, PickandsMeasure, cantor_cdf, cantor_integral, d_minus,
    d_plus, endpoints_LR, g_a, gumbel_function, measure_cdf, mix_measures, normalize,
    upsilon, validate_function, validate_measure,
)

GRID = np.linspace(0.0, 1.0, 1001)
DELTA_HALF = PickandsMeasure.dirac(0.5)
PI_MEASURE = PickandsMeasure.discrete([0.0, 1.0], [0.5, 0.5])


def band_A(t):
    # piecewise function printed next to the three-atom measure
    t = np.asarray(t)
    return np.select(
        [t < 0.25, t < 0.5, t < 0.75],
        [1 - t, -0.6 * t + 0.9, 0.6 * t + 0.3],
        t,
    )


@st.composite
def measures(draw):
    """Random probability measures (arbitrary mean) in storage form."""
    n_atoms = draw(st.integers(0, 4))
    locs = sorted(set(draw(st.lists(st.floats(0, 1), min_size=n_atoms, max_size=n_atoms))))
    aw = [draw(st.floats(0.05, 1)) for _ in locs]
    n_pieces = draw(st.integers(0, 3))
    cuts = sorted(set([0.0, 1.0] + draw(st.lists(st.floats(0.01, 0.99), min_size=n_pieces, max_size=n_pieces))))
    vals = [draw(st.floats(0, 2)) for _ in cuts[:-1]]
    sw = draw(st.floats(0, 1))
    m = PickandsMeasure(tuple(zip(locs, aw)), tuple(cuts), tuple(vals), sw)
    if m.mass < 1e-3:
        m = PickandsMeasure(m.atoms, m.breaks, m.values, sw + 1.0)
    return m.scaled(1.0 / m.mass)


class TestValidateMeasure:
    def test_upper_bound_measure_passes(self):
        assert validate_measure(DELTA_HALF).passed

    def test_independence_measure_passes(self):
        assert validate_measure(PI_MEASURE).passed

    def test_delta_one_fails_on_mean(self):
        report = validate_measure(PickandsMeasure.dirac(1.0))
        assert not report.passed
        assert report.residuals["mean"] == pytest.approx(0.5)
        assert report.residuals["mass"] == 0.0

    def test_named_measures(self):
        for m in (band_measure(), mixed_measure(), cantor_measure()):
            assert validate_measure(m).passed

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            PickandsMeasure(singular_weight=float("inf"))
        with pytest.raises(ValueError):
            PickandsMeasure(breaks=(0.0, 1.0), values=(float("nan"),))

    def test_rejects_bad_storage(self):
        with pytest.raises(ValueError):
            PickandsMeasure(atoms=((0.5, 0.5), (0.2, 0.5)))
        with pytest.raises(ValueError):
            PickandsMeasure(breaks=(0.0, 1.0), values=(-1.0,))


class TestMeasureCdf:
    def test_band_at_half(self):
        assert measure_cdf(band_measure(), 0.5) == pytest.approx(0.8, abs=1e-15)

    def test_mixed_at_point_six(self):
        assert measure_cdf(mixed_measure(), 0.6) == pytest.approx(0.6, abs=1e-15)

    def test_mixed_matches_printed_distribution_function(self):
        t = GRID[:-1]
        printed = np.select([t < 0.5, t < 0.75], [t, 0.6], 16 / 35 * t + 0.5)
        np.testing.assert_allclose(mixed_measure().cdf(t), printed, atol=1e-14)
        assert mixed_measure().cdf(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_cantor_plateau(self):
        assert measure_cdf(cantor_measure(), 1 / 3) == 0.5

    def test_right_continuous_at_atom(self):
        m = band_measure()
        assert m.cdf(0.5, left=True) == pytest.approx(0.2)
        assert m.cdf(0.5 + 1e-12) == pytest.approx(m.cdf(0.5))


class TestCantor:
    def test_values(self):
        assert cantor_cdf(0.5) == 0.5
        assert cantor_cdf(1 / 3) == 0.5
        assert cantor_cdf(2 / 3) == 0.5
        assert cantor_cdf(0.25) == pytest.approx(1 / 3, abs=1e-15)
        assert cantor_integral(1.0) == pytest.approx(0.5, abs=1e-15)

    def test_integral_against_midpoint_quadrature(self):
        n = 2**20
        for t in (1 / 3, 0.5, 0.8, 1.0):
            mids = (np.arange(n) + 0.5) * (t / n)
            oracle = cantor_cdf(mids).sum() * (t / n)
            assert cantor_integral(t) == pytest.approx(oracle, abs=1e-6)
        assert cantor_integral(1 / 3) == pytest.approx(1 / 12, abs=1e-15)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, a, b):
        lo, hi = min(a, b), max(a, b)
        assert cantor_cdf(lo) <= cantor_cdf(hi) + 1e-12

    @given(st.floats(0, 1))
    def test_symmetry(self, t):
        assert cantor_cdf(t) + cantor_cdf(1 - t) == pytest.approx(1.0, abs=1e-9)


class TestUpsilon:
    def test_upper_bound(self):
        A = upsilon(DELTA_HALF)
        np.testing.assert_allclose(A(GRID), np.maximum(1 - GRID, GRID), atol=1e-12)

    def test_independence(self):
        np.testing.assert_allclose(upsilon(PI_MEASURE)(GRID), 1.0, atol=1e-12)

    def test_band_pieces(self):
        np.testing.assert_allclose(upsilon(band_measure())(GRID), band_A(GRID), atol=1e-12)

    def test_mixed_pieces(self):
        A = upsilon(mixed_measure())
        t = GRID
        expected = np.select([t < 0.5, t < 0.75], [t**2 - t + 1, t / 5 + 13 / 20],
                             16 / 35 * t**2 + 19 / 35)
        np.testing.assert_allclose(A(t), expected, atol=1e-12)
        assert A(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_invalid(self):
        with pytest.raises(InvalidMeasure):
            upsilon(PickandsMeasure.dirac(1.0))

    def test_cantor_function_is_valid(self):
        assert validate_function(upsilon(cantor_measure())).passed


class TestDerivatives:
    def test_upper_bound(self):
        A = upsilon(DELTA_HALF)
        assert d_plus(A, 0.3) == -1.0
        assert d_plus(A, 0.5) == 1.0
        assert d_minus(A, 0.5) == -1.0

    def test_band_at_half(self):
        assert d_plus(upsilon(band_measure()), 0.5) == pytest.approx(0.6)

    def test_independence_flat(self):
        np.testing.assert_allclose(d_plus(upsilon(PI_MEASURE), GRID[:-1]), 0.0, atol=1e-15)

    def test_finite_differences(self):
        A = upsilon(mixed_measure())
        h = 1e-7
        for t in (0.2, 0.5, 0.6, 0.75, 0.9):
            assert d_plus(A, t) == pytest.approx((A(t + h) - A(t)) / h, abs=1e-5)
            assert d_minus(A, t) == pytest.approx((A(t) - A(t - h)) / h, abs=1e-5)

    def test_endpoint_convention(self):
        A = upsilon(mixed_measure())
        assert d_plus(A, 1.0) == d_minus(A, 1.0)


class TestGA:
    def test_independence(self):
        np.testing.assert_allclose(g_a(upsilon(PI_MEASURE), GRID), 1.0, atol=1e-15)

    def test_upper_bound(self):
        A = upsilon(DELTA_HALF)
        assert g_a(A, 0.3) == pytest.approx(0.0, abs=1e-15)
        assert g_a(A, 0.7) == pytest.approx(1.0, abs=1e-15)

    def test_band(self):
        assert g_a(upsilon(band_measure()), 0.5) == pytest.approx(0.9, abs=1e-15)

    def test_one_convention(self):
        assert g_a(upsilon(band_measure()), 1.0) == 1.0


class TestEndpoints:
    def test_band(self):
        assert endpoints_LR(band_measure()) == (0.25, 0.75)

    def test_upper_bound(self):
        assert endpoints_LR(DELTA_HALF) == (0.5, 0.5)

    def test_independence(self):
        assert endpoints_LR(PI_MEASURE) == (0.0, 1.0)

    def test_agrees_with_function_contact_points(self):
        A = upsilon(band_measure())
        t = GRID
        lower_left = t[np.isclose(A(t), 1 - t, atol=1e-14)].max()
        lower_right = t[np.isclose(A(t), t, atol=1e-14)].min()
        assert (lower_left, lower_right) == (0.25, 0.75)


class TestNormalize:
    def test_delta_one(self):
        out = normalize(PickandsMeasure.dirac(1.0))
        assert out.atoms == ((0.0, 0.5), (1.0, 0.5))

    def test_mean_half_unchanged(self):
        assert normalize(band_measure()) is not None
        assert normalize(band_measure()) == band_measure()

    def test_quarter(self):
        out = normalize(PickandsMeasure.dirac(0.25))
        assert dict(out.atoms) == pytest.approx({0.25: 2 / 3, 1.0: 1 / 3})
        assert out.mean == pytest.approx(0.5, abs=1e-15)

    @given(measures())
    def test_always_valid(self, mu):
        assert validate_measure(normalize(mu)).passed


class TestGumbel:
    def test_theta_one_is_independence(self):
        np.testing.assert_allclose(gumbel_function(1.0)(GRID), 1.0, atol=1e-15)

    def test_theta_two(self):
        assert gumbel_function(2.0)(0.5) == pytest.approx(np.sqrt(0.5), abs=1e-15)

    def test_large_theta_approaches_upper_bound(self):
        assert gumbel_function(200.0)(0.5) == pytest.approx(0.5, abs=2e-3)

    def test_domain(self):
        with pytest.raises(DomainError):
            gumbel_function(0.5)

    @pytest.mark.parametrize("theta", [1.0, 1.5, 2.0, 5.0, 20.0])
    def test_is_pickands_function(self, theta):
        assert validate_function(gumbel_function(theta)).passed

    def test_derivative_matches_finite_difference(self):
        A = gumbel_function(2.0)
        h = 1e-6
        for t in (0.1, 0.4, 0.77):
            assert A.d_plus(t) == pytest.approx((A(t + h) - A(t - h)) / (2 * h), abs=1e-8)


@given(measures())
def test_pickands_function_properties(mu):
    m = normalize(mu)
    A = upsilon(m)
    assert validate_function(A, tol=1e-12).passed
    # round trip: (D+A + 1)/2 reproduces F
    np.testing.assert_allclose((A.d_plus(GRID[:-1]) + 1) / 2, m.cdf(GRID[:-1]), atol=1e-12)
    # 1-Lipschitz and non-decreasing G_A
    assert np.all(np.abs(np.diff(A(GRID))) <= np.diff(GRID) + 1e-12)
    assert np.all(np.diff(A.g(GRID)) >= -1e-12)
    assert np.all(A.g(GRID) >= -1e-12)


@given(measures())
def test_slope_jumps_sit_at_atoms(mu):
    m = normalize(mu)
    A = upsilon(m)
    for t, w in m.atoms:
        if 0 < t < 1:
            assert A.d_plus(t) - A.d_minus(t) == pytest.approx(2 * w, abs=1e-12)
    interior = [t for t in np.linspace(0.0005, 0.9995, 200) if all(t != a for a, _ in m.atoms)]
    np.testing.assert_allclose(A.d_plus(np.array(interior)), A.d_minus(np.array(interior)), atol=1e-12)


def test_reflection_matches_reflected_function():
    m = mixed_measure()
    A = upsilon(m)
    B = upsilon(m.reflected())
    np.testing.assert_allclose(B(GRID), A(1 - GRID), atol=1e-12)


def test_mix_measures_preserves_constraints():
    m = mix_measures([(0.3, band_measure()), (0.3, mixed_measure()), (0.4, cantor_measure())])
    assert validate_measure(m).passed
    np.testing.assert_allclose(
        m.cdf(GRID),
        0.3 * band_measure().cdf(GRID) + 0.3 * mixed_measure().cdf(GRID) + 0.4 * cantor_measure().cdf(GRID),
        atol=1e-12,
    )
