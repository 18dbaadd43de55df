import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from copdiff import M, W, Pi, empirical_copula, kernel_quantile, make_rng, sample, validate_copula
from copdiff.core import (
    Copula, EmptySample, SampleSet, disintegration_residual, read_sample_csv, write_sample_csv,
)

unit = st.floats(0.0, 1.0)


class TestBuiltins:
    @given(unit, unit)
    def test_bounds_order(self, x, y):
        assert W.cdf(x, y) <= Pi.cdf(x, y) + 1e-15 <= M.cdf(x, y) + 2e-15

    def test_values(self):
        assert M.cdf(0.3, 0.7) == pytest.approx(0.3)
        assert W.cdf(0.3, 0.8) == pytest.approx(0.1)
        assert Pi.cdf(0.3, 0.7) == pytest.approx(0.21)

    def test_kernels(self):
        assert M.kernel_cdf(0.4, 0.39) == 0.0
        assert M.kernel_cdf(0.4, 0.4) == 1.0
        assert W.kernel_cdf(0.4, 0.6) == 1.0
        assert W.kernel_cdf(0.4, 0.59) == 0.0
        assert Pi.kernel_cdf(0.4, 0.25) == pytest.approx(0.25)

    def test_transposes(self):
        assert M.transpose() is M
        assert W.transpose() is W
        assert Pi.transpose() is Pi

    def test_vectorized_shapes(self):
        x = np.linspace(0, 1, 7)
        assert M.cdf(x, 0.5).shape == (7,)
        assert Pi.kernel_cdf(x[:, None], x[None, :]).shape == (7, 7)
        assert isinstance(Pi.cdf(0.5, 0.5), float)


class TestBoundaryConventions:
    def test_cdf_edges(self, shipped):
        g = np.linspace(0, 1, 33)
        np.testing.assert_allclose(shipped.cdf(g, 0.0), 0.0, atol=1e-12)
        np.testing.assert_allclose(shipped.cdf(0.0, g), 0.0, atol=1e-12)
        np.testing.assert_allclose(shipped.cdf(g, 1.0), g, atol=1e-12)
        np.testing.assert_allclose(shipped.cdf(1.0, g), g, atol=1e-12)

    def test_kernel_outside_unit_interval(self, shipped):
        x = np.linspace(0.05, 0.95, 9)
        np.testing.assert_array_equal(shipped.kernel_cdf(x, -0.1), 0.0)
        np.testing.assert_array_equal(shipped.kernel_cdf(x, 1.0), 1.0)

    def test_kernel_monotone_in_y(self, shipped):
        y = np.linspace(0, 1, 257)
        for x in (0.13, 0.5, 0.77):
            assert np.all(np.diff(shipped.kernel_cdf(x, y)) >= -1e-12)

    def test_arguments_are_clipped_to_square(self):
        assert Pi.cdf(1.5, 0.5) == pytest.approx(0.5)
        assert Pi.cdf(-0.2, 0.5) == 0.0


class TestValidation:
    def test_shipped_pass(self, shipped):
        report = validate_copula(shipped, grid_n=64)
        assert report.passed, report.summary()

    def test_detects_non_copula(self):
        class Broken(Copula):
            family = "broken"

            def cdf(self, x, y):
                # ignores the boundary conventions of the base class
                return np.asarray(x) * np.asarray(y) * 0.9

        report = validate_copula(Broken())
        assert not report.passed
        assert report.residuals["boundary"] == pytest.approx(0.1)

    def test_detects_negative_volume(self):
        class Negative(Copula):
            family = "negative"

            def _cdf(self, x, y):
                # grounded with uniform margins but with a negative-volume bump
                return x * y + 0.3 * np.sin(2 * np.pi * x) * np.sin(2 * np.pi * y)

        report = validate_copula(Negative())
        assert report.residuals["two_increasing"] > 1e-3

    def test_grid_too_small(self):
        with pytest.raises(ValueError):
            validate_copula(Pi, grid_n=1)


class TestDisintegration:
    @pytest.mark.parametrize("x,y", [(0.3, 0.6), (0.5, 0.5), (0.9, 0.2)])
    def test_independence_exact(self, x, y):
        assert disintegration_residual(Pi, x, y) < 1e-12

    def test_shipped(self, shipped):
        g = np.linspace(0.1, 0.9, 5)
        worst = max(disintegration_residual(shipped, x, y, 8192) for x in g for y in g)
        assert worst < 5e-4


class TestKernelQuantile:
    def test_upper_bound(self):
        assert kernel_quantile(M, 0.3, 0.7) == pytest.approx(0.3, abs=1e-11)

    def test_independence(self):
        u = np.array([0.1, 0.5, 0.9])
        np.testing.assert_allclose(kernel_quantile(Pi, np.full(3, 0.4), u), u, atol=1e-11)

    def test_zero_level(self):
        assert kernel_quantile(Pi, 0.4, 0.0) == 0.0

    @given(st.floats(0.01, 0.99), st.floats(0.001, 0.999))
    def test_generalized_inverse(self, x, u):
        c = Pi if u < 0.5 else W
        q = kernel_quantile(c, x, u)
        assert c.kernel_cdf(x, q) >= u - 1e-12
        assert c.kernel_cdf(x, max(q - 1e-9, 0.0)) < u + 1e-12


class TestRng:
    def test_reproducible(self):
        a = make_rng(42).random(5)
        b = make_rng(42).random(5)
        np.testing.assert_array_equal(a, b)

    def test_is_philox_keyed_by_seed(self):
        g = make_rng(7)
        assert isinstance(g.bit_generator, np.random.Philox)
        ref = np.random.Generator(np.random.Philox(key=7)).random(3)
        np.testing.assert_array_equal(g.random(3), ref)

    def test_documented_stream(self):
        # key (seed, 0), counter 0, doubles (next_uint64 >> 11) * 2^-53
        bits = np.random.Philox(key=7)
        assert list(bits.state["state"]["key"]) == [7, 0]
        raw = bits.random_raw(4)
        expected = (raw >> np.uint64(11)) * 2.0**-53
        np.testing.assert_array_equal(make_rng(7).random((2, 2)).ravel(), expected)

    def test_negative_seed_wraps(self):
        np.testing.assert_array_equal(make_rng(-1).random(2), make_rng(2**64 - 1).random(2))


class TestSampling:
    def test_deterministic(self):
        a = sample(Pi, 100, seed=5)
        b = sample(Pi, 100, seed=5)
        np.testing.assert_array_equal(a.points, b.points)
        assert a.seed == 5

    def test_upper_bound_on_diagonal(self):
        s = sample(M, 200, seed=1)
        np.testing.assert_allclose(s.x, s.y, atol=1e-11)

    def test_lower_bound_on_antidiagonal(self):
        s = sample(W, 200, seed=1)
        np.testing.assert_allclose(s.x + s.y, 1.0, atol=1e-11)

    def test_uniform_marginals(self):
        from scipy.stats import kstest
        s = sample(Pi, 4000, seed=11)
        assert kstest(s.y, "uniform").pvalue > 1e-3
        assert kstest(s.x, "uniform").pvalue > 1e-3

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            sample(Pi, 0, seed=1)

    def test_csv_round_trip(self, tmp_path):
        s = sample(Pi, 50, seed=3)
        path = tmp_path / "s.csv"
        s.to_csv(path)
        back = read_sample_csv(path)
        np.testing.assert_array_equal(back.points, s.points)
        buf = io.StringIO()
        write_sample_csv(s, buf)
        assert buf.getvalue().splitlines()[0] == "x,y"


class TestEmpiricalCopula:
    def test_matches_brute_force(self):
        s = sample(Pi, 300, seed=9)
        n = s.n
        ru = np.array([(s.x <= v).sum() for v in s.x]) / n
        rv = np.array([(s.y <= v).sum() for v in s.y]) / n
        for x, y in [(0.2, 0.3), (0.5, 0.5), (0.9, 0.1), (1.0, 1.0)]:
            brute = np.mean((ru <= x) & (rv <= y))
            assert empirical_copula(s, x, y) == pytest.approx(brute, abs=1e-15)

    def test_converges_to_source(self):
        s = sample(Pi, 20000, seed=2)
        g = np.linspace(0.1, 0.9, 5)
        for x in g:
            np.testing.assert_allclose(empirical_copula(s, x, g), x * g, atol=0.02)

    def test_empty(self):
        with pytest.raises(EmptySample):
            empirical_copula(SampleSet(np.zeros((0, 2)), 0), 0.5, 0.5)
