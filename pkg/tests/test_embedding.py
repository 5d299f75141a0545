import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from frechetrp import (
    Curve,
    CurveSet,
    DimensionMismatch,
    DistanceQuery,
    GaussianEmbedding,
    InsufficientData,
    InvalidEpsilon,
    PCAEmbedding,
    ProjectionMatrix,
    ValidationError,
    additive_error_pair,
    embed_curve,
    embed_curveset,
    frechet_distance,
    gaussian_projection,
    measure_distortion,
    pca_projection,
    simplex_curves,
    target_dimension,
    distortion_bounds,
)

from helpers import random_curve

TIGHT = DistanceQuery(tolerance=1e-9)


class TestTargetDimension:
    def test_weather_scale(self):
        assert target_dimension(2922, 15, 0.5) == 86

    def test_pressure_rig_scale(self):
        assert target_dimension(6, 2205, 0.2) == 475

    def test_small_input_floor(self):
        # ceil(2 ln 2 / eps^2) at the top of the epsilon range
        assert target_dimension(2, 1, 0.999) == 2

    def test_constant_is_exposed(self):
        # ceil(16 ln 43830) = ceil(171.008)
        assert target_dimension(2922, 15, 0.5, constant=4.0) == 172

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.5, 2.0])
    def test_epsilon_range(self, eps):
        with pytest.raises(InvalidEpsilon):
            target_dimension(10, 10, eps)

    def test_needs_two_vertices(self):
        with pytest.raises(ValidationError):
            target_dimension(1, 1, 0.5)


class TestGaussianProjection:
    def test_deterministic_per_seed(self):
        a = gaussian_projection(30, 7, seed=123)
        b = gaussian_projection(30, 7, seed=123)
        c = gaussian_projection(30, 7, seed=124)
        assert np.array_equal(a.matrix, b.matrix)
        assert not np.array_equal(a.matrix, c.matrix)

    def test_entry_moments(self):
        # 1e5 samples: mean within 0.004 of 0, variance within 10% of 1/d'
        p = gaussian_projection(1000, 100, seed=5)
        entries = p.matrix.ravel()
        assert abs(entries.mean()) < 0.004
        assert entries.var() == pytest.approx(0.01, rel=0.10)

    def test_single_row_projection(self):
        p = gaussian_projection(50, 1, seed=0)
        assert p.matrix.shape == (1, 50)
        assert p.kind == "gaussian"

    def test_matrix_validation(self):
        with pytest.raises(ValidationError):
            ProjectionMatrix(np.array([[np.inf]]), kind="gaussian")
        with pytest.raises(ValidationError):
            ProjectionMatrix(np.eye(2), kind="something")


class TestEmbedCurve:
    def test_identity_matrix_is_identity(self):
        rng = np.random.default_rng(0)
        c = random_curve(rng, 6, 4)
        ident = ProjectionMatrix(np.eye(4), kind="pca", center=np.zeros(4))
        assert np.array_equal(embed_curve(c, ident).vertices, c.vertices)

    def test_zero_matrix_collapses_everything(self):
        rng = np.random.default_rng(1)
        a = random_curve(rng, 5, 3)
        b = random_curve(rng, 7, 3)
        zero = ProjectionMatrix(np.zeros((2, 3)), kind="pca")
        ea, eb = embed_curve(a, zero), embed_curve(b, zero)
        assert not ea.vertices.any()
        assert frechet_distance(ea, eb) == 0.0

    def test_shape_preserved_at_sensor_scale(self):
        c = Curve(np.zeros((2205, 6000)))
        p = gaussian_projection(6000, 5, seed=0)
        e = embed_curve(c, p)
        assert e.complexity == 2205
        assert e.dim == 5

    def test_linearity_exact(self):
        rng = np.random.default_rng(2)
        c = random_curve(rng, 5, 8)
        p = gaussian_projection(8, 3, seed=9)
        assert np.array_equal(embed_curve(c, p).vertices, c.vertices @ p.matrix.T)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            embed_curve(Curve([(0, 0)]), gaussian_projection(3, 2))

    def test_embed_curveset_keeps_labels(self):
        s = CurveSet([[(0.0, 1.0)], [(2.0, 3.0)]], labels=["x", "y"])
        out = embed_curveset(s, gaussian_projection(2, 2, seed=1))
        assert out.labels == ("x", "y")
        assert len(out) == 2


class TestDistortionBounds:
    def test_tends_to_distance_as_epsilon_vanishes(self):
        lower, upper = distortion_bounds(3.7, 1e-12, 10.0)
        assert lower == pytest.approx(3.7, rel=1e-6)
        assert upper == pytest.approx(3.7, rel=1e-6)

    def test_zero_distance_additive_term(self):
        assert distortion_bounds(0.0, 0.5, 1.0) == (0.0, 1.0)

    def test_lower_bound_clamped(self):
        # at dF = sqrt(5), eps = 1/4, alpha = sqrt(6) the lower radicand is
        # 0.5625 * 5 - 3 < 0, the upper bound sqrt(10.8125)
        lower, upper = distortion_bounds(math.sqrt(5.0), 0.25, math.sqrt(6.0))
        assert lower == 0.0
        assert upper == pytest.approx(math.sqrt(10.8125), rel=1e-12)

    @given(
        st.floats(0.0, 100.0),
        st.floats(1e-6, 0.999),
        st.floats(0.0, 100.0),
    )
    def test_lower_le_upper(self, d_f, eps, a):
        lower, upper = distortion_bounds(d_f, eps, a)
        assert 0.0 <= lower <= upper

    def test_upper_monotone_in_epsilon_and_alpha(self):
        eps_grid = np.linspace(0.01, 0.99, 12)
        uppers = [distortion_bounds(2.0, e, 3.0)[1] for e in eps_grid]
        assert all(x <= y for x, y in zip(uppers, uppers[1:]))
        a_grid = np.linspace(0.0, 10.0, 12)
        uppers = [distortion_bounds(2.0, 0.3, a)[1] for a in a_grid]
        assert all(x <= y for x, y in zip(uppers, uppers[1:]))


class TestPCA:
    def test_planar_data_preserved(self):
        # vertices in a 2-plane of R^6: projecting to 2 keeps all distances
        rng = np.random.default_rng(3)
        basis = np.linalg.qr(rng.normal(size=(6, 2)))[0].T
        curves = CurveSet([Curve(rng.normal(size=(5, 2)) @ basis + 3.0) for _ in range(4)])
        p = pca_projection(curves, 2)
        X = np.vstack([c.vertices for c in curves])
        Y = np.vstack([embed_curve(c, p).vertices for c in curves])
        dx = np.linalg.norm(X[:, None] - X[None, :], axis=-1)
        dy = np.linalg.norm(Y[:, None] - Y[None, :], axis=-1)
        assert np.allclose(dy, dx, rtol=1e-6, atol=1e-9)

    def test_full_basis_preserves_distances(self):
        rng = np.random.default_rng(4)
        curves = CurveSet([random_curve(rng, 4, 5) for _ in range(3)])
        p = pca_projection(curves, 5)
        assert np.allclose(p.matrix @ p.matrix.T, np.eye(5), atol=1e-6)
        a, b = curves[0], curves[1]
        d0 = frechet_distance(a, b, TIGHT)
        d1 = frechet_distance(embed_curve(a, p), embed_curve(b, p), TIGHT)
        assert d1 == pytest.approx(d0, rel=1e-6, abs=1e-9)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientData):
            pca_projection(CurveSet([[(0.0, 0.0, 0.0)]]), 2)


class TestMeasureDistortion:
    def test_identical_pair(self):
        c = Curve([(0.0, 0.0), (1.0, 2.0)])
        s = CurveSet([c, Curve(c.vertices.copy())])
        recs = measure_distortion(s, gaussian_projection(2, 4, seed=0), 0.5, TIGHT)
        assert len(recs) == 1
        assert recs[0].original == 0.0
        assert recs[0].embedded == 0.0
        assert recs[0].relative_error == 0.0

    def test_translated_pair_mostly_within_bounds(self):
        rng = np.random.default_rng(5)
        base = rng.normal(size=(5, 40))
        t = rng.normal(size=40) * 0.5
        s = CurveSet([Curve(base), Curve(base + t)])
        eps = 0.5
        d_prime = target_dimension(2, 5, eps)
        inside = 0
        for seed in range(30):
            rec, = measure_distortion(s, gaussian_projection(40, d_prime, seed), eps, TIGHT)
            inside += rec.within_bounds
        assert inside >= 27

    def test_huge_edges_can_break_multiplicative_error(self):
        # edges beyond 1e16 occasionally push the relative error above 1
        # even though the true distance stays sqrt(5): the additive term of
        # the bound is not an artifact of the analysis
        eps = 0.25
        d_prime = target_dimension(2, 3, eps)
        worst = 0.0
        for a in (1e16, 3e16, 1e17, 3e17, 1e18):
            s = CurveSet(additive_error_pair(a))
            for seed in range(40):
                rec, = measure_distortion(s, gaussian_projection(3, d_prime, seed), eps, TIGHT)
                worst = max(worst, rec.relative_error)
        assert worst > 1.0

    def test_moderate_edges_stay_multiplicative(self):
        p, q = additive_error_pair(10.0)
        s = CurveSet([p, q])
        eps = 0.25
        d_prime = target_dimension(2, 3, eps)
        for seed in range(20):
            rec, = measure_distortion(s, gaussian_projection(3, d_prime, seed), eps, TIGHT)
            assert rec.relative_error <= 1.0

    def test_pca_records_compare_against_gaussian(self):
        # both kinds produce the same record schema on simplex curves, so the
        # two methods can be compared head to head; no fixed quality ratio is
        # asserted, only that both yield finite, well-formed records
        curves = simplex_curves(5, 6, 30, scale=1.0, seed=12)
        eps = 0.5
        d_prime = min(target_dimension(5, 6, eps), 30)
        for proj in (gaussian_projection(30, d_prime, seed=0),
                     pca_projection(curves, d_prime)):
            recs = measure_distortion(curves, proj, eps, TIGHT)
            assert len(recs) == 10
            for r in recs:
                assert np.isfinite([r.original, r.embedded, r.relative_error]).all()
                assert r.lower_bound <= r.upper_bound

    def test_statistical_coverage_on_simplex_curves(self):
        # over >= 50 fresh seeds: bound violations < 10% of records and
        # relative errors above eps < 5%
        curves = simplex_curves(4, 6, 40, scale=1.0, seed=6)
        eps = 0.4
        d_prime = target_dimension(4, 6, eps)
        records = []
        for seed in range(50):
            proj = gaussian_projection(40, d_prime, seed)
            records.extend(measure_distortion(curves, proj, eps, TIGHT))
        n = len(records)
        assert n == 6 * 50
        outside = sum(not r.within_bounds for r in records)
        too_large = sum(r.relative_error > eps for r in records)
        assert outside / n < 0.10
        assert too_large / n < 0.05


class TestEstimators:
    def test_gaussian_fit_transform(self):
        curves = simplex_curves(3, 4, 30, seed=7)
        est = GaussianEmbedding(epsilon=0.5, seed=2)
        out = est.fit_transform(curves)
        assert est.target_dim_ == target_dimension(3, 4, 0.5)
        assert out.dim == est.target_dim_
        assert [len(c) for c in out] == [len(c) for c in curves]

    def test_explicit_target_dim(self):
        curves = simplex_curves(3, 4, 30, seed=8)
        est = GaussianEmbedding(target_dim=5, seed=0).fit(curves)
        assert est.transform(curves).dim == 5

    def test_pca_estimator_caps_at_ambient_dim(self):
        curves = simplex_curves(4, 8, 6, seed=9)
        est = PCAEmbedding(epsilon=0.2).fit(curves)
        assert est.target_dim_ == 6

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            GaussianEmbedding().transform(simplex_curves(2, 3, 4, seed=0))

    def test_sklearn_clone_roundtrip(self):
        est = GaussianEmbedding(epsilon=0.3, target_dim=None, seed=11, constant=2.5)
        params = clone(est).get_params()
        assert params["epsilon"] == 0.3
        assert params["seed"] == 11
        assert params["constant"] == 2.5

    def test_deterministic_across_fits(self):
        curves = simplex_curves(3, 5, 12, seed=10)
        a = GaussianEmbedding(epsilon=0.5, seed=3).fit(curves).transform(curves)
        b = GaussianEmbedding(epsilon=0.5, seed=3).fit(curves).transform(curves)
        for ca, cb in zip(a, b):
            assert np.array_equal(ca.vertices, cb.vertices)
