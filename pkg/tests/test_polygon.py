import math

import numpy as np
import pytest

from diminish.distributions import RngStream
from diminish.errors import DomainError
from diminish.oracle import clip_convex_by_convex, match_point_sets
from diminish.polygon import (
    GOLDEN_C,
    PolygonState,
    apply_polygon_point,
    bound_constants,
    change_region_membership,
    chebyshev_center,
    pentagon_constants,
    pentagon_residual,
    polygon_new,
    polygon_step,
    reference_directions,
    reference_vertices,
    run_polygon_batch,
    sample_point,
    snapshot,
)

RHO5 = math.cos(math.pi / 5.0)
TAN54 = math.tan(3.0 * math.pi / 10.0)


def reduced_regular_pentagon(excess: float) -> PolygonState:
    """Homothet of the reference pentagon whose five heights are rho + excess."""
    scale = (RHO5 + excess) / (1.0 + RHO5)
    return PolygonState(5, np.full(5, -scale * RHO5))


class TestConstruction:
    def test_pentagon_start(self):
        s = polygon_new(5)
        snap = snapshot(s)
        assert s.rho == pytest.approx(0.8090169943749475, abs=1e-15)
        assert np.allclose(snap.heights, 1.0 + RHO5, atol=1e-12)
        assert snap.area == pytest.approx(2.5 * math.sin(2 * math.pi / 5), abs=1e-12)

    def test_heptagon_inradius(self):
        assert polygon_new(7).rho == pytest.approx(0.9009689, abs=1e-7)

    def test_octagon_start(self):
        snap = snapshot(polygon_new(8))
        rho8 = math.cos(math.pi / 8)
        assert np.allclose(snap.heights, 2.0 * rho8, atol=1e-12)
        assert snap.area == pytest.approx(4.0 * math.sin(2 * math.pi / 8), abs=1e-12)

    def test_small_k_rejected(self):
        with pytest.raises(DomainError):
            polygon_new(4)

    def test_reference_polygon_orientation(self):
        for k in (5, 7, 8):
            v = np.asarray(reference_vertices(k))
            assert v[0] == pytest.approx([0.0, 1.0], abs=1e-15)
            d = np.asarray(reference_directions(k))
            assert np.allclose(np.linalg.norm(d, axis=1), 1.0, atol=1e-14)


class TestSnapshot:
    def test_initial_not_reduced(self):
        assert not snapshot(polygon_new(5)).reduced

    def test_reduced_cap_area_formula(self):
        s = reduced_regular_pentagon(0.1)
        snap = snapshot(s)
        assert snap.reduced
        assert np.allclose(snap.heights - RHO5, 0.1, atol=1e-12)
        assert np.allclose(snap.region_areas, 0.01 * TAN54, atol=1e-12)
        assert snap.region_areas[0] == pytest.approx(0.0137638, abs=1e-6)

    def test_region_positive_iff_height_exceeds_rho(self):
        rng = RngStream(41, 0)
        s = polygon_new(7)
        for _ in range(120):
            s = polygon_step(s, rng)
        snap = snapshot(s)
        rho = s.rho
        for i in range(7):
            if snap.heights[i] > rho + 1e-9:
                assert snap.region_areas[i] > 1e-12
            if snap.heights[i] < rho - 1e-9:
                assert snap.region_areas[i] <= 1e-12

    def test_labeled_vertices_are_support_points(self):
        rng = RngStream(42, 0)
        s = polygon_new(5)
        for _ in range(30):
            s = polygon_step(s, rng)
        snap = snapshot(s)
        dirs = np.asarray(s.directions)
        for i in range(5):
            alpha = (snap.boundary @ dirs[i]).max()
            assert snap.vertices[i] @ dirs[i] == pytest.approx(alpha, abs=1e-12)


class TestStep:
    def test_point_outside_caps_changes_nothing(self):
        s = reduced_regular_pentagon(0.05)
        center, _ = chebyshev_center(s)
        out = apply_polygon_point(s, center)
        assert np.array_equal(out.offsets, s.offsets)
        assert not change_region_membership(s, center).any()

    def test_golden_ratio_coupling(self):
        # point in cap 1 at height fraction h drops m_1 by h*excess
        # and the two opposite heights by the golden ratio of that
        excess, h = 0.1, 0.5
        s = reduced_regular_pentagon(excess)
        snap = snapshot(s)
        dirs = np.asarray(s.directions)
        apex = snap.vertices[0]
        p = apex - (1.0 - h) * excess * dirs[0]
        assert change_region_membership(s, p)[0]
        out = apply_polygon_point(s, p)
        drop = snap.heights - snapshot(out).heights
        expect = h * excess * np.array([1.0, 0.0, GOLDEN_C, GOLDEN_C, 0.0])
        assert np.allclose(drop, expect, atol=1e-12)
        assert drop[2] == pytest.approx(0.0309017, abs=1e-6)

    def test_steps_match_clipping_oracle(self):
        for k in (5, 7, 8):
            rng = RngStream(43, 0, (k,))
            state = polygon_new(k)
            base = np.asarray(reference_vertices(k))
            overts = base.copy()
            for _ in range(40):
                p = sample_point(state, rng)
                state = apply_polygon_point(state, p)
                overts = clip_convex_by_convex(overts, base + p)
            snap = snapshot(state)
            assert match_point_sets(snap.boundary, overts) <= 1e-10

    def test_batch_rows_replay_scalar(self):
        for k in (5, 8):
            res = run_polygon_batch(k, 150, 3, seed=44, chunk=2)
            for r in range(3):
                rng = RngStream(44, r)
                s = polygon_new(k)
                for _ in range(150):
                    s = polygon_step(s, rng)
                snap = snapshot(s)
                assert np.allclose(snap.heights, res.final_heights[r], atol=1e-11)
                assert snap.area == pytest.approx(res.final_area[r], abs=1e-11)


class TestSamplePoint:
    def test_containment_and_mean(self):
        s = polygon_new(5)
        rng = RngStream(45, 0)
        pts = np.array([sample_point(s, rng) for _ in range(20_000)])
        dirs = np.asarray(s.directions)
        assert np.all(pts @ dirs.T >= s.offsets - 1e-9)
        se = pts.std(axis=0) / math.sqrt(len(pts))
        assert np.all(np.abs(pts.mean(axis=0)) <= 3 * se)

    def test_triangle_selection_frequencies(self):
        s = polygon_new(5)
        snap = snapshot(s)
        b = snap.boundary
        tri_areas = np.array(
            [
                0.5
                * abs(
                    (b[i][0] - b[0][0]) * (b[i + 1][1] - b[0][1])
                    - (b[i][1] - b[0][1]) * (b[i + 1][0] - b[0][0])
                )
                for i in range(1, len(b) - 1)
            ]
        )
        weights = tri_areas / tri_areas.sum()
        rng = RngStream(46, 0)
        n = 30_000
        counts = np.zeros(len(tri_areas))
        cum = np.cumsum(tri_areas)
        for _ in range(n):
            u1 = rng.uniform()
            rng.uniform()
            rng.uniform()
            counts[min(int((cum < u1 * tri_areas.sum()).sum()), len(tri_areas) - 1)] += 1
        freq = counts / n
        sigma = np.sqrt(weights * (1 - weights) / n)
        assert np.all(np.abs(freq - weights) <= 3.5 * sigma)

    def test_zero_area_rejected(self):
        from diminish.polygon import _sample_from_boundary

        with pytest.raises(DomainError):
            _sample_from_boundary(np.zeros((3, 2)), 0.0, 0.5, 0.5, 0.5)


class TestPentagonAnalytics:
    def test_constants(self):
        pc = pentagon_constants()
        assert pc.c * pc.lam == pytest.approx(1.0, abs=1e-15)
        assert pc.lam == pytest.approx(1.0 + pc.c, abs=1e-15)
        assert pc.rho5 == pytest.approx(RHO5)
        assert np.allclose(pc.update_vectors[0], [1.0, 0.0, GOLDEN_C, GOLDEN_C, 0.0])
        assert np.allclose(pc.update_vectors[3], [GOLDEN_C, GOLDEN_C, 0.0, 1.0, 0.0])

    def test_residual_examples(self):
        assert pentagon_residual([1.2, 1.2, 1.2, 1.2, 1.2]) == pytest.approx(0.0, abs=1e-12)
        assert pentagon_residual([1.8, 1.8, 1.7, 1.8, 1.8]) == pytest.approx(0.1, abs=1e-12)

    def test_residual_vanishes_along_trajectories(self):
        rng = RngStream(47, 0)
        s = polygon_new(5)
        for _ in range(200):
            s = polygon_step(s, rng)
            assert abs(pentagon_residual(snapshot(s).heights)) <= 1e-9


class TestBoundConstants:
    def test_values(self):
        bc = bound_constants(5)
        assert bc.c1 == pytest.approx(1.376382, abs=1e-6)
        # independent algebra: tan(asin(x)) = x / sqrt(1 - x^2)
        assert bc.delta1 == pytest.approx(0.05 / math.sqrt(1 - 0.05**2), abs=1e-12)
        assert bc.delta1 == pytest.approx(0.0500626, abs=1e-7)
        assert bc.c2 == pytest.approx(500 * 1.3763819204711735 / math.pi, abs=1e-9)
        assert bc.c2 == pytest.approx(219.06, abs=0.01)
        assert bc.c3 == pytest.approx(0.015935, abs=1e-6)

    def test_envelopes(self):
        bc = bound_constants(7)
        assert bc.h_major_cdf(0.0) == 0.0
        assert bc.h_major_cdf(10.0) == 1.0
        assert bc.h_major_cdf(0.1) == pytest.approx(0.01 * bc.c1, abs=1e-12)
        assert bc.h_minor_cdf(0.999) == pytest.approx(bc.delta1 * 0.999**2, abs=1e-12)
        assert bc.h_minor_cdf(1.0) == 1.0
        assert bc.h_tilde_cdf(0.01) == pytest.approx(bc.c1 * bc.c2 * 1e-4, abs=1e-12)
        assert bc.h_bar_cdf(0.5) == pytest.approx(bc.c3 * 0.25, abs=1e-12)
        assert bc.rate_envelope_upper(0.0) == pytest.approx(1.0)
        assert bc.rate_envelope_upper(50.0) == pytest.approx(0.0, abs=1e-12)


class TestChebyshev:
    def test_regular_polygon_incircle(self):
        for k in (5, 8):
            center, radius = chebyshev_center(polygon_new(k))
            assert radius == pytest.approx(math.cos(math.pi / k), abs=1e-9)
            assert np.allclose(center, 0.0, atol=1e-9)

    def test_triple_enumeration_matches_lp(self):
        from scipy.optimize import linprog

        rng = RngStream(48, 0)
        s = polygon_new(5)
        for step in range(25):
            s = polygon_step(s, rng)
            _, radius = chebyshev_center(s)
            dirs = np.asarray(s.directions)
            res = linprog(
                c=[0.0, 0.0, -1.0],
                A_ub=np.column_stack([-dirs, np.ones(5)]),
                b_ub=-s.offsets,
                bounds=[(None, None)] * 3,
                method="highs",
            )
            assert radius == pytest.approx(res.x[2], abs=1e-9)


class TestBatchAccumulators:
    def test_pentagon_invariant_accumulators(self):
        res = run_polygon_batch(5, 400, 50, seed=49)
        assert res.fallback_steps.sum() == 0
        assert res.min_slack.min() >= -1e-9
        assert res.max_residual.max() <= 1e-9
        assert res.max_height_rise.max() <= 1e-9
        assert res.area_min.min() >= math.pi / 100 - 1e-9
        assert res.area_max.max() <= math.pi + 1e-9
