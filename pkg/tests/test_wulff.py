import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import gamma as gamma_fn

from anisoperim import (InfeasibleError, InputError, anisotropic_curvature,
                        curve_length_H, fit_wulff_arc_through, kappa,
                        make_wulff_arc, wulff_area)
from anisoperim.curves import FunctionCurve, Segment
from anisoperim.wulff import WulffArcCurve
from conftest import region_area_by_slices


def p_ball_area(p):
    """Area of the unit p-norm ball (gamma-function closed form)."""
    return 4 * gamma_fn(1 + 1 / p) ** 2 / gamma_fn(1 + 2 / p)


def level_set_slice_area(g, x_max):
    """Area of {g < 1} by x-slices with a root-find per slice."""

    def bounds(x):
        if g(np.array([x, 0.0])) >= 1.0:
            return None
        hi = brentq(lambda y: g(np.array([x, y])) - 1.0, 0.0, 10.0,
                    xtol=1e-13)
        return (-hi, hi)

    return region_area_by_slices(bounds, -x_max, x_max)


class TestBoundaryPoint:
    def test_euclid_north(self, wulff_euclid):
        np.testing.assert_allclose(
            wulff_euclid.boundary_point(np.pi / 2), [0.0, 1.0], atol=1e-15)

    def test_elliptic_east(self, wulff_elliptic):
        pt = wulff_elliptic.boundary_point(0.0)
        np.testing.assert_allclose(pt, [0.5, 0.0], atol=1e-15)
        assert float(wulff_elliptic.polar(pt)) == pytest.approx(1.0, abs=1e-12)

    def test_p4_on_polar_unit_level(self, wulff_p4):
        pt = wulff_p4.boundary_point(np.pi / 4)
        assert float(wulff_p4.polar(pt)) == pytest.approx(1.0, abs=1e-10)

    def test_boundary_is_convex_curve(self, wulff_p4):
        _, pts = wulff_p4.boundary_samples()
        edges = np.roll(pts, -1, axis=0) - pts
        crosses = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] \
            - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        assert np.all(crosses > 0)

    def test_normal_direction_matches_theta(self, wulff_elliptic):
        # Euclidean outer normal of dW at boundary_point(theta) is e(theta)
        for theta in (0.3, 1.2, 2.5, 4.0):
            pt = wulff_elliptic.boundary_point(theta)
            g = np.asarray(wulff_elliptic.polar.gradient(pt))
            g /= np.linalg.norm(g)
            np.testing.assert_allclose(g, [np.cos(theta), np.sin(theta)],
                                       atol=1e-12)


class TestAreas:
    def test_euclid_area(self, wulff_euclid):
        assert wulff_euclid.area == pytest.approx(np.pi, abs=1e-9)

    def test_elliptic_area(self, wulff_elliptic):
        assert wulff_elliptic.area == pytest.approx(np.pi / 2, abs=1e-8)

    def test_p4_area_against_slice_quadrature(self, wulff_p4, p4):
        polar = p4.polar()
        oracle = level_set_slice_area(lambda v: float(polar(v)), 1.0)
        assert wulff_area(wulff_p4) == pytest.approx(oracle, abs=1e-6)

    def test_kappa_euclid(self, euclid):
        assert kappa(euclid) == pytest.approx(np.pi, abs=1e-12)

    def test_kappa_elliptic(self, elliptic21):
        assert kappa(elliptic21) == pytest.approx(2 * np.pi, abs=1e-11)

    def test_kappa_p4_gamma_closed_form(self, p4):
        assert kappa(p4) == pytest.approx(p_ball_area(4.0), abs=1e-8)

    def test_kappa_piecewise_mixture(self, pq43):
        want = 0.5 * (p_ball_area(4.0) + p_ball_area(3.0))
        assert kappa(pq43) == pytest.approx(want, abs=1e-8)

    def test_kappa_maxnorm(self, maxnorm):
        assert kappa(maxnorm) == pytest.approx(4.0, abs=1e-10)


class TestCurvature:
    def test_segment_is_flat(self, euclid, p4):
        seg = Segment(np.array([0.2, -1.0]), np.array([1.5, 2.0]))
        assert anisotropic_curvature(euclid, seg, 0.5) == pytest.approx(0.0, abs=1e-9)
        assert anisotropic_curvature(p4, seg, 0.4) == pytest.approx(0.0, abs=1e-9)

    def test_euclid_scaled_wulff(self, euclid, wulff_euclid):
        lam = 2.0
        curve = WulffArcCurve(wulff_euclid, np.zeros(2), 1 / lam, 0.0,
                              2 * np.pi)
        k = anisotropic_curvature(euclid, curve, 0.37)
        assert k == pytest.approx(lam, abs=1e-6)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_constant_curvature_16_points(self, lam, euclid, elliptic21, p4,
                                          wulff_euclid, wulff_elliptic,
                                          wulff_p4):
        # sample parameters keeping theta away from the coordinate axes
        ts = (np.arange(16) + 0.5) / 16.0 + 0.013
        ts = ts[(np.abs(np.mod(ts * 4 + 0.5, 1.0) - 0.5) > 0.05)]
        for norm, shape in ((euclid, wulff_euclid),
                            (elliptic21, wulff_elliptic), (p4, wulff_p4)):
            curve = WulffArcCurve(shape, np.zeros(2), 1 / lam, 0.0, 2 * np.pi)
            for t in ts:
                k = anisotropic_curvature(norm, curve, float(t % 1.0))
                assert k == pytest.approx(lam, abs=1e-5)

    def test_p4_sign_flips_with_orientation(self, p4, wulff_p4):
        ccw = WulffArcCurve(wulff_p4, np.zeros(2), 1.0, 0.0, 2 * np.pi)
        cw = WulffArcCurve(wulff_p4, np.zeros(2), 1.0, 2 * np.pi, -2 * np.pi)
        assert anisotropic_curvature(p4, ccw, 0.42) == pytest.approx(1.0, abs=1e-5)
        assert anisotropic_curvature(p4, cw, 0.42) == pytest.approx(-1.0, abs=1e-5)


class TestArcs:
    def test_quarter_circle(self, wulff_euclid, euclid):
        arc = make_wulff_arc(wulff_euclid, np.zeros(2), 1.0,
                             np.array([1.0, 0.0]), np.array([0.0, 1.0]),
                             side="short")
        assert arc.length_H() == pytest.approx(np.pi / 2, abs=1e-12)
        rep = curve_length_H(euclid, arc.curve)
        assert rep.value == pytest.approx(np.pi / 2, abs=1e-9)
        assert rep.euclidean_value == pytest.approx(np.pi / 2, abs=1e-9)

    def test_elliptic_scaled_arc_on_level(self, wulff_elliptic):
        radius = 2.0
        p1 = radius * np.asarray(wulff_elliptic.boundary_point(0.0))
        p2 = radius * np.asarray(wulff_elliptic.boundary_point(np.pi))
        arc = make_wulff_arc(wulff_elliptic, np.zeros(2), radius, p1, p2,
                             side="ccw")
        q = arc.sample(64)
        vals = np.asarray(wulff_elliptic.polar(q))
        np.testing.assert_allclose(vals, radius, atol=1e-10)

    def test_degenerate_endpoints_rejected(self, wulff_euclid):
        with pytest.raises(InputError):
            make_wulff_arc(wulff_euclid, np.zeros(2), 1.0,
                           np.array([1.0, 0.0]), np.array([1.0, 0.0]))

    def test_endpoint_off_boundary_rejected(self, wulff_euclid):
        with pytest.raises(InputError):
            make_wulff_arc(wulff_euclid, np.zeros(2), 1.0,
                           np.array([1.5, 0.0]), np.array([0.0, 1.0]))


class TestFitArc:
    def test_tangent_case_merges(self, wulff_euclid):
        c1, c2 = fit_wulff_arc_through(wulff_euclid, np.array([-1.0, 0.0]),
                                       np.array([1.0, 0.0]), 1.0)
        np.testing.assert_allclose(c1, [0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(c2, [0.0, 0.0], atol=1e-12)

    def test_circle_through_two_points(self, wulff_euclid):
        c1, c2 = fit_wulff_arc_through(wulff_euclid, np.array([-1.0, 0.0]),
                                       np.array([1.0, 0.0]), np.sqrt(2.0))
        got = sorted([tuple(np.round(c1, 10)), tuple(np.round(c2, 10))])
        np.testing.assert_allclose(got, [(0.0, -1.0), (0.0, 1.0)], atol=1e-10)

    def test_p4_residuals(self, wulff_p4):
        p1, p2 = np.array([-1.0, 0.0]), np.array([1.0, 0.0])
        c1, c2 = fit_wulff_arc_through(wulff_p4, p1, p2, 1.3)
        for c in (c1, c2):
            r1 = abs(float(wulff_p4.polar(p1 - c)) - 1.3)
            r2 = abs(float(wulff_p4.polar(p2 - c)) - 1.3)
            assert max(r1, r2) < 1e-10
        assert not np.allclose(c1, c2)

    def test_radius_too_small(self, wulff_euclid):
        with pytest.raises(InfeasibleError):
            fit_wulff_arc_through(wulff_euclid, np.array([-1.0, 0.0]),
                                  np.array([1.0, 0.0]), 0.5)


class TestIsoperimetricIdentities:
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_global_equality_at_wulff_shapes(self, t, euclid, elliptic21, p4,
                                             wulff_euclid, wulff_elliptic,
                                             wulff_p4):
        # P_H(tW)^2 == 4 |W| |tW| with P_H from the quadrature path
        for norm, shape in ((euclid, wulff_euclid),
                            (elliptic21, wulff_elliptic), (p4, wulff_p4)):
            curve = WulffArcCurve(shape, np.zeros(2), t, 0.0, 2 * np.pi)
            per = curve_length_H(norm, curve).value
            lhs = per ** 2
            rhs = 4.0 * shape.area * (t ** 2 * shape.area)
            assert lhs == pytest.approx(rhs, rel=1e-6)

    @pytest.mark.parametrize("g", [1.0, 3.0])
    def test_full_plane_wulff_perimeter(self, g, elliptic21, wulff_elliptic):
        curve = WulffArcCurve(wulff_elliptic, np.zeros(2), g, 0.0, 2 * np.pi)
        per = curve_length_H(elliptic21, curve).value
        assert per == pytest.approx(2 * g * wulff_elliptic.area, rel=1e-8)

    @pytest.mark.parametrize("g", [1.0, 2.0])
    def test_sector_formula_on_quadrant(self, g, p4, wulff_p4):
        # relative perimeter of gW in the open first quadrant equals
        # 2 g |W inter quadrant|, the quadrant sector area by slices
        th1 = float(wulff_p4.theta_of_point(
            np.asarray(wulff_p4.radial_point(0.0))))
        curve = WulffArcCurve(wulff_p4, np.zeros(2), g, 0.0, np.pi / 2)
        per = curve_length_H(p4, curve).value

        polar = p4.polar()

        def bounds(x):
            if x <= 0 or float(polar(np.array([x, 0.0]))) >= 1.0:
                return None
            hi = brentq(lambda y: float(polar(np.array([x, y]))) - 1.0,
                        0.0, 10.0, xtol=1e-13)
            return (0.0, hi)

        quadrant_area = region_area_by_slices(bounds, 1e-12, 1.0)
        assert per == pytest.approx(2 * g * quadrant_area, rel=1e-6)

    def test_sector_area_table_matches_slices(self, wulff_p4, p4):
        got = float(wulff_p4.sector_area(0.0, np.pi / 2, True))
        polar = p4.polar()

        def bounds(x):
            if x <= 0 or float(polar(np.array([x, 0.0]))) >= 1.0:
                return None
            hi = brentq(lambda y: float(polar(np.array([x, y]))) - 1.0,
                        0.0, 10.0, xtol=1e-13)
            return (0.0, hi)

        assert got == pytest.approx(region_area_by_slices(bounds, 1e-12, 1.0),
                                    abs=1e-8)
