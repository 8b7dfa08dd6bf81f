import math

import numpy as np
import pytest

from anisoperim import (PolygonDomain, chord_cut, curve_length_H, disk_domain,
                        norm_level_domain, quotient, relative_perimeter,
                        segment_minimality_check)
from anisoperim.curves import FunctionCurve, Segment

SQUARE = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]


def circle_curve(radius=1.0):
    def pt(t):
        t = np.asarray(t, dtype=float)
        a = 2 * np.pi * t
        return radius * np.stack([np.cos(a), np.sin(a)], axis=-1)

    def dpt(t):
        t = np.asarray(t, dtype=float)
        a = 2 * np.pi * t
        return 2 * np.pi * radius * np.stack([-np.sin(a), np.cos(a)], axis=-1)

    return FunctionCurve(pt, dpt)


class TestCurveLength:
    def test_segment_closed_form(self, euclid, elliptic21, p4, pq43):
        # L_H of the segment from the origin to (x, y) is H(-y, x)
        for norm in (euclid, elliptic21, p4, pq43):
            for target in ([1.0, 0.4], [-0.3, 2.0], [0.5, -0.5]):
                x, y = target
                seg = Segment(np.array([0.0, 0.0]), np.array(target))
                want = float(norm(np.array([-y, x])))
                assert curve_length_H(norm, seg).value == pytest.approx(
                    want, rel=1e-12)

    def test_unit_circle_euclid(self, euclid):
        rep = curve_length_H(euclid, circle_curve())
        assert rep.value == pytest.approx(2 * np.pi, abs=1e-10)

    def test_wulff_boundary_gives_twice_area(self, euclid, elliptic21, p4,
                                             wulff_euclid, wulff_elliptic,
                                             wulff_p4):
        from anisoperim.wulff import WulffArcCurve
        for norm, shape in ((euclid, wulff_euclid),
                            (elliptic21, wulff_elliptic), (p4, wulff_p4)):
            curve = WulffArcCurve(shape, np.zeros(2), 1.0, 0.0, 2 * np.pi)
            rep = curve_length_H(norm, curve)
            assert rep.value == pytest.approx(2 * shape.area, rel=1e-8)

    def test_piecewise_norm_on_circle_splits_at_seams(self, pq43):
        # smooth result despite the p/q seam kinks in the integrand
        rep = curve_length_H(pq43, circle_curve())
        # independent check: dense trapezoid on the exact integrand
        t = np.linspace(0, 1, 200001)
        d = 2 * np.pi * np.stack([-np.sin(2 * np.pi * t),
                                  np.cos(2 * np.pi * t)], axis=-1)
        vals = np.asarray(pq43(np.stack([-d[:, 1], d[:, 0]], axis=-1)))
        want = np.trapezoid(vals, t)
        assert rep.value == pytest.approx(want, rel=1e-9)


class TestRelativePerimeter:
    def test_disk_diameter(self, euclid):
        disk = disk_domain(1.0)
        cut = chord_cut(disk, 0.0, 0.5)
        assert relative_perimeter(euclid, disk, cut).value == pytest.approx(
            2.0, rel=1e-12)

    def test_square_mid_chord_max_approx(self, maxnorm):
        square = PolygonDomain(SQUARE)
        cut = chord_cut(square, 0.125, 0.625)
        p64 = maxnorm.approximants()[-1]
        assert relative_perimeter(p64, square, cut).value == pytest.approx(
            2.0, abs=2e-2)

    def test_elliptic_vertical_chord(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        cut = chord_cut(omega, 0.25, 0.75)  # from (0, 1) to (0, -1)
        assert relative_perimeter(elliptic21, omega, cut).value == \
            pytest.approx(1.0, rel=1e-10)

    def test_sandwich_bounds(self, elliptic21, pq43, rng):
        disk = disk_domain(1.0)
        for norm in (elliptic21, pq43):
            for _ in range(25):
                s1, s2 = rng.uniform(0, 1, 2)
                if min(abs(s1 - s2), 1 - abs(s1 - s2)) < 0.05:
                    continue
                cut = chord_cut(disk, s1, s2)
                rep = relative_perimeter(norm, disk, cut)
                assert norm.alpha * rep.euclidean_value - 1e-12 <= rep.value
                assert rep.value <= norm.beta * rep.euclidean_value + 1e-12


class TestQuotient:
    def test_disk_diameter_gives_8_over_pi(self, euclid):
        disk = disk_domain(1.0)
        cut = chord_cut(disk, 0.0, 0.5)
        assert quotient(euclid, disk, cut) == pytest.approx(8 / np.pi,
                                                            rel=1e-12)

    def test_square_mid_chord(self, euclid):
        square = PolygonDomain(SQUARE)
        cut = chord_cut(square, 0.125, 0.625)
        assert quotient(euclid, square, cut) == pytest.approx(2.0, rel=1e-12)

    def test_disk_chord_at_half_height(self, euclid):
        # circular-segment closed form at height h = 0.5
        h = 0.5
        chord_len = 2 * math.sqrt(1 - h * h)
        seg_area = math.acos(h) - h * math.sqrt(1 - h * h)
        want = chord_len ** 2 / seg_area
        disk = disk_domain(1.0)
        phi = math.asin(h)
        s1 = phi / (2 * np.pi)
        s2 = (math.pi - phi) / (2 * np.pi)
        cut = chord_cut(disk, s1, s2)
        assert quotient(euclid, disk, cut) == pytest.approx(want, rel=1e-12)


class TestMinimality:
    @pytest.mark.parametrize("norm_name,p0,p1", [
        ("euclid", [0.0, 0.0], [1.0, 0.0]),
        ("elliptic21", [0.0, 0.0], [1.0, 1.0]),
        ("p4", [0.0, 0.0], [0.0, 1.0]),
    ])
    def test_segment_beats_perturbations(self, norm_name, p0, p1, request):
        norm = request.getfixturevalue(norm_name)
        report = segment_minimality_check(norm, p0, p1, n_perturbations=50,
                                          seed=11)
        assert report["worst_margin"] >= -1e-10
        assert report["all_nonnegative"]


class TestInvariances:
    def test_reparametrization(self, elliptic21):
        def pt(t):
            t = np.asarray(t, dtype=float)
            a = np.pi * t
            return np.stack([np.cos(a), 0.7 * np.sin(a)], axis=-1)

        def dpt(t):
            t = np.asarray(t, dtype=float)
            a = np.pi * t
            return np.pi * np.stack([-np.sin(a), 0.7 * np.cos(a)], axis=-1)

        base = curve_length_H(elliptic21, FunctionCurve(pt, dpt)).value

        # smooth monotone reparametrization u(t) = t^2 (3 - 2t)
        def pt2(t):
            t = np.asarray(t, dtype=float)
            return pt(t * t * (3 - 2 * t))

        def dpt2(t):
            t = np.asarray(t, dtype=float)
            u = t * t * (3 - 2 * t)
            du = 6 * t * (1 - t)
            return dpt(u) * du[..., None]

        again = curve_length_H(elliptic21, FunctionCurve(pt2, dpt2)).value
        assert again == pytest.approx(base, rel=1e-10)

    def test_reversal(self, pq43):
        seg = Segment(np.array([0.3, -0.4]), np.array([-1.0, 2.0]))
        rev = Segment(np.array([-1.0, 2.0]), np.array([0.3, -0.4]))
        a = curve_length_H(pq43, seg).value
        b = curve_length_H(pq43, rev).value
        assert a == pytest.approx(b, rel=1e-12)

    @pytest.mark.parametrize("t", [0.5, 2.0, 7.0])
    def test_scaling(self, t, p4):
        seg = Segment(np.array([0.1, 0.2]), np.array([1.3, -0.7]))
        seg_t = Segment(t * np.array([0.1, 0.2]), t * np.array([1.3, -0.7]))
        a = curve_length_H(p4, seg).value
        b = curve_length_H(p4, seg_t).value
        assert b == pytest.approx(t * a, rel=1e-10)

    @pytest.mark.parametrize("t", [0.5, 3.0])
    def test_quotient_scale_invariance(self, t, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        omega_t = omega.scaled(t)
        q1 = quotient(elliptic21, omega, chord_cut(omega, 0.1, 0.55))
        q2 = quotient(elliptic21, omega_t, chord_cut(omega_t, 0.1, 0.55))
        assert q2 == pytest.approx(q1, rel=1e-8)
