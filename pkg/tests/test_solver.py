import math

import numpy as np
import pytest
from scipy.optimize import brentq

from anisoperim import (InputError, PolygonDomain, PreconditionError,
                        Tolerances, area_profile, chord_cut,
                        constant_symmetric, contact_residual, disk_domain,
                        kappa, norm_level_domain, r_h, solve_auto,
                        solve_general, solve_p_limit, verify_lower_bound)

SQUARE = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]


@pytest.fixture(scope="module")
def disk():
    return disk_domain(1.0)


def circular_segment_mu(k):
    """Closed-form oracle for the unit disk: min over chords at a height
    and over circles meeting the boundary orthogonally, at fixed area k."""

    def seg_area(h):
        return math.acos(h) - h * math.sqrt(1 - h * h)

    h = brentq(lambda x: seg_area(x) - k, 0.0, 1 - 1e-15, xtol=1e-15)
    mu_chord = (2 * math.sqrt(1 - h * h)) ** 2 / k

    def lens_area(rho):
        return math.atan(rho) + rho * rho * math.atan(1 / rho) - rho

    rho = brentq(lambda r: lens_area(r) - k, 1e-9, 1e9, xtol=1e-15)
    mu_arc = (2 * rho * math.atan(1 / rho)) ** 2 / k
    return min(mu_chord, mu_arc)


class TestRH:
    def test_disk(self, euclid, disk):
        res = r_h(euclid, disk)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert res.degenerate  # every direction minimizes

    def test_rotated_level_set_constant(self, pq43):
        omega = norm_level_domain(pq43, 1.7, mode="rotated")
        res = r_h(pq43, omega)
        assert res.value == pytest.approx(1.7, rel=1e-12)
        assert res.degenerate

    def test_elliptic_primal_short_axis(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="primal")
        res = r_h(elliptic21, omega)
        assert res.value == pytest.approx(0.5, rel=1e-10)
        assert not res.degenerate
        # argmins at the +-y axis: s = 0.25 and 0.75
        got = sorted(res.argmin_params)
        np.testing.assert_allclose(got, [0.25, 0.75], atol=1e-6)

    def test_asymmetric_rejected(self, euclid):
        tri = PolygonDomain([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(PreconditionError):
            r_h(euclid, tri)


class TestConstantSymmetric:
    def test_disk(self, euclid, disk):
        res = constant_symmetric(euclid, disk)
        assert res.c_h == pytest.approx(8 / np.pi, rel=1e-12)
        m = res.minimizers[0]
        assert m.cut.kind == "chord"
        assert m.perimeter_H == pytest.approx(2.0, rel=1e-10)
        assert max(abs(r) for r in m.contact_residuals) < 1e-8

    def test_elliptic_polar(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        res = constant_symmetric(elliptic21, omega)
        assert res.c_h == pytest.approx(8 / (np.pi * 2 * 1), rel=1e-12)

    def test_elliptic_primal_value_and_uniqueness(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="primal")
        res = constant_symmetric(elliptic21, omega)
        want = 8 / (np.pi * 2 * 1) * (1 / 4)
        assert res.c_h == pytest.approx(want, rel=1e-10)
        assert len(res.minimizers) == 1
        cut = res.minimizers[0].cut
        # chord along the short Euclidean axis: endpoints (0, +-1)
        assert abs(cut.p1[0]) < 1e-9 and abs(cut.p2[0]) < 1e-9
        assert res.minimizers[0].perimeter_H == pytest.approx(
            2 * 0.5, rel=1e-10)

    @pytest.mark.parametrize("norm_name", ["euclid", "elliptic21", "p4",
                                           "pq43"])
    def test_rotated_level_identity(self, norm_name, request):
        # C_H({H(-y,x) < r}) = 8 / kappa_H, independent of r
        norm = request.getfixturevalue(norm_name)
        for r in (1.0, 2.0):
            omega = norm_level_domain(norm, r, mode="rotated")
            res = constant_symmetric(norm, omega)
            assert res.c_h == pytest.approx(8 / kappa(norm), rel=1e-6)

    def test_piecewise_example_pair(self, pq43):
        kap = kappa(pq43)
        omega = norm_level_domain(pq43, 1.0, mode="rotated")
        omega1 = norm_level_domain(pq43, 1.0, mode="primal")
        c = constant_symmetric(pq43, omega).c_h
        c1 = constant_symmetric(pq43, omega1).c_h
        assert c == pytest.approx(8 / kap, rel=1e-10)
        assert c1 == pytest.approx(8 / kap * 4 ** (1 / 4 - 1 / 3), rel=1e-10)
        assert c > c1

    def test_asymmetric_domain_rejected(self, euclid):
        tri = PolygonDomain([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(PreconditionError):
            constant_symmetric(euclid, tri)


class TestContactResidual:
    def test_disk_diameter_zero(self, euclid, disk):
        cut = chord_cut(disk, 0.0, 0.5)
        for end in (1, 2):
            assert abs(contact_residual(euclid, disk, cut, end)) < 1e-12

    def test_elliptic_polar_center_chord(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        res = constant_symmetric(elliptic21, omega)
        cut = res.minimizers[0].cut
        for end in (1, 2):
            assert abs(contact_residual(elliptic21, omega, cut, end)) < 1e-8

    def test_offset_chord_fails_condition(self, euclid, disk):
        h = 0.5
        phi = math.asin(h)
        cut = chord_cut(disk, phi / (2 * np.pi),
                        (math.pi - phi) / (2 * np.pi))
        r1 = contact_residual(euclid, disk, cut, 1)
        assert abs(r1) >= 0.4

    def test_which_end_validation(self, euclid, disk):
        cut = chord_cut(disk, 0.0, 0.5)
        with pytest.raises(InputError):
            contact_residual(euclid, disk, cut, 3)


class TestSolveGeneral:
    def test_disk(self, euclid, disk):
        res = solve_general(euclid, disk)
        assert res.c_h == pytest.approx(8 / np.pi, rel=1e-6)
        winner = res.minimizers[0]
        assert winner.cut.kind == "chord"
        # the winning chord is a diameter
        assert np.linalg.norm(winner.cut.p1 + winner.cut.p2) < 1e-5
        assert max(abs(r) for r in winner.contact_residuals) < 1e-6

    def test_matches_closed_form_elliptic(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        closed = constant_symmetric(elliptic21, omega).c_h
        searched = solve_general(elliptic21, omega).c_h
        assert searched == pytest.approx(closed, rel=1e-5)

    def test_piecewise_primal_example(self, pq43):
        omega1 = norm_level_domain(pq43, 1.0, mode="primal")
        want = 8 / kappa(pq43) * 4 ** (1 / 4 - 1 / 3)
        res = solve_general(pq43, omega1)
        assert res.c_h == pytest.approx(want, rel=1e-3)

    def test_minimizer_consistency_invariants(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="primal")
        res = solve_general(elliptic21, omega)
        for m in res.minimizers:
            assert m.cut.kind in ("chord", "wulff_arc")
            assert abs(m.q - res.c_h) <= 1e-6 * res.c_h
            for r in m.contact_residuals:
                if not math.isnan(r):
                    assert abs(r) <= 1e-6

    @pytest.mark.parametrize("t", [0.5, 3.0])
    def test_scale_invariance(self, t, euclid, disk):
        res = solve_general(euclid, disk.scaled(t))
        assert res.c_h == pytest.approx(8 / np.pi, rel=1e-6)

    def test_triangle_corner_sector_family(self, euclid):
        # the optimum of this triangle is the corner-sector family at the
        # smallest vertex angle theta: Q = 2 theta, constant in the area
        tri = PolygonDomain([[0.0, 0.0], [2.0, 0.0], [0.4, 1.6]])
        theta_min = np.pi / 4  # vertex at (2, 0)
        res = solve_general(euclid, tri)
        assert res.c_h == pytest.approx(2 * theta_min, rel=1e-6)
        assert any("sector" in d for d in res.diagnostics)
        # a half-area minimizer exists among the reported ties
        halves = [m for m in res.minimizers
                  if min(m.area_e, m.area_complement) ==
                  pytest.approx(0.5 * tri.area, rel=1e-6)]
        assert halves
        for m in res.minimizers:
            assert m.cut.kind in ("chord", "wulff_arc")
            assert max(abs(r) for r in m.contact_residuals) < 1e-6
        summary = verify_lower_bound(euclid, tri, res.c_h, 4000, seed=3)
        assert summary.violations == 0

    def test_sub_half_area_arcs_concave_toward_e(self, euclid):
        # minimizing arcs with |E| < |Omega|/2 curve around their center
        # with E on the center side
        tri = PolygonDomain([[0.0, 0.0], [2.0, 0.0], [0.4, 1.6]])
        res = solve_general(euclid, tri)
        checked = 0
        for m in res.minimizers:
            cut = m.cut
            small = min(m.area_e, m.area_complement)
            if cut.kind != "wulff_arc" or small > 0.499 * tri.area:
                continue
            mid_t = 0.5 * (cut.curve.t0 + cut.curve.t1)
            q_mid = np.asarray(cut.curve.point(np.asarray(mid_t)))
            tau = np.asarray(cut.curve.derivative(np.asarray(mid_t)))
            tau = tau / np.linalg.norm(tau)
            nu = np.array([-tau[1], tau[0]])
            if cut.side_e != "ccw":
                nu = -nu
            if m.area_e > m.area_complement:
                nu = -nu  # normal out of the smaller piece
            away = q_mid - np.asarray(cut.arc.center)
            assert np.dot(nu, away) > 0
            checked += 1
        assert checked >= 1

    def test_nonsmooth_rejected(self, maxnorm, disk):
        with pytest.raises(PreconditionError):
            solve_general(maxnorm, disk)


class TestAreaProfile:
    def test_disk_half_area(self, euclid, disk):
        (k, mu, cut), = area_profile(euclid, disk, [np.pi / 2])
        assert mu == pytest.approx(8 / np.pi, rel=1e-8)

    def test_disk_quarter_area_oracle(self, euclid, disk):
        (k, mu, cut), = area_profile(euclid, disk, [np.pi / 4])
        assert mu == pytest.approx(circular_segment_mu(np.pi / 4), rel=1e-8)
        assert cut is not None and cut.kind == "wulff_arc"

    def test_monotone_on_grid(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        ks = np.linspace(0.1, 1.0, 8) * (omega.area / 2)
        prof = area_profile(elliptic21, omega, ks)
        mus = [m for _, m, _ in prof]
        for a, b in zip(mus[:-1], mus[1:]):
            assert a >= b - 1e-6

    def test_out_of_range_rejected(self, euclid, disk):
        with pytest.raises(InputError):
            area_profile(euclid, disk, [disk.area])


class TestVerify:
    def test_disk_at_optimum(self, euclid, disk):
        summary = verify_lower_bound(euclid, disk, 8 / np.pi, 10_000, seed=7)
        assert summary.samples == 10_000
        assert summary.violations == 0
        assert summary.worst_ratio >= 1 - 1e-9

    def test_elliptic_near_optimal_sampling(self, elliptic21):
        omega = norm_level_domain(elliptic21, 1.0, mode="polar")
        summary = verify_lower_bound(elliptic21, omega, 4 / np.pi, 10_000,
                                     seed=7)
        assert summary.violations == 0
        assert 1.0 <= summary.worst_ratio <= 1.0 + 1e-3

    def test_inflated_constant_violated(self, euclid, disk):
        summary = verify_lower_bound(euclid, disk, 8 / np.pi * 1.05, 10_000,
                                     seed=7)
        assert summary.violations > 0

    def test_deterministic_under_seed(self, euclid, disk):
        a = verify_lower_bound(euclid, disk, 8 / np.pi, 2_000, seed=42)
        b = verify_lower_bound(euclid, disk, 8 / np.pi, 2_000, seed=42)
        assert a == b
        c = verify_lower_bound(euclid, disk, 8 / np.pi, 2_000, seed=43)
        assert c.worst_ratio != a.worst_ratio

    def test_bad_constant_rejected(self, euclid, disk):
        with pytest.raises(InputError):
            verify_lower_bound(euclid, disk, -1.0, 100, seed=0)


class TestPLimit:
    def test_square_limit_is_two(self, maxnorm):
        square = PolygonDomain(SQUARE)
        res = solve_p_limit(maxnorm, square)
        assert res.c_h == pytest.approx(2.0, abs=1e-2)
        assert res.method == "p_limit"
        per_p = res.extras["per_p"]
        assert [p for p, _ in per_p] == [8, 16, 32, 64]
        # each approximant already gives the limiting constant here
        for _, c in per_p:
            assert c == pytest.approx(2.0, rel=1e-9)
        assert any("non-unique" in d for d in res.diagnostics)

    def test_short_sequence_rejected(self, disk):
        from anisoperim import AnisotropicNorm
        with pytest.raises(PreconditionError):
            solve_p_limit(AnisotropicNorm.max_approx([8, 16]), disk)

    def test_wrong_family_rejected(self, euclid, disk):
        with pytest.raises(PreconditionError):
            solve_p_limit(euclid, disk)


class TestSolveAuto:
    def test_dispatch_symmetric(self, euclid, disk):
        res = solve_auto(euclid, disk)
        assert res.method == "symmetric_closed_form"

    def test_dispatch_p_limit(self, maxnorm):
        square = PolygonDomain(SQUARE)
        res = solve_auto(maxnorm, square)
        assert res.method == "p_limit"

    def test_dispatch_general(self, euclid):
        tri = PolygonDomain([[0.0, 0.0], [2.0, 0.0], [0.4, 1.6]])
        res = solve_auto(euclid, tri)
        assert res.method == "general_search"

    def test_verification_attached(self, euclid, disk):
        res = solve_auto(euclid, disk, verify_samples=2000, seed=5)
        assert res.verification is not None
        assert res.verification.violations == 0
        assert res.verification.worst_ratio >= 1 - 1e-6
