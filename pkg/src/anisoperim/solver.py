"""Optimal-constant solver: C_H(Omega), minimizing cuts, and verification.

The structural theory reduces the search to two low-dimensional candidate
families: chords (s1, s2) and Wulff arcs (s1, s2, radius), with corner
Wulff sectors as a polygon-only side channel. Grid scans feed a
derivative-free simplex, and winners are polished on the contact-angle
optimality system.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from ._util import cross2, golden_minimize, rot90, unit, wrap_unit
from .errors import (CornerError, GeometryError, InputError, NumericError,
                     PreconditionError)
from .geometry import PolygonDomain, chord_cut, wulff_arc_cut
from .perimeter import relative_perimeter
from .wulff import WulffArc, WulffShape

_TWO_PI = 2.0 * np.pi


@dataclass
class Tolerances:
    contact: float = 1e-6       # max |<grad H(nu_E), nu_Omega>| at endpoints
    tie_rel: float = 1e-6       # cuts within this of the best Q are co-reported
    verify_slack: float = 1e-6  # Q >= c*(1 - slack) counts as satisfied
    degenerate_area: float = 1e-6   # min-area fraction treated as degenerate

    def replaced(self, **kw):
        data = {**self.__dict__, **kw}
        return Tolerances(**data)


@dataclass
class VerificationSummary:
    samples: int
    worst_ratio: float
    violations: int
    seed: int
    c: float

    def to_dict(self):
        return {"samples": self.samples, "worst_ratio": self.worst_ratio,
                "violations": self.violations, "seed": self.seed, "c": self.c}


@dataclass
class MinimizerInfo:
    cut: object
    q: float
    perimeter_H: float
    area_e: float
    area_complement: float
    contact_residuals: tuple

    def to_dict(self):
        cut = self.cut
        d = {"kind": cut.kind, "s1": cut.s1, "s2": cut.s2,
             "side_e": cut.side_e, "q": self.q,
             "perimeter_H": self.perimeter_H,
             "area_e": self.area_e, "area_complement": self.area_complement,
             "contact_residuals": list(self.contact_residuals),
             "p1": list(map(float, cut.p1)), "p2": list(map(float, cut.p2))}
        if cut.kind == "wulff_arc":
            d["center"] = list(map(float, cut.arc.center))
            d["radius"] = cut.arc.radius
            d["ccw"] = cut.arc.ccw
        return d


@dataclass
class IsoResult:
    c_h: float
    method: str
    minimizers: list
    verification: VerificationSummary = None
    diagnostics: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "c_h": self.c_h,
            "method": self.method,
            "minimizers": [m.to_dict() for m in self.minimizers],
            "verification": self.verification.to_dict() if self.verification else None,
            "diagnostics": list(self.diagnostics),
            "extras": self.extras,
        }


@dataclass
class RHResult:
    value: float
    argmin_params: list
    degenerate: bool


# ---------------------------------------------------------------------------
# r_H and the closed form for centrosymmetric domains
# ---------------------------------------------------------------------------

def _require_center(omega):
    center = omega.symmetry_center()
    if center is None:
        raise PreconditionError("domain is not centrosymmetric")
    return np.asarray(center, dtype=float)


def r_h(norm, omega, n_grid=2048):
    """min over boundary points T of L_H(T) = H(-y, x), T relative center.

    Returns an RHResult with the minimum, every distinct argmin boundary
    parameter, and a flag marking the constant (continuum) case.
    """
    center = _require_center(omega)
    s = np.linspace(0.0, 1.0, n_grid, endpoint=False)
    pts = omega.boundary_point(s) - center
    vals = np.asarray(norm(rot90(pts)))

    spread = float(vals.max() - vals.min())
    vmin = float(vals.min())
    if spread <= 1e-12 * max(1.0, vmin):
        return RHResult(value=vmin, argmin_params=list(s[:: n_grid // 4][:4]),
                        degenerate=True)

    def L(si):
        p = omega.boundary_point(np.asarray(float(wrap_unit(si)))) - center
        return float(norm(rot90(p)))

    h = 1.0 / n_grid
    is_min = (vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1))
    idx = np.nonzero(is_min)[0]
    # collapse consecutive flat runs (wrap-aware) to one representative
    runs = []
    for i in idx:
        if runs and (i - runs[-1][-1]) == 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n_grid - 1:
        runs[0] = runs.pop() + runs[0]
    reps = [r[len(r) // 2] for r in runs]
    candidates = []
    for i in reps:
        x, fx = golden_minimize(L, s[i] - h, s[i] + h, xtol=1e-13)
        # Newton polish on the FD derivative sharpens flat minima.
        for _ in range(3):
            d1 = (L(x + 1e-7) - L(x - 1e-7)) / 2e-7
            d2 = (L(x + 1e-7) - 2 * L(x) + L(x - 1e-7)) / 1e-14
            if not np.isfinite(d2) or abs(d2) < 1e-12:
                break
            step = d1 / d2
            if abs(step) > h:
                break
            x -= step
        candidates.append((float(wrap_unit(x)), L(x)))
    best = min(v for _, v in candidates)
    tol = 1e-9 * max(1.0, best)
    argmins = sorted(x for x, v in candidates if v <= best + tol)
    merged = []
    for x in argmins:
        if not merged or min(abs(x - merged[-1]), 1 - abs(x - merged[-1])) > 1e-6:
            merged.append(x)
    if len(merged) > 1 and min(abs(merged[0] - merged[-1]),
                               1 - abs(merged[0] - merged[-1])) <= 1e-6:
        merged.pop()
    return RHResult(value=best, argmin_params=merged, degenerate=False)


def contact_residual(norm, omega, cut, which_end):
    """<grad H(nu_E), nu_Omega> at endpoint 1 or 2 of the cut."""
    if which_end not in (1, 2):
        raise InputError("which_end must be 1 or 2")
    s = cut.s1 if which_end == 1 else cut.s2
    frame = omega.frame(np.asarray(float(s)))
    if frame.corner:
        raise CornerError("contact residual requested at a boundary corner")
    nu_e = cut.outward_normal_of_e(which_end)
    return float(np.dot(np.asarray(norm.gradient(nu_e)),
                        np.asarray(frame.normal)))


def _center_chord_cut(norm, omega, s_t, center):
    """Chord through the center hitting the boundary at parameter s_t."""
    t_pt = omega.boundary_point(np.asarray(float(s_t)))
    d = t_pt - center
    p2, s2, corner = omega.ray_exit(center, -d)
    return chord_cut(omega, s_t, s2)


def _minimizer_info(norm, omega, cut):
    rep = relative_perimeter(norm, omega, cut)
    per = rep.value
    # the perimeter sandwich must hold on every cut the solver reports
    if not (norm.alpha * rep.euclidean_value - 1e-9 <= per
            <= norm.beta * rep.euclidean_value + 1e-9):
        raise NumericError("perimeter sandwich violated on a reported cut")
    a_e, a_c = cut.areas()
    q = per * per / min(a_e, a_c)
    res = []
    for which in (1, 2):
        try:
            res.append(contact_residual(norm, omega, cut, which))
        except CornerError:
            res.append(float("nan"))
    return MinimizerInfo(cut=cut, q=q, perimeter_H=per,
                         area_e=a_e, area_complement=a_c,
                         contact_residuals=(res[0], res[1]))


def constant_symmetric(norm, omega, tolerances=None, verify_samples=0,
                       seed=0):
    """C_H = 8 r_H^2 / |Omega| for a centrosymmetric domain.

    Minimizers are the chords through the center in the argmin directions
    of L_H, each with anisotropic perimeter 2 r_H.
    """
    tol = tolerances or Tolerances()
    if not norm.smooth:
        raise PreconditionError("closed form needs a smooth norm family")
    center = _require_center(omega)
    rh = r_h(norm, omega)
    c_h = 8.0 * rh.value ** 2 / omega.area

    diagnostics = []
    if rh.degenerate:
        diagnostics.append(
            "continuum of minimizers: every chord through the center is "
            "optimal; reporting representatives")
    argmins = rh.argmin_params
    if len(argmins) > 8:
        diagnostics.append(
            f"{len(argmins)} near-optimal directions within tolerance; "
            "reporting 8 representatives")
        argmins = [argmins[i] for i in
                   np.linspace(0, len(argmins) - 1, 8).astype(int)]
    minimizers = []
    used = []
    for s_t in argmins:
        # antipodal argmins give the same center chord
        if any(min(abs(s_t - u - 0.5), abs(s_t - u + 0.5), abs(s_t - u),
                   1 - abs(s_t - u)) < 1e-6 for u in used):
            continue
        used.append(s_t)
        s_use = s_t
        if not rh.degenerate:
            s_use = _polish_center_direction(norm, omega, s_t, center)
        cut = _center_chord_cut(norm, omega, s_use, center)
        minimizers.append(_minimizer_info(norm, omega, cut))
    minimizers.sort(key=lambda m: m.q)

    verification = None
    if verify_samples:
        verification = verify_lower_bound(norm, omega, c_h, verify_samples,
                                          seed, tolerances=tol)
    return IsoResult(c_h=c_h, method="symmetric_closed_form",
                     minimizers=minimizers, verification=verification,
                     diagnostics=diagnostics,
                     extras={"r_h": rh.value,
                             "argmin_params": list(rh.argmin_params)})


def _polish_center_direction(norm, omega, s_t, center):
    """Refine an isolated argmin direction via the contact residual root."""

    def res(si):
        si = float(wrap_unit(si))
        t_pt = omega.boundary_point(np.asarray(si)) - center
        tau = unit(-2 * t_pt)
        nu_e = rot90(tau)
        frame = omega.frame(np.asarray(si))
        if frame.corner:
            return 1e3
        return float(np.dot(np.asarray(norm.gradient(nu_e)), frame.normal))

    r0 = res(s_t)
    if abs(r0) < 1e-12:
        return s_t
    h = 1e-4
    for a, b in ((s_t - h, s_t + h), (s_t - 8 * h, s_t + 8 * h)):
        ra, rb = res(a), res(b)
        if np.isfinite(ra) and np.isfinite(rb) and ra * rb < 0:
            return float(wrap_unit(optimize.brentq(res, a, b, xtol=1e-14)))
    return s_t


# ---------------------------------------------------------------------------
# vectorized candidate machinery
# ---------------------------------------------------------------------------

class _Workspace:
    """Caches shared between search stages for one (norm, omega) pair."""

    def __init__(self, norm, omega):
        self.norm = norm
        self.omega = omega
        self.polar = norm.polar()
        self.shape = WulffShape(norm)
        self.area = omega.area
        self.diam = omega.diameter

    def chord_q(self, s1, s2):
        """Vectorized chord quotient; np.inf where degenerate."""
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        p1 = self.omega.boundary_point(wrap_unit(s1))
        p2 = self.omega.boundary_point(wrap_unit(s2))
        length = np.asarray(self.norm(rot90(p2 - p1)))
        piece = np.asarray(self.omega.piece_area(s1, s2,
                                                 0.5 * cross2(p1, p2)))
        small = np.minimum(piece, self.area - piece)
        bad = small < 1e-6 * self.area
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(bad, np.inf, length ** 2 / np.where(bad, 1.0, small))
        return q, length, piece

    def fit_centers(self, p1, p2, gamma, branch, max_iter=60, seed=None,
                    active=None):
        """Batch Newton for centers with H°(p_i - c) = gamma.

        branch is +-1 selecting the seed side. Entries outside `active`
        are skipped. Returns (centers, ok mask).
        """
        mid = 0.5 * (p1 + p2)
        chord = p2 - p1
        perp = unit(np.stack([-chord[..., 1], chord[..., 0]], axis=-1))
        if seed is not None:
            c = np.array(seed, dtype=float)
        else:
            c = mid + (branch * gamma)[..., None] * perp
        scale = np.maximum(1.0, gamma)
        ok = np.zeros(gamma.shape, dtype=bool)
        if active is None:
            active = np.ones(gamma.shape, dtype=bool)
        else:
            active = active.copy()
        for _ in range(max_iter):
            if not np.any(active):
                break
            d1 = p1 - c
            d2 = p2 - c
            f1 = np.asarray(self.polar(d1)) - gamma
            f2 = np.asarray(self.polar(d2)) - gamma
            conv = (np.abs(f1) < 1e-12 * scale) & (np.abs(f2) < 1e-12 * scale)
            ok |= conv & active
            active &= ~conv
            if not np.any(active):
                break
            g1 = -np.asarray(self.polar.gradient(d1))
            g2 = -np.asarray(self.polar.gradient(d2))
            det = g1[..., 0] * g2[..., 1] - g1[..., 1] * g2[..., 0]
            det = np.where(np.abs(det) < 1e-300, np.nan, det)
            sx = (g2[..., 1] * f1 - g1[..., 1] * f2) / det
            sy = (-g2[..., 0] * f1 + g1[..., 0] * f2) / det
            step = np.stack([sx, sy], axis=-1)
            bad = ~np.isfinite(step).all(axis=-1)
            step = np.where(bad[..., None], 0.0, step)
            active &= ~bad
            c = np.where(active[..., None], c - step, c)
        return c, ok

    def arc_q(self, s1, s2, gamma, branch, ccw, n_inside=12, seed_centers=None):
        """Vectorized Wulff-arc quotient for flat arrays of candidates.

        Returns dict of arrays; infeasible entries carry q = np.inf.
        """
        omega, shape = self.omega, self.shape
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        gamma = np.asarray(gamma, dtype=float)
        branch = np.asarray(branch, dtype=float)
        ccw = np.asarray(ccw, dtype=bool)
        p1 = omega.boundary_point(wrap_unit(s1))
        p2 = omega.boundary_point(wrap_unit(s2))
        gamma_min = np.asarray(self.polar((p1 - p2) / 2.0))
        feas = gamma > gamma_min * (1.0 + 1e-9)

        centers, ok = self.fit_centers(p1, p2, gamma, branch,
                                       seed=seed_centers, active=feas)
        if seed_centers is not None and np.any(feas & ~ok):
            # warm start led astray: retry cold
            centers, ok = self.fit_centers(p1, p2, gamma, branch, active=feas)
        feas &= ok
        d1 = p1 - centers
        d2 = p2 - centers
        phi1 = np.arctan2(d1[..., 1], d1[..., 0])
        phi2 = np.arctan2(d2[..., 1], d2[..., 0])
        sweep = shape.sector_area(phi1, phi2, ccw)
        total = shape.sector_total()
        feas &= (sweep > 1e-9 * total) & (sweep < total * (1 - 1e-9))

        length = 2.0 * gamma * sweep
        signed = np.where(ccw, sweep, -sweep)
        green = gamma ** 2 * signed + 0.5 * cross2(centers, p2 - p1)
        piece = np.asarray(omega.piece_area(s1, s2, green))
        small = np.minimum(piece, self.area - piece)
        feas &= small > 1e-6 * self.area

        # interior containment of sampled arc points
        dphi = np.where(ccw, np.mod(phi2 - phi1, _TWO_PI),
                        -np.mod(phi1 - phi2, _TWO_PI))
        fr = np.linspace(0.05, 0.95, n_inside)
        phis = phi1[..., None] + dphi[..., None] * fr
        e = np.stack([np.cos(phis), np.sin(phis)], axis=-1)
        rho = 1.0 / np.asarray(self.polar(e))
        pts = centers[..., None, :] + gamma[..., None, None] * rho[..., None] * e
        inside = omega.contains(pts, tol=1e-9 * max(1.0, self.diam))
        feas &= np.all(inside, axis=-1)

        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(feas, length ** 2 / np.where(feas, small, 1.0), np.inf)
        return {"q": q, "length": length, "piece": piece, "center": centers,
                "feasible": feas, "gamma_min": gamma_min}


# ---------------------------------------------------------------------------
# scalar refinement objectives
# ---------------------------------------------------------------------------

def _chord_objective(ws):
    def f(x):
        q, _, _ = ws.chord_q(np.asarray([x[0]]), np.asarray([x[1]]))
        return float(q[0])
    return f

def _arc_objective(ws, branch, ccw):
    cache = {"c": None}
    lg_max = math.log(64.0 * ws.diam)

    def f(x):
        s1, s2, lg = x
        if lg > lg_max:
            return np.inf
        out = ws.arc_q(np.asarray([s1]), np.asarray([s2]),
                       np.asarray([math.exp(lg)]),
                       np.asarray([branch]), np.asarray([ccw]),
                       seed_centers=cache["c"], n_inside=10)
        if out["feasible"][0]:
            cache["c"] = out["center"].copy()
        return float(out["q"][0])
    return f


def _chord_residuals(ws, s1, s2):
    omega, norm = ws.omega, ws.norm
    p1 = omega.boundary_point(np.asarray(float(wrap_unit(s1))))
    p2 = omega.boundary_point(np.asarray(float(wrap_unit(s2))))
    if np.linalg.norm(p2 - p1) < 1e-12 * max(1.0, ws.diam):
        return np.array([1e3, 1e3])
    nu_e = rot90(unit(p2 - p1))
    g = np.asarray(norm.gradient(nu_e))
    out = []
    for s in (s1, s2):
        try:
            fr = omega.frame(np.asarray(float(wrap_unit(s))))
        except CornerError:
            return np.array([1e3, 1e3])
        if fr.corner:
            return np.array([1e3, 1e3])
        out.append(float(np.dot(g, fr.normal)))
    return np.array(out)


def _arc_residuals(ws, s1, s2, gamma, branch, ccw, cache=None):
    """[contact1, contact2, (half-area gap)] for the arc candidate."""
    seed = cache.get("c") if cache else None
    out = ws.arc_q(np.asarray([s1]), np.asarray([s2]), np.asarray([gamma]),
                   np.asarray([branch]), np.asarray([ccw]),
                   seed_centers=seed)
    if not out["feasible"][0]:
        return np.array([1e3, 1e3, 1e3])
    if cache is not None:
        cache["c"] = out["center"].copy()
    c = out["center"][0]
    omega, norm = ws.omega, ws.norm
    res = []
    for s, which in ((s1, 1), (s2, 2)):
        p = omega.boundary_point(np.asarray(float(wrap_unit(s))))
        n_out = np.asarray(ws.polar.gradient(p - c))
        n_out = n_out / np.linalg.norm(n_out)
        tau = rot90(n_out) if ccw else -rot90(n_out)
        nu_e = rot90(tau)
        try:
            fr = omega.frame(np.asarray(float(wrap_unit(s))))
        except CornerError:
            return np.array([1e3, 1e3, 1e3])
        if fr.corner:
            return np.array([1e3, 1e3, 1e3])
        res.append(float(np.dot(np.asarray(norm.gradient(nu_e)), fr.normal)))
    piece = out["piece"][0]
    small = min(piece, ws.area - piece)
    res.append((small - 0.5 * ws.area) / ws.area)
    return np.array(res)


def _distinct_seeds(order, s1g, s2g, qf, n_seeds, min_sep=0.02):
    seeds = []
    for idx in order:
        if not np.isfinite(qf[idx]):
            break
        cand = (s1g[idx], s2g[idx])
        dup = False
        for s in seeds:
            d1 = abs(cand[0] - s[0]); d1 = min(d1, 1 - d1)
            d2 = abs(cand[1] - s[1]); d2 = min(d2, 1 - d2)
            if max(d1, d2) < min_sep:
                dup = True
                break
        if not dup:
            seeds.append(cand)
        if len(seeds) >= n_seeds:
            break
    return seeds


def _nelder_mead(f, x0, steps, maxfev=None):
    simplex = [np.asarray(x0, dtype=float)]
    for i, st in enumerate(steps):
        v = np.asarray(x0, dtype=float).copy()
        v[i] += st
        simplex.append(v)
    options = dict(maxiter=500, xatol=1e-10, fatol=1e-14,
                   initial_simplex=np.asarray(simplex))
    if maxfev is not None:
        options["maxfev"] = maxfev
    res = optimize.minimize(f, np.asarray(x0, dtype=float),
                            method="Nelder-Mead", options=options)
    return res.x, float(res.fun)


# ---------------------------------------------------------------------------
# the general search
# ---------------------------------------------------------------------------

def solve_general(norm, omega, tolerances=None, verify_samples=0, seed=0,
                  n_chord_grid=128, n_arc_grid=32, n_radii=8):
    """Minimize Q over chords and Wulff arcs; polygon corners add sectors.

    Returns the best cut(s) with contact residuals; ties within the
    relative tie tolerance are all reported.
    """
    if not norm.smooth:
        raise PreconditionError("solve_general needs a smooth norm; "
                                "use solve_p_limit for max_approx")
    tol = tolerances or Tolerances()
    ws = _Workspace(norm, omega)
    diagnostics = []

    # -- chord family ----------------------------------------------------
    sg = (np.arange(n_chord_grid) + 0.37) / n_chord_grid
    s1g, s2g = np.meshgrid(sg, sg, indexing="ij")
    s1f, s2f = s1g.ravel(), s2g.ravel()
    qf, _, _ = ws.chord_q(s1f, s2f)
    order = np.argsort(qf)
    seeds = _distinct_seeds(order, s1f, s2f, qf, 8)

    fobj = _chord_objective(ws)
    best_chords = []
    for x0 in seeds:
        x, fx = _nelder_mead(fobj, x0, steps=[0.02, 0.02])
        best_chords.append((fx, wrap_unit(x[0]), wrap_unit(x[1])))
    best_chords.sort(key=lambda t: t[0])

    polished_chords = []
    for fx, s1, s2 in best_chords:
        if not np.isfinite(fx):
            continue
        try:
            ls = optimize.least_squares(
                lambda x: _chord_residuals(ws, x[0], x[1]),
                np.array([s1, s2]), method="lm", xtol=1e-13, ftol=1e-13,
                gtol=1e-11, diff_step=1e-7, max_nfev=60)
            q_pol, _, _ = ws.chord_q(np.asarray([ls.x[0]]), np.asarray([ls.x[1]]))
            q_pol = float(q_pol[0])
            if np.isfinite(q_pol) and q_pol <= fx * (1 + 1e-9):
                polished_chords.append((q_pol, wrap_unit(ls.x[0]),
                                        wrap_unit(ls.x[1])))
                continue
        except Exception:
            pass
        polished_chords.append((fx, s1, s2))
    polished_chords.sort(key=lambda t: t[0])

    candidates = [("chord", t[0], t[1:]) for t in polished_chords]

    # -- Wulff-arc family --------------------------------------------------
    ag = (np.arange(n_arc_grid) + 0.29) / n_arc_grid
    a1, a2 = np.meshgrid(ag, ag, indexing="ij")
    mask = np.triu(np.ones_like(a1, dtype=bool), k=1)
    a1, a2 = a1[mask], a2[mask]
    p1 = omega.boundary_point(a1)
    p2 = omega.boundary_point(a2)
    gmin = np.asarray(ws.polar((p1 - p2) / 2.0))
    gmax = 64.0 * ws.diam
    # log sweep from the chord-feasible minimum up to 64 * diam
    fracs = np.linspace(0.0, 1.0, n_radii)
    combos = []
    for t in fracs:
        for br in (1.0, -1.0):
            for cc in (True, False):
                combos.append((t, br, cc))
    log_lo = np.log(gmin * 1.05)
    log_hi = np.log(np.maximum(gmax, gmin * 2.0))
    s1_all = np.concatenate([a1 for _ in combos])
    s2_all = np.concatenate([a2 for _ in combos])
    g_all = np.concatenate([np.exp((1 - t) * log_lo + t * log_hi)
                            for t, _, _ in combos])
    b_all = np.concatenate([np.full(a1.shape, br) for _, br, _ in combos])
    c_all = np.concatenate([np.full(a1.shape, cc, dtype=bool)
                            for _, _, cc in combos])
    arc_out = ws.arc_q(s1_all, s2_all, g_all, b_all, c_all)
    qa = arc_out["q"]
    order = np.argsort(qa)

    arc_seeds = []
    seen = []
    for idx in order[:400]:
        if not np.isfinite(qa[idx]):
            break
        key = (round(s1_all[idx], 2), round(s2_all[idx], 2),
               b_all[idx], bool(c_all[idx]))
        if key in seen:
            continue
        seen.append(key)
        arc_seeds.append((qa[idx], s1_all[idx], s2_all[idx], g_all[idx],
                          b_all[idx], bool(c_all[idx])))
        if len(arc_seeds) >= 6:
            break

    refined_arcs = []
    for q0, s1, s2, g0, br, cc in arc_seeds:
        fobj = _arc_objective(ws, br, cc)
        x, fx = _nelder_mead(fobj, [s1, s2, math.log(g0)],
                             steps=[0.02, 0.02, 0.15], maxfev=600)
        if np.isfinite(fx):
            refined_arcs.append((fx, x[0], x[1], x[2], br, cc))

    best_so_far = min([c[1] for c in candidates] +
                      [a[0] for a in refined_arcs], default=np.inf)
    refined_arcs.sort(key=lambda a: a[0])
    for rank, (fx, s1r, s2r, lg, br, cc) in enumerate(refined_arcs):
        if rank < 3 and fx <= best_so_far * (1 + 1e-3):
            # polishing on the optimality system is only worth it for
            # candidates in contention
            try:
                cache = {}
                ls = optimize.least_squares(
                    lambda v: _arc_residuals(ws, v[0], v[1], math.exp(v[2]),
                                             br, cc, cache),
                    np.array([s1r, s2r, lg]), method="lm", xtol=1e-13,
                    ftol=1e-13, gtol=1e-11, diff_step=1e-7, max_nfev=80)
                out = ws.arc_q(np.asarray([ls.x[0]]), np.asarray([ls.x[1]]),
                               np.asarray([math.exp(ls.x[2])]),
                               np.asarray([br]), np.asarray([cc]))
                q_pol = float(out["q"][0])
                if np.isfinite(q_pol) and q_pol <= fx * (1 + 1e-9):
                    candidates.append(("arc", q_pol,
                                       (wrap_unit(ls.x[0]), wrap_unit(ls.x[1]),
                                        math.exp(ls.x[2]), br, cc)))
                    continue
            except Exception:
                pass
        candidates.append(("arc", fx, (wrap_unit(s1r), wrap_unit(s2r),
                                       math.exp(lg), br, cc)))

    # -- Wulff sectors at polygon corners (detection only) -----------------
    sector_q = None
    if isinstance(omega, PolygonDomain):
        sector_q = _best_corner_sector(ws)
        if sector_q is not None:
            diagnostics.append(
                f"best corner Wulff sector has Q = {sector_q[0]:.9g}")

    candidates = [c for c in candidates if np.isfinite(c[1])]
    if not candidates:
        raise NumericError("no feasible cut candidate found")
    candidates.sort(key=lambda c: c[1])
    best_q = candidates[0][1]
    if sector_q is not None and sector_q[0] < best_q * (1 - tol.tie_rel):
        diagnostics.append(
            "corner Wulff sector beats the half-area winner; reporting both")

    minimizers = []
    reported = []
    for kind, qv, params in candidates:
        if qv > best_q * (1 + tol.tie_rel):
            break
        dup = False
        for k2, p2_ in reported:
            if k2 == kind:
                d = max(min(abs(params[0] - p2_[0]), 1 - abs(params[0] - p2_[0])),
                        min(abs(params[1] - p2_[1]), 1 - abs(params[1] - p2_[1])))
                d_swap = max(
                    min(abs(params[0] - p2_[1]), 1 - abs(params[0] - p2_[1])),
                    min(abs(params[1] - p2_[0]), 1 - abs(params[1] - p2_[0])))
                if min(d, d_swap) < 1e-4:
                    dup = True
                    break
        if dup:
            continue
        reported.append((kind, params))
        try:
            cut = _build_cut(ws, kind, params)
        except (GeometryError, InputError):
            continue
        minimizers.append(_minimizer_info(norm, omega, cut))
        if len(minimizers) >= 6:
            break

    if not minimizers:
        raise NumericError("search found candidates but none validated")
    minimizers.sort(key=lambda m: m.q)
    c_h = minimizers[0].q

    small = min(minimizers[0].area_e, minimizers[0].area_complement)
    if small < 0.5 * omega.area * (1 - 1e-6):
        diagnostics.append(
            f"winner min-area {small:.9g} below half area "
            f"{0.5 * omega.area:.9g}; companion search engaged")
        comp = _half_area_companion(ws, minimizers[0], tol)
        if comp is not None:
            minimizers.append(comp)

    near_total = ws.shape.sector_total() * 0.98
    for kind, qv, params in candidates[:3]:
        if kind == "arc" and np.isfinite(qv):
            out = ws.arc_q(np.asarray([params[0]]), np.asarray([params[1]]),
                           np.asarray([params[2]]), np.asarray([params[3]]),
                           np.asarray([params[4]]))
            sweep = out["length"][0] / (2 * params[2])
            if sweep > near_total:
                diagnostics.append(
                    "a nearly closed Wulff curve scores close to optimal; "
                    "minimizers cannot be homothetic to a full Wulff shape")

    verification = None
    if verify_samples:
        verification = verify_lower_bound(norm, omega, c_h, verify_samples,
                                          seed, tolerances=tol)
    return IsoResult(c_h=c_h, method="general_search", minimizers=minimizers,
                     verification=verification, diagnostics=diagnostics,
                     extras={"families_searched": ["chord", "wulff_arc"] +
                             (["wulff_sector"] if sector_q else [])})


def _build_cut(ws, kind, params):
    if kind == "chord":
        s1, s2 = params
        return chord_cut(ws.omega, s1, s2)
    s1, s2, gamma, br, cc = params
    out = ws.arc_q(np.asarray([s1]), np.asarray([s2]), np.asarray([gamma]),
                   np.asarray([br]), np.asarray([cc]))
    if not out["feasible"][0]:
        raise GeometryError("arc candidate became infeasible")
    center = out["center"][0]
    p1 = ws.omega.boundary_point(np.asarray(float(s1)))
    p2 = ws.omega.boundary_point(np.asarray(float(s2)))
    arc = WulffArc(ws.shape, center, gamma, p1, p2, ccw=bool(cc))
    return wulff_arc_cut(ws.omega, s1, s2, arc)


def _best_corner_sector(ws):
    """Best corner-anchored Wulff sector Q = 4 |W ∩ cone| over vertices."""
    omega = ws.omega
    best = None
    v = omega.vertices
    n = len(v)
    for i in range(n):
        e_out = v[(i + 1) % n] - v[i]
        e_in = v[i - 1] - v[i]
        a1 = math.atan2(e_out[1], e_out[0])
        a2 = math.atan2(e_in[1], e_in[0])
        sector = float(ws.shape.sector_area(a1, a2, True))
        q = 4.0 * sector
        if best is None or q < best[0]:
            best = (q, i)
    return best


def _half_area_companion(ws, winner, tol):
    """Search the winner's family at exactly half area."""
    target = 0.5 * ws.area
    try:
        profile = area_profile(ws.norm, ws.omega, [target], _workspace=ws)
        k, mu, cut = profile[0]
    except (InputError, NumericError):
        return None
    if cut is None:
        return None
    info = _minimizer_info(ws.norm, ws.omega, cut)
    if info.q <= winner.q * (1 + 10 * tol.tie_rel):
        return info
    return None


# ---------------------------------------------------------------------------
# area-constrained profile mu(k)
# ---------------------------------------------------------------------------

def _chord_s2_batch(ws, s1, k, n_bisect=52):
    """s2 arrays with ccw piece area = k (monotone in s2), vectorized."""

    def piece(s1v, s2v):
        p1 = ws.omega.boundary_point(wrap_unit(s1v))
        p2 = ws.omega.boundary_point(wrap_unit(s2v))
        return np.asarray(ws.omega.piece_area(s1v, s2v,
                                              0.5 * cross2(p1, p2)))

    lo = s1 + 1e-7
    hi = s1 + 1 - 1e-7
    ok = (piece(s1, lo) <= k) & (piece(s1, hi) >= k)
    for _ in range(n_bisect):
        mid = 0.5 * (lo + hi)
        too_small = piece(s1, mid) < k
        lo = np.where(too_small, mid, lo)
        hi = np.where(too_small, hi, mid)
    return 0.5 * (lo + hi), ok


def _chord_s2_for_area(ws, s1, k, seed=None):
    if seed is not None:
        # warm Newton on the monotone area profile along s2
        s2 = float(seed)

        def piece(s2v):
            p1 = ws.omega.boundary_point(np.asarray(float(wrap_unit(s1))))
            p2 = ws.omega.boundary_point(np.asarray(float(wrap_unit(s2v))))
            return float(ws.omega.piece_area(np.asarray(float(s1)),
                                             np.asarray(float(s2v)),
                                             0.5 * cross2(p1, p2)))

        for _ in range(8):
            err = piece(s2) - k
            if abs(err) < 1e-13 * ws.area:
                return wrap_unit(s2)
            h = 1e-7
            slope = (piece(s2 + h) - piece(s2 - h)) / (2 * h)
            if slope <= 0 or not np.isfinite(slope):
                break
            step = err / slope
            if abs(step) > 0.05:
                break
            s2 -= step
    s2, ok = _chord_s2_batch(ws, np.asarray([float(s1)]), k)
    return float(s2[0]) if ok[0] else None


def _chord_profile_at(ws, k, n_grid=192):
    s1 = (np.arange(n_grid) + 0.41) / n_grid
    s2, ok = _chord_s2_batch(ws, s1, k)
    if not np.any(ok):
        return None
    p1 = ws.omega.boundary_point(wrap_unit(s1))
    p2 = ws.omega.boundary_point(wrap_unit(s2))
    lengths = np.where(ok, np.asarray(ws.norm(rot90(p2 - p1))), np.inf)
    i = int(np.argmin(lengths))
    best = (float(lengths[i]), float(s1[i]), float(s2[i]))

    cache = {"s2": best[2]}

    def f(s1v):
        s2v = _chord_s2_for_area(ws, float(s1v), k, seed=cache["s2"])
        if s2v is None:
            return np.inf
        cache["s2"] = s2v
        p1 = ws.omega.boundary_point(np.asarray(float(wrap_unit(s1v))))
        p2 = ws.omega.boundary_point(np.asarray(float(wrap_unit(s2v))))
        return float(ws.norm(rot90(p2 - p1)))

    h = 1.0 / n_grid
    s1_opt, l_opt = golden_minimize(f, best[1] - h, best[1] + h, xtol=1e-11)
    if l_opt > best[0]:
        s1_opt, l_opt = best[1], best[0]
    s2_opt = _chord_s2_for_area(ws, s1_opt, k)
    if s2_opt is None:
        return None
    return l_opt * l_opt / k, ("chord", wrap_unit(s1_opt), wrap_unit(s2_opt))


def _batch_area_roots(ws, s1, s2, br, cc, k, n_radii=14, n_bisect=52):
    """Vectorized gamma roots of min-area(gamma) = k over candidate arrays.

    Evaluates areas on per-candidate log radius grids, brackets sign
    changes, and bisects all brackets simultaneously. Returns flat arrays
    (s1, s2, br, cc, gamma, length) of solved candidates.
    """
    m = len(s1)
    p1 = ws.omega.boundary_point(wrap_unit(s1))
    p2 = ws.omega.boundary_point(wrap_unit(s2))
    gmin = np.asarray(ws.polar((p1 - p2) / 2.0))
    fr = np.exp(np.linspace(np.log(1.02), np.log(200.0), n_radii))
    gam = gmin[:, None] * fr[None, :]
    rep = lambda a: np.repeat(a, n_radii)
    out = ws.arc_q(rep(s1), rep(s2), gam.ravel(), rep(br), rep(cc))
    piece = np.where(out["feasible"], out["piece"], np.nan).reshape(m, n_radii)
    small = np.minimum(piece, ws.area - piece)
    vals = small - k

    has = ~np.isnan(vals[:, :-1]) & ~np.isnan(vals[:, 1:]) \
        & (vals[:, :-1] * vals[:, 1:] <= 0)
    ci, ri = np.nonzero(has)
    if len(ci) == 0:
        return None
    lo = gam[ci, ri]
    hi = gam[ci, ri + 1]
    sign_lo = np.sign(vals[ci, ri])
    bs1, bs2 = s1[ci], s2[ci]
    bbr, bcc = br[ci], cc[ci]
    for _ in range(n_bisect):
        mid = 0.5 * (lo + hi)
        o = ws.arc_q(bs1, bs2, mid, bbr, bcc, n_inside=6)
        pm = np.where(o["feasible"], o["piece"], np.nan)
        sm = np.minimum(pm, ws.area - pm) - k
        same = np.where(np.isnan(sm), True, np.sign(sm) == sign_lo)
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    g_root = 0.5 * (lo + hi)
    o = ws.arc_q(bs1, bs2, g_root, bbr, bcc)
    okm = o["feasible"]
    return (bs1[okm], bs2[okm], bbr[okm], bcc[okm], g_root[okm],
            o["length"][okm])


def _scalar_area_root(ws, s1, s2, br, cc, k, gamma_seed):
    """Newton (with bisection fallback) for min-area(gamma) = k."""
    ccache = {"c": None}

    def small_area(g):
        o = ws.arc_q(np.asarray([s1]), np.asarray([s2]), np.asarray([g]),
                     np.asarray([br]), np.asarray([cc]), n_inside=6,
                     seed_centers=ccache["c"])
        if not o["feasible"][0]:
            return None
        ccache["c"] = o["center"].copy()
        p = o["piece"][0]
        return min(p, ws.area - p)

    g = gamma_seed
    for _ in range(12):
        a0 = small_area(g)
        if a0 is None:
            break
        err = a0 - k
        if abs(err) < 1e-13 * ws.area:
            return g
        h = 1e-6 * g
        ah = small_area(g + h)
        if ah is None:
            break
        slope = (ah - a0) / h
        if slope == 0 or not np.isfinite(slope):
            break
        step = err / slope
        if abs(step) > 0.5 * g:
            step = math.copysign(0.5 * g, step)
        g = g - step
        if g <= 0:
            return None
    # fallback: bracket around the seed and bisect
    lo, hi = gamma_seed * 0.5, gamma_seed * 2.0
    flo = small_area(lo)
    fhi = small_area(hi)
    for _ in range(40):
        if flo is not None and fhi is not None and (flo - k) * (fhi - k) <= 0:
            break
        lo *= 0.8
        hi *= 1.25
        flo = small_area(lo)
        fhi = small_area(hi)
    else:
        return None
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = small_area(mid)
        if fm is None:
            lo = mid
            continue
        if (fm - k) * (flo - k) > 0:
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _arc_profile_at(ws, k, n_grid=20):
    ag = (np.arange(n_grid) + 0.31) / n_grid
    i1, i2 = np.triu_indices(n_grid, k=1)
    base_s1, base_s2 = ag[i1], ag[i2]
    combos = [(br, cc) for br in (1.0, -1.0) for cc in (True, False)]
    s1 = np.concatenate([base_s1 for _ in combos])
    s2 = np.concatenate([base_s2 for _ in combos])
    br = np.concatenate([np.full(base_s1.shape, b) for b, _ in combos])
    cc = np.concatenate([np.full(base_s1.shape, c, dtype=bool)
                         for _, c in combos])
    roots = _batch_area_roots(ws, s1, s2, br, cc, k)
    if roots is None:
        return None
    rs1, rs2, rbr, rcc, rg, rlen = roots
    i_best = int(np.argmin(rlen))
    best = (float(rlen[i_best]), float(rs1[i_best]), float(rs2[i_best]),
            float(rg[i_best]), float(rbr[i_best]), bool(rcc[i_best]))
    length, s1b, s2b, gb, brb, ccb = best

    cache = {"g": gb}

    def f(x):
        s1v, s2v = wrap_unit(x[0]), wrap_unit(x[1])
        g = _scalar_area_root(ws, s1v, s2v, brb, ccb, k, cache["g"])
        if g is None:
            return np.inf
        cache["g"] = g
        o = ws.arc_q(np.asarray([s1v]), np.asarray([s2v]), np.asarray([g]),
                     np.asarray([brb]), np.asarray([ccb]))
        if not o["feasible"][0]:
            return np.inf
        return float(o["length"][0])

    x, fx = _nelder_mead(f, [s1b, s2b], steps=[0.015, 0.015], maxfev=120)
    if np.isfinite(fx) and fx < length:
        s1b, s2b = wrap_unit(x[0]), wrap_unit(x[1])
        length = fx
        g_new = _scalar_area_root(ws, s1b, s2b, brb, ccb, k, cache["g"])
        if g_new is not None:
            gb = g_new
    return length * length / k, ("arc", s1b, s2b, gb, brb, ccb)


def area_profile(norm, omega, k_values, _workspace=None):
    """mu(k) = min P_H^2 / k at fixed min-area k, over both families.

    Returns a list of (k, mu, best_cut) triples; best_cut may be None if
    only the value could be realized.
    """
    ws = _workspace or _Workspace(norm, omega)
    out = []
    for k in k_values:
        k = float(k)
        if not (0 < k <= 0.5 * omega.area * (1 + 1e-12)):
            raise InputError(f"area {k} outside (0, |Omega|/2]")
        k = min(k, 0.5 * omega.area)
        results = []
        ch = _chord_profile_at(ws, k)
        if ch is not None:
            results.append(ch)
        ar = _arc_profile_at(ws, k)
        if ar is not None:
            results.append(ar)
        if not results:
            raise NumericError(f"no feasible cut at area {k}")
        mu, params = min(results, key=lambda t: t[0])
        cut = None
        try:
            if params[0] == "chord":
                cut = _build_cut(ws, "chord", params[1:])
            else:
                s1, s2, g, br, cc = params[1:]
                cut = _build_cut(ws, "arc", (s1, s2, g, br, cc))
        except (GeometryError, InputError):
            cut = None
        out.append((k, mu, cut))
    return out


# ---------------------------------------------------------------------------
# randomized verification
# ---------------------------------------------------------------------------

def verify_lower_bound(norm, omega, c, n_samples, seed, tolerances=None,
                       _workspace=None):
    """Sample random cuts and check Q >= c (1 - slack) for each.

    Chords, Wulff arcs, and convexified polyline cuts are drawn from
    independent substreams of the seed, so results do not depend on
    evaluation order.
    """
    if c <= 0:
        raise InputError("verification constant must be positive")
    tol = tolerances or Tolerances()
    ws = _workspace or _Workspace(norm, omega)
    ss = np.random.SeedSequence(seed)
    rng_chord, rng_arc, rng_poly = [np.random.default_rng(s)
                                    for s in ss.spawn(3)]
    n_chord = int(round(0.4 * n_samples))
    n_arc = int(round(0.3 * n_samples))
    n_poly = n_samples - n_chord - n_arc

    qs = []

    # chords
    got = 0
    rounds = 0
    while got < n_chord and rounds < 100:
        rounds += 1
        m = max(64, int(1.3 * (n_chord - got)))
        s1 = rng_chord.uniform(0.0, 1.0, m)
        s2 = rng_chord.uniform(0.0, 1.0, m)
        gap = np.abs(s1 - s2)
        gap = np.minimum(gap, 1 - gap)
        valid = gap > 1e-3
        q, _, _ = ws.chord_q(s1[valid], s2[valid])
        q = q[np.isfinite(q)][: n_chord - got]
        qs.append(q)
        got += len(q)

    # Wulff arcs
    got = 0
    rounds = 0
    while got < n_arc and rounds < 50:
        rounds += 1
        m = max(128, int(2.0 * (n_arc - got)))
        s1 = rng_arc.uniform(0.0, 1.0, m)
        s2 = rng_arc.uniform(0.0, 1.0, m)
        gap = np.abs(s1 - s2)
        gap = np.minimum(gap, 1 - gap)
        keep = gap > 1e-3
        s1, s2 = s1[keep], s2[keep]
        p1 = omega.boundary_point(s1)
        p2 = omega.boundary_point(s2)
        gmin = np.asarray(ws.polar((p1 - p2) / 2.0))
        factor = np.exp(rng_arc.uniform(np.log(1.02), np.log(100.0), len(s1)))
        gam = gmin * factor
        br = np.where(rng_arc.random(len(s1)) < 0.5, 1.0, -1.0)
        cc = rng_arc.random(len(s1)) < 0.5
        out = ws.arc_q(s1, s2, gam, br, cc)
        q = out["q"][np.isfinite(out["q"])][: n_arc - got]
        qs.append(q)
        got += len(q)
    if got < n_arc:
        extra, _, _ = ws.chord_q(rng_arc.uniform(0, 1, 4 * (n_arc - got)),
                                 rng_arc.uniform(0, 1, 4 * (n_arc - got)))
        qs.append(extra[np.isfinite(extra)][: n_arc - got])

    # convexified polyline cuts
    got = 0
    bbox_lo = omega.boundary_point(np.linspace(0, 1, 256, endpoint=False)).min(0)
    bbox_hi = omega.boundary_point(np.linspace(0, 1, 256, endpoint=False)).max(0)
    poly_qs = []
    attempts = 0
    while got < n_poly and attempts < 50 * n_poly:
        attempts += 1
        s1, s2 = rng_poly.uniform(0.0, 1.0, 2)
        gap = abs(s1 - s2)
        if min(gap, 1 - gap) < 5e-3:
            continue
        n_mid = rng_poly.integers(3, 9)
        pts = []
        tries = 0
        while len(pts) < n_mid and tries < 200:
            tries += 1
            cand = rng_poly.uniform(bbox_lo, bbox_hi)
            if omega.contains(cand[None, :], tol=-1e-9 * max(1.0, ws.diam))[0]:
                pts.append(cand)
        if len(pts) < n_mid:
            continue
        q = _polyline_q(ws, s1, s2, np.asarray(pts))
        if q is not None:
            poly_qs.append(q)
            got += 1
    qs.append(np.asarray(poly_qs, dtype=float))

    q_all = np.concatenate([np.atleast_1d(q) for q in qs]) if qs else np.array([])
    worst = float(np.min(q_all) / c) if len(q_all) else np.inf
    violations = int(np.sum(q_all < c * (1 - tol.verify_slack)))
    return VerificationSummary(samples=int(len(q_all)), worst_ratio=worst,
                               violations=violations, seed=int(seed),
                               c=float(c))


def _convex_hull_ccw(points):
    """Convex hull vertices in counterclockwise order (monotone chain)."""
    pts = points[np.lexsort((points[:, 1], points[:, 0]))]

    def half(pp):
        chain = []
        for p in pp:
            while len(chain) >= 2 and cross2(chain[-1] - chain[-2],
                                             p - chain[-2]) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    return np.asarray(lower[:-1] + upper[:-1])


def _polyline_q(ws, s1, s2, interior):
    """Quotient of the convexified polyline cut through the given points.

    The cut is the hull chain from the s1 endpoint to the s2 endpoint
    walked counterclockwise around the hull: a simple convex curve that
    stays inside the domain.
    """
    omega = ws.omega
    p1 = omega.boundary_point(np.asarray(float(s1)))
    p2 = omega.boundary_point(np.asarray(float(s2)))
    cloud = np.vstack([p1[None, :], interior, p2[None, :]])
    hull = _convex_hull_ccw(cloud)
    i1 = i2 = None
    for i, v in enumerate(hull):
        if i1 is None and np.allclose(v, p1, atol=1e-12):
            i1 = i
        if i2 is None and np.allclose(v, p2, atol=1e-12):
            i2 = i
    if i1 is None or i2 is None or i1 == i2:
        return None
    if i1 < i2:
        chain = hull[i1:i2 + 1]
    else:
        chain = np.vstack([hull[i1:], hull[:i2 + 1]])
    if len(chain) < 2:
        return None
    length = float(np.sum(ws.norm(rot90(chain[1:] - chain[:-1]))))
    green = 0.5 * float(np.sum(cross2(chain[:-1], chain[1:])))
    piece = float(omega.piece_area(np.asarray(s1), np.asarray(s2), green))
    small = min(piece, ws.area - piece)
    if small < 1e-6 * ws.area:
        return None
    return length * length / small


# ---------------------------------------------------------------------------
# smooth-approximant limit for the max norm
# ---------------------------------------------------------------------------

def solve_p_limit(norm, omega, tolerances=None, verify_samples=0, seed=0):
    """Extrapolate C_H to the max norm through its p-norm approximants.

    Solves per approximant and fits c(p) = c_inf + A/p on the last three
    values. The sequence must be near-monotone; a wild sequence signals
    approximation breakdown.
    """
    if norm.family != "max_approx":
        raise PreconditionError("solve_p_limit needs a max_approx norm")
    seq = norm.params["p_sequence"]
    if len(seq) < 3:
        raise PreconditionError("p_sequence must have at least 3 entries")
    tol = tolerances or Tolerances()

    per_p = []
    last_result = None
    for approx in norm.approximants():
        if omega.symmetry_center() is not None:
            res = constant_symmetric(approx, omega, tolerances=tol)
        else:
            res = solve_general(approx, omega, tolerances=tol)
        per_p.append((approx.params["p"], res.c_h))
        last_result = res

    cs = np.array([c for _, c in per_p])
    diffs = np.diff(cs)
    scale = max(1e-12, float(np.median(np.abs(cs))))
    if np.any(diffs > 1e-4 * scale) and np.any(diffs < -1e-4 * scale):
        raise NumericError(
            f"c(p) sequence {cs.tolist()} is not monotone: approximation "
            "breakdown")

    ps = np.array([p for p, _ in per_p][-3:])
    tail = cs[-3:]
    slope, intercept = np.polyfit(1.0 / ps, tail, 1)
    c_inf = float(intercept)

    diagnostics = [
        "minimizers are non-unique in the nonsmooth limit; the reported "
        "cuts come from the largest approximant"]
    verification = None
    if verify_samples:
        verification = verify_lower_bound(norm.approximants()[-1], omega,
                                          c_inf, verify_samples, seed,
                                          tolerances=tol)
    return IsoResult(c_h=c_inf, method="p_limit",
                     minimizers=last_result.minimizers,
                     verification=verification, diagnostics=diagnostics,
                     extras={"per_p": [[p, c] for p, c in per_p],
                             "fit_slope": float(slope)})


def solve_auto(norm, omega, tolerances=None, verify_samples=0, seed=0):
    """Dispatch by norm family and domain symmetry."""
    if norm.family == "max_approx":
        return solve_p_limit(norm, omega, tolerances, verify_samples, seed)
    if omega.symmetry_center() is not None and norm.smooth:
        return constant_symmetric(norm, omega, tolerances, verify_samples,
                                  seed)
    return solve_general(norm, omega, tolerances=tolerances,
                         verify_samples=verify_samples, seed=seed)
