"""Anisotropic curve lengths, relative perimeters, and the quotient Q.

The anisotropic length of a curve gamma is the integral of
H(-y'(t), x'(t)) dt; for a set E cut out of Omega by a curve, only the
part of the boundary inside Omega counts, so the relative perimeter of a
cut is the anisotropic length of its curve.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from ._util import rot90
from .curves import FunctionCurve, Segment
from .errors import GeometryError, NumericError

_QUAD_OPTS = dict(epsabs=1e-10, epsrel=1e-11, limit=200)

# Families whose length integrand can kink where a tangent component
# changes sign (the p/q seam, odd powers of |.|).
_KINKED_FAMILIES = {"piecewise_pq", "max_approx"}


@dataclass(frozen=True)
class PerimeterReport:
    """Anisotropic and Euclidean length with a quadrature error bound."""
    value: float
    euclidean_value: float
    quadrature_error_estimate: float


def _axis_crossings(curve, a, b, n_scan=64):
    """Parameters in (a, b) where a derivative component changes sign."""
    ts = np.linspace(a, b, n_scan)
    d = np.atleast_2d(curve.derivative(ts))
    roots = []
    for comp in (0, 1):
        vals = d[..., comp].ravel()
        for i in range(len(ts) - 1):
            v0, v1 = vals[i], vals[i + 1]
            if v0 == 0.0 or v0 * v1 < 0.0:
                if v0 == 0.0:
                    roots.append(ts[i])
                    continue
                f = lambda t: float(np.asarray(curve.derivative(np.asarray(t)))[..., comp])
                try:
                    roots.append(optimize.brentq(f, ts[i], ts[i + 1], xtol=1e-13))
                except ValueError:
                    pass
    return sorted(r for r in roots if a < r < b)


def curve_length_H(norm, curve):
    """Anisotropic length of a parametric curve by adaptive quadrature.

    Integrates over the curve's smooth pieces; for norm families with a
    directional seam the pieces are additionally split where the tangent
    crosses a coordinate axis.
    """
    pieces = [curve.t0, *[t for t in curve.breakpoints if curve.t0 < t < curve.t1],
              curve.t1]
    if norm.family in _KINKED_FAMILIES:
        refined = []
        for a, b in zip(pieces[:-1], pieces[1:]):
            refined.extend([a, *_axis_crossings(curve, a, b)])
        pieces = [*refined, curve.t1]

    def f_aniso(t):
        d = curve.derivative(np.asarray(t, dtype=float))
        return float(norm(rot90(d)))

    def f_euclid(t):
        d = curve.derivative(np.asarray(t, dtype=float))
        return float(np.linalg.norm(d, axis=-1))

    value = 0.0
    evalue = 0.0
    err = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        if b - a <= 0:
            continue
        v, e1 = integrate.quad(f_aniso, a, b, **_QUAD_OPTS)
        w, e2 = integrate.quad(f_euclid, a, b, **_QUAD_OPTS)
        if not (np.isfinite(v) and np.isfinite(w)):
            raise NumericError("length quadrature did not converge")
        value += v
        evalue += w
        err += e1 + e2
    return PerimeterReport(value=value, euclidean_value=evalue,
                           quadrature_error_estimate=err)


def relative_perimeter(norm, omega, cut):
    """P_H(E; Omega) of a cut: only the cut curve contributes.

    Pieces of the boundary of E that lie on the boundary of Omega have
    zero relative perimeter, so this is the anisotropic length of the cut.
    """
    return curve_length_H(norm, cut.curve)


def quotient(norm, omega, cut):
    """Isoperimetric quotient Q = P_H(E;Omega)^2 / min(|E|, |Omega \\ E|).

    Using the smaller piece implements the area constraint |E| <= |Omega|/2
    regardless of which side the cut labels as E.
    """
    area_e, area_c = cut.areas()
    small = min(area_e, area_c)
    if small <= 1e-9 * omega.area:
        raise GeometryError("degenerate split: cut encloses (almost) no area")
    p = relative_perimeter(norm, omega, cut).value
    return p * p / small


def segment_minimality_check(norm, p0, p1, n_perturbations=50, seed=0,
                             n_modes=4, amplitude=0.2):
    """Check that the straight segment minimizes anisotropic length.

    Compares the segment against random C^1 graph perturbations that
    vanish at the endpoints (sine series in the transverse direction).
    Returns the worst margin L_H(perturbed) - L_H(segment); nonnegative
    margins confirm minimality on the sample.
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    delta = p1 - p0
    length = np.linalg.norm(delta)
    if length == 0.0:
        raise GeometryError("segment endpoints coincide")
    perp = np.array([-delta[1], delta[0]]) / length

    base = curve_length_H(norm, Segment(p0, p1)).value
    rng = np.random.default_rng(seed)
    worst = np.inf
    margins = []
    for _ in range(n_perturbations):
        coeff = rng.uniform(-1.0, 1.0, size=n_modes)
        coeff *= amplitude * length / (1 + np.arange(n_modes))

        def pt(t, c=coeff):
            t = np.asarray(t, dtype=float)
            s = sum(cj * np.sin((j + 1) * np.pi * t) for j, cj in enumerate(c))
            return p0 + t[..., None] * delta + np.asarray(s)[..., None] * perp

        def dpt(t, c=coeff):
            t = np.asarray(t, dtype=float)
            ds = sum(cj * (j + 1) * np.pi * np.cos((j + 1) * np.pi * t)
                     for j, cj in enumerate(c))
            return np.broadcast_to(delta, t.shape + (2,)) + np.asarray(ds)[..., None] * perp

        pert = curve_length_H(norm, FunctionCurve(pt, dpt)).value
        margin = pert - base
        margins.append(margin)
        worst = min(worst, margin)
    return {"worst_margin": float(worst),
            "margins": margins,
            "all_nonnegative": bool(worst >= -1e-10)}
