"""Wulff shapes, Wulff arcs, and anisotropic curvature.

The Wulff shape of a norm H is W = {H° < 1}. Its boundary is traced by
theta -> grad H(cos theta, sin theta): the point at which the Euclidean
outer normal of W equals (cos theta, sin theta). Scaled translates of
boundary arcs are the curved candidates for optimal cuts.
"""

import numpy as np

from ._radial import CumulativeRadial
from ._util import cross2, rot90
from .curves import Curve
from .errors import (InfeasibleError, InputError, NumericError,
                     SingularityError, UnsupportedNormError)

_TWO_PI = 2.0 * np.pi


class WulffShape:
    """The region {H° < 1} with its boundary parametrization and areas.

    Immutable after construction. `area` is |W|; `kappa` is the area of
    the *primal* sublevel set {H < 1}, which is a different number for
    anisotropic H.
    """

    def __init__(self, norm, n_boundary=4096):
        if not norm.smooth:
            raise UnsupportedNormError(
                "Wulff boundary needs grad H; use the smooth approximants")
        self.norm = norm
        self.polar = norm.polar()
        self.n_boundary = int(n_boundary)
        thetas = np.linspace(0.0, _TWO_PI, self.n_boundary, endpoint=False)
        self._thetas = thetas
        self._boundary = norm.gradient(
            np.stack([np.cos(thetas), np.sin(thetas)], axis=-1))
        # Swept-area table in *position* angle, from the radial function
        # of W: rho(phi) = 1 / H°(cos phi, sin phi).
        self._sector = CumulativeRadial(
            lambda phi: 1.0 / np.asarray(
                self.polar(np.stack([np.cos(phi), np.sin(phi)], axis=-1))) ** 2)
        self.area = self._green_area()
        self.kappa = kappa(norm)

    # -- boundary access -------------------------------------------------

    def boundary_point(self, theta):
        """Point of the boundary whose outer normal is (cos t, sin t)."""
        theta = np.asarray(theta, dtype=float)
        u = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        return self.norm.gradient(u)

    def boundary_samples(self):
        """(thetas, points) of the construction-time boundary grid."""
        return self._thetas.copy(), self._boundary.copy()

    def radial_point(self, phi):
        """Boundary point at position angle phi (radial parametrization)."""
        phi = np.asarray(phi, dtype=float)
        e = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        rho = 1.0 / np.asarray(self.polar(e))
        return e * rho[..., None]

    def theta_of_point(self, q):
        """Normal angle of the boundary point through direction q != 0."""
        g = self.polar.gradient(q)
        return np.arctan2(np.asarray(g)[..., 1], np.asarray(g)[..., 0])

    # -- areas -------------------------------------------------------------

    def _green_area(self, tol=1e-10, n_max=1 << 17):
        """|W| by Green's theorem on the theta-parametrized boundary.

        Shoelace sums over the inscribed polygon, doubling the sample
        count with one Richardson extrapolation until stable.
        """

        def shoelace(n):
            th = np.linspace(0.0, _TWO_PI, n, endpoint=False)
            b = self.boundary_point(th)
            return 0.5 * float(np.sum(cross2(b, np.roll(b, -1, axis=0))))

        n = self.n_boundary
        a_n, a_2n = shoelace(n), shoelace(2 * n)
        rich = (4.0 * a_2n - a_n) / 3.0
        while 2 * n <= n_max:
            n *= 2
            a_n, a_2n = a_2n, shoelace(2 * n)
            new = (4.0 * a_2n - a_n) / 3.0
            if abs(new - rich) < tol:
                return new
            rich = new
        raise NumericError("Wulff area quadrature did not stabilize")

    def sector_area(self, phi_a, phi_b, ccw=True):
        """Area of W swept between position angles along a direction."""
        return self._sector.sweep(phi_a, phi_b, ccw)

    def sector_total(self):
        return self._sector.total

    # -- exact arc functionals (used heavily by the solver) ---------------

    def arc_length_H(self, radius, phi_a, phi_b, ccw=True):
        """Anisotropic length of an arc of center + radius*dW.

        The radial segments from the center meet the boundary normals
        orthogonally in the anisotropic pairing, so the length equals
        twice the scaled swept sector area.
        """
        return 2.0 * np.asarray(radius) * self._sector.sweep(phi_a, phi_b, ccw)

    def arc_green(self, center, radius, p_start, p_end, phi_a, phi_b, ccw=True):
        """1/2 int cross(x, dx) along the arc from p_start to p_end."""
        center = np.asarray(center, dtype=float)
        radius = np.asarray(radius, dtype=float)
        sweep = self._sector.sweep(phi_a, phi_b, ccw)
        if isinstance(ccw, (bool, np.bool_)):
            signed = sweep if ccw else -sweep
        else:
            signed = np.where(np.asarray(ccw), sweep, -sweep)
        return radius ** 2 * signed + 0.5 * cross2(
            center, np.asarray(p_end) - np.asarray(p_start))


def wulff_area(shape):
    """|W|, already computed by Green quadrature at construction."""
    return shape.area


def kappa(norm):
    """Area of {H < 1} by radial integration of H(cos, sin)^(-2)."""
    from scipy.integrate import quad

    knots = np.arange(9) * (np.pi / 4)
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        val, err = quad(
            lambda p: 0.5 / float(norm(np.array([np.cos(p), np.sin(p)]))) ** 2,
            a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
        if not np.isfinite(val):
            raise NumericError("kappa quadrature failed")
        total += val
    return total


class WulffArcCurve(Curve):
    """Arc of center + radius*dW in the normal-angle parametrization."""

    def __init__(self, shape, center, radius, theta_start, dtheta):
        self.shape = shape
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.theta_start = float(theta_start)
        self.dtheta = float(dtheta)

    def point(self, t):
        t = np.asarray(t, dtype=float)
        theta = self.theta_start + t * self.dtheta
        return self.center + self.radius * self.shape.boundary_point(theta)


class WulffArc:
    """Oriented arc of a scaled, translated Wulff boundary.

    `ccw` is the traversal direction from p1 to p2 around the center;
    an arc is concave toward the region on the far side of its center.
    """

    def __init__(self, shape, center, radius, p1, p2, ccw):
        self.shape = shape
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.p1 = np.asarray(p1, dtype=float)
        self.p2 = np.asarray(p2, dtype=float)
        self.ccw = bool(ccw)
        q1 = (self.p1 - self.center) / self.radius
        q2 = (self.p2 - self.center) / self.radius
        self.phi1 = float(np.arctan2(q1[1], q1[0]))
        self.phi2 = float(np.arctan2(q2[1], q2[0]))
        th1 = float(shape.theta_of_point(q1))
        th2 = float(shape.theta_of_point(q2))
        dth = (th2 - th1) % _TWO_PI
        if not self.ccw:
            dth = dth - _TWO_PI if dth > 0 else dth
        if dth == 0.0:
            raise InputError("empty Wulff arc")
        self.dtheta = dth
        self.theta1, self.theta2 = th1, th1 + dth
        self.curve = WulffArcCurve(shape, center, radius, th1, dth)

    @property
    def theta_range(self):
        return (self.theta1, self.theta2)

    def length_H(self):
        return float(self.shape.arc_length_H(
            self.radius, self.phi1, self.phi2, self.ccw))

    def green_term(self):
        """1/2 int cross(x, dx) along the arc from p1 to p2."""
        return float(self.shape.arc_green(
            self.center, self.radius, self.p1, self.p2,
            self.phi1, self.phi2, self.ccw))

    def endpoint_tangent(self, which):
        """Unit tangent in traversal direction at endpoint 1 or 2."""
        q = (self.p1 if which == 1 else self.p2) - self.center
        n_out = np.asarray(self.shape.polar.gradient(q), dtype=float)
        n_out /= np.linalg.norm(n_out)
        tau = rot90(n_out)
        return tau if self.ccw else -tau

    def sample(self, n=64):
        t = np.linspace(0.0, 1.0, n)
        return self.curve.point(t)


def make_wulff_arc(shape, center, radius, p1, p2, side="ccw", tol=1e-8):
    """Arc of center + radius*dW from p1 to p2 on the requested side.

    `side` is 'ccw', 'cw', 'short', or 'long' (shorter/longer way around).
    Endpoints must lie on the scaled boundary within tol (relative).
    """
    center = np.asarray(center, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if radius <= 0:
        raise InputError("radius must be positive")
    if np.linalg.norm(p1 - p2) <= 1e-12 * radius:
        raise InputError("degenerate arc: endpoints coincide")
    for p in (p1, p2):
        res = abs(float(shape.polar(p - center)) - radius)
        if res > tol * max(1.0, radius):
            raise InputError(
                f"endpoint {p} not on the scaled Wulff boundary "
                f"(residual {res:.2e})")
    if side in ("ccw", "cw"):
        return WulffArc(shape, center, radius, p1, p2, ccw=(side == "ccw"))
    if side in ("short", "long"):
        a = WulffArc(shape, center, radius, p1, p2, ccw=True)
        b = WulffArc(shape, center, radius, p1, p2, ccw=False)
        shorter, longer = (a, b) if abs(a.dtheta) <= abs(b.dtheta) else (b, a)
        return shorter if side == "short" else longer
    raise InputError(f"unknown side {side!r}")


def fit_wulff_arc_through(shape, p1, p2, radius, max_iter=100, tol=1e-12):
    """Centers c with H°(p1 - c) = H°(p2 - c) = radius (one per side).

    Solved by Newton iteration seeded from the chord midpoint offset by
    the chord perpendicular. At the minimal radius H°((p1 - p2)/2) the two
    solutions merge at the midpoint (tangent case). Returns (c_a, c_b).
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if radius <= 0:
        raise InputError("radius must be positive")
    gamma_min = float(shape.polar((p1 - p2) / 2.0))
    if radius < gamma_min * (1.0 - 1e-12):
        raise InfeasibleError(
            f"radius {radius} below the minimal feasible {gamma_min}")
    mid = 0.5 * (p1 + p2)
    if radius <= gamma_min * (1.0 + 1e-12):
        return mid.copy(), mid.copy()

    chord = p2 - p1
    perp = np.array([-chord[1], chord[0]])
    perp /= np.linalg.norm(perp)
    scale = max(1.0, radius)
    c = mid + perp * radius
    ok = False
    for _ in range(max_iter):
        d1, d2 = p1 - c, p2 - c
        f = np.array([float(shape.polar(d1)) - radius,
                      float(shape.polar(d2)) - radius])
        if np.max(np.abs(f)) < tol * scale:
            ok = True
            break
        j = -np.stack([shape.polar.gradient(d1),
                       shape.polar.gradient(d2)])
        det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
        if abs(det) < 1e-300:
            break
        step = np.array([j[1, 1] * f[0] - j[0, 1] * f[1],
                         -j[1, 0] * f[0] + j[0, 0] * f[1]]) / det
        c = c - step
    if not ok:
        raise NumericError("arc-center Newton iteration did not converge")
    # H is even, so the second center is the reflection through the chord
    # midpoint.
    return c, p1 + p2 - c


def anisotropic_curvature(norm, curve, t, step=None):
    """Anisotropic curvature of a curve at parameter t.

    The curve is oriented with its enclosed region on the left of the
    travel direction; arcs of (1/lambda) dW traversed counterclockwise
    return +lambda. At each point the configuration is rotated so the
    tangent is horizontal (rotating the norm along with it), and the
    graph-chart derivative of H_x(-v', 1) is taken by central
    differencing along the curve.
    """
    t = float(t)
    d0 = np.asarray(curve.derivative(np.asarray(t)), dtype=float).reshape(2)
    speed = np.linalg.norm(d0)
    if speed < 1e-14:
        raise NumericError("curve has vanishing tangent at t")
    ang = np.arctan2(d0[1], d0[0])
    ca, sa = np.cos(ang), np.sin(ang)
    rot_fwd = np.array([[ca, -sa], [sa, ca]])     # chart -> original
    rot_back = rot_fwd.T

    if step is None:
        step = 1e-5 * (curve.t1 - curve.t0)
    lo = curve.t0 + 1e-12
    hi = curve.t1 - 1e-12
    tm = max(t - step, lo)
    tp = min(t + step, hi)
    if tp - tm <= 0:
        raise NumericError("parameter too close to the curve ends")

    def g(tt):
        d = np.asarray(curve.derivative(np.asarray(tt)), dtype=float).reshape(2)
        dd = rot_back @ d
        if dd[0] <= 0:
            raise NumericError("re-charted tangent left the graph chart")
        vprime = dd[1] / dd[0]
        w = rot_fwd @ np.array([-vprime, 1.0])
        grad = np.asarray(norm.gradient(w), dtype=float)
        return float((rot_back @ grad)[0]), dd[0]

    gp, _ = g(tp)
    gm, _ = g(tm)
    _, xi_prime = g(t)
    return -(gp - gm) / (tp - tm) / xi_prime
