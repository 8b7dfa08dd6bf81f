"""Bounded convex domains and the cuts that split them.

Domains expose a closed boundary parametrized by s in [0, 1) (counter-
clockwise), exact-or-near-exact cumulative Green areas F(s), frames
(point, tangent, outer normal), containment tests, and ray shooting.
Cuts are chords, Wulff arcs, or convex polylines with endpoints on the
boundary; piece areas come from Green's theorem around each piece.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._radial import CumulativeRadial, moment_integrals
from ._util import cross2, rot90, rot270, wrap_unit
from .curves import Polyline, Segment
from .errors import CornerError, GeometryError, InputError

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Frame:
    point: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    corner: bool = False


class ConvexDomain:
    """Base class; subclasses fill in the geometric primitives."""

    kind = "abstract"

    # subclasses set: area, centroid
    def boundary_point(self, s):
        raise NotImplementedError

    def frame(self, s, side=None):
        raise NotImplementedError

    def cum_area(self, s):
        """F(s) = 1/2 int_0^s cross(P, P') du (Green cumulative)."""
        raise NotImplementedError

    def contains(self, pts, tol=0.0):
        """Signed containment: True where the point is inside within tol."""
        raise NotImplementedError

    def ray_exit(self, origin, direction):
        raise NotImplementedError

    def symmetry_center(self, tol=1e-9):
        raise NotImplementedError

    def scaled(self, t):
        raise NotImplementedError

    @property
    def diameter(self):
        d = getattr(self, "_diameter", None)
        if d is None:
            s = np.linspace(0.0, 1.0, 512, endpoint=False)
            pts = self.boundary_point(s)
            diff = pts[:, None, :] - pts[None, :, :]
            d = float(np.sqrt((diff ** 2).sum(-1)).max())
            self._diameter = d
        return d

    def piece_area(self, s1, s2, green_cut):
        """Area bounded by the ccw boundary arc s1 -> s2 and a cut curve.

        `green_cut` is 1/2 int cross(x, dx) along the cut traversed from
        the s1 endpoint to the s2 endpoint; the piece closes with the cut
        reversed, so it enters negatively.
        """
        s1 = np.asarray(s1, dtype=float)
        s2 = np.asarray(s2, dtype=float)
        df = self.cum_area(wrap_unit(s2)) - self.cum_area(wrap_unit(s1))
        df = np.where(wrap_unit(s2) >= wrap_unit(s1), df, df + self.area)
        return df - green_cut


class RadialDomain(ConvexDomain):
    """Convex domain star-shaped about the origin with rho(phi) = r/g(e).

    `g` is an even 1-homogeneous convex function given by `g_fn` (vector-
    ized over (..., 2)) and `g_grad`. Covers norm sublevel sets {H < r},
    polar sets {H° < r}, rotated sets {H(-y, x) < r}, and ellipses.
    """

    def __init__(self, g_fn, g_grad, level, kind="norm_level", meta=None):
        if level <= 0:
            raise InputError("level must be positive")
        self.kind = kind
        self.meta = dict(meta or {})
        self._g = g_fn
        self._g_grad = g_grad
        self.level = float(level)
        self._cum = CumulativeRadial(lambda phi: self._rho(phi) ** 2)
        self.area = float(self._cum.total)
        self.centroid = np.zeros(2)  # g is even

    def _rho(self, phi):
        e = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return self.level / np.asarray(self._g(e))

    def boundary_point(self, s):
        s = np.asarray(s, dtype=float)
        phi = _TWO_PI * s
        rho = self._rho(phi)
        return np.stack([rho * np.cos(phi), rho * np.sin(phi)], axis=-1)

    def frame(self, s, side=None):
        p = self.boundary_point(s)
        g = np.asarray(self._g_grad(p), dtype=float)
        n = g / np.linalg.norm(g, axis=-1, keepdims=True)
        return Frame(point=p, tangent=rot90(n), normal=n, corner=False)

    def cum_area(self, s):
        return self._cum(_TWO_PI * np.asarray(s, dtype=float))

    def contains(self, pts, tol=0.0):
        pts = np.asarray(pts, dtype=float)
        return np.asarray(self._g(pts)) < self.level + tol

    def signed_gap(self, pts):
        """g(p) - level; negative inside (norm units)."""
        return np.asarray(self._g(np.asarray(pts, dtype=float))) - self.level

    def ray_exit(self, origin, direction):
        origin = np.asarray(origin, dtype=float)
        direction = np.asarray(direction, dtype=float)
        if np.linalg.norm(direction) == 0:
            raise InputError("zero ray direction")
        if float(self._g(origin)) > self.level * (1 + 1e-9):
            raise InputError("ray origin lies outside the domain")

        def f(t):
            return float(self._g(origin + t * direction)) - self.level

        t_hi = self.diameter / np.linalg.norm(direction) + 1.0
        while f(t_hi) < 0:
            t_hi *= 2.0
        t0 = 0.0 if f(0.0) < 0 else 1e-15
        t_star = brentq(f, t0, t_hi, xtol=1e-12, rtol=8.9e-16)
        p = origin + t_star * direction
        s = wrap_unit(np.arctan2(p[1], p[0]) / _TWO_PI)
        return p, float(s), False

    def param_of_point(self, q):
        q = np.asarray(q, dtype=float)
        return wrap_unit(np.arctan2(q[..., 1], q[..., 0]) / _TWO_PI)

    def symmetry_center(self, tol=1e-9):
        return np.zeros(2)

    def scaled(self, t):
        if t <= 0:
            raise InputError("scale factor must be positive")
        return RadialDomain(self._g, self._g_grad, self.level * t,
                            kind=self.kind, meta=self.meta)


def norm_level_domain(norm, level=1.0, mode="polar"):
    """Domain from a norm: {H° < r}, {H(-y, x) < r}, or {H < r}."""
    if mode == "polar":
        polar = norm.polar()
        g = lambda p: polar(p)
        grad = lambda p: polar.gradient(p)
    elif mode == "rotated":
        # g(x, y) = H(-y, x); grad g = (H_y, -H_x) evaluated at (-y, x).
        g = lambda p: norm(rot90(p))
        grad = lambda p: rot270(norm.gradient(rot90(p)))
    elif mode == "primal":
        g = lambda p: norm(p)
        grad = lambda p: norm.gradient(p)
    else:
        raise InputError(f"unknown norm_level mode {mode!r}")
    meta = {"mode": mode, "norm_family": norm.family, "level": float(level)}
    return RadialDomain(g, grad, level, kind="norm_level", meta=meta)


def ellipse_domain(a, b):
    """The ellipse x^2/a^2 + y^2/b^2 < 1."""
    from .norms import AnisotropicNorm

    n = AnisotropicNorm.elliptic(a, b)
    dom = norm_level_domain(n, 1.0, mode="primal")
    dom.kind = "ellipse"
    dom.meta = {"a": float(a), "b": float(b)}
    return dom


def disk_domain(radius=1.0):
    from .norms import AnisotropicNorm

    dom = norm_level_domain(AnisotropicNorm.euclidean(), radius, mode="polar")
    dom.kind = "disk"
    return dom


class PolygonDomain(ConvexDomain):
    """Convex polygon with counterclockwise vertices, arclength parameter."""

    kind = "polygon"

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise InputError("polygon needs at least 3 vertices")
        edges = np.roll(v, -1, axis=0) - v
        crosses = cross2(edges, np.roll(edges, -1, axis=0))
        if np.any(crosses <= 0):
            if np.all(crosses < 0):
                raise InputError("vertices must be counterclockwise")
            raise InputError("polygon is not strictly convex")
        self.vertices = v
        self._edges = edges
        lengths = np.linalg.norm(edges, axis=1)
        self._cum_len = np.concatenate([[0.0], np.cumsum(lengths)])
        self.perimeter = float(self._cum_len[-1])
        self._vertex_s = self._cum_len / self.perimeter
        shoelace = 0.5 * np.cumsum(cross2(v, np.roll(v, -1, axis=0)))
        self._cum_shoelace = np.concatenate([[0.0], shoelace])
        self.area = float(self._cum_shoelace[-1])
        cx = np.sum((v[:, 0] + np.roll(v[:, 0], -1))
                    * cross2(v, np.roll(v, -1, axis=0))) / (6 * self.area)
        cy = np.sum((v[:, 1] + np.roll(v[:, 1], -1))
                    * cross2(v, np.roll(v, -1, axis=0))) / (6 * self.area)
        self.centroid = np.array([cx, cy])

    def _locate(self, s):
        s = wrap_unit(np.asarray(s, dtype=float))
        arc = s * self.perimeter
        i = np.clip(np.searchsorted(self._cum_len, arc, side="right") - 1,
                    0, len(self.vertices) - 1)
        frac = (arc - self._cum_len[i]) / (self._cum_len[i + 1] - self._cum_len[i])
        return i, frac

    def boundary_point(self, s):
        i, frac = self._locate(s)
        return self.vertices[i] + frac[..., None] * self._edges[i]

    def corner_params(self):
        return self._vertex_s[:-1].copy()

    def is_corner(self, s, tol=1e-9):
        s = wrap_unit(np.asarray(s, dtype=float))
        d = np.abs(s[..., None] - self._vertex_s[None, :])
        d = np.min(np.minimum(d, 1.0 - d), axis=-1)
        return d * self.perimeter < tol * max(1.0, self.diameter)

    def frame(self, s, side=None):
        s_arr = np.asarray(s, dtype=float)
        if s_arr.ndim == 0 and bool(self.is_corner(s_arr)):
            if side is None:
                raise CornerError(
                    f"boundary parameter {float(s_arr)} is a polygon vertex; "
                    "pass side='left' or side='right'")
            d = np.abs(wrap_unit(s_arr) - self._vertex_s[:-1])
            i = int(np.argmin(np.minimum(d, 1.0 - d)))
            edge = self._edges[i - 1] if side == "left" else self._edges[i]
            t = edge / np.linalg.norm(edge)
            return Frame(point=self.vertices[i], tangent=t,
                         normal=rot270(t), corner=True)
        i, frac = self._locate(s_arr)
        t = self._edges[i] / np.linalg.norm(self._edges[i], axis=-1, keepdims=True)
        p = self.vertices[i] + frac[..., None] * self._edges[i]
        return Frame(point=p, tangent=t, normal=rot270(t), corner=False)

    def cum_area(self, s):
        i, frac = self._locate(s)
        partial = 0.5 * frac * cross2(self.vertices[i],
                                      np.roll(self.vertices, -1, axis=0)[i])
        return self._cum_shoelace[i] + partial

    def contains(self, pts, tol=0.0):
        pts = np.asarray(pts, dtype=float)
        rel = pts[..., None, :] - self.vertices
        side = cross2(np.broadcast_to(self._edges, rel.shape), rel)
        return np.all(side > -tol * max(1.0, self.diameter), axis=-1)

    def signed_gap(self, pts):
        """Max signed distance-like gap to the edge half-planes (<0 inside)."""
        pts = np.asarray(pts, dtype=float)
        rel = pts[..., None, :] - self.vertices
        lengths = np.linalg.norm(self._edges, axis=-1)
        side = cross2(np.broadcast_to(self._edges, rel.shape), rel) / lengths
        return -np.min(side, axis=-1)

    def ray_exit(self, origin, direction):
        origin = np.asarray(origin, dtype=float)
        direction = np.asarray(direction, dtype=float)
        if np.linalg.norm(direction) == 0:
            raise InputError("zero ray direction")
        if float(self.signed_gap(origin)) > 1e-9 * max(1.0, self.diameter):
            raise InputError("ray origin lies outside the domain")
        best_t, best = np.inf, None
        for i, (a, e) in enumerate(zip(self.vertices, self._edges)):
            denom = cross2(direction, e)
            if abs(denom) < 1e-300:
                continue
            t = cross2(a - origin, e) / denom
            u = cross2(a - origin, direction) / denom
            if t > 1e-12 and -1e-12 <= u <= 1 + 1e-12:
                if t < best_t:
                    best_t, best = t, (i, min(max(u, 0.0), 1.0))
        if best is None:
            raise GeometryError("ray did not exit the polygon")
        i, u = best
        p = self.vertices[i] + u * self._edges[i]
        arc = self._cum_len[i] + u * (self._cum_len[i + 1] - self._cum_len[i])
        s = wrap_unit(arc / self.perimeter)
        corner = bool(self.is_corner(np.asarray(s)))
        return p, float(s), corner

    def symmetry_center(self, tol=1e-9):
        c = self.centroid
        mirrored = 2 * c - self.vertices
        scale = max(1.0, self.diameter)
        for m in mirrored:
            if np.min(np.linalg.norm(self.vertices - m, axis=1)) > tol * scale:
                return None
        return c.copy()

    def scaled(self, t):
        if t <= 0:
            raise InputError("scale factor must be positive")
        return PolygonDomain(self.vertices * t)


class ParametricDomain(ConvexDomain):
    """Domain given by a closed parametric boundary s -> point.

    Areas and containment run over a dense inscribed polygon; frames use
    the callback derivative (finite differences if none is given).
    """

    kind = "parametric"

    def __init__(self, fn, dfn=None, n=8192):
        self._fn = fn
        self._dfn = dfn
        s = np.linspace(0.0, 1.0, n, endpoint=False)
        pts = np.asarray(fn(s), dtype=float)
        self._poly = PolygonDomain(pts)
        self._n = n
        self.area = self._poly.area
        self.centroid = self._poly.centroid

    def boundary_point(self, s):
        return np.asarray(self._fn(np.asarray(s, dtype=float)), dtype=float)

    def _deriv(self, s):
        s = np.asarray(s, dtype=float)
        if self._dfn is not None:
            return np.asarray(self._dfn(s), dtype=float)
        h = 1e-6
        return (self.boundary_point(wrap_unit(s + h))
                - self.boundary_point(wrap_unit(s - h))) / (2 * h)

    def frame(self, s, side=None):
        p = self.boundary_point(s)
        d = self._deriv(s)
        t = d / np.linalg.norm(d, axis=-1, keepdims=True)
        return Frame(point=p, tangent=t, normal=rot270(t), corner=False)

    def cum_area(self, s):
        return self._poly.cum_area(s)

    def contains(self, pts, tol=0.0):
        return self._poly.contains(pts, tol)

    def signed_gap(self, pts):
        return self._poly.signed_gap(pts)

    def ray_exit(self, origin, direction):
        p, s, corner = self._poly.ray_exit(origin, direction)
        return p, s, False

    def symmetry_center(self, tol=1e-9):
        c = self.centroid
        s = np.linspace(0.0, 1.0, 256, endpoint=False)
        mirrored = 2 * c - self.boundary_point(s)
        gaps = np.abs(self._poly.signed_gap(mirrored))
        if np.max(gaps) > tol * max(1.0, self.diameter):
            return None
        return c.copy()

    def scaled(self, t):
        if t <= 0:
            raise InputError("scale factor must be positive")
        fn = self._fn
        dfn = self._dfn
        return ParametricDomain(
            lambda s: np.asarray(fn(s), dtype=float) * t,
            None if dfn is None else (lambda s: np.asarray(dfn(s), dtype=float) * t),
            n=self._n)


class Cut:
    """A curve splitting Omega in two, with endpoints on the boundary.

    `side_e` names which piece is E: "ccw" is the piece bounded by the
    counterclockwise boundary arc from s1 to s2 (together with the cut),
    "cw" the complementary piece.
    """

    def __init__(self, omega, kind, s1, s2, curve, side_e="ccw",
                 green=None, length_fns=None, arc=None, validate=True):
        self.omega = omega
        self.kind = kind
        self.s1 = float(wrap_unit(s1))
        self.s2 = float(wrap_unit(s2))
        self.curve = curve
        self.side_e = side_e
        self.arc = arc
        self._green = green
        self._length_fns = length_fns or {}
        self.p1 = np.asarray(curve.point(np.asarray(curve.t0)), dtype=float)
        self.p2 = np.asarray(curve.point(np.asarray(curve.t1)), dtype=float)
        if validate:
            self._validate()

    def _validate(self):
        omega = self.omega
        scale = max(1.0, omega.diameter)
        for p, s in ((self.p1, self.s1), (self.p2, self.s2)):
            b = omega.boundary_point(np.asarray(s))
            if np.linalg.norm(p - b) > 1e-7 * scale:
                raise GeometryError("cut endpoint is not on the boundary")
        if np.linalg.norm(self.p1 - self.p2) < 1e-9 * scale:
            raise GeometryError("cut endpoints coincide")
        ts = self.curve.t0 + (self.curve.t1 - self.curve.t0) * np.linspace(
            0.05, 0.95, 17)
        pts = self.curve.point(ts)
        if not np.all(omega.contains(pts, tol=1e-7)):
            raise GeometryError("cut exits the domain")
        a, b = self.areas()
        if min(a, b) < 1e-9 * omega.area:
            raise GeometryError("degenerate cut: one side has no area")

    def green_term(self):
        """1/2 int cross(x, dx) along the cut from the s1 end to the s2 end."""
        if self._green is not None:
            return self._green
        if self.kind == "chord":
            self._green = 0.5 * float(cross2(self.p1, self.p2))
        elif self.kind == "wulff_arc":
            self._green = self.arc.green_term()
        elif self.kind == "polyline":
            pts = self.curve.points
            self._green = 0.5 * float(np.sum(cross2(pts[:-1], pts[1:])))
        else:
            from scipy.integrate import quad
            self._green = quad(
                lambda t: 0.5 * float(cross2(self.curve.point(np.asarray(t)),
                                             self.curve.derivative(np.asarray(t)))),
                self.curve.t0, self.curve.t1, epsabs=1e-12, limit=200)[0]
        return self._green

    def areas(self):
        """(area_E, area_complement), summing to |Omega|."""
        piece_ccw = float(self.omega.piece_area(self.s1, self.s2,
                                                self.green_term()))
        other = self.omega.area - piece_ccw
        if self.side_e == "ccw":
            return piece_ccw, other
        return other, piece_ccw

    def min_area(self):
        a, b = self.areas()
        return min(a, b)

    def length_H(self, norm):
        """Anisotropic length via the closed form of the cut's kind."""
        if self.kind == "chord":
            return float(norm(rot90(self.p2 - self.p1)))
        if self.kind == "wulff_arc":
            return self.arc.length_H()
        if self.kind == "polyline":
            pts = self.curve.points
            return float(np.sum(norm(rot90(pts[1:] - pts[:-1]))))
        from .perimeter import curve_length_H
        return curve_length_H(norm, self.curve).value

    def endpoint_tangent(self, which):
        """Unit tangent of the cut in traversal direction at endpoint 1|2."""
        if self.kind == "wulff_arc":
            return self.arc.endpoint_tangent(which)
        t = self.curve.t0 if which == 1 else self.curve.t1
        d = np.asarray(self.curve.derivative(np.asarray(t)), dtype=float)
        return d / np.linalg.norm(d)

    def outward_normal_of_e(self, which):
        """Euclidean unit normal at an endpoint, oriented out of E.

        E lies on the right of the travel direction when side_e == "ccw",
        so the outward normal is then the left normal rot90(tangent).
        """
        tau = self.endpoint_tangent(which)
        n = rot90(tau)
        return n if self.side_e == "ccw" else -n

    def __repr__(self):
        return (f"Cut(kind={self.kind!r}, s1={self.s1:.6f}, s2={self.s2:.6f}, "
                f"side_e={self.side_e!r})")


def chord_cut(omega, s1, s2, side_e="ccw", validate=True):
    p1 = omega.boundary_point(np.asarray(float(s1)))
    p2 = omega.boundary_point(np.asarray(float(s2)))
    return Cut(omega, "chord", s1, s2, Segment(p1, p2), side_e,
               validate=validate)


def polyline_cut(omega, s1, s2, interior_points, side_e="ccw", validate=True):
    p1 = omega.boundary_point(np.asarray(float(s1)))
    p2 = omega.boundary_point(np.asarray(float(s2)))
    pts = np.vstack([p1, np.asarray(interior_points, dtype=float), p2])
    return Cut(omega, "polyline", s1, s2, Polyline(pts), side_e,
               validate=validate)


def wulff_arc_cut(omega, s1, s2, arc, side_e="ccw", validate=True):
    return Cut(omega, "wulff_arc", s1, s2, arc.curve, side_e, arc=arc,
               validate=validate)


# -- module-level operations matching the public surface -------------------

def domain_area(omega):
    return omega.area


def boundary_frame(omega, s, side=None):
    return omega.frame(np.asarray(float(s)), side=side)


def split(omega, cut):
    """(area_E, area_complement) by Green's theorem around each piece."""
    return cut.areas()


def is_centrosymmetric(omega, tol=1e-9):
    """Symmetry center of the domain, or None."""
    return omega.symmetry_center(tol)


def ray_boundary_intersection(omega, origin, direction):
    """Exit point of the interior ray on the boundary: (point, s, corner)."""
    return omega.ray_exit(origin, direction)
