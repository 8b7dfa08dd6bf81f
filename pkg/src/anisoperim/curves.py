"""Parametric plane curves used for cuts and boundary pieces.

A curve maps a parameter interval [t0, t1] to points (..., 2). Derivatives
default to central finite differences; subclasses with exact derivatives
override. `breakpoints` lists interior parameters where smoothness may
fail, so quadrature can split there.
"""

import numpy as np

from .errors import InputError


class Curve:
    t0 = 0.0
    t1 = 1.0
    breakpoints = ()

    def point(self, t):
        raise NotImplementedError

    def derivative(self, t):
        # 5-point stencil keeps the FD noise near 1e-12 so adaptive
        # quadrature over the integrand converges without warnings.
        t = np.asarray(t, dtype=float)
        span = self.t1 - self.t0
        h = 1e-4 * span
        inner = (t - self.t0 >= 2 * h) & (self.t1 - t >= 2 * h)
        if np.all(inner):
            return (8.0 * (self.point(t + h) - self.point(t - h))
                    - (self.point(t + 2 * h) - self.point(t - 2 * h))) / (12.0 * h)
        h2 = 1e-6 * span
        tm = np.clip(t - h2, self.t0, self.t1)
        tp = np.clip(t + h2, self.t0, self.t1)
        return (self.point(tp) - self.point(tm)) / (tp - tm)[..., None]

    def __call__(self, t):
        return self.point(t)


class Segment(Curve):
    """Straight segment from p0 to p1, unit-speed in parameter."""

    def __init__(self, p0, p1):
        self.p0 = np.asarray(p0, dtype=float)
        self.p1 = np.asarray(p1, dtype=float)
        if self.p0.shape != (2,) or self.p1.shape != (2,):
            raise InputError("segment endpoints must be 2-vectors")

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.p0 + t[..., None] * (self.p1 - self.p0)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(self.p1 - self.p0, t.shape + (2,)).copy()


class Polyline(Curve):
    """Piecewise-linear curve through the given points, one piece per edge."""

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise InputError("polyline needs at least two 2-D points")
        self.points = pts
        n = len(pts) - 1
        self.breakpoints = tuple(i / n for i in range(1, n))
        self._n = n

    def point(self, t):
        t = np.asarray(t, dtype=float)
        u = np.clip(t, 0.0, 1.0) * self._n
        i = np.minimum(u.astype(int), self._n - 1)
        frac = u - i
        return self.points[i] + frac[..., None] * (self.points[i + 1] - self.points[i])

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        u = np.clip(t, 0.0, 1.0) * self._n
        i = np.minimum(u.astype(int), self._n - 1)
        return (self.points[i + 1] - self.points[i]) * self._n


class FunctionCurve(Curve):
    """Curve from callables t -> point (and optionally t -> derivative)."""

    def __init__(self, fn, dfn=None, t0=0.0, t1=1.0, breakpoints=()):
        self.fn = fn
        self.dfn = dfn
        self.t0 = float(t0)
        self.t1 = float(t1)
        self.breakpoints = tuple(sorted(breakpoints))

    def point(self, t):
        return np.asarray(self.fn(np.asarray(t, dtype=float)), dtype=float)

    def derivative(self, t):
        if self.dfn is not None:
            return np.asarray(self.dfn(np.asarray(t, dtype=float)), dtype=float)
        return super().derivative(t)
