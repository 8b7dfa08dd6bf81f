"""Anisotropic norms on the plane, their gradients, and polar duals.

A norm here is a convex, even, positively 1-homogeneous function H with
alpha*|xi| <= H(xi) <= beta*|xi|. Built-in families keep closed forms for
both the gradient and the polar dual; custom norms fall back to finite
differences and a numeric sup for the polar.

All evaluation methods are vectorized over arrays of shape (..., 2) and
return floats for single vectors.
"""

from dataclasses import dataclass

import numpy as np

from ._util import golden_minimize
from .errors import InputError, SingularityError, UnsupportedNormError, ValidationFailure

_ALPHA_BETA_GRID = 2048


def _as_xy(xi):
    arr = np.asarray(xi, dtype=float)
    if arr.shape[-1] != 2:
        raise InputError(f"expected shape (..., 2) vectors, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("non-finite input vector")
    return arr, arr.ndim == 1


def _scalarize(values, scalar):
    return float(values) if scalar else values


class AnisotropicNorm:
    """Even 1-homogeneous norm H with gradient access and family metadata.

    Instances are immutable after construction. Use the family
    constructors (:meth:`euclidean`, :meth:`elliptic`, :meth:`p_norm`,
    :meth:`piecewise_pq`, :meth:`max_approx`, :meth:`custom`).
    """

    def __init__(self, family, params, eval_fn, grad_fn=None, smooth=True,
                 _checked=True):
        self.family = family
        self.params = dict(params)
        self._eval_fn = eval_fn
        self._grad_fn = grad_fn
        self.smooth = smooth
        self.alpha, self.beta = self._estimate_bounds()
        self._polar = None

    # -- constructors --------------------------------------------------

    @classmethod
    def euclidean(cls):
        def ev(x, y):
            return np.hypot(x, y)

        def gr(x, y, h):
            return x / h, y / h

        return cls("euclidean", {}, ev, gr)

    @classmethod
    def elliptic(cls, a, b):
        if not (a > 0 and b > 0):
            raise InputError("elliptic norm needs a, b > 0")
        ia2, ib2 = 1.0 / (a * a), 1.0 / (b * b)

        def ev(x, y):
            return np.sqrt(x * x * ia2 + y * y * ib2)

        def gr(x, y, h):
            return x * ia2 / h, y * ib2 / h

        return cls("elliptic", {"a": float(a), "b": float(b)}, ev, gr)

    @classmethod
    def p_norm(cls, p):
        if p < 2:
            raise InputError("p_norm requires p >= 2")
        return cls._p_norm_unchecked(p)

    @classmethod
    def _p_norm_unchecked(cls, p):
        p = float(p)

        def ev(x, y):
            ax, ay = np.abs(x), np.abs(y)
            m = np.maximum(ax, ay)
            with np.errstate(invalid="ignore", divide="ignore"):
                r = np.where(m > 0,
                             m * ((np.divide(ax, m, where=m > 0)) ** p
                                  + (np.divide(ay, m, where=m > 0)) ** p) ** (1.0 / p),
                             0.0)
            return r

        def gr(x, y, h):
            # (|x_i| / H)^(p-1) stays in [0, 1]: overflow-safe for large p.
            gx = np.sign(x) * (np.abs(x) / h) ** (p - 1.0)
            gy = np.sign(y) * (np.abs(y) / h) ** (p - 1.0)
            return gx, gy

        return cls("p_norm", {"p": p}, ev, gr)

    @classmethod
    def piecewise_pq(cls, p, q):
        if not (p > 2 and q > 2 and p > q):
            raise InputError("piecewise_pq requires p > q > 2")
        return cls._piecewise_unchecked(p, q)

    @classmethod
    def _piecewise_unchecked(cls, p, q):
        p, q = float(p), float(q)
        np_norm = cls._p_norm_unchecked(p)
        nq_norm = cls._p_norm_unchecked(q)

        def ev(x, y):
            use_p = x * y >= 0.0
            return np.where(use_p, np_norm._eval_fn(x, y), nq_norm._eval_fn(x, y))

        def gr(x, y, h):
            use_p = x * y >= 0.0
            gxp, gyp = np_norm._grad_fn(x, y, h)
            gxq, gyq = nq_norm._grad_fn(x, y, h)
            return np.where(use_p, gxp, gxq), np.where(use_p, gyp, gyq)

        return cls("piecewise_pq", {"p": p, "q": q}, ev, gr)

    @classmethod
    def max_approx(cls, p_sequence=(8, 16, 32, 64)):
        seq = [float(p) for p in p_sequence]
        if any(p < 2 for p in seq) or sorted(seq) != seq:
            raise InputError("max_approx p_sequence must be increasing with p >= 2")

        def ev(x, y):
            return np.maximum(np.abs(x), np.abs(y))

        norm = cls("max_approx", {"p_sequence": seq}, ev, None, smooth=False)
        return norm

    @classmethod
    def custom(cls, eval_fn, grad_fn=None, name="custom"):
        """Wrap user callbacks f(x, y) (and optionally grad -> (gx, gy))."""

        def ev(x, y):
            return np.asarray(eval_fn(x, y), dtype=float)

        gr = None
        if grad_fn is not None:
            def gr(x, y, h):
                gx, gy = grad_fn(x, y)
                return np.asarray(gx, dtype=float), np.asarray(gy, dtype=float)

        return cls(name, {}, ev, gr)

    # -- evaluation ----------------------------------------------------

    def __call__(self, xi):
        arr, scalar = _as_xy(xi)
        return _scalarize(self._eval_fn(arr[..., 0], arr[..., 1]), scalar)

    def gradient(self, xi):
        """grad H at xi: 0-homogeneous; <grad H(xi), xi> = H(xi)."""
        if not self.smooth:
            raise UnsupportedNormError(
                f"{self.family} norm is handled only through its smooth "
                "approximants; call .approximants()")
        arr, scalar = _as_xy(xi)
        x, y = arr[..., 0], arr[..., 1]
        h = self._eval_fn(x, y)
        if np.any(h == 0.0):
            raise SingularityError("gradient undefined at the origin")
        if self._grad_fn is not None:
            gx, gy = self._grad_fn(x, y, h)
        else:
            gx, gy = self._fd_gradient(x, y)
        return np.stack([np.broadcast_to(gx, np.shape(h)),
                         np.broadcast_to(gy, np.shape(h))], axis=-1)

    def _fd_gradient(self, x, y):
        # Central differences, step scaled to the accuracy budget of the
        # downstream contact-angle root-finding.
        step = 1e-6 * np.maximum(1.0, np.hypot(x, y))
        gx = (self._eval_fn(x + step, y) - self._eval_fn(x - step, y)) / (2 * step)
        gy = (self._eval_fn(x, y + step) - self._eval_fn(x, y - step)) / (2 * step)
        return gx, gy

    def approximants(self):
        """Smooth p-norm stand-ins for the max_approx family."""
        if self.family != "max_approx":
            raise UnsupportedNormError("approximants only exist for max_approx")
        return [AnisotropicNorm._p_norm_unchecked(p) for p in self.params["p_sequence"]]

    # -- polar ---------------------------------------------------------

    def polar(self):
        """The polar norm H°(v) = sup <xi, v>/H(xi)."""
        if self._polar is None:
            self._polar = PolarNorm(self)
        return self._polar

    def _closed_form_dual(self):
        if self.family == "euclidean":
            return AnisotropicNorm.euclidean()
        if self.family == "elliptic":
            a, b = self.params["a"], self.params["b"]
            return AnisotropicNorm.elliptic(1.0 / a, 1.0 / b)
        if self.family == "p_norm":
            p = self.params["p"]
            return AnisotropicNorm._p_norm_unchecked(p / (p - 1.0)) if p > 1 else None
        if self.family == "piecewise_pq":
            # Dual keeps the quadrant rule with conjugate exponents.
            p, q = self.params["p"], self.params["q"]
            return AnisotropicNorm._piecewise_unchecked(p / (p - 1.0), q / (q - 1.0))
        if self.family == "max_approx":
            return AnisotropicNorm._p_norm_unchecked(1.0)
        return None

    def _estimate_bounds(self):
        theta = np.linspace(0.0, 2 * np.pi, _ALPHA_BETA_GRID, endpoint=False)
        vals = self._eval_fn(np.cos(theta), np.sin(theta))
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise InputError("norm must be positive and finite on the unit circle")
        i_lo, i_hi = int(np.argmin(vals)), int(np.argmax(vals))
        h = 2 * np.pi / _ALPHA_BETA_GRID

        def on_circle(t):
            return float(self._eval_fn(np.cos(t), np.sin(t)))

        t_lo, alpha = golden_minimize(on_circle, theta[i_lo] - h, theta[i_lo] + h)
        t_hi, neg_beta = golden_minimize(lambda t: -on_circle(t),
                                         theta[i_hi] - h, theta[i_hi] + h)
        return float(alpha), float(-neg_beta)

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"AnisotropicNorm.{self.family}({inner})"


class PolarNorm:
    """Polar dual H° of an AnisotropicNorm.

    Built-in families carry the dual in closed form; otherwise the sup is
    maximized numerically (720-angle grid plus golden-section refinement)
    and the gradient comes from the envelope identity
    grad H°(v) = xi*/H(xi*) at the maximizing direction xi*.
    """

    def __init__(self, base):
        self.base = base
        self.dual_norm = base._closed_form_dual()
        self.closed_form = self.dual_norm.family if self.dual_norm is not None else None

    def __call__(self, v):
        if self.dual_norm is not None:
            return self.dual_norm(v)
        arr, scalar = _as_xy(v)
        flat = arr.reshape(-1, 2)
        out = np.array([self._numeric_sup(w)[0] for w in flat])
        return _scalarize(out.reshape(arr.shape[:-1]), scalar)

    def gradient(self, v):
        if self.dual_norm is not None:
            return self.dual_norm.gradient(v)
        arr, scalar = _as_xy(v)
        if np.any(np.all(arr == 0.0, axis=-1)):
            raise SingularityError("polar gradient undefined at the origin")
        flat = arr.reshape(-1, 2)
        grads = []
        for w in flat:
            _, t_star = self._numeric_sup(w)
            xi = np.array([np.cos(t_star), np.sin(t_star)])
            grads.append(xi / self.base(xi))
        return np.asarray(grads).reshape(arr.shape)

    def polar(self):
        """Polar of the polar (for involution checks)."""
        if self.dual_norm is not None:
            return self.dual_norm.polar()
        outer = self

        def ev(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            pts = np.stack(np.broadcast_arrays(x, y), axis=-1)
            return np.asarray(outer(pts))

        return PolarNorm(AnisotropicNorm("numeric_polar", {}, ev, None))

    def _numeric_sup(self, v):
        v = np.asarray(v, dtype=float)
        if v[0] == 0.0 and v[1] == 0.0:
            return 0.0, 0.0
        theta = np.linspace(0.0, 2 * np.pi, 720, endpoint=False)
        xi = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        ratios = (xi @ v) / self.base(xi)
        i = int(np.argmax(ratios))
        h = 2 * np.pi / 720

        def neg_ratio(t):
            c, s = np.cos(t), np.sin(t)
            return -(c * v[0] + s * v[1]) / float(self.base(np.array([c, s])))

        t_star, neg = golden_minimize(neg_ratio, theta[i] - h, theta[i] + h, xtol=1e-12)
        return -neg, t_star

    def __repr__(self):
        return f"PolarNorm({self.base!r})"


@dataclass(frozen=True)
class ValidationReport:
    n_samples: int
    alpha: float
    beta: float
    worst_homogeneity: float
    worst_convexity_violation: float
    passed: bool


def validate(norm, n_samples=1000, tol=1e-9, seed=0):
    """Sample-check the structural hypotheses on H.

    Checks 1-homogeneity H(t xi) = |t| H(xi), the linearity bounds
    (reporting alpha, beta from the unit circle), and midpoint convexity
    of H^2. Raises ValidationFailure (carrying the offending sample) if
    any residual exceeds tol.
    """
    if n_samples < 1:
        raise InputError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    xi = rng.normal(size=(n_samples, 2))
    xi = xi[np.linalg.norm(xi, axis=1) > 1e-12]
    t = rng.uniform(-3.0, 3.0, size=len(xi))

    h = norm(xi)
    h_scaled = norm(xi * t[:, None])
    homo = np.abs(h_scaled - np.abs(t) * h) / np.maximum(h, 1e-300)
    worst_homo = float(np.max(homo)) if len(homo) else 0.0
    if worst_homo > tol:
        i = int(np.argmax(homo))
        raise ValidationFailure(
            f"homogeneity residual {worst_homo:.3e} at t={t[i]}, xi={xi[i]}",
            sample=(t[i], tuple(xi[i])))

    eta = rng.normal(size=(len(xi), 2))
    h2_mid = norm((xi + eta) / 2.0) ** 2
    h2_avg = (norm(xi) ** 2 + norm(eta) ** 2) / 2.0
    scale = np.maximum(h2_avg, 1e-300)
    conv = (h2_mid - h2_avg) / scale
    worst_conv = float(np.max(conv)) if len(conv) else 0.0
    if worst_conv > tol:
        i = int(np.argmax(conv))
        raise ValidationFailure(
            f"midpoint convexity of H^2 violated by {worst_conv:.3e}",
            sample=(tuple(xi[i]), tuple(eta[i])))

    return ValidationReport(
        n_samples=int(n_samples),
        alpha=norm.alpha,
        beta=norm.beta,
        worst_homogeneity=worst_homo,
        worst_convexity_violation=max(worst_conv, 0.0),
        passed=True,
    )


def duality_identities(norm, xi):
    """Residuals of H(grad H°(xi)) = 1 and H°(xi) grad H(grad H°(xi)) = xi.

    Returns (r1, r2) with r2 the componentwise max deviation.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (2,):
        raise InputError("xi must be a single 2-vector")
    if xi[0] == 0.0 and xi[1] == 0.0:
        raise SingularityError("duality identities undefined at the origin")
    polar = norm.polar()
    g_polar = polar.gradient(xi)
    r1 = abs(norm(g_polar) - 1.0)
    r2 = float(np.max(np.abs(polar(xi) * norm.gradient(g_polar) - xi)))
    return r1, r2
