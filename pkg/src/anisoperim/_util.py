"""Small numeric helpers shared across modules."""

import numpy as np

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def rot90(v):
    """Rotate vector(s) by +90 degrees: (x, y) -> (-y, x). Shape (..., 2)."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def rot270(v):
    """Rotate vector(s) by -90 degrees: (x, y) -> (y, -x)."""
    v = np.asarray(v, dtype=float)
    return np.stack([v[..., 1], -v[..., 0]], axis=-1)


def unit(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / n


def cross2(a, b):
    """z-component of the 2-D cross product, broadcasting over (..., 2)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def golden_minimize(f, a, b, xtol=1e-12, max_iter=200):
    """Golden-section search for the minimum of f on [a, b].

    Returns (x, f(x)). Assumes f is unimodal on the bracket; on flat
    regions it settles anywhere inside, which is fine for our uses.
    """
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def wrap_unit(s):
    """Wrap a boundary parameter into [0, 1)."""
    return np.mod(s, 1.0)


def format_float(x):
    """17-significant-digit decimal form, lossless for doubles."""
    return format(float(x), ".17g")
