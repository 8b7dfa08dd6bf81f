"""Matplotlib figure rendering, saved as SVG next to the delimited output."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_SVG_META = {"Date": None, "Creator": None}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata=_SVG_META, bbox_inches="tight")
    plt.close(fig)


def wulff_figure(path, shape, domain=None, norm=None, n_normals=16):
    """Wulff boundary, optional domain, and normal pairs at sample points.

    At each sample point of the domain boundary (or of the Wulff boundary
    itself) the Euclidean outer normal and the anisotropic normal
    grad H(nu) are drawn; they differ whenever the norm is anisotropic.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    thetas = np.linspace(0.0, 2 * np.pi, 720)
    bd = shape.boundary_point(thetas)
    ax.plot(bd[:, 0], bd[:, 1], color="tab:blue", lw=1.6,
            label="Wulff boundary")

    frame_src = None
    if domain is not None:
        s = np.linspace(0.0, 1.0, 720, endpoint=False)
        pts = domain.boundary_point(s)
        closed = np.vstack([pts, pts[:1]])
        ax.plot(closed[:, 0], closed[:, 1], color="tab:gray", lw=1.2,
                label="domain")
        frame_src = domain

    if norm is not None and norm.smooth:
        scale = 0.22 * (domain.diameter if domain is not None else 2.0)
        if frame_src is not None:
            ss = (np.arange(n_normals) + 0.5) / n_normals
            for si in ss:
                fr = frame_src.frame(np.asarray(float(si)))
                p, nu = np.asarray(fr.point), np.asarray(fr.normal)
                n_h = np.asarray(norm.gradient(nu))
                ax.annotate("", xy=p + scale * nu, xytext=p,
                            arrowprops=dict(arrowstyle="->", color="tab:gray",
                                            lw=0.9))
                ax.annotate("", xy=p + scale * n_h, xytext=p,
                            arrowprops=dict(arrowstyle="->", color="tab:red",
                                            lw=0.9))
        else:
            ths = np.linspace(0, 2 * np.pi, n_normals, endpoint=False) + 0.1
            for th in ths:
                nu = np.array([np.cos(th), np.sin(th)])
                p = np.asarray(shape.boundary_point(np.asarray(th)))
                n_h = np.asarray(norm.gradient(nu))
                ax.annotate("", xy=p + scale * nu, xytext=p,
                            arrowprops=dict(arrowstyle="->", color="tab:gray",
                                            lw=0.9))
                ax.annotate("", xy=p + scale * n_h, xytext=p,
                            arrowprops=dict(arrowstyle="->", color="tab:red",
                                            lw=0.9))
        ax.plot([], [], color="tab:gray", lw=0.9, label="Euclidean normal")
        ax.plot([], [], color="tab:red", lw=0.9, label="anisotropic normal")

    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("Wulff shape")
    _save(fig, path)


def result_figure(path, domain, minimizers, shape=None):
    """Domain with the minimizing cut(s) and a Wulff-shape overlay."""
    fig, ax = plt.subplots(figsize=(6, 6))
    s = np.linspace(0.0, 1.0, 720, endpoint=False)
    pts = domain.boundary_point(s)
    closed = np.vstack([pts, pts[:1]])
    ax.plot(closed[:, 0], closed[:, 1], color="tab:gray", lw=1.4,
            label="domain")

    for i, info in enumerate(minimizers):
        cut = info.cut
        ts = np.linspace(cut.curve.t0, cut.curve.t1, 256)
        cpts = cut.curve.point(ts)
        ax.plot(cpts[:, 0], cpts[:, 1], lw=1.8,
                color="tab:red" if i == 0 else "tab:orange",
                label="minimizing cut" if i == 0 else None)

    if shape is not None:
        thetas = np.linspace(0.0, 2 * np.pi, 720)
        bd = shape.boundary_point(thetas)
        gamma = 0.25 * domain.diameter / max(np.max(np.abs(bd)), 1e-12)
        anchor = domain.centroid
        ax.plot(anchor[0] + gamma * bd[:, 0], anchor[1] + gamma * bd[:, 1],
                color="tab:blue", lw=1.0, ls="--", label="Wulff shape (scaled)")

    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("optimal cut")
    _save(fig, path)


def profile_figure(path, ks, mus):
    """mu(k) profile curve."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, mus, marker="o", ms=3, lw=1.2, color="tab:blue")
    ax.set_xlabel("prescribed area k")
    ax.set_ylabel("mu(k)")
    ax.set_title("area-constrained quotient profile")
    _save(fig, path)
