"""Integral (weak-solution) identity for self-similar wave structures.

For a test function psi compactly supported in [x0, x1] x [0, t1) the
quantity

    int int (U psi_t + F(U) psi_x) dx dt + int U(x, 0) psi(x, 0) dx

vanishes for a weak solution.  Test functions are piecewise bilinear on a
tensor mesh.  Quadrature splits at every mesh line and every wave ray, so
on each piece the integrand is smooth: polynomial in constant sectors,
analytic inside fans.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import flux_arrays

_GX, _GW = np.polynomial.legendre.leggauss(8)
_GT, _GTW = np.polynomial.legendre.leggauss(3)
_G2X, _G2W = np.polynomial.legendre.leggauss(2)


@dataclass(frozen=True)
class BilinearMesh:
    x_nodes: np.ndarray
    t_nodes: np.ndarray

    @classmethod
    def jittered(cls, rng, x_range=(-3.0, 3.0), t_range=(0.0, 2.0), nx=13, nt=5, jitter=0.3):
        def nodes(lo, hi, k):
            base = np.linspace(lo, hi, k)
            step = (hi - lo) / (k - 1)
            base[1:-1] += rng.uniform(-jitter, jitter, k - 2) * step
            return base
        return cls(nodes(*x_range, nx), nodes(*t_range, nt))

    def random_coefficients(self, rng) -> np.ndarray:
        """Shape (2, nx, nt); zero on x boundaries and the final time line."""
        c = rng.uniform(-1.0, 1.0, (2, self.x_nodes.size, self.t_nodes.size))
        c[:, 0, :] = c[:, -1, :] = 0.0
        c[:, :, -1] = 0.0
        return c


def random_test_functions(rng, count: int = 50, meshes: int = 5, **mesh_kw):
    """``count`` random test functions spread over ``meshes`` random meshes."""
    out = []
    per = math.ceil(count / meshes)
    while len(out) < count:
        mesh = BilinearMesh.jittered(rng, **mesh_kw)
        for _ in range(min(per, count - len(out))):
            out.append((mesh, mesh.random_coefficients(rng)))
    return out


def _cells(nodes, v):
    i = np.searchsorted(nodes, v, side="right") - 1
    return np.clip(i, 0, nodes.size - 2)


def _node_integrals(mesh: BilinearMesh, ix, it, x, t, w, u, f):
    """Identity value of every nodal hat basis function, shape (nx, nt).

    The identity is linear in the coefficients, so a test function's value
    is the coefficient-weighted sum of these.
    """
    xn, tn = mesh.x_nodes, mesh.t_nodes
    nt = tn.size
    dx = xn[ix + 1] - xn[ix]
    dt = tn[it + 1] - tn[it]
    chi = (x - xn[ix]) / dx
    tau = (t - tn[it]) / dt
    # d/dt and d/dx of the four corner hats of the containing cell
    corners = (
        (ix, it, -(1 - chi) / dt, -(1 - tau) / dx),
        (ix + 1, it, -chi / dt, (1 - tau) / dx),
        (ix, it + 1, (1 - chi) / dt, -tau / dx),
        (ix + 1, it + 1, chi / dt, tau / dx),
    )
    g = np.zeros(xn.size * nt)
    for i, j, d_t, d_x in corners:
        g += np.bincount(i * nt + j, weights=w * (u * d_t + f * d_x), minlength=g.size)
    return g.reshape(xn.size, nt)


def _quadrature(ws, mesh: BilinearMesh, resolution: float, subdivisions: int):
    xn, tn = mesh.x_nodes, mesh.t_nodes
    x0, x1 = xn[0], xn[-1]
    t1 = tn[-1]
    speeds = np.array(ws.edges(), dtype=float)

    tb = set(tn.tolist())
    for s in speeds:
        if s != 0:
            for xv in xn:
                tc = xv / s
                if 0 < tc < t1:
                    tb.add(tc)
    tb = np.array(sorted(tb))
    t_pts, t_wts = [], []
    for a, b in zip(tb[:-1], tb[1:]):
        k = max(1, math.ceil((b - a) / resolution))
        e = np.linspace(a, b, k + 1)
        mid, half = 0.5 * (e[1:] + e[:-1]), 0.5 * (e[1:] - e[:-1])
        t_pts.append((mid[:, None] + half[:, None] * _GT).ravel())
        t_wts.append((half[:, None] * _GTW).ravel())
    T = np.concatenate(t_pts)
    WT = np.concatenate(t_wts)

    # x breakpoints per time node: mesh lines plus every wave ray
    rays = np.clip(T[:, None] * speeds[None, :], x0, x1)
    B = np.sort(np.concatenate([np.broadcast_to(xn, (T.size, xn.size)), rays], axis=1), axis=1)
    a, b = B[:, :-1], B[:, 1:]
    m = subdivisions
    frac = np.arange(m + 1) / m
    sub = a[..., None] + (b - a)[..., None] * frac
    sa, sb = sub[..., :-1], sub[..., 1:]
    mid, half = 0.5 * (sa + sb), 0.5 * (sb - sa)
    X = mid[..., None] + half[..., None] * _GX
    W = half[..., None] * _GW * WT[:, None, None, None]
    Tb = np.broadcast_to(T[:, None, None, None], X.shape)
    # each piece lies inside a single mesh cell
    ix = np.broadcast_to(_cells(xn, mid)[..., None], X.shape)
    it = np.broadcast_to(_cells(tn, T)[:, None, None, None], X.shape)
    keep = W.ravel() != 0
    X, W, Tb = X.ravel()[keep], W.ravel()[keep], Tb.ravel()[keep]
    ix, it = ix.ravel()[keep], it.ravel()[keep]
    return X, Tb, W, ix, it


def weak_form_residuals(ws, tests, resolution: float = 1e-3, subdivisions: int = 4) -> np.ndarray:
    """Identity value for each test function; array of shape (len(tests), 2)."""
    p = ws.params
    out = np.zeros((len(tests), 2))
    by_mesh: dict[int, list[int]] = {}
    meshes = {}
    for k, (mesh, _) in enumerate(tests):
        by_mesh.setdefault(id(mesh), []).append(k)
        meshes[id(mesh)] = mesh
    for key, idx in by_mesh.items():
        mesh = meshes[key]
        X, T, W, ix, it = _quadrature(ws, mesh, resolution, subdivisions)
        h, n = ws.evaluate(X / T)
        fh, fn = flux_arrays(h, n, p.C)
        U, F = (h, n), (fh, fn)

        # initial line: piecewise linear psi against piecewise constant data
        xb = np.unique(np.concatenate([mesh.x_nodes, [0.0]]))
        xb = xb[(xb >= mesh.x_nodes[0]) & (xb <= mesh.x_nodes[-1])]
        mid0, half0 = 0.5 * (xb[1:] + xb[:-1]), 0.5 * (xb[1:] - xb[:-1])
        X0 = (mid0[:, None] + half0[:, None] * _G2X).ravel()
        W0 = (half0[:, None] * _G2W).ravel()
        left, right = ws.left, ws.right
        U0 = (np.where(X0 < 0, left.h, right.h), np.where(X0 < 0, left.n, right.n))
        ix0 = _cells(mesh.x_nodes, X0)
        chi0 = (X0 - mesh.x_nodes[ix0]) / (mesh.x_nodes[ix0 + 1] - mesh.x_nodes[ix0])

        g = [_node_integrals(mesh, ix, it, X, T, W, U[c], F[c]) for c in (0, 1)]
        # initial-line contribution of each hat at t = 0
        for c in (0, 1):
            g[c][:, 0] += np.bincount(ix0, weights=W0 * U0[c] * (1 - chi0), minlength=mesh.x_nodes.size)
            g[c][:, 0] += np.bincount(ix0 + 1, weights=W0 * U0[c] * chi0, minlength=mesh.x_nodes.size)
        for k in idx:
            coef = tests[k][1]
            out[k] = [np.sum(coef[c] * g[c]) for c in (0, 1)]
    return out
