"""Small numerical workhorses: a trimmed Nelder-Mead and finite differences.

scipy's minimize() carries close to a millisecond of per-call overhead, which
is irrelevant for one fit but dominates profile-interval construction, where
thousands of tiny warm-started conditional fits run per dataset. This version
keeps the classic reflect/expand/contract/shrink scheme with the standard
coefficients and nothing else. It is deterministic given its inputs.
"""

from __future__ import annotations

import math

import numpy as np

BIG = 1e300  # objective floor standing in for an impossible point


def nelder_mead(fn, x0, steps, *, xatol=1e-8, fatol=1e-10, maxfev=5000):
    """Minimize fn over R^k starting from x0 with per-coordinate simplex steps.

    Returns (x_best, f_best, nfev, converged). fn must return a float;
    impossible points should come back as BIG, not raise.
    """
    x0 = np.asarray(x0, dtype=float)
    k = x0.size
    steps = np.broadcast_to(np.asarray(steps, dtype=float), (k,))

    verts = np.empty((k + 1, k))
    verts[0] = x0
    for i in range(k):
        verts[i + 1] = x0
        verts[i + 1, i] += steps[i] if steps[i] != 0.0 else 1e-4
    fv = np.array([fn(v) for v in verts])
    nfev = k + 1
    converged = False

    while nfev < maxfev:
        order = np.argsort(fv, kind="stable")
        verts = verts[order]
        fv = fv[order]
        if (fv[-1] - fv[0] <= fatol
                and np.max(np.abs(verts[1:] - verts[0])) <= xatol):
            converged = True
            break

        centroid = verts[:-1].mean(axis=0)
        xr = centroid + (centroid - verts[-1])
        fr = fn(xr)
        nfev += 1
        if fr < fv[0]:
            xe = centroid + 2.0 * (centroid - verts[-1])
            fe = fn(xe)
            nfev += 1
            if fe < fr:
                verts[-1], fv[-1] = xe, fe
            else:
                verts[-1], fv[-1] = xr, fr
            continue
        if fr < fv[-2]:
            verts[-1], fv[-1] = xr, fr
            continue
        if fr < fv[-1]:
            xc = centroid + 0.5 * (xr - centroid)  # outside contraction
            fc = fn(xc)
            nfev += 1
            if fc <= fr:
                verts[-1], fv[-1] = xc, fc
                continue
        else:
            xc = centroid - 0.5 * (centroid - verts[-1])  # inside contraction
            fc = fn(xc)
            nfev += 1
            if fc < fv[-1]:
                verts[-1], fv[-1] = xc, fc
                continue
        # shrink toward the best vertex
        for i in range(1, k + 1):
            verts[i] = verts[0] + 0.5 * (verts[i] - verts[0])
            fv[i] = fn(verts[i])
        nfev += k

    i = int(np.argmin(fv))
    return verts[i].copy(), float(fv[i]), nfev, converged


def fd_gradient(fn, x, rel_step=1e-6):
    """Central-difference gradient of a scalar function."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        hi = rel_step * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += hi
        xm[i] -= hi
        g[i] = (fn(xp) - fn(xm)) / (2.0 * hi)
    return g


def fd_hessian(fn, x, rel_step=1e-4):
    """Central-difference Hessian of a scalar function.

    Probes 1 + 2k^2 points. Entries go non-finite if any probe does; the
    caller decides whether to shrink the step or give up.
    """
    x = np.asarray(x, dtype=float)
    k = x.size
    h = rel_step * (1.0 + np.abs(x))
    H = np.empty((k, k))
    with np.errstate(all="ignore"):
        f0 = fn(x)
        for i in range(k):
            ei = np.zeros(k)
            ei[i] = h[i]
            H[i, i] = (fn(x + ei) - 2.0 * f0 + fn(x - ei)) / (h[i] * h[i])
            for j in range(i + 1, k):
                ej = np.zeros(k)
                ej[j] = h[j]
                val = (fn(x + ei + ej) - fn(x + ei - ej)
                       - fn(x - ei + ej) + fn(x - ei - ej)) / (4.0 * h[i] * h[j])
                H[i, j] = H[j, i] = val
    return H


def five_number(values) -> tuple[float, float, float, float, float]:
    """min, lower quartile, median, upper quartile, max."""
    q = np.percentile(np.asarray(values, dtype=float), [0, 25, 50, 75, 100])
    return tuple(float(v) for v in q)
