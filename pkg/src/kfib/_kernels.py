"""Float64 inner loops for the grid sweeps.

Each kernel has a numba ``@njit`` version and a pure-numpy version with the
same signature.  Numba is used when importable unless ``KFIB_DISABLE_NUMBA``
is set to a non-empty value other than ``0``; ``BACKEND`` says which one is
live.  Both paths must agree to rounding, see tests/test_kernels.py.
"""
import os

import numpy as np

try:
    if os.environ.get("KFIB_DISABLE_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by KFIB_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


# --- Re p~(z) on a circle -------------------------------------------------


def min_real_part_numpy(kappa_tau, tau_sq, radius, m):
    theta = 2.0 * np.pi * np.arange(m) / m
    z = radius * np.exp(1j * theta)
    z2 = z * z
    vals = ((1.0 + tau_sq * z2) / (1.0 - kappa_tau * z - tau_sq * z2)).real
    i = int(np.argmin(vals))
    return float(vals[i]), float(theta[i])


def _min_real_part_loop(kappa_tau, tau_sq, radius, m):
    best = np.inf
    best_theta = 0.0
    for j in range(m):
        th = 2.0 * np.pi * j / m
        z = radius * complex(np.cos(th), np.sin(th))
        z2 = z * z
        v = ((1.0 + tau_sq * z2) / (1.0 - kappa_tau * z - tau_sq * z2)).real
        if v < best:
            best = v
            best_theta = th
    return best, best_theta


# --- bound domination over pairs of Caratheodory samples ------------------


def domination_numpy(c2, d2, a2sq_coeff, a3_coeff, a2_bound, a3_bound, mus, fekete_vals):
    """Max of |a2|/bound, |a3|/bound and |a3 - mu a2^2|/fekete over all (c, d) pairs.

    ``a2^2 = a2sq_coeff * (c2 + d2)`` and ``a3 = a2^2 + a3_coeff * (c2 - d2)``.
    Returns ``(ratios[3], argmax[3, 3])`` where each argmax row is
    ``(i, j, mu_index)``; ties resolve to the lowest flat index.
    """
    s = c2[:, None] + d2[None, :]
    t = c2[:, None] - d2[None, :]
    a2sq = a2sq_coeff * s
    a3 = a2sq + a3_coeff * t
    r_a2 = np.sqrt(np.abs(a2sq)) / a2_bound
    r_a3 = np.abs(a3) / a3_bound
    fs = np.abs(a3[None, :, :] - mus[:, None, None] * a2sq[None, :, :]) / fekete_vals[:, None, None]
    ratios = np.empty(3)
    where = np.zeros((3, 3), dtype=np.int64)
    for k, arr in enumerate((r_a2, r_a3)):
        flat = int(np.argmax(arr))
        ratios[k] = arr.flat[flat]
        i, j = np.unravel_index(flat, arr.shape)
        where[k] = (i, j, -1)
    flat = int(np.argmax(fs))
    ratios[2] = fs.flat[flat]
    m, i, j = np.unravel_index(flat, fs.shape)
    where[2] = (i, j, m)
    return ratios, where


def _domination_loop(c2, d2, a2sq_coeff, a3_coeff, a2_bound, a3_bound, mus, fekete_vals):
    ratios = np.full(3, -1.0)
    where = np.zeros((3, 3), dtype=np.int64)
    where[0, 2] = -1
    where[1, 2] = -1
    n, p, q = c2.shape[0], d2.shape[0], mus.shape[0]
    for i in range(n):
        for j in range(p):
            a2sq = a2sq_coeff * (c2[i] + d2[j])
            a3 = a2sq + a3_coeff * (c2[i] - d2[j])
            r = np.sqrt(abs(a2sq)) / a2_bound
            if r > ratios[0]:
                ratios[0] = r
                where[0, 0] = i
                where[0, 1] = j
            r = abs(a3) / a3_bound
            if r > ratios[1]:
                ratios[1] = r
                where[1, 0] = i
                where[1, 1] = j
    # mu-major order so that ties match the numpy argmax over (mu, i, j)
    for m in range(q):
        for i in range(n):
            for j in range(p):
                a2sq = a2sq_coeff * (c2[i] + d2[j])
                a3 = a2sq + a3_coeff * (c2[i] - d2[j])
                r = abs(a3 - mus[m] * a2sq) / fekete_vals[m]
                if r > ratios[2]:
                    ratios[2] = r
                    where[2, 0] = i
                    where[2, 1] = j
                    where[2, 2] = m
    return ratios, where


if HAS_NUMBA:
    _min_real_part_jit = njit(cache=False)(_min_real_part_loop)
    _domination_jit = njit(cache=False)(_domination_loop)

    def min_real_part(kappa_tau, tau_sq, radius, m):
        best, th = _min_real_part_jit(float(kappa_tau), float(tau_sq), float(radius), int(m))
        return float(best), float(th)

    def domination(c2, d2, a2sq_coeff, a3_coeff, a2_bound, a3_bound, mus, fekete_vals):
        return _domination_jit(
            np.ascontiguousarray(c2, dtype=np.complex128),
            np.ascontiguousarray(d2, dtype=np.complex128),
            complex(a2sq_coeff),
            complex(a3_coeff),
            float(a2_bound),
            float(a3_bound),
            np.ascontiguousarray(mus, dtype=np.float64),
            np.ascontiguousarray(fekete_vals, dtype=np.float64),
        )

else:
    min_real_part = min_real_part_numpy

    def domination(c2, d2, a2sq_coeff, a3_coeff, a2_bound, a3_bound, mus, fekete_vals):
        return domination_numpy(
            np.asarray(c2, dtype=np.complex128),
            np.asarray(d2, dtype=np.complex128),
            complex(a2sq_coeff),
            complex(a3_coeff),
            float(a2_bound),
            float(a3_bound),
            np.asarray(mus, dtype=np.float64),
            np.asarray(fekete_vals, dtype=np.float64),
        )
