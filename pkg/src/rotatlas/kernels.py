"""Compiled inner loops.

Everything here is numba-jitted and cached: orbit iteration of
piecewise-linear liftings, sliding-window extrema for envelopes, flat-run
detection, and fiber orbits of skew-products.  The scalar `step` of a skew
system calls the same kernels with one-element inputs, so stored orbits
replay bit-for-bit.
"""

import math

import numpy as np
from numba import njit

# fiber map codes used by fiber_orbit / fiber_scalar
P_LOGISTIC = 0
P_CUBIC_BIMODAL = 1
P_TANH = 2
P_TANH_SHIFTED = 3
P_POLY = 4


@njit(cache=True)
def lift_orbit_displacement(ys, theta0, n):
    """Iterate the grid lifting n times from theta0.

    Returns (total lift displacement, final circle point).  The
    displacement F^n(x)-x is accumulated with Neumaier compensated
    summation while the moving point is kept reduced to [0,1), so no
    precision is lost to a growing integer part.
    """
    ncells = ys.shape[0] - 1
    th = theta0
    s = 0.0
    c = 0.0
    for _ in range(n):
        pos = th * ncells
        i = int(pos)
        if i >= ncells:
            i = ncells - 1
        u = pos - i
        y = ys[i] + (ys[i + 1] - ys[i]) * u
        d = y - th
        t = s + d
        if abs(s) >= abs(d):
            c += (s - t) + d
        else:
            c += (d - t) + s
        s = t
        th = y % 1.0
        if th >= 1.0:
            th = 0.0
    return s + c, th


@njit(cache=True)
def lift_orbit_trace(ys, theta0, burn, count):
    """Circle orbit of the grid lifting: count points starting at step burn."""
    ncells = ys.shape[0] - 1
    th = theta0
    out = np.empty(count, np.float64)
    for k in range(burn + count):
        if k >= burn:
            out[k - burn] = th
        pos = th * ncells
        i = int(pos)
        if i >= ncells:
            i = ncells - 1
        u = pos - i
        y = ys[i] + (ys[i + 1] - ys[i]) * u
        th = y % 1.0
        if th >= 1.0:
            th = 0.0
    return out


@njit(cache=True)
def rigid_orbit_trace(theta0, rho, burn, count):
    """Circle orbit of the rigid rotation by rho, sequentially reduced."""
    th = theta0
    out = np.empty(count, np.float64)
    for k in range(burn + count):
        if k >= burn:
            out[k - burn] = th
        y = th + rho
        th = y % 1.0
        if th >= 1.0:
            th = 0.0
    return out


@njit(cache=True)
def window_min(a, w):
    """Sliding minimum: out[i] = min(a[i:i+w]), monotone-deque, O(len(a))."""
    n = a.shape[0]
    m = n - w + 1
    out = np.empty(m, a.dtype)
    idx = np.empty(n, np.int64)
    head = 0
    tail = 0
    for j in range(n):
        v = a[j]
        while tail > head and a[idx[tail - 1]] >= v:
            tail -= 1
        idx[tail] = j
        tail += 1
        while idx[head] <= j - w:
            head += 1
        if j >= w - 1:
            out[j - w + 1] = a[idx[head]]
    return out


@njit(cache=True)
def window_max(a, w):
    """Sliding maximum companion of window_min."""
    n = a.shape[0]
    m = n - w + 1
    out = np.empty(m, a.dtype)
    idx = np.empty(n, np.int64)
    head = 0
    tail = 0
    for j in range(n):
        v = a[j]
        while tail > head and a[idx[tail - 1]] <= v:
            tail -= 1
        idx[tail] = j
        tail += 1
        while idx[head] <= j - w:
            head += 1
        if j >= w - 1:
            out[j - w + 1] = a[idx[head]]
    return out


@njit(cache=True)
def flat_runs(ys, tol):
    """Maximal node windows where the periodic map varies by less than tol.

    ys holds one period plus the endpoint (ys[n] = ys[0] + degree); the
    scan works on the periodic extension so runs may wrap past the end of
    the period.  Returns (starts, ends, count): node index pairs with
    start in [0, n) and end possibly >= n for wrapping runs.
    """
    n = ys.shape[0] - 1
    starts = np.empty(n, np.int64)
    ends = np.empty(n, np.int64)
    nruns = 0
    mindq = np.empty(2 * n + 1, np.int64)
    maxdq = np.empty(2 * n + 1, np.int64)
    mn_h = mn_t = 0
    mx_h = mx_t = 0
    j = -1
    prev_end = -1
    for i in range(n):
        if j < i:
            j = i
            mn_h = mn_t = 0
            mx_h = mx_t = 0
            mindq[0] = i
            maxdq[0] = i
            mn_t = 1
            mx_t = 1
        # grow j while the window [i, j+1] still varies less than tol
        while j + 1 <= i + n:
            k = j + 1
            v = ys[k] if k <= n else ys[k - n] + 1.0
            lo = mindq[mn_h]
            lov = ys[lo] if lo <= n else ys[lo - n] + 1.0
            hi = maxdq[mx_h]
            hiv = ys[hi] if hi <= n else ys[hi - n] + 1.0
            if max(hiv, v) - min(lov, v) >= tol:
                break
            while mn_t > mn_h:
                q = mindq[mn_t - 1]
                qv = ys[q] if q <= n else ys[q - n] + 1.0
                if qv >= v:
                    mn_t -= 1
                else:
                    break
            mindq[mn_t] = k
            mn_t += 1
            while mx_t > mx_h:
                q = maxdq[mx_t - 1]
                qv = ys[q] if q <= n else ys[q - n] + 1.0
                if qv <= v:
                    mx_t -= 1
                else:
                    break
            maxdq[mx_t] = k
            mx_t += 1
            j = k
        if j > i and j > prev_end:
            starts[nruns] = i
            ends[nruns] = j
            nruns += 1
            prev_end = j
        # slide the left edge out of the deques
        if mindq[mn_h] == i:
            mn_h += 1
        if maxdq[mx_h] == i:
            mx_h += 1
    return starts[:nruns], ends[:nruns], nruns


@njit(cache=True)
def fiber_scalar(x, code, params):
    """Evaluate a registered fiber map p at x (see P_* codes)."""
    if code == P_LOGISTIC:
        return x * (1.0 - x)
    elif code == P_CUBIC_BIMODAL:
        if x >= 0.0:
            return x * (1.0 - x)
        return 0.5 * x * (x + 1.0) * (x + 2.0)
    elif code == P_TANH:
        return math.tanh(x)
    elif code == P_TANH_SHIFTED:
        if x >= 0.0:
            return math.tanh(x)
        t2 = math.tanh(2.0)
        return (math.tanh(x - 2.0) + t2) / (1.0 - t2 * t2)
    else:
        # polynomial, ascending coefficients
        acc = 0.0
        for k in range(params.shape[0] - 1, -1, -1):
            acc = acc * x + params[k]
        return acc


@njit(cache=True)
def fiber_orbit(x0, qvals, code, params):
    """x_{k+1} = p(x_k) * q_k for the precomputed forcing sequence qvals."""
    n = qvals.shape[0]
    out = np.empty(n + 1, np.float64)
    x = x0
    out[0] = x
    for k in range(n):
        x = fiber_scalar(x, code, params) * qvals[k]
        out[k + 1] = x
    return out


@njit(cache=True)
def nearest_distance_sorted(query, pts):
    """Circle distance from each query point to a sorted point set in [0,1)."""
    m = pts.shape[0]
    out = np.empty(query.shape[0], np.float64)
    for i in range(query.shape[0]):
        t = query[i]
        lo = np.searchsorted(pts, t)
        best = 2.0
        for j in (lo - 1, lo):
            jj = j % m
            d = abs(t - pts[jj]) % 1.0
            if d > 0.5:
                d = 1.0 - d
            if d < best:
                best = d
        out[i] = best
    return out
