"""Degree-one circle maps through their liftings.

A lifting F of a continuous circle map satisfies F(x + 1) = F(x) + d for
an integer degree d; the library works almost exclusively with d = 1.
Liftings are stored either as samples on a uniform grid over one period
(endpoint included) or as sorted breakpoints in [0, 1); in both cases the
map between nodes is linear, so the stored object *is* the map under
study rather than an approximation of a hidden one.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeError, NotALiftError
from .kernels import flat_runs

DEFAULT_GRID = 2 ** 17
DEGREE_RESIDUAL_TOL = 1e-9
FLAT_TOL_BREAKPOINTS = 1e-12


def frac(x):
    """Fractional part mapped to [0, 1): the natural projection onto the circle.

    Guards against the float quirk where a negative value just below zero
    reduces to exactly 1.0.
    """
    r = np.asarray(x, dtype=float) % 1.0
    r = np.where(r >= 1.0, 0.0, r)
    if np.ndim(x) == 0:
        return float(r)
    return r


def circle_dist(a, b):
    """Distance on the circle: min(|a-b| mod 1, 1 - |a-b| mod 1)."""
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % 1.0
    out = np.minimum(d, 1.0 - d)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(out)
    return out


def _infer_degree(y0, y1):
    d = round(float(y1) - float(y0))
    residual = abs(float(y1) - float(y0) - d)
    if residual > DEGREE_RESIDUAL_TOL:
        raise NotALiftError(
            "endpoint mismatch %.3e leaves no integer degree (residual tolerance %g)"
            % (residual, DEGREE_RESIDUAL_TOL)
        )
    return int(d)


class CircleLift:
    """A lifting of a circle map, evaluable on all of R.

    Uniform form: ys[i] = F(i/N) for i = 0..N; after the degree residual
    check, ys[N] is snapped to ys[0] + degree exactly so periodicity holds
    to the bit.  Breakpoint form: (xs, ys) with xs strictly increasing in
    [0, 1); the cell wrapping past 1 closes with value ys[0] + degree.
    Instances are immutable and safe to share between workers.
    """

    __slots__ = ("xs", "ys", "degree")

    def __init__(self, xs, ys, degree):
        self.xs = xs
        self.ys = ys
        self.degree = int(degree)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_grid(cls, values, degree=None):
        """Build from uniform samples F(i/N), i = 0..N (endpoint included)."""
        ys = np.array(values, dtype=float)
        if ys.ndim != 1 or ys.size < 3:
            raise ValueError("need at least 3 uniform samples including the endpoint")
        d = _infer_degree(ys[0], ys[-1])
        if degree is not None and int(degree) != d:
            raise NotALiftError("declared degree %d but samples imply %d" % (degree, d))
        ys[-1] = ys[0] + d
        return cls(None, ys, d)

    @classmethod
    def from_callable(cls, fn, grid=DEFAULT_GRID):
        """Sample a lifting on a uniform grid of `grid` cells."""
        x = np.arange(grid + 1) / grid
        try:
            ys = np.asarray(fn(x), dtype=float)
        except (TypeError, ValueError):
            ys = np.array([float(fn(t)) for t in x])
        if ys.shape != x.shape:
            raise ValueError("callable did not broadcast over the sample grid")
        return cls.from_grid(ys)

    @classmethod
    def from_breakpoints(cls, points, degree=1):
        """Build from sorted breakpoints [(x, F(x)), ...] with x in [0, 1)."""
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("breakpoints must be a list of at least two (x, y) pairs")
        xs = pts[:, 0].copy()
        ys = pts[:, 1].copy()
        if not np.all(np.diff(xs) > 0):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        if xs[0] < 0.0 or xs[-1] >= 1.0:
            raise ValueError("breakpoint abscissae must lie in [0, 1)")
        return cls(xs, ys, int(degree))

    # -- queries ------------------------------------------------------

    @property
    def uniform(self):
        return self.xs is None

    @property
    def n_cells(self):
        return self.ys.size - 1 if self.uniform else self.xs.size

    def grid_x(self):
        """Node abscissae (one period; the uniform form includes x = 1)."""
        if self.uniform:
            n = self.ys.size - 1
            return np.arange(n + 1) / n
        return self.xs.copy()

    @property
    def values(self):
        return self.ys

    def __call__(self, x):
        """Evaluate the periodic extension; exact at nodes, linear between."""
        scalar = np.ndim(x) == 0
        x = np.asarray(x, dtype=float)
        k = np.floor(x)
        t = x - k
        if self.uniform:
            n = self.ys.size - 1
            pos = t * n
            i = np.minimum(pos.astype(np.int64), n - 1)
            u = pos - i
            val = self.ys[i] + (self.ys[i + 1] - self.ys[i]) * u
        else:
            xe = np.append(self.xs, self.xs[0] + 1.0)
            ye = np.append(self.ys, self.ys[0] + self.degree)
            wrap = t < self.xs[0]
            tt = np.where(wrap, t + 1.0, t)
            val = np.interp(tt, xe, ye) - np.where(wrap, float(self.degree), 0.0)
        out = val + k * self.degree
        return float(out) if scalar else out

    def project(self, theta):
        """The circle map F^e: e(F(theta)) for theta read as a circle point."""
        if self.degree != 1:
            raise DegreeError("projection to a circle map needs degree 1, got %d" % self.degree)
        return frac(self(frac(theta)))

    def shifted(self, c):
        """The lifting F + c (same circle map when c is an integer)."""
        if self.uniform:
            return CircleLift(None, self.ys + float(c), self.degree)
        return CircleLift(self.xs.copy(), self.ys + float(c), self.degree)

    def is_nondecreasing(self, tol=1e-12):
        return bool(np.all(np.diff(self.ys) >= -tol))

    # -- conversions ---------------------------------------------------

    def to_grid(self, grid=DEFAULT_GRID):
        """Resample onto a uniform grid (identity if already on one of that size)."""
        if self.uniform and self.ys.size - 1 == grid:
            return self
        x = np.arange(grid + 1) / grid
        return CircleLift.from_grid(self(x))

    def to_breakpoints(self, tol=FLAT_TOL_BREAKPOINTS):
        """Compress to breakpoints, dropping nodes collinear with their neighbours.

        Exact flats (water-function plateaus) collapse to their endpoints.
        """
        if not self.uniform:
            return self
        n = self.ys.size - 1
        x = np.arange(n + 1) / n
        ys = self.ys
        mid = 0.5 * (ys[:-2] + ys[2:])
        keep = np.ones(n + 1, dtype=bool)
        keep[1:-1] = np.abs(mid - ys[1:-1]) > 0.5 * tol
        keep[-1] = False  # the wrap node is implicit in breakpoint form
        pts = np.column_stack([x[keep], ys[keep]])
        return CircleLift.from_breakpoints(pts, degree=self.degree)


# -- module-level operations ------------------------------------------


def eval_lift(F, x):
    """Value of the periodic extension of F at x."""
    return F(x)


def project(F, theta):
    """Projection of the degree-one lifting F to a circle map, evaluated at theta."""
    if F.degree != 1:
        raise DegreeError("projection needs a degree-one lifting, got degree %d" % F.degree)
    return F.project(theta)


def degree_of(F):
    """The integer d with F(x+1) = F(x) + d."""
    return F.degree


class PlateauSet:
    """Open circle intervals where a map is flat to within a tolerance.

    Intervals are (a, b) pairs of circle points; a > b means the interval
    wraps through 0.  They are pairwise disjoint and maximal at the
    resolution of the representation the map was scanned on.
    """

    def __init__(self, intervals, tol):
        self.intervals = [(float(a), float(b)) for a, b in intervals]
        self.tol = float(tol)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def contains(self, theta, margin=0.0):
        """True if theta lies inside some plateau, shrunk by margin on each side."""
        t = frac(theta)
        for a, b in self.intervals:
            if a <= b:
                if a + margin < t < b - margin:
                    return True
            elif t > a + margin or t < b - margin:
                return True
        return False

    def total_length(self):
        return sum((b - a) % 1.0 for a, b in self.intervals)


def _dedupe_circular(spans, n):
    """Drop index runs contained in another run modulo n."""
    out = []
    for s, e in spans:
        contained = False
        for s2, e2 in spans:
            if (s2, e2) == (s, e):
                continue
            # shift (s, e) by a period if needed to compare against (s2, e2)
            for off in (0, n):
                if s2 <= s + off and e + off <= e2:
                    contained = True
                    break
            if contained:
                break
        if not contained:
            out.append((s, e))
    return out


def plateau_set(F, tol=None):
    """Maximal intervals where F varies by less than tol.

    Grid default tolerance is two fiber units per cell (flats are only
    resolvable to one cell there); breakpoint default is 1e-12, treating
    flats as exact.
    """
    if F.uniform:
        n = F.ys.size - 1
        if tol is None:
            tol = 2.0 / n
        starts, ends, _ = flat_runs(F.ys, float(tol))
        spans = _dedupe_circular(list(zip(starts.tolist(), ends.tolist())), n)
        intervals = [(s / n, frac(e / n) if e > n else e / n) for s, e in spans]
    else:
        if tol is None:
            tol = FLAT_TOL_BREAKPOINTS
        xs, ys = F.xs, F.ys
        m = xs.size
        ye = np.concatenate([ys, ys + F.degree])
        spans = []
        i = 0
        prev_end = -1
        while i < m:
            j = i
            while j + 1 <= i + m - 1 and (np.max(ye[i:j + 2]) - np.min(ye[i:j + 2])) < tol:
                j += 1
            if j > i and j > prev_end:
                spans.append((i, j))
                prev_end = j
            i += 1
        spans = _dedupe_circular(spans, m)
        intervals = [(xs[s], xs[e] if e < m else xs[e - m]) for s, e in spans]
    return PlateauSet(intervals, tol)
