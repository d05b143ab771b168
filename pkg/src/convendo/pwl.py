"""Exact one-dimensional convex piecewise-linear calculus.

A :class:`PwlFunction` is a finite list of breakpoints with values plus two
tail slopes. A tail slope of ``-inf`` (left) or ``+inf`` (right) means the
function is ``+inf`` beyond the outermost breakpoint on that side, so finite
intervals, half-lines and all of the real line are representable domains.

The algebra (add, max, scale), the Legendre transform and inf-convolution are
closed on this class and exact up to float rounding. The Moreau envelope is
evaluation-only: it returns a callable, not a new ``PwlFunction``.
"""

import bisect
import math

import numpy as np

from .errors import BadShape, EmptyDomain, NegativeScale, NonConvex
from .extreal import INF

# Breakpoints closer than this merge into one, keeping the larger value.
MERGE_TOL = 1e-12


def _merge_close(points, values):
    """Collapse breakpoints within MERGE_TOL of each other, keeping max value."""
    out_p = [points[0]]
    out_v = [values[0]]
    for p, v in zip(points[1:], values[1:]):
        if p - out_p[-1] <= MERGE_TOL:
            out_v[-1] = max(out_v[-1], v)
        else:
            out_p.append(p)
            out_v.append(v)
    return out_p, out_v


class PwlFunction:
    """Convex piecewise-linear function with an optional truncated domain.

    Parameters
    ----------
    breakpoints, values : sequences of floats, same length >= 1
    slope_left : slope on ``(-inf, breakpoints[0]]``, or ``-inf`` for a
        truncated domain
    slope_right : slope on ``[breakpoints[-1], inf)``, or ``+inf``
    slopes : optional interior piece slopes; derived from secants if omitted.
        Operations pass exact slopes here so that slope data never degrades
        through repeated secant recomputation.
    """

    __slots__ = ("breakpoints", "values", "slope_left", "slope_right", "slopes")

    def __init__(self, breakpoints, values, slope_left, slope_right, slopes=None):
        bp = [float(b) for b in breakpoints]
        va = [float(v) for v in values]
        if len(bp) != len(va) or len(bp) < 1:
            raise BadShape("breakpoints and values must have equal length >= 1")
        if any(not math.isfinite(b) for b in bp) or any(not math.isfinite(v) for v in va):
            raise BadShape("breakpoints and values must be finite")
        if any(b2 < b1 for b1, b2 in zip(bp, bp[1:])):
            raise BadShape("breakpoints must be sorted increasingly")
        if any(b2 - b1 <= MERGE_TOL for b1, b2 in zip(bp, bp[1:])):
            bp, va = _merge_close(bp, va)
            slopes = None
        slope_left = float(slope_left)
        slope_right = float(slope_right)
        if slope_left == INF or math.isnan(slope_left):
            raise BadShape("slope_left must be finite or -inf")
        if slope_right == -INF or math.isnan(slope_right):
            raise BadShape("slope_right must be finite or +inf")

        if slopes is None:
            slopes = [(v2 - v1) / (b2 - b1)
                      for b1, b2, v1, v2 in zip(bp, bp[1:], va, va[1:])]
        else:
            slopes = [float(m) for m in slopes]
            if len(slopes) != len(bp) - 1:
                raise BadShape("slopes length must be len(breakpoints) - 1")

        seq = [slope_left] + slopes + [slope_right]
        scale = max([1.0] + [abs(m) for m in seq if math.isfinite(m)])
        for m1, m2 in zip(seq, seq[1:]):
            if m2 < m1 - 1e-9 * scale:
                raise NonConvex(f"slope sequence decreases: {m1} -> {m2}")

        self.breakpoints = tuple(bp)
        self.values = tuple(va)
        self.slopes = tuple(slopes)
        self.slope_left = slope_left
        self.slope_right = slope_right

    # -- basic queries ------------------------------------------------------

    @property
    def domain(self):
        lo = self.breakpoints[0] if self.slope_left == -INF else -INF
        hi = self.breakpoints[-1] if self.slope_right == INF else INF
        return (lo, hi)

    def __call__(self, x):
        bp, va = self.breakpoints, self.values
        if x < bp[0]:
            if self.slope_left == -INF:
                return INF
            return va[0] + self.slope_left * (x - bp[0])
        if x > bp[-1]:
            if self.slope_right == INF:
                return INF
            return va[-1] + self.slope_right * (x - bp[-1])
        i = bisect.bisect_right(bp, x) - 1
        if i == len(bp) - 1:
            return va[-1]
        return va[i] + self.slopes[i] * (x - bp[i])

    def eval_many(self, xs):
        """Vectorized evaluation; returns a float array with +inf outside."""
        xs = np.asarray(xs, dtype=float)
        bp = np.array(self.breakpoints)
        va = np.array(self.values)
        out = np.empty_like(xs)
        left = xs < bp[0]
        right = xs > bp[-1]
        mid = ~(left | right)
        out[left] = INF if self.slope_left == -INF else \
            va[0] + self.slope_left * (xs[left] - bp[0])
        out[right] = INF if self.slope_right == INF else \
            va[-1] + self.slope_right * (xs[right] - bp[-1])
        if mid.any():
            idx = np.clip(np.searchsorted(bp, xs[mid], side="right") - 1,
                          0, max(len(bp) - 2, 0))
            if len(bp) == 1:
                out[mid] = va[0]
            else:
                m = np.array(self.slopes)
                out[mid] = va[idx] + m[idx] * (xs[mid] - bp[idx])
        return out

    def slope_on(self, x):
        """Slope of the piece whose interior contains x (tails included)."""
        bp = self.breakpoints
        if x < bp[0]:
            return self.slope_left
        if x > bp[-1]:
            return self.slope_right
        i = min(bisect.bisect_right(bp, x) - 1, len(bp) - 2)
        if len(bp) == 1:
            raise EmptyDomain("point domain has no piece slopes")
        return self.slopes[i]

    def slope_sequence(self):
        return (self.slope_left,) + self.slopes + (self.slope_right,)

    def __repr__(self):
        return (f"PwlFunction(breakpoints={list(self.breakpoints)}, "
                f"values={list(self.values)}, slope_left={self.slope_left}, "
                f"slope_right={self.slope_right})")


def pwl_make(breakpoints, values, slope_left, slope_right):
    """Validated construction of a convex PwlFunction."""
    return PwlFunction(breakpoints, values, slope_left, slope_right)


# -- canned functions --------------------------------------------------------

def pwl_abs():
    return PwlFunction([0.0], [0.0], -1.0, 1.0)


def pwl_hinge(y):
    """s -> (y - s)_+ as an exact PwlFunction."""
    return PwlFunction([float(y)], [0.0], -1.0, 0.0)


def pwl_linear(a, b=0.0):
    """s -> a*s + b."""
    return PwlFunction([0.0], [float(b)], a, a)


def pwl_indicator(lo, hi):
    """0 on [lo, hi], +inf outside; lo == hi gives a point indicator."""
    if hi < lo:
        raise BadShape("indicator interval is empty")
    if hi - lo <= MERGE_TOL:
        return PwlFunction([lo], [0.0], -INF, INF)
    return PwlFunction([lo, hi], [0.0, 0.0], -INF, INF)


# -- algebra -----------------------------------------------------------------

def _common_grid(f, g):
    flo, fhi = f.domain
    glo, ghi = g.domain
    lo, hi = max(flo, glo), min(fhi, ghi)
    if not lo < hi:
        raise EmptyDomain("domain interiors are disjoint")
    pts = [b for b in f.breakpoints if lo <= b <= hi]
    pts += [b for b in g.breakpoints if lo <= b <= hi]
    if lo > -INF:
        pts.append(lo)
    if hi < INF:
        pts.append(hi)
    pts = sorted(set(pts))
    out = [pts[0]]
    for p in pts[1:]:
        if p - out[-1] > MERGE_TOL:
            out.append(p)
    return lo, hi, out


def pwl_add(f, g):
    """Exact pointwise sum; domain is the intersection."""
    lo, hi, pts = _common_grid(f, g)
    vals = [f(p) + g(p) for p in pts]
    slopes = []
    for p1, p2 in zip(pts, pts[1:]):
        m = (p1 + p2) / 2.0
        slopes.append(f.slope_on(m) + g.slope_on(m))
    sl = -INF if lo > -INF else f.slope_left + g.slope_left
    sr = INF if hi < INF else f.slope_right + g.slope_right
    return PwlFunction(pts, vals, sl, sr, slopes=slopes)


def pwl_scale(lam, f):
    """lam * f for lam >= 0; lam == 0 keeps the domain (0 * inf = inf)."""
    lam = float(lam)
    if lam < 0:
        raise NegativeScale("scale factor must be >= 0")

    def sc(m):
        if m == -INF or m == INF:
            return m
        return lam * m

    return PwlFunction(f.breakpoints, [lam * v for v in f.values],
                       sc(f.slope_left), sc(f.slope_right),
                       slopes=[lam * m for m in f.slopes])


def pwl_max(f, g):
    """Exact pointwise maximum, with breakpoints added at crossings."""
    lo, hi, pts = _common_grid(f, g)

    def crossing(a, b):
        # both functions are linear on [a, b]; return interior crossing or None
        da = f(a) - g(a)
        db = f(b) - g(b)
        if da == 0.0 or db == 0.0 or (da > 0) == (db > 0):
            return None
        x = a + da * (b - a) / (da - db)
        if a + MERGE_TOL < x < b - MERGE_TOL:
            return x
        return None

    full = list(pts)
    for a, b in zip(pts, pts[1:]):
        x = crossing(a, b)
        if x is not None:
            full.append(x)
    if lo == -INF:
        # single crossing possible on the common left tail
        a = pts[0]
        dslope = f.slope_left - g.slope_left
        da = f(a) - g(a)
        if dslope != 0.0:
            x = a - da / dslope
            if x < a - MERGE_TOL and (f(x) - g(x)) * da <= 0:
                full.append(x)
    if hi == INF:
        b = pts[-1]
        dslope = f.slope_right - g.slope_right
        db = f(b) - g(b)
        if dslope != 0.0:
            x = b - db / dslope
            if x > b + MERGE_TOL and (f(x) - g(x)) * db <= 0:
                full.append(x)
    full = sorted(set(full))
    vals = [max(f(p), g(p)) for p in full]
    slopes = []
    for p1, p2 in zip(full, full[1:]):
        m = (p1 + p2) / 2.0
        slopes.append(f.slope_on(m) if f(m) >= g(m) else g.slope_on(m))
    sl = -INF if lo > -INF else min(f.slope_left, g.slope_left)
    sr = INF if hi < INF else max(f.slope_right, g.slope_right)
    return PwlFunction(full, vals, sl, sr, slopes=slopes)


# -- Legendre transform and inf-convolution ----------------------------------

def legendre(f):
    """Convex conjugate sup_x (x*y - f(x)), exact on PwlFunction.

    Breakpoints of the output are the distinct finite slopes of ``f``; slopes
    of the output are breakpoints of ``f``. Applying it twice reproduces the
    input up to float rounding.
    """
    bp = f.breakpoints
    va = f.values
    seq = f.slope_sequence()
    ys = []
    for m in seq:
        if math.isfinite(m) and (not ys or m - ys[-1] > MERGE_TOL):
            ys.append(m)

    if not ys:
        # point indicator: conjugate is the linear function bp[0]*y - v0
        return PwlFunction([0.0], [-va[0]], bp[0], bp[0])

    def conj(y):
        return max(b * y - v for b, v in zip(bp, va))

    vals = [conj(y) for y in ys]
    slopes = []
    for y1, y2 in zip(ys, ys[1:]):
        ymid = (y1 + y2) / 2.0
        i = max(range(len(bp)), key=lambda k: bp[k] * ymid - va[k])
        slopes.append(bp[i])
    sl = bp[0] if f.slope_left == -INF else -INF
    sr = bp[-1] if f.slope_right == INF else INF
    return PwlFunction(ys, vals, sl, sr, slopes=slopes)


def inf_convolve(f, g):
    """(f box g)(x) = inf { f(x1) + g(x2) : x1 + x2 = x }.

    Computed through the conjugates: legendre(legendre(f) + legendre(g)).
    """
    return legendre(pwl_add(legendre(f), legendre(g)))


def moreau_envelope(f, t):
    """Moreau envelope env_t(x) = inf_y f(y) + (x - y)^2 / (2 t).

    Returns an evaluation-only callable. The infimum is solved exactly on
    each linear piece, so the result carries no discretization error.
    """
    t = float(t)
    if not t > 0:
        raise ValueError("t must be positive")
    bp, va = f.breakpoints, f.values

    pieces = []
    if f.slope_left != -INF:
        pieces.append((-INF, bp[0], f.slope_left, bp[0], va[0]))
    for i, m in enumerate(f.slopes):
        pieces.append((bp[i], bp[i + 1], m, bp[i], va[i]))
    if f.slope_right != INF:
        pieces.append((bp[-1], INF, f.slope_right, bp[-1], va[-1]))

    def env(x):
        best = min(v + (x - b) ** 2 / (2.0 * t) for b, v in zip(bp, va))
        for lo, hi, m, banchor, vanchor in pieces:
            y = x - t * m
            y = min(max(y, lo), hi)
            val = vanchor + m * (y - banchor) + (x - y) ** 2 / (2.0 * t)
            if val < best:
                best = val
        return best

    return env
