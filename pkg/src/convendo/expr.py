"""Convex functions on R^n as expression trees.

Leaves are affine functions, multiples of ||x||^2 and ||x||, closed-ball
indicators and one-dimensional piecewise-linear profiles composed with a
linear functional. Nodes are sums, maxima, non-negative scalings and
precompositions with invertible matrices. Every tree evaluates to a value in
(-inf, +inf] and represents a convex, lower semi-continuous function by
construction.
"""

import math

import numpy as np

from .errors import BadShape, DimensionMismatch, NegativeScale, ZeroVector
from .extreal import INF
from .pwl import PwlFunction

# Open interval of the real line; lo >= hi means empty.
FULL_LINE = (-INF, INF)


class ConvexExpr:
    """Base class; subclasses implement ``_eval`` and ``_ray_interval``."""

    dim = None  # ambient dimension, or None when any dimension fits

    def __call__(self, x):
        return expr_eval(self, x)


class Affine(ConvexExpr):
    def __init__(self, a, b):
        self.a = np.array(a, dtype=float).reshape(-1)
        self.a.flags.writeable = False
        self.b = float(b)
        self.dim = self.a.size

    def _eval(self, x):
        return float(self.a @ x) + self.b

    def _ray_interval(self, x):
        return FULL_LINE


class Quad(ConvexExpr):
    """x -> c * ||x||^2 with c >= 0."""

    def __init__(self, c):
        self.c = float(c)
        if self.c < 0:
            raise NegativeScale("quadratic coefficient must be >= 0")

    def _eval(self, x):
        return self.c * float(x @ x)

    def _ray_interval(self, x):
        return FULL_LINE


class Norm(ConvexExpr):
    """x -> c * ||x|| with c >= 0."""

    def __init__(self, c):
        self.c = float(c)
        if self.c < 0:
            raise NegativeScale("norm coefficient must be >= 0")

    def _eval(self, x):
        return self.c * math.sqrt(float(x @ x))

    def _ray_interval(self, x):
        return FULL_LINE


class BallIndicator(ConvexExpr):
    """0 on the closed ball of radius r, +inf outside."""

    def __init__(self, r):
        self.r = float(r)
        if not self.r > 0:
            raise BadShape("ball radius must be positive")

    def _eval(self, x):
        return 0.0 if float(x @ x) <= self.r * self.r else INF

    def _ray_interval(self, x):
        nx = math.sqrt(float(x @ x))
        return (-self.r / nx, self.r / nx)


class Pwl1D(ConvexExpr):
    """x -> p(<direction, x>) for a 1D convex profile p."""

    def __init__(self, p, direction):
        if not isinstance(p, PwlFunction):
            raise BadShape("profile must be a PwlFunction")
        self.p = p
        self.direction = np.array(direction, dtype=float).reshape(-1)
        self.direction.flags.writeable = False
        n = math.sqrt(float(self.direction @ self.direction))
        if n == 0.0:
            raise ZeroVector("direction must be nonzero")
        self.dim = self.direction.size

    def _eval(self, x):
        return self.p(float(self.direction @ x))

    def _ray_interval(self, x):
        alpha = float(self.direction @ x)
        lo, hi = self.p.domain
        if alpha == 0.0:
            return FULL_LINE if self.p(0.0) < INF else (0.0, 0.0)
        if alpha > 0:
            return (lo / alpha, hi / alpha)
        return (hi / alpha, lo / alpha)


class RadialPwl(ConvexExpr):
    """x -> p(||x||) for an even convex 1D profile p.

    Evenness and convexity of p make the composition convex. Not part of
    the JSON schema; it exists for fast rotation-invariant inputs (a max of
    norm-plus-constant terms represents the same function but evaluates in
    linear time instead of logarithmic).
    """

    def __init__(self, p, check_points=17):
        if not isinstance(p, PwlFunction):
            raise BadShape("profile must be a PwlFunction")
        hi = p.domain[1]
        span = 2.0 if hi == INF else hi
        for t in np.linspace(0.0, span, check_points):
            a, b = p(t), p(-t)
            if a == INF and b == INF:
                continue
            if abs(a - b) > 1e-9 * max(1.0, abs(a)):
                raise BadShape("profile must be even")
        self.p = p

    def _eval(self, x):
        return self.p(math.sqrt(float(x @ x)))

    def _ray_interval(self, x):
        hi = self.p.domain[1]
        if hi == INF:
            return FULL_LINE
        nx = math.sqrt(float(x @ x))
        return (-hi / nx, hi / nx)


class Sum(ConvexExpr):
    def __init__(self, terms):
        self.terms = list(terms)
        if not self.terms:
            raise BadShape("sum needs at least one term")
        self.dim = _consensus_dim(self.terms)

    def _eval(self, x):
        total = 0.0
        for t in self.terms:
            v = t._eval(x)
            if v == INF:
                return INF
            total += v
        return total

    def _ray_interval(self, x):
        return _intersect(t._ray_interval(x) for t in self.terms)


class Max(ConvexExpr):
    def __init__(self, terms):
        self.terms = list(terms)
        if not self.terms:
            raise BadShape("max needs at least one term")
        self.dim = _consensus_dim(self.terms)

    def _eval(self, x):
        return max(t._eval(x) for t in self.terms)

    def _ray_interval(self, x):
        return _intersect(t._ray_interval(x) for t in self.terms)


class Scale(ConvexExpr):
    """lam * f with lam >= 0; the domain is kept when lam == 0."""

    def __init__(self, lam, term):
        self.lam = float(lam)
        if self.lam < 0:
            raise NegativeScale("scale factor must be >= 0")
        self.term = term
        self.dim = term.dim

    def _eval(self, x):
        v = self.term._eval(x)
        return INF if v == INF else self.lam * v

    def _ray_interval(self, x):
        return self.term._ray_interval(x)


class Precompose(ConvexExpr):
    """x -> f(M x) for invertible M; houses the linear group action."""

    def __init__(self, matrix, term):
        self.matrix = np.array(matrix, dtype=float)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise BadShape("matrix must be square")
        if abs(np.linalg.det(self.matrix)) < 1e-300:
            raise BadShape("matrix must be invertible")
        self.matrix.flags.writeable = False
        self.term = term
        n = self.matrix.shape[0]
        if term.dim is not None and term.dim != n:
            raise DimensionMismatch(f"matrix is {n}x{n} but term has dim {term.dim}")
        self.dim = n

    def _eval(self, x):
        return self.term._eval(self.matrix @ x)

    def _ray_interval(self, x):
        return self.term._ray_interval(self.matrix @ x)


def _consensus_dim(terms):
    dim = None
    for t in terms:
        if t.dim is not None:
            if dim is not None and dim != t.dim:
                raise DimensionMismatch("child dimensions disagree")
            dim = t.dim
    return dim


def _intersect(intervals):
    lo, hi = -INF, INF
    for a, b in intervals:
        lo, hi = max(lo, a), min(hi, b)
    return (lo, hi)


def expr_eval(f, x):
    """Evaluate a ConvexExpr at a point; returns a float (possibly +inf)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if f.dim is not None and f.dim != x.size:
        raise DimensionMismatch(f"function has dim {f.dim}, point has dim {x.size}")
    return f._eval(x)


def ray_domain(f, x, max_exp=40, iters=80):
    """Interior of { s in R : f(s x) < inf } for nonzero x.

    Resolved analytically for the built-in node types; unknown nodes fall
    back to bisection on [-2^40, 2^40], which assumes 0 is in the domain.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if not np.any(x):
        raise ZeroVector("ray direction must be nonzero")
    if f.dim is not None and f.dim != x.size:
        raise DimensionMismatch(f"function has dim {f.dim}, point has dim {x.size}")
    try:
        return f._ray_interval(x)
    except AttributeError:
        pass

    big = float(2 ** max_exp)

    def finite(s):
        return expr_eval(f, s * x) < INF

    if not finite(0.0):
        return (0.0, 0.0)

    def edge(sign):
        if finite(sign * big):
            return sign * INF
        lo, hi = 0.0, big
        for _ in range(iters):
            mid = (lo + hi) / 2.0
            if finite(sign * mid):
                lo = mid
            else:
                hi = mid
        return sign * lo

    return (edge(-1.0), edge(1.0))
