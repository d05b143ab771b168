"""Diagnostics for convexity, epi-convergence and operator well-definedness.

Everything here works on opaque evaluators, so the probes apply equally to
exact piecewise-linear functions, expression trees and operator outputs.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PerturbationNotConvex
from .extreal import INF
from .expr import ConvexExpr, Sum, expr_eval
from .pwl import PwlFunction, pwl_add


@dataclass(frozen=True)
class EndoMap:
    """An opaque operator (function, point) -> extended real.

    ``evaluate`` must be deterministic. ``dim`` is the ambient dimension of
    the points; functions are whatever the evaluator accepts (PwlFunction
    for dim 1 kernels, ConvexExpr otherwise).
    """

    evaluate: callable
    dim: int
    name: str = ""

    def __call__(self, f, x):
        return self.evaluate(f, x)


def is_convex_sampled(f, grid, tol=1e-9):
    """Midpoint convexity certificate on a sampled grid.

    Checks f((a+b)/2) <= (f(a)+f(b))/2 + tol for every grid pair whose
    endpoint values are finite. The tolerance is scaled by the magnitude of
    the finite values seen. Pairs with an infinite midpoint but finite
    endpoints count as violations.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size < 3:
        raise ValueError("grid needs at least 3 points")
    vals = np.array([f(x) for x in grid])
    finite = np.isfinite(vals)
    if finite.sum() == 0:
        return True
    scale = max(1.0, float(np.abs(vals[finite]).max()))
    eff = tol * scale
    idx = np.nonzero(finite)[0]
    for ii, i in enumerate(idx):
        for j in idx[ii + 1:]:
            mid = (grid[i] + grid[j]) / 2.0
            fm = f(mid)
            if fm == INF:
                return False
            if fm > (vals[i] + vals[j]) / 2.0 + eff:
                return False
    return True


def is_convex_along_line(f, base, direction, ts, tol=1e-9):
    """Midpoint certificate for an n-dimensional evaluator along one line."""
    base = np.asarray(base, dtype=float)
    direction = np.asarray(direction, dtype=float)
    return is_convex_sampled(lambda t: f(base + t * direction), ts, tol=tol)


@dataclass
class EpiReport:
    """Sup-distances per compact per index from epi_converges_probe."""

    indices: list
    compacts: list
    sup_dists: list = field(default_factory=list)  # one array per compact
    tol: float = 0.0

    @property
    def passed(self):
        return all(d[-1] <= self.tol for d in self.sup_dists)


def _box_grid(box, points_per_dim):
    box = np.atleast_2d(np.asarray(box, dtype=float))
    axes = [np.linspace(lo, hi, points_per_dim) for lo, hi in box]
    if len(axes) == 1:
        return axes[0].reshape(-1, 1)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def epi_converges_probe(seq, f, compacts, tol=1e-6, j_max=16, points_per_dim=33):
    """Uniform-on-compacts convergence check for an indexed family.

    ``seq(j)`` must return an evaluator for index j = 1..j_max. Each compact
    is a box given as [(lo, hi), ...] per coordinate (a bare (lo, hi) pair is
    treated as one-dimensional). Only points where ``f`` is finite are
    sampled, so the boxes must avoid the boundary of the limit's domain.
    """
    indices = list(range(1, j_max + 1))
    report = EpiReport(indices=indices, compacts=list(compacts), tol=tol)
    for box in compacts:
        pts = _box_grid(box, points_per_dim)
        fvals = np.array([f(p if p.size > 1 else float(p[0])) for p in pts])
        mask = np.isfinite(fvals)
        dists = []
        for j in indices:
            fj = seq(j)
            fjvals = np.array([fj(p if p.size > 1 else float(p[0]))
                               for p in pts[mask]])
            dists.append(float(np.max(np.abs(fjvals - fvals[mask]))))
        report.sup_dists.append(np.array(dists))
    return report


def combine(f, g):
    """Pointwise sum in whichever representation f and g share."""
    if isinstance(f, PwlFunction) and isinstance(g, PwlFunction):
        return pwl_add(f, g)
    if isinstance(f, ConvexExpr) and isinstance(g, ConvexExpr):
        return Sum([f, g])
    raise TypeError("cannot combine %r with %r" % (type(f), type(g)))


def _as_eval(f):
    if isinstance(f, PwlFunction):
        return f
    if isinstance(f, ConvexExpr):
        return lambda x: expr_eval(f, x)
    return f


def gw_probe(endo, x, phi_plus, phi_minus, base, tol=1e-9,
             check_grid=None, lines=None):
    """Goodey-Weil value of an operator on a test perturbation.

    ``phi_plus - phi_minus`` is the perturbation phi; both parts must be
    convex and agree outside a bounded set. ``base`` is a pair (f1, f2) of
    distinct convex functions with f_i + phi convex; this is certified by a
    sampled midpoint test before evaluating. By additivity the probe value
    endo(f + phi)[x] - endo(f)[x] equals
    endo(f + phi_plus)[x] - endo(f + phi_minus)[x], which is what is
    computed, so only convex arguments are ever built.

    Returns ``(value, consistent)`` where ``consistent`` is True when the
    value computed from f2 agrees with the one from f1 within tol. Agreement
    is the well-definedness of the probe: the value must not depend on the
    base function.
    """
    f1, f2 = base
    ep, em = _as_eval(phi_plus), _as_eval(phi_minus)

    if check_grid is None:
        check_grid = np.linspace(-3.0, 3.0, 41)
    for f in (f1, f2):
        ef = _as_eval(f)
        if lines is None:
            def perturbed(s, ef=ef):
                return ef(s) + ep(s) - em(s)
            if not is_convex_sampled(perturbed, check_grid, tol=1e-7):
                raise PerturbationNotConvex("base plus perturbation fails the midpoint test")
        else:
            for bpt, dirn in lines:
                def perturbed(t, ef=ef, bpt=bpt, dirn=dirn):
                    p = np.asarray(bpt) + t * np.asarray(dirn)
                    return ef(p) + ep(p) - em(p)
                if not is_convex_sampled(perturbed, check_grid, tol=1e-7):
                    raise PerturbationNotConvex("base plus perturbation fails the midpoint test")

    def value(f):
        return endo(combine(f, phi_plus), x) - endo(combine(f, phi_minus), x)

    v1 = value(f1)
    v2 = value(f2)
    scale = max(1.0, abs(v1), abs(v2))
    return v1, abs(v1 - v2) <= tol * scale
