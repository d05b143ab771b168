"""One-dimensional kernel calculus for additive operators.

Every continuous additive operator on finite convex functions of one
variable is represented by a continuous kernel psi(x, y), unique up to
adding functions affine in y. The operator is recovered from the kernel
through a four-coefficient tail decomposition plus a pairing of the
residual with the second-derivative measure of the input:

    Psi(f)[x] = (c1(x) + c3(x)) f(0) + (c2(x) + c4(x)) f(-1)
                + sum_j psi_tilde(x, y_j) * jump_j,

where the (y_j, jump_j) are the kink positions and slope jumps of f. The
kernel of an operator is extracted by applying it to hinge functions:
psi(x, y) = Psi(s -> (y - s)_+)[x].

The tail coefficients solve the affine tail equations

    psi(x, y) = c1 y + c2 (y + 1)        for y >= R,
    psi(x, y) = c3 (-y) + c4 (-y - 1)    for y <= -R,

at the nodes +-R and +-(R + 1); subtracting the four hinge multiples
c1 y_+ + c2 (y+1)_+ + c3 (-y)_+ + c4 (-y-1)_+ then kills both tails.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (BadShape, InfiniteSlope, OutsideA, PhiNegative, PhiNotEven,
                     TailNotAffine, XSliceNotAffine)
from .extreal import INF
from .measures import LineMeasure
from .probes import EndoMap, is_convex_sampled
from .pwl import pwl_hinge

# Interval edge ties resolve like in the linear-equivariant operator.
EDGE_TOL = 1e-10

MongeAmpere1D = LineMeasure


def monge_ampere(f):
    """Second-derivative measure of a finite convex piecewise-linear f.

    Atoms sit at the breakpoints and weigh the slope jumps; zero jumps are
    dropped. Functions with truncated domains are rejected.
    """
    if f.slope_left == -INF or f.slope_right == INF:
        raise InfiniteSlope("Monge-Ampere needs finite tail slopes")
    seq = f.slope_sequence()
    atoms = []
    for b, m1, m2 in zip(f.breakpoints, seq, seq[1:]):
        jump = m2 - m1
        if jump > 0.0:
            atoms.append((b, jump))
    return LineMeasure(atoms)


def pwl_integral(f, lo, hi):
    """Exact integral of a PwlFunction over [lo, hi] inside its domain."""
    if hi < lo:
        raise BadShape("empty integration interval")
    dlo, dhi = f.domain
    if lo < dlo - 1e-12 or hi > dhi + 1e-12:
        raise InfiniteSlope("integration interval leaves the domain")
    pts = [lo] + [b for b in f.breakpoints if lo < b < hi] + [hi]
    total = 0.0
    for p, q in zip(pts, pts[1:]):
        total += 0.5 * (f(p) + f(q)) * (q - p)
    return total


class Kernel1D:
    """Continuous kernel psi(x, y) with a declared validity box.

    ``kind`` is "callable" for closed-form or operator-backed evaluators and
    "grid" for tabulated values with bilinear interpolation in between.
    """

    def __init__(self, evaluator, box, kind="callable", grid=None):
        self.evaluator = evaluator
        self.box = tuple(float(v) for v in box)  # (x_lo, x_hi, y_lo, y_hi)
        if not (self.box[0] < self.box[1] and self.box[2] < self.box[3]):
            raise BadShape("validity box is empty")
        self.kind = kind
        self.grid = grid  # (xs, ys, values) for grid kernels

    @classmethod
    def from_grid(cls, xs, ys, values):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        values = np.asarray(values, dtype=float)
        if values.shape != (xs.size, ys.size):
            raise BadShape("values must be shaped (len(xs), len(ys))")
        if xs.size < 2 or ys.size < 2:
            raise BadShape("grids need at least two nodes")
        if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) <= 0):
            raise BadShape("grids must be strictly increasing")

        def ev(x, y):
            i = int(np.clip(np.searchsorted(xs, x) - 1, 0, xs.size - 2))
            j = int(np.clip(np.searchsorted(ys, y) - 1, 0, ys.size - 2))
            tx = (x - xs[i]) / (xs[i + 1] - xs[i])
            ty = (y - ys[j]) / (ys[j + 1] - ys[j])
            return ((1 - tx) * (1 - ty) * values[i, j]
                    + tx * (1 - ty) * values[i + 1, j]
                    + (1 - tx) * ty * values[i, j + 1]
                    + tx * ty * values[i + 1, j + 1])

        return cls(ev, (xs[0], xs[-1], ys[0], ys[-1]), kind="grid",
                   grid=(xs, ys, values))

    def __call__(self, x, y):
        x_lo, x_hi, y_lo, y_hi = self.box
        if not (x_lo - 1e-9 <= x <= x_hi + 1e-9 and y_lo - 1e-9 <= y <= y_hi + 1e-9):
            raise OutsideA(f"({x}, {y}) outside validity box {self.box}")
        return float(self.evaluator(x, y))

    def is_x_convex(self, xs, ys, tol=1e-9):
        """Sampled convexity of psi(., y), the defining property of kernels."""
        return all(is_convex_sampled(lambda x, y=y: self(x, y), xs, tol=tol)
                   for y in ys)


def kernel_is_monotone(psi, xs, ys, tol=1e-9):
    """Monotone operators are exactly those with psi(x, .) convex."""
    return all(is_convex_sampled(lambda y, x=x: psi(x, y), ys, tol=tol)
               for x in xs)


@dataclass
class KernelDecomposition:
    """Tail coefficients and compactly supported residual of a kernel."""

    kernel: Kernel1D
    A: tuple
    R: float
    c1: callable = field(repr=False, default=None)
    c2: callable = field(repr=False, default=None)
    c3: callable = field(repr=False, default=None)
    c4: callable = field(repr=False, default=None)

    def psi_tilde(self, x, y):
        """Residual kernel; identically zero outside [-R, R] once the tail
        validation has passed, so values beyond R are clamped to 0."""
        if abs(y) > self.R + 1e-12:
            return 0.0
        yp = max(y, 0.0)
        return (self.kernel(x, y)
                - (self.c1(x) * yp + self.c2(x) * max(y + 1.0, 0.0)
                   + self.c3(x) * max(-y, 0.0) + self.c4(x) * max(-y - 1.0, 0.0)))

    def as_endomap(self):
        return EndoMap(lambda f, x: kernel_endo_eval(self, f, x), 1,
                       name="kernel")


def _second_diffs(vals):
    v = np.asarray(vals)
    return v[2:] - 2.0 * v[1:-1] + v[:-2]


def kernel_decompose(psi, A, R, tol=1e-8, n_x=21, n_y=13):
    """Solve the tail equations and validate both support conditions.

    Checks that psi(x, .) is affine beyond +-R for x in A (second
    differences of samples on [R, R+1] and [-R-1, -R]) and that
    psi(., y) is affine on A for |y| > R. R must be at least 1 so that the
    four hinge multiples reproduce affine tails exactly.
    """
    a_lo, a_hi = (float(A[0]), float(A[1]))
    R = float(R)
    if R < 1.0:
        raise BadShape("decomposition radius must be >= 1")
    x_lo, x_hi, y_lo, y_hi = psi.box
    if a_lo < x_lo - 1e-9 or a_hi > x_hi + 1e-9:
        raise BadShape("A leaves the kernel's validity box")
    if -(R + 1.0) < y_lo - 1e-9 or (R + 1.0) > y_hi + 1e-9:
        raise BadShape("R + 1 leaves the kernel's validity box")

    xs = np.linspace(a_lo, a_hi, n_x)
    for sign in (+1.0, -1.0):
        ys = sign * np.linspace(R, R + 1.0, n_y)
        for x in xs:
            vals = [psi(x, y) for y in ys]
            scale = max(1.0, max(abs(v) for v in vals))
            dev = float(np.max(np.abs(_second_diffs(vals)))) if len(vals) > 2 else 0.0
            if dev > tol * scale:
                raise TailNotAffine(
                    f"psi({x}, .) bends beyond {sign * R}: second difference {dev}")
    for sign in (+1.0, -1.0):
        for y in sign * np.linspace(R + 1e-6, R + 1.0, 5):
            vals = [psi(x, y) for x in xs]
            scale = max(1.0, max(abs(v) for v in vals))
            dev = float(np.max(np.abs(_second_diffs(vals)))) if len(vals) > 2 else 0.0
            if dev > tol * scale:
                raise XSliceNotAffine(
                    f"psi(., {y}) is not affine on A: second difference {dev}")

    def c1(x):
        return (R + 1.0) * psi(x, R + 1.0) - (R + 2.0) * psi(x, R)

    def c2(x):
        return (R + 1.0) * psi(x, R) - R * psi(x, R + 1.0)

    def c3(x):
        return R * psi(x, -R) - (R - 1.0) * psi(x, -R - 1.0)

    def c4(x):
        return R * psi(x, -R - 1.0) - (R + 1.0) * psi(x, -R)

    return KernelDecomposition(kernel=psi, A=(a_lo, a_hi), R=R,
                               c1=c1, c2=c2, c3=c3, c4=c4)


def kernel_endo_eval(d, f, x):
    """Apply the decomposed operator to a finite piecewise-linear input."""
    x = float(x)
    a_lo, a_hi = d.A
    if not a_lo - EDGE_TOL <= x <= a_hi + EDGE_TOL:
        raise OutsideA(f"{x} outside decomposition interval {d.A}")
    ma = monge_ampere(f)
    total = (d.c1(x) + d.c3(x)) * f(0.0) + (d.c2(x) + d.c4(x)) * f(-1.0)
    for y, w in ma.atoms:
        total += d.psi_tilde(x, y) * w
    return total


def kernel_extract(endo, xs, ys):
    """Tabulate psi(x, y) = endo((y - .)_+)[x] on a grid kernel."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    values = np.empty((xs.size, ys.size))
    for j, y in enumerate(ys):
        hinge = pwl_hinge(y)
        for i, x in enumerate(xs):
            values[i, j] = endo(hinge, x)
    return Kernel1D.from_grid(xs, ys, values)


def kernel_extract_live(endo, box):
    """Operator-backed kernel evaluated exactly on demand (no grid)."""

    def ev(x, y):
        return endo(pwl_hinge(y), x)

    return Kernel1D(ev, box, kind="callable")


def detect_tail_radius(psi, A, start=1.0, consecutive=8, tol=1e-8, n_x=9, n_y=9):
    """Scan doubling radii until the tails stay affine for several octaves.

    Returns the first radius of a run of ``consecutive`` doublings on which
    psi(x, .) is affine on [R, 2R] and [-2R, -R] for sampled x in A.
    """
    xs = np.linspace(float(A[0]), float(A[1]), n_x)
    y_hi = psi.box[3]
    run_start = None
    run = 0
    R = float(start)
    while 2.0 * R <= y_hi + 1e-9:
        ok = True
        for sign in (+1.0, -1.0):
            ys = sign * np.linspace(R, 2.0 * R, n_y)
            for x in xs:
                vals = [psi(x, y) for y in ys]
                scale = max(1.0, max(abs(v) for v in vals))
                if float(np.max(np.abs(_second_diffs(vals)))) > tol * scale:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if run == 0:
                run_start = R
            run += 1
            if run >= consecutive:
                return run_start
        else:
            run = 0
            run_start = None
        R *= 2.0
    if run_start is not None:
        return run_start
    raise TailNotAffine("no affine tail radius found inside the validity box")


# -- worked operator families -------------------------------------------------


class PhiEndo:
    """Operator f -> (t -> integral of f - f(0) over [-phi(t), phi(t)]).

    ``phi`` is an even, non-negative convex piecewise-linear profile. When
    phi has a truncated domain, values outside its closure are +inf and
    boundary values are radial limits from inside, which keeps the output
    lower semi-continuous and finite near 0.
    """

    def __init__(self, phi, check_points=41):
        dlo, dhi = phi.domain
        span = 3.0 if dhi == INF else dhi
        ts = np.linspace(0.0, span, check_points)
        for t in ts:
            v1, v2 = phi(t), phi(-t)
            if v1 == INF and v2 == INF:
                continue
            if abs(v1 - v2) > 1e-9 * max(1.0, abs(v1)):
                raise PhiNotEven(f"phi({t}) != phi({-t})")
        finite_vals = [phi(t) for t in ts if phi(t) < INF]
        if min(finite_vals) < -1e-12 or any(v < -1e-12 for v in phi.values):
            raise PhiNegative("phi must be non-negative")
        self.phi = phi

    def eval(self, f, t, boundary_steps=40):
        if f.slope_left == -INF or f.slope_right == INF:
            raise InfiniteSlope("input must be a finite piecewise-linear function")
        t = float(t)
        dlo, dhi = self.phi.domain

        def inner(tt):
            a = self.phi(tt)
            if a <= 0.0:
                return 0.0
            return pwl_integral(f, -a, a) - 2.0 * a * f(0.0)

        if dlo + EDGE_TOL < t < dhi - EDGE_TOL:
            return inner(t)
        if t < dlo - EDGE_TOL or t > dhi + EDGE_TOL:
            return INF
        # radial limit onto the domain boundary
        val = 0.0
        for k in range(1, boundary_steps + 1):
            val = inner((1.0 - 2.0 ** (-k)) * t)
        return val

    def as_endomap(self):
        return EndoMap(lambda f, t: self.eval(f, t), 1, name="phi_example")


def example_phi_endo(phi, f, t):
    return PhiEndo(phi).eval(f, t)


@dataclass
class PhiConvexityReport:
    grid: np.ndarray
    term_curvature: np.ndarray
    term_slopes: np.ndarray
    tol: float

    @property
    def passed(self):
        return bool(np.all(self.term_curvature >= -self.tol)
                    and np.all(self.term_slopes >= -self.tol))


def _right_slope(f, a):
    if a >= f.breakpoints[-1]:
        return f.slope_right
    return f.slope_on(math.nextafter(a, INF))


def example_phi_convexity_certificate(phi, f, grid, tol=1e-8):
    """Second-derivative certificate for the profile-integral operator.

    On a uniform grid, both finite-difference summands of the output's
    second derivative are reported:

        phi''(t) (f(phi(t)) + f(-phi(t)) - 2 f(0))      curvature term,
        (phi'(t))^2 (f'(phi(t)) - f'(-phi(t)))          slope-gap term.

    Convexity of phi and f makes both non-negative up to discretization.
    """
    grid = np.asarray(grid, dtype=float)
    h = np.diff(grid)
    if grid.size < 3 or np.max(np.abs(h - h[0])) > 1e-12:
        raise BadShape("grid must be uniform with at least 3 points")
    h = float(h[0])
    term1, term2 = [], []
    for i in range(1, grid.size - 1):
        t = grid[i]
        pm, p0, pp = phi(grid[i - 1]), phi(t), phi(grid[i + 1])
        ddphi = (pp - 2.0 * p0 + pm) / (h * h)
        dphi = (pp - pm) / (2.0 * h)
        a = p0
        term1.append(ddphi * (f(a) + f(-a) - 2.0 * f(0.0)))
        term2.append(dphi * dphi * (_right_slope(f, a) - _right_slope(f, -a)))
    return PhiConvexityReport(grid=grid[1:-1], term_curvature=np.array(term1),
                              term_slopes=np.array(term2), tol=tol)


class MaEndo:
    """Operator f -> (x -> g(x) * sum of zeta(|y_j|) * jump_j).

    ``zeta`` is a non-negative continuous weight with the declared compact
    support radius; ``g`` is a finite convex piecewise-linear factor.
    """

    def __init__(self, g, zeta, support_radius, check_points=33,
                 zeta_descriptor=None):
        if g.slope_left == -INF or g.slope_right == INF:
            raise InfiniteSlope("g must be finite")
        for u in np.linspace(0.0, float(support_radius), check_points):
            if zeta(u) < -1e-12:
                raise BadShape("zeta must be non-negative")
        self.g = g
        self.zeta = zeta
        self.support_radius = float(support_radius)
        self.zeta_descriptor = zeta_descriptor

    def eval(self, f, x):
        ma = monge_ampere(f)
        total = 0.0
        for y, w in ma.atoms:
            if abs(y) <= self.support_radius:
                total += self.zeta(abs(y)) * w
        return self.g(float(x)) * total

    def as_endomap(self):
        return EndoMap(lambda f, x: self.eval(f, x), 1, name="ma_example")


def hat_weight(radius):
    """The tent weight u -> max(0, 1 - u / radius) on [0, radius]."""
    radius = float(radius)
    if not radius > 0:
        raise BadShape("hat radius must be positive")
    return lambda u: max(0.0, 1.0 - abs(u) / radius)


def example_ma_endo(g, zeta, support_radius, f, x):
    return MaEndo(g, zeta, support_radius).eval(f, x)
