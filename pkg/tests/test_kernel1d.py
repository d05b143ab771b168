import numpy as np
import pytest

from convendo import (INF, GlEndo, InfiniteSlope, Kernel1D, LineMeasure,
                      MaEndo, OutsideA, PhiEndo, PhiNotEven, PwlFunction,
                      TailNotAffine, XSliceNotAffine, detect_tail_radius,
                      example_phi_convexity_certificate, hat_weight,
                      kernel_decompose, kernel_endo_eval, kernel_extract,
                      kernel_extract_live, kernel_is_monotone, monge_ampere,
                      pwl_abs, pwl_integral, pwl_linear, pwl_make)


def dense_parabola(span=3.0, pieces=1200, coeff=1.0):
    xs = np.linspace(-span, span, pieces + 1)
    return PwlFunction(xs, coeff * xs ** 2, -2 * coeff * span, 2 * coeff * span)


# -- Monge-Ampere ----------------------------------------------------------------

def test_ma_of_abs():
    assert monge_ampere(pwl_abs()).atoms == ((0.0, 2.0),)


def test_ma_of_tent_pair():
    f = pwl_make([-1.0, 1.0], [0.0, 0.0], -1.0, 1.0)
    assert monge_ampere(f).atoms == ((-1.0, 1.0), (1.0, 1.0))


def test_ma_of_affine_is_empty():
    assert len(monge_ampere(pwl_linear(2.0, 1.0))) == 0


def test_ma_rejects_truncated_domain():
    from convendo import pwl_indicator
    with pytest.raises(InfiniteSlope):
        monge_ampere(pwl_indicator(-1.0, 1.0))


# -- decomposition ----------------------------------------------------------------

def hinge_kernel():
    return Kernel1D(lambda x, y: max(y - x, 0.0) - max(y, 0.0), (-1, 1, -4, 4))


def test_decompose_hinge_kernel_coefficients():
    # oracle: hand evaluation of the tail solves; psi(x, y) = y - x - y_+ for
    # y >= 2, zero for y <= -2, so c1 = x, c2 = -x, c3 = c4 = 0
    d = kernel_decompose(hinge_kernel(), (-1, 1), 2.0)
    for x in (-1.0, -0.3, 0.0, 0.5, 1.0):
        assert d.c1(x) == pytest.approx(x, abs=1e-12)
        assert d.c2(x) == pytest.approx(-x, abs=1e-12)
        assert d.c3(x) == pytest.approx(0.0, abs=1e-12)
        assert d.c4(x) == pytest.approx(0.0, abs=1e-12)


def test_decompose_zero_kernel():
    k = Kernel1D(lambda x, y: 0.0, (-1, 1, -4, 4))
    d = kernel_decompose(k, (-1, 1), 2.0)
    assert d.c1(0.3) == 0.0 and d.c4(-0.7) == 0.0
    assert d.psi_tilde(0.2, 0.7) == 0.0
    f = dense_parabola()
    assert kernel_endo_eval(d, f, 0.5) == 0.0


def test_decompose_affine_kernel_gives_zero_map():
    # a kernel affine in y induces the zero operator; oracle: evaluate the
    # reconstruction on random inputs
    k = Kernel1D(lambda x, y: y, (-1, 1, -4, 4))
    d = kernel_decompose(k, (-1, 1), 2.0)
    from convendo.rand import random_finite_pwl, rng_from_seed
    rng = rng_from_seed(8)
    for _ in range(10):
        f = random_finite_pwl(rng)
        x = float(rng.uniform(-1.0, 1.0))
        assert kernel_endo_eval(d, f, x) == pytest.approx(0.0, abs=1e-9)


def test_psi_tilde_vanishes_on_tails():
    d = kernel_decompose(hinge_kernel(), (-1, 1), 2.0)
    for x in (-0.8, 0.0, 0.9):
        for y in (2.0, 2.5, 3.0, -2.0, -2.7):
            raw = (d.kernel(x, y)
                   - (d.c1(x) * max(y, 0.0) + d.c2(x) * max(y + 1.0, 0.0)
                      + d.c3(x) * max(-y, 0.0) + d.c4(x) * max(-y - 1.0, 0.0)))
            assert raw == pytest.approx(0.0, abs=1e-12)
            assert d.psi_tilde(x, y) == pytest.approx(0.0, abs=1e-12)


def test_hinge_kernel_reconstruction_matches_parabola():
    d = kernel_decompose(hinge_kernel(), (-1, 1), 2.0)
    f = dense_parabola()
    # oracle: the hinge kernel encodes f -> f(x) - f(0)
    for x in (-1.0, -0.4, 0.0, 0.5, 1.0):
        assert kernel_endo_eval(d, f, x) == pytest.approx(
            f(x) - f(0.0), abs=1e-5)


def test_affine_inputs_reconstruct_exactly():
    d = kernel_decompose(hinge_kernel(), (-1, 1), 2.0)
    # oracle: for affine f the jump sum is empty, so the value is
    # (c1+c3) f(0) + (c2+c4) f(-1) = x (f(0) - f(-1)) = f(x) - f(0)
    for a, b in ((3.0, 7.0), (-2.0, 0.5)):
        f = pwl_linear(a, b)
        for x in (-0.9, 0.2, 1.0):
            assert kernel_endo_eval(d, f, x) == pytest.approx(
                f(x) - f(0.0), abs=1e-12)


def test_endo_eval_outside_interval():
    d = kernel_decompose(hinge_kernel(), (-1, 1), 2.0)
    with pytest.raises(OutsideA):
        kernel_endo_eval(d, pwl_abs(), 1.5)


def test_decompose_rejects_bent_tail():
    k = Kernel1D(lambda x, y: y * y, (-1, 1, -4, 4))
    with pytest.raises(TailNotAffine):
        kernel_decompose(k, (-1, 1), 2.0)


def test_decompose_rejects_bent_x_slice():
    k = Kernel1D(lambda x, y: x * x * y, (-1, 1, -4, 4))
    with pytest.raises(XSliceNotAffine):
        kernel_decompose(k, (-1, 1), 2.0)


def test_detect_tail_radius():
    em = GlEndo(0.0, LineMeasure([(1.0, 1.0)]), 1).as_endomap_1d()
    live = kernel_extract_live(em, (-1.0, 1.0, -2.0 ** 12, 2.0 ** 12))
    r = detect_tail_radius(live, (-1.0, 1.0), start=2.0)
    assert r >= 2.0
    d = kernel_decompose(live, (-1, 1), r)
    f = dense_parabola()
    assert kernel_endo_eval(d, f, 0.3) == pytest.approx(f(0.3) - f(0.0), abs=1e-5)


# -- extraction --------------------------------------------------------------------

def test_extract_hinge_values():
    em = GlEndo(0.0, LineMeasure([(1.0, 1.0)]), 1).as_endomap_1d()
    xs = np.linspace(-1, 1, 9)
    ys = np.linspace(-3, 3, 13)
    k = kernel_extract(em, xs, ys)
    for x in xs:
        for y in ys:
            assert k(x, y) == pytest.approx(
                max(y - x, 0.0) - max(y, 0.0), abs=1e-12)


def test_extract_zero_map():
    from convendo import EndoMap
    em = EndoMap(lambda f, x: 0.0, 1)
    k = kernel_extract(em, np.linspace(-1, 1, 5), np.linspace(-2, 2, 5))
    assert np.allclose(k.grid[2], 0.0)


def test_grid_kernel_bilinear_between_nodes():
    xs = np.array([0.0, 1.0])
    ys = np.array([0.0, 1.0])
    k = Kernel1D.from_grid(xs, ys, np.array([[0.0, 1.0], [2.0, 3.0]]))
    assert k(0.5, 0.5) == pytest.approx(1.5)
    with pytest.raises(OutsideA):
        k(2.0, 0.0)


def test_kernel_x_convexity_certificate():
    xs = np.linspace(-1, 1, 9)
    ys = np.linspace(-3, 3, 13)
    assert hinge_kernel().is_x_convex(xs, ys)
    concave = Kernel1D(lambda x, y: -x * x * max(y, 0.0), (-1, 1, -4, 4))
    assert not concave.is_x_convex(xs, ys)


def test_kernel_monotonicity_predicates():
    xs = np.linspace(-1, 1, 7)
    ys = np.linspace(-3, 3, 61)
    assert not kernel_is_monotone(hinge_kernel(), xs, ys)
    ident = Kernel1D(lambda x, y: max(y - x, 0.0), (-1, 1, -4, 4))
    assert kernel_is_monotone(ident, xs, ys)
    zero = Kernel1D(lambda x, y: 0.0, (-1, 1, -4, 4))
    assert kernel_is_monotone(zero, xs, ys)


def test_nonmonotone_witness_for_eval_minus_origin():
    # oracle: f = |y| - 1 <= g = (|y| - 1)_+ but f(x) - f(0) > g(x) - g(0)
    em = GlEndo(0.0, LineMeasure([(1.0, 1.0)]), 1).as_endomap_1d()
    f = PwlFunction([0.0], [-1.0], -1.0, 1.0)
    g = PwlFunction([-1.0, 1.0], [0.0, 0.0], -1.0, 1.0)
    ys = np.linspace(-5, 5, 101)
    assert all(f(y) <= g(y) + 1e-12 for y in ys)
    assert em(f, 0.9) > em(g, 0.9) + 0.5


# -- profile-integral operator ------------------------------------------------------

def test_phi_endo_parabola_oracle():
    # oracle: integral of s^2 over [-2, 2] is 16/3
    phi = PwlFunction([0.0], [1.0], -1.0, 1.0)
    pe = PhiEndo(phi)
    f = dense_parabola(span=5.0, pieces=4000)
    assert pe.eval(f, 1.0) == pytest.approx(16.0 / 3.0, abs=1e-4)


def test_phi_endo_kills_affine():
    phi = PwlFunction([0.0], [1.0], -1.0, 1.0)
    pe = PhiEndo(phi)
    f = pwl_linear(3.0, 7.0)
    for t in (-2.0, 0.0, 0.4, 1.7):
        assert pe.eval(f, t) == pytest.approx(0.0, abs=1e-12)


def test_phi_endo_indicator_domain():
    from convendo import pwl_indicator
    phi = pwl_indicator(-1.0, 1.0)
    pe = PhiEndo(phi)
    f = pwl_abs()
    assert pe.eval(f, 0.5) == 0.0
    assert pe.eval(f, -0.9) == 0.0
    assert pe.eval(f, 1.2) == INF
    assert pe.eval(f, 1.0) == pytest.approx(0.0)  # boundary radial limit


def test_phi_endo_validation():
    lopsided = pwl_make([0.0], [1.0], -1.0, 2.0)
    with pytest.raises(PhiNotEven):
        PhiEndo(lopsided)


def test_phi_convexity_certificate_signs():
    # oracle: for phi = 1 + t^2 and f = y^2 both summands have closed-form
    # signs: phi'' = 2 > 0, f(a) + f(-a) - 2 f(0) = 2 a^2 >= 0, f' increasing
    grid = np.linspace(-2.0, 2.0, 81)
    phi = dense_parabola(span=3.0, pieces=600)
    phi = _shift(phi, 1.0)
    f = dense_parabola(span=8.0, pieces=800)
    rep = example_phi_convexity_certificate(phi, f, grid, tol=1e-6)
    assert rep.passed
    assert np.all(rep.term_curvature >= -1e-6)
    assert np.all(rep.term_slopes >= -1e-6)


def test_phi_convexity_certificate_affine_f():
    grid = np.linspace(-2.0, 2.0, 41)
    phi = _shift(dense_parabola(span=3.0, pieces=600), 1.0)
    f = pwl_linear(2.0, -1.0)
    rep = example_phi_convexity_certificate(phi, f, grid, tol=1e-9)
    assert rep.passed
    assert np.max(np.abs(rep.term_curvature)) <= 1e-9
    assert np.max(np.abs(rep.term_slopes)) <= 1e-9


def test_phi_convexity_certificate_flat_profile():
    grid = np.linspace(-0.5, 0.5, 21)
    phi = PwlFunction([0.0], [1.0], 0.0, 0.0)
    f = dense_parabola()
    rep = example_phi_convexity_certificate(phi, f, grid, tol=1e-9)
    assert np.max(np.abs(rep.term_curvature)) <= 1e-9  # phi'' = 0 region
    assert rep.passed


def _shift(f, c):
    return PwlFunction(f.breakpoints, [v + c for v in f.values],
                       f.slope_left, f.slope_right, slopes=f.slopes)


# -- jump-weight operator -----------------------------------------------------------

def test_ma_endo_examples():
    g = dense_parabola(span=3.0, pieces=600)
    ma = MaEndo(g, hat_weight(1.0), 1.0)
    # single kink of |.| at 0 with jump 2 and zeta(0) = 1
    for x in (-1.5, 0.3, 2.0):
        assert ma.eval(pwl_abs(), x) == pytest.approx(2.0 * g(x), abs=1e-12)
    assert ma.eval(pwl_linear(1.0, 0.0), 0.7) == 0.0
    shifted_abs = pwl_make([5.0], [0.0], -1.0, 1.0)
    assert ma.eval(shifted_abs, 0.7) == 0.0  # kink outside the weight support


# -- round trips ---------------------------------------------------------------------

@pytest.mark.parametrize("make_endo", [
    lambda: GlEndo(0.0, LineMeasure([(1.0, 1.0)]), 1).as_endomap_1d(),
    lambda: GlEndo(0.5, LineMeasure([(1.0, 1.0), (-0.5, 0.25)]), 1).as_endomap_1d(),
    lambda: PhiEndo(PwlFunction([0.0], [1.0], -1.0, 1.0)).as_endomap(),
    lambda: MaEndo(dense_parabola(span=3.0, pieces=100), hat_weight(1.0), 1.0).as_endomap(),
])
def test_live_round_trip(make_endo):
    em = make_endo()
    live = kernel_extract_live(em, (-1.2, 1.2, -8.0, 8.0))
    d = kernel_decompose(live, (-1.0, 1.0), 4.0)
    from convendo.rand import random_finite_pwl, rng_from_seed
    rng = rng_from_seed(21)
    for _ in range(25):
        f = random_finite_pwl(rng)
        x = float(rng.uniform(-1.0, 1.0))
        assert kernel_endo_eval(d, f, x) == pytest.approx(em(f, x), abs=1e-8)


def test_closing_example_closed_form_kernel():
    # the extracted kernel of the profile-integral operator with
    # phi(t) = 1 + |t| matches (s + phi(t))^2 / 2 - 2 phi(t) s_+ inside
    # |s| < phi(t) and vanishes outside
    phi = PwlFunction([0.0], [1.0], -1.0, 1.0)
    em = PhiEndo(phi).as_endomap()
    xs = np.linspace(-1.0, 1.0, 21)
    ys = np.linspace(-3.0, 3.0, 41)
    k = kernel_extract(em, xs, ys)
    _, _, vals = k.grid

    def closed(t, s):
        a = 1.0 + abs(t)
        if abs(s) >= a:
            return 0.0
        return (s + a) ** 2 / 2.0 - 2.0 * a * max(s, 0.0)

    ref = np.array([[closed(x, y) for y in ys] for x in xs])
    d2v = vals[:, 2:] - 2 * vals[:, 1:-1] + vals[:, :-2]
    d2r = ref[:, 2:] - 2 * ref[:, 1:-1] + ref[:, :-2]
    assert float(np.max(np.abs(d2v - d2r))) <= 1e-9


def test_pwl_integral_exact():
    f = pwl_abs()
    assert pwl_integral(f, -2.0, 2.0) == pytest.approx(4.0)
    assert pwl_integral(f, 0.0, 1.0) == pytest.approx(0.5)
    g = pwl_make([-1.0, 1.0], [1.0, 1.0], -2.0, 3.0)
    assert pwl_integral(g, -1.0, 1.0) == pytest.approx(2.0)
