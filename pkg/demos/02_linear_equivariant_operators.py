"""The linearly equivariant operator family and the whole-space maps.

An operator in this family is a constant c plus an atomic measure nu on
the punctured line; it sends a convex function f that is finite near the
origin to

    x  |->  c f(0) + sum_i w_i (f(s_i x) - f(0)) / s_i^2 .

Two scalar moments of nu decide everything: the operator is monotone
exactly when sum w_i / s_i^2 <= c, and it kills linear functions exactly
when the signed moment sum w_i / s_i vanishes.
"""

import numpy as np

from convendo import (Affine, GlEndo, LineMeasure, Pwl1D, Quad,
                      ScaleComposeMap, Sum, gl_empirical_monotone_search,
                      gl_eval, gl_eval_detailed,
                      gl_is_dually_translation_invariant, gl_is_monotone,
                      pwl_indicator, scale_compose_eval)

# A single atom at s = 1 with c = 0 is "evaluate and subtract the value at
# the origin".
e = GlEndo(0.0, LineMeasure([(1.0, 1.0)]), 2)
f = Sum([Quad(1.0), Affine([1.0, 0.0], 2.0)])
x = np.array([2.0, 0.0])
print("single atom:", gl_eval(e, f, x), "= f(x) - f(0) =",
      f(x) - f(np.zeros(2)))

# ------------------------------------------------------ monotonicity wall
# With nu = delta_{1/2} the mass moment is 4, so c = 4 is monotone and any
# smaller c is not. The witness pair is f = ||y|| - 1 below g = (||y||-1)_+,
# separated at radius 2.
for c in (4.0, 3.9):
    e = GlEndo(c, LineMeasure([(0.5, 1.0)]), 2)
    w = gl_empirical_monotone_search(e, trials=50, seed=0)
    print(f"c = {c}: monotone predicate {gl_is_monotone(e)}, "
          f"witness found: {w is not None}")
    if w is not None:
        print("   at x =", w["x"], "values", w["value_f"], ">", w["value_g"])

# ----------------------------------------------- dual translation invariance
balanced = GlEndo(0.0, LineMeasure([(2.0, 4.0), (-0.5, 1.0)]), 2)
print("\nbalanced measure kills linear functions:",
      gl_is_dually_translation_invariant(balanced),
      "; value on a linear function:",
      gl_eval(balanced, Affine([1.0, -2.0], 0.0), [0.7, 0.3]))

# ----------------------------------------------------------- domain blow-up
# The two-atom operator (the function analogue of the difference body)
# cannot act on functions with small asymmetric domains: scaling the
# support [-1, 1] along the ray must stay inside the domain of f. With the
# indicator of [-0.1, 1] the image is finite only on (-0.1, 0.1) and jumps
# to +inf beyond it; no finite-valued extension exists.
two_atom = GlEndo(0.0, LineMeasure([(1.0, 1.0), (-1.0, 1.0)]), 1)
g = Sum([Affine([0.0], 0.0), Pwl1D(pwl_indicator(-0.1, 1.0), [1.0])])
for t in (0.05, 0.09, 0.11, 0.5):
    print(f"two-atom operator at x = {t}:", gl_eval(two_atom, g, [t]))
val, info = gl_eval_detailed(two_atom, g, [0.1])
print("boundary point 0.1:", val, info["case"],
      "monotone tail:", info["tail_monotone"])

# The only maps defined on every convex function are the scale-compose
# maps f |-> lam f(mu x); they never blow up.
sc = ScaleComposeMap(2.0, -1.0, 1)
seg = Pwl1D(pwl_indicator(0.0, 1.0), [1.0])
print("\nscale-compose on a segment indicator:",
      [scale_compose_eval(sc, seg, [t]) for t in (-1.0, -0.5, 0.0, 0.5)])
