"""Monotone operators equivariant under rotations and dilations.

These are parametrized by orbit measures: weighted circles (n = 3) or
points (n = 2) swept around the first coordinate axis. The operator
transports the orbit to the direction of x, scales it by ||x||, and
integrates the input over it.
"""

import math

import numpy as np

from convendo import (Affine, Max, Norm, OrbitMeasure, Quad, RadialEndo,
                      acts_as_scalar_on_radial, canonical_rotation,
                      expr_eval, minkowski_restrict, orbit_quadrature,
                      radial_eval, radial_is_dually_translation_invariant)

# ------------------------------------------------------- rotation machinery
# canonical_rotation(x) is the deterministic rotation taking the reference
# axis e1 to x/||x||, built from two reflections.
x = np.array([1.0, 2.0, 2.0])
R = canonical_rotation(x, 3)
print("R e1 =", R @ np.array([1.0, 0.0, 0.0]), " det =", np.linalg.det(R))

# Orbit atoms (t, theta, w): radius t, polar angle theta from e1, weight w.
# For n = 3 the quadrature spreads w uniformly over M circle points.
pts = orbit_quadrature((1.0, math.pi / 2, 1.0), 3, M=4)
print("equatorial orbit, 4 points:", [np.round(p, 3).tolist() for p, _ in pts])

# ------------------------------------------------------ operator examples
# The single pole atom is the identity map.
ident = RadialEndo(OrbitMeasure(3, [(1.0, 0.0, 1.0)]), M=16)
f = Quad(1.0)
print("\nidentity atom:", radial_eval(ident, f, x), "= f(x) =", expr_eval(f, x))

# Two opposite poles give the function analogue of the difference body:
# on the norm it doubles the value, and its orbit measure is centered, so
# it kills linear functions.
two_pole = RadialEndo(OrbitMeasure(3, [(1.0, 0.0, 1.0), (1.0, math.pi, 1.0)]),
                      M=16)
print("two poles on ||.||:", radial_eval(two_pole, Norm(1.0), x))
print("dually translation-invariant:",
      radial_is_dually_translation_invariant(two_pole),
      "; on a linear function:",
      radial_eval(two_pole, Affine([0.3, -1.0, 0.2], 0.0), x))

# ------------------------------------- scalar action on invariant inputs
# Orbits on the unit sphere (all t = 1) act as mass times the identity on
# every rotation-invariant input; any off-sphere orbit visibly fails.
unit = RadialEndo(OrbitMeasure(3, [(1.0, math.pi / 3, 2.0)]), M=64)
print("\nunit orbits scalar action:", acts_as_scalar_on_radial(unit),
      "; value on ||.||^2 at |x|=1:",
      radial_eval(unit, Quad(1.0), np.array([0.0, 1.0, 0.0])))
off = RadialEndo(OrbitMeasure(3, [(1.5, 0.0, 1.0)]), M=8)
print("off-sphere orbit:", acts_as_scalar_on_radial(off),
      "; value:", radial_eval(off, Quad(1.0), np.array([0.0, 1.0, 0.0])))

# ------------------------------------------------- restriction to polytopes
# On 1-homogeneous inputs (support functions of polytopes) the operator
# induces a body-to-body map; sampling the image support function of a
# segment [-v, v] under the two-pole operator doubles it.
v = np.array([0.6, -0.2, 0.75])
seg = Max([Affine(v, 0.0), Affine(-v, 0.0)])
dirs = [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 1.0])]
vals = minkowski_restrict(two_pole, seg, dirs)
print("\nimage support values:", np.round(vals, 6),
      " expected:", [round(float(2 * abs(v @ u)), 6) for u in dirs])
