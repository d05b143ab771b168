"""Extended-real arithmetic helpers.

Values live in (-inf, +inf]: +inf is a legal function value, -inf never is.
Plain Python floats already give total comparisons with +inf maximal; the
helpers below keep sums NaN-free by short-circuiting on +inf.
"""

import math

INF = math.inf


def is_finite(x):
    return -INF < x < INF


def ext_add(a, b):
    """Sum in (-inf, +inf]: anything plus +inf is +inf."""
    if a == INF or b == INF:
        return INF
    return a + b


def ext_sum(values):
    total = 0.0
    for v in values:
        if v == INF:
            return INF
        total += v
    return total
