"""Real roots of low-degree polynomials by derivative-based isolation and bisection.

Coefficients are given lowest degree first: ``c[0] + c[1] x + c[2] x^2 + ...``.
"""

from __future__ import annotations

import math

ROOT_TOL = 1e-10


def trim(coeffs, rel: float = 1e-14) -> list:
    """Drop leading coefficients that are negligible against the largest one."""
    c = [float(v) for v in coeffs]
    big = max((abs(v) for v in c), default=0.0)
    while c and abs(c[-1]) <= rel * big:
        c.pop()
    return c


def evaluate(coeffs, x: float) -> float:
    acc = 0.0
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


def derivative(coeffs) -> list:
    return [i * coeffs[i] for i in range(1, len(coeffs))]


def cauchy_bound(coeffs) -> float:
    """All real roots lie in [-B, B]."""
    c = trim(coeffs)
    if len(c) <= 1:
        return 0.0
    lead = abs(c[-1])
    return 1.0 + max(abs(v) / lead for v in c[:-1])


def _bisect(coeffs, a, b, fa):
    for _ in range(200):
        m = 0.5 * (a + b)
        if not a < m < b:
            break
        fm = evaluate(coeffs, m)
        if fm == 0.0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _magnitude(coeffs, x):
    # unit floor on |x| so a double root at 0 is still seen
    ax = max(1.0, abs(x))
    return sum(abs(v) * ax ** i for i, v in enumerate(coeffs))


def real_roots(coeffs, lo: float | None = None, hi: float | None = None, tol: float = ROOT_TOL,
               touch_rel: float = 1e-9) -> list:
    """Sorted real roots in [lo, hi], including near-tangent double roots.

    Missing bounds default to the Cauchy bound.  ``tol`` is relative to
    max(1, |interval end|).
    """
    c = trim(coeffs)
    if not c:
        # identically zero: every point is a root; report the ends
        return [v for v in (lo, hi) if v is not None and math.isfinite(v)]
    B = cauchy_bound(c)
    lo = -B if lo is None or lo == -math.inf else lo
    hi = B if hi is None or hi == math.inf else hi
    if hi < lo:
        return []
    lo_c, hi_c = max(lo, -B), min(hi, B)
    if len(c) == 1:
        return []
    if len(c) == 2:
        x = -c[0] / c[1]
        return [x] if lo - tol <= x <= hi + tol else []
    if hi_c < lo_c:
        return []
    eps = tol * max(1.0, abs(lo_c), abs(hi_c))
    crit = real_roots(derivative(c), lo_c, hi_c, tol, touch_rel)
    knots = [lo_c] + [x for x in crit if lo_c < x < hi_c] + [hi_c]
    roots = []
    for a, b in zip(knots, knots[1:]):
        fa, fb = evaluate(c, a), evaluate(c, b)
        if fa == 0.0:
            roots.append(a)
        elif (fa < 0) != (fb < 0) and fb != 0.0:
            roots.append(_bisect(c, a, b, fa))
    if evaluate(c, hi_c) == 0.0:
        roots.append(hi_c)
    # tangential contacts: extrema that nearly touch zero
    for x in crit:
        if abs(evaluate(c, x)) <= touch_rel * max(_magnitude(c, x), 1e-300):
            roots.append(x)
    roots.sort()
    out = []
    for x in roots:
        if not out or x - out[-1] > eps:
            out.append(x)
    return out


def poly_mul(a, b) -> list:
    out = [0.0] * (len(a) + len(b) - 1) if a and b else []
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def poly_add(a, b) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0.0) + (b[i] if i < len(b) else 0.0) for i in range(n)]


def poly_scale(a, k) -> list:
    return [k * v for v in a]
