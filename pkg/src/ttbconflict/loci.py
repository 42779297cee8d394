"""Where two moving wave edges meet: loci, their traces on lines, and triple points.

A wave edge is used here only through its time function
``tau(p) = (G(p) - c) / s``.  The locus of two edges is ``tau_1 = tau_2``.
Squaring to clear the square roots can add spurious branches; callers
evaluate every candidate exactly, so extra points are harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point2
from .roots import evaluate, poly_add, poly_mul, poly_scale, real_roots, trim
from .waves import WaveEdge

DEGEN = 1e-12


def _line_form(e: WaveEdge, p0, d):
    """Along p0 + u d: circular -> coeffs of |p - center|^2; linear -> coeffs of n . p."""
    if e.circular:
        qx, qy = p0[0] - e.center.x, p0[1] - e.center.y
        return [qx * qx + qy * qy, 2 * (qx * d[0] + qy * d[1]), d[0] * d[0] + d[1] * d[1]]
    return [e.n[0] * p0[0] + e.n[1] * p0[1], e.n[0] * d[0] + e.n[1] * d[1]]


def locus_on_line(f: WaveEdge, g: WaveEdge, p0, d) -> list:
    """Polynomial in u whose roots include every u with tau_f = tau_g at p0 + u d."""
    if not f.circular and g.circular:
        f, g = g, f
    sf, sg, cf, cg = f.s, g.s, f.c, g.c
    if not f.circular:
        mf, mg = _line_form(f, p0, d), _line_form(g, p0, d)
        # (mf - cf) sg - (mg - cg) sf
        return poly_add(poly_scale(poly_add(mf, [-cf]), sg), poly_scale(poly_add(mg, [-cg]), -sf))
    A = _line_form(f, p0, d)
    if not g.circular:
        mg = _line_form(g, p0, d)
        M = poly_add(poly_scale(poly_add(mg, [-cg]), sf), [sg * cf])
        return poly_add(poly_scale(A, sg * sg), poly_scale(poly_mul(M, M), -1.0))
    B = _line_form(g, p0, d)
    K = sg * cf - sf * cg
    S = poly_add(poly_add(poly_scale(A, sg * sg), poly_scale(B, sf * sf)), [-K * K])
    return poly_add(poly_mul(S, S), poly_scale(poly_mul(A, B), -4 * sf * sf * sg * sg))


def locus_crossings(f: WaveEdge, g: WaveEdge, p0, d, u_lo: float, u_hi: float) -> list:
    """Points p0 + u d with u in [u_lo, u_hi] (ends may be infinite) on the f/g locus."""
    poly = trim(locus_on_line(f, g, p0, d))
    if len(poly) <= 1:
        return []
    us = real_roots(poly, u_lo, u_hi)
    return [Point2(p0[0] + u * d[0], p0[1] + u * d[1]) for u in us]


# --------------------------------------------------------------------------
# Triple points


def _equation(e: WaveEdge):
    """('lin', a, g(t)) meaning a . p = g(t), or ('circ', center, rho(t)) meaning |p - center| = rho(t)."""
    if e.circular:
        return ("circ", e.center, [e.c, e.s])
    return ("lin", e.n, [e.c, e.s])


def _line_circle(a, g, center, rho):
    """Intersections of the line a . p = g with the circle |p - center| = rho."""
    na = a[0] * a[0] + a[1] * a[1]
    if na < DEGEN or rho < 0:
        return []
    dist = (g - a[0] * center[0] - a[1] * center[1]) / math.sqrt(na)
    ux, uy = a[0] / math.sqrt(na), a[1] / math.sqrt(na)
    foot = (center[0] + dist * ux, center[1] + dist * uy)
    h2 = rho * rho - dist * dist
    if h2 < -1e-9 * max(1.0, rho * rho):
        return []
    h = math.sqrt(max(h2, 0.0))
    return [Point2(foot[0] - h * uy, foot[1] + h * ux), Point2(foot[0] + h * uy, foot[1] - h * ux)]


def _circle_samples(center, rho):
    if rho < 0:
        return []
    return [Point2(center[0] + rho * math.cos(k * math.pi / 2), center[1] + rho * math.sin(k * math.pi / 2))
            for k in range(4)]


def triple_points(e1: WaveEdge, e2: WaveEdge, e3: WaveEdge, t_bound: float | None = None) -> list:
    """Points where three time functions agree."""
    eqs = [_equation(e) for e in (e1, e2, e3)]
    circs = [q for q in eqs if q[0] == "circ"]
    lins = [q for q in eqs if q[0] == "lin"]
    lo, hi = (-t_bound, t_bound) if t_bound else (None, None)
    if not circs:
        return _three_lines(lins)
    base = circs[0]
    bc, brho = base[1], base[2]
    rows = []  # (a, g(t)) with a . p = g(t)
    for _, n, gq in lins:
        rows.append(((n[0], n[1]), gq))
    for _, c, rho in circs[1:]:
        a = (2 * (c[0] - bc[0]), 2 * (c[1] - bc[1]))
        gq = poly_add(
            [c[0] ** 2 + c[1] ** 2 - bc[0] ** 2 - bc[1] ** 2],
            poly_add(poly_scale(poly_mul(rho, rho), -1.0), poly_mul(brho, brho)),
        )
        # |p-c|^2 - |p-b|^2 = rho_c^2 - rho_b^2  ->  -2(c-b).p + |c|^2 - |b|^2 = rho_c^2 - rho_b^2
        rows.append((a, gq))
    (a1, g1), (a2, g2) = rows
    n1, n2 = math.hypot(*a1), math.hypot(*a2)
    det = a1[0] * a2[1] - a1[1] * a2[0]
    scale = max(n1 * n2, 1e-300)
    pts = []
    if n1 > DEGEN and n2 > DEGEN and abs(det) > 1e-12 * scale:
        px = poly_scale(poly_add(poly_scale(g1, a2[1]), poly_scale(g2, -a1[1])), 1.0 / det)
        py = poly_scale(poly_add(poly_scale(g2, a1[0]), poly_scale(g1, -a2[0])), 1.0 / det)
        dx, dy = poly_add(px, [-bc[0]]), poly_add(py, [-bc[1]])
        quart = poly_add(poly_add(poly_mul(dx, dx), poly_mul(dy, dy)), poly_scale(poly_mul(brho, brho), -1.0))
        for t in real_roots(quart, lo, hi):
            pts.append(Point2(evaluate(px, t), evaluate(py, t)))
        return pts
    # Degenerate: the two linear equations do not pin p for a given t.
    if n1 <= DEGEN or n2 <= DEGEN:
        zero_g, other = (g1, (a2, g2)) if n1 <= DEGEN else (g2, (a1, g1))
        ts = real_roots(zero_g, lo, hi) if len(trim(zero_g)) > 1 else []
        for t in ts:
            rho = evaluate(brho, t)
            a, g = other
            if math.hypot(*a) > DEGEN:
                pts += _line_circle(a, evaluate(g, t), bc, rho)
            else:
                pts += _circle_samples(bc, rho)
        return pts
    lam = (a2[0] * a1[0] + a2[1] * a1[1]) / (n1 * n1)
    comb = poly_add(poly_scale(g1, lam), poly_scale(g2, -1.0))
    ts = real_roots(comb, lo, hi) if len(trim(comb)) > 1 else []
    for t in ts:
        pts += _line_circle(a1, evaluate(g1, t), bc, evaluate(brho, t))
    return pts


def _three_lines(lins):
    m = [[n[0], n[1], -g[1]] for _, n, g in lins]
    rhs = [g[0] for _, _, g in lins]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    if abs(det) < 1e-14:
        return []
    sol = []
    for col in range(2):
        mc = [row[:] for row in m]
        for i in range(3):
            mc[i][col] = rhs[i]
        dc = (
            mc[0][0] * (mc[1][1] * mc[2][2] - mc[1][2] * mc[2][1])
            - mc[0][1] * (mc[1][0] * mc[2][2] - mc[1][2] * mc[2][0])
            + mc[0][2] * (mc[1][0] * mc[2][1] - mc[1][1] * mc[2][0])
        )
        sol.append(dc / det)
    return [Point2(sol[0], sol[1])]


# --------------------------------------------------------------------------
# Lagrange lines: where the two gradients are parallel


def lagrange_points(f: WaveEdge, g: WaveEdge) -> list:
    """Locus points at which tau_f restricted to the f/g locus can be extremal."""
    if not f.circular and not g.circular:
        return []
    if not f.circular:
        f, g = g, f
    if g.circular:
        dx, dy = g.center.x - f.center.x, g.center.y - f.center.y
        L = math.hypot(dx, dy)
        if L < DEGEN:
            # concentric: locus is a circle |p - c| = rho with (rho - cf)/sf = (rho - cg)/sg
            den = g.s - f.s
            if abs(den) < DEGEN:
                return []
            rho = (f.c * g.s - g.c * f.s) / den
            return _circle_samples(f.center, rho)
        d = (dx / L, dy / L)
    else:
        L = math.hypot(*g.n)
        if L < DEGEN:
            return []
        d = (g.n[0] / L, g.n[1] / L)
    return locus_crossings(f, g, f.center, d, -math.inf, math.inf)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LocusCurve:
    """Implicit description of {tau_1 = tau_2} with time back-substitution."""

    e1: WaveEdge
    e2: WaveEdge

    @property
    def degree(self) -> int:
        k = int(self.e1.circular) + int(self.e2.circular)
        return {0: 1, 1: 2, 2: 4}[k]

    def implicit(self, p) -> float:
        f, g = self.e1, self.e2
        if not f.circular and g.circular:
            f, g = g, f
        x, y = p
        if not f.circular:
            return (f.n[0] * x + f.n[1] * y - f.c) * g.s - (g.n[0] * x + g.n[1] * y - g.c) * f.s
        A = (x - f.center.x) ** 2 + (y - f.center.y) ** 2
        if not g.circular:
            M = f.s * (g.n[0] * x + g.n[1] * y - g.c) + g.s * f.c
            return g.s ** 2 * A - M * M
        B = (x - g.center.x) ** 2 + (y - g.center.y) ** 2
        K = g.s * f.c - f.s * g.c
        S = g.s ** 2 * A + f.s ** 2 * B - K * K
        return S * S - 4 * f.s ** 2 * g.s ** 2 * A * B

    def residual(self, p) -> float:
        return self.e1.time(p) - self.e2.time(p)

    def time(self, p) -> float:
        return self.e1.time(p)

    def line_polynomial(self, p0, d) -> list:
        return locus_on_line(self.e1, self.e2, p0, d)

    def points_on_line(self, p0, d, u_lo=-math.inf, u_hi=math.inf, exact_only: bool = True) -> list:
        pts = locus_crossings(self.e1, self.e2, p0, d, u_lo, u_hi)
        if exact_only:
            pts = [p for p in pts if abs(self.residual(p)) <= 1e-7 * (1 + abs(self.time(p)))]
        return pts


def loci_curve(e1: WaveEdge, e2: WaveEdge) -> LocusCurve:
    return LocusCurve(e1, e2)
