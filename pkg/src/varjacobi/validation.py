"""Weak zero-asymptotics checks: masses, r-estimation, transport distances.

The normalized zero counting measures of P_n^(alpha_n, beta_n) converge to a
unit measure supported on an arc (case C2) or on a segment plus a level loop
around z=1 (case C3), where the loop's level r is set by how fast alpha_n
approaches the integers.  This module integrates the limit densities over
the traced contours, estimates r, and compares computed zero clouds with the
limit measure by Hausdorff and assignment-transport distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .engine import EmpiricalMeasure, ZeroSet
from .errors import NumericalError, UnsupportedCaseError
from .fields import FieldContext
from .geometry import Contour, trace_level_curve
from .params import Case
from .paths import gl_nodes, point_in_polygon, sqrt_start_panel, subdivide_chord


@dataclass(frozen=True)
class RParameter:
    """Level parameter r in [0, inf] with its provenance."""

    r: float
    source: str = "estimated"


def estimate_r(alpha: float, n: int) -> RParameter:
    """r_hat = -ln dist(alpha, Z) / n; integer alpha maps to r = inf."""
    if n < 1:
        raise ValueError("n >= 1 required")
    dist = abs(alpha - round(alpha))
    if dist == 0.0:
        return RParameter(math.inf)
    return RParameter(-math.log(dist) / n)


# ---------------------------------------------------------------- masses ---

def segment_mass(ctx: FieldContext) -> float:
    """mu of [zeta1, zeta2] by quadrature with the sqrt endpoints removed.

    Substituting x = c + h cos(theta) turns the density into a smooth
    integrand: mass = (A+B+2)/(2 pi) * int_0^pi h^2 sin^2 theta / (1-x^2) dtheta.
    """
    if ctx.case != Case.C3:
        raise UnsupportedCaseError("segment component only exists in case C3")
    z1, z2 = ctx.z1.real, ctx.z2.real
    c, h = 0.5 * (z1 + z2), 0.5 * (z2 - z1)
    x, w = gl_nodes(80)
    theta = 0.5 * math.pi * (x + 1.0)
    xs = c + h * np.cos(theta)
    vals = h * h * np.sin(theta) ** 2 / (1.0 - xs * xs)
    return float((2.0 * ctx.k2) / (2.0 * math.pi) * 0.5 * math.pi * np.sum(w * vals))


def _integrate_along(ctx: FieldContext, pts: np.ndarray, g) -> complex:
    """int g(t, R_+(t)) dt along a support polyline.

    R_+ is the reference branch (the boundary value from the '+' side on the
    C2 arc, the one-sided limit irrelevant elsewhere since R is continuous
    near the curve).  Chords touching a branch point get the sqrt-resolved
    panel; the interior is plain tracked Gauss-Legendre.
    """
    from .paths import integrate_tracked

    def is_bp(z):
        return abs(z - ctx.z1) < 1e-12 or abs(z - ctx.z2) < 1e-12

    total = 0.0 + 0.0j
    lo = 0
    hi = len(pts)
    rv = None
    if is_bp(pts[0]):
        inc, rv = sqrt_start_panel(g, ctx.rsq, pts[0], pts[1], ctx.rsq.reference(pts[1]))
        total += inc
        lo = 1
    tail = None
    if is_bp(pts[-1]):
        hi = len(pts) - 1
        tail = (pts[-1], pts[-2])
    body = pts[lo:hi]
    if rv is None:
        rv = complex(ctx.rsq.reference(body[0]))
    if len(body) > 1:
        inc, rv = integrate_tracked(g, ctx.rsq, body, rv, ctx.singular)
        total += inc
    if tail is not None:
        inc, _ = sqrt_start_panel(g, ctx.rsq, tail[0], tail[1], rv)
        total -= inc
    return total


def curve_mass(ctx: FieldContext, contour: Contour) -> float:
    """mu_r of a level loop or of the C2 arc, integrated along the polyline.

    The integrand is analytic in a neighborhood of the curve (the reference
    branch's cut is elsewhere), so polyline deformation error is absent and
    only panel quadrature error remains.
    """
    k = (2.0 * ctx.k2) / (2j * math.pi)

    def g(t, rv):
        return k * rv / (1.0 - t * t)

    total = _integrate_along(ctx, contour.points, g)
    if abs(total.imag) > 1e-8:
        raise NumericalError(f"curve mass should be real, got {total}")
    return float(total.real)


@dataclass
class MassReport:
    total: float
    segment: float | None
    curve: float
    atom_at_one: float = 0.0


def mass_identities(ctx: FieldContext, r: float = 0.0) -> MassReport:
    """Component masses of mu_r: total 1; in C3 segment 1+A and loop -A.

    r = inf replaces the loop by the Dirac atom -A delta_1 (handled
    analytically, only the segment is integrated).
    """
    if ctx.case == Case.C2:
        if r != 0.0:
            raise UnsupportedCaseError("case C2 carries only the r=0 measure")
        m = curve_mass(ctx, ctx.geo.gamma)
        return MassReport(total=m, segment=None, curve=m)
    seg = segment_mass(ctx)
    if math.isinf(r):
        atom = -ctx.A
        return MassReport(total=seg + atom, segment=seg, curve=0.0, atom_at_one=atom)
    contour = ctx.geo.gamma if r == 0.0 else trace_level_curve(ctx.pair, r, geometry=ctx.geo)
    cm = curve_mass(ctx, contour)
    return MassReport(total=seg + cm, segment=seg, curve=cm)


# ------------------------------------------------- empirical comparison ----

@dataclass
class DiscrepancyReport:
    mass_on_segment: float
    mass_on_curve: float
    transport_distance: float
    hausdorff_to_support: float


def _support_polylines(ctx: FieldContext, r: float) -> list[np.ndarray]:
    if ctx.case == Case.C2:
        return [ctx.geo.gamma.points]
    curve = ctx.geo.gamma if r == 0.0 else trace_level_curve(ctx.pair, r, geometry=ctx.geo)
    return [ctx.geo.segment.points, curve.points]


def _dist_to_polyline(z: complex, poly: np.ndarray) -> float:
    from .paths import polyline_point_distance

    return polyline_point_distance(z, poly)


def _discretize_mu(ctx: FieldContext, r: float, n: int) -> np.ndarray:
    """n atoms of mu_r placed at equal-mass quantiles along its support."""
    supports = _support_polylines(ctx, r)
    if ctx.case == Case.C2:
        counts = [n]
    else:
        n_seg = int(round(n * (1.0 + ctx.A)))
        counts = [n_seg, n - n_seg]
    atoms = []
    for poly, m in zip(supports, counts):
        if m == 0:
            continue
        dens = _arclength_density(ctx, poly)
        cum = np.concatenate([[0.0], np.cumsum(dens)])
        cum /= cum[-1]
        s_targets = (np.arange(m) + 0.5) / m
        seg_s = np.interp(s_targets, cum, np.arange(len(cum), dtype=float))
        idx = np.clip(seg_s.astype(int), 0, len(poly) - 2)
        frac = seg_s - idx
        atoms.extend(poly[idx] + frac * (poly[idx + 1] - poly[idx]))
    return np.array(atoms)


def _arclength_density(ctx: FieldContext, poly: np.ndarray) -> np.ndarray:
    """Per-chord mass of mu along a support polyline (midpoint rule)."""
    mids = 0.5 * (poly[:-1] + poly[1:])
    lens = np.abs(np.diff(poly))
    rv = ctx.rsq.reference(mids)
    tan = np.diff(poly)
    vals = (2.0 * ctx.k2) / (2j * math.pi) * rv * tan / (1.0 - mids * mids)
    w = np.abs(vals.real)
    return np.where(lens > 0, w, 0.0)


def compare_weak(em: EmpiricalMeasure, ctx: FieldContext, r: RParameter) -> DiscrepancyReport:
    """Distance between a zero cloud and mu_r on its traced support.

    Component masses are assigned by the nearest support component; the
    transport distance is the mean |z - w| over an optimal matching between
    the cloud and an equal-mass discretization of mu_r.
    """
    rr = 0.0 if math.isinf(r.r) else r.r
    supports = _support_polylines(ctx, rr)
    atoms = em.atoms
    n = len(atoms)
    d = np.array([[_dist_to_polyline(z, poly) for poly in supports] for z in atoms])
    nearest = np.argmin(d, axis=1)
    hausdorff = float(np.max(np.min(d, axis=1)))
    if ctx.case == Case.C2:
        mass_seg, mass_curve = 0.0, 1.0
    else:
        mass_seg = float(np.sum(nearest == 0)) / n
        mass_curve = float(np.sum(nearest == 1)) / n
    mu_atoms = _discretize_mu(ctx, rr, n)
    cost = np.abs(atoms[:, None] - mu_atoms[None, :])
    rows, cols = linear_sum_assignment(cost)
    transport = float(cost[rows, cols].mean())
    return DiscrepancyReport(
        mass_on_segment=mass_seg,
        mass_on_curve=mass_curve,
        transport_distance=transport,
        hausdorff_to_support=hausdorff,
    )


def real_zero_count(zs: ZeroSet, alpha: float, n: int) -> tuple[int, int]:
    """Observed and expected number of zeros in (-1, 1).

    The classical exact count for -n < alpha < 0, beta > -1 is n - [-alpha]
    real zeros inside (-1, 1); observed zeros are those with |Im z| below
    the solver noise floor.
    """
    pts = zs.as_complex()
    observed = int(np.sum((np.abs(pts.imag) < 1e-10) & (np.abs(pts.real) < 1.0)))
    expected = n - math.floor(-alpha)
    return observed, expected


def nonreal_zeros_inside(zs: ZeroSet, contour: Contour) -> bool:
    """Are all non-real zeros strictly inside the given closed contour?"""
    pts = zs.as_complex()
    nonreal = pts[np.abs(pts.imag) >= 1e-10]
    return all(point_in_polygon(z, contour.points) for z in nonreal)


# -------------------------------------------------- analytic sanity checks -

def riccati_residual(ctx: FieldContext, r: float, points: np.ndarray) -> float:
    """Residual of (1-z^2) h^2 + [B-A-(A+B)z] h + (A+B+1) for h = Cauchy(mu_r).

    h is computed by direct quadrature over the discretized support, so this
    cross-checks densities, contours and the algebra at once.
    """
    A, B = ctx.A, ctx.B
    curve = None
    if ctx.case == Case.C3:
        curve = ctx.geo.gamma if r == 0.0 else trace_level_curve(ctx.pair, r, geometry=ctx.geo)
    worst = 0.0
    for z in points:
        h = cauchy_transform(ctx, r, z, curve=curve)
        res = (1 - z * z) * h * h + (B - A - (A + B) * z) * h + (A + B + 1)
        worst = max(worst, abs(res))
    return worst


def cauchy_transform(ctx: FieldContext, r: float, z: complex,
                     curve: Contour | None = None) -> complex:
    """int d mu_r(t) / (z - t) by quadrature over the traced support."""
    total = 0.0 + 0.0j
    if ctx.case == Case.C3:
        z1, z2 = ctx.z1.real, ctx.z2.real
        c, h = 0.5 * (z1 + z2), 0.5 * (z2 - z1)
        x, w = gl_nodes(120)
        theta = 0.5 * math.pi * (x + 1.0)
        xs = c + h * np.cos(theta)
        dens = h * h * np.sin(theta) ** 2 / (1.0 - xs * xs)
        total += (2.0 * ctx.k2) / (2.0 * math.pi) * 0.5 * math.pi \
            * np.sum(w * dens / (z - xs))
        if curve is None:
            curve = ctx.geo.gamma if r == 0.0 else trace_level_curve(ctx.pair, r,
                                                                     geometry=ctx.geo)
        pts = curve.points
    else:
        pts = ctx.geo.gamma.points
    k = (2.0 * ctx.k2) / (2j * math.pi)

    def g(t, rv):
        return k * rv / ((1.0 - t * t) * (z - t))

    return total + _integrate_along(ctx, pts, g)


# ------------------------------------------------------- orthogonality -----

def orthogonality_residuals(n: int, alpha: float, beta: float, dps: int = 30,
                            nodes_per_chord: int = 12):
    """Moments int_C t^k P_n w^2 dt for k=0..n over the geometry contour.

    C is the arc joining -1 + 0i to -1 - 0i around z=1 once: gamma+ u Gamma
    u gamma- in case C2, and the segment [-1, zeta2] traversed on both sides
    plus Gamma in case C3.  Residuals for k < n are normalized by the total
    variation of the integrand; the k = n moment is reported as-is (it must
    stay away from zero).  beta > 0 keeps the endpoint integrable.
    """
    import mpmath as mp

    from .engine import build_poly, eval_poly
    from .geometry import build_geometry
    from .params import ParamPair, classify

    if beta <= 0:
        raise ValueError("orthogonality relation needs beta > 0")
    pair = ParamPair(alpha / n, beta / n)
    tag = classify(pair).tag
    if tag not in (Case.C2, Case.C3):
        raise UnsupportedCaseError(f"no single-contour orthogonality for {classify(pair)}")
    geo = build_geometry(pair)
    spec = build_poly(n, alpha, beta)

    with mp.workdps(dps):
        def w2(t):
            return mp.exp(alpha * mp.log(t - 1) + beta * mp.log(t + 1))

        def poly_at(t):
            return eval_poly(spec, t) * spec.lead_coeff

        res = [mp.mpc(0) for _ in range(n + 1)]
        tv = [mp.mpf(0) for _ in range(n + 1)]

        def add_polyline(pts, weight_fn):
            # coarsen: the integrand is analytic near the curve, so a nearby
            # polyline with the same endpoints integrates to the same value
            stride = max(1, len(pts) // 120)
            if stride > 1:
                pts = np.concatenate([pts[::stride], pts[-1:]])
            xg, wg = gl_nodes(nodes_per_chord)
            for aa, bb in zip(pts[:-1], pts[1:]):
                pieces = subdivide_chord(aa, bb, np.array([-1.0, 1.0]), ratio=0.8)
                for p, q in zip(pieces[:-1], pieces[1:]):
                    mid, half = 0.5 * (p + q), 0.5 * (q - p)
                    for xx, ww in zip(xg, wg):
                        t = mp.mpc(mid + half * xx)
                        base = weight_fn(t) * poly_at(t) * mp.mpc(half) * ww
                        for k in range(n + 1):
                            term = base * t ** k
                            res[k] += term
                            tv[k] += abs(term)

        if tag == Case.C2:
            gp, gm = geo.orth[0].points, geo.orth[1].points
            add_polyline(gp[::-1], w2)              # -1 -> zeta1
            add_polyline(geo.gamma.points, w2)      # zeta1 -> zeta2
            add_polyline(gm, w2)                    # zeta2 -> -1
        else:
            z2 = geo.bp.zeta2.real
            seg = np.linspace(-1.0, z2, 400)

            def w2_jump(t):
                # (w_+^2 - w_-^2)(t) on (-1, zeta2): 2i sin(pi alpha) |t-1|^a (t+1)^b
                return (2j * mp.sin(mp.pi * alpha)
                        * mp.exp(alpha * mp.log(abs(t - 1)) + beta * mp.log(t + 1)))

            add_polyline(seg, w2_jump)
            add_polyline(geo.gamma.points, w2)

        out = []
        for k in range(n + 1):
            scale = tv[k] if tv[k] > 0 else mp.mpf(1)
            out.append(float(abs(res[k]) / scale) if k < n else float(abs(res[k]) / scale))
        return out
