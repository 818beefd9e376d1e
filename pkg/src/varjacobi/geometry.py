"""Branch points and trajectories of the quadratic differential.

The quadratic differential -(z-zeta1)(z-zeta2)/(z^2-1)^2 dz^2 has simple
zeros at the branch points and double poles at +-1 and infinity.  Its
critical trajectories are the level set Re Phi = 0 of the phase integral

    Phi(z) = (A+B+2)/2 * int_{zeta2}^z R(t)/(t^2-1) dt,

continued analytically along paths, and the level sets Re Phi = -r/2 give
the shrinking loops around z=1 that carry the zeros when the parameters
approach integers exponentially fast.  Curves are traced by a tangent
predictor with a Newton corrector on the level condition, carrying the
branch of R by continuity, and every traced polyline is re-verified against
the defining integral.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import TopologyError, UnsupportedCaseError
from .params import Case, CaseClass, ParamPair, classify
from .paths import (
    BranchedSqrt,
    chord_hits_polyline,
    gl_nodes,
    integrate_tracked,
    point_in_polygon,
    polyline_point_distance,
    sqrt_start_panel,
    subdivide_chord,
)

_LEVEL_TOL = 1e-12
_MAX_STEPS = 100_000


@dataclass(frozen=True)
class BranchPoints:
    zeta1: complex
    zeta2: complex


def branch_points(p: ParamPair) -> BranchPoints:
    """Soft edges zeta_{1,2} = [B^2-A^2 +- 4 sqrt((A+1)(B+1)(A+B+1))] / (A+B+2)^2.

    Case C2 yields a conjugate pair with zeta1 in the upper half plane; case
    C3 yields -1 < zeta1 < zeta2 < 1.
    """
    tag = classify(p).tag
    if tag not in (Case.C2, Case.C3):
        raise UnsupportedCaseError(f"case not supported by geometry: {classify(p)}")
    A, B = p.A, p.B
    disc = (A + 1.0) * (B + 1.0) * (A + B + 1.0)
    den = (A + B + 2.0) ** 2
    base = (B * B - A * A) / den
    root = 4.0 * cmath.sqrt(complex(disc)) / den
    if tag == Case.C2:
        z1 = base + root if root.imag > 0 else base - root
        return BranchPoints(z1, z1.conjugate())
    lo, hi = base - root.real, base + root.real
    return BranchPoints(complex(lo), complex(hi))


@dataclass
class Contour:
    """Polyline representation of one trajectory piece.

    kind is one of Gamma, GammaR, Segment, GammaPlusOrth, GammaMinusOrth;
    GammaR carries its level r.  anchor_phi is the phase-integral value at
    points[0] continued from zeta2, kept for residual re-verification.
    """

    kind: str
    points: np.ndarray
    closed: bool
    orientation: str = ""
    r: float | None = None
    anchor_phi: complex = 0.0

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)


class _Phase:
    """Incremental evaluation of Phi along polylines with branch-tracked R."""

    def __init__(self, pair: ParamPair, bp: BranchPoints):
        self.pair = pair
        self.bp = bp
        self.k2 = (pair.A + pair.B + 2.0) / 2.0
        self.rsq = BranchedSqrt(bp.zeta1, bp.zeta2)
        self.singular = np.array([bp.zeta1, bp.zeta2, 1.0, -1.0])
        self.scale = abs(bp.zeta2 - bp.zeta1)

    def integrand(self, t, rv):
        return self.k2 * rv / (t * t - 1.0)

    def dphi(self, z, rv):
        return self.k2 * rv / (z * z - 1.0)

    def from_branch_point(self, zeta: complex, z: complex, r_match: complex):
        """Phi increment for the chord zeta -> z resolving the sqrt start."""
        return sqrt_start_panel(self.integrand, self.rsq, zeta, z, r_match)

    def increment(self, a: complex, b: complex, r_at_a: complex, order: int = 16):
        val, r_end = integrate_tracked(
            self.integrand, self.rsq, np.array([a, b]), r_at_a, self.singular, order=order
        )
        return val, r_end


@dataclass
class _TraceState:
    z: complex
    rv: complex
    phi: complex
    direction: complex


class _Tracer:
    """Predictor-corrector tracer for Re Phi (mode 'level') or Im Phi ('orth')."""

    def __init__(self, phase: _Phase, mode: str = "level"):
        self.ph = phase
        self.mode = mode
        self.h_max = 0.02 * phase.scale

    def _proj(self, w: complex) -> float:
        return w.real if self.mode == "level" else w.imag

    def _grad(self, dphi: complex) -> complex:
        g = dphi.conjugate()
        return g if self.mode == "level" else 1j * g

    def _tangent(self, z: complex, rv: complex) -> complex:
        t = (z * z - 1.0) / rv
        if self.mode == "level":
            t = 1j * t
        return t / abs(t)

    def correct(self, st: _TraceState, c: float, iters: int = 3):
        """Newton projection of st onto the level set {proj(Phi) = c}."""
        z, rv, phi = st.z, st.rv, st.phi
        for _ in range(iters):
            g = self._proj(phi) - c
            dp = self.ph.dphi(z, rv)
            grad = self._grad(dp)
            step = -g * grad / abs(grad) ** 2
            if abs(step) < 1e-17 * (1 + abs(z)):
                break
            dphi, rv = self.ph.increment(z, z + step, rv, order=8)
            z = z + step
            phi = phi + dphi
            if abs(self._proj(phi) - c) < _LEVEL_TOL:
                break
        return _TraceState(z, rv, phi, st.direction), abs(self._proj(phi) - c)

    def step(self, st: _TraceState, c: float):
        h = min(self.h_max, 0.35 * float(np.min(np.abs(self.ph.singular - st.z))))
        for _ in range(30):
            tan = self._tangent(st.z, st.rv)
            if (tan.conjugate() * st.direction).real < 0:
                tan = -tan
            z_pred = st.z + h * tan
            dphi, r_pred = self.ph.increment(st.z, z_pred, st.rv, order=8)
            trial = _TraceState(z_pred, r_pred, st.phi + dphi, tan)
            trial, resid = self.correct(trial, c)
            turn = abs(cmath.phase((trial.z - st.z) / st.direction)) if st.direction else 0.0
            if resid < _LEVEL_TOL and turn <= math.radians(15.0):
                trial.direction = (trial.z - st.z) / abs(trial.z - st.z)
                return trial
            h *= 0.5
        raise TopologyError(
            "tracer stalled", {"z": st.z, "residual": resid, "h": h, "mode": self.mode}
        )


def _cone_directions(phase: _Phase, zeta: complex, mode: str):
    """Departure angles of the three trajectories at a branch point.

    Locally Phi ~ C (z-zeta)^{3/2}; trajectories leave where the projected
    part of C e^{3 i theta / 2} vanishes, three directions 120 deg apart.
    """
    other = phase.bp.zeta1 if zeta == phase.bp.zeta2 else phase.bp.zeta2
    S0 = cmath.sqrt(zeta - other)
    C = (2.0 / 3.0) * phase.k2 * S0 / (zeta * zeta - 1.0)
    arg_c = cmath.phase(C)
    if mode == "level":
        base = [(2.0 / 3.0) * (math.pi / 2 - arg_c + k * math.pi) for k in range(3)]
    else:
        base = [(2.0 / 3.0) * (k * math.pi - arg_c) for k in range(3)]
    return [math.remainder(t, 2 * math.pi) for t in base]


def _trace_from_cone(phase: _Phase, zeta: complex, theta: float, mode: str,
                     stop_axis: bool = True, pole_snap: float | None = None):
    """Trace one arc leaving `zeta` at angle theta until a stopping event.

    Returns (points, phis, event) with event in {'axis', 'branch', 'pole'};
    the start point zeta is included, the terminal point is refined (axis
    crossings solved to Im z = 0, branch/pole endpoints snapped).
    """
    tracer = _Tracer(phase, mode)
    d0 = 2e-3 * phase.scale
    z0 = zeta + d0 * cmath.exp(1j * theta)
    r_match = phase.rsq.reference(z0)
    dphi, r0 = phase.from_branch_point(zeta, z0, r_match)
    st = _TraceState(z0, r0, dphi, cmath.exp(1j * theta))
    c = 0.0
    st, resid = tracer.correct(st, c, iters=6)
    if resid > 1e-10:
        raise TopologyError("cone start projection failed", {"zeta": zeta, "theta": theta})

    pts = [zeta, st.z]
    phis = [0.0 + 0.0j, st.phi]
    other = phase.bp.zeta1 if zeta == phase.bp.zeta2 else phase.bp.zeta2
    snap = 4e-3 * phase.scale
    for _ in range(_MAX_STEPS):
        prev = st
        st = tracer.step(st, c)
        if pole_snap is not None:
            d_pole = min(abs(st.z - 1.0), abs(st.z + 1.0))
            if d_pole < pole_snap:
                pole = 1.0 if abs(st.z - 1.0) < abs(st.z + 1.0) else -1.0
                pts.append(st.z)
                phis.append(st.phi)
                pts.append(complex(pole))
                phis.append(st.phi)  # phase diverges at the pole; kept for shape only
                return np.array(pts), np.array(phis), "pole"
        if stop_axis and prev.z.imag != 0 and (st.z.imag == 0 or (prev.z.imag > 0) != (st.z.imag > 0)):
            x_cross, phi_cross = _refine_axis_crossing(phase, tracer, prev, st, c)
            pts.append(complex(x_cross))
            phis.append(phi_cross)
            return np.array(pts), np.array(phis), "axis"
        if abs(st.z - other) < snap:
            pts.append(st.z)
            phis.append(st.phi)
            pts.append(other)
            phis.append(st.phi)
            return np.array(pts), np.array(phis), "branch"
        if abs(st.z) > 50.0 * (1.0 + abs(zeta)):
            raise TopologyError("trajectory escaped to infinity", {"z": st.z})
        pts.append(st.z)
        phis.append(st.phi)
    raise TopologyError("step budget exhausted", {"z": st.z, "steps": _MAX_STEPS})


def _refine_axis_crossing(phase, tracer, prev, cur, c):
    """Locate the real-axis crossing of the traced level curve by bisection."""
    lo, hi = prev, cur
    for _ in range(80):
        zm = 0.5 * (lo.z + hi.z)
        dphi, rm = phase.increment(lo.z, zm, lo.rv, order=8)
        mid = _TraceState(zm, rm, lo.phi + dphi, lo.direction)
        mid, _ = tracer.correct(mid, c)
        if abs(mid.z.imag) < 1e-14:
            return mid.z.real, mid.phi
        if (mid.z.imag > 0) == (lo.z.imag > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo.z.real + hi.z.real), 0.5 * (lo.phi + hi.phi)


@dataclass
class GeometryBundle:
    """Branch points, the contour system Sigma, and branch bookkeeping."""

    pair: ParamPair
    case: CaseClass
    bp: BranchPoints
    sigma: list
    orth: list | None = None
    x_star: float = math.nan
    _lens: np.ndarray | None = field(default=None, repr=False)
    _phase: _Phase | None = field(default=None, repr=False)

    @property
    def gamma(self) -> Contour:
        for c in self.sigma:
            if c.kind == "Gamma":
                return c
        raise LookupError("no Gamma contour in bundle")

    @property
    def segment(self) -> Contour | None:
        for c in self.sigma:
            if c.kind == "Segment":
                return c
        return None

    @property
    def scale(self) -> float:
        return abs(self.bp.zeta2 - self.bp.zeta1)

    def phase(self) -> _Phase:
        if self._phase is None:
            self._phase = _Phase(self.pair, self.bp)
        return self._phase

    # -- global branch of R ------------------------------------------------

    def in_lens(self, z: complex) -> bool:
        """Case C2: is z inside the region bounded by [zeta1,zeta2] and Gamma?"""
        if self._lens is None:
            raise UnsupportedCaseError("lens region only exists in case C2")
        return point_in_polygon(z, self._lens)

    def inside_gamma(self, z: complex) -> bool:
        """Case C3: is z in the bounded component surrounded by Gamma?"""
        return point_in_polygon(z, self.gamma.points)

    def sqrt_R(self, z: complex, side: str | None = None) -> complex:
        """R(z) = sqrt((z-zeta1)(z-zeta2)), cut along Gamma (C2) or [zeta1,zeta2] (C3).

        Normalized so R(z)/z -> 1 at infinity.  On-cut points need an
        explicit side ('+' is the left of the orientation from zeta1 to
        zeta2); off-cut points ignore `side`.
        """
        ref = complex(self.phase().rsq.reference(z))
        if self.case.tag == Case.C3:
            z1, z2 = self.bp.zeta1.real, self.bp.zeta2.real
            on_cut = z.imag == 0.0 and z1 < z.real < z2
            if on_cut:
                if side == "-":
                    return -ref  # reference evaluates to the upper (+) limit
                if side == "+":
                    return ref
                raise ValueError("on-cut evaluation of R requires side '+' or '-'")
            return ref
        # C2: sign flips inside the lens between the straight segment and Gamma
        near_gamma = polyline_point_distance(z, self.gamma.points) < 1e-11 * (1 + abs(z))
        if near_gamma:
            if side == "+":
                return ref
            if side == "-":
                return -ref
            raise ValueError("on-cut evaluation of R requires side '+' or '-'")
        return -ref if self.in_lens(z) else ref


def _gamma_contour_c3(phase: _Phase) -> tuple[Contour, float]:
    """Trace the closed critical loop around z=1 for case C3."""
    thetas = _cone_directions(phase, phase.bp.zeta2, "level")
    theta = min(thetas, key=lambda t: abs(t - math.pi / 3))
    pts, phis, event = _trace_from_cone(phase, phase.bp.zeta2, theta, "level")
    if event != "axis":
        raise TopologyError("Gamma trace did not return to the real axis", {"event": event})
    x_star = pts[-1].real
    if x_star <= 1.0:
        raise TopologyError("Gamma crossed the axis left of z=1", {"x": x_star})
    lower = np.conj(pts[::-1])[1:]
    closed = np.concatenate([pts, lower])
    contour = Contour(kind="Gamma", points=closed, closed=True, r=0.0,
                      orientation="clockwise around z=1, through zeta2")
    return contour, x_star


def _gamma_arcs_c2(phase: _Phase):
    """Trace the three critical arcs of case C2 from zeta2 and classify them."""
    arcs = []
    for theta in _cone_directions(phase, phase.bp.zeta2, "level"):
        pts, phis, event = _trace_from_cone(phase, phase.bp.zeta2, theta, "level")
        if event != "axis":
            raise TopologyError("C2 critical arc did not reach the real axis",
                                {"theta": theta, "event": event})
        arcs.append((pts[-1].real, pts))
    arcs.sort(key=lambda t: t[0])
    xs = [a[0] for a in arcs]
    ok = xs[0] < -1.0 and -1.0 < xs[1] < 1.0 and xs[2] > 1.0
    if not ok:
        raise TopologyError(
            "C2 arcs must cross (-inf,-1), (-1,1), (1,inf) once each",
            {"crossings": xs},
        )
    return arcs


def build_geometry(p: ParamPair) -> GeometryBundle:
    """Assemble Sigma (and the orthogonal arcs in C2) with verified topology."""
    case = classify(p)
    bp = branch_points(p)
    phase = _Phase(p, bp)

    if case.tag == Case.C3:
        gamma, x_star = _gamma_contour_c3(phase)
        n_seg = max(64, int(2 * phase.scale / (0.02 * phase.scale)))
        seg_pts = np.linspace(bp.zeta1, bp.zeta2, n_seg)
        segment = Contour(kind="Segment", points=seg_pts, closed=False,
                          orientation="from zeta1 to zeta2")
        bundle = GeometryBundle(pair=p, case=case, bp=bp, sigma=[segment, gamma],
                                x_star=x_star, _phase=phase)
        _verify_c3(bundle)
        return bundle

    arcs = _gamma_arcs_c2(phase)
    x_star, lower = arcs[2]
    upper = np.conj(lower)        # path from zeta1 down to the crossing
    gamma_pts = np.concatenate([upper, lower[::-1][1:]])
    gamma = Contour(kind="Gamma", points=gamma_pts, closed=False, r=0.0,
                    orientation="from zeta1 to zeta2, crossing (1,inf) downward")

    ortho = _cone_directions(phase, bp.zeta2, "orth")
    want = cmath.phase(-1.0 - bp.zeta2)
    theta_m = min(ortho, key=lambda t: abs(math.remainder(t - want, 2 * math.pi)))
    pts_m, _, event = _trace_from_cone(phase, bp.zeta2, theta_m, "orth",
                                       stop_axis=False, pole_snap=1e-3 * phase.scale)
    if event != "pole" or abs(pts_m[-1] + 1.0) > 1e-6:
        raise TopologyError("gamma- must join zeta2 with -1", {"end": pts_m[-1]})
    gamma_minus = Contour(kind="GammaMinusOrth", points=pts_m, closed=False,
                          orientation="from zeta2 to -1")
    gamma_plus = Contour(kind="GammaPlusOrth", points=np.conj(pts_m), closed=False,
                         orientation="from zeta1 to -1")

    lens = np.concatenate([[bp.zeta1, bp.zeta2], gamma_pts[::-1][1:]])
    bundle = GeometryBundle(pair=p, case=case, bp=bp, sigma=[gamma],
                            orth=[gamma_plus, gamma_minus], x_star=x_star,
                            _lens=lens, _phase=phase)
    _verify_c2(bundle)
    return bundle


def trace_level_curve(p: ParamPair, r: float, seed: complex | None = None,
                      geometry: GeometryBundle | None = None) -> Contour:
    """Trace the level curve |G w| = e^{r/2} around z=1 (the r-th zero carrier).

    For r=0 this is the critical loop Gamma itself (the only level supported
    in case C2); for r>0 (case C3) the closed curve lies strictly inside
    Gamma, found from a real seed on (1, x_star) unless one is supplied.
    """
    geo = geometry or build_geometry(p)
    if r < 0:
        raise ValueError("level parameter r must be >= 0")
    if r == 0:
        return geo.gamma
    if geo.case.tag != Case.C3:
        raise UnsupportedCaseError("r > 0 level curves only exist in case C3")

    phase = geo.phase()
    x_seed = seed.real if seed is not None else _seed_on_axis(geo, r)
    phi0 = _phi_interior_real(geo, x_seed)
    tracer = _Tracer(phase, "level")
    st = _TraceState(complex(x_seed), complex(phase.rsq.reference(x_seed)), phi0, 1j)
    c = -r / 2.0
    st, resid = tracer.correct(st, c, iters=6)
    if resid > 1e-10:
        raise TopologyError("level-curve seed projection failed", {"x": x_seed, "r": r})

    pts = [st.z]
    for _ in range(_MAX_STEPS):
        prev = st
        st = tracer.step(st, c)
        if prev.z.imag > 0 and st.z.imag <= 0:
            x_cross, _ = _refine_axis_crossing(phase, tracer, prev, st, c)
            pts.append(complex(x_cross))
            break
        pts.append(st.z)
    else:
        raise TopologyError("level curve failed to close", {"r": r})

    arr = np.array(pts)
    closed = np.concatenate([arr, np.conj(arr[::-1])[1:]])
    # orient clockwise around z=1 to match Gamma's convention
    if _winding_number(closed, 1.0) > 0:
        closed = closed[::-1]
    return Contour(kind="GammaR", points=closed, closed=True, r=r,
                   orientation="clockwise around z=1", anchor_phi=phi0)


def _phi_interior_real(geo: GeometryBundle, x: float) -> complex:
    """Phi at x in (1, x_star) continued from zeta2 through the interior."""
    phase = geo.phase()
    z2 = geo.bp.zeta2
    m = 0.5 * (z2.real + 1.0)
    rho = 0.5 * (1.0 - z2.real)
    val, rv = phase.from_branch_point(z2, complex(m), phase.rsq.reference(m))
    arc = 1.0 + rho * np.exp(1j * np.linspace(math.pi, 0.0, 13))
    path = np.concatenate([[m], arc[1:], [complex(x)]])
    inc, rv = integrate_tracked(phase.integrand, phase.rsq, path, rv, phase.singular)
    return val + inc


def _seed_on_axis(geo: GeometryBundle, r: float) -> float:
    """Solve Re Phi_int(x) = -r/2 on (1, x_star) by bisection plus Newton."""
    phase = geo.phase()
    target = -r / 2.0
    lo = 1.0 + 1e-8 * geo.scale
    hi = geo.x_star - 1e-10
    f_hi = _phi_interior_real(geo, hi).real - target
    if f_hi < 0:
        raise TopologyError("level exceeds the range reachable inside Gamma", {"r": r})
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = _phi_interior_real(geo, mid).real - target
        if f_mid > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-13 * geo.scale:
            break
    x = 0.5 * (lo + hi)
    for _ in range(4):  # Newton sharpening; d(Re Phi)/dx is available exactly
        rv = phase.rsq.reference(x)
        fp = (phase.k2 * rv / (x * x - 1.0)).real
        fx = _phi_interior_real(geo, x).real - target
        step = fx / fp
        if abs(step) > 0.25 * (geo.x_star - 1.0):
            break
        x -= step
        if abs(step) < 1e-15:
            break
    return float(x)


def _winding_number(poly: np.ndarray, center: complex) -> int:
    w = np.angle((poly[1:] - center) / (poly[:-1] - center)).sum()
    return int(round(w / (2 * math.pi)))


def level_residual(geo: GeometryBundle, contour: Contour) -> float:
    """Max deviation of Re Phi along the polyline from the contour's level.

    Independent re-check of the tracer: the phase integral is recomputed
    along the stored polyline (higher quadrature order, fresh branch walk).
    """
    phase = geo.phase()
    pts = contour.points
    target = -0.5 * (contour.r or 0.0)
    idx0 = 0
    if abs(pts[0] - geo.bp.zeta2) < 1e-12 or abs(pts[0] - geo.bp.zeta1) < 1e-12:
        val, rv = phase.from_branch_point(pts[0], pts[1], phase.rsq.reference(pts[1]))
        idx0 = 1
    else:
        val, rv = contour.anchor_phi, phase.rsq.reference(pts[0])
    worst = abs(val.real - target)
    for a, b in zip(pts[idx0:-1], pts[idx0 + 1:]):
        if a == b:
            continue
        if abs(b - geo.bp.zeta1) < 1e-12 or abs(b - geo.bp.zeta2) < 1e-12:
            inc, rv = phase.from_branch_point(b, a, rv)
            val = val - inc
        else:
            inc, rv = phase.increment(a, b, rv, order=24)
            val = val + inc
        worst = max(worst, abs(val.real - target))
    return worst


def _verify_c3(geo: GeometryBundle):
    g = geo.gamma
    if not g.closed or _winding_number(g.points, 1.0) != -1:
        raise TopologyError("C3 Gamma must wind once (clockwise) around z=1")
    z1, z2 = geo.bp.zeta1.real, geo.bp.zeta2.real
    if not (-1.0 < z1 < z2 < 1.0):
        raise TopologyError("C3 branch points must satisfy -1 < zeta1 < zeta2 < 1")
    if geo.x_star <= 1.0:
        raise TopologyError("C3 Gamma must cross (1, inf)")


def _verify_c2(geo: GeometryBundle):
    g = geo.gamma
    signs = np.sign(g.points.imag)
    signs = signs[signs != 0]
    crossings = np.sum(signs[:-1] * signs[1:] < 0)
    if crossings != 1:
        raise TopologyError("C2 Gamma must cross the real axis exactly once",
                            {"crossings": int(crossings)})
    if geo.x_star <= 1.0:
        raise TopologyError("C2 Gamma must cross (1, inf)")
    if abs(g.points[0] - geo.bp.zeta1) > 1e-12 or abs(g.points[-1] - geo.bp.zeta2) > 1e-12:
        raise TopologyError("C2 Gamma endpoints must be the branch points")
