"""Scalar fields of the asymptotic machinery: mu, G, kappa, w, H, phi, f, a, N.

Everything is anchored at the rightmost branch point zeta2:

  mu_hat(z) = (A+B+2)/2 * R(z)/(z^2-1) - (A/2)/(z-1) - (B/2)/(z+1)
              (opposite sign on the R term inside the loop Gamma in case C3),
  G(z)     = exp(int_{zeta2}^z mu_hat),   G -> 1 at zeta2,
  w(z)     = c (z-1)^{A/2} (z+1)^{B/2},   w -> 1 at zeta2,  cut (-inf, 1],
  H        = G w,   kappa = lim G(z)/z,
  phi(z)   = (A+B+2)/2 * int_{zeta2}^z R(t)/(1-t^2) dt,
  f        = ((3/2) phi)^{2/3}  (conformal at zeta2),
  a(z)     = ((z-zeta2)/(z-zeta1))^{1/4} -> 1 at infinity,
  N11 = (a + 1/a)/2,  N12 = (a - 1/a)/(2i).

G is integrated over explicit polyline routes that never cross Sigma; the
sign of R along a route is carried by continuity, so the resulting branch is
the single-valued one on the cut plane.  log G is exposed directly because
all downstream uses are exp(n * log G) with integer n, which is insensitive
to the 2 pi i route ambiguity.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import NumericalError, UnsupportedCaseError
from .geometry import GeometryBundle, build_geometry, _cone_directions
from .params import Case, ParamPair
from .paths import (
    chord_hits_polyline,
    chord_point_clearance,
    gl_nodes,
    integrate_tracked,
    polyline_point_distance,
    sqrt_start_panel,
    subdivide_chord,
)


@dataclass
class Kappa:
    """Linear growth constant of G at infinity.

    With G anchored at zeta2 from the upper side, the limit G(z)/z is a
    positive number times a unimodular phase (e^{i pi A} in case C3, fixed by
    the mass passed over when continuing to +infinity).  value is the
    modulus; complex_value enters the asymptotic formulas.
    """

    value: float
    est_error: float
    complex_value: complex = 1.0 + 0.0j
    log_value: complex = 0.0 + 0.0j


@dataclass
class FieldValue:
    value: complex
    function: str
    side: str | None = None


def d_n_factor(A: float, n: int) -> complex:
    """d_n = 1 - e^{-2 A n pi i}, computed from the distance of An to the integers."""
    alpha = A * n
    delta = alpha - round(alpha)
    return 2j * cmath.exp(-1j * math.pi * delta) * math.sin(math.pi * delta)


def _half_integer_phases(A: float, n: int):
    """(e^{-i pi A n}, sin(A pi n)) reduced mod the integer part of An."""
    alpha = A * n
    m = round(alpha)
    delta = alpha - m
    sgn = -1.0 if m % 2 else 1.0
    return sgn * cmath.exp(-1j * math.pi * delta), sgn * math.sin(math.pi * delta)


def script_A(t: complex, A: float, n: int, derivative: int = 0):
    """Airy combination A(t) = e^{-A pi i n} Ai(t) + 2i e^{i pi/3} sin(A pi n) Ai(w^2 t).

    w = e^{2 pi i/3}; derivative=1 returns d/dt of the combination.  Uses
    arbitrary-precision Airy evaluation so large |t| cannot overflow; the
    value is returned as an mpmath complex since it can exceed float range.
    """
    ph, sn = _half_integer_phases(A, n)
    with mp.workdps(40):
        w2 = mp.exp(4j * mp.pi / 3)
        if derivative == 0:
            return ph * mp.airyai(t) + 2j * mp.exp(1j * mp.pi / 3) * sn * mp.airyai(w2 * t)
        return (ph * mp.airyai(t, 1)
                + 2j * mp.exp(1j * mp.pi / 3) * sn * w2 * mp.airyai(w2 * t, 1))


class FieldContext:
    """Evaluator for all scalar fields attached to one (A, B) geometry."""

    def __init__(self, pair: ParamPair, geometry: GeometryBundle | None = None):
        self.pair = pair
        self.geo = geometry or build_geometry(pair)
        self.case = self.geo.case.tag
        if self.case not in (Case.C2, Case.C3):
            raise UnsupportedCaseError(f"fields need case C2 or C3, got {self.geo.case}")
        self.A, self.B = pair.A, pair.B
        self.k2 = (self.A + self.B + 2.0) / 2.0
        self.bp = self.geo.bp
        self.z1, self.z2 = self.bp.zeta1, self.bp.zeta2
        self.phase = self.geo.phase()
        self.rsq = self.phase.rsq
        self.scale = self.geo.scale
        self.singular = self.phase.singular
        self.pole_clear = 0.04 * max(1.0, self.scale)
        self.eps = min(0.25 * self.scale,
                       0.5 * min(abs(self.z2 - 1.0), abs(self.z2 + 1.0)))
        self._log_w0 = self._w_normalization()
        self._kappa: Kappa | None = None
        self._f_cal: complex | None = None
        self._routes: dict = {}

    # ------------------------------------------------------------------ w --

    def _w_normalization(self) -> complex:
        # In C3 zeta2 sits on the cut: anchor from the lower side.  This is
        # the anchoring under which the strong-asymptotics formulas and the
        # printed boundary relations hold verbatim (checked against the
        # polynomials); the upper-side anchor produces the mirror system.
        z2 = self.z2
        if self.case == Case.C3:
            return (self.A / 2.0) * (math.log(abs(z2.real - 1.0)) - 1j * math.pi) \
                + (self.B / 2.0) * cmath.log(z2.real + 1.0)
        return (self.A / 2.0) * cmath.log(z2 - 1.0) + (self.B / 2.0) * cmath.log(z2 + 1.0)

    def log_w(self, z: complex, side: str | None = None) -> complex:
        """log of the normalized weight branch on the plane cut along (-inf, 1]."""
        z = complex(z)
        if z.imag == 0.0 and z.real <= 1.0:
            if z.real in (1.0, -1.0):
                raise NumericalError("w has branch points at +-1")
            if side not in ("+", "-"):
                raise ValueError("on-cut evaluation of w requires side '+' or '-'")
            s = 1.0 if side == "+" else -1.0
            lw = (self.A / 2.0) * (math.log(abs(z.real - 1.0)) + s * 1j * math.pi)
            if z.real < -1.0:
                lw += (self.B / 2.0) * (math.log(abs(z.real + 1.0)) + s * 1j * math.pi)
            else:
                lw += (self.B / 2.0) * math.log(z.real + 1.0)
            return lw - self._log_w0
        return (self.A / 2.0) * cmath.log(z - 1.0) + (self.B / 2.0) * cmath.log(z + 1.0) \
            - self._log_w0

    def w(self, z: complex, side: str | None = None) -> complex:
        return cmath.exp(self.log_w(z, side))

    # ------------------------------------------------------- mu and G ------

    def _ell(self, t):
        return -(self.A / 2.0) / (t - 1.0) - (self.B / 2.0) / (t + 1.0)

    def in_interior(self, z: complex) -> bool:
        """Case C3: inside the loop Gamma (the bounded component of C\\Sigma)."""
        return self.case == Case.C3 and self.geo.inside_gamma(z)

    def mu_hat(self, z: complex, side: str | None = None) -> complex:
        """Cauchy transform of the unit measure on Sigma (region-resolved form)."""
        z = complex(z)
        if z in (1.0 + 0j, -1.0 + 0j):
            raise NumericalError("mu_hat evaluated at a pole of the closed form")
        interior = self._interior_query(z, side)
        rv = self._global_R(z, side)
        sgn = -1.0 if interior else 1.0
        return sgn * self.k2 * rv / (z * z - 1.0) + self._ell(z)

    def _interior_query(self, z: complex, side: str | None) -> bool:
        if self.case != Case.C3:
            return False
        on_gamma = polyline_point_distance(z, self.geo.gamma.points) < 1e-9 * max(1.0, abs(z))
        if on_gamma and side is not None:
            return side == "-"   # '-' side of the clockwise loop is its inside
        return self.geo.inside_gamma(z)

    def _global_R(self, z: complex, side: str | None) -> complex:
        try:
            return self.geo.sqrt_R(z, side)
        except ValueError:
            # on-cut without side: only legal for C3 Gamma where R is continuous
            return complex(self.rsq.reference(z))

    def log_G(self, z: complex, side: str | None = None) -> complex:
        """int_{zeta2}^z mu_hat along a routed path (mod 2 pi i, see module doc)."""
        z = complex(z)
        interior = self._interior_query(z, side)
        if interior:
            return self._log_G_interior(z, side)
        return self._log_G_exterior(z, side)

    def G(self, z: complex, side: str | None = None) -> complex:
        return cmath.exp(self.log_G(z, side))

    def log_H(self, z: complex, side: str | None = None) -> complex:
        return self.log_G(z, side) + self.log_w(z, side)

    def H(self, z: complex, side: str | None = None) -> complex:
        return cmath.exp(self.log_H(z, side))

    # --- routed integration ------------------------------------------------

    def _g_mu(self, sign: float):
        k2 = self.k2

        def g(t, rv):
            return sign * k2 * rv / (t * t - 1.0) + self._ell(t)

        return g

    def _integrate_route(self, path: np.ndarray, g, r_seed: complex):
        """sqrt-resolved first panel from zeta2, tracked panels after."""
        total, rv = sqrt_start_panel(g, self.rsq, path[0], path[1], r_seed)
        if len(path) > 2:
            inc, rv = integrate_tracked(g, self.rsq, path[1:], rv, self.singular)
            total += inc
        return total, rv

    def _log_G_exterior(self, z: complex, side: str | None) -> complex:
        path = self._route_exterior(z, side)
        r_seed = complex(self.rsq.reference(path[1]))
        if self.case == Case.C2 and self.geo.in_lens(path[1]):
            r_seed = -r_seed
        val, rv = self._integrate_route(path, self._g_mu(+1.0), r_seed)
        self._check_branch(z, side, rv)
        return val

    def _log_G_interior(self, z: complex, side: str | None) -> complex:
        path = self._route_interior(z, side)
        r_seed = complex(self.rsq.reference(path[1]))
        val, _ = self._integrate_route(path, self._g_mu(-1.0), r_seed)
        return val

    def _check_branch(self, z, side, rv):
        """Continuity-continued R must agree with the global branch at z."""
        try:
            want = self.geo.sqrt_R(z, side)
        except ValueError:
            return
        if abs(rv - want) > 1e-6 * max(1.0, abs(want)):
            raise NumericalError(
                f"branch continuation mismatch at {z}: got {rv}, want {want}"
            )

    # --- routing -------------------------------------------------------------

    def _forbidden(self, interior: bool):
        polys = []
        if not interior:
            polys.append(self.geo.gamma.points)
            if self.case == Case.C3:
                polys.append(np.array([self.z1, self.z2]))
        else:
            polys.append(self.geo.gamma.points)
        return polys

    def _path_legal(self, pts, polys, skip_first=0.0, skip_last=0.0) -> bool:
        bp_clear = 0.02 * self.scale   # branch tracking degrades where R ~ 0
        for i, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
            for pole in (1.0, -1.0):
                if chord_point_clearance(a, b, pole) < self.pole_clear:
                    return False
            aa, bb = a + 0.15 * (b - a), b - 0.15 * (b - a)
            for bpz in (self.z1, self.z2):
                # interior clearance only: chords may end near a branch point
                if chord_point_clearance(aa, bb, bpz) < bp_clear:
                    return False
            skip = 0.0
            if i == 0:
                skip = max(skip, skip_first)
            if i == len(pts) - 2:
                skip = max(skip, skip_last)
            for poly in polys:
                if chord_hits_polyline(a, b, poly, skip_near=skip):
                    return False
        return True

    def _exterior_start(self) -> complex:
        u = 0.18 * self.scale
        if self.case == Case.C3:
            # leave into the lower exterior sector (the anchoring sector)
            return self.z2 + u * cmath.exp(-2j * math.pi / 3)
        thetas = _cone_directions(self.phase, self.z2, "level")
        # direction of Gamma's departure is the one whose arc crosses (1, inf)
        gamma_dir = cmath.phase(self.geo.gamma.points[-2] - self.z2)
        theta = min(thetas, key=lambda t: abs(math.remainder(t - gamma_dir, 2 * math.pi)))
        return self.z2 + u * cmath.exp(1j * (theta + math.pi))

    def _node_cloud(self, z: complex) -> list[complex]:
        pts = self.geo.gamma.points
        rad = 1.5 * float(np.max(np.abs(pts))) + 1.0
        cloud = [rad * cmath.exp(1j * k * math.pi / 8) for k in range(16)]
        dz = max(2.0 * polyline_point_distance(z, pts), 0.05 * self.scale)
        cloud += [z + dz * cmath.exp(1j * k * math.pi / 4) for k in range(8)]
        polys = self._forbidden(interior=False)
        keep = []
        min_clear = max(self.pole_clear, 0.04 * self.scale)
        for c in cloud:
            clear = min(abs(c - s) for s in (self.z1, self.z2, 1.0, -1.0))
            if clear <= min_clear:
                continue
            if min(polyline_point_distance(c, poly) for poly in polys) <= 0.03 * self.scale:
                continue
            keep.append(c)
        return keep

    def _route_exterior(self, z: complex, side: str | None) -> np.ndarray:
        z_end, approach = self._approach_point(z, side, interior=False)
        start = self._exterior_start()
        polys = self._forbidden(interior=False)
        core = self._visibility_route(start, approach if approach is not None else z_end,
                                      polys, self._node_cloud(z_end))
        pts = [self.z2] + core
        if approach is not None:
            pts.append(z_end)
        return np.array(pts)

    def _route_interior(self, z: complex, side: str | None) -> np.ndarray:
        z_end, approach = self._approach_point(z, side, interior=True)
        m = 0.5 * (self.z2.real + 1.0)
        rho = 0.5 * (1.0 - self.z2.real)
        target = approach if approach is not None else z_end
        pts = [self.z2, complex(m)]
        if abs(target - 1.0) > 1e-12:
            theta = cmath.phase(target - 1.0)
            if abs(theta) < math.pi - 1e-9 or target.imag >= 0:
                arcs = np.linspace(math.pi, theta, 10)
            else:
                arcs = np.linspace(-math.pi, theta, 10)
            pts.extend(1.0 + rho * np.exp(1j * arcs[1:]))
            pts.append(target)
        if approach is not None:
            pts.append(z_end)
        return np.array(pts)

    def _approach_point(self, z: complex, side: str | None, interior: bool):
        """Boundary targets get a short final chord from the requested side."""
        z = complex(z)
        if side not in ("+", "-"):
            return z, None
        d = 0.02 * self.scale
        seg = self.geo.segment
        if seg is not None and z.imag == 0.0 and self.z1.real < z.real < self.z2.real:
            nu = 1j if side == "+" else -1j
            return z, z + d * nu
        g = self.geo.gamma.points
        if polyline_point_distance(z, g) < 1e-9 * max(1.0, abs(z)):
            tan = self._tangent_on(g, z)
            nu = 1j * tan if side == "+" else -1j * tan
            return z, z + d * nu
        return z, None

    @staticmethod
    def _tangent_on(poly: np.ndarray, z: complex) -> complex:
        i = int(np.argmin(np.abs(poly - z)))
        if i == len(poly) - 1:
            i -= 1
        t = poly[i + 1] - poly[i] if poly[i + 1] != poly[i] else poly[i] - poly[i - 1]
        return t / abs(t)

    def _visibility_route(self, start: complex, target: complex, polys, cloud):
        """Shortest legal polyline from start to target over a small node set."""
        key = (round(start.real, 9), round(start.imag, 9),
               round(target.real, 9), round(target.imag, 9))
        if key in self._routes:
            return self._routes[key]
        if self._path_legal([start, target], polys, skip_last=1e-9):
            self._routes[key] = [start, target]
            return [start, target]
        nodes = [start, target] + list(cloud)
        n = len(nodes)
        dist = [math.inf] * n
        prev = [-1] * n
        dist[0] = 0.0
        heap = [(0.0, 0)]
        seen = [False] * n
        while heap:
            d, i = heapq.heappop(heap)
            if seen[i]:
                continue
            seen[i] = True
            if i == 1:
                break
            for j in range(n):
                if seen[j]:
                    continue
                skip_last = 1e-9 if j == 1 else 0.0
                if not self._path_legal([nodes[i], nodes[j]], polys, skip_last=skip_last):
                    continue
                nd = d + abs(nodes[j] - nodes[i])
                if nd < dist[j]:
                    dist[j] = nd
                    prev[j] = i
                    heapq.heappush(heap, (nd, j))
        if not seen[1]:
            raise NumericalError(f"no legal route from {start} to {target}")
        route = []
        i = 1
        while i != -1:
            route.append(nodes[i])
            i = prev[i]
        route.reverse()
        self._routes[key] = route
        return route

    # ------------------------------------------------------------- kappa ---

    def kappa(self) -> Kappa:
        """Growth constant of G at infinity, with a tail-integral correction."""
        if self._kappa is not None:
            return self._kappa
        T0 = max(3.0, 2.0 * self.geo.x_star, 2.0 * abs(self.z1) + 1.0)
        vals = []
        for T in (T0, 2.0 * T0):
            lg = self._log_G_exterior(complex(T), None)
            tail = self._kappa_tail(T)
            vals.append(lg - math.log(T) + tail)
        k1, k2v = (cmath.exp(v) for v in vals)
        kap = Kappa(value=abs(k1), est_error=abs(k1 - k2v),
                    complex_value=k1, log_value=vals[0])
        if kap.est_error > 1e-10 * kap.value:
            raise NumericalError(f"kappa unstable: {kap}")
        self._kappa = kap
        return kap

    def _kappa_tail(self, T: float) -> float:
        """int_T^inf (mu_hat(t) - 1/t) dt on the real axis, via s = T/t."""
        x, wts = gl_nodes(48)
        s = 0.5 * (x + 1.0)
        ws = 0.5 * wts
        t = T / s
        rv = self.rsq.reference(t)
        mu = self.k2 * rv / (t * t - 1.0) + self._ell(t)
        integrand = (mu * t / s - 1.0 / s).real
        return float(np.sum(ws * integrand))

    # ------------------------------------------------ measure densities ----

    def mu_density_segment(self, x: float) -> float:
        """Arclength density of mu on (zeta1, zeta2), case C3; positive."""
        if self.case != Case.C3:
            raise UnsupportedCaseError("segment density only exists in case C3")
        z1, z2 = self.z1.real, self.z2.real
        if not (z1 < x < z2):
            raise ValueError("x outside (zeta1, zeta2)")
        return (2.0 * self.k2 / (2.0 * math.pi)) * math.sqrt((x - z1) * (z2 - x)) / (1.0 - x * x)

    def mu_density_gamma(self, z: complex) -> float:
        """Arclength density of mu on Gamma: (A+B+2)/(2 pi i) R_+ tau / (1 - z^2)."""
        g = self.geo.gamma.points
        tan = self._tangent_on(g, z)
        rv = complex(self.rsq.reference(z))
        val = (2.0 * self.k2) / (2j * math.pi) * rv * tan / (1.0 - z * z)
        if abs(val.imag) > 1e-6 * max(1.0, abs(val)):
            raise NumericalError(f"Gamma density not real at {z}: {val}")
        return val.real

    # --------------------------------------------------------- phi and f ---

    def phi(self, z: complex, side: str | None = None) -> complex:
        """Edge phase integral from zeta2, single-valued off the local cut.

        The path of integration stays in the region the requested side refers
        to, which pins the branch germ of R (endpoint matching alone would be
        ambiguous up to a sign near the branch point).
        """
        z = complex(z)
        if abs(z - self.z2) > self.eps * (1.0 + 1e-9):
            raise ValueError(f"phi is local to the disc |z - zeta2| < eps = {self.eps:.4g}")

        def g(t, rv):
            return self.k2 * rv / (1.0 - t * t)

        r_match = self._global_R(z, side)
        path = self._local_path(z, side)
        if len(path) == 2:
            val, rv = sqrt_start_panel(g, self.rsq, path[0], path[1], r_match)
        else:
            r_mid = self.geo.sqrt_R(path[1], None)
            val, rv = sqrt_start_panel(g, self.rsq, path[0], path[1], r_mid)
            inc, rv = integrate_tracked(g, self.rsq, path[1:], rv, self.singular)
            val += inc
            if abs(rv - r_match) > 1e-6 * max(1.0, abs(r_match)):
                raise NumericalError(f"phi branch mismatch at {z}")
        return val

    def _local_path(self, z: complex, side: str | None = None):
        if self.case == Case.C3:
            return np.array([self.z2, z])
        gpts = self.geo.gamma.points
        on_gamma = polyline_point_distance(z, gpts) < 1e-9 * max(1.0, abs(z))
        if on_gamma:
            if side not in ("+", "-"):
                raise ValueError("phi on Gamma requires a side in case C2")
            want_lens = side == "-"
            tan = self._tangent_on(gpts, z)
            nu = 1j * tan if side == "+" else -1j * tan
            w = z + min(0.3 * abs(z - self.z2), 0.05 * self.scale) * nu
            # leave zeta2 into the same side region so the branch germ is the
            # requested boundary one, then walk to the near-z waypoint
            d0 = 0.25 * abs(z - self.z2)
            for k in range(16):
                w0 = self.z2 + d0 * cmath.exp(2j * math.pi * k / 16.0)
                if self.geo.in_lens(w0) != want_lens:
                    continue
                mid_ok = not chord_hits_polyline(w0, w, gpts, skip_near=1e-9)
                start_ok = not chord_hits_polyline(self.z2, w0, gpts,
                                                   skip_near=0.3 * d0)
                if mid_ok and start_ok:
                    return np.array([self.z2, w0, w, z])
            raise NumericalError(f"no side-respecting local path to {z}")
        if not chord_hits_polyline(self.z2, z, gpts, skip_near=5e-3 * self.scale):
            return np.array([self.z2, z])
        d = abs(z - self.z2)
        base = cmath.phase(z - self.z2)
        for db in (0.5, -0.5, 1.0, -1.0, 1.5, -1.5):
            w = self.z2 + d * cmath.exp(1j * (base + db))
            if abs(w - self.z2) > self.eps * 1.2:
                continue
            if (not chord_hits_polyline(self.z2, w, gpts, skip_near=5e-3 * self.scale)
                    and not chord_hits_polyline(w, z, gpts, skip_near=1e-9)):
                return np.array([self.z2, w, z])
        raise NumericalError(f"no local path from zeta2 to {z}")

    def _f_calibration(self) -> complex:
        """Linear coefficient lambda with f(z) ~ lambda (z - zeta2), lambda set
        by positivity of f on the reference ray (toward 1 in C3, along the
        descending orthogonal arc in C2)."""
        if self._f_cal is not None:
            return self._f_cal
        if self.case == Case.C3:
            z_cal = self.z2 + 0.45 * self.eps
        else:
            pts = self.geo.orth[1].points  # gamma-: from zeta2 toward -1
            dist = np.abs(pts - self.z2)
            i = int(np.argmin(np.abs(dist - 0.45 * self.eps)))
            z_cal = pts[max(i, 1)]
        raw = (1.5 * self.phi(z_cal)) ** (2.0 / 3.0)
        best = min((raw * cmath.exp(2j * math.pi * k / 3.0) for k in (-1, 0, 1)),
                   key=lambda v: abs(cmath.phase(v)))
        if abs(cmath.phase(best)) > 0.3:
            raise NumericalError(f"f calibration not positive on reference ray: {best}")
        self._f_cal = best / (z_cal - self.z2)
        return self._f_cal

    def f(self, z: complex, side: str | None = None) -> complex:
        """Conformal straightening f = ((3/2) phi)^{2/3}, analytic at zeta2."""
        lam = self._f_calibration()
        if z == self.z2:
            return 0.0 + 0.0j
        raw = (1.5 * self.phi(z, side)) ** (2.0 / 3.0)
        pred = lam * (z - self.z2)
        return min((raw * cmath.exp(2j * math.pi * k / 3.0) for k in (-1, 0, 1)),
                   key=lambda v: abs(v - pred))

    def f_quarter(self, z: complex, side: str | None = None) -> complex:
        """f^{1/4}, positive where f > 0; on the local cut the side picks the limit."""
        fv = self.f(z, side)
        if side in ("+", "-") and abs(cmath.phase(-fv)) < 1e-8:
            s = 1.0 if side == "+" else -1.0
            return abs(fv) ** 0.25 * cmath.exp(s * 1j * math.pi / 4.0)
        return fv ** 0.25

    # ------------------------------------------------------------- a, N ----

    def a_value(self, z: complex, side: str | None = None) -> complex:
        """Quarter-power ratio a(z) -> 1 at infinity, cut along Gamma (C2) or
        [zeta1, zeta2] (C3)."""
        z = complex(z)
        if self.case == Case.C3:
            if z.imag == 0.0 and self.z1.real < z.real < self.z2.real:
                if side not in ("+", "-"):
                    raise ValueError("on-cut evaluation of a requires a side")
                mag = (abs(z.real - self.z2.real) / abs(z.real - self.z1.real)) ** 0.25
                s = 1.0 if side == "+" else -1.0
                return mag * cmath.exp(s * 1j * math.pi / 4.0)
            return ((z - self.z2) / (z - self.z1)) ** 0.25
        raw = ((z - self.z2) / (z - self.z1)) ** 0.25
        near_gamma = polyline_point_distance(z, self.geo.gamma.points) < 1e-9 * max(1.0, abs(z))
        if near_gamma:
            if side == "+":
                return raw
            if side == "-":
                return -1j * raw
            raise ValueError("on-cut evaluation of a requires a side")
        return -1j * raw if self.geo.in_lens(z) else raw

    def N_entries(self, z: complex, side: str | None = None) -> tuple[complex, complex]:
        a = self.a_value(z, side)
        return (a + 1.0 / a) / 2.0, (a - 1.0 / a) / 2j
