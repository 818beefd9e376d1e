"""Chord quadrature and polyline predicates for complex-plane path work.

All contour integrals in this package run over explicit polyline paths:
Gauss-Legendre panels on straight chords, subdivided until every panel is
short relative to its distance from the nearby singular points.  Square-root
branches are carried along a path by sign continuity against a fixed
reference branch, which is valid as long as the path never crosses the
reference cut of the function being continued more than the tracking can
resolve (node spacing well below the local winding scale).
"""

from __future__ import annotations

import numpy as np

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gl_nodes(order: int):
    if order not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(order)
        _GL_CACHE[order] = (x, w)
    return _GL_CACHE[order]


def subdivide_chord(a: complex, b: complex, singular: np.ndarray, ratio: float = 0.5,
                    max_pieces: int = 64) -> np.ndarray:
    """Split [a,b] so each piece is under `ratio` times its distance to `singular`.

    Distances are taken from piece midpoints; pieces shrink geometrically
    near a singular endpoint, capped at max_pieces.
    """
    pts = [a, b]
    for _ in range(12):
        refined = [pts[0]]
        changed = False
        for p, q in zip(pts[:-1], pts[1:]):
            mid = 0.5 * (p + q)
            d = np.min(np.abs(singular - mid)) if len(singular) else np.inf
            if abs(q - p) > ratio * d and len(pts) < max_pieces:
                refined.extend([mid, q])
                changed = True
            else:
                refined.append(q)
        pts = refined
        if not changed:
            break
    return np.array(pts)


def gl_panel(f, a: complex, b: complex, order: int = 24):
    """Gauss-Legendre integral of f over the straight chord a -> b."""
    x, w = gl_nodes(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t = mid + half * x
    return half * np.sum(w * f(t))


class BranchedSqrt:
    """sqrt((z - z1)(z - z2)) continued by sign continuity along a walk.

    The reference branch is (z - z1) * principal_sqrt((z - z2)/(z - z1)),
    whose only cut is the straight segment [z1, z2] and which behaves like z
    at infinity.  `walk` flips the sign whenever continuity against the
    previous value demands it; callers must feed points in path order with
    spacing small compared to the distance from the branch points.
    """

    def __init__(self, z1: complex, z2: complex):
        self.z1 = z1
        self.z2 = z2

    def reference(self, z):
        z = np.asarray(z, dtype=complex)
        d1 = z - self.z1
        out = d1 * np.sqrt((z - self.z2) / np.where(d1 == 0, 1.0, d1))
        return np.where(d1 == 0, 0.0 + 0.0j, out)

    def walk(self, points: np.ndarray, prev_value: complex):
        """Branch-continued values at `points` given the value at the walk start."""
        ref = self.reference(points)
        out = np.empty_like(ref)
        cur = prev_value
        for i, r in enumerate(ref):
            v = r if abs(r - cur) <= abs(-r - cur) else -r
            out[i] = v
            if abs(v) > 0:
                cur = v
        return out


def integrate_tracked(g, rsq: BranchedSqrt, path: np.ndarray, r_start: complex,
                      singular: np.ndarray, order: int = 24):
    """Integrate g(t, R(t)) dt along a polyline with branch-tracked R.

    r_start is the R value at path[0] (its sign selects the branch; a zero
    magnitude start, e.g. at a branch point, keeps the reference sign until
    the first nonzero value).  Returns (integral, R at path end).
    """
    x, w = gl_nodes(order)
    total = 0.0 + 0.0j
    cur = r_start if abs(r_start) else rsq.reference(path[0] + 1e-12 * (path[1] - path[0]))
    for a, b in zip(path[:-1], path[1:]):
        pieces = subdivide_chord(a, b, singular)
        for p, q in zip(pieces[:-1], pieces[1:]):
            mid = 0.5 * (p + q)
            half = 0.5 * (q - p)
            t = mid + half * x
            rv = rsq.walk(t, cur)
            total += half * np.sum(w * g(t, rv))
            cur = rsq.walk(np.array([q]), rv[-1])[0]  # land on the piece end
    return total, cur


def sqrt_start_panel(g, rsq: BranchedSqrt, zeta: complex, w_end: complex,
                     r_match: complex, order: int = 32):
    """Integral of g(t, R) from a branch point zeta along the chord to w_end.

    Substitutes t = zeta + s^2 (w_end - zeta) so the sqrt vanishing of R at
    zeta is resolved exactly; the branch is pinned by matching R(w_end) to
    r_match.  Returns (integral, R at w_end).
    """
    x, w = gl_nodes(order)
    s = 0.5 * (x + 1.0)      # nodes in (0,1)
    ws = 0.5 * w
    dz = w_end - zeta
    other = rsq.z1 if zeta == rsq.z2 else rsq.z2
    t = zeta + s * s * dz
    # R(t) = s * sqrt(dz) * sqrt(t - other_root), branch fixed at the endpoint
    root_dz = np.sqrt(complex(dz))
    tail = np.sqrt(t - other)
    # enforce continuity of the tail sqrt along s (principal branch may jump)
    for i in range(1, len(tail)):
        if abs(tail[i] - tail[i - 1]) > abs(tail[i] + tail[i - 1]):
            tail[i] = -tail[i]
    tail_end = np.sqrt(complex(w_end - other))
    if abs(tail_end - tail[-1]) > abs(tail_end + tail[-1]):
        tail_end = -tail_end
    sign = 1.0
    if abs(root_dz * tail_end - r_match) > abs(-root_dz * tail_end - r_match):
        sign = -1.0
    rv = sign * s * root_dz * tail
    integral = np.sum(ws * g(t, rv) * 2.0 * s * dz)
    r_end = sign * root_dz * tail_end
    return integral, r_end


def segments_intersect(a: complex, b: complex, c: complex, d: complex, eps: float = 1e-12) -> bool:
    """Proper intersection test for segments [a,b] and [c,d]."""
    def orient(p, q, r):
        return (q.real - p.real) * (r.imag - p.imag) - (q.imag - p.imag) * (r.real - p.real)

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    scale = max(abs(b - a), abs(d - c), 1e-300)
    o1, o2, o3, o4 = (o / (scale * scale) for o in (o1, o2, o3, o4))
    if (o1 > eps and o2 > eps) or (o1 < -eps and o2 < -eps):
        return False
    if (o3 > eps and o4 > eps) or (o3 < -eps and o4 < -eps):
        return False
    # conservatively treat near-collinear overlap as a hit unless clearly disjoint
    if max(abs(o1), abs(o2), abs(o3), abs(o4)) <= eps:
        lo1, hi1 = sorted((a.real, b.real))
        lo2, hi2 = sorted((c.real, d.real))
        if hi1 < lo2 - eps or hi2 < lo1 - eps:
            return False
        lo1, hi1 = sorted((a.imag, b.imag))
        lo2, hi2 = sorted((c.imag, d.imag))
        if hi1 < lo2 - eps or hi2 < lo1 - eps:
            return False
    return True


def chord_hits_polyline(a: complex, b: complex, poly: np.ndarray, skip_near: float = 0.0) -> bool:
    """True when chord [a,b] crosses the polyline.

    Endpoints within skip_near of the polyline are tolerated: crossings are
    only counted on the chord shortened by that margin, so paths may end on
    a contour without registering a crossing.
    """
    if skip_near > 0.0:
        u = b - a
        L = abs(u)
        if L == 0:
            return False
        a = a + u * min(0.45, skip_near / L)
        b = b - u * min(0.45, skip_near / L)
    xs = poly[:-1]
    ys = poly[1:]
    # cheap bounding-box rejection
    lo_r, hi_r = min(a.real, b.real), max(a.real, b.real)
    lo_i, hi_i = min(a.imag, b.imag), max(a.imag, b.imag)
    mask = ~((np.minimum(xs.real, ys.real) > hi_r) | (np.maximum(xs.real, ys.real) < lo_r)
             | (np.minimum(xs.imag, ys.imag) > hi_i) | (np.maximum(xs.imag, ys.imag) < lo_i))
    for p, q in zip(xs[mask], ys[mask]):
        if segments_intersect(a, b, p, q):
            return True
    return False


def point_in_polygon(z: complex, poly: np.ndarray) -> bool:
    """Even-odd rule point-in-polygon for a closed polyline."""
    x, y = z.real, z.imag
    px, py = poly.real, poly.imag
    inside = False
    j = len(poly) - 1
    for i in range(len(poly)):
        if (py[i] > y) != (py[j] > y):
            x_cross = (px[j] - px[i]) * (y - py[i]) / (py[j] - py[i]) + px[i]
            if x < x_cross:
                inside = not inside
        j = i
    return inside


def polyline_point_distance(z: complex, poly: np.ndarray) -> float:
    """Distance from z to a polyline."""
    a = poly[:-1]
    b = poly[1:]
    u = b - a
    L2 = (u * np.conj(u)).real
    L2 = np.where(L2 == 0, 1e-300, L2)
    t = np.clip(((z - a) * np.conj(u)).real / L2, 0.0, 1.0)
    proj = a + t * u
    return float(np.min(np.abs(z - proj)))


def chord_point_clearance(a: complex, b: complex, pt: complex) -> float:
    """Distance from point pt to segment [a,b]."""
    u = b - a
    L2 = (u * np.conj(u)).real
    if L2 == 0:
        return abs(pt - a)
    t = min(1.0, max(0.0, ((pt - a) * np.conj(u)).real / L2))
    return abs(pt - (a + t * u))
