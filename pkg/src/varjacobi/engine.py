"""Multiprecision Jacobi polynomials: coefficients, evaluation, complex zeros.

Coefficients come from the explicit sum

    P_n^(a,b)(z) = 2^-n * sum_k C(n+a, n-k) C(n+b, k) (z-1)^k (z+1)^(n-k),

expanded exactly: the (z-1)^k (z+1)^(n-k) factors are integer convolutions
and only the two binomial weights need multiprecision.  Zeros are found by
simultaneous Aberth-Ehrlich iteration, seeded on the limit-measure support
when the parameter ratios fall in a supported asymptotic regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .errors import DegenerateParameterError, NumericalError
from .params import Case, FiniteParams, classify


def precision_bits(n: int, alpha: float, beta: float) -> int:
    """Working precision for degree n: grows with n and with max(|a|,|b|)/n."""
    ratio = max(abs(alpha), abs(beta)) / max(n, 1)
    return max(256, math.ceil(3.5 * n + 2.0 * n * math.log2(1.0 + ratio)))


def _dps(bits: int) -> int:
    return max(30, int(bits * 0.30103) + 5)


@dataclass
class PolySpec:
    """Monic power-basis coefficients of a Jacobi polynomial.

    monic_coeffs[j] multiplies z^j; the leading entry is exactly 1.
    lead_coeff is the (multiprecision) leading coefficient of the standard
    normalization, so lead_coeff * monic(z) reproduces P_n^(alpha,beta)(z).
    """

    n: int
    alpha: float
    beta: float
    precision_bits: int
    monic_coeffs: list = field(repr=False)
    lead_coeff: object = field(repr=False, default=None)

    @property
    def dps(self) -> int:
        return _dps(self.precision_bits)


def _power_basis_int_rows(n: int):
    """Integer coefficient rows of (z-1)^k (z+1)^(n-k) for k = 0..n.

    Row k is built from row k-1 by one exact synthetic division by (z+1)
    followed by multiplication with (z-1); everything stays in Python ints.
    """
    row = [math.comb(n, j) for j in range(n + 1)]  # (z+1)^n, ascending powers
    rows = [row]
    for _ in range(n):
        prev = rows[-1]
        # divide by (z+1): quotient q of degree n-1, exact
        q = [0] * n
        carry = prev[n]
        for j in range(n - 1, -1, -1):
            q[j] = carry
            carry = prev[j] - carry
        # multiply by (z-1)
        nxt = [0] * (n + 1)
        for j in range(n):
            nxt[j] -= q[j]
            nxt[j + 1] += q[j]
        rows.append(nxt)
    return rows


def build_poly(n: int, alpha: float, beta: float, precision: int | None = None) -> PolySpec:
    """Expand P_n^(alpha,beta) and normalize to monic form.

    Raises DegenerateParameterError when the leading coefficient vanishes
    (the n+alpha+beta in {-1..-n} regime); that case must be routed through
    params.reduce_degenerate first.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    bits = precision or precision_bits(n, alpha, beta)
    with mp.workdps(_dps(bits)):
        lead = mp.binomial(2 * n + alpha + beta, n) * mp.mpf(2) ** (-n)
        if lead == 0:
            raise DegenerateParameterError(
                f"leading coefficient vanishes for (n, alpha, beta)=({n}, {alpha}, {beta});"
                " reduce via params.reduce_degenerate"
            )
        wk = [mp.binomial(n + alpha, n - k) * mp.binomial(n + beta, k) for k in range(n + 1)]
        rows = _power_basis_int_rows(n)
        two_mn = mp.mpf(2) ** (-n)
        coeffs = []
        for j in range(n + 1):
            s = mp.fsum(wk[k] * rows[k][j] for k in range(n + 1) if rows[k][j])
            coeffs.append(s * two_mn)
        monic = [c / lead for c in coeffs]
        monic[n] = mp.mpf(1)
    return PolySpec(n=n, alpha=alpha, beta=beta, precision_bits=bits,
                    monic_coeffs=monic, lead_coeff=lead)


def eval_poly(spec: PolySpec, z, derivative: bool = False):
    """Horner evaluation of the monic polynomial (optionally with p')."""
    with mp.workdps(spec.dps):
        zz = mp.mpc(z)
        p = mp.mpc(0)
        dp = mp.mpc(0)
        for c in reversed(spec.monic_coeffs):
            if derivative:
                dp = dp * zz + p
            p = p * zz + c
        return (p, dp) if derivative else p


def eval_jacobi_direct(n: int, alpha: float, beta: float, z, dps: int = 40):
    """Straight evaluation of the defining sum; slow, used as an oracle."""
    with mp.workdps(dps):
        zz = mp.mpc(z)
        s = mp.mpc(0)
        for k in range(n + 1):
            term = (mp.binomial(n + alpha, n - k) * mp.binomial(n + beta, k)
                    * (zz - 1) ** k * (zz + 1) ** (n - k))
            s += term
        return s * mp.mpf(2) ** (-n)


def eval_jacobi_recurrence(n: int, alpha: float, beta: float, z, dps: int = 40):
    """Three-term recurrence evaluation; valid oracle for classical parameters."""
    with mp.workdps(dps):
        zz = mp.mpc(z)
        a, b = mp.mpf(alpha), mp.mpf(beta)
        pm1 = mp.mpc(1)
        if n == 0:
            return pm1
        p = (a - b) / 2 + (a + b + 2) / 2 * zz
        for k in range(2, n + 1):
            c1 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
            c2 = (2 * k + a + b - 1) * ((2 * k + a + b) * (2 * k + a + b - 2) * zz + a * a - b * b)
            c3 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
            p, pm1 = (c2 * p - c3 * pm1) / c1, p
        return p


@dataclass
class ZeroSet:
    """Computed zeros of a PolySpec with a scaled residual bound.

    residual = max over zeros of |p(z)| / sum_j |c_j| |z|^j, a backward-error
    style measure in the working precision.
    """

    spec: PolySpec
    zeros: list
    residual: float

    def as_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.zeros])


@dataclass
class EmpiricalMeasure:
    """Unit measure with equal weights on the given atoms."""

    atoms: np.ndarray

    @property
    def weight(self) -> float:
        return 1.0 / len(self.atoms)


def _initial_guesses(n: int, alpha: float, beta: float):
    """Zero guesses on the limit support when available, else a circle.

    In case C3 zeros split between [zeta1, zeta2] (share 1+A) and the level
    curve at r estimated from alpha; in C2 they all sit near the arc.  The
    import is deferred: geometry depends on this module only for tests.
    """
    from .geometry import build_geometry, trace_level_curve
    from .validation import estimate_r
    from .params import ParamPair

    pair = ParamPair(alpha / n, beta / n)
    tag = classify(pair).tag
    if tag not in (Case.C2, Case.C3):
        return None
    A = pair.A
    geo = build_geometry(pair)
    if tag == Case.C2:
        curve = geo.gamma.points
        return _spread_on_polyline(curve, n, jitter=1e-3)
    r_hat = estimate_r(alpha, n).r
    n_seg = int(round(n * (1.0 + A)))
    n_curve = n - n_seg
    guesses = []
    if n_seg > 0:
        z1, z2 = geo.bp.zeta1.real, geo.bp.zeta2.real
        # interior Chebyshev-type spread, nudged off the axis
        ks = (np.arange(n_seg) + 0.5) / n_seg
        xs = 0.5 * (z1 + z2) + 0.5 * (z2 - z1) * np.cos(np.pi * ks)
        guesses.extend(xs + 1e-6j * np.where(np.arange(n_seg) % 2, 1, -1))
    if n_curve > 0:
        if math.isinf(r_hat):
            guesses.extend(1.0 + 1e-3 * np.exp(2j * np.pi * np.arange(n_curve) / n_curve))
        else:
            curve = trace_level_curve(pair, min(r_hat, 50.0), geometry=geo).points
            guesses.extend(_spread_on_polyline(curve, n_curve, jitter=1e-3))
    return np.array(guesses)


def _spread_on_polyline(points: np.ndarray, m: int, jitter: float = 0.0):
    """m points spread by arclength along a polyline, slightly jittered."""
    seg = np.abs(np.diff(points))
    s = np.concatenate([[0.0], np.cumsum(seg)])
    total = s[-1]
    targets = (np.arange(m) + 0.5) / m * total
    out = np.interp(targets, s, points.real) + 1j * np.interp(targets, s, points.imag)
    if jitter:
        out = out + jitter * np.exp(2j * np.pi * (np.arange(m) * 0.37 % 1.0))
    return out


def _aberth_sweeps(coeffs, guesses, dps, max_sweeps=400, tol_exp=None):
    """Aberth-Ehrlich simultaneous iteration at the given precision."""
    with mp.workdps(dps):
        zs = [mp.mpc(g) for g in guesses]
        nn = len(zs)
        tol = mp.mpf(10) ** (tol_exp if tol_exp is not None else -(dps // 2))
        cs = [mp.mpc(c) for c in coeffs]

        def horner2(z):
            p = mp.mpc(0)
            dp = mp.mpc(0)
            for c in reversed(cs):
                dp = dp * z + p
                p = p * z + c
            return p, dp

        for _ in range(max_sweeps):
            move = mp.mpf(0)
            new = list(zs)
            for j in range(nn):
                p, dp = horner2(zs[j])
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mp.mpc(0)
                ssum = mp.mpc(0)
                for k in range(nn):
                    if k != j:
                        d = zs[j] - zs[k]
                        if d == 0:
                            d = mp.mpc(tol)
                        ssum += 1 / d
                denom = 1 - ratio * ssum
                delta = ratio / denom if denom != 0 else ratio
                cap = 0.5 * (1 + abs(zs[j]))   # trust region against blowups
                if abs(delta) > cap:
                    delta *= cap / abs(delta)
                new[j] = zs[j] - delta
                move = max(move, abs(delta) / (1 + abs(zs[j])))
            zs = new
            if move < tol:
                break
        else:
            raise NumericalError(
                f"Aberth iteration did not converge in {max_sweeps} sweeps (last move {float(move):.2e})"
            )
        return zs


def find_zeros(spec: PolySpec, max_sweeps: int = 400) -> ZeroSet:
    """All n zeros of the monic polynomial by staged Aberth-Ehrlich.

    A reduced-precision stage locates the configuration, the full-precision
    stage sharpens it, and a final Newton polish enforces the residual bound.
    """
    if spec.n > 500:
        raise ValueError("desk-scale solver: n <= 500")
    guesses = _initial_guesses(spec.n, spec.alpha, spec.beta)
    if guesses is None:
        guesses = 2.0 * np.exp(2j * np.pi * (np.arange(spec.n) + 0.25) / spec.n)

    # no reduced-precision stage: evaluation noise near the roots scales like
    # coeff_magnitude / |p'| ~ 10^75 here, so locating must run at full digits
    with mp.workdps(spec.dps):
        coeffs = [mp.mpc(c) for c in spec.monic_coeffs]
    zs = _aberth_sweeps(coeffs, guesses, spec.dps, max_sweeps=max_sweeps)

    with mp.workdps(spec.dps):
        for _ in range(2):  # Newton polish
            nxt = []
            for z in zs:
                p, dp = eval_poly(spec, z, derivative=True)
                nxt.append(z - p / dp if dp != 0 else z)
            zs = nxt
        resid = mp.mpf(0)
        for z in zs:
            p = eval_poly(spec, z)
            scale = mp.fsum(abs(c) * abs(z) ** j for j, c in enumerate(spec.monic_coeffs))
            resid = max(resid, abs(p) / scale)
        residual = float(resid)

    bound = 10.0 ** (-(spec.dps // 2))
    if residual > bound:
        raise NumericalError(f"zero residual {residual:.2e} exceeds bound {bound:.2e}")
    return ZeroSet(spec=spec, zeros=zs, residual=residual)


def counting_measure(zs: ZeroSet) -> EmpiricalMeasure:
    """Normalized zero counting measure: one atom of mass 1/n per zero."""
    return EmpiricalMeasure(atoms=zs.as_complex())
