"""Strong asymptotic predictions for monic Jacobi polynomials.

Region dispatch over the supported cases:

  Outer       p_n ~ (G/kappa)^n N11
  InteriorC3  p_n ~ kappa^-n [ (G w^2)^-n N11 + d_n G^n N12 ]
  C2 Gamma+-  p_n ~ kappa^-n [ G^n N11 +- (G w^2)^-n N12 ]
  C3 Gamma+   p_n ~ kappa^-n [ G^n N11 + d_n (G w^2)^-n N12 ]
  C3 segment  p_n ~ kappa^-n [ G^n N11 + (G w^2)^-n N12 ]            ('+' side)
              p_n ~ kappa^-n [ G^n N11 - e^{-2 A pi i n} (G w^2)^-n N12 ]  ('-')

near the branch point zeta2 the Airy-type form

  p_n ~ sqrt(pi) kappa^-n w^-n [ n^{1/6} f^{1/4}/a * AI(n^{2/3} f)
                                - a/(n^{1/6} f^{1/4}) * AI'(n^{2/3} f) ]

with AI = Ai in case C2 and the d_n-weighted combination in case C3.  All
n-th powers are assembled in arbitrary precision from double-precision logs
(relative accuracy ~ n * 1e-13, far below the O(1/n) claims).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import mpmath as mp
import numpy as np

from .errors import UnsupportedCaseError
from .fields import FieldContext, d_n_factor, script_A, _half_integer_phases
from .params import Case
from .paths import polyline_point_distance


class Region(Enum):
    OUTER = "Outer"
    INTERIOR_C3 = "InteriorC3"
    GAMMA_PLUS = "GammaPlusSide"
    GAMMA_MINUS = "GammaMinusSide"
    SEGMENT_PLUS = "SegmentPlusSide"
    SEGMENT_MINUS = "SegmentMinusSide"
    AIRY_2 = "AiryDisc2"
    AIRY_1 = "AiryDisc1"
    UNSUPPORTED = "Unsupported"


@dataclass
class Prediction:
    value: object                  # mpmath.mpc; may exceed float range
    region: Region
    terms: list = field(default_factory=list)   # (label, mpmath.mpc)
    rel_error_order: str = "O(1/n)"

    def as_complex(self) -> complex:
        return complex(self.value)


def locate_region(ctx: FieldContext, z: complex, side: str | None = None,
                  eps: float | None = None) -> Region:
    """Dispatch a point to the theorem that covers it.

    The Airy discs around the branch points take precedence; on-contour
    points are classified by the caller-provided side.
    """
    eps = eps if eps is not None else ctx.eps
    z = complex(z)
    if abs(z - ctx.z2) < eps:
        return Region.AIRY_2
    if abs(z - ctx.z1) < eps:
        return Region.AIRY_1
    if side in ("+", "-"):
        if ctx.case == Case.C3 and z.imag == 0.0 and ctx.z1.real < z.real < ctx.z2.real:
            return Region.SEGMENT_PLUS if side == "+" else Region.SEGMENT_MINUS
        if polyline_point_distance(z, ctx.geo.gamma.points) < 1e-9 * max(1.0, abs(z)):
            return Region.GAMMA_PLUS if side == "+" else Region.GAMMA_MINUS
    if ctx.case == Case.C3 and ctx.geo.inside_gamma(z):
        return Region.INTERIOR_C3
    return Region.OUTER


def predict(ctx: FieldContext, n: int, z: complex, side: str | None = None) -> Prediction:
    """Strong-asymptotics value of the monic polynomial away from the discs."""
    region = locate_region(ctx, z, side)
    if region in (Region.AIRY_1, Region.AIRY_2):
        raise ValueError("inside an Airy disc; use airy_predict")
    A = ctx.A
    log_kappa = ctx.kappa().log_value
    lg = ctx.log_G(z, side)
    n11, n12 = ctx.N_entries(z, side)
    dn = d_n_factor(A, n)

    with mp.workdps(40):
        up = mp.exp(n * (mp.mpc(lg) - mp.mpc(log_kappa)))            # (G/kappa)^n
        if region == Region.OUTER:
            return Prediction(value=up * n11, region=region, terms=[("outer", up * n11)])
        lw = ctx.log_w(z, side)
        down = mp.exp(-n * (mp.mpc(lg) + 2 * mp.mpc(lw) + mp.mpc(log_kappa)))
        if region == Region.INTERIOR_C3:
            terms = [("recessive", down * n11), ("dominant", dn * up * n12)]
        elif region == Region.GAMMA_PLUS and ctx.case == Case.C3:
            terms = [("dominant", up * n11), ("jump", dn * down * n12)]
        elif region == Region.GAMMA_MINUS and ctx.case == Case.C3:
            terms = [("recessive", down * n11), ("dominant", dn * up * n12)]
        elif region in (Region.GAMMA_PLUS, Region.GAMMA_MINUS):     # case C2
            sgn = 1.0 if region == Region.GAMMA_PLUS else -1.0
            terms = [("dominant", up * n11), ("jump", sgn * down * n12)]
        elif region == Region.SEGMENT_PLUS:
            terms = [("dominant", up * n11), ("jump", down * n12)]
        elif region == Region.SEGMENT_MINUS:
            ph, sn = _half_integer_phases(A, n)
            e_m2 = ph * ph      # e^{-2 A pi i n}
            terms = [("dominant", up * n11), ("jump", -e_m2 * down * n12)]
        else:
            raise UnsupportedCaseError(f"no asymptotic formula for region {region}")
        value = terms[0][1]
        for _, t in terms[1:]:
            value = value + t
    return Prediction(value=value, region=region, terms=terms)


def airy_predict(ctx: FieldContext, n: int, z: complex, side: str | None = None) -> Prediction:
    """Airy-type asymptotics in the disc around zeta2.

    In case C2 the kernel is Ai itself; in case C3 it is the combination
    weighted by the distance of An to the integers.  The conjugate-reflected
    construction handles the disc at zeta1 = conj(zeta2) in case C2.
    """
    z = complex(z)
    if abs(z - ctx.z2) >= ctx.eps:
        if ctx.case == Case.C2 and abs(z - ctx.z1) < ctx.eps:
            # p_n has real coefficients: p_n(z) = conj(p_n(conj z))
            ref = airy_predict(ctx, n, z.conjugate(), _flip(side))
            with mp.workdps(40):
                return Prediction(value=mp.conj(ref.value), region=Region.AIRY_1,
                                  terms=[(lbl, mp.conj(t)) for lbl, t in ref.terms])
        raise ValueError("outside the Airy disc at zeta2")

    A = ctx.A
    log_kappa = ctx.kappa().log_value
    # on the real axis inside the disc the two w-side limits produce the same
    # prediction (the Airy combination absorbs the phase); default to '-',
    # the anchoring side
    w_side = side
    if w_side is None and z.imag == 0.0 and z.real <= 1.0:
        w_side = "-"
    lw = ctx.log_w(z, w_side)
    a_val = ctx.a_value(z, side if side is not None else
                        ("-" if _on_local_cut(ctx, z) else None))
    fv = ctx.f(z, side)
    f4 = ctx.f_quarter(z, side if side is not None else
                       ("-" if _on_local_cut(ctx, z) else None))

    with mp.workdps(40):
        t_n = mp.mpf(n) ** mp.mpf(2.0 / 3.0) * mp.mpc(fv)
        if ctx.case == Case.C2:
            ai = mp.airyai(t_n)
            aip = mp.airyai(t_n, 1)
        else:
            ai = script_A(t_n, A, n)
            aip = script_A(t_n, A, n, derivative=1)
        pref = mp.sqrt(mp.pi) * mp.exp(-n * (mp.mpc(log_kappa) + mp.mpc(lw)))
        n16 = mp.mpf(n) ** mp.mpf(1.0 / 6.0)
        term1 = pref * n16 * mp.mpc(f4) / mp.mpc(a_val) * ai
        term2 = -pref * mp.mpc(a_val) / (n16 * mp.mpc(f4)) * aip
        return Prediction(value=term1 + term2, region=Region.AIRY_2,
                          terms=[("airy", term1), ("airy_derivative", term2)])


def _flip(side):
    if side == "+":
        return "-"
    if side == "-":
        return "+"
    return side


def _on_local_cut(ctx: FieldContext, z: complex) -> bool:
    """Is z on the cut of a and f inside the zeta2 disc (C3: the segment)?"""
    if ctx.case != Case.C3:
        return polyline_point_distance(z, ctx.geo.gamma.points) < 1e-9 * max(1.0, abs(z))
    return z.imag == 0.0 and ctx.z1.real < z.real < ctx.z2.real


def error_scaling(ctx: FieldContext, z: complex, n_list, side: str | None = None,
                  alpha_rule=None, beta_rule=None):
    """Fit log|p_n/pred - 1| ~ c + s log n over the given degrees.

    alpha_rule/beta_rule map n to the polynomial parameters (defaults An,
    Bn); degrees whose parameters hit the degenerate integer windows are
    rejected.  Returns (slope, intercept, errors).
    """
    from .engine import build_poly, eval_poly
    from .params import FiniteParams, reduce_degenerate

    alpha_rule = alpha_rule or (lambda n: ctx.A * n)
    beta_rule = beta_rule or (lambda n: ctx.B * n)
    if len(n_list) < 3:
        raise ValueError("need at least 3 degrees to fit a slope")
    errs = []
    for n in n_list:
        alpha, beta = alpha_rule(n), beta_rule(n)
        red = reduce_degenerate(FiniteParams(n, alpha, beta))
        if red.kind in ("identically_zero", "degree_drop"):
            # forced-factor reductions (alpha or beta a negative integer) keep
            # a monic degree-n polynomial and are accepted
            raise ValueError(f"degenerate parameters at n={n}: {red.kind}")
        spec = build_poly(n, alpha, beta)
        truth = eval_poly(spec, z)
        pred = predict(ctx, n, z, side)
        with mp.workdps(40):
            errs.append(float(abs(truth / pred.value - 1)))
    slope, intercept = np.polyfit(np.log(np.asarray(n_list, dtype=float)),
                                  np.log(np.maximum(errs, 1e-300)), 1)
    return float(slope), float(intercept), errs
