"""Classification, symmetry transforms and integer-parameter reductions."""

import math

import mpmath as mp
import numpy as np
import pytest

from varjacobi.engine import eval_jacobi_direct
from varjacobi.params import (
    Case,
    FiniteParams,
    ParamPair,
    classify,
    mobius_transform,
    reduce_degenerate,
    reflect_params,
)


def test_classify_regions():
    assert classify(ParamPair(1.0, 1.0)).tag == Case.C1
    assert classify(ParamPair(-1.1, 0.5)).tag == Case.C2
    assert classify(ParamPair(-0.8, 0.5)).tag == Case.C3
    assert classify(ParamPair(-0.5, -0.3)).tag == Case.C4
    assert classify(ParamPair(-0.5, -0.8)).tag == Case.C5


def test_classify_boundaries_exact():
    c = classify(ParamPair(-1.0, 0.5))
    assert c.tag == Case.BOUNDARY and c.detail == "A=-1"
    assert classify(ParamPair(0.0, 2.0)).detail == "A=0"
    assert classify(ParamPair(-0.5, -0.5)).detail == "A+B=-1"
    assert classify(ParamPair(-1.5, -0.5)).detail == "A+B=-2"
    # a nearby off-line point is not snapped
    assert classify(ParamPair(-1.0 + 1e-15, 0.5)).tag == Case.C3


def test_classify_excluded():
    assert classify(ParamPair(-1.5, 0.2)).tag == Case.EXCLUDED
    assert classify(ParamPair(2.0, -3.5)).tag == Case.EXCLUDED


def test_classify_is_partition():
    rng = np.random.default_rng(7)
    pts = rng.uniform(-3, 3, size=(100_000, 2))
    for A, B in pts:
        preds = [
            A > 0 and B > 0,
            A < -1 and A + B > -1,
            -1 < A < 0 and B > 0,
            A < 0 and B < 0 and A + B > -1,
            A + B < -1 and A > -1 and B > -1,
        ]
        tag = classify(ParamPair(A, B)).tag
        if sum(preds) == 1:
            assert tag == [Case.C1, Case.C2, Case.C3, Case.C4, Case.C5][preds.index(True)]
        else:
            assert sum(preds) == 0
            assert tag in (Case.BOUNDARY, Case.EXCLUDED)


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        ParamPair(math.nan, 0.0)
    with pytest.raises(ValueError):
        ParamPair(0.0, math.inf)


def test_reflect_identity_linear():
    # P_1^{(0,0)}(z) = z;  P_1^{(2,1)}(0) = 1/2
    ref = reflect_params(FiniteParams(1, 0.0, 0.0))
    assert ref.sign == -1 and ref.params.alpha == 0.0
    z = 0.3
    lhs = eval_jacobi_direct(1, 0.0, 0.0, z)
    rhs = ref.sign * eval_jacobi_direct(1, 0.0, 0.0, ref.map_point(z))
    assert abs(lhs - rhs) < 1e-25

    ref = reflect_params(FiniteParams(1, 2.0, 1.0))
    lhs = eval_jacobi_direct(1, 2.0, 1.0, 0.0)
    rhs = ref.sign * eval_jacobi_direct(1, 1.0, 2.0, 0.0)
    assert abs(lhs - 0.5) < 1e-25 and abs(lhs - rhs) < 1e-25


def test_reflect_numeric_and_involution():
    fp = FiniteParams(2, 1.0, 0.0)
    ref = reflect_params(fp)
    z = 0.5
    lhs = eval_jacobi_direct(fp.n, fp.alpha, fp.beta, z)
    rhs = ref.sign * eval_jacobi_direct(ref.params.n, ref.params.alpha,
                                        ref.params.beta, ref.map_point(z))
    assert abs(lhs - rhs) < 1e-24
    twice = reflect_params(ref.params)
    assert twice.params == fp and ref.sign * twice.sign == 1


def test_mobius_examples():
    # n=1, alpha=beta=0, z=3: both sides equal 3
    mt = mobius_transform(FiniteParams(1, 0.0, 0.0))
    assert mt.params.alpha == -3.0
    assert mt.map_point(3.0) == 3.0
    lhs = eval_jacobi_direct(1, 0.0, 0.0, 3.0)
    rhs = mt.prefactor(3.0) * eval_jacobi_direct(1, -3.0, 0.0, 3.0)
    assert abs(lhs - rhs) < 1e-24
    # z=0 maps to -3 with prefactor 1/2; both sides vanish
    assert mt.map_point(0.0) == -3.0 and mt.prefactor(0.0) == 0.5
    assert abs(eval_jacobi_direct(1, 0.0, 0.0, 0.0)) < 1e-30

    mt = mobius_transform(FiniteParams(2, 0.5, 0.25))
    z = 5.0
    lhs = eval_jacobi_direct(2, 0.5, 0.25, z, dps=40)
    rhs = mt.prefactor(z) * eval_jacobi_direct(2, mt.params.alpha, 0.25,
                                               mt.map_point(z), dps=40)
    assert abs(lhs - rhs) < 1e-25

    with pytest.raises(ZeroDivisionError):
        mt.map_point(1.0)


def test_mobius_random_degrees():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        a, b = rng.uniform(-0.9, 2.0, size=2)
        z = complex(*rng.uniform(-2, 2, size=2))
        if abs(z - 1) < 0.3:
            continue
        mt = mobius_transform(FiniteParams(n, a, b))
        lhs = eval_jacobi_direct(n, a, b, z, dps=40)
        rhs = mt.prefactor(z) * eval_jacobi_direct(n, mt.params.alpha, b,
                                                   mt.map_point(z), dps=40)
        # map/prefactor round through double precision for generic complex z
        assert abs(lhs - rhs) < 1e-12 * max(1, abs(lhs))


def test_reduce_alpha_integer():
    red = reduce_degenerate(FiniteParams(2, -1.0, 0.0))
    assert red.kind == "alpha_integer" and red.k_at_plus1 == 1
    assert red.constant == pytest.approx(1.0)
    assert red.reduced == FiniteParams(1, 1.0, 0.0)
    # P_2^(-1,0)(z) = (z-1)(3z+1)/4 against the direct sum
    with mp.workdps(40):
        for z in (0.3, -0.7, 2.0):
            direct = eval_jacobi_direct(2, -1.0, 0.0, z)
            zz = mp.mpf(z)
            assert abs(direct - (zz - 1) * (3 * zz + 1) / 4) < 1e-24


def test_reduce_both_integer():
    red = reduce_degenerate(FiniteParams(2, -1.0, -1.0))
    assert red.kind == "both_integer" and (red.k_at_plus1, red.l_at_minus1) == (1, 1)
    assert red.reduced is None  # remaining factor P_0 = 1
    with mp.workdps(40):
        for z in (0.2, -1.5):
            zz = mp.mpf(z)
            assert abs(eval_jacobi_direct(2, -1.0, -1.0, z) - (zz * zz - 1) / 4) < 1e-24


def test_reduce_beta_integer_and_zero_window():
    red = reduce_degenerate(FiniteParams(3, 0.5, -2.0))
    assert red.kind == "beta_integer" and red.l_at_minus1 == 2
    z = 0.4
    direct = eval_jacobi_direct(3, 0.5, -2.0, z, dps=40)
    via = (red.constant * ((z + 1) / 2) ** 2
           * eval_jacobi_direct(1, 0.5, 2.0, z, dps=40))
    assert abs(direct - via) < 1e-24
    # identically-zero window: alpha=-k, integer beta, max{k,-b}<=n<=k-b-1
    red = reduce_degenerate(FiniteParams(2, -2.0, -1.0))
    assert red.identically_zero
    assert abs(eval_jacobi_direct(2, -2.0, -1.0, 0.37)) < 1e-30


def test_reduce_degree_drop():
    # n + alpha + beta = -1 drops the degree to k-1 = 0
    fp = FiniteParams(2, -1.5, -1.5)
    red = reduce_degenerate(fp)
    assert red.kind == "degree_drop"
    z = 0.3
    direct = eval_jacobi_direct(2, -1.5, -1.5, z, dps=40)
    via = red.constant * (eval_jacobi_direct(1, -1.5, -1.5, z, dps=40)
                          if red.reduced else 1.0)
    assert abs(direct - via) < 1e-24


def test_reduce_not_degenerate():
    assert reduce_degenerate(FiniteParams(3, 0.5, 0.25)).kind == "none"


def test_reduce_matches_direct_sum_at_random_points():
    rng = np.random.default_rng(11)
    cases = [(4, -2.0, 0.7), (5, -1.0, 1.3), (6, 0.9, -3.0), (5, -2.0, -2.0)]
    for n, a, b in cases:
        red = reduce_degenerate(FiniteParams(n, a, b))
        assert red.kind != "none"
        if red.identically_zero:
            continue
        for z in rng.uniform(-2, 2, size=20) + 1j * rng.uniform(-1, 1, size=20):
            direct = eval_jacobi_direct(n, a, b, z, dps=40)
            via = mp.mpc(red.constant)
            via *= ((z - 1) / 2) ** red.k_at_plus1 * ((z + 1) / 2) ** red.l_at_minus1
            if red.reduced is not None:
                via *= eval_jacobi_direct(red.reduced.n, red.reduced.alpha,
                                          red.reduced.beta, z, dps=40)
            assert abs(direct - via) < 1e-20 * max(1.0, abs(direct))
