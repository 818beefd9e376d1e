"""Parameter-plane classification and exact parameter transformations.

The degree-n Jacobi polynomial with parameters (alpha, beta) is studied
through the limit ratios A = alpha/n, B = beta/n.  The (A, B) plane splits
into five open regions C1..C5 separated by the lines A=0, B=0, A=-1, B=-1,
A+B=-1 and A+B=-2; the asymptotic machinery in this package supports C2 and
C3.  This module also implements the two exact symmetry transforms of
P_n^(alpha,beta) and the integer-parameter reductions where the polynomial
acquires forced zeros at +-1 or drops degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath as mp


@dataclass(frozen=True)
class ParamPair:
    """Limit ratios (A, B) of parameter over degree."""

    A: float
    B: float

    def __post_init__(self):
        for v in (self.A, self.B):
            if not math.isfinite(v):
                raise ValueError(f"parameters must be finite, got ({self.A}, {self.B})")


@dataclass(frozen=True)
class FiniteParams:
    """Concrete degree and Jacobi parameters (n, alpha, beta)."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"degree must be >= 1, got {self.n}")

    @property
    def ratios(self) -> ParamPair:
        return ParamPair(self.alpha / self.n, self.beta / self.n)


class Case(Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    BOUNDARY = "Boundary"
    EXCLUDED = "Excluded"


@dataclass(frozen=True)
class CaseClass:
    tag: Case
    detail: str = ""

    def __str__(self):
        return self.tag.value if not self.detail else f"{self.tag.value}({self.detail})"


# Transition lines, tested by exact comparison: callers wanting a tolerance
# must snap their inputs first.
_BOUNDARY_LINES = (
    (lambda A, B: A == 0.0, "A=0"),
    (lambda A, B: B == 0.0, "B=0"),
    (lambda A, B: A == -1.0, "A=-1"),
    (lambda A, B: B == -1.0, "B=-1"),
    (lambda A, B: A + B == -1.0, "A+B=-1"),
    (lambda A, B: A + B == -2.0, "A+B=-2"),
)


def classify(p: ParamPair) -> CaseClass:
    """Assign the unique region tag of the point (A, B).

    The five open regions:
      C1: A>0, B>0            C2: A<-1, A+B>-1        C3: -1<A<0, B>0
      C4: A<0, B<0, A+B>-1    C5: A+B<-1, A>-1, B>-1
    Points on any of the six transition lines are tagged Boundary; anything
    else (e.g. A<-1 with A+B<-1) is Excluded.
    """
    A, B = p.A, p.B
    for test, name in _BOUNDARY_LINES:
        if test(A, B):
            return CaseClass(Case.BOUNDARY, name)
    if A > 0 and B > 0:
        return CaseClass(Case.C1)
    if A < -1 and A + B > -1:
        return CaseClass(Case.C2)
    if -1 < A < 0 and B > 0:
        return CaseClass(Case.C3)
    if A < 0 and B < 0 and A + B > -1:
        return CaseClass(Case.C4)
    if A + B < -1 and A > -1 and B > -1:
        return CaseClass(Case.C5)
    return CaseClass(Case.EXCLUDED, f"A={A}, B={B}")


@dataclass(frozen=True)
class Reflection:
    """Parameter swap (n, a, b) -> (n, b, a) with argument flip z -> -z.

    The identity is  P_n^(a,b)(z) = sign * P_n^(b,a)(-z)  with sign=(-1)^n;
    the z -> -z reflection is part of the contract.
    """

    params: FiniteParams
    sign: int

    def map_point(self, z: complex) -> complex:
        return -z


def reflect_params(fp: FiniteParams) -> Reflection:
    return Reflection(FiniteParams(fp.n, fp.beta, fp.alpha), -1 if fp.n % 2 else 1)


@dataclass(frozen=True)
class MobiusTransform:
    """Parameter map under z -> (z+3)/(z-1) with prefactor ((1-z)/2)^n.

    Encodes  P_n^(a,b)(z) = prefactor(z) * P_n^(a',b)(map(z))  where
    a' = -2n - a - b - 1.  Evaluation at z=1 is a pole of the map.
    """

    params: FiniteParams

    def map_point(self, z: complex) -> complex:
        if z == 1:
            raise ZeroDivisionError("mobius argument map has a pole at z=1")
        return (z + 3) / (z - 1)

    def prefactor(self, z: complex) -> complex:
        return ((1 - z) / 2) ** self.params.n


def mobius_transform(fp: FiniteParams) -> MobiusTransform:
    alpha_prime = -2 * fp.n - fp.alpha - fp.beta - 1
    return MobiusTransform(FiniteParams(fp.n, alpha_prime, fp.beta))


@dataclass(frozen=True)
class Reduction:
    """Result of stripping forced integer-parameter factors.

    P_n^(alpha,beta)(z) = constant * ((z-1)/2)^k1 * ((z+1)/2)^l1 * P_reduced(z)
    with `reduced` the remaining Jacobi factor, or `identically_zero` when the
    multiplying constant vanishes.  kind is one of
    'none', 'alpha_integer', 'beta_integer', 'both_integer', 'degree_drop',
    'identically_zero'.
    """

    kind: str
    k_at_plus1: int = 0
    l_at_minus1: int = 0
    constant: float = 1.0
    reduced: FiniteParams | None = None

    @property
    def identically_zero(self) -> bool:
        return self.kind == "identically_zero"


def _neg_int(x: float, lo: int, hi: int):
    """Return k if x == -k for an integer k in [lo, hi], else None."""
    if x != int(x):
        return None
    k = -int(x)
    return k if lo <= k <= hi else None


def _gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) via multiprecision log-gamma.

    A pole of Gamma(b) alone kills the ratio; coincident poles are resolved
    as the limit (gammaprod), which stays finite for the reductions below.
    """
    a_pole = a <= 0 and a == int(a)
    b_pole = b <= 0 and b == int(b)
    if b_pole and not a_pole:
        return 0.0
    with mp.workdps(40):
        return float(mp.gammaprod([a], [b]))


def reduce_degenerate(fp: FiniteParams) -> Reduction:
    """Detect and resolve the integer-parameter degenerations.

    For alpha=-k with k in 1..n the polynomial carries the factor
    ((z-1)/2)^k; for beta=-l similarly at z=-1; when both hold with k+l<=n
    the two factors split off jointly; when n+alpha+beta=-k in -1..-n the
    degree drops to k-1.  Whenever the accompanying Gamma-ratio constant
    vanishes the polynomial is identically zero.
    """
    n, a, b = fp.n, fp.alpha, fp.beta
    k = _neg_int(a, 1, n)
    l = _neg_int(b, 1, n)

    if k is not None and l is not None and k + l <= n:
        return Reduction(
            kind="both_integer",
            k_at_plus1=k,
            l_at_minus1=l,
            constant=1.0,
            reduced=FiniteParams(n - k - l, k, l) if n - k - l >= 1 else None,
        )
    if k is not None:
        # P_n^(-k,b) = [G(n+b+1)/G(n+b+1-k)] * (n-k)!/n! * ((z-1)/2)^k * P_{n-k}^(k,b)
        c = _gamma_ratio(n + b + 1, n + b + 1 - k) * math.factorial(n - k) / math.factorial(n)
        if c == 0.0:
            return Reduction(kind="identically_zero", k_at_plus1=k)
        return Reduction(
            kind="alpha_integer",
            k_at_plus1=k,
            constant=c,
            reduced=FiniteParams(n - k, k, b) if n - k >= 1 else None,
        )
    if l is not None:
        # mirror image of the alpha case under the parameter swap
        c = _gamma_ratio(n + a + 1, n + a + 1 - l) * math.factorial(n - l) / math.factorial(n)
        if c == 0.0:
            return Reduction(kind="identically_zero", l_at_minus1=l)
        return Reduction(
            kind="beta_integer",
            l_at_minus1=l,
            constant=c,
            reduced=FiniteParams(n - l, a, l) if n - l >= 1 else None,
        )

    k3 = _neg_int(n + a + b, 1, n)
    if k3 is not None:
        # degree drops: P_n^(a,b) = [G(n+a+1)/G(k+a)] * (k-1)!/n! * P_{k-1}^(a,b)
        c = _gamma_ratio(n + a + 1, k3 + a) * math.factorial(k3 - 1) / math.factorial(n)
        if c == 0.0:
            return Reduction(kind="identically_zero")
        return Reduction(
            kind="degree_drop",
            constant=c,
            reduced=FiniteParams(k3 - 1, a, b) if k3 - 1 >= 1 else None,
        )
    return Reduction(kind="none", reduced=fp)
