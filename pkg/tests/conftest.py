import pytest

from varjacobi.fields import FieldContext
from varjacobi.geometry import build_geometry
from varjacobi.params import ParamPair

# the two parameter points exercised throughout: one conjugate-pair case (C2)
# and one real-branch-point case (C3)
C2_PAIR = ParamPair(-1.1, 0.5)
C3_PAIR = ParamPair(-0.8, 0.5)


@pytest.fixture(scope="session")
def geo_c2():
    return build_geometry(C2_PAIR)


@pytest.fixture(scope="session")
def geo_c3():
    return build_geometry(C3_PAIR)


@pytest.fixture(scope="session")
def ctx_c2(geo_c2):
    return FieldContext(C2_PAIR, geometry=geo_c2)


@pytest.fixture(scope="session")
def ctx_c3(geo_c3):
    return FieldContext(C3_PAIR, geometry=geo_c3)
