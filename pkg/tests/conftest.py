import time
from fractions import Fraction

import pytest

from surfcalc import (
    CurveRecord,
    DivisorClass,
    IntersectionLattice,
    SurfaceModel,
    load_fixture,
)

SESSION_START = time.monotonic()


@pytest.fixture(scope="session")
def session_start():
    return SESSION_START


@pytest.fixture(scope="session")
def p2():
    return load_fixture("p2")


@pytest.fixture(scope="session")
def p1xp1():
    return load_fixture("p1xp1")


@pytest.fixture(scope="session")
def blp2():
    return load_fixture("blp2")


@pytest.fixture(scope="session")
def k3():
    return load_fixture("k3_rank2")


@pytest.fixture(scope="session")
def abelian():
    return load_fixture("abelian_1_5")


@pytest.fixture(scope="session")
def abelian_elliptic():
    return load_fixture("abelian_elliptic")


def diag_surface(entries, canonical, chi=1, curves=(), name="diag", complete=None):
    n = len(entries)
    gram = [[0] * n for _ in range(n)]
    for i, e in enumerate(entries):
        gram[i][i] = e
    return SurfaceModel(
        name=name,
        lattice=IntersectionLattice(gram),
        canonical=DivisorClass(canonical),
        chi_O=chi,
        curves=curves,
        complete_through=complete,
    )


@pytest.fixture(scope="session")
def chain_l2_5():
    # table-free rank-2 fixture with a class of square 5, for inequality-chain
    # tests (empty table makes any L vacuously nef)
    return diag_surface([5, -1], [1, 1], name="chain_l2_5")


@pytest.fixture(scope="session")
def rank1_five():
    # <5> lattice with its generator as the only curve
    return diag_surface(
        [5],
        [1],
        chi=1,
        curves=[CurveRecord("g", DivisorClass([1]), {}, genus=6)],
        name="rank1_five",
    )


def frac(p, q=1):
    return Fraction(p, q)
