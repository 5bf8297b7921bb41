import pytest

from twistbraid import Session
from twistbraid.groups import (
    BaseAlgebra,
    FiniteGroup,
    cyclic,
    q8_base,
    q8_twist,
    s3_twist,
    symmetric_group,
    validate_bihom,
)
from twistbraid.ttp import TTPAlgebra


@pytest.fixture
def z3():
    group = cyclic(3)
    yield BaseAlgebra(group), validate_bihom(group, [[2]], modulus=3)


@pytest.fixture
def a3(z3):
    base, alpha = z3
    yield TTPAlgebra(base, alpha, 3)


@pytest.fixture
def z3z3():
    group = FiniteGroup.abelian(3, 3)
    yield BaseAlgebra(group), validate_bihom(group, [[2, 0], [0, 2]], modulus=3)


@pytest.fixture
def q8():
    base = q8_base()
    yield base, q8_twist(base.group)


@pytest.fixture
def s3():
    group = symmetric_group(3)
    yield BaseAlgebra(group), s3_twist(group)


@pytest.fixture
def session(z3):
    base, alpha = z3
    session = Session(base, alpha, budget=1000)
    yield session
