import pytest

import shared
from twistbraid import Session
from twistbraid.cyclo import CycNum
from twistbraid.errors import BudgetExceeded, ValidationError
from twistbraid.groups import BaseAlgebra, cyclic, validate_bihom
from twistbraid.search import Ansatz
from twistbraid.ybo import gaussian_candidate


def test_budget(session):
    assert session.budget == 1000
    session.budget = 5
    assert session.budget == 5
    with pytest.raises(ValidationError):
        session.budget = 0


def test_threads(session):
    assert session.threads == 1
    session.threads = 4
    assert session.threads == 4
    with pytest.raises(ValidationError):
        session.threads = 0


def test_temp_budget(session):
    with session.temp_budget(5):
        assert session.budget == 5
        with pytest.raises(BudgetExceeded):
            session.enumerate(Ansatz.roots_of_unity(3))
    assert session.budget == 1000


def test_temp_budget_restores_after_error(session):
    with pytest.raises(RuntimeError):
        with session.temp_budget(7):
            raise RuntimeError("boom")
    assert session.budget == 1000


def test_options_checked(z3):
    base, alpha = z3
    with pytest.raises(ValidationError):
        Session(base, alpha, cap=0)
    with pytest.raises(ValidationError):
        Session(base, alpha, budget=-1)
    other = cyclic(5)
    with pytest.raises(ValidationError):
        Session(base, validate_bihom(other, [[1]], modulus=5))


def test_algebra_cached(session):
    a3 = session.algebra(3)
    assert session.algebra(3) is a3
    assert a3.dimension == 9
    assert session.element(3, {(1, 0): 2}) == a3.generator(1, 1) * 2


def test_working_modulus(z3):
    base, alpha = z3
    assert Session(base, alpha).working_modulus == 3
    wide = Session(base, alpha, extra_modulus=4)
    assert wide.working_modulus == 12
    assert wide.algebra(2).modulus == 12
    i = CycNum.root(4, 1)
    assert wide.element(2, {(0,): i}).scalar_value() == i


def test_enumerate_and_orbits(session):
    sols = session.enumerate(Ansatz.roots_of_unity(3))
    assert len(sols) == shared.Z3_SOLUTIONS
    orbits = session.orbits(Ansatz.roots_of_unity(3), ["character", "conjugation"])
    assert len(orbits.orbits) == 1


def test_verify(session):
    report = session.verify(gaussian_candidate(3))
    assert report.braid_ok
    assert report.unitary_scalar == 3
    assert session.braid_check(gaussian_candidate(3))


def test_image_order(z3):
    base, alpha = z3
    assert Session(base, alpha).image_order(gaussian_candidate(3), 3) == shared.GAUSSIAN_Z3_IMAGE_ORDER
    assert Session(base, alpha, cap=10).image_order(gaussian_candidate(3), 3) is None


def test_center_and_fixed_dim(z3z3):
    session = Session(*z3z3)
    assert len(session.center(4)) == shared.CENTER_DIMS[4]
    assert session.fixed_dim(3) == shared.FIXED_DIMS[3]


def test_automorphisms():
    group = cyclic(5)
    session = Session(BaseAlgebra(group), validate_bihom(group, [[2]], modulus=5))
    assert session.automorphisms() == [(0, 1, 2, 3, 4), (0, 4, 3, 2, 1)]
