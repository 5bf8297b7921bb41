import pytest

from twistbraid.cyclo import CycNum
from twistbraid.errors import ValidationError, VerificationFailure
from twistbraid.spectra import (
    EigenProfile,
    eigenvalue_profile,
    factorized_profile,
    gauss_sum,
    profile_case,
    spectrum_exact,
)


def test_gauss_sum():
    q = CycNum.root(3, 1)
    assert gauss_sum(3, 1) == 1 + 2 * q
    assert gauss_sum(3, 1) ** 2 == -3
    assert gauss_sum(5, 1) ** 2 == 5
    assert gauss_sum(5, 2) == -gauss_sum(5, 1)
    assert gauss_sum(3, 1, 1) == 2 + q**2
    with pytest.raises(ValidationError):
        gauss_sum(9, 1)


@pytest.mark.parametrize("p,sign,x,case", [(3, 1, 1, 1), (3, 1, 2, 2), (3, -1, 1, 2), (5, 1, 1, 2), (5, 1, 2, 1), (7, 1, 1, 1)])
def test_profile_case(p, sign, x, case):
    assert profile_case(p, sign, x) == case


def test_profile_case_rejects():
    with pytest.raises(ValidationError):
        profile_case(3, 1, 3)
    with pytest.raises(ValidationError):
        profile_case(2, 1, 1)


def test_eigenvalue_profile():
    profile = eigenvalue_profile(3, 1, 2)
    assert profile.multiplicity(CycNum.one(3)) == 5
    assert profile.multiplicity(CycNum.root(3, 1)) == 2
    assert profile.total == 9
    flat = eigenvalue_profile(5, 1, 2)
    assert flat.multiplicity(CycNum.one(5)) == 1
    assert all(flat.multiplicity(CycNum.root(5, k)) == 6 for k in range(1, 5))
    assert flat.total == 25
    with pytest.raises(ValidationError):
        eigenvalue_profile(3, 2, 1)


@pytest.mark.parametrize("p,sign,x", [(3, 1, 1), (3, 1, 2), (3, -1, 1), (3, -1, 2), (5, 1, 1), (5, 1, 2)])
def test_factorized_profile(p, sign, x):
    expected, exact = factorized_profile(p, sign, x)
    assert expected == exact
    assert exact.total == p * p


def test_factorized_profile_threads():
    assert factorized_profile(3, 1, 1, threads=3) == factorized_profile(3, 1, 1)


def test_spectrum_exact(a3):
    u = a3.generator(1, 1)
    profile = spectrum_exact(u, [CycNum.root(3, k) for k in range(3)])
    assert profile.total == a3.dimension
    assert profile.as_dict() == {CycNum.root(3, k): 3 for k in range(3)}
    assert spectrum_exact(a3.one(), [1]).entries == ((CycNum.one(3), 9),)


def test_spectrum_exact_incomplete(a3):
    with pytest.raises(VerificationFailure) as info:
        spectrum_exact(a3.generator(1, 1), [CycNum.one(3)])
    assert info.value.details == {"dimension": 9, "found": 3}


def test_profile_validation():
    with pytest.raises(ValidationError):
        EigenProfile(((CycNum.one(3), 0),))
    profile = EigenProfile(((CycNum.one(3), 2),))
    assert profile.scaled(CycNum.root(3, 1)).multiplicity(CycNum.root(3, 1)) == 2
    assert profile.to_json() == [{"eigenvalue": {"modulus": 3, "exponent": 0}, "multiplicity": 2}]
