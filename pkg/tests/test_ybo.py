import pytest
from sympy import Rational

import shared
from twistbraid.cyclo import CycNum
from twistbraid.errors import ValidationError
from twistbraid.groups import BaseAlgebra, cyclic, q8_twist, s3_twist, validate_bihom
from twistbraid.spectra import spectrum_exact
from twistbraid.ttp import CharacterRescale, GaloisAction, GroupAutomorphism
from twistbraid.ybo import (
    CoefficientConjugation,
    GlobalScale,
    OperatorInversion,
    SupportInversion,
    YBOCandidate,
    braid_check,
    gaussian_candidate,
    gaussian_conjugation_check,
    invertible,
    linear_characters,
    localize_zp,
    order_of_r,
    projective_image_order,
    projective_unitary,
    q8_candidate,
    r_element,
    s3_candidate,
    s3_family_point,
    s3_ideal_relations,
    s3_point_coefficients,
    slot_algebra,
    symmetry_apply,
    target_form,
    unit_column_norms,
    verify,
)


def test_gaussian_verifies(z3):
    base, alpha = z3
    cand = gaussian_candidate(3)
    assert cand.f == (CycNum.one(3), CycNum.root(3, 1), CycNum.root(3, 1))
    report = verify(cand, alpha)
    assert report.braid_ok
    assert report.invertible
    assert report.unitary_scalar == 3
    assert report.projective_order is not None
    assert report.to_json()["unitary_scalar"] == {"modulus": 3, "coeffs": ["3", "0"]}


def test_non_solution(z3):
    base, alpha = z3
    cand = YBOCandidate.from_values(base, [1, 1, 0])
    assert not braid_check(cand, alpha)
    assert not verify(cand, alpha).braid_ok


def test_candidate_size_checked(z3):
    base, _ = z3
    with pytest.raises(ValidationError):
        YBOCandidate.from_values(base, [1, 1])


def test_q8_candidate(q8):
    base, alpha = q8
    cand = q8_candidate(1, 1, 1, base)
    half = CycNum.rational(1, Rational(1, 2))
    assert cand.f == (half, half, half, half)
    report = verify(cand, alpha)
    assert report.braid_ok
    assert report.unitary_scalar == 1
    assert report.order_of_r == 6


def test_q8_identity_coefficient_one_fails(q8):
    base, alpha = q8
    cand = YBOCandidate.from_values(base, [1, Rational(1, 2), Rational(1, 2), Rational(1, 2)])
    assert not braid_check(cand, alpha)


def test_s3_point():
    assert s3_family_point(1) == (Rational(-2, 3), Rational(-2, 3), Rational(1, 3))
    cand = s3_candidate(*s3_family_point(1))
    alpha = s3_twist(cand.group)
    report = verify(cand, alpha)
    assert report.braid_ok
    assert report.unitary_scalar == 1
    assert report.order_of_r == 4
    assert unit_column_norms(cand, report.unitary_scalar)
    r = r_element(cand, slot_algebra(cand), 1, normalized=True)
    profile = spectrum_exact(r, [1, -CycNum.root(4, 1)])
    assert profile.total == 6


@pytest.mark.parametrize("sign", [1, -1])
def test_s3_family(sign):
    alpha = s3_twist()
    for t in shared.S3_SAMPLES:
        x, y, z = s3_family_point(t, sign)
        assert x + y + z == sign
        assert x * y + y * z + z * x == 0
        assert all(value == 0 for value in s3_ideal_relations(*s3_point_coefficients(x, y, z)))
    cand = s3_candidate(*s3_family_point(shared.S3_SAMPLES[4], sign))
    assert braid_check(cand, alpha)


def test_s3_relations_detect_non_points():
    relations = s3_ideal_relations(*s3_point_coefficients(1, 1, 1))
    assert any(value != 0 for value in relations)


def test_projective_unitary_rejects():
    base = BaseAlgebra(cyclic(3))
    assert projective_unitary(YBOCandidate.from_values(base, [1, 1, 0])) is None
    assert projective_unitary(YBOCandidate.from_values(base, [0, 0, 0])) is None


def test_invertible():
    base = BaseAlgebra(cyclic(3))
    assert invertible(gaussian_candidate(3))
    assert not invertible(YBOCandidate.from_values(base, [1, 1, 1]))


def test_order_of_r():
    base = BaseAlgebra(cyclic(3))
    cand = YBOCandidate.from_values(base, [0, 1, 0])
    assert order_of_r(cand) == 3
    assert order_of_r(YBOCandidate.from_values(base, [2, 0, 0]), cap=10) is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gaussian_conjugation(p):
    assert gaussian_conjugation_check(p)


def test_gaussian_conjugation_needs_odd_prime():
    with pytest.raises(ValidationError):
        gaussian_conjugation_check(9)


@pytest.mark.parametrize("p", [3, 5])
def test_localization(p):
    local = localize_zp(gaussian_candidate(p))
    assert local.matrix.shape == (p * p, p * p)
    assert local.ybe_ok
    assert local.relations_ok


def test_localization_detects_non_solution():
    base = BaseAlgebra(cyclic(3))
    local = localize_zp(YBOCandidate.from_values(base, [1, 1, 0]))
    assert not local.ybe_ok


def test_localization_rejects_other_twists(z3z3):
    with pytest.raises(ValidationError):
        localize_zp(YBOCandidate.from_values(z3z3[0], [1] * 9))
    group = cyclic(3)
    with pytest.raises(ValidationError):
        localize_zp(gaussian_candidate(3), validate_bihom(group, [[1]], modulus=3))


def test_image_order(z3):
    _, alpha = z3
    assert projective_image_order(gaussian_candidate(3), alpha, 3) == shared.GAUSSIAN_Z3_IMAGE_ORDER
    assert projective_image_order(gaussian_candidate(3), alpha, 2) == 3
    assert projective_image_order(gaussian_candidate(3), alpha, 3, cap=10) is None


def test_linear_characters():
    assert len(linear_characters(cyclic(5))) == 5
    assert len(linear_characters(q8_twist().group)) == 4


def test_symmetry_actions_keep_solutions(z3, q8):
    base, alpha = z3
    gaussian = gaussian_candidate(3)
    actions = [
        GlobalScale(CycNum.root(3, 1)),
        CharacterRescale((0, 1, 2), 3),
        GroupAutomorphism((0, 2, 1)),
        GaloisAction(2),
        SupportInversion(),
        CoefficientConjugation(),
        OperatorInversion(),
    ]
    for action in actions:
        image = symmetry_apply(gaussian, action, alpha)
        assert braid_check(image, target_form(alpha, action))
    q8_base, q8_alpha = q8
    cand = q8_candidate(1, -1, 1, q8_base)
    for action in (CoefficientConjugation(), OperatorInversion(), CharacterRescale((0, 1, 0, 1), 2)):
        assert braid_check(symmetry_apply(cand, action, q8_alpha), q8_alpha)


def test_character_rescale_value():
    rescaled = symmetry_apply(gaussian_candidate(3), CharacterRescale((0, 1, 2), 3))
    assert rescaled.f[1] == CycNum.root(3, 2)


def test_operator_inversion_flips_q8_signs(q8):
    base, alpha = q8
    inverse = symmetry_apply(q8_candidate(1, 1, 1, base), OperatorInversion())
    assert inverse.normalized() == q8_candidate(-1, -1, -1, base).normalized()


def test_invalid_actions(z3, q8):
    base, alpha = z3
    with pytest.raises(ValidationError):
        symmetry_apply(gaussian_candidate(3), GroupAutomorphism((0, 2, 1)))
    with pytest.raises(ValidationError):
        symmetry_apply(YBOCandidate.from_values(base, [1, 1, 1]), OperatorInversion())
    with pytest.raises(ValidationError):
        symmetry_apply(gaussian_candidate(3), "flip")
    s3 = s3_candidate(*s3_family_point(1))
    with pytest.raises(ValidationError):
        symmetry_apply(s3, SupportInversion())
