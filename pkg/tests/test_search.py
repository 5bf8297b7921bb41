import random

import pytest

import shared
from twistbraid.cyclo import CycNum
from twistbraid.errors import BudgetExceeded, ValidationError
from twistbraid.groups import BaseAlgebra, FiniteGroup, cyclic, standard_forms, validate_bihom
from twistbraid.search import (
    ACTION_NAMES,
    Ansatz,
    dedup_by_symmetry,
    enumerate_solutions,
    expand_actions,
    factorized_candidate,
    factorized_twist,
    is_gaussian_product,
    z3z3_survey,
)
from twistbraid.ttp import GaloisAction
from twistbraid.ybo import YBOCandidate, braid_check, gaussian_candidate, invertible, symmetry_apply, target_form


def z5():
    group = cyclic(5)
    return BaseAlgebra(group), validate_bihom(group, [[2]], modulus=5)


def test_z3_solutions(z3):
    base, alpha = z3
    sols = enumerate_solutions(base, alpha, Ansatz.roots_of_unity(3))
    assert len(sols) == shared.Z3_SOLUTIONS
    assert sols.swept == 9
    for cand in sols.candidates:
        a, b = cand.f[1], cand.f[2]
        assert a**3 == 1 and b**3 == 1 and a * a != b
    assert gaussian_candidate(3).key() in [c.key() for c in sols.candidates]
    assert all(s.report.unitary_scalar is not None for s in sols)


def test_z3_single_orbit(z3):
    base, alpha = z3
    sols = dedup_by_symmetry(enumerate_solutions(base, alpha, Ansatz.roots_of_unity(3)), ["character", "conjugation"])
    assert len(sols.orbits) == 1
    assert sols.orbits[0].size == shared.Z3_SOLUTIONS
    assert sols.actions == ("character", "conjugation")


def test_z5_solutions():
    base, alpha = z5()
    sols = enumerate_solutions(base, alpha, Ansatz.roots_of_unity(5))
    assert len(sols) == shared.Z5_SOLUTIONS
    assert len(sols.unitary()) == shared.Z5_SOLUTIONS
    orbits = dedup_by_symmetry(sols, ["character", "automorphism", "conjugation"]).orbits
    assert len(orbits) == 1
    assert gaussian_candidate(5).key() in [c.key() for c in sols.candidates]


def test_threads_and_seed_do_not_change_result():
    base, alpha = z5()
    ansatz = Ansatz.roots_of_unity(5)
    plain = enumerate_solutions(base, alpha, ansatz)
    shuffled = enumerate_solutions(base, alpha, ansatz, threads=4, chunk=16, seed=42)
    assert [c.key() for c in plain.candidates] == [c.key() for c in shuffled.candidates]
    assert plain.to_json() == shuffled.to_json()


def test_kernel_matches_exact_check(z3):
    base, alpha = z3
    ansatz = Ansatz.roots_of_unity(3, zero=True)
    sols = enumerate_solutions(base, alpha, ansatz)
    expected = []
    for b in ansatz.values:
        for c in ansatz.values:
            cand = YBOCandidate(base, (CycNum.one(3), b, c))
            if braid_check(cand, alpha) and invertible(cand):
                expected.append(cand.key())
    assert [c.key() for c in sols.candidates] == sorted(expected)
    assert sols.swept == 16


def test_q8_solutions(q8):
    base, alpha = q8
    ansatz = Ansatz.of(["1/2", "-1/2"], pinned={0: "1/2"})
    sols = enumerate_solutions(base, alpha, ansatz)
    assert len(sols) == shared.Q8_SOLUTIONS
    assert all(s.report.unitary_scalar == 1 for s in sols)
    orbits = dedup_by_symmetry(sols, ["character", "operator_inversion"]).orbits
    assert len(orbits) == 1


def test_budget(z3):
    base, alpha = z3
    with pytest.raises(BudgetExceeded) as info:
        enumerate_solutions(base, alpha, Ansatz.roots_of_unity(3), budget=5)
    assert info.value.required == 9
    assert info.value.budget == 5


def test_ansatz_sizes():
    group = cyclic(5)
    assert Ansatz.roots_of_unity(5).size(group) == 5**4
    assert Ansatz.roots_of_unity(5, zero=True, pinned={1: CycNum.one(5)}).size(group) == 6**3
    no_pin = Ansatz(Ansatz.roots_of_unity(3).values, pin_identity=False)
    assert no_pin.size(cyclic(3)) == 27


def test_unknown_action(z3):
    base, alpha = z3
    sols = enumerate_solutions(base, alpha, Ansatz.roots_of_unity(3))
    with pytest.raises(ValidationError):
        dedup_by_symmetry(sols, ["mirror"])


def test_inversion_actions_need_abelian_base(s3):
    base, alpha = s3
    with pytest.raises(ValidationError):
        expand_actions(["support_inversion"], base, alpha, 4)


def test_symmetries_preserve_braid_relation(z3, q8):
    rng = random.Random(2024)
    pools = []
    for base, alpha, ansatz in (
        (*z3, Ansatz.roots_of_unity(3)),
        (*z5(), Ansatz.roots_of_unity(5)),
        (*q8, Ansatz.of(["1/2", "-1/2"], pinned={0: "1/2"})),
    ):
        sols = enumerate_solutions(base, alpha, ansatz)
        modulus = sols.base.group.exponent * alpha.modulus * base.cocycle_modulus
        actions = expand_actions(ACTION_NAMES, base, alpha, modulus)
        if not base.is_twisted:
            actions.append(GaloisAction(2))
        pools.append((sols.candidates, alpha, actions))
    for _ in range(100):
        candidates, alpha, actions = rng.choice(pools)
        cand, action = rng.choice(candidates), rng.choice(actions)
        image = symmetry_apply(cand, action, alpha)
        assert braid_check(image, target_form(alpha, action))


def test_symmetries_preserve_braid_relation_for_skew_twist():
    group = FiniteGroup.abelian(3, 3)
    base = BaseAlgebra(group)
    alpha = validate_bihom(group, standard_forms(3)["A2"], modulus=3)
    sols = enumerate_solutions(base, alpha, Ansatz.roots_of_unity(3))
    assert sols.candidates
    actions = expand_actions(ACTION_NAMES, base, alpha, 9)
    actions.append(GaloisAction(2))
    for action in actions:
        for cand in sols.candidates[:12]:
            image = symmetry_apply(cand, action, alpha)
            assert braid_check(image, target_form(alpha, action))


@pytest.mark.parametrize("kind,sign,x", [("A1", 1, 1), ("A1", -1, 1), ("A2", 1, 1), ("A3", 1, 2), ("A3", -1, 2)])
def test_factorized_candidates(kind, sign, x):
    cand = factorized_candidate(kind, 3, sign, x)
    alpha = factorized_twist(kind, 3, x)
    assert braid_check(cand, alpha)
    assert is_gaussian_product(cand, 3)


def test_factorized_candidate_rejects():
    with pytest.raises(ValidationError):
        factorized_candidate("A3", 5, 1, 4)
    with pytest.raises(ValidationError):
        factorized_candidate("A2", 5, -1, 1)
    with pytest.raises(ValidationError):
        factorized_candidate("B1", 5)
    with pytest.raises(ValidationError):
        factorized_candidate("A1", 9)


def test_is_gaussian_product():
    group = FiniteGroup.abelian(3, 3)
    assert is_gaussian_product(gaussian_candidate(3), 3)
    assert not is_gaussian_product(gaussian_candidate(3), 5)
    flat = factorized_candidate("A1", 3)
    assert is_gaussian_product(flat, 3)
    ones = BaseAlgebra(group)
    assert not is_gaussian_product(YBOCandidate.from_values(ones, [1] * 9), 3)


def test_z3z3_survey():
    survey = z3z3_survey()
    assert survey.discrepancies == []
    assert len(survey.orbits) == 10
    admitting = sorted(row.label for row in survey.orbits if row.admits_nondegenerate_unitary)
    assert admitting == ["A1", "A2", "A3"]
    assert all(row.all_gaussian for row in survey.orbits if row.admits_nondegenerate_unitary)
    zero = next(row for row in survey.orbits if row.degenerate)
    assert zero.orbit_size == 1
