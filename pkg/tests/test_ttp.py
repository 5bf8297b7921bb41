import random

import pytest

import shared
from twistbraid.cyclo import CycNum
from twistbraid.errors import ValidationError
from twistbraid.groups import BaseAlgebra, FiniteGroup, cyclic, validate_bihom
from twistbraid.ttp import (
    CentralExtension,
    CharacterRescale,
    GaloisAction,
    GroupAutomorphism,
    Inversion,
    Monomial,
    TTPAlgebra,
    apply_automorphism,
    center_basis,
    central_extension_mul,
    inversion_fixed_basis,
    inversion_fixed_dim,
    normalize_form,
    star,
)


def random_element(alg, rng, terms=3):
    basis = alg.basis()
    return alg.element(
        {rng.choice(basis): CycNum.root(alg.modulus, rng.randrange(alg.modulus)) * rng.randint(-2, 2) for _ in range(terms)}
    )


def test_straightening(a3):
    u1, u2 = a3.generator(1, 1), a3.generator(1, 2)
    assert u2 * u1 == a3.q**-2 * (u1 * u2)
    assert u1 * u2 == a3.monomial((1, 1))
    assert u1**3 == a3.one()
    assert a3.dimension == 9
    assert a3.basis()[4] == Monomial((1, 1))


def test_distant_slots_commute(z3):
    base, alpha = z3
    a5 = TTPAlgebra(base, alpha, 5)
    u1, u3, u4 = a5.generator(1, 1), a5.generator(1, 3), a5.generator(2, 4)
    assert u1 * u3 == u3 * u1
    assert u1 * u4 == u4 * u1
    assert u3 * u4 != u4 * u3


def test_generator_range(a3):
    with pytest.raises(ValidationError):
        a3.generator(1, 3)
    with pytest.raises(ValidationError):
        a3.monomial((1,))
    with pytest.raises(ValidationError):
        a3.generator(5, 1)


def test_elements_of_different_algebras(a3, z3):
    base, alpha = z3
    a4 = TTPAlgebra(base, alpha, 4)
    with pytest.raises(ValidationError):
        a3.generator(1, 1) * a4.generator(1, 1)


@pytest.mark.parametrize("fixture", ["z3z3", "q8"])
def test_associativity(fixture, request):
    base, alpha = request.getfixturevalue(fixture)
    alg = TTPAlgebra(base, alpha, 4 if fixture == "q8" else 3)
    rng = random.Random(7)
    for _ in range(1000):
        x, y, z = (random_element(alg, rng, terms=2) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_quaternion_slot(q8):
    base, alpha = q8
    alg = TTPAlgebra(base, alpha, 2)
    u = alg.generator((1, 0), 1)
    v = alg.generator((0, 1), 1)
    assert u * u == -alg.one()
    assert v * v == -alg.one()
    assert u * v == -(v * u)


def test_star(a3, q8):
    u1 = a3.generator(1, 1)
    assert star(u1 * a3.q) == u1 * u1 * a3.q**2
    rng = random.Random(3)
    base, alpha = q8
    quaternion = TTPAlgebra(base, alpha, 3)
    for alg in (a3, quaternion):
        for _ in range(100):
            x, y = random_element(alg, rng), random_element(alg, rng)
            assert star(x * y) == star(y) * star(x)
            assert star(star(x)) == x


def test_inverse(a3):
    x = a3.generator(1, 1) + 2
    assert x * x.inverse() == a3.one()
    assert x.inverse() * x == a3.one()
    singular = a3.one() + a3.generator(1, 1) + a3.generator(2, 1)
    with pytest.raises(ZeroDivisionError):
        singular.inverse()


def test_scalar_value(a3):
    assert (a3.one() * 3).scalar_value() == 3
    assert a3.zero().scalar_value() == 0
    assert a3.generator(1, 1).scalar_value() is None


def test_center_dims(z3z3):
    base, alpha = z3z3
    for n, dim in shared.CENTER_DIMS.items():
        assert len(center_basis(TTPAlgebra(base, alpha, n))) == dim


@pytest.mark.parametrize("form", [[[2, 0], [0, 2]], [[0, 2], [1, 0]], [[2, 0], [0, 1]]])
def test_center_dims_for_every_form(form):
    group = FiniteGroup.abelian(3, 3)
    alpha = validate_bihom(group, form, modulus=3)
    for n, dim in shared.CENTER_DIMS.items():
        assert len(center_basis(TTPAlgebra(BaseAlgebra(group), alpha, n))) == dim


def test_center_basis_is_central(z3z3):
    base, alpha = z3z3
    a4 = TTPAlgebra(base, alpha, 4)
    gens = [a4.generator(g, i) for g in a4.group.generators() for i in range(1, 4)]
    for mono in center_basis(a4):
        x = a4.monomial(mono)
        assert all(x * g == g * x for g in gens)


def test_inversion_fixed_dims(z3z3):
    base, alpha = z3z3
    for n, dim in shared.FIXED_DIMS.items():
        alg = TTPAlgebra(base, alpha, n)
        assert inversion_fixed_dim(alg) == dim == (9 ** (n - 1) + 1) // 2


def test_inversion_fixed_basis(a3):
    basis = inversion_fixed_basis(a3)
    assert len(basis) == inversion_fixed_dim(a3) == 5
    for x in basis:
        assert apply_automorphism(x, Inversion()) == x


def test_inversion_needs_odd_untwisted(q8):
    base, alpha = q8
    with pytest.raises(ValidationError):
        inversion_fixed_dim(TTPAlgebra(base, alpha, 3))


@pytest.mark.parametrize("order", [2, 4])
def test_inversion_applies_to_even_order(order):
    group = cyclic(order)
    alg = TTPAlgebra(BaseAlgebra(group), validate_bihom(group, [[1]], modulus=order), 3)
    assert apply_automorphism(alg.generator(1, 1), Inversion()) == alg.generator(order - 1, 1)
    rng = random.Random(order)
    for _ in range(30):
        x, y = random_element(alg, rng), random_element(alg, rng)
        assert apply_automorphism(x * y, Inversion()) == apply_automorphism(x, Inversion()) * apply_automorphism(y, Inversion())


def test_inversion_on_twisted_and_nonabelian_bases(q8, s3):
    alg = TTPAlgebra(*q8, 3)
    rng = random.Random(8)
    for _ in range(10):
        x = random_element(alg, rng)
        assert apply_automorphism(x, Inversion()) == x
    with pytest.raises(ValidationError):
        apply_automorphism(TTPAlgebra(*s3, 2).generator(1, 1), Inversion())


def test_lifted_automorphisms_are_multiplicative(a3):
    rng = random.Random(11)
    actions = [Inversion(), GroupAutomorphism((0, 2, 1)), CharacterRescale((0, 1, 2), 3)]
    for _ in range(50):
        x, y = random_element(a3, rng), random_element(a3, rng)
        for action in actions:
            assert apply_automorphism(x * y, action) == apply_automorphism(x, action) * apply_automorphism(y, action)


def test_galois_action(a3):
    rng = random.Random(5)
    for _ in range(50):
        x, y = random_element(a3, rng), random_element(a3, rng)
        image = apply_automorphism(x * y, GaloisAction(2))
        assert image.algebra == a3.galois_twin(2)
        assert image == apply_automorphism(x, GaloisAction(2)) * apply_automorphism(y, GaloisAction(2))


def test_automorphism_must_preserve_twist():
    group = cyclic(5)
    alg = TTPAlgebra(BaseAlgebra(group), validate_bihom(group, [[2]], modulus=5), 3)
    with pytest.raises(ValidationError):
        apply_automorphism(alg.generator(1, 1), GroupAutomorphism((0, 2, 4, 1, 3)))
    with pytest.raises(ValidationError):
        apply_automorphism(alg.generator(1, 1), CharacterRescale((0, 1, 1, 1, 1), 5))


def test_central_extension(z3, z3z3):
    assert central_extension_mul(cyclic(3), z3[1], 2, (0, (0, 1)), (0, (1, 0))) == (1, (1, 1))
    rng = random.Random(13)
    for base, alpha in (z3, z3z3):
        group = base.group
        ext = CentralExtension(group, alpha, 3)
        alg = TTPAlgebra(base, alpha, 4)
        for _ in range(100):
            a, b = (
                (rng.randrange(alpha.modulus), tuple(rng.randrange(group.order) for _ in range(3)))
                for _ in range(2)
            )
            assert ext.phi(ext.mul(a, b), alg) == ext.phi(a, alg) * ext.phi(b, alg)
        a = (1, (1, 2, 0))
        assert ext.mul(a, ext.inverse(a)) == ext.identity


@pytest.mark.parametrize("form", [[[2, 0], [0, 2]], [[2, 1], [1, 1]], [[0, 2], [1, 0]], [[0, 1], [2, 0]]])
def test_normalize_form(form):
    group = FiniteGroup.abelian(3, 3)
    result = normalize_form(group, form)
    assert result.verify()
    assert result.kind == ("symmetric" if form[0][1] == form[1][0] else "skew")
    source = TTPAlgebra(BaseAlgebra(group), validate_bihom(group, form, modulus=3), 4)
    target = TTPAlgebra(BaseAlgebra(group), validate_bihom(group, [[1, 0], [0, 1]], modulus=3), 4)
    rng = random.Random(17)
    for _ in range(30):
        x, y = random_element(source, rng), random_element(source, rng)
        assert result.apply(x * y, target) == result.apply(x, target) * result.apply(y, target)


def test_normalize_form_rejects():
    with pytest.raises(ValidationError):
        normalize_form(FiniteGroup.abelian(3, 3), [[1, 1], [1, 1]])
    with pytest.raises(ValidationError):
        normalize_form(FiniteGroup.abelian(2, 2), [[1, 0], [0, 1]])
    with pytest.raises(ValidationError):
        normalize_form(FiniteGroup.abelian(3, 3), [[1, 1], [0, 1]])
