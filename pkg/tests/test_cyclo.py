import pytest

from twistbraid.cyclo import CycNum, embed, galois, lift_modulus, working_modulus
from twistbraid.errors import ValidationError


def test_root_arithmetic():
    q = CycNum.root(3, 1)
    assert q * q * q == 1
    assert q + q**2 == -1
    assert (1 + 2 * q) * (1 + 2 * q**2) == 3
    assert CycNum.root(4, 2) == -1
    assert CycNum.root(5, 7) == CycNum.root(5, 2)


def test_canonical_form():
    # 1 + ζ + ζ² + ζ³ + ζ⁴ = 0 in Q(ζ_5)
    total = sum((CycNum.root(5, k) for k in range(5)), CycNum.zero(5))
    assert total.is_zero()
    assert CycNum.from_coeffs(5, [1, 1, 1, 1, 1]) == 0
    assert CycNum.root(6, 1).coeffs == CycNum.from_coeffs(6, [0, 1]).coeffs


def test_rational_values():
    half = CycNum.rational(3, "1/2")
    assert half.is_rational()
    assert half * 2 == 1
    assert half + "1/2" == 1
    assert 1 - half == half
    assert 3 / CycNum.rational(1, "1/2") == 6


def test_inverse_and_division():
    q = CycNum.root(7, 3)
    assert q.inverse() == CycNum.root(7, 4)
    x = 1 + CycNum.root(7, 1) + CycNum.root(7, 5)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    with pytest.raises(ZeroDivisionError):
        CycNum.zero(7).inverse()


def test_mixed_moduli():
    i = CycNum.root(4, 1)
    q = CycNum.root(3, 1)
    assert lift_modulus(q, 12) == CycNum.root(12, 4)
    assert i == CycNum.root(12, 3)
    assert working_modulus(3, 4, 2) == 12
    assert (i * CycNum.root(8, 2)) == -1
    with pytest.raises(ValidationError):
        i + q
    with pytest.raises(ValidationError):
        lift_modulus(q, 10)


def test_hash_agrees_across_moduli():
    q = CycNum.root(3, 1)
    assert CycNum.root(6, 2) in {q}
    x = 1 + 2 * q
    assert {x: "x"}[lift_modulus(x, 12)] == "x"
    assert hash(lift_modulus(x, 24)) == hash(x)
    assert CycNum.root(6, 1).reduced() == -(q * q)
    assert CycNum.root(6, 1).reduced().modulus == 3
    assert CycNum.root(12, 3).reduced().modulus == 4
    assert CycNum.root(5, 1).reduced().modulus == 5
    root2 = CycNum.root(8, 1) + CycNum.root(8, 7)
    assert root2.reduced().modulus == 8
    assert lift_modulus(CycNum.rational(3, "1/2"), 6).reduced() == CycNum.rational(1, "1/2")


def test_galois_and_conjugation():
    q = CycNum.root(3, 1)
    assert galois(q, -1) == q**2
    assert q.conjugate() == q**2
    i = CycNum.root(4, 1)
    assert (i * i.conjugate()) == 1
    with pytest.raises(ValidationError):
        galois(CycNum.root(6, 1), 3)


def test_root_exponent():
    assert CycNum.root(9, 4).root_exponent() == 4
    assert CycNum.rational(9, 2).root_exponent() is None
    assert CycNum.one(5).root_exponent() == 0


def test_json_forms():
    q = CycNum.root(5, 2)
    assert q.to_json() == {"modulus": 5, "exponent": 2}
    x = 1 + 2 * CycNum.root(3, 1)
    assert x.to_json() == {"modulus": 3, "coeffs": ["1", "2"]}
    assert CycNum.from_json(x.to_json()) == x
    assert CycNum.from_json({"modulus": 4, "coeffs": ["-1/2", "0"]}) == CycNum.rational(1, "-1/2")


def test_wrong_coordinate_count():
    with pytest.raises(ValidationError):
        CycNum(5, (1, 2))


def test_embed_encloses_value():
    box = embed(CycNum.root(3, 1))
    assert complex(-0.5, 3**0.5 / 2) in box
    assert box.radius < 1e-20
    sqrt_minus_3 = 1 + 2 * CycNum.root(3, 1)
    assert complex(0, 3**0.5) in embed(sqrt_minus_3)
    assert embed(CycNum.rational(5, 3)).is_positive_real()
    assert not embed(CycNum.rational(5, -3)).is_positive_real()
    with pytest.raises(ValidationError):
        embed(CycNum.one(3), digits=0)
