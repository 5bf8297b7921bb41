"""
Exact arithmetic in cyclotomic fields Q(ζ_M).

Every scalar in twistbraid is a :class:`CycNum`. An element of Q(ζ_M) is kept
as its residue modulo the M-th cyclotomic polynomial Φ_M, written in the power
basis 1, ζ, …, ζ^(φ(M)-1), so two values are equal exactly when their
coefficient tuples are equal.

::

    from twistbraid.cyclo import CycNum

    q = CycNum.root(3, 1)
    assert q * q * q == 1
    assert q + q**2 == -1
    assert (1 + 2 * q) * (1 + 2 * q**2) == 3
"""

from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Literal

from mpmath import iv
from sympy import QQ, Rational, divisors, totient
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.euclidtools import dup_invert
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.specialpolys import cyclotomic_poly

from .errors import ValidationError

DEFAULT_DIGITS = 30


@lru_cache(maxsize=None)
def phi(modulus: int) -> int:
    """Euler's totient, the degree of Q(ζ_M) over Q."""
    return int(totient(modulus))


@lru_cache(maxsize=None)
def _cyclotomic_dup(modulus: int) -> tuple:
    # highest degree first, the dense layout sympy's dup_* helpers expect
    return tuple(QQ(int(c)) for c in cyclotomic_poly(modulus, polys=True).all_coeffs())


def _to_dup(coeffs: tuple) -> list:
    return dup_strip(list(reversed(coeffs)))


def _from_dup(dup: list, modulus: int) -> tuple:
    low_first = list(reversed(dup))
    low_first += [QQ.zero] * (phi(modulus) - len(low_first))
    return tuple(low_first)


def _reduce(dup: list, modulus: int) -> tuple:
    return _from_dup(dup_rem(dup, list(_cyclotomic_dup(modulus)), QQ), modulus)


def _as_rational(value) -> "QQ.dtype":
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value))
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def format_rational(value) -> str:
    """Render a rational as ``"n"`` or ``"n/d"``."""
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    return str(num) if den == 1 else f"{num}/{den}"


@dataclass(frozen=True, eq=False)
class CycNum:
    """
    An exact element of the cyclotomic field Q(ζ_M).

    Args:
        modulus: The order M of the primitive root ζ_M.
        coeffs: Rational coordinates in the power basis, lowest power first,
            exactly φ(M) of them.

    Raises:
        ValidationError: If the coordinate count does not match φ(M).

    Example::

        i = CycNum.root(4, 1)
        assert i * i == -1
        assert i.conjugate() == CycNum.root(4, 3)
    """

    modulus: int
    coeffs: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise ValidationError(f"Modulus must be positive, got {self.modulus}")
        if len(self.coeffs) != phi(self.modulus):
            raise ValidationError(
                f"Q(zeta_{self.modulus}) needs {phi(self.modulus)} coordinates, got {len(self.coeffs)}"
            )

    @classmethod
    def zero(cls, modulus: int) -> "CycNum":
        return cls(modulus, (QQ.zero,) * phi(modulus))

    @classmethod
    def one(cls, modulus: int) -> "CycNum":
        return cls.rational(modulus, 1)

    @classmethod
    def rational(cls, modulus: int, value) -> "CycNum":
        """
        Embed a rational number.

        Args:
            modulus: Target field Q(ζ_M).
            value: An int, a sympy Rational, a QQ element or a string such as ``"-1/2"``.
        """
        return cls(modulus, (_as_rational(value),) + (QQ.zero,) * (phi(modulus) - 1))

    @classmethod
    def root(cls, modulus: int, exponent: int) -> "CycNum":
        """
        The root of unity ζ_M^k in canonical form.

        Example::

            assert CycNum.root(4, 2) == -1
        """
        return _root(modulus, exponent % modulus)

    @classmethod
    def from_coeffs(cls, modulus: int, coeffs) -> "CycNum":
        """Build from any iterable of rationals (or rational strings), reducing if it is longer than φ(M)."""
        values = [_as_rational(c) for c in coeffs]
        if len(values) == phi(modulus):
            return cls(modulus, tuple(values))
        return cls(modulus, _reduce(_to_dup(tuple(values)), modulus))

    def __repr__(self) -> str:
        exponent = self.root_exponent()
        if exponent is not None:
            return f"CycNum(zeta_{self.modulus}^{exponent})"
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"CycNum({self.modulus}, [{body}])"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValidationError(f"{self!r} is not rational")
        return self.coeffs[0]

    def root_exponent(self) -> int | None:
        """Return k when this value equals ζ_M^k, otherwise None."""
        return _root_table(self.modulus).get(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.modulus, self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            if other.modulus == self.modulus:
                return self.coeffs == other.coeffs
            try:
                a, b = _align(self, other, common=True)
            except ValidationError:
                return False
            return a.coeffs == b.coeffs
        try:
            return self == CycNum.rational(self.modulus, other)
        except (TypeError, ValueError, CoercionFailed, ValidationError):
            return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        least = self.reduced()
        return hash((least.modulus, least.coeffs))

    def reduced(self) -> "CycNum":
        """
        The same value written in the smallest field Q(ζ_d), d | M, that holds it.

        Equal values give the same result whatever modulus they are written in.

        Example::

            assert CycNum.root(6, 2).reduced().modulus == 3
        """
        return self._least

    @cached_property
    def _least(self) -> "CycNum":
        return _least_field(self)

    def _coerce(self, other) -> "CycNum | None":
        if isinstance(other, CycNum):
            return other
        try:
            return CycNum.rational(self.modulus, other)
        except (TypeError, ValueError, CoercionFailed):
            return None

    def _binary(self, other, op: str, reflected: bool = False):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return cyc_arith(other, self, op) if reflected else cyc_arith(self, other, op)

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return self._binary(other, "sub", reflected=True)

    def __mul__(self, other):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, "div")

    def __rtruediv__(self, other):
        return self._binary(other, "div", reflected=True)

    def __neg__(self) -> "CycNum":
        return CycNum(self.modulus, tuple(-c for c in self.coeffs))

    def __pow__(self, exponent: int) -> "CycNum":
        if exponent < 0:
            return (1 / self) ** (-exponent)
        result, base = CycNum.one(self.modulus), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor) -> "CycNum":
        """Multiply by a rational without a polynomial reduction."""
        factor = _as_rational(factor)
        return CycNum(self.modulus, tuple(c * factor for c in self.coeffs))

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        inv = dup_invert(_to_dup(self.coeffs), list(_cyclotomic_dup(self.modulus)), QQ)
        return CycNum(self.modulus, _from_dup(inv, self.modulus))

    def conjugate(self) -> "CycNum":
        """Complex conjugation, i.e. ``galois(self, -1)``."""
        return galois(self, -1)

    def lift(self, modulus: int) -> "CycNum":
        return lift_modulus(self, modulus)

    def embed(self, digits: int = DEFAULT_DIGITS) -> "ComplexInterval":
        return embed(self, digits)

    def to_json(self) -> dict:
        """
        Serialize as ``{"modulus", "exponent"}`` for roots of unity, otherwise
        as the full rational coordinate vector.
        """
        exponent = self.root_exponent()
        if exponent is not None:
            return {"modulus": self.modulus, "exponent": exponent}
        return {"modulus": self.modulus, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNum":
        modulus = int(data["modulus"])
        if "exponent" in data:
            return cls.root(modulus, int(data["exponent"]))
        return cls.from_coeffs(modulus, data["coeffs"])


@lru_cache(maxsize=None)
def _root(modulus: int, exponent: int) -> CycNum:
    power = [QQ.one] + [QQ.zero] * exponent
    return CycNum(modulus, _reduce(power, modulus))


@lru_cache(maxsize=None)
def _root_table(modulus: int) -> dict:
    return {_root(modulus, k).coeffs: k for k in range(modulus)}


def _align(a: CycNum, b: CycNum, common: bool = False) -> tuple[CycNum, CycNum]:
    if a.modulus == b.modulus:
        return a, b
    if b.modulus % a.modulus == 0:
        return lift_modulus(a, b.modulus), b
    if a.modulus % b.modulus == 0:
        return a, lift_modulus(b, a.modulus)
    if not common:
        raise ValidationError(
            f"Incompatible moduli {a.modulus} and {b.modulus}; lift both to a common modulus first"
        )
    target = working_modulus(a.modulus, b.modulus)
    return lift_modulus(a, target), lift_modulus(b, target)


def cyc_arith(a: CycNum, b: CycNum, op: Literal["add", "sub", "mul", "div"], common: bool = False) -> CycNum:
    """
    Exact field arithmetic with canonical reduction.

    When the moduli differ, the smaller one is lifted into the larger if it
    divides it. Otherwise both are lifted to their lcm, but only when
    ``common`` is requested.

    Args:
        a: Left operand.
        b: Right operand.
        op: One of ``add``, ``sub``, ``mul``, ``div``.
        common: Allow lifting both operands to the lcm of their moduli.

    Raises:
        ZeroDivisionError: For ``div`` by zero.
        ValidationError: For incompatible moduli or an unknown operation.
    """
    a, b = _align(a, b, common)
    modulus = a.modulus
    if op == "add":
        return CycNum(modulus, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))
    if op == "sub":
        return CycNum(modulus, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))
    if op == "mul":
        if a.is_rational():
            return b.scale(a.coeffs[0])
        if b.is_rational():
            return a.scale(b.coeffs[0])
        return CycNum(modulus, _reduce(dup_mul(_to_dup(a.coeffs), _to_dup(b.coeffs), QQ), modulus))
    if op == "div":
        return cyc_arith(a, b.inverse(), "mul")
    raise ValidationError(f"Unknown operation {op!r}")


def galois(a: CycNum, s: int) -> CycNum:
    """
    Apply the field automorphism ζ ↦ ζ^s.

    Raises:
        ValidationError: If s is not coprime to the modulus.

    Example::

        q = CycNum.root(3, 1)
        assert galois(q, -1) == q**2
    """
    if gcd(s, a.modulus) != 1:
        raise ValidationError(f"Galois exponent {s} is not coprime to {a.modulus}")
    result = CycNum.zero(a.modulus)
    for j, c in enumerate(a.coeffs):
        if c:
            result = result + CycNum.root(a.modulus, j * s).scale(c)
    return result


def lift_modulus(a: CycNum, modulus: int) -> CycNum:
    """
    Re-express ``a`` in Q(ζ_M') through ζ_M = ζ_M'^(M'/M).

    Raises:
        ValidationError: If M does not divide M'.
    """
    if modulus == a.modulus:
        return a
    if modulus % a.modulus:
        raise ValidationError(f"Cannot lift from modulus {a.modulus} to {modulus}")
    step = modulus // a.modulus
    result = CycNum.zero(modulus)
    for j, c in enumerate(a.coeffs):
        if c:
            result = result + CycNum.root(modulus, j * step).scale(c)
    return result


@lru_cache(maxsize=None)
def _lift_columns(small: int, modulus: int) -> tuple:
    return tuple(lift_modulus(CycNum.root(small, k), modulus).coeffs for k in range(phi(small)))


def _least_field(a: CycNum) -> CycNum:
    if a.is_rational():
        return CycNum(1, a.coeffs[:1])
    for d in divisors(a.modulus):
        if d == a.modulus:
            return a
        # Q(ζ_2k) = Q(ζ_k) for odd k
        if d % 4 == 2:
            continue
        columns = _lift_columns(d, a.modulus)
        width = len(columns)
        rows = [[col[i] for col in columns] + [a.coeffs[i]] for i in range(phi(a.modulus))]
        echelon, pivots = DomainMatrix(rows, (len(rows), width + 1), QQ).rref()
        if width in pivots:
            continue
        entries = echelon.to_list()
        return CycNum(d, tuple(entries[i][width] for i in range(width)))
    return a


def working_modulus(*moduli: int) -> int:
    """The lcm of the given moduli, the field every value of a session lives in."""
    result = 1
    for m in moduli:
        result = result * m // gcd(result, m)
    return result


@contextmanager
def _interval_digits(digits: int) -> Iterator[None]:
    old_dps = iv.dps
    iv.dps = digits
    try:
        yield
    finally:
        iv.dps = old_dps


@dataclass(frozen=True)
class ComplexInterval:
    """
    A rectangle in the complex plane with ``mpmath.iv`` interval sides.

    Attributes:
        real: Interval enclosing the real part.
        imag: Interval enclosing the imaginary part.
    """

    real: object
    imag: object

    def __mul__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def __contains__(self, value) -> bool:
        if isinstance(value, ComplexInterval):
            return value.real in self.real and value.imag in self.imag
        value = complex(value)
        return value.real in self.real and value.imag in self.imag

    @property
    def mid(self) -> complex:
        return complex(float(self.real.mid), float(self.imag.mid))

    @property
    def radius(self) -> float:
        return max(float(self.real.delta), float(self.imag.delta)) / 2

    def is_positive_real(self) -> bool:
        """True only if the enclosure proves a positive real part and the imaginary part may be zero."""
        return (self.real.a > 0) is True and 0 in self.imag


def embed(a: CycNum, digits: int = DEFAULT_DIGITS) -> ComplexInterval:
    """
    Rigorous enclosure of ``a`` under ζ_M ↦ exp(2πi/M).

    Args:
        a: Value to embed.
        digits: Working precision in decimal digits, at least 1.

    Example::

        box = embed(CycNum.root(3, 1))
        assert complex(-0.5, 3 ** 0.5 / 2) in box
    """
    if digits < 1:
        raise ValidationError("digits must be at least 1")
    with _interval_digits(digits + 5):
        real, imag = iv.mpf(0), iv.mpf(0)
        for j, c in enumerate(a.coeffs):
            if not c:
                continue
            value = iv.mpf(int(QQ.numer(c))) / int(QQ.denom(c))
            angle = 2 * iv.pi * j / a.modulus
            real += value * iv.cos(angle)
            imag += value * iv.sin(angle)
    return ComplexInterval(real, imag)
