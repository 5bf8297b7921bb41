"""
Quadratic Gauss sums and the eigenvalue profiles of factorized braid operators.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from sympy import isprime
from sympy.ntheory import legendre_symbol

from .cyclo import CycNum
from .errors import ValidationError, VerificationFailure
from .linalg import CycMatrix
from .search import gaussian_product
from .ttp import Element, regular_rep
from .ybo import slot_algebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenProfile:
    """
    A multiset of eigenvalues.

    Attributes:
        entries: ``(eigenvalue, multiplicity)`` pairs, multiplicities positive.
    """

    entries: tuple

    def __post_init__(self):
        if any(k <= 0 for _, k in self.entries):
            raise ValidationError("Multiplicities must be positive")

    @property
    def total(self) -> int:
        return sum(k for _, k in self.entries)

    def multiplicity(self, value: CycNum) -> int:
        return sum(k for v, k in self.entries if v == value)

    def as_dict(self) -> dict:
        return {v: k for v, k in self.entries}

    def scaled(self, factor: CycNum) -> "EigenProfile":
        """The profile of factor·x."""
        return EigenProfile(_sorted_entries((v * factor, k) for v, k in self.entries))

    def to_json(self) -> list:
        return [{"eigenvalue": v.to_json(), "multiplicity": k} for v, k in self.entries]


def _sorted_entries(entries) -> tuple:
    def key(item):
        value = item[0]
        exponent = value.root_exponent()
        return (exponent is None, exponent if exponent is not None else 0, value.sort_key())

    return tuple(sorted(entries, key=key))


def _check_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise ValidationError(f"{p} is not an odd prime")


def gauss_sum(p: int, a: int, s: int = 0) -> CycNum:
    """
    Σ_j q^(a·j² + s·j) over j in Z_p, q = ζ_p.

    Example::

        assert gauss_sum(3, 1) == 1 + 2 * CycNum.root(3, 1)
    """
    _check_prime(p)
    total = CycNum.zero(p)
    for j in range(p):
        total = total + CycNum.root(p, a * j * j + s * j)
    return total


def profile_case(p: int, sign: int, x: int) -> int:
    """
    Case 2 when the binary form j² + εx·k² is isotropic over Z_p, i.e. −εx is a square, else case 1.
    """
    _check_prime(p)
    if x % p == 0:
        raise ValidationError("x must be nonzero mod p")
    return 2 if legendre_symbol((-sign * x) % p, p) == 1 else 1


def eigenvalue_profile(p: int, sign: int, x: int) -> EigenProfile:
    """
    Normalized eigenvalues of t = Σ q^(j² + εx·k²) u^j v^k in the regular representation of C[Z_p x Z_p].

    Case 1 gives 1 once and every other p-th root p+1 times; case 2 gives 1
    with multiplicity 2p−1 and every other p-th root p−1 times.

    Raises:
        ValidationError: If p is not an odd prime, ε ≠ ±1 or x ≡ 0.

    Example::

        profile = eigenvalue_profile(3, 1, 2)
        assert profile.multiplicity(CycNum.one(3)) == 5
    """
    if sign not in (1, -1):
        raise ValidationError("sign must be 1 or -1")
    case = profile_case(p, sign, x)
    if case == 1:
        counts = [1] + [p + 1] * (p - 1)
    else:
        counts = [2 * p - 1] + [p - 1] * (p - 1)
    return EigenProfile(tuple((CycNum.root(p, k), counts[k]) for k in range(p)))


def spectrum_exact(x: Element, candidates, threads: int = 1) -> EigenProfile:
    """
    Multiplicities of the candidate eigenvalues of left multiplication by ``x``,
    each one the nullity of regular_rep(x) − λ·I.

    Raises:
        VerificationFailure: If the multiplicities do not add up to the dimension.

    Example::

        profile = spectrum_exact(A.one(), [CycNum.one(3)])
        assert profile.total == A.dimension
    """
    matrix = regular_rep(x)
    size = matrix.shape[0]
    modulus = matrix.modulus
    distinct = []
    for value in candidates:
        value = value.lift(modulus) if isinstance(value, CycNum) else CycNum.rational(modulus, value)
        if value not in distinct:
            distinct.append(value)

    def nullity(value: CycNum) -> int:
        shifted = matrix - CycMatrix.identity(size, modulus).scale(value)
        result = shifted.nullity()
        logger.debug("nullity at %r: %d", value, result)
        return result

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            nullities = list(pool.map(nullity, distinct))
    else:
        nullities = [nullity(v) for v in distinct]
    entries = [(v, k) for v, k in zip(distinct, nullities) if k]
    found = sum(k for _, k in entries)
    if found != size:
        raise VerificationFailure(
            "eigenvalue candidates do not exhaust the spectrum",
            {"dimension": size, "found": found},
        )
    return EigenProfile(_sorted_entries(entries))


def factorized_profile(p: int, sign: int, x: int, threads: int = 1) -> tuple[EigenProfile, EigenProfile]:
    """
    The closed-form profile and the exact one for f(j, k) = q^(j² + εx·k²).

    The exact spectrum is taken on the candidate in C[Z_p x Z_p], with the
    candidate eigenvalues N·ζ_p^k for N the product of the two zero-shift
    Gauss sums, then divided by N.

    Returns:
        ``(expected, exact)``; they agree when the closed form is right.
    """
    profile_case(p, sign, x)
    cand = gaussian_product(p, 1, sign * x)
    alg = slot_algebra(cand)
    element = alg.embed_slot({g: c for g, c in enumerate(cand.f)}, 1)
    norm = gauss_sum(p, 1) * gauss_sum(p, sign * x)
    exact = spectrum_exact(element, [norm * CycNum.root(p, k) for k in range(p)], threads)
    expected = eigenvalue_profile(p, sign, x)
    return expected, exact.scaled(1 / norm)
