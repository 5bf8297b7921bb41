"""
Yang–Baxter operators r = Σ f(g) g of a base algebra and their verification.

A candidate is a braid operator for the twist α when its copies r₁, r₂ in
A₃(G, τ) satisfy r₁r₂r₁ = r₂r₁r₂ and r is invertible.

::

    from twistbraid.groups import cyclic, validate_bihom
    from twistbraid.ybo import gaussian_candidate, verify

    cand = gaussian_candidate(3)
    alpha = validate_bihom(cyclic(3), [[2]], modulus=3)
    report = verify(cand, alpha)
    assert report.braid_ok and report.unitary_scalar == 3
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp
from sympy import Rational, isprime

from .cyclo import DEFAULT_DIGITS, CycNum, embed, galois, working_modulus
from .errors import ValidationError
from .groups import (
    BaseAlgebra,
    Bihomomorphism,
    FiniteGroup,
    cyclic,
    q8_base,
    symmetric_group,
    validate_bihom,
)
from .linalg import CycMatrix
from .ttp import (
    CharacterRescale,
    Element,
    GaloisAction,
    GroupAutomorphism,
    TTPAlgebra,
    check_character,
    check_inversion_applies,
    regular_rep,
    star,
)

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10**6
ORDER_CAP = 64


@dataclass(frozen=True)
class YBOCandidate:
    """
    The coefficient function f: G → Q(ζ_M) of r = Σ f(g) g.

    Attributes:
        base: The base algebra C^ν[G].
        f: One coefficient per element index, zeros included.
        normalizer: Optional scalar γ; the operator is γ·r. It never enters the braid check.
    """

    base: BaseAlgebra
    f: tuple
    normalizer: CycNum | None = None

    def __post_init__(self):
        if len(self.f) != self.base.group.order:
            raise ValidationError(f"Need {self.base.group.order} coefficients, got {len(self.f)}")
        if not all(isinstance(c, CycNum) for c in self.f):
            raise ValidationError("Coefficients must be CycNum values")

    @classmethod
    def from_values(cls, base: BaseAlgebra, values, modulus: int = 1, normalizer=None) -> "YBOCandidate":
        """Build from a list of CycNum values or rationals; rationals land in Q(ζ_modulus)."""
        coeffs = tuple(v if isinstance(v, CycNum) else CycNum.rational(modulus, v) for v in values)
        return cls(base, coeffs, normalizer)

    @property
    def group(self) -> FiniteGroup:
        return self.base.group

    @property
    def modulus(self) -> int:
        """The smallest cyclotomic field holding every coefficient and the normalizer."""
        moduli = [c.modulus for c in self.f]
        if self.normalizer is not None:
            moduli.append(self.normalizer.modulus)
        return working_modulus(*moduli)

    @property
    def support(self) -> list[int]:
        return [g for g, c in enumerate(self.f) if c]

    def scaled_coefficients(self) -> tuple:
        """Coefficients of γ·r, or of r when there is no normalizer."""
        if self.normalizer is None:
            return self.f
        return tuple(c * self.normalizer for c in self.f)

    def key(self) -> tuple:
        m = self.modulus
        return tuple(c.lift(m).coeffs for c in self.f)

    def normalized(self) -> "YBOCandidate":
        """The projective representative whose first nonzero coefficient is 1."""
        lead = next((c for c in self.f if c), None)
        if lead is None:
            return self
        return YBOCandidate(self.base, tuple(c / lead for c in self.f))

    def to_json(self) -> dict:
        data = {"f": [c.to_json() for c in self.f]}
        if self.normalizer is not None:
            data["normalizer"] = self.normalizer.to_json()
        return data


@dataclass
class VerificationReport:
    """
    Outcome of :func:`verify`.

    Attributes:
        braid_ok: r₁r₂r₁ = r₂r₁r₂ in A₃.
        invertible: r is invertible in the base algebra.
        unitary_scalar: c with r*r = c·1 and c > 0, when it exists.
        order_of_r: Least k ≤ cap with (γr)^k = 1.
        projective_order: Least k ≤ cap with (γr)^k scalar.
    """

    braid_ok: bool
    invertible: bool
    unitary_scalar: CycNum | None = None
    order_of_r: int | None = None
    projective_order: int | None = None

    def to_json(self) -> dict:
        return {
            "braid_ok": self.braid_ok,
            "invertible": self.invertible,
            "unitary_scalar": None if self.unitary_scalar is None else self.unitary_scalar.to_json(),
            "order_of_r": self.order_of_r,
            "projective_order": self.projective_order,
        }


def _zero_twist(group: FiniteGroup) -> Bihomomorphism:
    return Bihomomorphism(group, 1, np.zeros((group.order, group.order), dtype=np.int64))


def slot_algebra(cand: YBOCandidate) -> TTPAlgebra:
    """A₂ = C^ν[G] over the candidate's field."""
    return TTPAlgebra(cand.base, _zero_twist(cand.group), 2, cand.modulus)


def braid_algebra(cand: YBOCandidate, alpha: Bihomomorphism, n: int = 3) -> TTPAlgebra:
    return TTPAlgebra(cand.base, alpha, n, cand.modulus)


def r_element(cand: YBOCandidate, alg: TTPAlgebra, i: int, normalized: bool = False) -> Element:
    """The copy r_i of r (or of γr) in slot i of ``alg``."""
    coeffs = cand.scaled_coefficients() if normalized else cand.f
    return alg.embed_slot({g: c for g, c in enumerate(coeffs) if c}, i)


def braid_check(cand: YBOCandidate, alpha: Bihomomorphism) -> bool:
    """
    Test r₁r₂r₁ = r₂r₁r₂ exactly in A₃(G, τ).

    Example::

        assert braid_check(gaussian_candidate(3), alpha)
    """
    alg = braid_algebra(cand, alpha)
    r1, r2 = r_element(cand, alg, 1), r_element(cand, alg, 2)
    return r1 * r2 * r1 == r2 * r1 * r2


def invertible(cand: YBOCandidate) -> bool:
    """True iff left multiplication by r on C^ν[G] is nonsingular."""
    return regular_rep(r_element(cand, slot_algebra(cand), 1)).is_nonsingular()


def projective_unitary(cand: YBOCandidate, digits: int = DEFAULT_DIGITS) -> CycNum | None:
    """
    The scalar c with (γr)*(γr) = c·1, if it exists and is positive.

    Positivity is decided on a rigorous interval enclosure of c.

    Example::

        assert projective_unitary(gaussian_candidate(3)) == 3
    """
    alg = slot_algebra(cand)
    r = r_element(cand, alg, 1, normalized=True)
    c = (star(r) * r).scalar_value()
    if c is None or not c:
        return None
    if not embed(c, digits).is_positive_real():
        return None
    return c


def _orders(cand: YBOCandidate, cap: int) -> tuple[int | None, int | None]:
    alg = slot_algebra(cand)
    r = r_element(cand, alg, 1, normalized=True)
    one = alg.one()
    power = r
    exact = projective = None
    for k in range(1, cap + 1):
        if projective is None:
            value = power.scalar_value()
            if value is not None and value:
                projective = k
        if power == one:
            exact = k
            break
        power = power * r
    return exact, projective


def order_of_r(cand: YBOCandidate, cap: int = DEFAULT_CAP) -> int | None:
    """Least k ≤ cap with (γr)^k = 1, computed in the base algebra."""
    return _orders(cand, cap)[0]


def projective_order(cand: YBOCandidate, cap: int = DEFAULT_CAP) -> int | None:
    return _orders(cand, cap)[1]


def verify(cand: YBOCandidate, alpha: Bihomomorphism, cap: int = ORDER_CAP, digits: int = DEFAULT_DIGITS) -> VerificationReport:
    """
    Run every check on a candidate.

    Args:
        cand: The candidate.
        alpha: The twist.
        cap: Largest power tried when searching for the order of γr.
        digits: Interval precision for the positivity decision.
    """
    braid_ok = braid_check(cand, alpha)
    ok = invertible(cand)
    report = VerificationReport(braid_ok, ok, projective_unitary(cand, digits))
    if ok:
        report.order_of_r, report.projective_order = _orders(cand, cap)
    logger.debug("verify %s: braid=%s invertible=%s", cand.key(), braid_ok, ok)
    return report


def unit_column_norms(cand: YBOCandidate, scalar: CycNum, digits: int = DEFAULT_DIGITS) -> bool:
    """
    Numeric sanity check of unitarity: every column of regular_rep(γr)/√c has norm 1.

    The tolerance is 10^-(digits - 10).
    """
    matrix = regular_rep(r_element(cand, slot_algebra(cand), 1, normalized=True))
    with mp.workdps(digits):
        c = _mid(embed(scalar, digits).real)
        tolerance = mp.mpf(10) ** -(digits - 10)
        for j in range(matrix.shape[1]):
            total = mp.mpf(0)
            for value in matrix.column(j).values():
                box = embed(value, digits)
                total += _mid(box.real) ** 2 + _mid(box.imag) ** 2
            if abs(total / c - 1) > tolerance:
                return False
    return True


def _mid(interval):
    return mp.make_mpf(interval.mid._mpi_[0])


@dataclass(frozen=True)
class GlobalScale:
    """r ↦ z·r."""

    z: CycNum


@dataclass(frozen=True)
class SupportInversion:
    """f(g) ↦ f(g⁻¹), the inversion ι applied to r."""


@dataclass(frozen=True)
class CoefficientConjugation:
    """
    r ↦ ι(r*). On an untwisted base this is f(g) ↦ conj(f(g)); a cocycle adds
    the factor ν(g, g⁻¹)⁻¹.
    """


@dataclass(frozen=True)
class OperatorInversion:
    """r ↦ r⁻¹."""


ACTION_TYPES = (
    GlobalScale,
    CharacterRescale,
    GroupAutomorphism,
    GaloisAction,
    SupportInversion,
    CoefficientConjugation,
    OperatorInversion,
)


def target_form(alpha: Bihomomorphism, action) -> Bihomomorphism:
    """The twist the image of a solution for ``alpha`` solves."""
    if isinstance(action, GaloisAction):
        return alpha.scaled(action.s)
    return alpha


def symmetry_apply(cand: YBOCandidate, action, alpha: Bihomomorphism | None = None) -> YBOCandidate:
    """
    Transform a candidate by one symmetry.

    Solutions go to solutions: for :class:`GaloisAction` in the algebra of
    :func:`target_form`, otherwise for the same twist.

    Args:
        cand: The candidate.
        action: A :class:`GlobalScale`, :class:`CharacterRescale`, :class:`GroupAutomorphism`,
            :class:`GaloisAction`, :class:`SupportInversion`, :class:`CoefficientConjugation`
            or :class:`OperatorInversion`.
        alpha: The twist, required for :class:`GroupAutomorphism`.

    Raises:
        ValidationError: If the action does not apply to the base, ψ is not in Aut(G, α),
            χ is not a character, or r is not invertible.

    Example::

        rescaled = symmetry_apply(gaussian_candidate(3), CharacterRescale((0, 1, 2), 3))
        assert rescaled.f[1] == CycNum.root(3, 2)
    """
    group, base = cand.group, cand.base
    if isinstance(action, GlobalScale):
        return YBOCandidate(base, tuple(c * action.z for c in cand.f), cand.normalizer)
    if isinstance(action, CharacterRescale):
        modulus = working_modulus(cand.modulus, action.modulus)
        check_character(group, action, modulus)
        step = modulus // action.modulus
        return YBOCandidate(
            base,
            tuple(c.lift(modulus) * CycNum.root(modulus, step * e) for c, e in zip(cand.f, action.exponents)),
            cand.normalizer,
        )
    if isinstance(action, GroupAutomorphism):
        if alpha is None:
            raise ValidationError("Applying a group automorphism needs the twist")
        if not group.is_automorphism(action.images):
            raise ValidationError("Map is not a group automorphism")
        if alpha.pulled_back(action.images) != alpha:
            raise ValidationError("Automorphism does not preserve the twist")
        if base.is_twisted and not base.preserves_cocycle(action.images):
            raise ValidationError("Automorphism does not preserve the cocycle")
        coeffs = [None] * group.order
        for g, c in enumerate(cand.f):
            coeffs[action.images[g]] = c
        return YBOCandidate(base, tuple(coeffs), cand.normalizer)
    if isinstance(action, GaloisAction):
        m = cand.modulus
        normalizer = None if cand.normalizer is None else galois(cand.normalizer.lift(m), action.s)
        return YBOCandidate(
            base.galois_twin(action.s), tuple(galois(c.lift(m), action.s) for c in cand.f), normalizer
        )
    if isinstance(action, SupportInversion):
        check_inversion_applies(base, "Support inversion")
        return YBOCandidate(base, tuple(cand.f[group.inverse(g)] for g in range(group.order)), cand.normalizer)
    if isinstance(action, CoefficientConjugation):
        check_inversion_applies(base, "Coefficient conjugation")
        m = working_modulus(cand.modulus, base.cocycle_modulus)
        step = m // base.cocycle_modulus
        coeffs = tuple(
            c.lift(m).conjugate() * CycNum.root(m, -step * base.star_exponent(g)) for g, c in enumerate(cand.f)
        )
        normalizer = None if cand.normalizer is None else cand.normalizer.conjugate()
        return YBOCandidate(base, coeffs, normalizer)
    if isinstance(action, OperatorInversion):
        alg = slot_algebra(cand)
        try:
            inverse = r_element(cand, alg, 1).inverse()
        except ZeroDivisionError:
            raise ValidationError("Operator inversion needs an invertible r") from None
        coeffs = tuple(inverse.coefficient((g,)) for g in range(group.order))
        normalizer = None if cand.normalizer is None else cand.normalizer.inverse()
        return YBOCandidate(base, coeffs, normalizer)
    raise ValidationError(f"Unknown symmetry action {action!r}")


def linear_characters(group: FiniteGroup) -> list[CharacterRescale]:
    """
    Every homomorphism G → μ_N with N = exp(G), as exponent tuples mod N.

    Generator images are tried exhaustively and extended along the Cayley
    graph; inconsistent assignments are dropped.
    """
    n = group.exponent
    gens = group.generators()
    rows = group.rows
    found = []
    for images in np.ndindex(*([n] * len(gens))):
        values = {group.identity: 0}
        frontier = [group.identity]
        consistent = True
        while frontier and consistent:
            x = frontier.pop()
            for g, image in zip(gens, images):
                y, value = rows[x][g], (values[x] + image) % n
                if y in values:
                    if values[y] != value:
                        consistent = False
                        break
                else:
                    values[y] = value
                    frontier.append(y)
        if not consistent or len(values) != group.order:
            continue
        action = CharacterRescale(tuple(values[g] for g in range(group.order)), n)
        exps = np.asarray(action.exponents)
        if ((exps[group.table] - exps[:, None] - exps[None, :]) % n).any():
            continue
        found.append(action)
    return sorted(set(found), key=lambda a: a.exponents)


def gaussian_candidate(m: int) -> YBOCandidate:
    """
    The Gaussian r = Σ_j q^(j²) u^j on Z_m, q = ζ_m, without the 1/√m normalizer.

    Example::

        assert gaussian_candidate(3).f == (CycNum.one(3), CycNum.root(3, 1), CycNum.root(3, 1))
    """
    return YBOCandidate(BaseAlgebra(cyclic(m)), tuple(CycNum.root(m, j * j) for j in range(m)))


def _gaussian_twist(p: int) -> Bihomomorphism:
    return validate_bihom(cyclic(p), [[2]], modulus=p)


def gaussian_conjugation_check(p: int) -> bool:
    """
    Check r₁u₂r₁⁻¹ = q·u₁⁻¹u₂ and r₂u₁r₂⁻¹ = q⁻¹·u₁u₂ for the Gaussian on Z_p.

    Raises:
        ValidationError: If p is not an odd prime.
    """
    if p == 2 or not isprime(p):
        raise ValidationError(f"{p} is not an odd prime")
    cand = gaussian_candidate(p)
    alg = braid_algebra(cand, _gaussian_twist(p))
    r1, r2 = r_element(cand, alg, 1), r_element(cand, alg, 2)
    u1, u2 = alg.generator(1, 1), alg.generator(1, 2)
    u1_inv = alg.generator(p - 1, 1)
    q = alg.q
    first = r1 * u2 * r1.inverse() == u1_inv * u2 * q
    second = r2 * u1 * r2.inverse() == u1 * u2 * q.inverse()
    logger.debug("gaussian conjugation p=%d: %s %s", p, first, second)
    return first and second


@dataclass(frozen=True)
class Localization:
    """
    The local matrix R = Σ f(j) U^j on C^p ⊗ C^p and the verdicts of its checks.

    Attributes:
        matrix: R as a p² x p² matrix, basis e_a ⊗ e_b at index a·p + b.
        ybe_ok: (R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R) on (C^p)^⊗3.
        relations_ok: U⊗I and I⊗U satisfy the defining relations of A₄(Z_p).
    """

    matrix: CycMatrix
    ybe_ok: bool
    relations_ok: bool


def local_generator(p: int, modulus: int) -> CycMatrix:
    """U(e_a ⊗ e_b) = q^(b−a) e_(a+1) ⊗ e_(b+1)."""
    step = modulus // p
    entries = {
        (((a + 1) % p) * p + (b + 1) % p, a * p + b): CycNum.root(modulus, step * (b - a))
        for a in range(p)
        for b in range(p)
    }
    return CycMatrix((p * p, p * p), entries, modulus)


def localize_zp(cand: YBOCandidate, alpha: Bihomomorphism | None = None) -> Localization:
    """
    Turn an A(Z_p, τ)-YBO into an honest p² x p² solution of the Yang–Baxter equation.

    Raises:
        ValidationError: If the base is not the untwisted Z_p or the twist is not α(x, y) = 2xy.
    """
    group = cand.group
    if group.factors is None or len(group.factors) != 1 or cand.base.is_twisted:
        raise ValidationError("Localization needs the untwisted base Z_p")
    p = group.factors[0]
    expected = _gaussian_twist(p)
    if alpha is not None and alpha != expected:
        raise ValidationError("Localization needs the twist alpha(x, y) = 2xy")
    modulus = working_modulus(p, cand.modulus)
    u = local_generator(p, modulus)
    identity = CycMatrix.identity(p * p, modulus)
    r = CycMatrix((p * p, p * p), {}, modulus)
    power = identity
    for j in range(p):
        if cand.f[j]:
            r = r + power.scale(cand.f[j].lift(modulus))
        power = power @ u
    eye = CycMatrix.identity(p, modulus)
    r1, r2 = r.kron(eye), eye.kron(r)
    ybe_ok = r1 @ r2 @ r1 == r2 @ r1 @ r2
    u1, u2 = u.kron(eye), eye.kron(u)
    q2 = CycNum.root(modulus, 2 * (modulus // p))
    big = CycMatrix.identity(p ** 3, modulus)
    relations_ok = (
        u1 @ u2 == (u2 @ u1).scale(q2)
        and power == identity
        and _matrix_power(u1, p) == big
        and _matrix_power(u2, p) == big
    )
    return Localization(r, ybe_ok, relations_ok)


def _matrix_power(a: CycMatrix, k: int) -> CycMatrix:
    result = CycMatrix.identity(a.shape[0], a.modulus)
    for _ in range(k):
        result = result @ a
    return result


def projective_image_order(cand: YBOCandidate, alpha: Bihomomorphism, n: int, cap: int = DEFAULT_CAP) -> int | None:
    """
    Order of the image of the braid group B_n in PGL(A_n), generated by the
    regular representations of r_1, …, r_(n−1).

    Each matrix is rescaled so its first nonzero entry is 1 before it is
    stored, so scalar multiples collapse to one element.

    Returns:
        The order, or None when the closure grows past ``cap``.

    Example::

        assert projective_image_order(gaussian_candidate(3), alpha, n=3) == 24
    """
    alg = braid_algebra(cand, alpha, n)
    if alg.slots == 0:
        return 1
    gens = []
    for i in range(1, alg.slots + 1):
        m = regular_rep(r_element(cand, alg, i))
        gens.append(m.scale(1 / m.first_nonzero()))
    identity = CycMatrix.identity(alg.dimension, alg.modulus)
    seen = {identity.projective_key()}
    frontier = [identity]
    while frontier:
        nxt = []
        for element in frontier:
            for g in gens:
                product = element @ g
                product = product.scale(1 / product.first_nonzero())
                key = product.key()
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > cap:
                    logger.info("projective image of B_%d exceeds cap %d", n, cap)
                    return None
                nxt.append(product)
        frontier = nxt
        logger.debug("image closure: %d elements", len(seen))
    return len(seen)


def q8_candidate(a, b, c, base: BaseAlgebra | None = None) -> YBOCandidate:
    """
    r = ½(1 + a·u + b·v + c·uv) on the quaternion base.

    Example::

        assert braid_check(q8_candidate(1, 1, 1), q8_twist())
    """
    base = base or q8_base()
    group = base.group
    values = [None] * 4
    half = Rational(1, 2)
    for element, coeff in (((0, 0), 1), ((1, 0), a), ((0, 1), b), ((1, 1), c)):
        values[group.index(element)] = CycNum.rational(1, half * Rational(coeff))
    return YBOCandidate(base, tuple(values))


def _s3_elements(group: FiniteGroup) -> tuple[int, int, int, int]:
    e = group.index((0, 1, 2))
    u = group.index((1, 0, 2))
    v = group.index((1, 2, 0))
    uv = group.mul(u, v)
    uv2 = group.mul(uv, v)
    return e, u, uv, uv2


def s3_family_point(t, sign: int = -1) -> tuple:
    """
    A rational point (x, y, z) with x + y + z = sign and xy + yz + zx = 0.

    Args:
        t: Rational parameter.
        sign: ±1.

    Example::

        assert s3_family_point(1) == (Rational(-2, 3), Rational(-2, 3), Rational(1, 3))
    """
    if sign not in (1, -1):
        raise ValidationError("sign must be 1 or -1")
    t = Rational(t)
    d = 1 + t + t * t
    return (sign * (1 + t) / d, sign * t * (1 + t) / d, -sign * t / d)


def s3_candidate(x, y, z, group: FiniteGroup | None = None) -> YBOCandidate:
    """
    r = γ(1 + i·x·u + i·y·uv + i·z·uv²) on S3, γ = 1/(1+i), u = (12), v = (123).

    Only the identity and the three transpositions are in the support.
    """
    group = group or symmetric_group(3)
    i = CycNum.root(4, 1)
    values = [CycNum.zero(4)] * group.order
    e, u, uv, uv2 = _s3_elements(group)
    values[e] = CycNum.one(4)
    for g, coeff in ((u, x), (uv, y), (uv2, z)):
        values[g] = i * CycNum.rational(4, Rational(coeff))
    return YBOCandidate(BaseAlgebra(group), tuple(values), normalizer=1 / (1 + i))


def s3_ideal_relations(a, b, c, d, e) -> list[CycNum]:
    """
    The six generators of the solution ideal for r = 1 + a·u + b·v + c·v² + d·uv + e·uv²
    on S3, evaluated at the given values.
    """
    a, b, c, d, e = (_as_cyc(v) for v in (a, b, c, d, e))
    return [
        c,
        b,
        e * (a * a + d * d + e * e + 1),
        a * d + a * e + d * e,
        a ** 3 + a * a * e + 2 * a * e * e + d * e * e + e ** 3 + a + e,
        -(a * a * e) + a * e * e + d ** 3 + 2 * d * e * e + d,
    ]


def s3_point_coefficients(x, y, z) -> tuple:
    """(a, b, c, d, e) = (i·x, 0, 0, i·y, i·z) for a point of the S3 family."""
    i = CycNum.root(4, 1)
    return (i * _as_cyc(x), CycNum.zero(4), CycNum.zero(4), i * _as_cyc(y), i * _as_cyc(z))


def _as_cyc(value) -> CycNum:
    if isinstance(value, CycNum):
        return value.lift(working_modulus(value.modulus, 4))
    if isinstance(value, Fraction):
        value = Rational(value.numerator, value.denominator)
    return CycNum.rational(4, Rational(value))
