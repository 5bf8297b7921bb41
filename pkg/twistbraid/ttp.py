"""
The iterated twisted tensor product A_n(G, τ).

A_n has n−1 tensor slots, each a copy of the base algebra C^ν[G]. Generators in
adjacent slots obey the straightening rule

    g_i h_(i+1) = q^α(g,h) h_(i+1) g_i,

slots further apart commute, and the monomials g^(1)_1 g^(2)_2 … g^(n−1)_(n−1)
(slot 1 leftmost) form a basis of dimension |G|^(n−1).

::

    from twistbraid.groups import FiniteGroup, BaseAlgebra, validate_bihom
    from twistbraid.ttp import TTPAlgebra

    G = FiniteGroup.abelian(3)
    A3 = TTPAlgebra(BaseAlgebra(G), validate_bihom(G, [[2]], modulus=3), n=3)
    u1, u2 = A3.generator(1, 1), A3.generator(1, 2)
    assert u2 * u1 == A3.q ** -2 * (u1 * u2)
"""

import itertools
import logging
from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import Matrix

from .cyclo import CycNum, galois, working_modulus
from .errors import ValidationError
from .groups import BaseAlgebra, Bihomomorphism, FiniteGroup, Permutation
from .linalg import CycMatrix

logger = logging.getLogger(__name__)


class Monomial(tuple):
    """
    A normal-form monomial, one group element index per tensor slot.

    Example::

        m = Monomial((1, 0))
        assert m.factors == (1, 0)
    """

    __slots__ = ()

    @property
    def factors(self) -> tuple[int, ...]:
        return tuple(self)


class TTPAlgebra:
    """
    The algebra A_n(G, τ) with τ = q^α, q = ζ_m.

    Args:
        base: The tensor factor C^ν[G].
        alpha: The validated twist on ``base.group``.
        n: Strand count; the algebra has n−1 tensor slots.
        modulus: Extra modulus to fold into the coefficient field, e.g. 4 to make i available.

    Raises:
        ValidationError: If α lives on another group or n < 1.
    """

    def __init__(self, base: BaseAlgebra, alpha: Bihomomorphism, n: int, modulus: int = 1) -> None:
        if n < 1:
            raise ValidationError("An algebra needs at least one strand")
        if alpha.group != base.group:
            raise ValidationError("Twist is defined on a different group")
        self._base = base
        self._alpha = alpha
        self._n = n
        self._M = working_modulus(alpha.modulus, base.cocycle_modulus, modulus)
        self._alpha_exp = (alpha.table * (self._M // alpha.modulus)) % self._M
        self._nu_exp = (base.cocycle * (self._M // base.cocycle_modulus)) % self._M
        self._alpha_rows = self._alpha_exp.tolist()
        self._nu_rows = self._nu_exp.tolist()
        self._roots = [CycNum.root(self._M, k) for k in range(self._M)]

    def __repr__(self) -> str:
        return f"TTPAlgebra(n={self._n}, {self._base!r}, {self._alpha!r}, M={self._M})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TTPAlgebra)
            and self._n == other._n
            and self._M == other._M
            and self._alpha == other._alpha
            and self._base.group == other._base.group
            and np.array_equal(self._nu_exp, other._nu_exp)
        )

    def __hash__(self) -> int:
        return hash((self._n, self._M, self._alpha))

    @property
    def n(self) -> int:
        return self._n

    @property
    def slots(self) -> int:
        return self._n - 1

    @property
    def base(self) -> BaseAlgebra:
        return self._base

    @property
    def group(self) -> FiniteGroup:
        return self._base.group

    @property
    def alpha(self) -> Bihomomorphism:
        return self._alpha

    @property
    def m(self) -> int:
        return self._alpha.modulus

    @property
    def modulus(self) -> int:
        """The working cyclotomic modulus M."""
        return self._M

    @property
    def q(self) -> CycNum:
        """The primitive m-th root of unity q = ζ_M^(M/m)."""
        return self._roots[(self._M // self.m) % self._M]

    @property
    def dimension(self) -> int:
        return self.group.order ** self.slots

    def with_strands(self, n: int) -> "TTPAlgebra":
        return TTPAlgebra(self._base, self._alpha, n, self._M)

    def galois_twin(self, s: int) -> "TTPAlgebra":
        """A_n(G, τ^s) over the same field: the target of the Galois map ζ ↦ ζ^s."""
        return TTPAlgebra(self._base.galois_twin(s), self._alpha.scaled(s), self._n, self._M)

    def root(self, exponent: int) -> CycNum:
        return self._roots[exponent % self._M]

    def scalar(self, value) -> CycNum:
        if isinstance(value, CycNum):
            return value.lift(self._M)
        return CycNum.rational(self._M, value)

    def basis(self) -> list[Monomial]:
        """Monomials in lexicographic order on factor sequences."""
        return [Monomial(f) for f in itertools.product(range(self.group.order), repeat=self.slots)]

    def basis_index(self, monomial) -> int:
        index = 0
        for g in monomial:
            index = index * self.group.order + g
        return index

    def monomial_product(self, x, y) -> tuple[Monomial, int]:
        """
        Multiply two normal-form monomials.

        Moving each factor of ``y`` left past the later factors of ``x`` picks
        up q^(−α(y_j, x_(j+1))); each slot then multiplies in C^ν[G].

        Returns:
            The product monomial and the exponent e of its scalar ζ_M^e.
        """
        rows, nu, alpha = self.group.rows, self._nu_rows, self._alpha_rows
        exponent = 0
        for j in range(len(x)):
            exponent += nu[x[j]][y[j]]
        for j in range(len(x) - 1):
            exponent -= alpha[y[j]][x[j + 1]]
        return Monomial(rows[a][b] for a, b in zip(x, y)), exponent % self._M

    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def one(self) -> "Element":
        return Element(self, {Monomial((self.group.identity,) * self.slots): CycNum.one(self._M)})

    def zero(self) -> "Element":
        return Element(self, {})

    def monomial(self, factors, coefficient=1) -> "Element":
        factors = Monomial(self.group.index(g) for g in factors)
        if len(factors) != self.slots:
            raise ValidationError(f"A monomial of A_{self._n} has {self.slots} factors, got {len(factors)}")
        return Element(self, {factors: self.scalar(coefficient)})

    def generator(self, g, i: int) -> "Element":
        return generator(self, g, i)

    def embed_slot(self, coefficients: dict, i: int) -> "Element":
        """Σ f(g) g_i for a base-algebra element given as ``{group element: coefficient}``."""
        if not 1 <= i <= self.slots:
            raise ValidationError(f"Slot {i} out of range 1..{self.slots}")
        e = self.group.identity
        terms = {}
        for g, c in coefficients.items():
            factors = [e] * self.slots
            factors[i - 1] = self.group.index(g)
            terms[Monomial(factors)] = self.scalar(c)
        return Element(self, terms)


class Element:
    """
    An element of A_n(G, τ): a sparse map from normal-form monomials to coefficients.

    Supports ``+``, ``-``, ``*`` (by elements or scalars), ``**`` and ``==``.
    """

    __slots__ = ("_algebra", "_terms")

    def __init__(self, algebra: TTPAlgebra, terms: dict) -> None:
        self._algebra = algebra
        self._terms = {}
        for mono, c in terms.items():
            c = algebra.scalar(c)
            if c:
                self._terms[Monomial(mono)] = c

    def __repr__(self) -> str:
        parts = [f"{c!r}*{list(m)}" for m, c in sorted(self._terms.items())]
        return f"Element({' + '.join(parts) or '0'})"

    @property
    def algebra(self) -> TTPAlgebra:
        return self._algebra

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def support(self) -> list[Monomial]:
        return sorted(self._terms)

    def coefficient(self, monomial) -> CycNum:
        return self._terms.get(Monomial(monomial), CycNum.zero(self._algebra.modulus))

    def is_zero(self) -> bool:
        return not self._terms

    def scalar_value(self) -> CycNum | None:
        """The c with self = c·1, or None."""
        one = self._algebra.one()
        (unit,) = one._terms
        if not self._terms:
            return CycNum.zero(self._algebra.modulus)
        if set(self._terms) == {unit}:
            return self._terms[unit]
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._algebra == other._algebra and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted((m, c.coeffs) for m, c in self._terms.items())))

    def _check(self, other: "Element") -> None:
        if other._algebra is not self._algebra and other._algebra != self._algebra:
            raise ValidationError("Elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self._algebra.one() * other
        self._check(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return Element(self._algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self._algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = self._algebra.scalar(other)
        return Element(self._algebra, {m: v * c for m, v in self._terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent: int) -> "Element":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self._algebra.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def star(self) -> "Element":
        return star(self)

    def regular_rep(self) -> CycMatrix:
        return regular_rep(self)

    def inverse(self) -> "Element":
        """
        The two-sided inverse, found by solving x·y = 1 exactly.

        Raises:
            ZeroDivisionError: If the element is not invertible.
        """
        alg = self._algebra
        (unit,) = alg.one()._terms
        solution = regular_rep(self).solve({alg.basis_index(unit): CycNum.one(alg.modulus)})
        basis = alg.basis()
        return Element(alg, {basis[i]: c for i, c in solution.items()})

    def to_json(self) -> list:
        return [{"monomial": list(m), "coefficient": c.to_json()} for m, c in sorted(self._terms.items())]


def generator(alg: TTPAlgebra, g, i: int) -> Element:
    """
    The element g_i: ``g`` in slot ``i`` (1-based), identity elsewhere.

    Raises:
        ValidationError: If the slot is out of range or the element unknown.

    Example::

        u1 = generator(A3, 1, 1)
        assert u1.support() == [(1, 0)]
    """
    return alg.embed_slot({alg.group.index(g): 1}, i)


def multiply(x: Element, y: Element) -> Element:
    """
    The product x·y in normal form.

    Raises:
        ValidationError: If the operands live in different algebras.
    """
    x._check(y)
    alg = x.algebra
    roots = alg._roots
    terms: dict = {}
    for mx, cx in x._terms.items():
        for my, cy in y._terms.items():
            mono, e = alg.monomial_product(mx, my)
            c = cx * cy
            if e:
                c = c * roots[e]
            terms[mono] = terms[mono] + c if mono in terms else c
    return Element(alg, terms)


def star(x: Element) -> Element:
    """
    The conjugate-linear antiautomorphism with g_i* = g_i⁻¹ and q* = q⁻¹.

    In a twisted slot g* = ν(g, g⁻¹)⁻¹ g⁻¹, the algebra inverse of the basis
    element g.

    Example::

        q = A3.q
        assert star(u1 * q) == u1 * u1 * q**2
    """
    alg = x.algebra
    group, base = alg.group, alg.base
    scale = alg.modulus // base.cocycle_modulus
    result = alg.zero()
    for mono, c in x._terms.items():
        image = alg.one() * c.conjugate()
        for slot in range(alg.slots, 0, -1):
            g = mono[slot - 1]
            if g == group.identity:
                continue
            correction = alg.root(-base.star_exponent(g) * scale)
            image = image * alg.embed_slot({group.inverse(g): correction}, slot)
        result = result + image
    return result


def regular_rep(x: Element) -> CycMatrix:
    """
    Matrix of left multiplication by ``x`` on the monomial basis (lexicographic order).

    Column j holds the coordinates of x·b_j. For a monomial every column has a
    single root-of-unity entry.
    """
    alg = x.algebra
    roots = alg._roots
    basis = alg.basis()
    entries: dict = {}
    for j, b in enumerate(basis):
        for mono, c in x._terms.items():
            product, e = alg.monomial_product(mono, b)
            key = (alg.basis_index(product), j)
            value = c * roots[e] if e else c
            entries[key] = entries[key] + value if key in entries else value
    return CycMatrix((len(basis), len(basis)), entries, alg.modulus)


def _monomial_array(alg: TTPAlgebra) -> np.ndarray:
    size = alg.dimension
    if alg.slots == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(np.unravel_index(np.arange(size), (alg.group.order,) * alg.slots), dtype=np.int64).T


def center_basis(alg: TTPAlgebra) -> list[Monomial]:
    """
    The monomials spanning the center of A_n(G, τ) for abelian G.

    Conjugation by g_i only rescales a monomial m, by the difference of the
    exponents of g_i·m and m·g_i. Those exponents are linear congruences in
    the factors of m, evaluated here for all monomials at once.

    Raises:
        ValidationError: If G is not abelian.

    Example::

        assert len(center_basis(A4)) == 9
    """
    group = alg.group
    if not group.is_abelian:
        raise ValidationError("Center scan needs an abelian base group")
    monos = _monomial_array(alg)
    nu, alpha, M = alg._nu_exp, alg._alpha_exp, alg.modulus
    central = np.ones(len(monos), dtype=bool)
    for g in range(group.order):
        for i in range(alg.slots):
            left = nu[g, monos[:, i]].copy()
            right = nu[monos[:, i], g].copy()
            if i > 0:
                left -= alpha[monos[:, i - 1], g]
            if i < alg.slots - 1:
                right -= alpha[g, monos[:, i + 1]]
            central &= (left - right) % M == 0
    result = [Monomial(int(v) for v in row) for row in monos[central]]
    logger.debug("center of A_%d: %d monomials", alg.n, len(result))
    return result


def _inversion_codes(alg: TTPAlgebra) -> tuple[np.ndarray, np.ndarray]:
    group = alg.group
    if not group.is_abelian or alg.base.is_twisted:
        raise ValidationError("Inversion needs an abelian base without a cocycle")
    if group.order % 2 == 0:
        raise ValidationError("Inversion fixed points are only handled for groups of odd order")
    monos = _monomial_array(alg)
    weights = group.order ** np.arange(alg.slots - 1, -1, -1, dtype=np.int64)
    codes = monos @ weights
    inverted = group.inverses[monos] @ weights
    return codes, inverted


def inversion_fixed_dim(alg: TTPAlgebra) -> int:
    """
    Dimension of C_n, the subalgebra fixed by ι: g_i ↦ g_i⁻¹, counted as the
    number of ι-orbits on monomials.

    Raises:
        ValidationError: For even-order or non-abelian bases.

    Example::

        assert inversion_fixed_dim(A3) == 41    # A3 over Z3 x Z3
    """
    codes, inverted = _inversion_codes(alg)
    return int(np.unique(np.minimum(codes, inverted)).size)


def inversion_fixed_basis(alg: TTPAlgebra) -> list[Element]:
    """The identity plus one binomial m + ι(m) per pair of swapped monomials."""
    codes, inverted = _inversion_codes(alg)
    basis = alg.basis()
    result = []
    for code, image in zip(codes.tolist(), inverted.tolist()):
        if code == image:
            result.append(Element(alg, {basis[code]: 1}))
        elif code < image:
            result.append(Element(alg, {basis[code]: 1, basis[image]: 1}))
    return result


@dataclass(frozen=True)
class Inversion:
    """ι: g_i ↦ g_i⁻¹ with ι(q) = q, for abelian bases whose cocycle is ι-invariant."""


@dataclass(frozen=True)
class GroupAutomorphism:
    """ψ ∈ Aut(G, α) applied in every slot, given as the tuple of element images."""

    images: Permutation


@dataclass(frozen=True)
class CharacterRescale:
    """g_i ↦ χ(g) g_i for a linear character χ(g) = ζ_N^exponents[g]."""

    exponents: tuple[int, ...]
    modulus: int


@dataclass(frozen=True)
class GaloisAction:
    """Coefficients go through ζ ↦ ζ^s; the image lives in A_n(G, τ^s)."""

    s: int


def check_automorphism(alg: TTPAlgebra, action: GroupAutomorphism) -> None:
    group = alg.group
    if not group.is_automorphism(action.images):
        raise ValidationError("Map is not a group automorphism")
    if alg.alpha.pulled_back(action.images) != alg.alpha:
        raise ValidationError("Automorphism does not preserve the twist")
    if alg.base.is_twisted and not alg.base.preserves_cocycle(action.images):
        raise ValidationError("Automorphism does not preserve the cocycle")


def check_inversion_applies(base: BaseAlgebra, what: str) -> None:
    if not base.group.is_abelian:
        raise ValidationError(f"{what} needs an abelian base group")
    if base.is_twisted and not base.preserves_cocycle(base.group.inverses):
        raise ValidationError(f"{what} needs a cocycle invariant under inversion")


def check_character(group: FiniteGroup, action: CharacterRescale, modulus: int) -> None:
    exps = np.asarray(action.exponents, dtype=np.int64)
    if exps.shape != (group.order,):
        raise ValidationError("A character needs one value per group element")
    if modulus % action.modulus:
        raise ValidationError(f"Character values in mu_{action.modulus} are outside Q(zeta_{modulus})")
    if ((exps[group.table] - exps[:, None] - exps[None, :]) % action.modulus).any():
        raise ValidationError("Map is not a linear character")


def apply_automorphism(x: Element, action) -> Element:
    """
    Apply a lifted (or, for Galois, semilinear) automorphism term by term.

    Args:
        x: The element.
        action: One of :class:`Inversion`, :class:`GroupAutomorphism`,
            :class:`CharacterRescale`, :class:`GaloisAction`.

    Returns:
        The image; for :class:`GaloisAction` it lives in ``x.algebra.galois_twin(s)``.

    Raises:
        ValidationError: If ψ is not in Aut(G, α), χ is not a character, s is not coprime
            to M, or ι is applied over a non-abelian group or a cocycle it does not preserve.
    """
    alg = x.algebra
    group = alg.group
    if isinstance(action, Inversion):
        check_inversion_applies(alg.base, "Inversion")
        inv = group.inverses
        return Element(alg, {Monomial(int(inv[g]) for g in m): c for m, c in x._terms.items()})
    if isinstance(action, GroupAutomorphism):
        check_automorphism(alg, action)
        return Element(alg, {Monomial(action.images[g] for g in m): c for m, c in x._terms.items()})
    if isinstance(action, CharacterRescale):
        check_character(group, action, alg.modulus)
        step = alg.modulus // action.modulus
        return Element(
            alg,
            {m: c * alg.root(step * sum(action.exponents[g] for g in m)) for m, c in x._terms.items()},
        )
    if isinstance(action, GaloisAction):
        target = alg.galois_twin(action.s)
        return Element(target, {m: galois(c, action.s) for m, c in x._terms.items()})
    raise ValidationError(f"Unknown automorphism {action!r}")


class CentralExtension:
    """
    The central extension of Gⁿ by Z_m with cocycle c(g,h) = −Σ α(h_i, g_(i+1)).

    Elements are pairs ``(x, g)`` with x ∈ Z_m and g a tuple of n element indices.
    :meth:`phi` sends (x, g) to q^x g^(1)_1 … g^(n)_n in A_(n+1)(G, τ), an
    algebra map that turns the group law into the monomial product.

    Args:
        group: The group G.
        alpha: The twist α.
        n: Number of factors of Gⁿ.
    """

    def __init__(self, group: FiniteGroup, alpha: Bihomomorphism, n: int) -> None:
        self._group = group
        self._alpha = alpha
        self._n = n

    @property
    def identity(self) -> tuple[int, tuple[int, ...]]:
        return (0, (self._group.identity,) * self._n)

    def cocycle(self, g, h) -> int:
        return -sum(self._alpha(h[i], g[i + 1]) for i in range(self._n - 1)) % self._alpha.modulus

    def mul(self, a, b) -> tuple[int, tuple[int, ...]]:
        (x, g), (y, h) = a, b
        product = tuple(self._group.mul(gi, hi) for gi, hi in zip(g, h))
        return ((self.cocycle(g, h) + x + y) % self._alpha.modulus, product)

    def inverse(self, a) -> tuple[int, tuple[int, ...]]:
        x, g = a
        g_inv = tuple(self._group.inverse(gi) for gi in g)
        return ((-x - self.cocycle(g, g_inv)) % self._alpha.modulus, g_inv)

    def commutator(self, a, b) -> tuple[int, tuple[int, ...]]:
        return self.mul(self.mul(a, b), self.inverse(self.mul(b, a)))

    def phi(self, a, algebra: TTPAlgebra) -> Element:
        x, g = a
        if algebra.slots != self._n:
            raise ValidationError(f"phi maps into A_{self._n + 1}, got A_{algebra.n}")
        return algebra.monomial(g, algebra.q ** x)


def central_extension_mul(group: FiniteGroup, alpha: Bihomomorphism, n: int, a, b) -> tuple[int, tuple[int, ...]]:
    """
    Multiply (x, g)·(y, h) = (c(g,h) + x + y, gh) in the central extension of Gⁿ.

    Example::

        G = FiniteGroup.abelian(3)
        alpha = validate_bihom(G, [[2]], modulus=3)
        assert central_extension_mul(G, alpha, 2, (0, (0, 1)), (0, (1, 0))) == (1, (1, 1))
    """
    return CentralExtension(group, alpha, n).mul(a, b)


def _mod_matrix(values, m: int) -> np.ndarray:
    return np.asarray(values, dtype=np.int64) % m


def _inv_mod(a: np.ndarray, m: int) -> np.ndarray:
    return np.array(Matrix(a.tolist()).inv_mod(m).tolist(), dtype=np.int64) % m


def _symplectic_basis(s: np.ndarray, m: int) -> np.ndarray:
    """P with Pᵀ S P = [[0, I], [−I, 0]] for a non-degenerate skew S over Z_m."""
    k = s.shape[0]
    remaining = [np.eye(k, dtype=np.int64)[:, j] for j in range(k)]
    es, fs = [], []

    def omega(x, y):
        return int(x @ s @ y) % m

    while remaining:
        e = remaining.pop(0)
        partner = next((idx for idx, w in enumerate(remaining) if gcd_unit(omega(e, w), m)), None)
        if partner is None:
            raise ValidationError("Skew form has no symplectic basis over this modulus")
        f = remaining.pop(partner)
        f = (f * pow(omega(e, f), -1, m)) % m
        remaining = [(w + omega(f, w) * e - omega(e, w) * f) % m for w in remaining]
        es.append(e)
        fs.append(f)
    return np.stack(es + fs, axis=1) % m


def gcd_unit(value: int, m: int) -> bool:
    return value % m != 0 and gcd(value, m) == 1


@dataclass(frozen=True)
class FormNormalization:
    """
    Slot-wise automorphisms ψ_i of G = Z_m^k with χ(ψ_i x, ψ_(i+1) y) = xᵀSy,
    χ(x, y) = xᵀy. Mapping g_i ↦ (ψ_i g)_i is then an algebra isomorphism
    A_n(G, τ_S) → A_n(G, χ).

    Attributes:
        kind: ``"symmetric"`` or ``"skew"``.
        modulus: The odd modulus m.
        form: The matrix S.
        period: Slot maps repeat with this period.
        maps: ψ_1 … ψ_period as integer matrices acting on column vectors.
    """

    kind: str
    modulus: int
    form: tuple
    period: int
    maps: tuple

    def slot_map(self, i: int) -> np.ndarray:
        return np.array(self.maps[(i - 1) % self.period], dtype=np.int64)

    def verify(self) -> bool:
        """Check the straightening scalars of every generator pair over one full period."""
        m, k = self.modulus, len(self.form)
        s = np.array(self.form, dtype=np.int64)
        vectors = np.array(list(itertools.product(range(m), repeat=k)), dtype=np.int64).T
        expected = (vectors.T @ s @ vectors) % m
        for i in range(1, self.period + 1):
            left = self.slot_map(i) @ vectors % m
            right = self.slot_map(i + 1) @ vectors % m
            if not np.array_equal((left.T @ right) % m, expected):
                return False
        return True

    def automorphism(self, group: FiniteGroup, i: int) -> Permutation:
        """ψ_i as a permutation of the element indices of ``group``."""
        psi = self.slot_map(i)
        return tuple(group.index(tuple(int(v) for v in (psi @ np.array(g)) % self.modulus)) for g in group.elements)

    def apply(self, x: Element, target: TTPAlgebra) -> Element:
        """Push an element of A_n(G, τ_S) to A_n(G, χ)."""
        perms = [self.automorphism(x.algebra.group, i) for i in range(1, x.algebra.slots + 1)]
        return Element(target, {Monomial(perms[j][g] for j, g in enumerate(m)): c for m, c in x.terms.items()})


def normalize_form(group: FiniteGroup, form) -> FormNormalization:
    """
    Reduce the twist xᵀSy on Z_m^k to the standard form xᵀy slot by slot.

    For symmetric S, pick A, B with ASB = I and alternate (Aᵀ)⁻¹ on odd slots
    and B⁻¹ on even slots. For skew S, move to the standard symplectic matrix J,
    undo the powers J^(i−1) slot by slot (which turns the twist into −xᵀy), then
    apply the symmetric reduction.

    Args:
        group: Z_m^k built by :meth:`FiniteGroup.abelian` with all factors equal.
        form: The k x k matrix S.

    Raises:
        ValidationError: If m is even, S is degenerate, or S is neither symmetric nor skew.
    """
    factors = group.factors
    if factors is None or len(set(factors)) != 1:
        raise ValidationError("normalize_form needs G = Z_m^k")
    m, k = factors[0], len(factors)
    if m % 2 == 0:
        raise ValidationError("normalize_form needs an odd modulus")
    s = _mod_matrix(form, m)
    if s.shape != (k, k):
        raise ValidationError(f"Form must be {k} x {k}")
    det = int(round(Matrix(s.tolist()).det())) % m
    if not gcd_unit(det, m):
        raise ValidationError("Form is degenerate")
    identity = np.eye(k, dtype=np.int64)
    if np.array_equal(s, s.T):
        a = _inv_mod(s, m)
        maps = (_inv_mod(a.T, m), identity)
        kind, period = "symmetric", 2
    elif np.array_equal((s + s.T) % m, np.zeros_like(s)):
        if k % 2:
            raise ValidationError("Skew form in odd rank is degenerate")
        p = _symplectic_basis(s, m)
        r = k // 2
        j = np.block([[np.zeros((r, r), dtype=np.int64), np.eye(r, dtype=np.int64)],
                      [-np.eye(r, dtype=np.int64), np.zeros((r, r), dtype=np.int64)]]) % m
        j_inv = _inv_mod(j, m)
        p_inv = _inv_mod(p, m)
        sigma = ((-identity) % m, identity)
        maps = []
        power = identity
        for i in range(4):
            maps.append(sigma[i % 2] @ power @ p_inv % m)
            power = power @ j_inv % m
        maps = tuple(maps)
        kind, period = "skew", 4
    else:
        raise ValidationError("Form is neither symmetric nor skew-symmetric")
    result = FormNormalization(
        kind, m, tuple(tuple(int(v) for v in row) for row in s), period,
        tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in maps),
    )
    if not result.verify():
        raise ValidationError("Slot substitution does not preserve the straightening relations")
    return result
