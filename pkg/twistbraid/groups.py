"""
Finite groups, cocycle-twisted group algebras and bihomomorphisms.

Group elements are handled by their index in :attr:`FiniteGroup.elements`.
Abelian groups list their exponent vectors in lexicographic order, so index 0 is
always the identity and for Z_m the index of j is j itself.

::

    from twistbraid.groups import FiniteGroup, validate_bihom

    G = FiniteGroup.abelian(3, 3)
    alpha = validate_bihom(G, [[2, 0], [0, 2]], modulus=3)
    assert alpha(G.index((1, 0)), G.index((1, 0))) == 2
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import isprime
from sympy.ntheory import legendre_symbol

from .errors import ValidationError

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]


class FiniteGroup:
    """
    A finite group given by its Cayley table.

    Use :meth:`abelian` for Z_m1 x ... x Z_mk and :meth:`presented` for an
    explicit multiplication table. The constructor checks the group axioms.

    Args:
        table: Square table, ``table[a][b]`` is the index of the product a·b.
        labels: Printable label per element.
        factors: Invariant factors when the group is built by :meth:`abelian`.
    """

    def __init__(self, table, labels=None, factors: tuple[int, ...] | None = None) -> None:
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValidationError("A multiplication table must be a non-empty square array")
        order = table.shape[0]
        if table.min() < 0 or table.max() >= order:
            raise ValidationError("Table entries must be element ids 0..|G|-1")
        rows_ok = all(len(set(row)) == order for row in table.tolist())
        cols_ok = all(len(set(col)) == order for col in table.T.tolist())
        if not (rows_ok and cols_ok):
            raise ValidationError("Table is not a Latin square")
        ids = np.arange(order)
        identities = [e for e in range(order) if (table[e] == ids).all() and (table[:, e] == ids).all()]
        if not identities:
            raise ValidationError("Table has no identity element")
        if not (table[table] == table[ids[:, None, None], table[None, :, :]]).all():
            raise ValidationError("Table is not associative")
        self._table = table
        self._table.setflags(write=False)
        self._identity = identities[0]
        self._inverse = np.array([int(np.flatnonzero(table[a] == self._identity)[0]) for a in range(order)])
        self._labels = list(labels) if labels is not None else list(range(order))
        if len(self._labels) != order:
            raise ValidationError("Need exactly one label per element")
        self._index = {label: i for i, label in enumerate(self._labels)}
        self._factors = factors
        self._rows = table.tolist()

    @classmethod
    def abelian(cls, *factors: int) -> "FiniteGroup":
        """
        The group Z_m1 x ... x Z_mk with elements listed as exponent vectors.

        Example::

            G = FiniteGroup.abelian(2, 2)
            assert G.elements == [(0, 0), (0, 1), (1, 0), (1, 1)]
        """
        if not factors or any(m < 1 for m in factors):
            raise ValidationError("Invariant factors must be positive integers")
        vectors = list(itertools.product(*(range(m) for m in factors)))
        index = {v: i for i, v in enumerate(vectors)}
        table = [
            [index[tuple((x + y) % m for x, y, m in zip(a, b, factors))] for b in vectors]
            for a in vectors
        ]
        return cls(table, vectors, tuple(factors))

    @classmethod
    def presented(cls, table, labels=None) -> "FiniteGroup":
        return cls(table, labels)

    def __repr__(self) -> str:
        if self._factors is not None:
            return f"FiniteGroup.abelian{self._factors}"
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash(self._table.tobytes())

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        """Read-only Cayley table as a numpy array."""
        return self._table

    @property
    def rows(self) -> list[list[int]]:
        """Cayley table as nested lists, the fast path for scalar loops."""
        return self._rows

    @property
    def inverses(self) -> np.ndarray:
        return self._inverse

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def elements(self) -> list:
        return self._labels

    @property
    def factors(self) -> tuple[int, ...] | None:
        """Invariant factors for groups built by :meth:`abelian`, otherwise None."""
        return self._factors

    @property
    def kind(self) -> str:
        return "abelian" if self._factors is not None else "presented"

    @property
    def is_abelian(self) -> bool:
        return bool((self._table == self._table.T).all())

    @property
    def exponent(self) -> int:
        result = 1
        for a in range(self.order):
            k = self.element_order(a)
            result = result * k // gcd(result, k)
        return result

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inverse(self, a: int) -> int:
        return int(self._inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        result = self._identity
        for _ in range(k):
            result = self._rows[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self._identity:
            x = self._rows[x][a]
            k += 1
        return k

    def index(self, element) -> int:
        """
        Resolve an element given as an index or as its label.

        Raises:
            ValidationError: If the element is unknown.
        """
        if isinstance(element, (int, np.integer)) and not isinstance(element, bool):
            if 0 <= element < self.order:
                return int(element)
            raise ValidationError(f"Element id {element} out of range for a group of order {self.order}")
        key = tuple(element) if isinstance(element, list) else element
        if key not in self._index:
            raise ValidationError(f"Unknown group element {element!r}")
        return self._index[key]

    def vector(self, a: int) -> tuple[int, ...]:
        """Exponent vector of an element of an abelian group built by :meth:`abelian`."""
        if self._factors is None:
            raise ValidationError("Exponent vectors exist only for groups built by FiniteGroup.abelian")
        return self._labels[a]

    def subgroup(self, generators) -> frozenset[int]:
        """The subgroup generated by the given element indices."""
        members = {self._identity}
        frontier = [self._identity]
        generators = [self.index(g) for g in generators]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = self._rows[x][g]
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return frozenset(members)

    def generators(self) -> list[int]:
        """
        A small generating set: the unit vectors for abelian groups, a greedy
        choice for presented ones.
        """
        if self._factors is not None:
            gens = []
            for axis in range(len(self._factors)):
                unit = tuple(int(axis == j) for j in range(len(self._factors)))
                if self._factors[axis] > 1:
                    gens.append(self._index[unit])
            return gens
        gens: list[int] = []
        span = self.subgroup([])
        by_order = sorted(range(self.order), key=lambda a: (-self.element_order(a), a))
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = self.subgroup(gens)
            if len(span) == self.order:
                break
        return gens

    def commutators(self) -> frozenset[int]:
        return frozenset(
            self._rows[self._rows[a][b]][self._rows[int(self._inverse[a])][int(self._inverse[b])]]
            for a in range(self.order)
            for b in range(self.order)
        )

    def is_automorphism(self, images) -> bool:
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (self.order,) or len(set(images.tolist())) != self.order:
            return False
        return bool((images[self._table] == self._table[images[:, None], images[None, :]]).all())


class BaseAlgebra:
    """
    The twisted group algebra C^ν[G], one tensor factor of A_n(G,τ).

    The cocycle is stored as exponents: ν(g,h) = ζ_N^table[g][h] with
    N = ``cocycle_modulus``. It must satisfy the 2-cocycle identity and be
    normalized, ν(e,g) = ν(g,e) = 1.

    Args:
        group: The underlying finite group.
        cocycle: Exponent table, None for the plain group algebra.
        cocycle_modulus: Order N of the root of unity ν takes values in.

    Raises:
        ValidationError: If the table is not a normalized 2-cocycle.
    """

    def __init__(self, group: FiniteGroup, cocycle=None, cocycle_modulus: int = 1) -> None:
        order = group.order
        if cocycle is None:
            table = np.zeros((order, order), dtype=np.int64)
            cocycle_modulus = 1
        else:
            table = np.asarray(cocycle, dtype=np.int64) % cocycle_modulus
            if table.shape != (order, order):
                raise ValidationError("Cocycle table must be |G| x |G|")
        e, T = group.identity, group.table
        if (table[e] != 0).any() or (table[:, e] != 0).any():
            raise ValidationError("Cocycle must be normalized: nu(e, g) = nu(g, e) = 1")
        lhs = table[:, :, None] + table[T][:, :, :]
        rhs = table[None, :, :] + table[:, T]
        if ((lhs - rhs) % cocycle_modulus).any():
            raise ValidationError("Table does not satisfy the 2-cocycle identity")
        self._group = group
        self._cocycle = table
        self._cocycle.setflags(write=False)
        self._cocycle_modulus = cocycle_modulus

    def __repr__(self) -> str:
        twist = f", cocycle mod {self._cocycle_modulus}" if self.is_twisted else ""
        return f"BaseAlgebra({self._group!r}{twist})"

    @property
    def group(self) -> FiniteGroup:
        return self._group

    @property
    def cocycle(self) -> np.ndarray:
        return self._cocycle

    @property
    def cocycle_modulus(self) -> int:
        return self._cocycle_modulus

    @property
    def is_twisted(self) -> bool:
        return bool(self._cocycle.any())

    @property
    def is_commutative(self) -> bool:
        """True when C^ν[G] is commutative: G abelian and ν symmetric."""
        return self._group.is_abelian and not ((self._cocycle - self._cocycle.T) % self._cocycle_modulus).any()

    def star_exponent(self, g: int) -> int:
        """Exponent of ν(g, g⁻¹), the scalar that corrects g* = ν(g,g⁻¹)⁻¹ g⁻¹."""
        return int(self._cocycle[g, self._group.inverse(g)])

    def galois_twin(self, s: int) -> "BaseAlgebra":
        """The base with ν replaced by ν^s."""
        if not self.is_twisted:
            return self
        return BaseAlgebra(self._group, self._cocycle * s, self._cocycle_modulus)

    def preserves_cocycle(self, images) -> bool:
        images = np.asarray(images, dtype=np.int64)
        moved = self._cocycle[images[:, None], images[None, :]]
        return not ((moved - self._cocycle) % self._cocycle_modulus).any()


class Bihomomorphism:
    """
    A bihomomorphism α: G x G → Z_m, the exponent of the bicharacter τ = q^α.

    Build instances with :func:`validate_bihom`, which checks additivity.

    Args:
        group: The group α lives on.
        modulus: The twist modulus m.
        table: Values α(g, h) by element index.
        matrix: The matrix X with α(x, y) = xᵀXy, when α was given that way.
    """

    def __init__(self, group: FiniteGroup, modulus: int, table, matrix=None) -> None:
        self._group = group
        self._modulus = modulus
        self._table = np.asarray(table, dtype=np.int64) % modulus
        self._table.setflags(write=False)
        self._matrix = None if matrix is None else tuple(tuple(int(v) % modulus for v in row) for row in matrix)

    def __call__(self, g: int, h: int) -> int:
        return int(self._table[g, h])

    def __repr__(self) -> str:
        if self._matrix is not None:
            return f"Bihomomorphism(mod {self._modulus}, matrix={[list(r) for r in self._matrix]})"
        return f"Bihomomorphism(mod {self._modulus})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bihomomorphism)
            and self._modulus == other._modulus
            and self._group == other._group
            and np.array_equal(self._table, other._table)
        )

    def __hash__(self) -> int:
        return hash((self._modulus, self._table.tobytes()))

    @property
    def group(self) -> FiniteGroup:
        return self._group

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def matrix(self) -> tuple | None:
        return self._matrix

    def is_zero(self) -> bool:
        return not self._table.any()

    def is_nondegenerate(self) -> bool:
        """Both radicals are trivial: only e pairs to zero with everything."""
        left = (self._table != 0).any(axis=1)
        right = (self._table != 0).any(axis=0)
        e = self._group.identity
        return bool(left.sum() == self._group.order - 1 and right.sum() == self._group.order - 1 and not left[e])

    def scaled(self, s: int) -> "Bihomomorphism":
        """The form s·α, which goes with the Galois image q ↦ q^s."""
        matrix = None if self._matrix is None else [[s * v for v in row] for row in self._matrix]
        return Bihomomorphism(self._group, self._modulus, self._table * s, matrix)

    def pulled_back(self, images) -> "Bihomomorphism":
        """The form α∘(ψ x ψ) for an element map ψ."""
        images = np.asarray(images, dtype=np.int64)
        return Bihomomorphism(self._group, self._modulus, self._table[images[:, None], images[None, :]])


def validate_bihom(group: FiniteGroup, alpha, modulus: int) -> Bihomomorphism:
    """
    Check a candidate twist and wrap it as a :class:`Bihomomorphism`.

    Args:
        group: The group G.
        alpha: Either a k x k matrix X over Z_m (abelian groups built by
            :meth:`FiniteGroup.abelian`, α(x,y) = xᵀXy) or a full |G| x |G| table.
        modulus: The twist modulus m; it must divide exp(G).

    Returns:
        The validated bihomomorphism.

    Raises:
        ValidationError: If m does not divide exp(G), the shape is wrong, α is not
            additive in each argument or does not vanish on commutators.

    Example::

        G = FiniteGroup.abelian(3)
        alpha = validate_bihom(G, [[2]], modulus=3)
        assert alpha(1, 1) == 2
    """
    if modulus < 1 or group.exponent % modulus:
        raise ValidationError(f"Twist modulus {modulus} does not divide exp(G) = {group.exponent}")
    data = np.asarray(alpha, dtype=np.int64)
    matrix = None
    if group.factors is not None and data.shape == (len(group.factors),) * 2 and group.order != len(group.factors):
        matrix = data
        vectors = np.asarray(group.elements, dtype=np.int64)
        table = vectors @ data @ vectors.T
    elif data.shape == (group.order, group.order):
        table = data
    else:
        raise ValidationError(f"Twist must be a rank x rank matrix or a |G| x |G| table, got shape {data.shape}")
    table = table % modulus
    T = group.table
    left = (table[T] - table[:, None, :] - table[None, :, :]) % modulus
    right = (table[:, T] - table[:, :, None] - table[:, None, :]) % modulus
    if left.any() or right.any():
        raise ValidationError("Twist is not additive in each argument")
    if not group.is_abelian:
        commutators = sorted(group.commutators())
        if table[commutators].any() or table[:, commutators].any():
            raise ValidationError("Twist does not factor through the abelianization")
    return Bihomomorphism(group, modulus, table, matrix)


@dataclass(frozen=True)
class FormOrbit:
    """
    One orbit of k x k matrices over Z_p under X ↦ ΨᵀXΨ.

    Attributes:
        representative: Lexicographically minimal member, as nested tuples.
        size: Number of matrices in the orbit.
        prime: The prime p.
    """

    representative: tuple[tuple[int, ...], ...]
    size: int
    prime: int

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.representative, dtype=np.int64)

    @property
    def is_nondegenerate(self) -> bool:
        return int(_det(self.matrix[None, :, :])[0]) % self.prime != 0

    @property
    def label(self) -> str | None:
        return form_class_label(self.matrix, self.prime)


def _det(mats: np.ndarray) -> np.ndarray:
    """Integer determinants of a stack of small square matrices (Laplace expansion)."""
    k = mats.shape[-1]
    if k == 1:
        return mats[:, 0, 0]
    total = np.zeros(mats.shape[0], dtype=np.int64)
    for j in range(k):
        minor = np.delete(np.delete(mats, 0, axis=1), j, axis=2)
        total += (-1) ** j * mats[:, 0, j] * _det(minor)
    return total


@lru_cache(maxsize=None)
def _all_matrices(k: int, p: int) -> np.ndarray:
    codes = np.arange(p ** (k * k), dtype=np.int64)
    digits = np.stack([(codes // p ** (k * k - 1 - d)) % p for d in range(k * k)], axis=1)
    return digits.reshape(-1, k, k)


@lru_cache(maxsize=None)
def general_linear(k: int, p: int) -> np.ndarray:
    """All of GL_k(Z_p) as a stack of integer matrices."""
    mats = _all_matrices(k, p)
    return mats[_det(mats) % p != 0]


def _codes(mats: np.ndarray, p: int) -> np.ndarray:
    k = mats.shape[-1]
    weights = p ** np.arange(k * k - 1, -1, -1, dtype=np.int64)
    return (mats.reshape(mats.shape[0], -1) % p) @ weights


def _orbit_codes(x: np.ndarray, p: int) -> np.ndarray:
    gl = general_linear(x.shape[0], p)
    moved = np.transpose(gl, (0, 2, 1)) @ x @ gl
    return np.unique(_codes(moved % p, p))


def form_orbits(k: int, p: int) -> list[FormOrbit]:
    """
    Orbit representatives of k x k matrices over Z_p under X ↦ ΨᵀXΨ, Ψ ∈ GL_k(Z_p).

    Every matrix is swept, so the orbit sizes add up to p^(k²). Representatives
    are the lexicographically minimal members, returned in increasing order.

    Raises:
        ValidationError: If p is not an odd prime.

    Example::

        assert len(form_orbits(2, 3)) == 10
    """
    if p == 2 or not isprime(p):
        raise ValidationError(f"{p} is not an odd prime")
    mats = _all_matrices(k, p)
    assigned = np.zeros(len(mats), dtype=bool)
    orbits = []
    for code in range(len(mats)):
        if assigned[code]:
            continue
        members = _orbit_codes(mats[code], p)
        assigned[members] = True
        rep = mats[int(members.min())]
        orbits.append(FormOrbit(tuple(tuple(int(v) for v in row) for row in rep), len(members), p))
    logger.info("form_orbits(k=%d, p=%d): %d orbits", k, p, len(orbits))
    return orbits


def smallest_nonsquare(p: int) -> int:
    return next(x for x in range(2, p) if legendre_symbol(x, p) == -1)


def standard_forms(p: int) -> dict[str, np.ndarray]:
    """
    The three non-degenerate 2 x 2 twists used for Z_p x Z_p.

    A1 is 2I, A2 the skew form [[0,2],[-2,0]], A3 is diag(2, 2x) for the smallest
    non-square x.
    """
    x = smallest_nonsquare(p)
    return {
        "A1": np.array([[2, 0], [0, 2]], dtype=np.int64) % p,
        "A2": np.array([[0, 2], [-2, 0]], dtype=np.int64) % p,
        "A3": np.array([[2, 0], [0, 2 * x]], dtype=np.int64) % p,
    }


def form_class_label(x, p: int) -> str | None:
    """Name of the standard form (A1, A2 or A3) whose orbit contains ``x``, else None."""
    key = int(_orbit_codes(np.asarray(x, dtype=np.int64) % p, p).min())
    for name, form in standard_forms(p).items():
        if int(_orbit_codes(form, p).min()) == key:
            return name
    return None


def orthogonal_group_order(form, p: int) -> int:
    """
    Order of the stabilizer of a non-degenerate symmetric 2 x 2 form over Z_p,
    2(p - (−det/p)).
    """
    form = np.asarray(form, dtype=np.int64)
    det = int(form[0, 0] * form[1, 1] - form[0, 1] * form[1, 0]) % p
    if det == 0:
        raise ValidationError("Form is degenerate")
    return 2 * (p - legendre_symbol((-det) % p, p))


def aut_preserving(group: FiniteGroup, alpha: Bihomomorphism, base: BaseAlgebra | None = None) -> list[Permutation]:
    """
    All automorphisms ψ of G with α(ψg, ψh) = α(g, h).

    The search assigns images to a generating set (only elements of the same
    order are tried), extends each assignment along the Cayley graph and
    rejects it at the first inconsistency.

    Args:
        group: The group G.
        alpha: The twist to preserve.
        base: When given and twisted, ψ must also preserve the cocycle exactly.

    Returns:
        Automorphisms as tuples of element images, sorted.

    Example::

        G = FiniteGroup.abelian(5)
        auts = aut_preserving(G, validate_bihom(G, [[2]], modulus=5))
        assert auts == [(0, 1, 2, 3, 4), (0, 4, 3, 2, 1)]
    """
    gens = group.generators()
    orders = [group.element_order(a) for a in range(group.order)]
    choices = [[a for a in range(group.order) if orders[a] == orders[g]] for g in gens]
    found = []
    for images in itertools.product(*choices):
        psi = _extend(group, gens, images)
        if psi is None or not group.is_automorphism(psi):
            continue
        psi_arr = np.asarray(psi)
        if not np.array_equal(alpha.table[psi_arr[:, None], psi_arr[None, :]], alpha.table):
            continue
        if base is not None and base.is_twisted and not base.preserves_cocycle(psi):
            continue
        found.append(tuple(psi))
    logger.debug("aut_preserving: %d automorphisms from %d assignments", len(found), np.prod([len(c) for c in choices]))
    return sorted(found)


def _extend(group: FiniteGroup, gens: list[int], images) -> list[int] | None:
    rows = group.rows
    psi = {group.identity: group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g, image in zip(gens, images):
            y, target = rows[x][g], rows[psi[x]][image]
            if y in psi:
                if psi[y] != target:
                    return None
            else:
                psi[y] = target
                frontier.append(y)
    if len(psi) != group.order:
        return None
    return [psi[a] for a in range(group.order)]


def compose(psi: Permutation, chi: Permutation) -> Permutation:
    """The map g ↦ ψ(χ(g))."""
    return tuple(psi[c] for c in chi)


def invert(psi: Permutation) -> Permutation:
    result = [0] * len(psi)
    for a, b in enumerate(psi):
        result[b] = a
    return tuple(result)


def cyclic(m: int) -> FiniteGroup:
    return FiniteGroup.abelian(m)


def symmetric_group(degree: int) -> FiniteGroup:
    """
    S_n on {0, …, n−1}, elements as image tuples in lexicographic order,
    product (στ)(i) = σ(τ(i)).
    """
    perms = list(itertools.permutations(range(degree)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(degree))] for t in perms] for s in perms]
    return FiniteGroup.presented(table, perms)


def permutation_parity(perm: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]) % 2


def s3_twist(group: FiniteGroup | None = None) -> Bihomomorphism:
    """The non-trivial twist on S3: α(g, h) = sgn(g)·sgn(h) written additively mod 2."""
    group = group or symmetric_group(3)
    parity = [permutation_parity(p) for p in group.elements]
    table = [[a * b for b in parity] for a in parity]
    return validate_bihom(group, table, modulus=2)


def q8_base() -> BaseAlgebra:
    """
    C^ν[Z2 x Z2] with ν(x, y) = (−1)^(x1y1 + x2y2 + x2y1), the quaternion algebra:
    u = (1,0) and v = (0,1) square to −1 and anticommute.
    """
    group = FiniteGroup.abelian(2, 2)
    vectors = group.elements
    table = [[(x[0] * y[0] + x[1] * y[1] + x[1] * y[0]) % 2 for y in vectors] for x in vectors]
    return BaseAlgebra(group, table, cocycle_modulus=2)


def q8_twist(group: FiniteGroup | None = None) -> Bihomomorphism:
    """Adjacent slots: u commutes with u, v with v, the other pairs anticommute."""
    group = group or FiniteGroup.abelian(2, 2)
    return validate_bihom(group, [[0, 1], [1, 0]], modulus=2)
