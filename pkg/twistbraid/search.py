"""
Exhaustive sweeps for braid operators over finite coefficient sets, orbit
deduplication under the solution symmetries, and the factorized solutions on
Z_p x Z_p.

When every allowed coefficient is a root of unity or zero, the sweep never
builds algebra elements: each coefficient of r₁r₂r₁ − r₂r₁r₂ is a sum of roots
of unity, so it is kept as a histogram of exponents and reduced to the power
basis with one integer matrix product. Other coefficient sets fall back to the
exact :func:`twistbraid.ybo.braid_check`.

::

    from twistbraid.groups import BaseAlgebra, cyclic, validate_bihom
    from twistbraid.search import Ansatz, dedup_by_symmetry, enumerate_solutions

    G = cyclic(3)
    sols = enumerate_solutions(BaseAlgebra(G), validate_bihom(G, [[2]], modulus=3), Ansatz.roots_of_unity(3))
    assert len(sols) == 6
    assert len(dedup_by_symmetry(sols, ["character", "conjugation"]).orbits) == 1
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import gcd

import numpy as np
from sympy import QQ, Matrix, isprime
from sympy.ntheory import legendre_symbol

from .cyclo import CycNum, working_modulus
from .errors import BudgetExceeded, ValidationError
from .groups import (
    BaseAlgebra,
    Bihomomorphism,
    FiniteGroup,
    aut_preserving,
    form_orbits,
    validate_bihom,
)
from .ttp import GaloisAction, GroupAutomorphism, TTPAlgebra, check_inversion_applies
from .ybo import (
    CoefficientConjugation,
    GlobalScale,
    OperatorInversion,
    SupportInversion,
    VerificationReport,
    YBOCandidate,
    braid_check,
    invertible,
    linear_characters,
    projective_unitary,
    symmetry_apply,
    target_form,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
DEFAULT_CHUNK = 2048

ACTION_NAMES = (
    "scale",
    "character",
    "automorphism",
    "galois",
    "support_inversion",
    "conjugation",
    "operator_inversion",
)

# cap on entries of the per-chunk (candidate, a, c, y) arrays
_KERNEL_CELLS = 2**20


@dataclass(frozen=True)
class Ansatz:
    """
    The finite coefficient set a sweep ranges over.

    Attributes:
        values: Allowed values of every free coefficient.
        pinned: ``(element index, value)`` pairs held fixed.
        pin_identity: Pin f(e) = 1 unless ``pinned`` already fixes e.
    """

    values: tuple
    pinned: tuple = ()
    pin_identity: bool = True

    @classmethod
    def roots_of_unity(cls, m: int, zero: bool = False, pinned: dict | None = None) -> "Ansatz":
        """μ_m, optionally with 0."""
        values = tuple(CycNum.root(m, k) for k in range(m))
        if zero:
            values = (CycNum.zero(m),) + values
        return cls(values, tuple(sorted((pinned or {}).items())))

    @classmethod
    def of(cls, values, pinned: dict | None = None, modulus: int = 1) -> "Ansatz":
        """Build from CycNum values or rationals such as ``"1/2"``."""
        values = tuple(v if isinstance(v, CycNum) else CycNum.rational(modulus, v) for v in values)
        pins = {
            g: v if isinstance(v, CycNum) else CycNum.rational(modulus, v) for g, v in (pinned or {}).items()
        }
        return cls(values, tuple(sorted(pins.items())))

    def pins(self, group: FiniteGroup) -> dict[int, CycNum]:
        pins = {group.index(g): v for g, v in self.pinned}
        if self.pin_identity and group.identity not in pins:
            pins[group.identity] = CycNum.one(1)
        return pins

    def size(self, group: FiniteGroup) -> int:
        return len(self.values) ** (group.order - len(self.pins(group)))

    def to_json(self) -> dict:
        return {
            "values": [v.to_json() for v in self.values],
            "pinned": [[g, v.to_json()] for g, v in self.pinned],
            "pin_identity": self.pin_identity,
        }


@dataclass
class Solution:
    candidate: YBOCandidate
    report: VerificationReport


@dataclass
class Orbit:
    """
    One symmetry class of a :class:`SolutionSet`.

    Attributes:
        representative: Index of the member with the lexicographically minimal coefficient vector.
        members: Sorted indices of all members.
    """

    representative: int
    members: list[int]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class SolutionSet:
    """
    Every verified solution of one sweep, in canonical order.

    Attributes:
        base: The base algebra.
        alpha: The twist.
        solutions: Braid solutions that are invertible.
        swept: Number of candidates examined.
        singular: Braid solutions dropped as singular.
        orbits: Filled in by :func:`dedup_by_symmetry`.
        actions: Names of the symmetries the orbits were built with.
    """

    base: BaseAlgebra
    alpha: Bihomomorphism
    solutions: list[Solution]
    swept: int
    singular: int = 0
    orbits: list[Orbit] = field(default_factory=list)
    actions: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def candidates(self) -> list[YBOCandidate]:
        return [s.candidate for s in self.solutions]

    def unitary(self) -> list[Solution]:
        return [s for s in self.solutions if s.report.unitary_scalar is not None]

    def to_json(self) -> dict:
        return {
            "swept": self.swept,
            "singular": self.singular,
            "count": len(self.solutions),
            "solutions": [
                {**s.candidate.to_json(), "unitary_scalar": s.report.to_json()["unitary_scalar"]}
                for s in self.solutions
            ],
            "actions": list(self.actions),
            "orbits": [{"representative": o.representative, "members": o.members} for o in self.orbits],
        }


def _reduction_matrix(modulus: int) -> np.ndarray:
    """Row k holds the (integer) power-basis coordinates of ζ_M^k."""
    return np.array(
        [[int(QQ.numer(c)) for c in CycNum.root(modulus, k).coeffs] for k in range(modulus)], dtype=np.int64
    )


def _root_exponents(values, modulus: int) -> list[int] | None:
    """Exponents k with v = ζ_M^k, −1 for zero, or None if some value is neither."""
    result = []
    for v in values:
        if not v:
            result.append(-1)
            continue
        e = v.lift(modulus).root_exponent()
        if e is None:
            return None
        result.append(e)
    return result


class _BraidKernel:
    """
    Vectorised braid test on A₃ for candidates given as exponent rows.

    The coefficient of x_1 y_2 in r₁r₂r₁ is Σ_(ac=x) f(a)f(c)f(y)ν(a,c)q^(−α(c,y)),
    in r₂r₁r₂ it is Σ_(ac=y) f(x)f(a)f(c)ν(a,c)q^(−α(x,a)).
    """

    def __init__(self, alg: TTPAlgebra) -> None:
        group = alg.group
        self.order = group.order
        self.modulus = alg.modulus
        self.nu = alg._nu_exp
        self.alpha = alg._alpha_exp
        g = np.arange(self.order)
        table = group.table
        self.left_pos = (table[:, :, None] * self.order + g[None, None, :]).ravel()
        self.right_pos = (g[:, None, None] * self.order + table[None, :, :]).ravel()
        self.red = _reduction_matrix(self.modulus)
        self.characters = None
        if group.factors is not None and alg.base.is_commutative and not alg.base.is_twisted:
            vectors = np.asarray(group.elements, dtype=np.int64)
            weights = np.array([self.modulus // m for m in group.factors], dtype=np.int64)
            self.characters = ((vectors * weights) @ vectors.T) % self.modulus

    def _histogram(self, exps: np.ndarray, valid: np.ndarray, pos: np.ndarray, cells: int) -> np.ndarray:
        count = exps.shape[0]
        m = self.modulus
        index = (np.arange(count)[:, None] * cells + pos[None, :]) * m + exps.reshape(count, -1)
        dump = count * cells * m
        index = np.where(valid.reshape(count, -1), index, dump)
        return np.bincount(index.ravel(), minlength=dump + 1)[:dump].reshape(count, cells, m)

    def braid(self, f: np.ndarray) -> np.ndarray:
        m, nu, alpha = self.modulus, self.nu, self.alpha
        ok = f >= 0
        fa, fb, fc = f[:, :, None, None], f[:, None, :, None], f[:, None, None, :]
        va, vb, vc = ok[:, :, None, None], ok[:, None, :, None], ok[:, None, None, :]
        valid = va & vb & vc
        # (a, c, y) for r₁r₂r₁ and (x, a, c) for r₂r₁r₂
        left = (fa + fb + fc + nu[None, :, :, None] - alpha[None, None, :, :]) % m
        right = (fa + fb + fc + nu[None, None, :, :] - alpha[None, :, :, None]) % m
        cells = self.order * self.order
        diff = self._histogram(left, valid, self.left_pos, cells) - self._histogram(right, valid, self.right_pos, cells)
        return ~(diff @ self.red).any(axis=(1, 2))

    def invertible(self, f: np.ndarray) -> np.ndarray | None:
        """Fourier test for commutative untwisted abelian bases, None otherwise."""
        if self.characters is None:
            return None
        m = self.modulus
        ok = f >= 0
        exps = (f[:, None, :] + self.characters[None, :, :]) % m
        valid = np.broadcast_to(ok[:, None, :], exps.shape)
        count = f.shape[0]
        index = (np.arange(count)[:, None, None] * self.order + np.arange(self.order)[None, :, None]) * m + exps
        dump = count * self.order * m
        index = np.where(valid, index, dump)
        hist = np.bincount(index.ravel(), minlength=dump + 1)[:dump].reshape(count, self.order, m)
        return (hist @ self.red).any(axis=2).all(axis=1)


def enumerate_solutions(
    base: BaseAlgebra,
    alpha: Bihomomorphism,
    ansatz: Ansatz,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    chunk: int = DEFAULT_CHUNK,
    seed: int | None = None,
) -> SolutionSet:
    """
    Sweep every coefficient assignment allowed by ``ansatz`` and keep the
    invertible braid solutions.

    Args:
        base: The base algebra.
        alpha: The twist.
        ansatz: Allowed values and pinned coefficients.
        budget: Largest number of candidates to examine.
        threads: Worker threads for the chunked sweep.
        chunk: Candidates per chunk.
        seed: Visit candidates in a shuffled order; the result does not change.

    Returns:
        The solutions sorted by coefficient vector.

    Raises:
        BudgetExceeded: If the ansatz has more candidates than ``budget``.
        ValidationError: If α lives on another group.
    """
    group = base.group
    if alpha.group != group:
        raise ValidationError("Twist is defined on a different group")
    pins = ansatz.pins(group)
    free = [g for g in range(group.order) if g not in pins]
    total = len(ansatz.values) ** len(free)
    if total > budget:
        raise BudgetExceeded(total, budget)
    if free and not ansatz.values:
        return SolutionSet(base, alpha, [], 0)
    modulus = working_modulus(*(v.modulus for v in ansatz.values), *(v.modulus for v in pins.values()))
    alg = TTPAlgebra(base, alpha, 3, modulus)
    value_exp = _root_exponents(ansatz.values, alg.modulus)
    pin_exp = _root_exponents(list(pins.values()), alg.modulus)
    kernel = _BraidKernel(alg) if value_exp is not None and pin_exp is not None else None
    if kernel is not None:
        chunk = max(1, min(chunk, _KERNEL_CELLS // group.order**3))
    order = np.arange(total, dtype=np.int64)
    if seed is not None:
        order = np.random.default_rng(seed).permutation(total)
    chunks = [order[i : i + chunk] for i in range(0, total, chunk)]
    shape = (len(ansatz.values),) * len(free)

    def candidate(index: int) -> YBOCandidate:
        coeffs = [None] * group.order
        for g, v in pins.items():
            coeffs[g] = v
        digits = np.unravel_index(index, shape) if free else ()
        for g, d in zip(free, digits):
            coeffs[g] = ansatz.values[int(d)]
        return YBOCandidate(base, tuple(coeffs))

    def sweep(indices: np.ndarray) -> tuple[list[YBOCandidate], int]:
        if kernel is None:
            passing = [candidate(int(i)) for i in indices]
            passing = [c for c in passing if braid_check(c, alpha)]
            fast_inv = None
        else:
            f = np.empty((len(indices), group.order), dtype=np.int64)
            for g, e in zip(pins, pin_exp):
                f[:, g] = e
            if free:
                values = np.asarray(value_exp, dtype=np.int64)
                for g, d in zip(free, np.unravel_index(indices, shape)):
                    f[:, g] = values[d]
            mask = kernel.braid(f)
            fast_inv = kernel.invertible(f[mask])
            passing = [candidate(int(i)) for i in indices[mask]]
        kept, singular = [], 0
        for j, cand in enumerate(passing):
            ok = bool(fast_inv[j]) if fast_inv is not None else invertible(cand)
            if ok:
                kept.append(cand)
            else:
                singular += 1
        logger.debug("chunk of %d candidates: %d braid solutions, %d singular", len(indices), len(passing), singular)
        return kept, singular

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(sweep, chunks))
    else:
        results = [sweep(c) for c in chunks]
    found = sorted((c for kept, _ in results for c in kept), key=lambda c: c.key())
    singular = sum(s for _, s in results)
    if singular:
        logger.warning("%d braid solutions dropped as singular", singular)
    solutions = [Solution(c, VerificationReport(True, True, projective_unitary(c))) for c in found]
    logger.info("swept %d candidates: %d solutions", total, len(solutions))
    return SolutionSet(base, alpha, solutions, total, singular)


class UnionFind:
    def __init__(self, items) -> None:
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(members) for members in groups.values()]


def expand_actions(names, base: BaseAlgebra, alpha: Bihomomorphism, modulus: int) -> list:
    """
    Turn action names into the concrete symmetries that generate them.

    Raises:
        ValidationError: For unknown names, or an inversion-type action on a base it does not apply to.
    """
    group = base.group
    actions = []
    for name in names:
        if name not in ACTION_NAMES:
            raise ValidationError(f"Unknown symmetry {name!r}; expected one of {', '.join(ACTION_NAMES)}")
        if name == "scale":
            actions.append(GlobalScale(CycNum.rational(1, -1)))
        elif name == "character":
            actions.extend(a for a in linear_characters(group) if any(a.exponents))
        elif name == "automorphism":
            identity = tuple(range(group.order))
            actions.extend(GroupAutomorphism(psi) for psi in aut_preserving(group, alpha, base) if psi != identity)
        elif name == "galois":
            for s in range(2, modulus):
                if gcd(s, modulus) != 1:
                    continue
                twin = base.galois_twin(s)
                if target_form(alpha, GaloisAction(s)) == alpha and np.array_equal(twin.cocycle, base.cocycle):
                    actions.append(GaloisAction(s))
        elif name == "support_inversion":
            check_inversion_applies(base, "Support inversion")
            actions.append(SupportInversion())
        elif name == "conjugation":
            check_inversion_applies(base, "Coefficient conjugation")
            actions.append(CoefficientConjugation())
        else:
            actions.append(OperatorInversion())
    return actions


def _orbit_modulus(sols: SolutionSet) -> int:
    return working_modulus(
        sols.alpha.modulus,
        sols.base.cocycle_modulus,
        sols.base.group.exponent,
        *(c.modulus for c in sols.candidates),
    )


def projective_key(cand: YBOCandidate, modulus: int) -> tuple:
    return tuple(c.lift(modulus).coeffs for c in cand.normalized().f)


def orbit_keys(cand: YBOCandidate, actions, alpha: Bihomomorphism, modulus: int) -> set[tuple]:
    """Projective keys of everything reachable from ``cand`` under ``actions``."""
    start = cand.normalized()
    seen = {projective_key(start, modulus)}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for action in actions:
                image = symmetry_apply(c, action, alpha).normalized()
                key = projective_key(image, modulus)
                if key not in seen:
                    seen.add(key)
                    nxt.append(replace(image, base=cand.base))
        frontier = nxt
    return seen


def dedup_by_symmetry(sols: SolutionSet, actions) -> SolutionSet:
    """
    Partition a solution set into orbits of the group generated by ``actions``.

    Solutions are compared projectively (first nonzero coefficient scaled
    to 1). Each orbit's representative is its lexicographically minimal
    coefficient vector.

    Args:
        sols: Output of :func:`enumerate_solutions`.
        actions: Names from :data:`ACTION_NAMES`.

    Raises:
        ValidationError: For an unknown action or one that does not apply to the base.
    """
    names = tuple(actions)
    modulus = _orbit_modulus(sols)
    generators = expand_actions(names, sols.base, sols.alpha, modulus)
    keys = [projective_key(c, modulus) for c in sols.candidates]
    lookup = {k: i for i, k in enumerate(keys)}
    uf = UnionFind(range(len(sols)))
    escaped = 0
    for i, cand in enumerate(sols.candidates):
        for action in generators:
            j = lookup.get(projective_key(symmetry_apply(cand, action, sols.alpha), modulus))
            if j is None:
                escaped += 1
            else:
                uf.union(i, j)
    if escaped:
        logger.debug("%d images left the solution set", escaped)
    lifted = [tuple(c.lift(modulus).coeffs for c in cand.f) for cand in sols.candidates]
    orbits = [Orbit(min(members, key=lambda i: lifted[i]), members) for members in uf.classes()]
    orbits.sort(key=lambda o: lifted[o.representative])
    logger.info("%d solutions form %d orbits under %s", len(sols), len(orbits), ", ".join(names) or "no symmetries")
    return replace(sols, orbits=orbits, actions=names)


FACTORIZED_KINDS = ("A1", "A2", "A3")


def _check_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise ValidationError(f"{p} is not an odd prime")


def factorized_twist(kind: str, p: int, x: int = 1) -> Bihomomorphism:
    """The twist on Z_p x Z_p a factorized candidate of this kind solves: 2I, the skew form, or diag(2, 2x)."""
    _check_prime(p)
    group = FiniteGroup.abelian(p, p)
    if kind == "A1":
        matrix = [[2, 0], [0, 2]]
    elif kind == "A2":
        matrix = [[0, 2], [-2, 0]]
    elif kind == "A3":
        matrix = [[2, 0], [0, 2 * x]]
    else:
        raise ValidationError(f"Unknown form kind {kind!r}")
    return validate_bihom(group, matrix, modulus=p)


def gaussian_product(p: int, a: int, b: int, group: FiniteGroup | None = None) -> YBOCandidate:
    """f(j, k) = q^(a·j² + b·k²) on Z_p x Z_p."""
    group = group or FiniteGroup.abelian(p, p)
    values = [None] * group.order
    for j, k in itertools.product(range(p), repeat=2):
        values[group.index((j, k))] = CycNum.root(p, a * j * j + b * k * k)
    return YBOCandidate(BaseAlgebra(group), tuple(values))


def factorized_candidate(kind: str, p: int, sign: int = 1, x: int = 1) -> YBOCandidate:
    """
    The product of two Gaussians, f(j, k) = q^(j² + εx·k²), on Z_p x Z_p.

    Args:
        kind: ``"A1"`` (x = 1), ``"A2"`` (ε = 1, x = 1) or ``"A3"`` (x a non-square).
        p: Odd prime.
        sign: ε = ±1.
        x: The scale of the second factor.

    Raises:
        ValidationError: If x or ε does not fit the kind.

    Example::

        cand = factorized_candidate("A3", 3, sign=-1, x=2)
        assert braid_check(cand, factorized_twist("A3", 3, x=2))
    """
    _check_prime(p)
    if sign not in (1, -1):
        raise ValidationError("sign must be 1 or -1")
    if kind == "A1" and x % p != 1:
        raise ValidationError("A1 products use x = 1")
    if kind == "A2" and (x % p != 1 or sign != 1):
        raise ValidationError("A2 products need h = f, i.e. sign 1 and x = 1")
    if kind == "A3" and legendre_symbol(x % p, p) != -1:
        raise ValidationError(f"A3 products need a non-square x, {x} is a square mod {p}")
    if kind not in FACTORIZED_KINDS:
        raise ValidationError(f"Unknown form kind {kind!r}")
    return gaussian_product(p, 1, sign * x)


def is_gaussian_product(cand: YBOCandidate, p: int) -> bool:
    """
    True when f(g) = q^Q(g) for a quadratic function Q on Z_p^k whose quadratic
    part is non-degenerate, i.e. f is a product of Gaussians after a change of basis.
    """
    group = cand.group
    if group.factors is None or set(group.factors) != {p}:
        return False
    if p % cand.modulus:
        return False
    exps = _root_exponents(cand.f, p)
    if exps is None or min(exps) < 0:
        return False
    e = np.asarray(exps, dtype=np.int64)
    table = group.table
    bilinear = (e[table] - e[:, None] - e[None, :] + e[group.identity]) % p
    additive = (bilinear[table, :] - bilinear[:, None, :] - bilinear[None, :, :]) % p
    if additive.any():
        return False
    k = len(group.factors)
    units = [group.index(tuple(int(i == j) for j in range(k))) for i in range(k)]
    gram = bilinear[np.ix_(units, units)]
    return int(Matrix(gram.tolist()).det()) % p != 0


@dataclass
class OrbitSurvey:
    """Survey results for one form orbit on Z_3 x Z_3."""

    representative: tuple
    orbit_size: int
    label: str | None
    nondegenerate_form: bool
    degenerate: bool
    solutions: int
    unitary: int
    nondegenerate_unitary: int
    all_gaussian: bool | None

    @property
    def admits_nondegenerate_unitary(self) -> bool:
        return self.nondegenerate_unitary > 0

    def to_json(self) -> dict:
        return {
            "representative": [list(r) for r in self.representative],
            "orbit_size": self.orbit_size,
            "label": self.label,
            "nondegenerate_form": self.nondegenerate_form,
            "degenerate": self.degenerate,
            "solutions": self.solutions,
            "unitary": self.unitary,
            "nondegenerate_unitary": self.nondegenerate_unitary,
            "admits_nondegenerate_unitary": self.admits_nondegenerate_unitary,
            "all_gaussian": self.all_gaussian,
        }


@dataclass
class SurveyReport:
    orbits: list[OrbitSurvey]
    discrepancies: list[str]

    def to_json(self) -> dict:
        return {"orbits": [o.to_json() for o in self.orbits], "discrepancies": self.discrepancies}


def z3z3_survey(budget: int = DEFAULT_BUDGET, threads: int = 1, p: int = 3) -> SurveyReport:
    """
    Sweep μ_p coefficients with f(0,0) = 1 for one twist from every form orbit on Z_p x Z_p.

    A solution is non-degenerate when its support generates the whole group.
    Orbits that admit non-degenerate unitary solutions are expected to be
    exactly the A1, A2 and A3 classes, with every such solution a Gaussian
    product; deviations are logged and listed as discrepancies.

    Raises:
        BudgetExceeded: If one sweep exceeds ``budget``.
    """
    group = FiniteGroup.abelian(p, p)
    base = BaseAlgebra(group)
    ansatz = Ansatz.roots_of_unity(p)
    rows, discrepancies = [], []
    for orbit in form_orbits(2, p):
        alpha = validate_bihom(group, orbit.matrix, modulus=p)
        sols = enumerate_solutions(base, alpha, ansatz, budget=budget, threads=threads)
        unitary = sols.unitary()
        survivors = [s for s in unitary if len(group.subgroup(s.candidate.support)) == group.order]
        all_gaussian = all(is_gaussian_product(s.candidate, p) for s in survivors) if survivors else None
        row = OrbitSurvey(
            orbit.representative,
            orbit.size,
            orbit.label,
            orbit.is_nondegenerate,
            alpha.is_zero(),
            len(sols),
            len(unitary),
            len(survivors),
            all_gaussian,
        )
        rows.append(row)
        if row.admits_nondegenerate_unitary != (row.label is not None):
            discrepancies.append(f"orbit {row.representative}: label {row.label}, survivors {len(survivors)}")
        if all_gaussian is False:
            discrepancies.append(f"orbit {row.representative}: survivor that is not a Gaussian product")
    for message in discrepancies:
        logger.warning("survey discrepancy: %s", message)
    logger.info(
        "survey over %d form orbits: %d admit non-degenerate unitary solutions",
        len(rows),
        sum(r.admits_nondegenerate_unitary for r in rows),
    )
    return SurveyReport(rows, discrepancies)
