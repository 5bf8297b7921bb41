"""
Session that binds a base algebra and a twist to the run options every
operation shares.

::

    from twistbraid import Session, FiniteGroup, BaseAlgebra, validate_bihom
    from twistbraid.search import Ansatz

    G = FiniteGroup.abelian(3)
    session = Session(BaseAlgebra(G), validate_bihom(G, [[2]], modulus=3))
    solutions = session.enumerate(Ansatz.roots_of_unity(3))
    print(len(solutions))
"""

import logging
from contextlib import contextmanager

from .cyclo import DEFAULT_DIGITS, working_modulus
from .errors import ValidationError
from .groups import BaseAlgebra, Bihomomorphism, Permutation, aut_preserving
from .search import DEFAULT_BUDGET, Ansatz, SolutionSet, dedup_by_symmetry, enumerate_solutions
from .ttp import Element, Monomial, TTPAlgebra, center_basis, inversion_fixed_dim
from .ybo import DEFAULT_CAP, ORDER_CAP, VerificationReport, YBOCandidate, braid_check, projective_image_order, verify

logger = logging.getLogger(__name__)


class Session:
    """
    Holds (G, ν, α) together with the budget, cap, precision and thread count.

    Args:
        base: The base algebra C^ν[G].
        alpha: A twist validated on ``base.group``.
        budget: Largest sweep :meth:`enumerate` may run.
        cap: Bound on image closures.
        digits: Decimal precision of interval embeddings.
        threads: Worker threads for sweeps.
        extra_modulus: Folded into :attr:`working_modulus`, e.g. 4 to make i available.

    Raises:
        ValidationError: If α lives on another group or an option is out of range.
    """

    def __init__(
        self,
        base: BaseAlgebra,
        alpha: Bihomomorphism,
        budget: int = DEFAULT_BUDGET,
        cap: int = DEFAULT_CAP,
        digits: int = DEFAULT_DIGITS,
        threads: int = 1,
        extra_modulus: int = 1,
    ) -> None:
        if alpha.group != base.group:
            raise ValidationError("Twist is defined on a different group")
        if cap < 1 or digits < 1 or extra_modulus < 1:
            raise ValidationError("cap, digits and extra_modulus must be positive")
        self._base = base
        self._alpha = alpha
        self._cap = cap
        self._digits = digits
        self._extra_modulus = extra_modulus
        self._algebras = {}
        self.budget = budget
        self.threads = threads

    def __repr__(self) -> str:
        return f"Session({self._base!r}, {self._alpha!r})"

    @property
    def base(self) -> BaseAlgebra:
        return self._base

    @property
    def alpha(self) -> Bihomomorphism:
        return self._alpha

    @property
    def cap(self) -> int:
        return self._cap

    @property
    def digits(self) -> int:
        return self._digits

    @property
    def working_modulus(self) -> int:
        """
        lcm of the twist modulus, the cocycle modulus and the extra modulus.

        Example::

            assert session.working_modulus == 3
        """
        return working_modulus(self._alpha.modulus, self._base.cocycle_modulus, self._extra_modulus)

    @property
    def budget(self) -> int:
        """
        The largest number of candidates a sweep may examine.

        Returns:
            int: Budget
        """
        return self._budget

    @budget.setter
    def budget(self, b: int):
        if b < 1:
            raise ValidationError("Budget must be positive")
        self._budget = b

    @property
    def threads(self) -> int:
        return self._threads

    @threads.setter
    def threads(self, t: int):
        if t < 1:
            raise ValidationError("Need at least one thread")
        self._threads = t

    @contextmanager
    def temp_budget(self, budget: int) -> None:
        """
        Temporarily change the sweep budget.

        Args:
            budget: Budget to use inside the block.

        Example::

            with session.temp_budget(10**9):
                session.enumerate(Ansatz.roots_of_unity(5))
        """
        old_budget = self.budget
        self.budget = budget
        try:
            yield
        finally:
            self.budget = old_budget

    def algebra(self, n: int) -> TTPAlgebra:
        """
        A_n(G, τ) over the working modulus, built once per n.

        Example::

            u1 = session.algebra(3).generator(1, 1)
        """
        if n not in self._algebras:
            self._algebras[n] = TTPAlgebra(self._base, self._alpha, n, self._extra_modulus)
            logger.debug("built A_%d of dimension %d", n, self._algebras[n].dimension)
        return self._algebras[n]

    def element(self, n: int, terms: dict) -> Element:
        return self.algebra(n).element(terms)

    def braid_check(self, cand: YBOCandidate) -> bool:
        return braid_check(cand, self._alpha)

    def verify(self, cand: YBOCandidate, order_cap: int = ORDER_CAP) -> VerificationReport:
        """
        Braid relation, invertibility, projective unitarity and orders of r
        at the session precision.

        Args:
            cand: The candidate.
            order_cap: Largest power tried for the order of r.
        """
        return verify(cand, self._alpha, cap=order_cap, digits=self._digits)

    def enumerate(self, ansatz: Ansatz, seed: int | None = None) -> SolutionSet:
        """
        Every invertible braid solution the ansatz allows.

        Raises:
            BudgetExceeded: If the sweep is larger than :attr:`budget`.
        """
        return enumerate_solutions(self._base, self._alpha, ansatz, self._budget, self._threads, seed=seed)

    def orbits(self, ansatz: Ansatz, actions) -> SolutionSet:
        return dedup_by_symmetry(self.enumerate(ansatz), actions)

    def center(self, n: int) -> list[Monomial]:
        return center_basis(self.algebra(n))

    def fixed_dim(self, n: int) -> int:
        return inversion_fixed_dim(self.algebra(n))

    def automorphisms(self) -> list[Permutation]:
        """Automorphisms of G that preserve α and ν."""
        return aut_preserving(self._base.group, self._alpha, self._base)

    def image_order(self, cand: YBOCandidate, n: int) -> int | None:
        """Order of the projective image of B_n, None past the cap."""
        return projective_image_order(cand, self._alpha, n, self._cap)
