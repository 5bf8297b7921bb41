"""
Sparse matrices over Q(ζ_M) with exact rank, nullity and solving.

A d x d matrix over Q(ζ_M) is also a Q-linear map on Q^(dφ(M)); every entry
c becomes the φ(M) x φ(M) block of multiplication by c in the power basis.
Ranks over the cyclotomic field are Q-ranks divided by φ(M), computed with
sympy's ``DomainMatrix`` over ``QQ``.
"""

from functools import lru_cache

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .cyclo import CycNum, phi
from .errors import ValidationError


@lru_cache(maxsize=4096)
def _mult_block(value: CycNum) -> tuple:
    """Nonzero entries (row, col, rational) of multiplication by ``value``."""
    entries = []
    for k in range(phi(value.modulus)):
        column = value * CycNum.root(value.modulus, k)
        for r, c in enumerate(column.coeffs):
            if c:
                entries.append((r, k, c))
    return tuple(entries)


class CycMatrix:
    """
    A sparse matrix over Q(ζ_M), stored as ``{(row, col): CycNum}`` with no zero entries.

    Args:
        shape: ``(rows, cols)``.
        entries: Mapping of positions to values; zeros are dropped.
        modulus: The field Q(ζ_M) all entries live in.
    """

    def __init__(self, shape: tuple[int, int], entries: dict, modulus: int) -> None:
        self._shape = (int(shape[0]), int(shape[1]))
        self._modulus = modulus
        self._entries = {}
        for (i, j), v in entries.items():
            if not isinstance(v, CycNum):
                v = CycNum.rational(modulus, v)
            elif v.modulus != modulus:
                v = v.lift(modulus)
            if v:
                self._entries[(i, j)] = v

    @classmethod
    def identity(cls, size: int, modulus: int) -> "CycMatrix":
        one = CycNum.one(modulus)
        return cls((size, size), {(i, i): one for i in range(size)}, modulus)

    @classmethod
    def from_rows(cls, rows, modulus: int) -> "CycMatrix":
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)}
        return cls((len(rows), len(rows[0]) if rows else 0), entries, modulus)

    def __repr__(self) -> str:
        return f"CycMatrix({self._shape[0]}x{self._shape[1]}, nnz={len(self._entries)}, modulus={self._modulus})"

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> CycNum:
        return self._entries.get(key, CycNum.zero(self._modulus))

    def __eq__(self, other) -> bool:
        return isinstance(other, CycMatrix) and self._shape == other._shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        return (self._shape, tuple(sorted((i, j, v.coeffs) for (i, j), v in self._entries.items())))

    def rows(self) -> list[list[CycNum]]:
        zero = CycNum.zero(self._modulus)
        dense = [[zero] * self._shape[1] for _ in range(self._shape[0])]
        for (i, j), v in self._entries.items():
            dense[i][j] = v
        return dense

    def column(self, j: int) -> dict[int, CycNum]:
        return {i: v for (i, jj), v in self._entries.items() if jj == j}

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        self._check_shape(other, same=True)
        entries = dict(self._entries)
        for key, v in other._entries.items():
            entries[key] = entries[key] + v if key in entries else v
        return CycMatrix(self._shape, entries, self._modulus)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + other.scale(-1)

    def scale(self, factor) -> "CycMatrix":
        if not isinstance(factor, CycNum):
            factor = CycNum.rational(self._modulus, factor)
        return CycMatrix(self._shape, {k: v * factor for k, v in self._entries.items()}, self._modulus)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        self._check_shape(other)
        by_row: dict[int, list] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        result: dict = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                product = a * b
                key = (i, j)
                result[key] = result[key] + product if key in result else product
        return CycMatrix((self._shape[0], other._shape[1]), result, self._modulus)

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        rows, cols = other._shape
        entries = {}
        for (i, j), a in self._entries.items():
            for (k, l), b in other._entries.items():
                entries[(i * rows + k, j * cols + l)] = a * b
        return CycMatrix((self._shape[0] * rows, self._shape[1] * cols), entries, self._modulus)

    def _check_shape(self, other: "CycMatrix", same: bool = False) -> None:
        if other._modulus != self._modulus:
            raise ValidationError("Matrices live over different cyclotomic fields")
        if same and other._shape != self._shape:
            raise ValidationError(f"Shape mismatch {self._shape} vs {other._shape}")
        if not same and self._shape[1] != other._shape[0]:
            raise ValidationError(f"Cannot multiply {self._shape} by {other._shape}")

    def scalar_value(self) -> CycNum | None:
        """The c with self = c·I, or None."""
        n = self._shape[0]
        if self._shape[1] != n or len(self._entries) != n:
            return None
        c = self._entries.get((0, 0))
        if c is None or any(self._entries.get((i, i)) != c for i in range(n)):
            return None
        return c

    def first_nonzero(self) -> CycNum | None:
        """First nonzero entry in row-major order."""
        if not self._entries:
            return None
        return self._entries[min(self._entries)]

    def projective_key(self) -> tuple:
        """Key of the matrix rescaled so its first nonzero entry is 1."""
        lead = self.first_nonzero()
        if lead is None:
            return self.key()
        return self.scale(1 / lead).key()

    def is_generalized_permutation(self) -> bool:
        rows = [i for i, _ in self._entries]
        cols = [j for _, j in self._entries]
        n = self._shape[0]
        return self._shape == (n, n) and sorted(rows) == list(range(n)) and sorted(cols) == list(range(n))

    def realify(self) -> DomainMatrix:
        """The rational matrix of the underlying Q-linear map, as a sparse ``DomainMatrix``."""
        d = phi(self._modulus)
        rows: dict = {}
        for (i, j), v in self._entries.items():
            for r, c, value in _mult_block(v):
                rows.setdefault(i * d + r, {})[j * d + c] = value
        return DomainMatrix(rows, (self._shape[0] * d, self._shape[1] * d), QQ)

    def rank(self) -> int:
        if not self._entries:
            return 0
        return self.realify().rank() // phi(self._modulus)

    def nullity(self) -> int:
        return self._shape[1] - self.rank()

    def is_nonsingular(self) -> bool:
        return self._shape[0] == self._shape[1] and self.rank() == self._shape[0]

    def solve(self, rhs: dict[int, CycNum]) -> dict[int, CycNum]:
        """
        Solve ``self @ y = rhs`` for a nonsingular square matrix.

        Args:
            rhs: Sparse right-hand side, index to value.

        Returns:
            The sparse solution vector.

        Raises:
            ZeroDivisionError: If the matrix is singular.
        """
        if not self.is_nonsingular():
            raise ZeroDivisionError("matrix is singular")
        d = phi(self._modulus)
        size = self._shape[0] * d
        column = [[QQ.zero] for _ in range(size)]
        for i, v in rhs.items():
            for r, c in enumerate(v.lift(self._modulus).coeffs):
                column[i * d + r][0] = c
        solution = self.realify().to_dense().lu_solve(DomainMatrix(column, (size, 1), QQ)).to_list()
        result = {}
        for i in range(self._shape[1]):
            value = CycNum(self._modulus, tuple(QQ.convert(solution[i * d + r][0]) for r in range(d)))
            if value:
                result[i] = value
        return result
