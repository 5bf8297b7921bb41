"""
Bratteli diagrams for the towers A_n and C_n, the fusion ring of the gauged
categories D_±, and the comparison of the two sides.

::

    from twistbraid.tower import bratteli_C, compare_towers

    C = bratteli_C(3, depth=4)
    assert C.dims(3) == [5, 4]
    assert compare_towers(9, depth=4).ok
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import categorical_edge_match, categorical_node_match
from sympy import expand, factorint, sqrt

from .errors import ValidationError, VerificationFailure
from .groups import BaseAlgebra, FiniteGroup, validate_bihom
from .ttp import TTPAlgebra, center_basis, inversion_fixed_dim

logger = logging.getLogger(__name__)


class BratteliDiagram:
    """
    A leveled multigraph of simple summands along a tower of semisimple algebras.

    Level ``start + k`` holds the nodes ``levels[k]`` as ``(label, dimension)``
    pairs. ``edges[k][i, j]`` is the number of edges from node i of level k to
    node j of level k+1. Every node past the first level must have the
    dimension its incoming edges give it.

    Args:
        levels: Node lists, one per level.
        edges: Non-negative integer matrices between adjacent levels.
        name: Used for DOT output and reports.
        start: Index of the first level.

    Raises:
        ValidationError: If shapes disagree, a dimension is not positive, or the
            dimension recursion fails.

    Example::

        diagram = BratteliDiagram([[("x", 1)], [("y", 1), ("z", 1)]], [[[1, 1]]])
        assert diagram.end_dim(2) == 2
    """

    def __init__(self, levels, edges, name: str = "diagram", start: int = 1) -> None:
        levels = [tuple((str(label), int(dim)) for label, dim in level) for level in levels]
        if not levels or any(not level for level in levels):
            raise ValidationError("A diagram needs at least one level and no empty levels")
        for level in levels:
            if any(dim <= 0 for _, dim in level):
                raise ValidationError("Node dimensions must be positive")
            if len({label for label, _ in level}) != len(level):
                raise ValidationError("Node labels must be unique within a level")
        if len(edges) != len(levels) - 1:
            raise ValidationError(f"Need {len(levels) - 1} edge matrices, got {len(edges)}")
        matrices = []
        for k, edge in enumerate(edges):
            matrix = np.asarray(edge, dtype=np.int64)
            if matrix.shape != (len(levels[k]), len(levels[k + 1])):
                raise ValidationError(f"Edge matrix {k} has shape {matrix.shape}")
            if (matrix < 0).any():
                raise ValidationError("Edge multiplicities must be non-negative")
            matrix.setflags(write=False)
            matrices.append(matrix)
        self._levels = levels
        self._edges = matrices
        self._name = name
        self._start = start
        for k, matrix in enumerate(matrices):
            below = np.array([dim for _, dim in levels[k]], dtype=np.int64)
            above = np.array([dim for _, dim in levels[k + 1]], dtype=np.int64)
            if not np.array_equal(below @ matrix, above):
                raise ValidationError(f"Dimension recursion fails at level {start + k + 1}")

    def __repr__(self) -> str:
        return f"BratteliDiagram({self._name!r}, levels {self._start}..{self.depth})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BratteliDiagram)
            and self._start == other._start
            and self._levels == other._levels
            and all(np.array_equal(a, b) for a, b in zip(self._edges, other._edges))
        )

    __hash__ = None

    @property
    def name(self) -> str:
        return self._name

    @property
    def start(self) -> int:
        return self._start

    @property
    def depth(self) -> int:
        """Index of the last level."""
        return self._start + len(self._levels) - 1

    @property
    def levels(self) -> list[tuple]:
        return list(self._levels)

    @property
    def edges(self) -> list[np.ndarray]:
        return list(self._edges)

    def level(self, n: int) -> tuple:
        if not self._start <= n <= self.depth:
            raise ValidationError(f"Level {n} is outside {self._start}..{self.depth}")
        return self._levels[n - self._start]

    def dims(self, n: int) -> list[int]:
        return [dim for _, dim in self.level(n)]

    def multiplicities(self, n: int) -> dict[str, int]:
        return dict(self.level(n))

    def end_dim(self, n: int) -> int:
        """Σ dim² over level n, the dimension of the algebra at that level."""
        return sum(dim * dim for dim in self.dims(n))

    def edge(self, n: int, source: str, target: str) -> int:
        """Number of edges from ``source`` at level n to ``target`` at level n+1."""
        labels = [label for label, _ in self.level(n)]
        targets = [label for label, _ in self.level(n + 1)]
        return int(self._edges[n - self._start][labels.index(source), targets.index(target)])

    def to_graph(self, upto: int | None = None) -> nx.DiGraph:
        """
        The diagram as a DiGraph on ``(level, label)`` nodes with ``level`` and
        ``dim`` attributes, and a ``multiplicity`` attribute on every edge.
        """
        last = self.depth if upto is None else min(upto, self.depth)
        graph = nx.DiGraph(name=self._name)
        for n in range(self._start, last + 1):
            for label, dim in self.level(n):
                graph.add_node((n, label), level=n, dim=dim)
        for n in range(self._start, last):
            matrix = self._edges[n - self._start]
            for i, (source, _) in enumerate(self.level(n)):
                for j, (target, _) in enumerate(self.level(n + 1)):
                    if matrix[i, j]:
                        graph.add_edge((n, source), (n + 1, target), multiplicity=int(matrix[i, j]))
        return graph

    def to_dot(self) -> str:
        """
        DOT text, nodes labelled ``name:dim`` and edges by their multiplicity.

        Example::

            Path("A.dot").write_text(bratteli_A(3, 3).to_dot())
        """
        lines = [f'digraph "{self._name}" {{', "  rankdir=TB;"]
        for n in range(self._start, self.depth + 1):
            nodes = " ".join(f'"{n}:{label}"' for label, _ in self.level(n))
            lines.append(f"  {{ rank=same; {nodes} }}")
            for label, dim in self.level(n):
                lines.append(f'  "{n}:{label}" [label="{label}:{dim}"];')
        for source, target, data in self.to_graph().edges(data=True):
            lines.append(
                f'  "{source[0]}:{source[1]}" -> "{target[0]}:{target[1]}" [label="{data["multiplicity"]}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self._name,
            "levels": [
                {
                    "n": self._start + k,
                    "nodes": [{"label": label, "dim": dim} for label, dim in level],
                    "end_dim": sum(dim * dim for _, dim in level),
                }
                for k, level in enumerate(self._levels)
            ],
            "edges": [matrix.tolist() for matrix in self._edges],
        }


def _check_tower(m: int, depth: int, rank: int) -> int:
    if m < 3 or m % 2 == 0:
        raise ValidationError(f"m = {m} must be odd and at least 3")
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    if rank not in (1, 2):
        raise ValidationError("rank must be 1 or 2")
    return m**rank


def _link(levels, rule) -> list[list[list[int]]]:
    return [
        [[rule(source, target) for target, _ in levels[k + 1]] for source, _ in levels[k]]
        for k in range(len(levels) - 1)
    ]


def bratteli_A(m: int, depth: int, rank: int = 2) -> BratteliDiagram:
    """
    The tower A_1 ⊂ A_2 ⊂ … for G = Z_m^rank and a non-degenerate twist.

    With N = m^rank, odd levels are a single matrix block of size
    N^((n−1)/2) and even levels split into N blocks of size N^((n−2)/2).
    Every node is joined to every node of the next level once.

    Raises:
        ValidationError: If m is even or below 3, depth < 1, or rank ∉ {1, 2}.

    Example::

        A = bratteli_A(3, depth=3)
        assert A.dims(2) == [1] * 9 and A.dims(3) == [9]
    """
    size = _check_tower(m, depth, rank)
    levels = []
    for n in range(1, depth + 1):
        if n % 2:
            levels.append([("A", size ** ((n - 1) // 2))])
        else:
            levels.append([(f"c{j}", size ** ((n - 2) // 2)) for j in range(size)])
    return BratteliDiagram(levels, _link(levels, lambda source, target: 1), name=f"A-m{m}-r{rank}")


def bratteli_C(m: int, depth: int, rank: int = 2) -> BratteliDiagram:
    """
    The tower of ι-fixed subalgebras C_n ⊂ A_n for G = Z_m^rank.

    With N = m^rank, odd n has blocks ``+`` and ``-`` of sizes
    (N^((n−1)/2) ± 1)/2. Even n has ``+`` and ``-`` of sizes (d ± 1)/2 with
    d = N^((n−2)/2), plus (N−1)/2 blocks ``a1``, ``a2``, … of size d. Blocks of
    size zero are left out. ``+`` and ``-`` feed the block with the same sign
    at the next level, and every ``a`` block sits between ``+`` and ``-``.

    Raises:
        ValidationError: If m is even or below 3, depth < 1, or rank ∉ {1, 2}.

    Example::

        C = bratteli_C(3, depth=4)
        assert C.end_dim(3) == 41 and C.end_dim(4) == 365
    """
    size = _check_tower(m, depth, rank)
    levels = []
    for n in range(1, depth + 1):
        d = size ** ((n - 1) // 2) if n % 2 else size ** ((n - 2) // 2)
        level = [("+", (d + 1) // 2), ("-", (d - 1) // 2)]
        if n % 2 == 0:
            level += [(f"a{j}", d) for j in range(1, (size - 1) // 2 + 1)]
        levels.append([node for node in level if node[1] > 0])

    def rule(source: str, target: str) -> int:
        if source in "+-" and target in "+-":
            return int(source == target)
        return int(source.startswith("a") != target.startswith("a"))

    return BratteliDiagram(levels, _link(levels, rule), name=f"C-m{m}-r{rank}")


class FusionRing:
    """
    A based ring given by its fusion coefficients.

    Dimensions are kept squared so irrational ones such as √m stay exact;
    :meth:`dim` returns the sympy square root.

    Args:
        labels: Simple objects, the unit first.
        dim2: Squared dimension of every object.
        rules: ``rules[a, b]`` maps c to N^c_ab; missing pairs are filled by
            commutativity.
        name: Used in reports.

    Raises:
        ValidationError: On unknown labels, negative coefficients or a product
            that is given neither way round.
    """

    def __init__(self, labels, dim2: dict, rules: dict, name: str = "fusion") -> None:
        labels = [str(label) for label in labels]
        if not labels or len(set(labels)) != len(labels):
            raise ValidationError("Fusion ring labels must be unique and non-empty")
        if set(dim2) != set(labels) or any(int(d) <= 0 for d in dim2.values()):
            raise ValidationError("Need a positive squared dimension per object")
        table = {}
        for a in labels:
            for b in labels:
                product = rules.get((a, b), rules.get((b, a)))
                if product is None:
                    raise ValidationError(f"No fusion rule for {a} x {b}")
                if any(c not in dim2 for c in product) or any(int(k) < 0 for k in product.values()):
                    raise ValidationError(f"Bad fusion rule for {a} x {b}")
                table[a, b] = {c: int(k) for c, k in product.items() if k}
        self._labels = labels
        self._dim2 = {label: int(dim2[label]) for label in labels}
        self._table = table
        self._name = name

    def __repr__(self) -> str:
        return f"FusionRing({self._name!r}, {len(self._labels)} objects)"

    @property
    def name(self) -> str:
        return self._name

    @property
    def labels(self) -> list[str]:
        return list(self._labels)

    @property
    def unit(self) -> str:
        return self._labels[0]

    def dim2(self, label: str) -> int:
        return self._dim2[label]

    def dim(self, label: str):
        return sqrt(self._dim2[label])

    def fuse(self, a: str, b: str) -> dict[str, int]:
        """
        a ⊗ b as ``{c: N^c_ab}``.

        Example::

            assert D.fuse("Z0", "Z0") == {"X+": 1, "Y1": 1}
        """
        try:
            return dict(self._table[a, b])
        except KeyError:
            raise ValidationError(f"Unknown object in {a} x {b}") from None

    def coefficient(self, a: str, b: str, c: str) -> int:
        return self.fuse(a, b).get(c, 0)

    def fuse_vector(self, vector: dict, b: str) -> dict[str, int]:
        """(Σ k_a a) ⊗ b for a multiplicity vector ``{a: k_a}``."""
        result = {}
        for a, k in vector.items():
            for c, n in self.fuse(a, b).items():
                result[c] = result.get(c, 0) + k * n
        return {label: result[label] for label in self._labels if result.get(label)}

    def violations(self) -> list[str]:
        """
        Failed ring axioms: unit, commutativity, the dimension homomorphism,
        associativity and self-duality.
        """
        problems = []
        unit = self.unit
        for a in self._labels:
            if self.fuse(unit, a) != {a: 1}:
                problems.append(f"{unit} is not a unit for {a}")
            for b in self._labels:
                product = self.fuse(a, b)
                if product != self.fuse(b, a):
                    problems.append(f"{a} x {b} is not commutative")
                lhs = sqrt(self._dim2[a] * self._dim2[b])
                rhs = sum(k * sqrt(self._dim2[c]) for c, k in product.items())
                if expand(lhs - rhs) != 0:
                    problems.append(f"dim({a}) dim({b}) != dim({a} x {b})")
                if product.get(unit, 0) != int(a == b):
                    problems.append(f"{unit} in {a} x {b} breaks self-duality")
        for a in self._labels:
            for b in self._labels:
                ab = self.fuse(a, b)
                for c in self._labels:
                    right = {}
                    for d, k in self.fuse(b, c).items():
                        for e, n in self.fuse(a, d).items():
                            right[e] = right.get(e, 0) + k * n
                    if self.fuse_vector(ab, c) != {e: right[e] for e in self._labels if right.get(e)}:
                        problems.append(f"({a} x {b}) x {c} != {a} x ({b} x {c})")
        return problems

    def verify(self) -> None:
        """
        Raises:
            VerificationFailure: If any ring axiom fails.
        """
        problems = self.violations()
        if problems:
            raise VerificationFailure(f"{self._name} is not a fusion ring", {"violations": problems})

    def to_json(self) -> dict:
        return {
            "name": self._name,
            "objects": [{"label": a, "dim2": self._dim2[a]} for a in self._labels],
            "rules": {f"{a} x {b}": self._table[a, b] for a in self._labels for b in self._labels},
        }


def _element_label(group: FiniteGroup, a: int) -> str:
    vector = group.elements[a]
    if len(vector) == 1:
        return str(vector[0])
    return "(" + ",".join(str(x) for x in vector) + ")"


def fusion_ring_D(group) -> FusionRing:
    """
    The fusion ring of the gaugings D_± of the pointed category on an abelian group A of odd order.

    Objects are X+ and X- (invertible), Y_a for a in (A∖0)/±, named by the
    smaller of a and −a, and Z0, Z1 of dimension √|A|. With Y_0 read as
    X+ ⊕ X-:

    * X- ⊗ X- = X+, X- ⊗ Y_a = Y_a, X- ⊗ Z_l = Z_(l+1)
    * Y_a ⊗ Y_b = Y_(a+b) ⊕ Y_(a−b), Y_a ⊗ Z_l = Z0 ⊕ Z1
    * Z_l ⊗ Z_l = X+ ⊕ ΣY_a, Z_l ⊗ Z_(l+1) = X- ⊕ ΣY_a

    Args:
        group: An odd order m ≥ 3, read as Z_m, or an abelian :class:`FiniteGroup`.

    Raises:
        ValidationError: For even order or a non-abelian group.

    Example::

        D = fusion_ring_D(3)
        assert D.fuse("Y1", "Y1") == {"X+": 1, "X-": 1, "Y1": 1}
    """
    if isinstance(group, int):
        if group < 3 or group % 2 == 0:
            raise ValidationError(f"|A| = {group} must be odd and at least 3")
        group = FiniteGroup.abelian(group)
    if not group.is_abelian or group.order % 2 == 0 or group.order < 3 or group.factors is None:
        raise ValidationError("D_± needs an abelian group of odd order at least 3")
    e = group.identity
    names = {}
    for a in range(group.order):
        if a != e:
            names[a] = "Y" + _element_label(group, min(a, group.inverse(a)))
    y_labels = list(dict.fromkeys(names[a] for a in sorted(names, key=lambda a: min(a, group.inverse(a)))))

    def y(a: int) -> dict:
        return {"X+": 1, "X-": 1} if a == e else {names[a]: 1}

    def plus(*parts) -> dict:
        total = {}
        for part in parts:
            for label, k in part.items():
                total[label] = total.get(label, 0) + k
        return total

    rep = {names[a]: a for a in names}
    every_y = {label: 1 for label in y_labels}
    labels = ["X+", "X-", *y_labels, "Z0", "Z1"]
    rules = {}
    for b in labels:
        rules["X+", b] = {b: 1}
    rules["X-", "X-"] = {"X+": 1}
    for label in y_labels:
        rules["X-", label] = {label: 1}
        rules[label, "Z0"] = rules[label, "Z1"] = {"Z0": 1, "Z1": 1}
        for other in y_labels:
            a, b = rep[label], rep[other]
            rules[label, other] = plus(y(group.mul(a, b)), y(group.mul(a, group.inverse(b))))
    rules["X-", "Z0"] = {"Z1": 1}
    rules["X-", "Z1"] = {"Z0": 1}
    rules["Z0", "Z0"] = rules["Z1", "Z1"] = plus({"X+": 1}, every_y)
    rules["Z0", "Z1"] = plus({"X-": 1}, every_y)
    dim2 = {"X+": 1, "X-": 1, **{label: 4 for label in y_labels}, "Z0": group.order, "Z1": group.order}
    return FusionRing(labels, dim2, rules, name="D-" + "x".join(str(m) for m in group.factors))


def fusion_bratteli(ring: FusionRing, obj: str = "Z0", depth: int = 4) -> BratteliDiagram:
    """
    The diagram of End(obj^⊗n) ⊂ End(obj^⊗(n+1)).

    Level n lists the simple summands of obj^⊗n with their multiplicities as
    dimensions; edges count N^c_(b,obj).

    Example::

        diagram = fusion_bratteli(fusion_ring_D(3), "Z0", depth=3)
        assert diagram.multiplicities(3) == {"Z0": 2, "Z1": 1}
    """
    if obj not in ring.labels:
        raise ValidationError(f"{obj} is not an object of {ring.name}")
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    vectors = [{obj: 1}]
    for _ in range(depth - 1):
        vectors.append(ring.fuse_vector(vectors[-1], obj))
    levels = [list(vector.items()) for vector in vectors]
    edges = _link(levels, lambda source, target: ring.coefficient(source, obj, target))
    return BratteliDiagram(levels, edges, name=f"End-{obj}-{ring.name}")


@dataclass(frozen=True)
class LevelComparison:
    n: int
    fusion_dims: tuple[int, ...]
    tower_dims: tuple[int, ...]
    end_dim: int
    fixed_dim: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "fusion_dims": list(self.fusion_dims),
            "tower_dims": list(self.tower_dims),
            "end_dim": self.end_dim,
            "fixed_dim": self.fixed_dim,
        }


@dataclass(frozen=True)
class TowerComparison:
    """
    Outcome of :func:`compare_towers`.

    Attributes:
        order: |A|.
        prime: p with |A| = p^rank.
        rank: 1 or 2.
        isomorphic: Whether the two diagrams are isomorphic as graded graphs.
        first_mismatch: The first level where they part, or where Σ dim²
            differs from the counted dim C_n; None when everything agrees.
    """

    order: int
    prime: int
    rank: int
    depth: int
    isomorphic: bool
    first_mismatch: int | None
    levels: tuple[LevelComparison, ...]

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "prime": self.prime,
            "rank": self.rank,
            "depth": self.depth,
            "isomorphic": self.isomorphic,
            "first_mismatch": self.first_mismatch,
            "ok": self.ok,
            "levels": [level.to_json() for level in self.levels],
        }


def _prime_power(order: int) -> tuple[int, int]:
    factors = factorint(order) if order > 1 else {}
    if len(factors) != 1:
        raise ValidationError(f"|A| = {order} must be p or p² for an odd prime p")
    ((p, rank),) = factors.items()
    if p == 2 or rank not in (1, 2):
        raise ValidationError(f"|A| = {order} must be p or p² for an odd prime p")
    return p, rank


def standard_algebra(m: int, rank: int, n: int) -> TTPAlgebra:
    """A_n over Z_m^rank with the non-degenerate twist α = 2·I."""
    group = FiniteGroup.abelian(*([m] * rank))
    alpha = validate_bihom(group, 2 * np.eye(rank, dtype=np.int64), m)
    return TTPAlgebra(BaseAlgebra(group), alpha, n)


_NODE_MATCH = categorical_node_match(["level", "dim"], [0, 0])
_EDGE_MATCH = categorical_edge_match("multiplicity", 1)


def compare_towers(order: int, depth: int) -> TowerComparison:
    """
    Compare End(Z0^⊗n) for D_± over A = Z_p^rank, |A| = order, with the C_n
    tower over the same group.

    The diagrams are tested for isomorphism as graded graphs, level by
    level, with node dimensions and edge multiplicities matched. Every
    level's Σ dim² is also checked against the number of ι-orbits on the
    monomials of A_n.

    Raises:
        ValidationError: If ``order`` is not p or p² for an odd prime p.

    Example::

        report = compare_towers(3, depth=4)
        assert report.ok and report.levels[1].end_dim == 2
    """
    p, rank = _prime_power(order)
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    ring = fusion_ring_D(FiniteGroup.abelian(*([p] * rank)))
    fused = fusion_bratteli(ring, "Z0", depth)
    tower = bratteli_C(p, depth, rank)
    levels = []
    first = None
    for n in range(1, depth + 1):
        fixed = inversion_fixed_dim(standard_algebra(p, rank, n))
        level = LevelComparison(
            n,
            tuple(sorted(fused.dims(n), reverse=True)),
            tuple(sorted(tower.dims(n), reverse=True)),
            fused.end_dim(n),
            fixed,
        )
        levels.append(level)
        same = nx.is_isomorphic(
            fused.to_graph(upto=n), tower.to_graph(upto=n), node_match=_NODE_MATCH, edge_match=_EDGE_MATCH
        )
        if first is None and not (same and level.end_dim == fixed == tower.end_dim(n)):
            first = n
        logger.debug("level %d: fusion %s, tower %s, fixed %d", n, level.fusion_dims, level.tower_dims, fixed)
    isomorphic = first is None or nx.is_isomorphic(
        fused.to_graph(), tower.to_graph(), node_match=_NODE_MATCH, edge_match=_EDGE_MATCH
    )
    logger.info("towers for |A|=%d to depth %d: %s", order, depth, "agree" if first is None else f"differ at {first}")
    return TowerComparison(order, p, rank, depth, isomorphic, first, tuple(levels))


@dataclass(frozen=True)
class CrossCheck:
    """Per level ``(n, from the diagram, counted in A_n)``."""

    what: str
    rows: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return all(expected == counted for _, expected, counted in self.rows)

    def to_json(self) -> dict:
        return {
            "what": self.what,
            "ok": self.ok,
            "levels": [{"n": n, "diagram": e, "counted": c} for n, e, c in self.rows],
        }


def center_cross_check(m: int, depth: int, rank: int = 2) -> CrossCheck:
    """
    Number of A-tower blocks per level against the monomial center of A_n.

    Example::

        assert center_cross_check(3, depth=5).ok
    """
    diagram = bratteli_A(m, depth, rank)
    rows = tuple(
        (n, len(diagram.level(n)), len(center_basis(standard_algebra(m, rank, n)))) for n in range(1, depth + 1)
    )
    return CrossCheck("center", rows)


def fixed_cross_check(m: int, depth: int, rank: int = 2) -> CrossCheck:
    """Σ dim² of the C tower per level against the ι-orbit count on A_n."""
    diagram = bratteli_C(m, depth, rank)
    rows = tuple(
        (n, diagram.end_dim(n), inversion_fixed_dim(standard_algebra(m, rank, n))) for n in range(1, depth + 1)
    )
    return CrossCheck("fixed", rows)
