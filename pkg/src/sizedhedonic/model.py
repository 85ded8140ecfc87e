"""Core data types: games, size bounds, partitions, and feasibility arithmetic.

Agents are dense integer ids 1..n.  Valuations are integers, so every
utility comparison in the package is exact.  All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class InfeasiblePartitionError(ValueError):
    """A partition violates the coalition-size bounds it is checked against."""


@dataclass(frozen=True)
class SizeBounds:
    """Lower and upper bound on coalition cardinality, 1 <= lower <= upper."""

    lower: int
    upper: int

    def __post_init__(self) -> None:
        if not (isinstance(self.lower, int) and isinstance(self.upper, int)):
            raise ValueError("size bounds must be integers")
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"invalid size bounds ({self.lower}, {self.upper})")

    def contains(self, size: int) -> bool:
        return self.lower <= size <= self.upper

    def __str__(self) -> str:
        return f"{self.lower}:{self.upper}"


class Game:
    """An additively separable hedonic game on agents 1..n.

    Each ordered pair (a, b) of distinct agents carries an integer valuation
    v_a(b); an agent's utility for a coalition it belongs to is the sum of
    its valuations for the other members.  Valuations not supplied at
    construction default to 0.  An agent has no valuation for itself.

    ``symmetric`` is a declared property: when set, v_a(b) == v_b(a) is
    validated at construction time.
    """

    __slots__ = ("n", "symmetric", "_v")

    def __init__(
        self,
        n: int,
        valuations: Mapping[tuple[int, int], int] | None = None,
        symmetric: bool = False,
    ) -> None:
        if n < 0:
            raise ValueError("agent count must be nonnegative")
        self.n = n
        self.symmetric = symmetric
        table = [[0] * (n + 1) for _ in range(n + 1)]
        if valuations:
            for (a, b), w in valuations.items():
                if not (1 <= a <= n and 1 <= b <= n):
                    raise ValueError(f"valuation pair ({a}, {b}) out of range 1..{n}")
                if a == b:
                    raise ValueError(f"agent {a} may not value itself")
                if not isinstance(w, int) or isinstance(w, bool):
                    raise ValueError(f"valuation v_{a}({b}) must be an integer")
                table[a][b] = w
        if symmetric:
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    if table[a][b] != table[b][a]:
                        raise ValueError(
                            f"declared symmetric but v_{a}({b}) != v_{b}({a})"
                        )
        self._v = table

    @property
    def agents(self) -> range:
        return range(1, self.n + 1)

    def value(self, a: int, b: int) -> int:
        """Valuation of agent ``a`` for agent ``b`` (a != b)."""
        if a == b:
            raise ValueError("an agent has no valuation for itself")
        return self._v[a][b]

    def row(self, a: int) -> list[int]:
        """Internal valuation row of agent ``a``, indexed by agent id.

        Entry ``a`` itself is meaningless and must not be read.  Exposed for
        hot loops; do not mutate.
        """
        return self._v[a]

    def nonzero_pairs(self) -> Iterable[tuple[int, int, int]]:
        """All (a, b, v_a(b)) with nonzero valuation, in (a, b) order."""
        for a in range(1, self.n + 1):
            row = self._v[a]
            for b in range(1, self.n + 1):
                if b != a and row[b]:
                    yield a, b, row[b]

    def has_symmetric_table(self) -> bool:
        return all(
            self._v[a][b] == self._v[b][a]
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
        )

    def is_nonzero(self) -> bool:
        """True iff every valuation between distinct agents is nonzero."""
        return all(
            self._v[a][b] != 0
            for a in range(1, self.n + 1)
            for b in range(1, self.n + 1)
            if a != b
        )

    def is_nonnegative(self) -> bool:
        return all(
            self._v[a][b] >= 0
            for a in range(1, self.n + 1)
            for b in range(1, self.n + 1)
            if a != b
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return (
            self.n == other.n
            and self.symmetric == other.symmetric
            and self._v == other._v
        )

    def __hash__(self) -> int:
        return hash((self.n, self.symmetric, tuple(map(tuple, self._v))))

    def __repr__(self) -> str:
        nnz = sum(1 for _ in self.nonzero_pairs())
        sym = ", symmetric" if self.symmetric else ""
        return f"Game(n={self.n}, {nnz} nonzero valuations{sym})"


class Partition:
    """A set of disjoint, nonempty coalitions covering agents 1..n.

    Stored in canonical form: members of each coalition ascending, coalitions
    ordered by their minimum member.  Coalition indices used elsewhere in the
    package (deviation targets, witnesses) refer to this canonical order.
    """

    __slots__ = ("coalitions", "n", "_index")

    def __init__(self, coalitions: Iterable[Iterable[int]]) -> None:
        canon = []
        for c in coalitions:
            members = tuple(sorted(c))
            if not members:
                raise ValueError("coalitions must be nonempty")
            if len(set(members)) != len(members):
                raise ValueError(f"repeated agent inside coalition {members}")
            canon.append(members)
        canon.sort()
        n = sum(len(c) for c in canon)
        index: dict[int, int] = {}
        for i, c in enumerate(canon):
            for a in c:
                if a in index:
                    raise ValueError(f"agent {a} appears in more than one coalition")
                index[a] = i
        if set(index) != set(range(1, n + 1)):
            raise ValueError("coalitions must cover exactly the agents 1..n")
        self.coalitions = tuple(canon)
        self.n = n
        self._index = index

    def coalition_of(self, agent: int) -> tuple[int, ...]:
        return self.coalitions[self._index[agent]]

    def index_of(self, agent: int) -> int:
        """Canonical index of the coalition containing ``agent``."""
        return self._index[agent]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.coalitions)

    def __iter__(self):
        return iter(self.coalitions)

    def __len__(self) -> int:
        return len(self.coalitions)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.coalitions == other.coalitions

    def __hash__(self) -> int:
        return hash(self.coalitions)

    def __repr__(self) -> str:
        inner = " | ".join(" ".join(map(str, c)) for c in self.coalitions)
        return f"Partition({inner})"


def singleton_partition(n: int) -> Partition:
    return Partition([a] for a in range(1, n + 1))


def is_feasible_partition(partition: Partition, bounds: SizeBounds) -> bool:
    """True iff every coalition size lies within ``bounds``."""
    return all(bounds.contains(len(c)) for c in partition)


def feasible_partition_exists(n: int, bounds: SizeBounds) -> bool:
    """Whether n agents can be split into coalitions within ``bounds``.

    Holds exactly when n <= floor(n / lower) * upper: with floor(n / lower)
    coalitions of minimum size there is room for everyone, and no valid
    partition can have more coalitions than that.
    """
    if n < 1:
        raise ValueError("agent count must be positive")
    return n <= (n // bounds.lower) * bounds.upper


def feasible_k_partition_exists(n: int, k: int, bounds: SizeBounds) -> bool:
    """Whether n agents can be split into exactly k coalitions within bounds.

    Holds exactly when k * lower <= n <= k * upper.
    """
    if n < 1 or k < 1:
        raise ValueError("agent count and coalition count must be positive")
    return k * bounds.lower <= n <= k * bounds.upper


def feasibility_threshold(bounds: SizeBounds) -> int:
    """Least T such that every n >= T admits a partition within ``bounds``.

    Requires lower < upper (with lower == upper, feasibility is periodic in n
    and no threshold exists).  (lower - 1) * upper / (upper - lower) is a
    certified sufficient bound, so the exact least T is found by scanning
    below it for the largest infeasible n.
    """
    lo, hi = bounds.lower, bounds.upper
    if lo >= hi:
        raise ValueError("threshold requires lower < upper")
    cap = -(-(lo - 1) * hi // (hi - lo))  # ceil of the sufficient bound
    for n in range(cap - 1, 0, -1):
        if not feasible_partition_exists(n, bounds):
            return n + 1
    return 0


def greedy_feasible_partition(agents: Iterable[int], bounds: SizeBounds) -> list[list[int]] | None:
    """Split ``agents`` into blocks within ``bounds``, or None if impossible.

    Deterministic: forms floor(n / lower) blocks of minimum size in the given
    order, then tops them up left to right with the remaining agents.
    """
    pool = list(agents)
    n = len(pool)
    if n == 0:
        return []
    if not feasible_partition_exists(n, bounds):
        return None
    count = n // bounds.lower
    blocks = [pool[i * bounds.lower : (i + 1) * bounds.lower] for i in range(count)]
    rest = pool[count * bounds.lower :]
    for block in blocks:
        while rest and len(block) < bounds.upper:
            block.append(rest.pop(0))
    assert not rest
    return blocks
