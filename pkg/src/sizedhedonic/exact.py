"""Exhaustive enumeration of size-bounded partitions and brute-force oracles.

The enumeration is canonical and duplicate-free: the lowest unassigned agent
always leads the next coalition, and its candidate coalitions are tried in
lexicographic order of their member tuples, so the stream of partitions is
strictly increasing under the canonical key.  Branches whose residual agent
count cannot be partitioned within the bounds are pruned arithmetically.

``exists_stable`` additionally prunes branches in which two already-completed
coalitions induce a blocking deviation; such a deviation survives in every
completion of the branch, so the pruning is exact and the first partition
found is the same one a filtered full enumeration would report.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Game, Partition, SizeBounds, feasible_partition_exists
from .stability import Concept, verify


class BudgetExceededError(RuntimeError):
    """An enumeration outgrew its configured budget."""


@dataclass(frozen=True)
class EnumerationBudget:
    """Desk-scale guard rails for the exponential oracles.

    ``max_partitions`` caps the number of enumeration steps (partitions
    yielded, or search nodes visited by ``exists_stable``).  When
    ``abort_on_exceed`` is unset the stream simply ends at the cap instead of
    raising, which makes verdicts past the cap unreliable; the default is to
    abort.
    """

    max_agents: int = 12
    max_partitions: int = 10_000_000
    abort_on_exceed: bool = True

    def __post_init__(self) -> None:
        if self.max_agents < 1:
            raise ValueError("max_agents must be positive")


DEFAULT_BUDGET = EnumerationBudget()


class _Counter:
    __slots__ = ("steps", "budget")

    def __init__(self, budget: EnumerationBudget) -> None:
        self.steps = 0
        self.budget = budget

    def tick(self) -> bool:
        """Account one step; False means the quiet cap was reached."""
        self.steps += 1
        if self.steps > self.budget.max_partitions:
            if self.budget.abort_on_exceed:
                raise BudgetExceededError(
                    f"enumeration exceeded {self.budget.max_partitions} steps"
                )
            return False
        return True


def _coalition_candidates(leader: int, rest: list[int], bounds: SizeBounds):
    """Candidate coalitions for ``leader``, in lexicographic member order."""
    lo, hi = bounds.lower, bounds.upper
    if lo <= 1:
        yield (leader,)
    combo = [leader]

    def extend(start: int):
        for i in range(start, len(rest)):
            if len(combo) + (len(rest) - i) < lo:
                break  # even taking everything left cannot reach the lower bound
            combo.append(rest[i])
            if len(combo) >= lo:
                yield tuple(combo)
            if len(combo) < hi:
                yield from extend(i + 1)
            combo.pop()

    if hi >= 2:
        yield from extend(0)


def _partitions(avail: list[int], bounds: SizeBounds):
    if not avail:
        yield ()
        return
    leader, rest = avail[0], avail[1:]
    for cand in _coalition_candidates(leader, rest, bounds):
        remaining_count = len(avail) - len(cand)
        if remaining_count and not feasible_partition_exists(remaining_count, bounds):
            continue
        chosen = set(cand)
        remaining = [a for a in rest if a not in chosen]
        for tail in _partitions(remaining, bounds):
            yield (cand,) + tail


def enumerate_partitions(
    n: int, bounds: SizeBounds, budget: EnumerationBudget | None = None
):
    """Yield every bound-respecting partition of agents 1..n exactly once."""
    budget = budget or DEFAULT_BUDGET
    if n > budget.max_agents:
        raise BudgetExceededError(f"n={n} exceeds budget.max_agents={budget.max_agents}")
    counter = _Counter(budget)

    def stream():
        for raw in _partitions(list(range(1, n + 1)), bounds):
            if not counter.tick():
                return
            yield Partition(raw)

    return stream()


def _utilities(game: Game, members: tuple[int, ...]) -> dict[int, int]:
    out = {}
    for a in members:
        row = game.row(a)
        out[a] = sum(row[b] for b in members if b != a)
    return out


def _blocks_into(
    game: Game,
    bounds: SizeBounds,
    concept: Concept,
    source: tuple[int, ...],
    source_utils: dict[int, int],
    target: tuple[int, ...],
) -> bool:
    """Whether some member of ``source`` has a blocking deviation into ``target``."""
    if len(target) + 1 > bounds.upper:
        return False
    if concept.feasible_variant and len(source) != 1 and len(source) - 1 < bounds.lower:
        return False
    for a in source:
        row = game.row(a)
        gain = sum(row[b] for b in target) - source_utils[a]
        if gain <= 0:
            continue
        if concept.joined_consent and any(game.row(b)[a] < 0 for b in target):
            continue
        if concept.abandoned_consent and any(
            game.row(b)[a] > 0 for b in source if b != a
        ):
            continue
        return True
    return False


def _blocks_new_singleton(
    game: Game,
    bounds: SizeBounds,
    concept: Concept,
    source: tuple[int, ...],
    source_utils: dict[int, int],
) -> bool:
    if bounds.lower != 1 or len(source) == 1:
        return False
    for a in source:
        if source_utils[a] >= 0:
            continue
        if concept.abandoned_consent and any(
            game.row(b)[a] > 0 for b in source if b != a
        ):
            continue
        return True
    return False


def exists_stable(
    game: Game,
    bounds: SizeBounds,
    concept: Concept,
    budget: EnumerationBudget | None = None,
) -> Partition | None:
    """First stable partition in canonical enumeration order, or None.

    Equivalent to filtering ``enumerate_partitions`` through ``verify`` but
    prunes branches as soon as two completed coalitions block each other,
    which keeps structured instances with dozens of agents tractable.
    """
    budget = budget or DEFAULT_BUDGET
    if game.n > budget.max_agents:
        raise BudgetExceededError(
            f"n={game.n} exceeds budget.max_agents={budget.max_agents}"
        )
    counter = _Counter(budget)
    done: list[tuple[tuple[int, ...], dict[int, int]]] = []

    def search(avail: list[int]) -> tuple[tuple[int, ...], ...] | None:
        if not avail:
            return tuple(c for c, _ in done)
        leader, rest = avail[0], avail[1:]
        for cand in _coalition_candidates(leader, rest, bounds):
            if not counter.tick():
                return None
            remaining_count = len(avail) - len(cand)
            if remaining_count and not feasible_partition_exists(remaining_count, bounds):
                continue
            utils = _utilities(game, cand)
            if _blocks_new_singleton(game, bounds, concept, cand, utils):
                continue
            conflict = False
            for other, other_utils in done:
                if _blocks_into(game, bounds, concept, cand, utils, other) or _blocks_into(
                    game, bounds, concept, other, other_utils, cand
                ):
                    conflict = True
                    break
            if conflict:
                continue
            chosen = set(cand)
            done.append((cand, utils))
            found = search([a for a in rest if a not in chosen])
            done.pop()
            if found is not None:
                return found
        return None

    raw = search(list(range(1, game.n + 1)))
    if raw is None:
        return None
    partition = Partition(raw)
    report = verify(game, partition, bounds, concept)
    if not report.stable:  # pragma: no cover - incremental checks cover all pairs
        raise RuntimeError("search returned a partition the verifier rejects")
    return partition


def max_welfare_partition(
    game: Game, bounds: SizeBounds, budget: EnumerationBudget | None = None
) -> Partition | None:
    """A bound-respecting partition of maximum social welfare, or None.

    Ties are resolved toward the first partition in canonical order.  For
    symmetric games the result is stable for feasible Nash deviations; for
    arbitrary games it is stable for feasible contractual-individual
    deviations, because any such deviation strictly raises welfare.
    """
    best: Partition | None = None
    best_welfare = None
    for partition in enumerate_partitions(game.n, bounds, budget):
        welfare = 0
        for coalition in partition:
            for a in coalition:
                row = game.row(a)
                welfare += sum(row[b] for b in coalition if b != a)
        if best_welfare is None or welfare > best_welfare:
            best, best_welfare = partition, welfare
    return best
