"""Constructive polynomial-time algorithms for stable size-bounded partitions.

* ``cis_upper``: contractually individually stable partitions under an upper
  bound only, via leaders who either found a coalition with their best
  friends or join an existing one, bringing approved friends along.
* ``cns_pairs``: contractually Nash-stable partitions of size at most 2, via
  greedy best-partner pairing.
* ``cis_star_nonzero`` / ``cis_star_nonneg``: feasible-CIS partitions into a
  prescribed number of coalitions for nonzero / nonnegative valuations.
* ``symmetric_dynamics``: feasible Nash dynamics on symmetric games, a
  potential method driven by social welfare.
* ``aziz_reference``: the classic unconstrained CIS construction from the
  earlier literature, kept as a reference foil; it is known to miss CIS on
  some instances, which the leader algorithms here repair.

All algorithms break ties toward the lowest agent id, so runs are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .model import (
    Game,
    InfeasiblePartitionError,
    Partition,
    SizeBounds,
    is_feasible_partition,
)
from .prefs import enemies, friends, top_set
from .stability import Concept, Deviation, apply_deviation, verify


class NotSymmetricError(ValueError):
    """The welfare-dynamics solver only terminates on symmetric games."""


@dataclass(frozen=True)
class TraceEntry:
    """One leader decision: the coalition acted on (1-based creation index)."""

    agent: int
    action: str  # "created" or "joined"
    coalition: int
    helpers: tuple[int, ...]


@dataclass(frozen=True)
class LeaderTrace:
    entries: tuple[TraceEntry, ...]

    def __iter__(self) -> Iterator[TraceEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def cis_upper(game: Game, upper: int) -> tuple[Partition, LeaderTrace]:
    """A contractually individually stable partition with coalitions of size <= upper.

    Leaders are picked lowest-id first.  A leader compares founding a new
    coalition from its best available friends against joining each existing
    coalition together with the best friends approved by that coalition's
    decision makers, and takes the strictly best option (ties favor founding,
    then the earlier coalition).  Joining and brought-along friends are both
    barred from coalitions whose decision makers value them negatively; the
    mover becomes a decision maker of the joined coalition.

    Running with ``upper = n`` computes a CIS partition of the unconstrained
    game.  Returns the partition and the log of leader decisions.
    """
    if upper < 2:
        raise ValueError("upper bound must be at least 2")
    available: set[int] = set(game.agents)
    coalitions: list[list[int]] = []
    deciders: list[set[int]] = []
    entries: list[TraceEntry] = []
    while available:
        a = min(available)
        row = game.row(a)
        liked = friends(game, a, available)
        own_helpers = top_set(game, a, liked, upper - 1)
        best = sum(row[b] for b in own_helpers)
        target = None
        target_helpers = own_helpers
        for idx, members in enumerate(coalitions):
            if len(members) + 1 > upper:
                continue
            if any(game.row(d)[a] < 0 for d in deciders[idx]):
                continue  # a decision maker vetoes the mover itself
            vetoed = enemies(game, deciders[idx], available)
            pool = [b for b in liked if b not in vetoed]
            helpers = top_set(game, a, pool, upper - len(members) - 1)
            gain = sum(row[b] for b in members) + sum(row[b] for b in helpers)
            if gain > best:
                best, target, target_helpers = gain, idx, helpers
        if target is None:
            coalitions.append([a, *own_helpers])
            deciders.append({a})
            entries.append(TraceEntry(a, "created", len(coalitions), tuple(own_helpers)))
            available.difference_update(coalitions[-1])
        else:
            coalitions[target].extend([a, *target_helpers])
            deciders[target].add(a)
            entries.append(TraceEntry(a, "joined", target + 1, tuple(target_helpers)))
            available.difference_update({a, *target_helpers})
    return Partition(coalitions), LeaderTrace(tuple(entries))


def aziz_reference(game: Game) -> Partition:
    """The earlier leader-based CIS construction, without size bounds.

    A leader founds a coalition with all its available friends unless joining
    an existing coalition (counting only that coalition's current members)
    is strictly better and harms nobody there; after a join, latecomers that
    benefit some member and harm none are absorbed.  Kept as a reference
    foil: because a joining leader ignores the friends it could bring along,
    the output is not always CIS.
    """
    available: set[int] = set(game.agents)
    coalitions: list[list[int]] = []
    while available:
        a = min(available)
        row = game.row(a)
        liked = sorted(friends(game, a, available))
        best = sum(row[b] for b in liked)
        target = None
        for idx, members in enumerate(coalitions):
            if any(game.row(m)[a] < 0 for m in members):
                continue
            gain = sum(row[b] for b in members)
            if gain > best:
                best, target = gain, idx
        if target is None:
            coalitions.append([a, *liked])
            available.difference_update(coalitions[-1])
        else:
            members = coalitions[target]
            members.append(a)
            available.discard(a)
            absorbed = True
            while absorbed:
                absorbed = False
                for b in sorted(available):
                    if any(game.row(m)[b] > 0 for m in members) and all(
                        game.row(m)[b] >= 0 for m in members
                    ):
                        members.append(b)
                        available.discard(b)
                        absorbed = True
                        break
    return Partition(coalitions)


def cns_pairs(game: Game) -> Partition:
    """A contractually Nash-stable partition into coalitions of size <= 2.

    Agents are scanned in id order; a still-available agent with an available
    strictly-positive partner is paired with the best such partner (ties to
    the lowest id).  Everyone left over stays alone.
    """
    available: set[int] = set(game.agents)
    pairs: list[list[int]] = []
    for a in game.agents:
        if a not in available:
            continue
        row = game.row(a)
        best = None
        for b in sorted(available):
            if b != a and row[b] > 0 and (best is None or row[b] > row[best]):
                best = b
        if best is not None:
            pairs.append([a, best])
            available.difference_update((a, best))
    pairs.extend([a] for a in sorted(available))
    return Partition(pairs)


def _k_partition_possible(n: int, k: int, bounds: SizeBounds) -> bool:
    return k * bounds.lower <= n <= k * bounds.upper


def cis_star_nonzero(game: Game, bounds: SizeBounds, k: int) -> Partition | None:
    """Feasible-CIS partition into k coalitions for nonzero valuations.

    None when no bound-respecting partition into k coalitions exists.
    Phase I founds the k coalitions: each leader (lowest available id) takes
    the minimum-size coalition it values most, then up to min(upper - lower,
    x) additional friends, where x tracks how many agents may still go to
    oversized coalitions.  Phase II tops coalitions up in inverse creation
    order with the lowest-id leftovers, so only the latest leaders ever
    absorb their enemies.

    Requires a lower bound of at least 2: the guarantee leans on the fact
    that a minimum-size coalition cannot feasibly be abandoned.  With a
    lower bound of 1 a stable partition into exactly k coalitions may not
    exist at all (two mutual friends forced into n singletons), and the
    leader algorithm for upper-bounded games covers that regime without a
    coalition-count target.
    """
    if k < 1:
        raise ValueError("coalition count must be positive")
    if bounds.lower < 2:
        raise ValueError("requires a lower bound of at least 2")
    if not game.is_nonzero():
        raise ValueError("requires nonzero valuations between all agent pairs")
    n = game.n
    if not _k_partition_possible(n, k, bounds):
        return None
    available: set[int] = set(game.agents)
    x = n - bounds.lower * k
    coalitions: list[list[int]] = []
    for _ in range(k):
        a = min(available)
        members = [a, *top_set(game, a, available, bounds.lower - 1)]
        liked = friends(game, a, available.difference(members))
        members += top_set(game, a, liked, min(bounds.upper - bounds.lower, x))
        coalitions.append(members)
        available.difference_update(members)
        x -= max(0, len(members) - bounds.lower)
    rest = sorted(available)
    for members in reversed(coalitions):
        while rest and len(members) < bounds.upper:
            members.append(rest.pop(0))
    assert not rest, "k-partition capacity check guarantees room for everyone"
    return Partition(coalitions)


def cis_star_nonneg(game: Game, bounds: SizeBounds, k: int) -> Partition | None:
    """Feasible-CIS partition into k coalitions for nonnegative valuations.

    None when no bound-respecting partition into k coalitions exists.  Each
    leader (lowest available id) joins the coalition maximizing its utility
    together with its best friends, subject to each coalition's admission
    budget r = min(x + max(0, lower - size), upper - size) which reserves
    room to bring every coalition up to the lower bound.  When no join
    strictly beats utility 0, the leader enters the first coalition that can
    still admit anyone, alone.

    Requires a lower bound of at least 2, for the same reason as the
    nonzero-valuations variant.
    """
    if k < 1:
        raise ValueError("coalition count must be positive")
    if bounds.lower < 2:
        raise ValueError("requires a lower bound of at least 2")
    if not game.is_nonnegative():
        raise ValueError("requires nonnegative valuations between all agent pairs")
    n = game.n
    if not _k_partition_possible(n, k, bounds):
        return None
    lo, hi = bounds.lower, bounds.upper
    available: set[int] = set(game.agents)
    coalitions: list[list[int]] = [[] for _ in range(k)]
    x = n - lo * k
    while available:
        a = min(available)
        row = game.row(a)
        liked = friends(game, a, available)
        best, target, helpers = 0, None, []
        for i, members in enumerate(coalitions):
            r = min(x + max(0, lo - len(members)), hi - len(members))
            if r < 1:
                continue
            cand = top_set(game, a, liked, r - 1)
            gain = sum(row[b] for b in members) + sum(row[b] for b in cand)
            if gain > best:
                best, target, helpers = gain, i, cand
        if target is None:
            for i, members in enumerate(coalitions):
                if min(x + max(0, lo - len(members)), hi - len(members)) >= 1:
                    target, helpers = i, []
                    break
            assert target is not None, "size deficits plus x always cover the pool"
        members = coalitions[target]
        x -= max(0, 1 + len(helpers) - max(0, lo - len(members)))
        members.append(a)
        members.extend(helpers)
        available.difference_update((a, *helpers))
    return Partition(coalitions)


def dynamics_steps(
    game: Game, bounds: SizeBounds, partition: Partition
) -> Iterator[tuple[Deviation, int, Partition]]:
    """Repeatedly apply the first feasible Nash deviation in scan order.

    Yields (deviation, deviator's utility gain, resulting partition) per
    step and stops at a fixed point.  Termination is only guaranteed for
    symmetric games, where every step raises social welfare.
    """
    while True:
        report = verify(game, partition, bounds, Concept.NS_STAR)
        if report.stable:
            return
        deviation = report.witness
        row = game.row(deviation.agent)
        before = sum(
            row[b] for b in partition.coalition_of(deviation.agent) if b != deviation.agent
        )
        after = 0
        if deviation.target is not None:
            after = sum(row[b] for b in partition.coalitions[deviation.target])
        partition = apply_deviation(partition, deviation)
        yield deviation, after - before, partition


def symmetric_dynamics(
    game: Game, bounds: SizeBounds, init: Partition
) -> tuple[Partition, int]:
    """Run feasible Nash dynamics on a symmetric game to a stable point.

    Each step strictly increases social welfare by twice the deviator's
    gain, and welfare is an integer bounded above, so the dynamics reach a
    partition with no feasible Nash deviation.  Returns it with the step
    count.
    """
    if not (game.symmetric or game.has_symmetric_table()):
        raise NotSymmetricError("welfare dynamics require symmetric valuations")
    if init.n != game.n:
        raise ValueError("initial partition does not cover the game's agents")
    if not is_feasible_partition(init, bounds):
        raise InfeasiblePartitionError("initial partition violates the size bounds")
    final, steps = init, 0
    for _, _, partition in dynamics_steps(game, bounds, init):
        final, steps = partition, steps + 1
    return final, steps
