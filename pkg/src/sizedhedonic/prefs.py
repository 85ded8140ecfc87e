"""Utility evaluation, social welfare, and agent-set selectors.

The selectors (best-k subset, friends, enemies) are the building blocks of
every constructive algorithm in the package.  All functions are pure.
"""

from __future__ import annotations

from typing import Iterable

from .model import Game, Partition


def utility(game: Game, agent: int, coalition: Iterable[int]) -> int:
    """Additive utility of ``agent`` for a coalition it belongs to.

    Sum of the agent's valuations for the other members; 0 for a singleton.
    """
    members = set(coalition)
    if agent not in members:
        raise ValueError(f"agent {agent} is not a member of {sorted(members)}")
    row = game.row(agent)
    return sum(row[b] for b in members if b != agent)


def social_welfare(game: Game, partition: Partition) -> int:
    """Sum of all agents' utilities under ``partition``."""
    total = 0
    for coalition in partition:
        for a in coalition:
            row = game.row(a)
            total += sum(row[b] for b in coalition if b != a)
    return total


def top_set(game: Game, agent: int, pool: Iterable[int], k: int) -> list[int]:
    """Up to ``k`` agents of ``pool`` (minus ``agent``) that the agent values most.

    Returns all of pool minus the agent when it has fewer than k members.
    Ties are broken toward the lowest agent id, which makes every algorithm
    in the package deterministic.  Result is sorted by id.
    """
    candidates = [b for b in set(pool) if b != agent]
    if k <= 0:
        return []
    if k >= len(candidates):
        return sorted(candidates)
    row = game.row(agent)
    candidates.sort(key=lambda b: (-row[b], b))
    return sorted(candidates[:k])


def friends(game: Game, who: int | Iterable[int], pool: Iterable[int]) -> set[int]:
    """Members of ``pool`` valued strictly positively by ``who``.

    ``who`` may be a single agent or a set of agents; for a set, the result
    is the union over its members.  The sign test is applied to individual
    valuations, never to sums.
    """
    return _signed(game, who, pool, positive=True)


def enemies(game: Game, who: int | Iterable[int], pool: Iterable[int]) -> set[int]:
    """Members of ``pool`` valued strictly negatively by ``who``."""
    return _signed(game, who, pool, positive=False)


def friends_enemies(
    game: Game, who: int | Iterable[int], pool: Iterable[int], sign: str
) -> set[int]:
    """Selector with an explicit ``sign`` of "positive" or "negative"."""
    if sign == "positive":
        return friends(game, who, pool)
    if sign == "negative":
        return enemies(game, who, pool)
    raise ValueError(f"sign must be 'positive' or 'negative', got {sign!r}")


def _signed(game, who, pool, positive: bool) -> set[int]:
    sources = [who] if isinstance(who, int) else list(who)
    result: set[int] = set()
    for b in pool:
        for a in sources:
            if a == b:
                continue
            v = game.row(a)[b]
            if (v > 0) if positive else (v < 0):
                result.add(b)
                break
    return result
