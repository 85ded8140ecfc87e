"""Single-agent deviations and verification of the eight stability concepts.

A deviation moves one agent into an existing coalition or (when the lower
bound is 1) into a fresh singleton.  Two admissibility modes exist:

* permissible -- the joined coalition must end up within the size bounds;
* feasible    -- additionally the abandoned coalition must stay within the
  bounds (or vanish, which requires it was a singleton).

Each of Nash / individual / contractual-Nash / contractual-individual
stability quantifies over one of the two modes; the feasible-mode variants
are written with a trailing ``*``.  A deviation blocks a partition when the
deviator strictly gains and the consent requirements of the concept hold:
individual-style concepts give a veto to members of the joined coalition who
would strictly lose, contractual-style concepts to members of the abandoned
coalition who would strictly lose.  An agent whose valuation of the mover is
zero never vetoes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import Game, InfeasiblePartitionError, Partition, SizeBounds, is_feasible_partition

PERMISSIBLE = "permissible"
FEASIBLE = "feasible"


class Concept(enum.Enum):
    """The four consent regimes, each in a permissible and a feasible flavor."""

    NS = "ns"
    IS = "is"
    CNS = "cns"
    CIS = "cis"
    NS_STAR = "ns*"
    IS_STAR = "is*"
    CNS_STAR = "cns*"
    CIS_STAR = "cis*"

    @property
    def base(self) -> str:
        return self.value.rstrip("*")

    @property
    def feasible_variant(self) -> bool:
        return self.value.endswith("*")

    @property
    def mode(self) -> str:
        return FEASIBLE if self.feasible_variant else PERMISSIBLE

    @property
    def joined_consent(self) -> bool:
        """Members of the joined coalition may veto (IS and CIS families)."""
        return self.base in ("is", "cis")

    @property
    def abandoned_consent(self) -> bool:
        """Members of the abandoned coalition may veto (CNS and CIS families)."""
        return self.base in ("cns", "cis")

    @classmethod
    def parse(cls, text: str) -> "Concept":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown stability concept {text!r}") from None

    def __str__(self) -> str:
        return self.base.upper() + ("*" if self.feasible_variant else "")


ALL_CONCEPTS = tuple(Concept)

# Direct implications between concepts: stability of the source implies
# stability of the destination (further ones follow by transitivity).
IMPLICATIONS: tuple[tuple[Concept, Concept], ...] = (
    (Concept.NS, Concept.IS),
    (Concept.NS, Concept.CNS),
    (Concept.IS, Concept.CIS),
    (Concept.CNS, Concept.CIS),
    (Concept.NS_STAR, Concept.IS_STAR),
    (Concept.NS_STAR, Concept.CNS_STAR),
    (Concept.IS_STAR, Concept.CIS_STAR),
    (Concept.CNS_STAR, Concept.CIS_STAR),
    (Concept.NS, Concept.NS_STAR),
    (Concept.IS, Concept.IS_STAR),
    (Concept.CNS, Concept.CNS_STAR),
    (Concept.CIS, Concept.CIS_STAR),
)


@dataclass(frozen=True)
class Deviation:
    """One agent moving to the coalition at canonical index ``target``.

    ``target`` is None for forming a new singleton coalition.
    """

    agent: int
    target: int | None

    def describe(self, partition: Partition) -> str:
        if self.target is None:
            return f"agent {self.agent} -> new singleton"
        members = partition.coalitions[self.target]
        return f"agent {self.agent} -> {{{', '.join(map(str, members))}}}"


@dataclass(frozen=True)
class StabilityReport:
    concept: Concept
    stable: bool
    witness: Deviation | None
    checked_deviations: int


def candidate_deviations(
    game: Game, partition: Partition, bounds: SizeBounds, mode: str
) -> list[Deviation]:
    """All admissible deviations from ``partition``, in canonical scan order.

    Scan order: agent id ascending, existing target coalitions by canonical
    index ascending, the new-singleton move last.  With a lower bound of 1
    the permissible and feasible lists coincide.
    """
    if mode not in (PERMISSIBLE, FEASIBLE):
        raise ValueError(f"unknown deviation mode {mode!r}")
    result = []
    for agent in range(1, partition.n + 1):
        source_idx = partition.index_of(agent)
        source_size = len(partition.coalitions[source_idx])
        if mode == FEASIBLE and source_size != 1 and source_size - 1 < bounds.lower:
            continue  # leaving would strand the abandoned coalition
        for idx, coalition in enumerate(partition.coalitions):
            if idx == source_idx:
                continue
            if len(coalition) + 1 <= bounds.upper:
                result.append(Deviation(agent, idx))
        if bounds.lower == 1 and source_size > 1:
            result.append(Deviation(agent, None))
    return result


def blocking_check(
    game: Game, partition: Partition, deviation: Deviation, concept: Concept
) -> bool:
    """Whether ``deviation`` blocks ``partition`` under ``concept``.

    True iff the deviator strictly gains and no agent holding a veto under
    the concept strictly loses.  Admissibility of the deviation for the
    concept's mode is the caller's responsibility.
    """
    agent = deviation.agent
    row = game.row(agent)
    source = partition.coalition_of(agent)
    current = sum(row[b] for b in source if b != agent)
    if deviation.target is None:
        gain = -current
        target_members: tuple[int, ...] = ()
    else:
        target_members = partition.coalitions[deviation.target]
        gain = sum(row[b] for b in target_members) - current
    if gain <= 0:
        return False
    if concept.joined_consent:
        if any(game.row(b)[agent] < 0 for b in target_members):
            return False
    if concept.abandoned_consent:
        if any(game.row(b)[agent] > 0 for b in source if b != agent):
            return False
    return True


def verify(
    game: Game, partition: Partition, bounds: SizeBounds, concept: Concept
) -> StabilityReport:
    """Check ``partition`` for stability, reporting the first blocking deviation.

    The partition must respect the bounds; stability concepts are only
    defined on bound-respecting partitions.  The witness, when present, is
    the minimum blocking deviation under the canonical scan order, so
    identical inputs always produce identical reports.
    """
    if partition.n != game.n:
        raise ValueError(f"partition covers {partition.n} agents, game has {game.n}")
    if not is_feasible_partition(partition, bounds):
        raise InfeasiblePartitionError(
            f"partition sizes {partition.sizes()} violate bounds {bounds}"
        )
    checked = 0
    for deviation in candidate_deviations(game, partition, bounds, concept.mode):
        checked += 1
        if blocking_check(game, partition, deviation, concept):
            return StabilityReport(concept, False, deviation, checked)
    return StabilityReport(concept, True, None, checked)


def apply_deviation(partition: Partition, deviation: Deviation) -> Partition:
    """The partition after performing ``deviation``."""
    agent = deviation.agent
    source_idx = partition.index_of(agent)
    if deviation.target == source_idx:
        raise ValueError("deviation target equals the agent's current coalition")
    coalitions: list[list[int]] = [list(c) for c in partition.coalitions]
    coalitions[source_idx].remove(agent)
    if deviation.target is None:
        coalitions.append([agent])
    else:
        coalitions[deviation.target].append(agent)
    return Partition(c for c in coalitions if c)
