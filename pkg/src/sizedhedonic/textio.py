"""Line-oriented text formats for games, partitions, and source instances.

Formats (blank lines are ignored everywhere; ids are 1-based):

* game:       ``ashg <n> [symmetric]`` then ``v <i> <j> <w>`` per valuation;
              unlisted pairs are 0; under ``symmetric`` each line sets both
              directions and an unordered pair may be given at most once.
* partition:  one coalition per line, members whitespace-separated.
* x3c:        ``x3c <ground size>`` then ``set <a> <b> <c>`` per subset.
* mmm:        ``mmm <n> <k>`` then ``edge <i> <j>`` with i in 1..n and
              j in n+1..2n.
* cover:      ``cover <s1> <s2> ...`` (1-based set indices; lines accumulate).
* matching:   ``match <i> <j>`` per matched edge.

``parse`` / ``serialize`` round-trip on canonical form.
"""

from __future__ import annotations

import os
from pathlib import Path

from .model import Game, Partition
from .reductions import MMMInstance, X3CInstance


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield number, line.split()


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(number, f"{what} must be an integer, got {token!r}") from None


def parse_game(text: str) -> Game:
    rows = list(_lines(text))
    if not rows:
        raise ParseError(1, "empty input, expected an 'ashg' header")
    number, header = rows[0]
    if header[0] != "ashg" or len(header) not in (2, 3):
        raise ParseError(number, "expected header 'ashg <n> [symmetric]'")
    n = _int(header[1], number, "agent count")
    if n < 0:
        raise ParseError(number, "agent count must be nonnegative")
    symmetric = False
    if len(header) == 3:
        if header[2] != "symmetric":
            raise ParseError(number, f"unknown header flag {header[2]!r}")
        symmetric = True
    vals: dict[tuple[int, int], int] = {}
    for number, tokens in rows[1:]:
        if tokens[0] != "v" or len(tokens) != 4:
            raise ParseError(number, "expected 'v <i> <j> <w>'")
        i = _int(tokens[1], number, "agent id")
        j = _int(tokens[2], number, "agent id")
        w = _int(tokens[3], number, "valuation")
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(number, f"agent ids must lie in 1..{n}")
        if i == j:
            raise ParseError(number, "an agent may not value itself")
        if (i, j) in vals:
            if symmetric and vals[(i, j)] != w:
                raise ParseError(
                    number,
                    f"symmetry conflict: v_{i}({j}) already set to {vals[(i, j)]}",
                )
            raise ParseError(number, f"duplicate valuation for pair ({i}, {j})")
        vals[(i, j)] = w
        if symmetric:
            vals[(j, i)] = w
    return Game(n, vals, symmetric=symmetric)


def serialize_game(game: Game) -> str:
    lines = [f"ashg {game.n}" + (" symmetric" if game.symmetric else "")]
    for a, b, w in game.nonzero_pairs():
        if game.symmetric and a > b:
            continue
        lines.append(f"v {a} {b} {w}")
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> Partition:
    coalitions = []
    for number, tokens in _lines(text):
        coalitions.append([_int(tok, number, "agent id") for tok in tokens])
    try:
        return Partition(coalitions)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def serialize_partition(partition: Partition) -> str:
    return "\n".join(" ".join(map(str, c)) for c in partition.coalitions) + "\n"


def parse_x3c(text: str) -> X3CInstance:
    rows = list(_lines(text))
    if not rows:
        raise ParseError(1, "empty input, expected an 'x3c' header")
    number, header = rows[0]
    if header[0] != "x3c" or len(header) != 2:
        raise ParseError(number, "expected header 'x3c <ground size>'")
    ground = _int(header[1], number, "ground size")
    sets = []
    for number, tokens in rows[1:]:
        if tokens[0] != "set" or len(tokens) != 4:
            raise ParseError(number, "expected 'set <a> <b> <c>'")
        sets.append(tuple(_int(tok, number, "element") for tok in tokens[1:]))
    try:
        return X3CInstance(ground, tuple(sets))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def serialize_x3c(instance: X3CInstance) -> str:
    lines = [f"x3c {instance.ground_size}"]
    lines += [f"set {a} {b} {c}" for a, b, c in instance.sets]
    return "\n".join(lines) + "\n"


def parse_mmm(text: str) -> MMMInstance:
    rows = list(_lines(text))
    if not rows:
        raise ParseError(1, "empty input, expected an 'mmm' header")
    number, header = rows[0]
    if header[0] != "mmm" or len(header) != 3:
        raise ParseError(number, "expected header 'mmm <n> <k>'")
    n = _int(header[1], number, "side size")
    k = _int(header[2], number, "budget")
    edges = []
    for number, tokens in rows[1:]:
        if tokens[0] != "edge" or len(tokens) != 3:
            raise ParseError(number, "expected 'edge <i> <j>'")
        edges.append((_int(tokens[1], number, "vertex"), _int(tokens[2], number, "vertex")))
    try:
        return MMMInstance(n, k, tuple(edges))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def serialize_mmm(instance: MMMInstance) -> str:
    lines = [f"mmm {instance.n} {instance.k}"]
    lines += [f"edge {a} {b}" for a, b in instance.edges]
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> list[int]:
    indices: list[int] = []
    for number, tokens in _lines(text):
        if tokens[0] != "cover":
            raise ParseError(number, "expected 'cover <s1> <s2> ...'")
        indices += [_int(tok, number, "set index") for tok in tokens[1:]]
    return indices


def serialize_cover(indices) -> str:
    return "cover " + " ".join(map(str, indices)) + "\n"


def parse_matching(text: str) -> list[tuple[int, int]]:
    edges = []
    for number, tokens in _lines(text):
        if tokens[0] != "match" or len(tokens) != 3:
            raise ParseError(number, "expected 'match <i> <j>'")
        edges.append((_int(tokens[1], number, "vertex"), _int(tokens[2], number, "vertex")))
    return edges


def serialize_matching(edges) -> str:
    return "\n".join(f"match {a} {b}" for a, b in edges) + "\n"


_PARSERS = {
    "game": parse_game,
    "partition": parse_partition,
    "x3c": parse_x3c,
    "mmm": parse_mmm,
    "cover": parse_cover,
    "matching": parse_matching,
}


def parse(source: str | os.PathLike, kind: str):
    """Parse ``source`` (text, or a path-like pointing at a file) as ``kind``."""
    if kind not in _PARSERS:
        raise ValueError(f"unknown kind {kind!r}; know {sorted(_PARSERS)}")
    text = Path(source).read_text() if isinstance(source, os.PathLike) else source
    return _PARSERS[kind](text)
