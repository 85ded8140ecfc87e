"""Command-line surface tying the library together.

Exit codes: 0 found / verified / stable; 1 not stable or nothing exists;
2 infeasible bounds or no applicable algorithm; 3 input error.  Results
(partition files, witness deviations) go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algorithms import (
    NotSymmetricError,
    cis_star_nonneg,
    cis_star_nonzero,
    cis_upper,
    cns_pairs,
    symmetric_dynamics,
)
from .exact import BudgetExceededError, EnumerationBudget, exists_stable, max_welfare_partition
from .instances import make_instance
from .model import (
    Game,
    InfeasiblePartitionError,
    Partition,
    SizeBounds,
    feasible_partition_exists,
    greedy_feasible_partition,
)
from .prefs import social_welfare
from .reductions import mmm_to_ns_is, witness_partition, x3c_to_cns, x3c_to_ns_bounded
from .stability import Concept, Deviation, verify
from .textio import (
    ParseError,
    parse_cover,
    parse_game,
    parse_matching,
    parse_mmm,
    parse_partition,
    parse_x3c,
    serialize_game,
    serialize_partition,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 3
        raise _UsageError(message)


def _bounds(text: str) -> SizeBounds:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise _UsageError(f"bounds must look like '2:3', got {text!r}")
    try:
        return SizeBounds(int(lo), int(hi))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _concept(text: str) -> Concept:
    try:
        return Concept.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None


def _load_game(path: str) -> Game:
    return parse_game(_read(path))


def _load_partition(path: str, game: Game) -> Partition:
    partition = parse_partition(_read(path))
    if partition.n != game.n:
        raise _UsageError(
            f"partition covers {partition.n} agents but the game has {game.n}"
        )
    return partition


def _print_deviation(deviation: Deviation, partition: Partition) -> None:
    if deviation.target is None:
        print(f"deviation {deviation.agent} new")
    else:
        members = " ".join(map(str, partition.coalitions[deviation.target]))
        print(f"deviation {deviation.agent} join {members}")


def _emit_partition(partition: Partition) -> None:
    sys.stdout.write(serialize_partition(partition))


def _cmd_verify(args) -> int:
    game = _load_game(args.game)
    partition = _load_partition(args.partition, game)
    report = verify(game, partition, args.bounds, args.concept)
    if report.stable:
        print("stable")
        return 0
    print("unstable")
    _print_deviation(report.witness, partition)
    return 1


def _no_algorithm(message: str) -> int:
    print(message, file=sys.stderr)
    return 2


def _cmd_solve(args) -> int:
    game = _load_game(args.game)
    bounds, concept = args.bounds, args.concept
    lo, hi = bounds.lower, bounds.upper
    if args.k is not None and not (concept.base == "cis" and concept.feasible_variant):
        raise _UsageError("--k only applies to --concept cis*")
    partition = None
    if concept.base == "cis" and not concept.feasible_variant:
        if lo != 1 or hi < 2:
            return _no_algorithm(f"no algorithm for CIS with bounds {bounds}")
        partition, _ = cis_upper(game, hi)
    elif concept.base == "cis" and concept.feasible_variant:
        if lo == 1:
            # permissible and feasible coincide; the leader algorithm applies
            # but cannot target a coalition count
            if args.k is not None:
                return _no_algorithm(
                    "no algorithm targets a coalition count with a lower bound of 1"
                )
            if hi < 2:
                return _no_algorithm(f"no algorithm for CIS* with bounds {bounds}")
            partition, _ = cis_upper(game, hi)
        elif game.is_nonzero() or game.is_nonnegative():
            k = args.k if args.k is not None else game.n // lo
            if k < 1:
                return _no_algorithm(f"no partition of {game.n} agents within {bounds}")
            solver = cis_star_nonzero if game.is_nonzero() else cis_star_nonneg
            partition = solver(game, bounds, k)
            if partition is None:
                return _no_algorithm(
                    f"no partition of {game.n} agents into {k} coalitions within {bounds}"
                )
        else:
            return _no_algorithm(
                "CIS* solving with a nontrivial lower bound needs nonzero or "
                "nonnegative valuations; use 'exists --exact' otherwise"
            )
    elif concept.base == "cns":
        if (lo, hi) == (1, 2):
            partition = cns_pairs(game)
        else:
            return _no_algorithm(
                f"no algorithm for {concept} with bounds {bounds}; use 'exists --exact'"
            )
    elif concept is Concept.NS_STAR:
        if not (game.symmetric or game.has_symmetric_table()):
            return _no_algorithm("NS* solving needs symmetric valuations")
        blocks = greedy_feasible_partition(game.agents, bounds)
        if blocks is None:
            return _no_algorithm(f"no partition of {game.n} agents within {bounds}")
        partition, _ = symmetric_dynamics(game, bounds, Partition(blocks))
    else:
        return _no_algorithm(
            f"no algorithm for {concept} with bounds {bounds}; use 'exists --exact'"
        )
    report = verify(game, partition, bounds, concept)
    if not report.stable:  # pragma: no cover - guards against solver bugs
        raise RuntimeError(f"solver produced a partition rejected for {concept}")
    _emit_partition(partition)
    return 0


def _cmd_exists(args) -> int:
    game = _load_game(args.game)
    if game.n < 1 or not feasible_partition_exists(game.n, args.bounds):
        print(f"no partition of {game.n} agents within {args.bounds}", file=sys.stderr)
        return 2
    budget = EnumerationBudget(max_agents=args.max_n)
    partition = exists_stable(game, args.bounds, args.concept, budget)
    if partition is None:
        print(f"no {args.concept} partition exists within {args.bounds}", file=sys.stderr)
        return 1
    _emit_partition(partition)
    return 0


def _cmd_maxwelfare(args) -> int:
    game = _load_game(args.game)
    if game.n < 1 or not feasible_partition_exists(game.n, args.bounds):
        print(f"no partition of {game.n} agents within {args.bounds}", file=sys.stderr)
        return 2
    budget = EnumerationBudget(max_agents=args.max_n)
    partition = max_welfare_partition(game, args.bounds, budget)
    print(f"welfare: {social_welfare(game, partition)}", file=sys.stderr)
    _emit_partition(partition)
    return 0


def _cmd_gen(args) -> int:
    params = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise _UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise _UsageError(f"parameter {key} must be an integer") from None
    try:
        game = make_instance(args.family, **params)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    sys.stdout.write(serialize_game(game))
    return 0


def _cmd_reduce(args) -> int:
    if args.theorem in (5, 9) and args.source != "x3c":
        raise _UsageError(f"theorem {args.theorem} reduces from x3c instances")
    if args.theorem == 6 and args.source != "mmm":
        raise _UsageError("theorem 6 reduces from mmm instances")
    text = _read(args.instance)
    if args.theorem == 5:
        reduced = x3c_to_cns(parse_x3c(text), args.mu if args.mu else 3)
    elif args.theorem == 6:
        reduced = mmm_to_ns_is(parse_mmm(text), args.mu if args.mu else 2)
    else:
        if args.bounds is None:
            raise _UsageError("theorem 9 needs --bounds")
        reduced = x3c_to_ns_bounded(parse_x3c(text), args.bounds)
    if args.witness is None:
        sys.stdout.write(serialize_game(reduced.game))
        return 0
    cert_text = _read(args.witness)
    certificate = parse_matching(cert_text) if args.theorem == 6 else parse_cover(cert_text)
    _emit_partition(witness_partition(reduced, certificate))
    return 0


def _cmd_dynamics(args) -> int:
    game = _load_game(args.game)
    if not (game.symmetric or game.has_symmetric_table()):
        return _no_algorithm("dynamics need symmetric valuations")
    if args.init is not None:
        init = _load_partition(args.init, game)
    else:
        blocks = greedy_feasible_partition(game.agents, args.bounds)
        if blocks is None:
            return _no_algorithm(f"no partition of {game.n} agents within {args.bounds}")
        init = Partition(blocks)
    final, steps = symmetric_dynamics(game, args.bounds, init)
    print(f"steps: {steps}", file=sys.stderr)
    _emit_partition(final)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="sizedhedonic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, concept=True):
        if concept:
            p.add_argument("--concept", type=_concept, required=True,
                           help="ns, is, cns, cis, optionally with a * suffix")
        p.add_argument("--bounds", type=_bounds, required=True, metavar="L:U")

    p = sub.add_parser("solve", help="construct a stable partition")
    common(p)
    p.add_argument("--k", type=int, help="coalition count (cis* only)")
    p.add_argument("game")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("verify", help="check a partition for stability")
    common(p)
    p.add_argument("game")
    p.add_argument("partition")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("exists", help="exhaustively decide whether a stable partition exists")
    common(p)
    p.add_argument("--exact", action="store_true", required=True,
                   help="acknowledge the exhaustive (exponential) search")
    p.add_argument("--max-n", type=int, default=12, help="agent budget (default 12)")
    p.add_argument("game")
    p.set_defaults(handler=_cmd_exists)

    p = sub.add_parser("maxwelfare", help="maximize social welfare by enumeration")
    common(p, concept=False)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("game")
    p.set_defaults(handler=_cmd_maxwelfare)

    p = sub.add_parser("gen", help="emit a named example game")
    p.add_argument("--family", required=True)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VAL")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("reduce", help="build a hardness-reduction game or its witness")
    p.add_argument("--from", dest="source", choices=("x3c", "mmm"), required=True)
    p.add_argument("--theorem", type=int, choices=(5, 6, 9), required=True,
                   help="5: x3c->CNS (upper bound); 6: mmm->NS/IS; 9: x3c->NS (both bounds)")
    p.add_argument("--mu", type=int, help="upper bound (theorems 5 and 6)")
    p.add_argument("--bounds", type=_bounds, metavar="L:U", help="bounds (theorem 9)")
    p.add_argument("--witness", metavar="CERTIFICATE",
                   help="emit the stable partition for this certificate instead of the game")
    p.add_argument("instance")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("dynamics", help="run feasible Nash dynamics on a symmetric game")
    common(p, concept=False)
    p.add_argument("--init", help="initial partition file (default: greedy feasible)")
    p.add_argument("game")
    p.set_defaults(handler=_cmd_dynamics)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InfeasiblePartitionError, NotSymmetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
