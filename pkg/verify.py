# -*- coding: utf-8 -*-

"""
Command-line entry script of the verification engine.

Subcommands:
    - classify: classify a relation literal or every column of a profile file.
    - check: run one axiom checker or the full report on an SWF.
    - witness: construct a cycle witness or a contradictory pair.
    - enumerate: sweep candidate SWFs against the brute-force oracle.
    - simulate: estimate the Condorcet cycle frequency.

Exit status is 0 on success, 1 on a negative verdict and 2 on usage, input or
size errors.
"""

__author__ = "Mir Sazzat Hossain"

import argparse
import logging
import os
import re
import sys
from typing import List, Optional, Tuple

from models.axioms import AXIOMS, check_unrestricted_domain, full_report
from models.preferences import (
    PreferenceRelation,
    classify,
    parse_relation,
    render_chain,
)
from models.search import (
    CandidateSpace,
    Culture,
    SearchMode,
    exact_condorcet_fraction,
    monte_carlo_condorcet,
    pruned_ud_search,
    sweep_candidates,
    verify_lemmas_exhaustive,
)
from models.witness import (
    arrow_witness,
    contradictory_pair,
    neutrality_witness,
    pareto_witness,
    strictness_witness,
)
from utils.config import load_config
from utils.data import DataCenter
from utils.errors import ArrovianError, PreconditionFailed, WitnessNotFound
from utils.tools import emit, render_json, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

THEOREMS = {
    "strictness": strictness_witness,
    "neutrality": neutrality_witness,
    "arrow": arrow_witness,
    "pareto": pareto_witness,
}

_LITERAL = re.compile(r"^[0e1]+$")


class UsageError(Exception):
    """Raised for option combinations argparse cannot express."""


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subparser per subcommand.

    :return: the parser
    :rtype: argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=str,
        default="arrovian",
        help="The config to use.",
    )
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="Report format.",
    )
    common.add_argument(
        "--out",
        type=str,
        default=None,
        help="Write the report to this path instead of stdout.",
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        help="Log at DEBUG level.",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        help="Hide progress bars and informational logs.",
    )

    parser = argparse.ArgumentParser(
        prog="verify.py",
        description="Verify Arrovian axioms of social welfare functions.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    classify_parser = subparsers.add_parser(
        "classify", parents=[common],
        help="Classify a relation literal or a profile file.",
    )
    classify_parser.add_argument(
        "target",
        help="A literal such as 0e1, a chain such as 'a1 < a2 ~ a3', "
             "or a profile file.",
    )

    check_parser = subparsers.add_parser(
        "check", parents=[common], help="Check axioms of an SWF.",
    )
    check_parser.add_argument("swf", help="SWF file or builtin name.")
    group = check_parser.add_mutually_exclusive_group()
    group.add_argument("--axiom", choices=list(AXIOMS), default=None)
    group.add_argument("--all", action="store_true")
    check_parser.add_argument("--workers", type=int, default=None)

    witness_parser = subparsers.add_parser(
        "witness", parents=[common], help="Construct a cycle witness.",
    )
    witness_parser.add_argument("swf", help="SWF file or builtin name.")
    witness_parser.add_argument(
        "--theorem",
        choices=list(THEOREMS) + ["contradictory-pair"],
        required=True,
    )

    enumerate_parser = subparsers.add_parser(
        "enumerate", parents=[common],
        help="Cross-check candidate SWFs against the brute-force oracle.",
    )
    enumerate_parser.add_argument("--individuals", type=int, default=None)
    enumerate_parser.add_argument(
        "--mode", choices=[m.value for m in SearchMode], default=None,
    )
    enumerate_parser.add_argument("--trials", type=int, default=None)
    enumerate_parser.add_argument("--seed", type=int, default=None)
    enumerate_parser.add_argument("--workers", type=int, default=None)
    enumerate_parser.add_argument(
        "--save-run",
        action="store_true",
        help="Write report.txt and candidates.csv under logs/run_<n>.",
    )
    strategy = enumerate_parser.add_mutually_exclusive_group()
    strategy.add_argument(
        "--pruned",
        action="store_true",
        help="Backtracking search for the candidates satisfying the domain.",
    )
    strategy.add_argument(
        "--lemmas",
        action="store_true",
        help="Check the lemma properties on every domain-satisfying SWF.",
    )

    simulate_parser = subparsers.add_parser(
        "simulate", parents=[common],
        help="Estimate the majority cycle frequency.",
    )
    simulate_parser.add_argument("--voters", type=int, default=None)
    simulate_parser.add_argument("--trials", type=int, default=None)
    simulate_parser.add_argument("--seed", type=int, default=None)
    simulate_parser.add_argument(
        "--culture", choices=[c.value for c in Culture], default=None,
    )
    simulate_parser.add_argument("--workers", type=int, default=None)
    simulate_parser.add_argument(
        "--exact",
        action="store_true",
        help="Also report the exactly enumerated fraction.",
    )
    return parser


def _report(args: argparse.Namespace, items: List[Tuple[str, str]],
            document: dict) -> None:
    if args.format == "json":
        emit(render_json(document), args.out)
    else:
        emit(render_text(items), args.out)


def cmd_classify(args: argparse.Namespace, config: dict) -> int:
    """Classify a relation literal or the columns of a profile file."""
    if os.path.isfile(args.target):
        profile = DataCenter.load_profile(args.target)
        items = [("individuals", str(profile.num_individuals))]
        columns = []
        for i, column in enumerate(profile.columns, start=1):
            kind = classify(column)
            items.append((
                f"column {i}",
                f"{column.symbols} {kind.kind.value}"
                f"{' strict' if kind.strict else ''}: {render_chain(column)}",
            ))
            columns.append({
                "relation": column.symbols,
                "kind": kind.kind.value,
                "strict": kind.strict,
                "chain": render_chain(column),
            })
        _report(args, items, {
            "individuals": profile.num_individuals, "columns": columns,
        })
        return EXIT_OK
    if _LITERAL.match(args.target):
        relation = PreferenceRelation.from_symbols(args.target)
    else:
        relation = parse_relation(args.target)
    kind = classify(relation)
    chain = render_chain(relation)
    items = [
        ("relation", relation.symbols),
        ("kind", kind.kind.value),
        ("strict", "yes" if kind.strict else "no"),
        ("chain", chain),
    ]
    _report(args, items, {
        "relation": relation.symbols,
        "kind": kind.kind.value,
        "strict": kind.strict,
        "chain": chain,
    })
    return EXIT_OK


def cmd_check(args: argparse.Namespace, config: dict) -> int:
    """Run one checker or the full report."""
    params = config["check_params"]
    swf = DataCenter.resolve_swf(args.swf, params["default_individuals"])
    workers = args.workers or config["search_params"]["workers"]
    progress = not args.quiet
    if args.axiom is None:
        report = full_report(swf, params["chunk_size"], workers, progress)
        _report(args, report.items(), report.to_dict())
        return EXIT_NEGATIVE if report.negative else EXIT_OK

    if args.axiom == "unrestricted_domain":
        verdict = check_unrestricted_domain(
            swf, params["chunk_size"], workers, progress
        )
    else:
        verdict = AXIOMS[args.axiom](swf)
    items = [
        ("swf", swf.name),
        ("individuals", str(swf.n)),
        (args.axiom, verdict.describe()),
    ]
    document = {
        "swf": swf.name,
        "individuals": swf.n,
        args.axiom: {"holds": verdict.holds, "detail": verdict.describe()},
    }
    _report(args, items, document)
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def _prime_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}_prime{ext}"


def cmd_witness(args: argparse.Namespace, config: dict) -> int:
    """Construct the requested witness and write it."""
    swf = DataCenter.resolve_swf(
        args.swf, config["check_params"]["default_individuals"]
    )
    if args.theorem == "contradictory-pair":
        pair = contradictory_pair(swf)
        first, second = DataCenter.dump_pair(pair)
        if args.format == "json":
            m_aggregate, m_prime_aggregate = pair.aggregates
            emit(render_json({
                "provenance": pair.provenance.value,
                "m": {"profile": [r.symbols for r in pair.m.rows],
                      "aggregate": m_aggregate.symbols},
                "m_prime": {"profile": [r.symbols for r in pair.m_prime.rows],
                            "aggregate": m_prime_aggregate.symbols},
            }), args.out)
        elif args.out is None:
            emit("# m\n" + first + "# m_prime\n" + second)
        else:
            DataCenter.write_text(args.out, first)
            DataCenter.write_text(_prime_path(args.out), second)
            logger.info("wrote %s and %s", args.out, _prime_path(args.out))
        return EXIT_OK

    witness = THEOREMS[args.theorem](swf)
    if witness is None:
        sys.stderr.write(
            f"not applicable: {swf.name} satisfies the property the "
            f"{args.theorem} construction refutes\n"
        )
        return EXIT_NEGATIVE
    if args.format == "json":
        emit(render_json({
            "profile": [r.symbols for r in witness.profile.rows],
            "aggregate": witness.aggregate.symbols,
            "provenance": witness.provenance.value,
        }), args.out)
    elif args.out is None:
        emit(DataCenter.dump_witness(witness))
    else:
        DataCenter.write_text(args.out, DataCenter.dump_witness(witness))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace, config: dict) -> int:
    """Sweep, prune or verify the lemmas over candidate SWFs."""
    params = config["search_params"]
    n = args.individuals or params["individuals"]
    mode = SearchMode(args.mode or params["mode"])
    progress = not args.quiet

    if args.lemmas:
        report = verify_lemmas_exhaustive(
            n, include_full=mode is SearchMode.FULL,
            max_nodes=params["max_nodes"], progress=progress,
        )
        _report(args, report.items(), dict(report.items()))
        return EXIT_NEGATIVE if report.violations else EXIT_OK
    if args.pruned:
        report = pruned_ud_search(n, mode, params["max_nodes"])
        _report(args, report.items(), dict(report.items()))
        return EXIT_OK

    trials = args.trials
    if mode is SearchMode.FULL and trials is None:
        trials = params["trials"]
    if trials is not None and args.seed is None:
        raise UsageError("sampled sweeps require --seed")
    save_run = args.save_run or config["logging_params"]["save_runs"]
    report = sweep_candidates(
        CandidateSpace(n, mode),
        trials=trials,
        seed=args.seed,
        workers=args.workers or params["workers"],
        block_size=params["block_size"],
        max_exhaustive_candidates=params["max_exhaustive_candidates"],
        progress=progress,
        save_run=save_run,
        work_dir=config["logging_params"]["work_dir"],
    )
    _report(args, report.items(), report.to_dict())
    return EXIT_NEGATIVE if report.discrepancies else EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: dict) -> int:
    """Estimate the Condorcet cycle frequency of pairwise majority."""
    params = config["simulation_params"]
    if args.seed is None:
        raise UsageError("simulate requires --seed")
    voters = params["voters"] if args.voters is None else args.voters
    trials = params["trials"] if args.trials is None else args.trials
    if voters < 2:
        raise UsageError(f"--voters must be at least 2, got {voters}")
    if trials < 1:
        raise UsageError(f"--trials must be at least 1, got {trials}")
    culture = Culture(args.culture or params["culture"])
    report = monte_carlo_condorcet(
        voters, trials, args.seed, culture,
        block_size=params["block_size"],
        workers=args.workers or config["search_params"]["workers"],
        progress=not args.quiet,
    )
    items = report.items()
    document = dict(items)
    if args.exact:
        exact = exact_condorcet_fraction(voters, culture)
        items.append(("exact", f"{exact} = {float(exact):.6f}"))
        document["exact"] = str(exact)
    _report(args, items, document)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "check": cmd_check,
    "witness": cmd_witness,
    "enumerate": cmd_enumerate,
    "simulate": cmd_simulate,
}


def _configure_logging(args: argparse.Namespace, config: dict) -> None:
    level = config["logging_params"]["level"]
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    :param argv: arguments without the program name; sys.argv when None
    :type argv: List[str]

    :return: the exit status
    :rtype: int
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE

    try:
        config = load_config(args.config)
    except OSError as error:
        sys.stderr.write(f"error: cannot load config {args.config!r}: "
                         f"{error}\n")
        return EXIT_USAGE
    _configure_logging(args, config)

    try:
        return COMMANDS[args.command](args, config)
    except (PreconditionFailed, WitnessNotFound) as error:
        sys.stderr.write(f"{error}\n")
        return EXIT_NEGATIVE
    except UsageError as error:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {error}\n")
        return EXIT_USAGE
    except (ArrovianError, OSError, ValueError) as error:
        sys.stderr.write(f"error: {error}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
