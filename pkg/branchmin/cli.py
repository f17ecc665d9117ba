# Copyright 2025 The branchmin Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Command line front end: `branchmin minimize|compare|stats|gen`.
"""

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

import jsonschema
import psutil
from pydantic import ValidationError

from .config import Config
from .entities.lts import Lts
from .entities.report import REPORT_SCHEMA, GenConfig, RunReport
from .exceptions import BranchminError, InvariantViolation
from .minimizer import equivalent, minimize
from .tools.aut import parse_aut, set_internal, write_aut
from .tools.generators import gen_appendix_a, gen_random, gen_tau_cycle
from .tools.statistics import lts_statistics

configs = Config()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def _read(
    path: str, tau: Optional[list[str]], strict: bool = True
) -> Lts:
    """
    Parses an .aut file; `tau` replaces the configured internal labels.

    With `strict`, every name in `tau` must occur in the file. Otherwise
    names the file does not use are ignored.
    """
    with open(path, "rb") as stream:
        if tau is None:
            return parse_aut(stream, configs.engine.internal_labels)
        if not strict:
            return parse_aut(stream, tau)
        return set_internal(parse_aut(stream, ()), tau)


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as stream:
        stream.write(data)


def _peak_memory_bytes() -> Optional[int]:
    """High-water mark of the resident set, or None where it is unknown."""
    info = psutil.Process().memory_info()
    if hasattr(info, "peak_wset"):
        return info.peak_wset
    try:
        import resource
    except ImportError:
        return None
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # kilobytes everywhere except macOS
    return peak if sys.platform == "darwin" else peak * 1024


def _tau_list(value: str) -> list[str]:
    return [label.strip() for label in value.split(",") if label.strip()]


def cmd_minimize(args: argparse.Namespace) -> int:
    try:
        lts = _read(args.input, args.tau)
    except (BranchminError, OSError, ValidationError) as e:
        print(f"branchmin: {args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT

    started = time.perf_counter()
    try:
        result = minimize(lts, validate=args.validate or None)
    except InvariantViolation as e:
        logger.error("Invariant violation: %s", e)
        print(f"branchmin: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    elapsed = time.perf_counter() - started

    try:
        _write(args.output, write_aut(result.quotient))
        if args.map:
            lines = [
                f"{state} {block}\n"
                for state, block in enumerate(result.partition.block_of)
            ]
            _write(args.map, "".join(lines).encode("utf-8"))
    except OSError as e:
        print(f"branchmin: {e}", file=sys.stderr)
        return EXIT_INPUT

    report_format = args.report or configs.report_format
    # stdout carries the quotient
    if args.report is None and args.output == "-":
        return EXIT_OK
    report = RunReport(
        input_n=lts.n,
        input_m=lts.m,
        input_actions=len(set(lts.actions.action_keys())),
        preprocessed_n=result.preprocess.preprocessed_n,
        preprocessed_m=result.preprocess.preprocessed_m,
        output_n=result.quotient.n,
        output_m=result.quotient.m,
        block_count=result.partition.block_count,
        counters=result.counters,
        elapsed_seconds=elapsed,
        peak_memory_bytes=_peak_memory_bytes(),
    )
    if report_format == "json":
        payload = report.to_json()
        try:
            jsonschema.validate(json.loads(payload), REPORT_SCHEMA)
        except jsonschema.ValidationError as e:
            logger.error("Run report does not match its schema: %s", e.message)
            return EXIT_INTERNAL
        print(payload)
    else:
        print(report.to_text(), end="")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        first = _read(args.first, args.tau, strict=False)
        second = _read(args.second, args.tau, strict=False)
        verdict, _ = equivalent(first, second)
    except (BranchminError, OSError, ValidationError) as e:
        print(f"branchmin: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    print("equivalent" if verdict else "not-equivalent")
    return EXIT_OK if verdict else 1


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        lts = _read(args.input, args.tau)
        stats = lts_statistics(lts, reduce=args.reduce)
    except InvariantViolation as e:
        print(f"branchmin: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (BranchminError, OSError, ValidationError) as e:
        print(f"branchmin: {args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT
    if (args.report or configs.report_format) == "json":
        print(stats.model_dump_json(indent=4))
    else:
        print(stats.to_text(), end="")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        if args.family == "random":
            defaults = configs.generator
            cfg = GenConfig(
                n_max=_pick(args.n_max, defaults.n_max),
                m_max=_pick(args.m_max, defaults.m_max),
                label_count=_pick(args.labels, defaults.label_count),
                tau_fraction=_pick(args.tau_fraction, defaults.tau_fraction),
                seed=_pick(args.seed, defaults.seed),
            )
            lts = gen_random(cfg)
        elif args.family == "appendix-a":
            lts = gen_appendix_a(args.k)
        else:
            lts = gen_tau_cycle(args.n)
    except (ValueError, ValidationError) as e:
        print(f"branchmin: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        _write(args.output, write_aut(lts))
    except OSError as e:
        print(f"branchmin: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _pick(value, default):
    return default if value is None else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=configs.app_name,
        description="Branching bisimulation minimisation of .aut files.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log at DEBUG level"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    tau_help = "comma-separated internal labels (default: tau,i)"

    p = commands.add_parser("minimize", help="write the quotient of an LTS")
    p.add_argument("input")
    p.add_argument("output", help="quotient .aut file, '-' for stdout")
    p.add_argument("--map", help="write 'state block' lines to this file")
    p.add_argument("--tau", type=_tau_list, help=tau_help)
    p.add_argument("--report", choices=["text", "json"])
    p.add_argument(
        "--validate",
        action="store_true",
        help="check engine invariants during the run (slow)",
    )
    p.set_defaults(handler=cmd_minimize)

    p = commands.add_parser("compare", help="check branching bisimilarity")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tau", type=_tau_list, help=tau_help)
    p.set_defaults(handler=cmd_compare)

    p = commands.add_parser("stats", help="print size figures of an LTS")
    p.add_argument("input")
    p.add_argument("--tau", type=_tau_list, help=tau_help)
    p.add_argument("--reduce", action="store_true", help="also minimise")
    p.add_argument("--report", choices=["text", "json"])
    p.set_defaults(handler=cmd_stats)

    p = commands.add_parser("gen", help="generate an LTS")
    families = p.add_subparsers(dest="family", required=True)
    g = families.add_parser("random")
    g.add_argument("output")
    g.add_argument("--n-max", type=int)
    g.add_argument("--m-max", type=int)
    g.add_argument("--labels", type=int, help="number of labels incl. tau")
    g.add_argument("--tau-fraction", type=float)
    g.add_argument("--seed", type=int)
    g = families.add_parser("appendix-a")
    g.add_argument("output")
    g.add_argument("--k", type=int, required=True)
    g = families.add_parser("tau-cycle")
    g.add_argument("output")
    g.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INTERNAL if e.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else configs.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
