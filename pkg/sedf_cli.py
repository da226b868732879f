#!/usr/bin/env python3
"""CLI for strong external difference families: fields, cyclotomy, verification and search."""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from tools.errors import SetLiteralError
from tools.utils.config import load_config
from tools.utils.parser import parse_factors, parse_int_list, parse_set_literal
from workflows.base_workflow import EXIT_USAGE
from workflows.sedf_workflows import run_command

logger = logging.getLogger(__name__)


def _add_field_options(parser: argparse.ArgumentParser, required: bool) -> None:
    group = parser.add_argument_group("Field Options")
    group.add_argument("-p", type=int, required=required, help="Field characteristic (prime)")
    group.add_argument("-m", type=int, required=required, help="Extension degree")
    group.add_argument(
        "--modulus",
        type=str,
        help="Monic modulus as ascending coefficients c0,...,cm (default: smallest irreducible)",
    )


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Output Options")
    group.add_argument("--format", choices=["tsv", "json"], help="Output format")
    group.add_argument("--out", type=str, help="Output file path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Construct, verify and search strong external difference families.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Primitive element and order witnesses of GF(3^5)
  python sedf_cli.py field -p 3 -m 5 --modulus 1,2,1,1,1,1

  # The (243,11,22,20)-SEDF from the order-11 cyclotomic classes
  python sedf_cli.py verify --cyclotomic -p 3 -m 5 --modulus 1,2,1,1,1,1 -e 11

  # Explicit sets in Z_5
  python sedf_cli.py verify --group 5 --sets "1,4;2,3"

  # Cyclotomic scan and exhaustive search
  python sedf_cli.py scan --q-max 243 --m-min 5
  python sedf_cli.py search --group 5 -m 2 -k 2

Exit codes: 0 verified/found, 1 invalid/none found, 2 usage or capacity error.
        """,
    )
    parser.add_argument("--config", type=str, help="Path to YAML config (default: $SEDF_CONFIG or configs/config.yml)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
    sub = parser.add_subparsers(dest="command", required=True)

    field = sub.add_parser("field", help="Build GF(p^m) and certify its primitive element")
    _add_field_options(field, required=True)
    field.add_argument("--table", action="store_true", help="Also print theta^t for every t")
    _add_output_options(field)

    cyclo = sub.add_parser("cyclo", help="Cyclotomic numbers of order e and their identities")
    _add_field_options(cyclo, required=True)
    cyclo.add_argument("-e", type=int, required=True, help="Cyclotomic order (divides q-1)")
    _add_output_options(cyclo)

    for name, help_text in (
        ("verify", "Verify an SEDF given by sets, cyclotomic classes or a certificate"),
        ("pds", "Recognise partial difference sets and compose partitions into SEDFs"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        _add_field_options(cmd, required=False)
        cmd.add_argument("-e", type=int, help="Cyclotomic order (with --cyclotomic)")
        cmd.add_argument("--group", type=str, help="Cyclic factors of G, e.g. 13 or 3,3")
        source = cmd.add_mutually_exclusive_group(required=True)
        source.add_argument("--sets", type=str, help='Set literal, e.g. "1,4;2,3"')
        source.add_argument("--cyclotomic", action="store_true", help="Use the classes C_0..C_{e-1}")
        if name == "verify":
            source.add_argument("--certificate", type=str, help="Re-verify a JSON certificate stream")
        else:
            cmd.add_argument("--srg", action="store_true", help="Check the Cayley graph of each set")
        _add_output_options(cmd)

    scan = sub.add_parser("scan", help="Cyclotomic SEDF scan over prime powers")
    scan.add_argument("--q-max", type=int, help="Largest prime power (default from config)")
    scan.add_argument("--m-min", type=int, help="Smallest cyclotomic order (default from config)")
    _add_output_options(scan)

    search = sub.add_parser("search", help="Exhaustive SEDF search in a small group")
    search.add_argument("--group", type=str, required=True, help="Cyclic factors of G")
    search.add_argument("-m", type=int, required=True, help="Number of sets")
    search.add_argument("-k", type=int, required=True, help="Set size")
    search.add_argument("--limit", type=int, help="Node limit (results marked partial)")
    search.add_argument(
        "--automorphisms", action="store_true", help="Also identify families related by multipliers"
    )
    _add_output_options(search)

    tuples = sub.add_parser("tuples", help="Feasible (n, m, k, lambda) tuples")
    tuples.add_argument("--n-max", type=int, required=True, help="Largest group order")
    tuples.add_argument("--m-min", type=int, help="Smallest number of sets (default 2)")
    _add_output_options(tuples)
    return parser


def build_input(args: argparse.Namespace) -> Dict[str, Any]:
    """Translate parsed arguments into RunConfig fields."""
    data: Dict[str, Any] = {"command": args.command}
    for key in ("p", "m", "e", "k", "limit", "format", "out", "q_max", "m_min", "n_max", "certificate"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "modulus", None):
        data["modulus"] = parse_int_list(args.modulus, what="modulus")
    if getattr(args, "group", None):
        data["group"] = parse_factors(args.group)
    if getattr(args, "sets", None) is not None:
        data["sets"] = parse_set_literal(args.sets)
    for flag, key in (("cyclotomic", "cyclotomic"), ("table", "table"), ("srg", "srg"),
                      ("automorphisms", "use_automorphisms")):
        if getattr(args, flag, False):
            data[key] = True
    return data


def write_report(report: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="\n") as f:
            f.write(report)
        logger.info(f"Results saved to: {out}")
    else:
        sys.stdout.write(report)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except (ValueError, OSError) as e:
        logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, config.logging.level.upper(), logging.INFO),
        format=config.logging.format,
        stream=sys.stderr,
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        input_data = build_input(args)
    except SetLiteralError as e:
        logger.error(f"Invalid literal: {e}")
        return EXIT_USAGE

    logger.info(f"Running {args.command}...")
    state = run_command(input_data, config.model_dump())
    if state.get("errors"):
        return EXIT_USAGE

    try:
        write_report(state.get("report", ""), input_data.get("out"))
    except OSError as e:
        logger.error(f"Cannot write report: {e}")
        return EXIT_USAGE
    return state.get("exit_code", EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
