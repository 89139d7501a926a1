"""Command-line front end.

Exit codes: 0 success, 1 input/parse error, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .ingest import ClassifyConfig, IngestError
from .karnaugh import UnsupportedRendering, render_karnaugh
from .readers import SchemaError
from .report import (
    FREQUENCY,
    RECORDS,
    ConfigError,
    PipelineConfig,
    dumps_report,
    format_text,
    load_frequency_input,
    parse_decisions,
    run_pipeline,
)
from .ingest import classify
from .minimize import minimize

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2

COMMAND_SECTIONS = {
    "ingest": ("phase1",),
    "minimize": ("phase2",),
    "filter": ("phase3",),
    "effects": ("phase4",),
    "pipeline": ("phase1", "phase2", "phase3", "phase4", "karnaugh"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schema", required=True, type=Path, help="schema file (YAML or JSON)")
    common.add_argument("--input", required=True, type=Path, help="records or frequency file")
    common.add_argument("--input-kind", choices=(RECORDS, FREQUENCY), default=FREQUENCY)
    common.add_argument("--delimiter", default=None, help="field delimiter (sniffed by default)")
    common.add_argument("--mode", choices=("share", "rate"), default="share",
                        help="percentage the threshold applies to")
    common.add_argument("--pct-threshold", type=float, default=7.0)
    common.add_argument("--min-successes", type=int, default=0)
    common.add_argument("--coverage-target", type=float, default=80.0)
    common.add_argument("--acceptance-level", type=float, default=0.0)
    common.add_argument("--interactive", action="store_true")
    common.add_argument("--decisions", default=None,
                        help="pre-recorded verdicts, e.g. 'E=reject,EJ=accept', or a file of them")
    common.add_argument("--karnaugh", action="store_true", help="include a Karnaugh map")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--output", type=Path, default=None, help="write the report here")

    parser = argparse.ArgumentParser(prog="successrules",
                                     description="Mine minimal success rules from dichotomous data.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("ingest", "build the frequency and truth tables"),
        ("minimize", "minimize the truth table into rules"),
        ("filter", "rank and filter rules by success coverage"),
        ("effects", "scan single-attribute and pair effects"),
        ("karnaugh", "render the truth table as a Karnaugh map"),
        ("pipeline", "run every phase and emit the full report"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _config(args) -> PipelineConfig:
    decisions = {}
    if args.decisions:
        source = Path(args.decisions)
        text = source.read_text(encoding="utf-8") if source.is_file() else args.decisions
        decisions = parse_decisions(text)
    try:
        classify_cfg = ClassifyConfig(args.mode, args.pct_threshold, args.min_successes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return PipelineConfig(
        schema_path=args.schema,
        input_path=args.input,
        input_kind=args.input_kind,
        classify=classify_cfg,
        coverage_target=args.coverage_target,
        acceptance_level=args.acceptance_level,
        interactive=args.interactive,
        decisions=decisions,
        emit_karnaugh=args.karnaugh or args.command == "karnaugh",
        delimiter=args.delimiter,
    )


def _select(report: dict, sections) -> dict:
    keep = {"format", "version", "schema", "config", "decisions"} | set(sections)
    return {key: value for key, value in report.items() if key in keep}


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "karnaugh":
            freq = load_frequency_input(cfg)
            table = classify(freq, cfg.classify)
            text = render_karnaugh(table, minimize(table)) + "\n"
            if args.format == "structured":
                from .report import karnaugh_section
                text = json.dumps(karnaugh_section(table, minimize(table)), indent=2, sort_keys=True) + "\n"
        else:
            report = _select(run_pipeline(cfg), COMMAND_SECTIONS[args.command])
            if args.format == "structured":
                text = dumps_report(report)
            else:
                text = format_text(report, COMMAND_SECTIONS[args.command])
    except (ConfigError, SchemaError, UnsupportedRendering) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IngestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # e.g. rate mode on share-only data
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
