"""End-to-end pipeline and its report.

The structured form of a report is a plain JSON-ready dict keyed by phase;
``dumps_report`` serializes it deterministically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .coverage import acceptance_filter, coverage_table, greedy_filter
from .effects import EffectReport, scan_effects
from .ingest import (
    AttributeSchema,
    ClassifyConfig,
    FrequencyTable,
    TruthTable,
    build_frequency_table,
    classify,
)
from .karnaugh import grid, render_karnaugh
from .minimize import Implicant, RuleSet, format_rule, format_rules, minimize
from .readers import load_frequency, load_records, load_schema

REPORT_FORMAT = "successrules-report"
REPORT_VERSION = 1

RECORDS = "records"
FREQUENCY = "frequency"

ACCEPT = "accept"
REJECT = "reject"


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    schema_path: Optional[Path] = None
    input_path: Optional[Path] = None
    input_kind: str = FREQUENCY
    classify: ClassifyConfig = field(default_factory=ClassifyConfig)
    coverage_target: float = 80.0
    acceptance_level: float = 0.0
    interactive: bool = False
    decisions: Dict[str, str] = field(default_factory=dict)
    emit_karnaugh: bool = False
    delimiter: Optional[str] = None

    def validate(self) -> None:
        if self.input_kind not in (RECORDS, FREQUENCY):
            raise ConfigError(f"input kind must be {RECORDS!r} or {FREQUENCY!r}")
        if not 0 < self.coverage_target <= 100:
            raise ConfigError("coverage target must lie in (0, 100]")
        if not 0 <= self.acceptance_level <= 100:
            raise ConfigError("acceptance level must lie in [0, 100]")
        for label, verdict in self.decisions.items():
            if verdict not in (ACCEPT, REJECT):
                raise ConfigError(f"decision for {label!r} must be {ACCEPT!r} or {REJECT!r}")


def parse_decisions(text: str) -> Dict[str, str]:
    """Parse ``"E=accept,EJ=reject"`` (commas or newlines between entries)."""
    out = {}
    for chunk in text.replace("\n", ",").split(","):
        chunk = chunk.strip()
        if not chunk or chunk.startswith("#"):
            continue
        if "=" not in chunk:
            raise ConfigError(f"decision {chunk!r} is not of the form LABEL=accept|reject")
        label, verdict = (part.strip() for part in chunk.split("=", 1))
        verdict = verdict.lower()
        if verdict not in (ACCEPT, REJECT):
            raise ConfigError(f"decision for {label!r} must be {ACCEPT!r} or {REJECT!r}")
        out[label] = verdict
    return out


def load_frequency_input(cfg: PipelineConfig):
    cfg.validate()
    if cfg.schema_path is None or cfg.input_path is None:
        raise ConfigError("both a schema and an input file are required")
    schema, outcome = load_schema(cfg.schema_path)
    if cfg.input_kind == RECORDS:
        observations = load_records(cfg.input_path, schema, outcome, cfg.delimiter)
        return build_frequency_table(observations, schema)
    return load_frequency(cfg.input_path, schema, cfg.delimiter)


Prompt = Callable[[str], str]


def run_pipeline(cfg: PipelineConfig, freq: Optional[FrequencyTable] = None,
                 prompt: Optional[Prompt] = None) -> dict:
    """Run all four phases and return the structured report.

    ``freq`` bypasses file loading. ``prompt`` is used for interactive
    questions (defaults to ``input``).
    """
    cfg.validate()
    if freq is None:
        freq = load_frequency_input(cfg)
    if cfg.interactive and prompt is None:
        prompt = input
    schema = freq.schema
    decisions: List[dict] = []

    table = classify(freq, cfg.classify)
    rules = minimize(table)

    report = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "schema": schema.to_dict(),
        "config": {
            "mode": cfg.classify.mode,
            "pct_threshold": cfg.classify.pct_threshold,
            "min_successes": cfg.classify.min_successes,
            "coverage_target": cfg.coverage_target,
            "acceptance_level": cfg.acceptance_level,
        },
        "phase1": {"frequency": frequency_section(freq), "truth_table": truth_table_section(table)},
        "phase2": rules_section(rules),
    }

    if not len(rules) or freq.total_successes == 0:
        skipped = {"status": "skipped", "reason": "no success combinations"}
        report["phase3"] = dict(skipped)
        report["phase4"] = dict(skipped)
    else:
        target = cfg.coverage_target
        if cfg.interactive:
            target = _ask_target(prompt, target)
            decisions.append({"phase": 3, "item": "coverage_target", "value": target,
                              "source": "interactive"})
        report["phase3"] = filter_section(rules, freq, cfg.acceptance_level, target)
        effects = scan_effects(table, freq, rules)
        verdicts = _decide(effects, schema, cfg, prompt, decisions)
        report["phase4"] = effects_section(effects, schema, verdicts)

    if cfg.emit_karnaugh:
        report["karnaugh"] = karnaugh_section(table, rules)
    report["decisions"] = decisions
    return report


def _ask_target(prompt: Prompt, default: float) -> float:
    while True:
        answer = prompt(f"Coverage target in percent [{default:g}]: ").strip()
        if not answer:
            return default
        try:
            value = float(answer)
        except ValueError:
            continue
        if 0 < value <= 100:
            return value


def _decide(effects: List[EffectReport], schema: AttributeSchema, cfg: PipelineConfig,
            prompt: Optional[Prompt], log: List[dict]) -> Dict[str, str]:
    labels = {e.label for e in effects}
    unknown = sorted(set(cfg.decisions) - labels)
    if unknown:
        raise ConfigError(f"decisions name unknown candidates: {', '.join(unknown)}")
    verdicts = {}
    asking = cfg.interactive
    for e in effects:
        if e.label in cfg.decisions:
            verdicts[e.label] = cfg.decisions[e.label]
            log.append({"phase": 4, "candidate": e.label, "decision": verdicts[e.label],
                        "source": "flag"})
            continue
        if not asking:
            continue
        replaces = ", ".join(format_rule(r, schema) for r in e.replaceable_rules) or "nothing"
        question = (f"Accept {e.label} (overall error {100 * e.overall_error:.1f}%, "
                    f"replaces {replaces})? [y/n, Enter=skip, q=stop] ")
        answer = prompt(question).strip().lower()
        if answer == "q":
            asking = False
        elif answer in ("y", "yes"):
            verdicts[e.label] = ACCEPT
        elif answer in ("n", "no"):
            verdicts[e.label] = REJECT
        if e.label in verdicts:
            log.append({"phase": 4, "candidate": e.label, "decision": verdicts[e.label],
                        "source": "interactive"})
    return verdicts


def frequency_section(freq: FrequencyTable) -> dict:
    schema = freq.schema
    entries = []
    for c in range(schema.size):
        entries.append({
            "combination": schema.format_combination(c),
            "successes": freq.successes[c],
            "failures": freq.failures[c] if freq.failures_recorded else None,
            "success_share": freq.success_share(c),
            "success_rate": freq.success_rate(c) if freq.failures_recorded else None,
        })
    return {
        "total_successes": freq.total_successes,
        "total_observations": freq.total_observations,
        "failures_recorded": freq.failures_recorded,
        "entries": entries,
    }


def truth_table_section(table: TruthTable) -> dict:
    schema = table.schema
    return {
        "rows": [{"combination": schema.format_combination(c), "outcome": int(table[c])}
                 for c in range(schema.size)],
        "successes": [schema.format_combination(c) for c in table.success_combinations],
    }


def truth_table_from_report(report: dict) -> TruthTable:
    """Rebuild the truth table stored in a structured report."""
    from .readers import parse_schema

    schema, _ = parse_schema(report["schema"])
    rows = report["phase1"]["truth_table"]["rows"]
    outcomes = [False] * schema.size
    for row in rows:
        outcomes[int(row["combination"], 2)] = bool(row["outcome"])
    return TruthTable(schema, tuple(outcomes))


def _cube_dict(rule: Implicant, schema: AttributeSchema) -> dict:
    return {"rule": format_rule(rule, schema), "care_mask": rule.care_mask, "values": rule.values}


def rules_section(rules: RuleSet) -> dict:
    return {
        "expression": format_rules(rules),
        "rules": [_cube_dict(r, rules.schema) for r in rules],
        "term_count": len(rules),
        "literal_count": rules.literal_count,
    }


def filter_section(rules: RuleSet, freq: FrequencyTable, acceptance_level: float,
                   coverage_target: float) -> dict:
    schema = rules.schema
    accepted = acceptance_filter(rules, freq, acceptance_level)
    result = greedy_filter(accepted, freq, coverage_target, reference=rules) if len(accepted) else None
    return {
        "status": "done",
        "coverage": [
            {"rule": format_rule(rc.rule, schema), "success_mass": rc.success_mass,
             "normalized_share": rc.normalized_share}
            for rc in coverage_table(rules, freq)
        ],
        "acceptance": {
            "level": acceptance_level,
            "kept": [format_rule(r, schema) for r in accepted],
            "dropped": [format_rule(r, schema) for r in rules if r not in accepted],
        },
        "greedy": {
            "coverage_target": coverage_target,
            "selected": [
                {"rule": format_rule(s.rule, schema), "marginal_contribution": s.marginal_contribution,
                 "cumulative_coverage": s.cumulative_coverage}
                for s in (result.selected if result else ())
            ],
            "rejected": [format_rule(r, schema) for r in (result.rejected if result else ())],
            "target_met": bool(result and result.target_met),
        },
    }


def effects_section(effects: List[EffectReport], schema: AttributeSchema,
                    verdicts: Dict[str, str]) -> dict:
    return {
        "status": "done",
        "reports": [
            {
                "candidate": e.label,
                "literals": [[a, b] for a, b in e.candidate.literals],
                "covered_count": e.covered_count,
                "inconsistent_count": e.inconsistent_count,
                "inconsistent": [schema.format_combination(c) for c in e.inconsistent],
                "expected_cases": e.expected_cases,
                "actual_cases": e.actual_cases,
                "added_error": e.added_error,
                "overall_error": e.overall_error,
                "negative_deviation": e.negative_deviation,
                "conditional_success_rate": e.conditional_success_rate,
                "replaceable_rules": [format_rule(r, schema) for r in e.replaceable_rules],
                "decision": verdicts.get(e.label),
            }
            for e in effects
        ],
    }


def karnaugh_section(table: TruthTable, rules: RuleSet) -> dict:
    k = table.schema.k
    if not 2 <= k <= 4:
        return {"status": "skipped", "reason": f"maps are rendered for 2 to 4 attributes, not {k}"}
    return {"status": "done", "grid": grid(table), "text": render_karnaugh(table, rules)}


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _pct(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.0f}%"


def format_text(report: dict, sections=("phase1", "phase2", "phase3", "phase4", "karnaugh")) -> str:
    """Human-readable rendering; percentages rounded to whole numbers."""
    out: List[str] = []
    names = [a["name"] for a in report["schema"]["attributes"]]
    if "phase1" in sections:
        freq = report["phase1"]["frequency"]
        out.append("Phase I: frequency and truth table")
        out.append(f"  total successes {freq['total_successes']}, "
                   f"observations {freq['total_observations']}")
        header = "  " + " ".join(names) + "  succ  share  rate  result"
        out.append(header)
        rows = report["phase1"]["truth_table"]["rows"]
        for entry, row in zip(freq["entries"], rows):
            bits = " ".join(b.rjust(len(n)) for b, n in zip(entry["combination"], names))
            out.append(f"  {bits}  {entry['successes']:>4}  {_pct(entry['success_share']):>5}  "
                       f"{_pct(entry['success_rate']):>4}  {row['outcome']:>6}")
        out.append("")
    if "phase2" in sections:
        out.append("Phase II: minimized rules")
        out.append(f"  Y = {report['phase2']['expression']}")
        out.append("")
    if "phase3" in sections:
        p3 = report["phase3"]
        out.append("Phase III: rule filtering")
        if p3["status"] != "done":
            out.append(f"  skipped: {p3['reason']}")
        else:
            for rc in p3["coverage"]:
                out.append(f"  {rc['rule']}: {_pct(rc['success_mass'])} of successes, "
                           f"{_pct(rc['normalized_share'])} of rule-set coverage")
            acc = p3["acceptance"]
            out.append(f"  acceptance level {acc['level']:g}%: kept {', '.join(acc['kept']) or 'none'}")
            greedy = p3["greedy"]
            out.append(f"  coverage target {greedy['coverage_target']:g}%:")
            for s in greedy["selected"]:
                out.append(f"    + {s['rule']} (+{_pct(s['marginal_contribution'])}) "
                           f"-> {_pct(s['cumulative_coverage'])}")
            out.append(f"    target {'met' if greedy['target_met'] else 'not met'}")
        out.append("")
    if "phase4" in sections:
        p4 = report["phase4"]
        out.append("Phase IV: main and pair effects")
        if p4["status"] != "done":
            out.append(f"  skipped: {p4['reason']}")
        else:
            out.append("  candidate  bad/cells  expected  actual  added  overall  replaces")
            for e in p4["reports"]:
                flag = " !" if e["negative_deviation"] else ""
                decision = f"  [{e['decision']}]" if e["decision"] else ""
                out.append(
                    f"  {e['candidate']:<9}  {e['inconsistent_count']:>3}/{e['covered_count']:<5}  "
                    f"{e['expected_cases']:>8.1f}  {e['actual_cases']:>6}  "
                    f"{100 * e['added_error']:>4.0f}%{flag}  {100 * e['overall_error']:>6.1f}%  "
                    f"{', '.join(e['replaceable_rules']) or '-'}{decision}"
                )
        out.append("")
    if "karnaugh" in sections and "karnaugh" in report:
        k = report["karnaugh"]
        out.append("Karnaugh map")
        out.append(k["text"] if k["status"] == "done" else f"  skipped: {k['reason']}")
        out.append("")
    if report.get("decisions"):
        out.append("Decisions")
        for d in report["decisions"]:
            if d["phase"] == 3:
                out.append(f"  coverage target set to {d['value']:g}% ({d['source']})")
            else:
                out.append(f"  {d['candidate']}: {d['decision']} ({d['source']})")
    return "\n".join(out).rstrip() + "\n"
