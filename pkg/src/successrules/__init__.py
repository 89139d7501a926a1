"""Boolean success-rule mining from dichotomous observational data."""
from .coverage import (
    FilterResult,
    RuleCoverage,
    SelectedRule,
    acceptance_filter,
    coverage_table,
    greedy_filter,
    normalized_share,
    rule_success_mass,
    total_success_mass,
)
from .datasets import load_case_study
from .effects import (
    EffectCandidate,
    EffectReport,
    UnavailableError,
    added_error,
    conditional_success_rate,
    enumerate_candidates,
    overall_error,
    scan_effects,
    suggest_replacements,
)
from .estimator import Dichotomizer, SuccessRuleMiner
from .ingest import (
    AttributeSchema,
    AttributeSpec,
    ClassifyConfig,
    ConflictError,
    FrequencyTable,
    IngestError,
    TruthTable,
    build_frequency_table,
    build_truth_table_deterministic,
    classify,
    dichotomize,
    frequency_table_from_counts,
)
from .karnaugh import UnsupportedRendering, render_karnaugh
from .minimize import (
    CoverError,
    Implicant,
    RuleSet,
    evaluate,
    format_rule,
    format_rules,
    generate_prime_implicants,
    minimize,
    parse_rule,
    parse_rules,
    select_cover,
)
from .oracle import OracleResult, brute_force_minimize, exhaustive_equivalence
from .readers import SchemaError, load_frequency, load_records, load_schema
from .report import ConfigError, PipelineConfig, run_pipeline

__version__ = "0.1.0"
