"""Turn raw records or pre-aggregated counts into frequency and truth tables.

Bit layout: attribute index 0 is the most significant bit of a combination,
so ``int("1010", 2)`` is the combination E=1, S=0, T=1, J=0 for the schema
``[E, S, T, J]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Tuple

MAX_ATTRIBUTES = 20

BOOLEAN = "boolean"
NUMERIC_THRESHOLD = "numeric-threshold"
KINDS = (BOOLEAN, NUMERIC_THRESHOLD)

# "below": value < threshold -> 1; "above": value >= threshold -> 1
POLARITIES = ("below", "above")

SHARE = "share"
RATE = "rate"
MODES = (SHARE, RATE)


class IngestError(ValueError):
    """Bad input data. Carries the 1-based source line when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConflictError(IngestError):
    """The same combination was observed with both outcomes."""


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: str = BOOLEAN
    threshold: Optional[float] = None
    polarity: Optional[str] = None
    label_one: Optional[str] = None
    label_zero: Optional[str] = None
    symbol: Optional[str] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be non-empty")
        if self.kind not in KINDS:
            raise ValueError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == NUMERIC_THRESHOLD:
            if self.threshold is None:
                raise ValueError(f"attribute {self.name!r}: numeric-threshold needs a threshold")
            if not math.isfinite(float(self.threshold)):
                raise ValueError(f"attribute {self.name!r}: threshold must be finite")
            polarity = self.polarity or "above"
            if polarity not in POLARITIES:
                raise ValueError(f"attribute {self.name!r}: polarity must be one of {POLARITIES}")
            object.__setattr__(self, "polarity", polarity)
        else:
            if self.threshold is not None:
                raise ValueError(f"attribute {self.name!r}: boolean attributes take no threshold")
            if self.polarity is not None:
                raise ValueError(f"attribute {self.name!r}: boolean attributes take no polarity")
        if self.symbol is not None and (not self.symbol or "'" in self.symbol):
            raise ValueError(f"attribute {self.name!r}: invalid symbol {self.symbol!r}")

    @property
    def letter(self) -> str:
        """Text used for this attribute inside rule strings."""
        return self.symbol or self.name

    def to_bit(self, value) -> int:
        if self.kind == BOOLEAN:
            bit = _as_boolean(value)
            if bit is None:
                raise IngestError(f"attribute {self.name!r}: expected 0 or 1, got {value!r}")
            return bit
        number = _as_number(value)
        if number is None:
            raise IngestError(f"attribute {self.name!r}: expected a number, got {value!r}")
        if self.polarity == "below":
            return int(number < self.threshold)
        return int(number >= self.threshold)


def _as_boolean(value) -> Optional[int]:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, (int, float)):
        return int(value) if value in (0, 1) else None
    if isinstance(value, str):
        text = value.strip()
        if text in ("0", "1"):
            return int(text)
        try:
            number = float(text)
        except ValueError:
            return None
        return int(number) if number in (0.0, 1.0) else None
    try:
        # numpy scalars
        return int(value) if value in (0, 1) else None
    except TypeError:
        return None


def _as_number(value) -> Optional[float]:
    if isinstance(value, bool):
        return float(value)
    try:
        number = float(value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError):
        return None
    return number if math.isfinite(number) else None


@dataclass(frozen=True)
class AttributeSchema:
    attributes: Tuple[AttributeSpec, ...]

    def __post_init__(self):
        attrs = tuple(self.attributes)
        object.__setattr__(self, "attributes", attrs)
        if not 1 <= len(attrs) <= MAX_ATTRIBUTES:
            raise ValueError(f"schema needs between 1 and {MAX_ATTRIBUTES} attributes, got {len(attrs)}")
        names = [a.name for a in attrs]
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        letters = [a.letter for a in attrs]
        if len(set(letters)) != len(letters):
            raise ValueError("attribute symbols must be unique")

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "AttributeSchema":
        """Schema of boolean attributes, one per name."""
        return cls(tuple(AttributeSpec(name) for name in names))

    @property
    def k(self) -> int:
        return len(self.attributes)

    @property
    def size(self) -> int:
        return 1 << self.k

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bit(self, attribute: int) -> int:
        """Mask of the combination bit holding ``attribute``."""
        if not 0 <= attribute < self.k:
            raise IndexError(f"attribute index {attribute} out of range for k={self.k}")
        return 1 << (self.k - 1 - attribute)

    def check_combination(self, combination: int) -> int:
        if not isinstance(combination, int) or isinstance(combination, bool):
            combination = int(combination)
        if not 0 <= combination < self.size:
            raise IngestError(f"combination {combination} out of range for k={self.k}")
        return combination

    def format_combination(self, combination: int) -> str:
        return format(combination, f"0{self.k}b")

    def to_dict(self) -> dict:
        out = []
        for a in self.attributes:
            entry = {"name": a.name, "kind": a.kind}
            for key in ("threshold", "polarity", "label_one", "label_zero", "symbol"):
                value = getattr(a, key)
                if value is not None:
                    entry[key] = value
            out.append(entry)
        return {"attributes": out}


@dataclass(frozen=True)
class FrequencyTable:
    """Per-combination success/failure counts.

    ``failures_recorded`` is False for share-only data (counts of successes
    with no failure column), where success rates cannot be computed.
    """

    schema: AttributeSchema
    successes: Tuple[int, ...]
    failures: Tuple[int, ...]
    failures_recorded: bool = True

    def __post_init__(self):
        succ = tuple(int(s) for s in self.successes)
        fail = tuple(int(f) for f in self.failures)
        if len(succ) != self.schema.size or len(fail) != self.schema.size:
            raise ValueError(f"expected {self.schema.size} entries per count column")
        if any(s < 0 for s in succ) or any(f < 0 for f in fail):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "successes", succ)
        object.__setattr__(self, "failures", fail)

    @property
    def total_successes(self) -> int:
        return sum(self.successes)

    @property
    def total_observations(self) -> int:
        return self.total_successes + sum(self.failures)

    def observations(self, combination: int) -> int:
        return self.successes[combination] + self.failures[combination]

    def success_rate(self, combination: int) -> Optional[float]:
        """Percent of observations at ``combination`` that succeeded.

        None when the combination is unobserved or failures were not recorded.
        """
        n = self.observations(combination)
        if n == 0 or not self.failures_recorded:
            return None
        return 100.0 * self.successes[combination] / n

    def success_share(self, combination: int) -> Optional[float]:
        """Percent of all successes that fall on ``combination``."""
        total = self.total_successes
        if total == 0:
            return None
        return 100.0 * self.successes[combination] / total


@dataclass(frozen=True)
class TruthTable:
    schema: AttributeSchema
    outcomes: Tuple[bool, ...]
    provenance: Optional[FrequencyTable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        outcomes = tuple(bool(o) for o in self.outcomes)
        if len(outcomes) != self.schema.size:
            raise ValueError(f"truth table needs {self.schema.size} outcomes, got {len(outcomes)}")
        object.__setattr__(self, "outcomes", outcomes)

    @classmethod
    def from_successes(cls, schema: AttributeSchema, successes: Iterable[int]) -> "TruthTable":
        outcomes = [False] * schema.size
        for c in successes:
            outcomes[schema.check_combination(c)] = True
        return cls(schema, tuple(outcomes))

    def __getitem__(self, combination: int) -> bool:
        return self.outcomes[combination]

    @property
    def success_combinations(self) -> Tuple[int, ...]:
        return tuple(c for c, o in enumerate(self.outcomes) if o)

    @property
    def failure_combinations(self) -> Tuple[int, ...]:
        return tuple(c for c, o in enumerate(self.outcomes) if not o)


@dataclass(frozen=True)
class ClassifyConfig:
    mode: str = SHARE
    pct_threshold: float = 7.0
    min_successes: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0.0 <= self.pct_threshold <= 100.0:
            raise ValueError("pct_threshold must lie in [0, 100]")
        if self.min_successes < 0:
            raise ValueError("min_successes must be >= 0")


def dichotomize(record: Mapping[str, object], schema: AttributeSchema) -> int:
    combination = 0
    for spec in schema.attributes:
        if spec.name not in record:
            raise IngestError(f"missing value for attribute {spec.name!r}")
        value = record[spec.name]
        if value is None or (isinstance(value, str) and not value.strip()):
            raise IngestError(f"missing value for attribute {spec.name!r}")
        combination = (combination << 1) | spec.to_bit(value)
    return combination


def _as_outcome(value) -> bool:
    if isinstance(value, str) and value.strip().lower() in ("success", "failure"):
        return value.strip().lower() == "success"
    bit = _as_boolean(value)
    if bit is None:
        raise IngestError(f"outcome must be 0/1 or success/failure, got {value!r}")
    return bool(bit)


def build_frequency_table(observations: Iterable[Tuple[int, object]],
                          schema: AttributeSchema) -> FrequencyTable:
    successes = [0] * schema.size
    failures = [0] * schema.size
    for combination, outcome in observations:
        c = schema.check_combination(combination)
        if _as_outcome(outcome):
            successes[c] += 1
        else:
            failures[c] += 1
    return FrequencyTable(schema, tuple(successes), tuple(failures), failures_recorded=True)


def classify(freq: FrequencyTable, cfg: ClassifyConfig) -> TruthTable:
    """Threshold a frequency table into a truth table.

    A combination is a success when its chosen percentage is at least
    ``cfg.pct_threshold`` and it has at least ``cfg.min_successes``
    successes. Unobserved combinations are always failures.
    """
    if cfg.mode == RATE:
        if not freq.failures_recorded:
            raise ValueError("rate mode needs recorded failures; use share mode")
        if freq.total_observations == 0:
            raise ValueError("rate mode needs at least one observation")
        pct = freq.success_rate
    else:
        pct = freq.success_share
    outcomes = []
    for c in range(freq.schema.size):
        value = pct(c)
        outcomes.append(
            value is not None
            and freq.successes[c] > 0
            and value >= cfg.pct_threshold
            and freq.successes[c] >= cfg.min_successes
        )
    return TruthTable(freq.schema, tuple(outcomes), provenance=freq)


def build_truth_table_deterministic(observations: Iterable[Tuple[int, object]],
                                    schema: AttributeSchema) -> TruthTable:
    seen = {}
    for combination, outcome in observations:
        c = schema.check_combination(combination)
        result = _as_outcome(outcome)
        if seen.setdefault(c, result) != result:
            raise ConflictError(
                f"combination {schema.format_combination(c)} observed with both outcomes; "
                "the data is not deterministic, build a frequency table and classify it instead"
            )
    return TruthTable(schema, tuple(seen.get(c, False) for c in range(schema.size)))


def frequency_table_from_counts(schema: AttributeSchema, successes: Sequence[int],
                                failures: Optional[Sequence[int]] = None) -> FrequencyTable:
    """Frequency table from per-combination counts in combination order."""
    if failures is None:
        return FrequencyTable(schema, tuple(successes), (0,) * schema.size, failures_recorded=False)
    return FrequencyTable(schema, tuple(successes), tuple(failures))
