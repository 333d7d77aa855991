"""Monte Carlo coverage studies for the interval constructions.

A `Scenario` pins one (true shape, sample size) cell plus the knobs: which
targets to track, replicate count, seed, interval levels. `run_scenario`
simulates replicates, fits, builds profile and asymptotic intervals under
the full three-parameter model and under the selected classical submodel,
and classifies every interval against the known truth. `summarize` folds
the records into the usual coverage bookkeeping: under/cover/over counts,
singular-rescue (snp) counts, five-number summaries of the lengths of the
intervals that covered, sign-selection and straddles-zero counts for the
shape target.

Replicates draw their seeds independently from a hash of (base_seed, c, n,
replicate_id), so results do not depend on execution order or worker count.
"""

from __future__ import annotations

import csv
import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ._simplex import five_number
from .distributions import GevParams, quantile, sample
from .errors import (
    DomainError,
    EvlikError,
    InputError,
    SingularLikelihoodError,
)
from .inference import (
    CONTINUOUS_ONLY,
    EXACT_ONLY,
    aml_interval,
    fit_mle,
    likelihood_interval,
    select_submodel,
)
from .likelihood import ObservedSample

__all__ = [
    "Scenario",
    "ReplicateRecord",
    "CellOutcome",
    "CoverageSummary",
    "CellSummary",
    "run_scenario",
    "summarize",
    "write_summary_csv",
    "length_ratio_table",
    "load_scenario_file",
    "default_c_grid",
    "TARGETS",
    "MODELS",
    "METHODS",
]

TARGET_Q95 = "Q.95"
TARGET_Q99 = "Q.99"
TARGET_C = "c"
TARGETS = (TARGET_Q95, TARGET_Q99, TARGET_C)

MODEL_GEV = "gev"
MODEL_SUB = "submodel"
MODELS = (MODEL_GEV, MODEL_SUB)

METHOD_PROFILE = "profile"
METHOD_AML = "aml"
METHODS = (METHOD_PROFILE, METHOD_AML)

_BASE_C_GRID = (-0.5, -0.4, -0.3, -0.2, -0.1, -0.05,
                0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5)
_N100_EXTRAS = (-0.01, -0.001, 0.001, 0.01)

# target name -> (coordinate passed to the interval builders, quantile order)
_TARGET_ARGS = {
    TARGET_Q95: ("q", 0.95),
    TARGET_Q99: ("q", 0.99),
    TARGET_C: ("c", None),
}


def default_c_grid(n: int) -> tuple[float, ...]:
    """The shape grid of the study; n=100 adds the near-zero probes."""
    if n >= 100:
        return tuple(sorted(_BASE_C_GRID + _N100_EXTRAS))
    return _BASE_C_GRID


@dataclass(frozen=True)
class Scenario:
    """One cell of the coverage study: a true GEV and a sample size."""

    c_true: float
    n: int
    replicates: int = 1000
    base_seed: int = 0
    a_true: float = 1.0
    b_true: float = 1.0
    targets: tuple[str, ...] = TARGETS
    models: tuple[str, ...] = MODELS
    level_k: float = 0.15
    aml_confidence: float = 0.95
    precision_h: float = 1e-6

    def __post_init__(self):
        if self.replicates < 1:
            raise DomainError("replicates must be at least 1")
        if self.n < 3:
            raise DomainError("sample size must be at least 3")
        if self.b_true <= 0:
            raise DomainError("b_true must be positive")
        if not self.targets:
            raise DomainError("at least one target is required")
        bad = [t for t in self.targets if t not in TARGETS]
        if bad:
            raise DomainError(f"unknown targets {bad}; valid: {TARGETS}")
        bad = [m for m in self.models if m not in MODELS]
        if bad:
            raise DomainError(f"unknown models {bad}; valid: {MODELS}")
        if not 0.0 < self.level_k < 1.0:
            raise DomainError("level_k must lie strictly between 0 and 1")
        if not 0.0 < self.aml_confidence < 1.0:
            raise DomainError("aml_confidence must lie strictly between 0 and 1")
        if self.precision_h <= 0:
            raise DomainError("precision_h must be positive")

    @property
    def truth(self) -> GevParams:
        return GevParams(self.a_true, self.b_true, self.c_true)

    def true_value(self, target: str) -> float:
        coord, alpha = _TARGET_ARGS[target]
        if coord == "c":
            return self.c_true
        return float(quantile(self.truth, alpha))

    def cell_keys(self):
        """Every (target, method, model) this scenario tracks."""
        keys = []
        for t in self.targets:
            models = (MODEL_GEV,) if t == TARGET_C else self.models
            for model in models:
                for method in METHODS:
                    keys.append((t, method, model))
        return keys


@dataclass(frozen=True)
class CellOutcome:
    """One interval's fate in one replicate."""

    side: str | None  # "under" / "cover" / "over"; None when the build failed
    lower: float | None = None
    upper: float | None = None
    length: float | None = None  # recorded only for covering intervals
    error: str | None = None

    @property
    def covered(self) -> bool:
        return self.side == "cover"


@dataclass
class ReplicateRecord:
    replicate_id: int
    c_hat: float
    family_selected: str
    snp: bool
    cells: dict = field(default_factory=dict)  # (target, method, model) -> CellOutcome
    error: str | None = None  # whole-replicate failure


def _replicate_seed(base_seed: int, c_true: float, n: int, replicate_id: int) -> int:
    key = f"{int(base_seed)}|{round(c_true * 1000)}|{int(n)}|{int(replicate_id)}"
    digest = hashlib.sha256(key.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "little")


def _classify(lower: float, upper: float, true_value: float) -> str:
    if upper < true_value:
        return "under"
    if lower > true_value:
        return "over"
    return "cover"


def _outcome(interval, true_value: float) -> CellOutcome:
    side = _classify(interval.lower, interval.upper, true_value)
    length = interval.length if side == "cover" else None
    return CellOutcome(side=side, lower=interval.lower, upper=interval.upper,
                       length=length)


def _replicate_pass(s: Scenario, replicate_id: int, obs: ObservedSample,
                    policy: str, snp: bool, seed: int) -> ReplicateRecord:
    """One full replicate under a single likelihood kind.

    SingularLikelihoodError is deliberately not caught here: the caller
    reruns the whole replicate with the exact likelihood so no record ever
    mixes kinds.
    """
    rec = ReplicateRecord(replicate_id=replicate_id, c_hat=math.nan,
                          family_selected="", snp=snp)
    try:
        base = fit_mle(obs, "gev", kind_policy=policy, seed=seed)
    except SingularLikelihoodError:
        raise
    except EvlikError as e:
        rec.error = f"gev fit failed: {e}"
        return rec
    rec.c_hat = base.coordinate("c")
    rec.family_selected = select_submodel(rec.c_hat)

    sub = None
    if MODEL_SUB in s.models and any(t != TARGET_C for t in s.targets):
        try:
            sub = fit_mle(obs, rec.family_selected, kind_policy=policy, seed=seed)
        except SingularLikelihoodError:
            raise
        except EvlikError as e:
            sub = e  # recorded per cell below

    for target, method, model in s.cell_keys():
        coord, alpha = _TARGET_ARGS[target]
        fit = base if model == MODEL_GEV else sub
        if isinstance(fit, EvlikError):
            rec.cells[(target, method, model)] = CellOutcome(
                side=None, error=f"submodel fit failed: {fit}")
            continue
        try:
            if method == METHOD_PROFILE:
                iv = likelihood_interval(obs, coord, quantile_alpha=alpha,
                                         level_k=s.level_k, fit=fit,
                                         kind_policy=policy, seed=seed)
            else:
                iv = aml_interval(obs, coord, quantile_alpha=alpha,
                                  confidence=s.aml_confidence, fit=fit,
                                  kind_policy=policy, seed=seed)
        except SingularLikelihoodError:
            raise
        except EvlikError as e:
            rec.cells[(target, method, model)] = CellOutcome(side=None, error=str(e))
            continue
        rec.cells[(target, method, model)] = _outcome(iv, s.true_value(target))
    return rec


def _run_replicate(s: Scenario, replicate_id: int) -> ReplicateRecord:
    seed = _replicate_seed(s.base_seed, s.c_true, s.n, replicate_id)
    x = sample(s.truth, s.n, seed=seed)
    obs = ObservedSample(x, precision_h=s.precision_h)
    try:
        return _replicate_pass(s, replicate_id, obs, CONTINUOUS_ONLY,
                               snp=False, seed=seed)
    except SingularLikelihoodError:
        # the continuous likelihood ran into its singularity somewhere in
        # this replicate; redo everything with the exact likelihood
        return _replicate_pass(s, replicate_id, obs, EXACT_ONLY,
                               snp=True, seed=seed)


def run_scenario(s: Scenario, jobs: int = 1) -> list[ReplicateRecord]:
    """All replicates of one scenario, in replicate-id order.

    `jobs` > 1 fans replicates out to worker processes; seeding is
    per-replicate, so the result is identical for any worker count.
    """
    if jobs < 1:
        raise DomainError("jobs must be at least 1")
    ids = range(s.replicates)
    if jobs == 1:
        return [_run_replicate(s, i) for i in ids]
    work = partial(_run_replicate, s)
    chunk = max(1, s.replicates // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        records = list(pool.map(work, ids, chunksize=chunk))
    return records


@dataclass(frozen=True)
class CellSummary:
    under: int
    cover: int
    over: int
    failures: int
    lengths: tuple | None  # five-number summary of covering intervals
    negative: int | None = None  # c target only: interval straddles zero


@dataclass
class CoverageSummary:
    scenario: Scenario
    replicates: int
    snp_count: int
    correct_count: int  # selected family matches the sign of the true shape
    failed_replicates: int
    cells: dict  # (target, method, model) -> CellSummary


def _true_family(c_true: float) -> str:
    if c_true < 0:
        return "weibull"
    if c_true > 0:
        return "frechet"
    return "gumbel"


def summarize(records, s: Scenario) -> CoverageSummary:
    """Fold one scenario's records into coverage counts.

    Per cell: under + cover + over + failures = replicates. A replicate
    that failed before producing a given interval counts as a failure for
    that cell. Lengths enter the five-number summary only when the
    interval covered.
    """
    records = list(records)
    if not records:
        raise DomainError("no records to summarize")
    truth_family = _true_family(s.c_true)
    snp = sum(1 for r in records if r.snp)
    correct = sum(1 for r in records if r.family_selected == truth_family)
    whole_failures = sum(1 for r in records if r.error is not None)

    cells = {}
    for key in s.cell_keys():
        under = cover = over = failures = 0
        negative = 0 if key[0] == TARGET_C else None
        lengths = []
        for r in records:
            out = r.cells.get(key)
            if out is None or out.side is None:
                failures += 1
                continue
            if out.side == "under":
                under += 1
            elif out.side == "over":
                over += 1
            else:
                cover += 1
                lengths.append(out.length)
            if negative is not None and out.lower < 0.0 < out.upper:
                negative += 1
        cells[key] = CellSummary(
            under=under, cover=cover, over=over, failures=failures,
            lengths=tuple(five_number(lengths)) if lengths else None,
            negative=negative,
        )
    return CoverageSummary(
        scenario=s, replicates=len(records), snp_count=snp,
        correct_count=correct, failed_replicates=whole_failures, cells=cells,
    )


CSV_COLUMNS = ("c", "n", "target", "method", "model", "under", "cover", "over",
               "snp", "correct", "negative",
               "len_min", "len_q1", "len_med", "len_q3", "len_max")


def write_summary_csv(summaries, path) -> None:
    """One CSV row per (scenario, target, method, model).

    snp and correct are replicate-level facts and repeat across the
    scenario's rows; negative is filled only for the shape target. Length
    columns are empty when nothing covered.
    """
    if isinstance(summaries, CoverageSummary):
        summaries = [summaries]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for summ in summaries:
            s = summ.scenario
            for (target, method, model), cell in summ.cells.items():
                lens = cell.lengths if cell.lengths is not None else ("",) * 5
                w.writerow([
                    repr(s.c_true), s.n, target, method, model,
                    cell.under, cell.cover, cell.over,
                    summ.snp_count, summ.correct_count,
                    "" if cell.negative is None else cell.negative,
                    *[x if x == "" else repr(float(x)) for x in lens],
                ])


def length_ratio_table(records, target: str = TARGET_Q95,
                       method: str = METHOD_PROFILE) -> np.ndarray:
    """Per-replicate submodel/GEV interval length ratios.

    Only replicates where both intervals covered the true value enter the
    table; everything else is dropped, including failures.
    """
    if target not in _TARGET_ARGS or target == TARGET_C:
        raise DomainError("length ratios are defined for the quantile targets")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    ratios = []
    for r in records:
        full = r.cells.get((target, method, MODEL_GEV))
        sub = r.cells.get((target, method, MODEL_SUB))
        if full is None or sub is None:
            continue
        if full.covered and sub.covered and full.length and full.length > 0:
            ratios.append(sub.length / full.length)
    return np.asarray(ratios, dtype=float)


# --- scenario files -------------------------------------------------------------

_SCALAR_KEYS = {
    "replicates": int,
    "seed": int,
    "level_k": float,
    "confidence": float,
    "precision_h": float,
    "a": float,
    "b": float,
}
_LIST_KEYS = ("c", "n", "targets", "models")


def _split_values(text: str) -> list[str]:
    return [tok for tok in text.replace(",", " ").split() if tok]


def load_scenario_file(path) -> list[Scenario]:
    """Scenarios from a small key = value text file.

    Recognized keys: c (list of shapes), n (list of sample sizes),
    replicates, seed, level_k, confidence, targets, models, precision_h,
    a, b. Lists are space or comma separated; '#' starts a comment. When c
    is omitted, each n gets the default study grid (n=100 picks up the
    near-zero shape values). The result is the full c x n grid, n-major.
    """
    raw: dict[str, object] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise InputError("expected 'key = value'", line=lineno)
            key, _, value = text.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key in raw:
                raise InputError(f"duplicate key {key!r}", line=lineno)
            try:
                if key in _SCALAR_KEYS:
                    raw[key] = _SCALAR_KEYS[key](value)
                elif key == "c":
                    raw[key] = tuple(float(v) for v in _split_values(value))
                elif key == "n":
                    raw[key] = tuple(int(v) for v in _split_values(value))
                elif key in ("targets", "models"):
                    raw[key] = tuple(_split_values(value))
                else:
                    raise InputError(f"unknown key {key!r}", line=lineno)
            except ValueError as e:
                raise InputError(f"bad value for {key!r}: {e}", line=lineno) from None
    n_values = raw.get("n", (25, 50, 100))
    knobs = dict(
        replicates=raw.get("replicates", 1000),
        base_seed=raw.get("seed", 0),
        a_true=raw.get("a", 1.0),
        b_true=raw.get("b", 1.0),
        targets=raw.get("targets", TARGETS),
        models=raw.get("models", MODELS),
        level_k=raw.get("level_k", 0.15),
        aml_confidence=raw.get("confidence", 0.95),
        precision_h=raw.get("precision_h", 1e-6),
    )
    out = []
    try:
        for n in n_values:
            for c in raw.get("c", default_c_grid(n)):
                out.append(Scenario(c_true=c, n=n, **knobs))
    except DomainError as e:
        raise InputError(str(e)) from None
    return out
