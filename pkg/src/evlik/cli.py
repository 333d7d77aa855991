"""Command-line surface for block-maxima likelihood analysis.

Four subcommands drive the library end to end:

``evlik fit``
    Fit a model to a one-column CSV of block maxima and print the
    maximum-likelihood estimates in both GEV coordinates ``(a, b, c)`` and
    the mapped classical coordinates ``(family, mu, sigma, beta)``.
    Optionally emit quantile-quantile rows (``--qq``) and return-period
    rows (``--returns``), each with pointwise profile-likelihood bands.

``evlik profile``
    Write relative-profile-likelihood curves for one or more targets
    (shape ``c``, threshold ``mu``, scale/shape coordinates, or quantiles
    ``q`` at the requested ``--alpha`` levels), one CSV/JSON file per
    curve.

``evlik interval``
    Print profile-likelihood and asymptotic-ML intervals side by side for
    the requested targets.

``evlik simulate``
    Run the Monte Carlo coverage study described by a scenario file and
    write the summary table.

Exit codes: 0 success; 2 input error (unreadable/malformed data, bad
configuration); 3 convergence or singularity failure; 4 partial results
(some rows failed, the rest were written).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import coverage as _cov
from .distributions import (
    FRECHET,
    GUMBEL,
    WEIBULL,
    EvParams,
    GevParams,
    ev_to_gev,
    gev_to_ev,
    quantile,
)
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    EvlikError,
    HessianError,
    InputError,
    OneSidedIntervalError,
    SingularLikelihoodError,
)
from .inference import (
    EXACT_ONLY,
    FALLBACK,
    GEV,
    FitResult,
    _target_spec,
    aml_interval,
    fit_mle,
    gumbel_plausibility,
    likelihood_interval,
    profile_curve,
    select_submodel,
)
from .likelihood import ObservedSample, detect_precision

__all__ = [
    "main",
    "parse_sample_csv",
    "write_sample_csv",
    "emit_qq_data",
    "emit_return_period_data",
]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3
EXIT_PARTIAL = 4

_GEV_COORDS = ("a", "b", "c")
_EV_COORDS = ("mu", "sigma", "beta")
_DEFAULT_PERIODS = (2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0)


# ---------------------------------------------------------------------------
# data ingestion / emission
# ---------------------------------------------------------------------------

def parse_sample_csv(path, precision="auto") -> ObservedSample:
    """Read a one-column CSV of block maxima.

    The file may start with a single header line; every following
    non-blank line must hold one numeric value (a lone trailing comma is
    tolerated). ``precision`` is either a positive cell width or
    ``"auto"``, in which case the measurement precision is inferred with
    :func:`detect_precision`.
    """
    try:
        with open(path, "r", encoding="utf-8-sig") as f:
            raw = f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e

    values: list[float] = []
    header_allowed = True
    saw_line = False
    for lineno, line in enumerate(raw.splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        saw_line = True
        fields = [t.strip() for t in text.split(",")]
        fields = [t for t in fields if t]
        if len(fields) != 1:
            raise InputError(
                f"{path}: expected one column but line {lineno} has "
                f"{len(fields)} fields")
        token = fields[0]
        try:
            v = float(token)
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise InputError(
                f"{path}: non-numeric value {token!r} on line {lineno}"
            ) from None
        if not math.isfinite(v):
            raise InputError(
                f"{path}: non-finite value {token!r} on line {lineno}")
        header_allowed = False
        values.append(v)

    if not saw_line:
        raise InputError(f"{path}: file is empty")
    if len(values) < 3:
        raise InputError(
            f"{path}: needs at least 3 values, found {len(values)}")

    arr = np.asarray(values, dtype=float)
    h = detect_precision(arr) if precision == "auto" else float(precision)
    return ObservedSample(arr, precision_h=h)


def write_sample_csv(values, path, header="value") -> None:
    """Write a one-column sample CSV that :func:`parse_sample_csv` inverts.

    Values are serialized with shortest-round-trip precision, so reading
    the file back reproduces the doubles exactly.
    """
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(header + "\n")
        for v in np.asarray(values, dtype=float):
            f.write(repr(float(v)) + "\n")


def _fmt(x) -> str:
    """Serialize one cell: full double precision for floats, '' for None."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    raise TypeError(f"cannot serialize {type(x)!r}")


def _write_rows(columns, rows, out, fmt) -> None:
    """Write dict rows as CSV or JSON to a path or '-' (stdout)."""
    if fmt == "json":
        payload = [
            {k: _jsonable(r.get(k)) for k in columns} for r in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(k)) for k in columns])
        text = buf.getvalue()
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)


# ---------------------------------------------------------------------------
# plot-data emission
# ---------------------------------------------------------------------------

def emit_qq_data(fit: FitResult, sample: ObservedSample, level_k: float = 0.15,
                 *, kind_policy: str = FALLBACK, seed: int = 0) -> list[dict]:
    """Quantile-quantile rows with pointwise profile-likelihood bands.

    For each order statistic ``x_(i)`` the row holds the fitted quantile at
    the plotting position ``p_i = (i - 0.5)/n`` and the endpoints of the
    profile-likelihood interval for that quantile at cutoff ``level_k``.
    When an interval cannot be computed the band fields are absent and the
    row is flagged ``band_failed``.
    """
    xs = np.sort(np.asarray(sample.values, dtype=float))
    n = xs.size
    rows = []
    for i in range(1, n + 1):
        p = (i - 0.5) / n
        row = {
            "i": i,
            "p": p,
            "observed": float(xs[i - 1]),
            "fitted": float(quantile(fit.params, p)),
            "band_lo": None,
            "band_hi": None,
            "band_failed": False,
        }
        try:
            iv = likelihood_interval(
                sample, "q", quantile_alpha=p, level_k=level_k,
                family=fit.family, fixed_mu=fit.fixed_mu,
                kind_policy=kind_policy, seed=seed)
        except EvlikError:
            row["band_failed"] = True
        else:
            row["band_lo"] = iv.lower
            row["band_hi"] = iv.upper
        rows.append(row)
    return rows


def emit_return_period_data(fit: FitResult, sample: ObservedSample,
                            level_k: float = 0.15, periods=_DEFAULT_PERIODS,
                            *, kind_policy: str = FALLBACK,
                            seed: int = 0) -> list[dict]:
    """Return-period rows with profile-likelihood bands.

    A return period ``T`` corresponds to the quantile at
    ``alpha = 1 - 1/T`` (e.g. ``T = 100`` is the 0.99 quantile). Band
    failures are flagged exactly as in :func:`emit_qq_data`.
    """
    rows = []
    for T in periods:
        T = float(T)
        if T <= 1.0:
            raise InputError(f"return period must exceed 1, got {T:g}")
        p = 1.0 - 1.0 / T
        row = {
            "period": T,
            "p": p,
            "level": float(quantile(fit.params, p)),
            "band_lo": None,
            "band_hi": None,
            "band_failed": False,
        }
        try:
            iv = likelihood_interval(
                sample, "q", quantile_alpha=p, level_k=level_k,
                family=fit.family, fixed_mu=fit.fixed_mu,
                kind_policy=kind_policy, seed=seed)
        except EvlikError:
            row["band_failed"] = True
        else:
            row["band_lo"] = iv.lower
            row["band_hi"] = iv.upper
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# shared option plumbing
# ---------------------------------------------------------------------------

def _parse_precision(text: str):
    if text == "auto":
        return "auto"
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"precision must be a positive number or 'auto', got {text!r}")
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(
            f"precision must be a positive number or 'auto', got {text!r}")
    return v


def _parse_alpha(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be a number: {text!r}")
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(
            f"alpha must lie strictly in (0, 1), got {text!r}")
    return v


def _parse_periods(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"periods must be a comma-separated number list: {text!r}")
    if not values or any(v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError(
            "every return period must exceed 1")
    return values


def _add_sample_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, metavar="CSV",
                   help="one-column CSV of block maxima (optional header)")
    p.add_argument("--precision", type=_parse_precision, default="auto",
                   metavar="H|auto",
                   help="measurement precision (rounding cell width); "
                        "'auto' infers the finest decimal step (default)")


def _add_model_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", default="auto",
                   choices=("auto", "gev", "weibull", "gumbel", "frechet"),
                   help="model family; 'auto' fits the GEV and, where a "
                        "classical-coordinate target requires it, selects "
                        "the submodel by the sign of the fitted shape")
    p.add_argument("--fixed-mu", type=float, default=None, metavar="MU",
                   help="pin the threshold of a weibull/frechet model "
                        "(two-parameter fit)")
    p.add_argument("--exact", action="store_true",
                   help="force the exact (interval-censored) likelihood "
                        "instead of continuous-with-fallback")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for optimizer start generation (default 0)")


def _add_output_options(p: argparse.ArgumentParser, default_out="-") -> None:
    p.add_argument("--out", default=default_out, metavar="PATH",
                   help="output path ('-' = stdout)" if default_out == "-"
                        else f"output path (default {default_out})")
    p.add_argument("--format", default="csv", choices=("csv", "json"),
                   help="output serialization (default csv)")


def _kind_policy(args) -> str:
    return EXACT_ONLY if getattr(args, "exact", False) else FALLBACK


class _FitCache:
    """Fit each (family, fixed_mu) combination at most once per command."""

    def __init__(self, sample, kind_policy, seed):
        self.sample = sample
        self.kind_policy = kind_policy
        self.seed = seed
        self._fits: dict[tuple, FitResult] = {}

    def get(self, family: str, fixed_mu=None) -> FitResult:
        key = (family, fixed_mu)
        if key not in self._fits:
            self._fits[key] = fit_mle(
                self.sample, family, fixed_mu=fixed_mu,
                kind_policy=self.kind_policy, seed=self.seed)
        return self._fits[key]


def _resolve_family(args, cache: _FitCache, target: str) -> str:
    """Map --family auto onto a concrete family for one target.

    GEV-coordinate targets (``c``, ``a``, ``b``) and quantiles stay on the
    full GEV; classical-coordinate targets (``mu``, ``sigma``, ``beta``)
    use the submodel selected by the sign of the fitted GEV shape.
    """
    if args.family != "auto":
        return args.family
    if target in _EV_COORDS:
        sub = select_submodel(cache.get(GEV).coordinate("c"))
        if sub == GUMBEL and target in ("mu", "beta"):
            raise InputError(
                f"the fitted shape selects the gumbel submodel, which has "
                f"no {target!r} coordinate; pass --family explicitly")
        return sub
    return GEV


def _validate_target(target: str, family: str) -> None:
    gev_ok = target in ("q",) + _GEV_COORDS
    ev_ok = target in ("q", "mu", "sigma", "beta")
    if family == GEV and not gev_ok:
        raise InputError(
            f"target {target!r} is not a gev coordinate; "
            f"gev targets are q, a, b, c")
    if family in (WEIBULL, FRECHET) and not ev_ok:
        raise InputError(
            f"target {target!r} is not a {family} coordinate; "
            f"{family} targets are q, mu, sigma, beta")
    if family == GUMBEL and target not in ("q", "mu", "sigma"):
        raise InputError(
            f"target {target!r} is not a gumbel coordinate; "
            f"gumbel targets are q, mu, sigma")


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

def _both_coordinate_tables(fit: FitResult):
    """Return (GevParams, EvParams) views of a fitted model."""
    params = fit.params
    if isinstance(params, GevParams):
        return params, gev_to_ev(params)
    return ev_to_gev(params), params


def cmd_fit(args) -> int:
    sample = parse_sample_csv(args.input, args.precision)
    policy = _kind_policy(args)
    cache = _FitCache(sample, policy, args.seed)

    fit_family = GEV if args.family == "auto" else args.family
    if args.fixed_mu is not None and fit_family not in (WEIBULL, FRECHET):
        raise InputError("--fixed-mu applies to weibull or frechet fits")
    fit = cache.get(fit_family, args.fixed_mu)
    gev_p, ev_p = _both_coordinate_tables(fit)

    rows = [
        {"section": "meta", "name": "n", "value": sample.values.size},
        {"section": "meta", "name": "precision_h",
         "value": float(sample.precision_h)},
        {"section": "meta", "name": "family_requested", "value": args.family},
        {"section": "meta", "name": "family_fitted", "value": fit.family},
        {"section": "meta", "name": "likelihood_kind",
         "value": fit.kind_used},
        {"section": "meta", "name": "used_exact_fallback",
         "value": fit.used_exact_fallback},
        {"section": "meta", "name": "loglik_max",
         "value": float(fit.loglik_max)},
        {"section": "meta", "name": "converged", "value": fit.converged},
    ]
    if fit.family == GEV:
        rows.append({"section": "meta", "name": "submodel_selected",
                     "value": select_submodel(fit.coordinate("c"))})
        rows.append({"section": "meta", "name": "gumbel_plausibility",
                     "value": float(gumbel_plausibility(fit))})
    rows.extend(
        {"section": "gev", "name": n, "value": float(getattr(gev_p, n))}
        for n in _GEV_COORDS)
    rows.append({"section": "ev", "name": "family", "value": ev_p.family})
    rows.extend(
        {"section": "ev", "name": n,
         "value": None if getattr(ev_p, n) is None else float(getattr(ev_p, n))}
        for n in _EV_COORDS)

    _write_rows(("section", "name", "value"), rows, args.out, args.format)

    partial = False
    if args.qq is not None:
        qq_rows = emit_qq_data(fit, sample, args.level_k,
                               kind_policy=policy, seed=args.seed)
        _write_rows(("i", "p", "observed", "fitted",
                     "band_lo", "band_hi", "band_failed"),
                    qq_rows, args.qq, args.format)
        partial |= any(r["band_failed"] for r in qq_rows)
    if args.returns is not None:
        rp_rows = emit_return_period_data(fit, sample, args.level_k,
                                          args.periods, kind_policy=policy,
                                          seed=args.seed)
        _write_rows(("period", "p", "level",
                     "band_lo", "band_hi", "band_failed"),
                    rp_rows, args.returns, args.format)
        partial |= any(r["band_failed"] for r in rp_rows)
    return EXIT_PARTIAL if partial else EXIT_OK


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

def _curve_jobs(args, cache: _FitCache):
    """Expand the requested targets into (label, target, alpha, family)."""
    jobs = []
    for target in args.target:
        if target == "q":
            for alpha in args.alpha:
                family = _resolve_family(args, cache, target)
                _validate_target(target, family)
                jobs.append((f"q{alpha:g}".replace("0.", "", 1),
                             "q", alpha, family))
        else:
            family = _resolve_family(args, cache, target)
            _validate_target(target, family)
            jobs.append((target, target, None, family))
    return jobs


def cmd_profile(args) -> int:
    sample = parse_sample_csv(args.input, args.precision)
    policy = _kind_policy(args)
    cache = _FitCache(sample, policy, args.seed)
    os.makedirs(args.out, exist_ok=True)

    failures = []
    written = []
    for label, target, alpha, family in _curve_jobs(args, cache):
        try:
            curve = profile_curve(
                sample, target, quantile_alpha=alpha, family=family,
                fixed_mu=args.fixed_mu if family in (WEIBULL, FRECHET)
                else None,
                kind_policy=policy, n_points=args.grid_points,
                seed=args.seed)
        except EvlikError as e:
            failures.append((label, e))
            print(f"profile {label}: failed ({e})", file=sys.stderr)
            continue
        spec, idx, _, _ = _target_spec(curve.fit, target, alpha)
        nuis_names = [n for j, n in enumerate(spec.names) if j != idx]
        columns = (target, "r", *nuis_names, "failed")
        rows = []
        for j, t in enumerate(curve.grid):
            row = {target: float(t), "r": float(curve.r_values[j]),
                   "failed": j in curve.failed_points}
            for m, nm in enumerate(nuis_names):
                v = curve.nuisances[j, m]
                row[nm] = None if not math.isfinite(v) else float(v)
            rows.append(row)
        ext = "json" if args.format == "json" else "csv"
        path = os.path.join(args.out, f"profile_{label}.{ext}")
        _write_rows(columns, rows, path, args.format)
        written.append(path)
        note = ""
        if curve.open_sides:
            note = (f"; R stays above {curve.level_span:g} on the "
                    f"{' and '.join(curve.open_sides)} side, grid clamped")
        print(f"profile {label}: {path} "
              f"(max at {curve.t_hat:.6g}, kind {curve.kind_used}{note})",
              file=sys.stderr)

    if failures and not written:
        raise failures[0][1]
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# interval
# ---------------------------------------------------------------------------

def cmd_interval(args) -> int:
    sample = parse_sample_csv(args.input, args.precision)
    policy = _kind_policy(args)
    cache = _FitCache(sample, policy, args.seed)

    jobs = []
    for target in args.target:
        family = _resolve_family(args, cache, target)
        _validate_target(target, family)
        alphas = args.alpha if target == "q" else [None]
        for alpha in alphas:
            jobs.append((target, alpha, family))

    columns = ("target", "alpha", "method", "family", "estimate",
               "lower", "upper", "level_k", "confidence", "se",
               "likelihood_kind", "used_exact_fallback", "error")
    rows = []
    failures = 0
    for target, alpha, family in jobs:
        fixed_mu = args.fixed_mu if family in (WEIBULL, FRECHET) else None
        fit = cache.get(family, fixed_mu)
        for method, runner in (
            ("profile", lambda: likelihood_interval(
                sample, target, quantile_alpha=alpha, level_k=args.level_k,
                family=family, fixed_mu=fixed_mu, kind_policy=policy,
                fit=fit, seed=args.seed)),
            ("aml", lambda: aml_interval(
                sample, target, quantile_alpha=alpha,
                confidence=args.confidence, family=family, fixed_mu=fixed_mu,
                kind_policy=policy, fit=fit, seed=args.seed)),
        ):
            row = {"target": target, "alpha": alpha, "method": method,
                   "family": family, "level_k": None, "confidence": None,
                   "se": None, "error": None}
            try:
                iv = runner()
            except EvlikError as e:
                failures += 1
                row["error"] = f"{type(e).__name__}: {e}"
            else:
                row.update(estimate=iv.estimate, lower=iv.lower,
                           upper=iv.upper, se=iv.se,
                           likelihood_kind=iv.kind_used,
                           used_exact_fallback=iv.used_exact_fallback)
                if method == "profile":
                    row["level_k"] = iv.level_k
                else:
                    row["confidence"] = iv.confidence
            rows.append(row)

    _write_rows(columns, rows, args.out, args.format)
    if failures == len(rows):
        raise ConvergenceError("no interval could be computed")
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    scenarios = _cov.load_scenario_file(args.scenario)
    if args.seed is not None:
        scenarios = [
            _cov.Scenario(
                c_true=s.c_true, n=s.n, replicates=s.replicates,
                base_seed=args.seed, a_true=s.a_true, b_true=s.b_true,
                targets=s.targets, models=s.models, level_k=s.level_k,
                aml_confidence=s.aml_confidence, precision_h=s.precision_h)
            for s in scenarios
        ]
    summaries = []
    for i, s in enumerate(scenarios, start=1):
        print(f"scenario {i}/{len(scenarios)}: c={s.c_true:g} n={s.n} "
              f"replicates={s.replicates}", file=sys.stderr, flush=True)
        records = _cov.run_scenario(s, jobs=args.jobs)
        summaries.append(_cov.summarize(records, s))

    if args.format == "json":
        rows = []
        for summ in summaries:
            s = summ.scenario
            for (target, method, model), cell in summ.cells.items():
                lens = cell.lengths if cell.lengths is not None else (None,) * 5
                rows.append({
                    "c": s.c_true, "n": s.n, "target": target,
                    "method": method, "model": model,
                    "under": cell.under, "cover": cell.cover,
                    "over": cell.over, "snp": summ.snp_count,
                    "correct": summ.correct_count,
                    "negative": cell.negative,
                    "len_min": lens[0], "len_q1": lens[1], "len_med": lens[2],
                    "len_q3": lens[3], "len_max": lens[4],
                })
        text = json.dumps(rows, indent=2, default=_jsonable) + "\n"
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
    elif args.out == "-":
        import tempfile

        with tempfile.NamedTemporaryFile("r", suffix=".csv") as tmp:
            _cov.write_summary_csv(summaries, tmp.name)
            sys.stdout.write(open(tmp.name, encoding="utf-8").read())
    else:
        _cov.write_summary_csv(summaries, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evlik",
        description="Likelihood inference for block maxima: GEV and "
                    "classical extreme-value fits, profile and asymptotic "
                    "intervals, and coverage experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a model and print both coordinate "
                                   "tables; optionally emit Q-Q and "
                                   "return-period data")
    _add_sample_options(p)
    _add_model_options(p)
    _add_output_options(p)
    p.add_argument("--level-k", type=float, default=0.15, metavar="K",
                   help="relative-likelihood cutoff for bands (default 0.15)")
    p.add_argument("--qq", default=None, metavar="PATH",
                   help="also write quantile-quantile rows with profile "
                        "bands to PATH")
    p.add_argument("--returns", default=None, metavar="PATH",
                   help="also write return-period rows with profile bands "
                        "to PATH")
    p.add_argument("--periods", type=_parse_periods,
                   default=_DEFAULT_PERIODS, metavar="T1,T2,...",
                   help="return periods for --returns "
                        "(default 2,5,10,20,50,100,200,500)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("profile", help="write relative-profile-likelihood "
                                       "curves, one file per target")
    _add_sample_options(p)
    _add_model_options(p)
    p.add_argument("--target", action="append", default=None,
                   choices=("q", "c", "a", "b", "mu", "sigma", "beta"),
                   help="profile target, repeatable (default: c)")
    p.add_argument("--alpha", action="append", type=_parse_alpha,
                   default=None, metavar="A",
                   help="quantile level(s) for target q, repeatable "
                        "(default 0.95 and 0.99)")
    p.add_argument("--grid-points", type=int, default=101, metavar="N",
                   help="points per curve (default 101)")
    p.add_argument("--out", default=".", metavar="DIR",
                   help="output directory (default current directory)")
    p.add_argument("--format", default="csv", choices=("csv", "json"),
                   help="output serialization (default csv)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("interval", help="print profile and asymptotic-ML "
                                        "intervals for the requested "
                                        "targets")
    _add_sample_options(p)
    _add_model_options(p)
    p.add_argument("--target", action="append", default=None,
                   choices=("q", "c", "a", "b", "mu", "sigma", "beta"),
                   help="interval target, repeatable (default: q)")
    p.add_argument("--alpha", action="append", type=_parse_alpha,
                   default=None, metavar="A",
                   help="quantile level(s) for target q, repeatable "
                        "(default 0.95 and 0.99)")
    p.add_argument("--level-k", type=float, default=0.15, metavar="K",
                   help="relative-likelihood cutoff for profile intervals "
                        "(default 0.15)")
    p.add_argument("--confidence", type=float, default=0.95, metavar="P",
                   help="confidence level for asymptotic-ML intervals "
                        "(default 0.95)")
    _add_output_options(p)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("simulate", help="run a Monte Carlo coverage study "
                                        "from a scenario file")
    p.add_argument("--scenario", required=True, metavar="FILE",
                   help="scenario file (key = value lines; keys c, n, "
                        "replicates, seed, level_k, confidence, targets, "
                        "models, precision_h, a, b)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for replicates (default 1)")
    p.add_argument("--seed", type=int, default=None,
                   help="override the scenario base seed")
    _add_output_options(p, default_out="coverage_summary.csv")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alpha", None) is None and hasattr(args, "alpha"):
        args.alpha = [0.95, 0.99]
    if getattr(args, "target", None) is None and hasattr(args, "target"):
        args.target = ["c"] if args.command == "profile" else ["q"]
    try:
        return args.func(args)
    except (InputError, DomainError, DegenerateSampleError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, SingularLikelihoodError, HessianError,
            OneSidedIntervalError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except EvlikError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())
