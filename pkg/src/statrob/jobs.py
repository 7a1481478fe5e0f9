"""Job configuration, run drivers, and on-disk report formats.

A job config is a single JSON document (one job per file) with a
`format_version` field. Reports echo the fully resolved configuration so
sweep outputs are self-describing, and two runs with the same config and
seed produce byte-identical reports apart from wall-time fields.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ConfigError, DivergedRunError
from .estimator import AmlsConfig, AmlsResult, amls_run, naive_mc
from .models import InputModel, UniformBox, UniformLinfBall
from .network import load_network
from .oracles import named_oracles
from .properties import (
    AdversarialMargin,
    LinearThreshold,
    MaxOfLinear,
    Property,
    builtin_property,
    infer_true_class,
)

__all__ = [
    "CONFIG_FORMAT_VERSION",
    "AMLS_DEFAULTS",
    "NAIVE_MC_DEFAULTS",
    "SELFTEST_AMLS",
    "SELFTEST_TOL_LOG10",
    "load_job_config",
    "run_job",
    "emit_counterexamples",
    "export_schemas",
]

CONFIG_FORMAT_VERSION = 1

AMLS_DEFAULTS = {
    "n_chains": 10_000,
    "mh_steps": 100,
    "quantile": 0.1,
    "log_p_min": math.log(1e-30),
    "proposal_width_init": None,
    "accept_target": 0.234,
    "width_shrink": 0.5,
    "width_grow": 1.02,
    "adapt_widths": True,
    "max_levels": None,
}

NAIVE_MC_DEFAULTS = {
    "n_samples": 1_000_000,
    "batch_size": 100_000,
}

# quick settings for the oracle self-test job; small populations keep the
# whole registry under a few seconds
SELFTEST_AMLS = {
    "n_chains": 2_000,
    "mh_steps": 60,
    "quantile": 0.1,
    "log_p_min": math.log(1e-12),
}
SELFTEST_TOL_LOG10 = 0.5

JOB_KINDS = ("amls", "naive-mc", "sweep", "oracle-selftest")


def _fail(field: str, message: str):
    raise ConfigError(f"config field '{field}': {message}")


def _get(section: dict, field: str, kinds, where: str, default=_fail):
    if field not in section:
        if default is _fail:
            _fail(f"{where}.{field}" if where else field, "is required")
        return default
    value = section[field]
    if kinds is not None and not isinstance(value, kinds):
        _fail(f"{where}.{field}" if where else field, f"has wrong type {type(value).__name__}")
    return value


def _number_list(section: dict, field: str, where: str, default=_fail):
    value = _get(section, field, list, where, default)
    if value is default and default is not _fail:
        return value
    path = f"{where}.{field}" if where else field
    if not value:
        _fail(path, "must be a nonempty list")
    for v in value:
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            _fail(path, "must contain numbers only")
    return [float(v) for v in value]


def build_model(section: dict, radius=None, reference=None) -> InputModel:
    """Instantiate an input model from its config section.

    `radius` overrides the declared ball radius (sweep cells); `reference`
    resolves a ball whose center is declared as "reference"."""
    kind = _get(section, "kind", str, "model")
    if kind == "uniform-box":
        if radius is not None:
            _fail("sweep.radius", "requires a uniform-linf-ball model")
        lower = _number_list(section, "lower", "model")
        upper = _number_list(section, "upper", "model")
        return UniformBox(lower, upper)
    if kind == "uniform-linf-ball":
        center = _get(section, "center", (list, str), "model")
        if isinstance(center, str):
            if center != "reference":
                _fail("model.center", "must be a vector or the string 'reference'")
            if reference is None:
                _fail("model.center", "'reference' needs an adversarial-margin property")
            center = list(reference)
        r = radius if radius is not None else _get(section, "radius", (int, float), "model")
        clip_lower = section.get("clip_lower")
        clip_upper = section.get("clip_upper")
        try:
            return UniformLinfBall(center, float(r), clip_lower, clip_upper)
        except ConfigError as exc:
            _fail("model", str(exc))
    _fail("model.kind", f"unknown kind {kind!r}")


def build_property(section: dict, base_dir: Path) -> Property:
    """Instantiate a property from its config section; network paths are
    resolved relative to the config file."""
    kind = _get(section, "kind", str, "property")
    if kind == "linear-threshold":
        a = _number_list(section, "a", "property")
        b = _get(section, "b", (int, float), "property")
        return LinearThreshold(a, float(b))
    if kind == "max-of-linear":
        terms = _get(section, "terms", list, "property")
        if not terms:
            _fail("property.terms", "must be a nonempty list")
        pairs = []
        for i, term in enumerate(terms):
            if not isinstance(term, dict):
                _fail(f"property.terms[{i}]", "must be an object with 'a' and 'b'")
            a = _number_list(term, "a", f"property.terms[{i}]")
            b = _get(term, "b", (int, float), f"property.terms[{i}]")
            pairs.append((a, float(b)))
        return MaxOfLinear(pairs)
    if kind == "adversarial-margin":
        rel = _get(section, "network", str, "property")
        path = Path(rel)
        if not path.is_absolute():
            path = base_dir / path
        if not path.exists():
            _fail("property.network", f"file not found: {path}")
        net = load_network(path)
        reference = _number_list(section, "reference_input", "property")
        if len(reference) != net.input_dim:
            _fail(
                "property.reference_input",
                f"has {len(reference)} entries, network expects {net.input_dim}",
            )
        true_class = section.get("true_class")
        if true_class is None:
            true_class = infer_true_class(net, reference)
        elif not isinstance(true_class, int):
            _fail("property.true_class", "must be an integer class index")
        return AdversarialMargin(net, true_class)
    if kind == "analytic-builtin":
        name = _get(section, "name", str, "property")
        params = _get(section, "params", dict, "property", default={})
        return builtin_property(name, params)
    _fail("property.kind", f"unknown kind {kind!r}")


@dataclass
class ResolvedJob:
    """A validated config together with the objects it declares."""

    doc: dict
    kind: str
    seed: int
    out_dir: Path
    base_dir: Path
    model: Optional[InputModel]
    prop: Optional[Property]
    log_true: Optional[float]
    model_section: Optional[dict]
    reference: Optional[list]


def _resolve_amls(section: dict) -> dict:
    resolved = dict(AMLS_DEFAULTS)
    known = set(AMLS_DEFAULTS)
    for key in section:
        if key not in known:
            _fail(f"amls.{key}", "is not a recognized parameter")
    resolved.update(section)
    try:
        AmlsConfig(**resolved, seed=0)
    except ConfigError as exc:
        _fail("amls", str(exc))
    return resolved


def load_job_config(path, seed=None, out_dir=None) -> ResolvedJob:
    """Parse and validate a job config file, applying CLI overrides."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be an object")
    if _get(doc, "format_version", int, "") != CONFIG_FORMAT_VERSION:
        _fail("format_version", f"must be {CONFIG_FORMAT_VERSION}")
    kind = _get(doc, "job", str, "")
    if kind not in JOB_KINDS:
        _fail("job", f"must be one of {list(JOB_KINDS)}")
    base_seed = seed if seed is not None else _get(doc, "seed", int, "", default=0)
    if not isinstance(base_seed, int) or base_seed < 0:
        _fail("seed", "must be a nonnegative integer")

    base_dir = path.parent
    if out_dir is not None:
        out = Path(out_dir)
    else:
        out = Path(_get(doc, "output_dir", str, "", default=str(path.with_suffix("")) + ".out"))
        if not out.is_absolute():
            out = base_dir / out

    model = prop = log_true = None
    model_section = None
    reference = None
    problem_name = doc.get("problem")
    if kind != "oracle-selftest":
        if problem_name is not None:
            if "model" in doc or "property" in doc:
                _fail("problem", "is mutually exclusive with model/property sections")
            registry = named_oracles()
            if problem_name not in registry:
                _fail("problem", f"unknown oracle {problem_name!r}; known: {sorted(registry)}")
            oracle = registry[problem_name]
            model, prop, log_true = oracle.model, oracle.prop, oracle.log_true_prob
        else:
            prop_section = _get(doc, "property", dict, "")
            prop = build_property(prop_section, base_dir)
            if prop_section.get("kind") == "adversarial-margin":
                reference = _number_list(prop_section, "reference_input", "property")
            model_section = _get(doc, "model", dict, "")
            model = build_model(model_section, reference=reference)
            if model.dimension != prop.dimension:
                _fail("model", f"dimension {model.dimension} does not match "
                               f"property dimension {prop.dimension}")

    resolved = dict(doc)
    resolved["seed"] = base_seed
    resolved["output_dir"] = str(out)
    if kind in ("amls", "sweep", "oracle-selftest"):
        defaults = SELFTEST_AMLS if kind == "oracle-selftest" else None
        section = _get(doc, "amls", dict, "", default={})
        if defaults is not None:
            merged = dict(AMLS_DEFAULTS)
            merged.update(defaults)
            merged.update(section)
            section = {k: v for k, v in merged.items()}
        resolved["amls"] = _resolve_amls(section)
    if kind == "naive-mc":
        section = dict(NAIVE_MC_DEFAULTS)
        section.update(_get(doc, "naive_mc", dict, "", default={}))
        if int(section["n_samples"]) < 1:
            _fail("naive_mc.n_samples", "must be >= 1")
        if int(section["batch_size"]) < 1:
            _fail("naive_mc.batch_size", "must be >= 1")
        resolved["naive_mc"] = section
    if kind == "sweep":
        section = _get(doc, "sweep", dict, "")
        repeats = _get(section, "repeats", int, "sweep", default=1)
        if repeats < 1:
            _fail("sweep.repeats", "must be >= 1")
        for key in section:
            if key not in ("quantile", "mh_steps", "n_chains", "radius", "repeats"):
                _fail(f"sweep.{key}", "is not a recognized sweep axis")
        sweep = {"repeats": repeats}
        for key in ("quantile", "mh_steps", "n_chains", "radius"):
            if key in section:
                sweep[key] = _number_list(section, key, "sweep")
        if "radius" in sweep and (model_section is None or model_section.get("kind") != "uniform-linf-ball"):
            _fail("sweep.radius", "requires a uniform-linf-ball model")
        resolved["sweep"] = sweep
    if kind == "oracle-selftest":
        names = doc.get("oracles")
        registry = named_oracles()
        if names is None:
            names = list(registry)
        else:
            if not isinstance(names, list) or not names:
                _fail("oracles", "must be a nonempty list of oracle names")
            for name in names:
                if name not in registry:
                    _fail("oracles", f"unknown oracle {name!r}; known: {sorted(registry)}")
        resolved["oracles"] = names

    return ResolvedJob(
        doc=resolved,
        kind=kind,
        seed=base_seed,
        out_dir=out,
        base_dir=base_dir,
        model=model,
        prop=prop,
        log_true=log_true,
        model_section=model_section,
        reference=reference,
    )


def _derived_seed(base: int, *branch: int) -> int:
    return int(np.random.SeedSequence([base, *branch]).generate_state(1, np.uint64)[0])


def _write_json(path: Path, doc: dict):
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def emit_counterexamples(result: AmlsResult, path) -> None:
    """Write the final population, one row per sample: the coordinates then
    the property value, whitespace-separated at full precision. Only valid
    for successful runs."""
    if result.counterexamples is None:
        raise ValueError("run returned the unsat sentinel; there are no counterexamples")
    with open(path, "w", encoding="utf-8") as fh:
        for row, value in zip(result.counterexamples, result.counterexample_values):
            cells = [f"{v:.17g}" for v in row] + [f"{value:.17g}"]
            fh.write(" ".join(cells) + "\n")


def _estimate_fields(report: dict, log_estimate: float):
    if log_estimate == float("-inf"):
        report["unsat_below_threshold"] = True
    else:
        report["log_estimate"] = log_estimate
        report["log10_estimate"] = log_estimate / math.log(10.0)


def _truth_fields(report: dict, log_true):
    if log_true is None:
        return
    if log_true == float("-inf"):
        report["true_unsat"] = True
    else:
        report["log10_true"] = log_true / math.log(10.0)


def _amls_result_fields(report: dict, result: AmlsResult):
    report["n_levels"] = result.n_levels
    report["levels"] = [float(v) for v in result.levels]
    report["level_factors_log"] = [float(v) for v in result.level_factors]
    report["acceptance_trace"] = [float(v) for v in result.acceptance_trace]
    report["property_evaluations"] = int(result.property_evaluations)


def _run_amls_job(job: ResolvedJob, quiet: bool) -> int:
    cfg = AmlsConfig(**job.doc["amls"], seed=job.seed)
    start = time.perf_counter()
    try:
        result = amls_run(job.model, job.prop, cfg)
    except DivergedRunError as exc:
        _write_json(
            job.out_dir / "diverged.json",
            {
                "job": "amls",
                "config": job.doc,
                "error": str(exc),
                "levels": exc.levels,
                "level_factors_log": exc.level_factors,
                "running_log_estimate": exc.log_estimate,
            },
        )
        raise
    elapsed = time.perf_counter() - start
    report = {"format_version": 1, "job": "amls", "config": job.doc, "seed": job.seed}
    _estimate_fields(report, result.log_estimate)
    _truth_fields(report, job.log_true)
    _amls_result_fields(report, result)
    report["wall_time_s"] = elapsed
    if result.counterexamples is not None:
        cx_path = job.out_dir / "counterexamples.txt"
        emit_counterexamples(result, cx_path)
        report["counterexample_file"] = cx_path.name
    else:
        report["counterexample_file"] = None
    _write_json(job.out_dir / "report.json", report)
    if not quiet:
        if result.is_unsat:
            print(f"amls: unsat below threshold after {result.n_levels} levels")
        else:
            print(f"amls: log10 estimate {result.log10_estimate:.4f} "
                  f"({result.n_levels} levels, {result.property_evaluations} evaluations)")
        print(f"report: {job.out_dir / 'report.json'}")
    return 0


def _run_naive_job(job: ResolvedJob, quiet: bool) -> int:
    params = job.doc["naive_mc"]
    rng = np.random.default_rng(job.seed)
    start = time.perf_counter()
    outcome = naive_mc(job.model, job.prop, int(params["n_samples"]), int(params["batch_size"]), rng)
    elapsed = time.perf_counter() - start
    report = {
        "format_version": 1,
        "job": "naive-mc",
        "config": job.doc,
        "seed": job.seed,
        "n_samples": int(params["n_samples"]),
        "hit_count": outcome.hit_count,
        "wall_time_s": elapsed,
    }
    _estimate_fields(report, outcome.log_estimate)
    _truth_fields(report, job.log_true)
    _write_json(job.out_dir / "report.json", report)
    if not quiet:
        if outcome.hit_count == 0:
            print(f"naive-mc: no hits in {params['n_samples']} samples")
        else:
            print(f"naive-mc: log10 estimate {outcome.log_estimate / math.log(10.0):.4f} "
                  f"({outcome.hit_count} hits)")
        print(f"report: {job.out_dir / 'report.json'}")
    return 0


def _run_sweep_job(job: ResolvedJob, quiet: bool) -> int:
    amls_params = job.doc["amls"]
    sweep = job.doc["sweep"]
    quantiles = sweep.get("quantile", [amls_params["quantile"]])
    steps_list = [int(v) for v in sweep.get("mh_steps", [amls_params["mh_steps"]])]
    chains_list = [int(v) for v in sweep.get("n_chains", [amls_params["n_chains"]])]
    radii = sweep.get("radius", [None])
    repeats = int(sweep["repeats"])

    rows = []
    cells = list(itertools.product(quantiles, steps_list, chains_list, radii))
    for cell_index, (rho, mh_steps, n_chains, radius) in enumerate(cells):
        model = job.model
        if radius is not None:
            model = build_model(job.model_section, radius=radius, reference=job.reference)
        cell_cfg = dict(amls_params)
        cell_cfg.update({"quantile": rho, "mh_steps": mh_steps, "n_chains": n_chains})
        estimates = []
        for rep in range(repeats):
            cfg = AmlsConfig(**cell_cfg, seed=_derived_seed(job.seed, cell_index, rep))
            try:
                result = amls_run(model, job.prop, cfg)
            except DivergedRunError as exc:
                _write_partial_sweep(job, rows)
                _write_json(
                    job.out_dir / "diverged.json",
                    {
                        "job": "sweep",
                        "cell_index": cell_index,
                        "repeat": rep,
                        "error": str(exc),
                        "levels": exc.levels,
                        "level_factors_log": exc.level_factors,
                    },
                )
                raise
            log10 = result.log10_estimate
            estimates.append(log10)
            rows.append((rho, mh_steps, n_chains, radius, rep, log10,
                         result.n_levels, result.property_evaluations))
        finite = [v for v in estimates if math.isfinite(v)]
        cell_report = {
            "format_version": 1,
            "job": "sweep-cell",
            "cell_index": cell_index,
            "quantile": rho,
            "mh_steps": mh_steps,
            "n_chains": n_chains,
            "radius": radius,
            "repeats": repeats,
            "log10_estimates": [v if math.isfinite(v) else None for v in estimates],
            "n_unsat": sum(1 for v in estimates if not math.isfinite(v)),
            "mean_log10": (sum(finite) / len(finite)) if finite else None,
        }
        _truth_fields(cell_report, job.log_true)
        _write_json(job.out_dir / f"cell_{cell_index:03d}.json", cell_report)
        if not quiet:
            mean = cell_report["mean_log10"]
            shown = f"{mean:.4f}" if mean is not None else "unsat"
            print(f"cell {cell_index}: rho={rho} M={mh_steps} N={n_chains} "
                  f"radius={radius} mean log10 {shown}")
    _write_partial_sweep(job, rows)
    if not quiet:
        print(f"sweep table: {job.out_dir / 'sweep_table.csv'} ({len(rows)} rows)")
    return 0


def _write_partial_sweep(job: ResolvedJob, rows):
    lines = ["rho,mh_steps,n_chains,radius,repeat,log10_estimate,n_levels,evaluations"]
    for rho, mh_steps, n_chains, radius, rep, log10, n_levels, evals in rows:
        radius_cell = "nan" if radius is None else f"{radius:.17g}"
        lines.append(
            f"{rho:.17g},{mh_steps},{n_chains},{radius_cell},{rep},"
            f"{log10:.17g},{n_levels},{evals}"
        )
    (job.out_dir / "sweep_table.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _run_selftest_job(job: ResolvedJob, quiet: bool) -> int:
    registry = named_oracles()
    amls_params = job.doc["amls"]
    outcomes = []
    all_pass = True
    for index, name in enumerate(job.doc["oracles"]):
        oracle = registry[name]
        cfg = AmlsConfig(**amls_params, seed=_derived_seed(job.seed, index))
        result = amls_run(oracle.model, oracle.prop, cfg)
        truth_unsat = oracle.log_true_prob == float("-inf")
        if truth_unsat:
            ok = result.is_unsat
            detail = "unsat sentinel" if result.is_unsat else \
                f"log10={result.log10_estimate:.4f} but truth is unsat"
        elif result.is_unsat:
            ok = False
            detail = f"unsat sentinel but truth log10={oracle.log10_true_prob:.4f}"
        else:
            diff = abs(result.log10_estimate - oracle.log10_true_prob)
            ok = diff <= SELFTEST_TOL_LOG10
            detail = (f"log10={result.log10_estimate:.4f} "
                      f"(truth {oracle.log10_true_prob:.4f}, |diff|={diff:.4f})")
        all_pass = all_pass and ok
        outcomes.append({
            "oracle": name,
            "pass": ok,
            "log10_estimate": None if result.is_unsat else result.log10_estimate,
            "log10_true": None if truth_unsat else oracle.log10_true_prob,
        })
        if not quiet:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    _write_json(
        job.out_dir / "selftest.json",
        {
            "format_version": 1,
            "job": "oracle-selftest",
            "config": job.doc,
            "all_pass": all_pass,
            "results": outcomes,
        },
    )
    return 0 if all_pass else 1


def run_job(config_path, seed=None, out_dir=None, quiet=False) -> int:
    """Execute the job declared in a config file. Returns the process exit
    status: 0 for a completed job (the unsat sentinel counts as completion),
    1 for self-test failures. Validation problems raise ConfigError and
    diverged runs raise DivergedRunError after writing a partial trace."""
    job = load_job_config(config_path, seed=seed, out_dir=out_dir)
    job.out_dir.mkdir(parents=True, exist_ok=True)
    if job.kind == "amls":
        return _run_amls_job(job, quiet)
    if job.kind == "naive-mc":
        return _run_naive_job(job, quiet)
    if job.kind == "sweep":
        return _run_sweep_job(job, quiet)
    return _run_selftest_job(job, quiet)


def _dense_layer_schema():
    return {
        "type": "object",
        "required": ["kind", "out", "in", "weights", "bias"],
        "additionalProperties": False,
        "properties": {
            "kind": {"const": "dense"},
            "out": {"type": "integer", "minimum": 1},
            "in": {"type": "integer", "minimum": 1},
            "weights": {"type": "array", "items": {"type": "number"},
                        "description": "row-major, length out*in"},
            "bias": {"type": "array", "items": {"type": "number"}},
        },
    }


def export_schemas() -> dict:
    """JSON Schema documents for the two on-disk formats."""
    number_list = {"type": "array", "minItems": 1, "items": {"type": "number"}}
    weight_schema = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "network-weights",
        "type": "object",
        "required": ["format_version", "input_dim", "layers"],
        "additionalProperties": False,
        "properties": {
            "format_version": {"const": 1},
            "input_dim": {"type": "integer", "minimum": 1},
            "layers": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "oneOf": [
                        _dense_layer_schema(),
                        {
                            "type": "object",
                            "required": ["kind"],
                            "additionalProperties": False,
                            "properties": {"kind": {"const": "relu"}},
                        },
                    ]
                },
            },
        },
    }
    model_schema = {
        "oneOf": [
            {
                "type": "object",
                "required": ["kind", "lower", "upper"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "uniform-box"},
                    "lower": number_list,
                    "upper": number_list,
                },
            },
            {
                "type": "object",
                "required": ["kind", "center", "radius"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "uniform-linf-ball"},
                    "center": {"oneOf": [number_list, {"const": "reference"}]},
                    "radius": {"type": "number", "exclusiveMinimum": 0},
                    "clip_lower": number_list,
                    "clip_upper": number_list,
                },
            },
        ]
    }
    property_schema = {
        "oneOf": [
            {
                "type": "object",
                "required": ["kind", "a", "b"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "linear-threshold"},
                    "a": number_list,
                    "b": {"type": "number"},
                },
            },
            {
                "type": "object",
                "required": ["kind", "terms"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "max-of-linear"},
                    "terms": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["a", "b"],
                            "additionalProperties": False,
                            "properties": {"a": number_list, "b": {"type": "number"}},
                        },
                    },
                },
            },
            {
                "type": "object",
                "required": ["kind", "network", "reference_input"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "adversarial-margin"},
                    "network": {"type": "string"},
                    "reference_input": number_list,
                    "true_class": {"type": "integer", "minimum": 0},
                },
            },
            {
                "type": "object",
                "required": ["kind", "name"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"const": "analytic-builtin"},
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                },
            },
        ]
    }
    amls_schema = {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "n_chains": {"type": "integer", "minimum": 1},
            "mh_steps": {"type": "integer", "minimum": 1},
            "quantile": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
            "log_p_min": {"type": "number", "exclusiveMaximum": 0},
            "proposal_width_init": {"type": ["number", "null"], "exclusiveMinimum": 0},
            "accept_target": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
            "width_shrink": {"type": "number", "exclusiveMinimum": 0},
            "width_grow": {"type": "number", "exclusiveMinimum": 0},
            "adapt_widths": {"type": "boolean"},
            "max_levels": {"type": ["integer", "null"], "minimum": 1},
        },
    }
    config_schema = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "job-config",
        "type": "object",
        "required": ["format_version", "job"],
        "properties": {
            "format_version": {"const": 1},
            "job": {"enum": list(JOB_KINDS)},
            "seed": {"type": "integer", "minimum": 0},
            "output_dir": {"type": "string"},
            "problem": {"type": "string"},
            "model": model_schema,
            "property": property_schema,
            "amls": amls_schema,
            "naive_mc": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "n_samples": {"type": "integer", "minimum": 1},
                    "batch_size": {"type": "integer", "minimum": 1},
                },
            },
            "sweep": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "quantile": number_list,
                    "mh_steps": number_list,
                    "n_chains": number_list,
                    "radius": number_list,
                    "repeats": {"type": "integer", "minimum": 1},
                },
            },
            "oracles": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        },
    }
    return {"job_config": config_schema, "network_weights": weight_schema}
