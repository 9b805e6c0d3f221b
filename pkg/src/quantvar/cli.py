"""Config-driven experiment runner.

A run reads one YAML document naming an experiment kind, its parameters
and an output target, executes the experiment, writes the report and exits
0 if every check passed, 1 if any check failed, and 2 on a config problem.
Reports are plain JSON (structured) or flat CSV rows (setting, term,
value); identical config and seed produce byte-identical files for any
worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional

import yaml

from . import born, experiments
from .rng import RngStream
from .varlattice import Variable, system_from_document

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2

KNOWN_KINDS = (
    "spin_monte_carlo",
    "epr_bohm",
    "chsh",
    "born_table",
    "variable_system_check",
)

FORMATS = ("structured", "csv")


class ConfigError(Exception):
    pass


def load_config(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must be a mapping")
    return doc


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _check_seed(params: dict, violations: list[str]) -> None:
    seed = params.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        violations.append("parameters.seed must be a nonnegative integer")


def _check_samples(params: dict, violations: list[str], minimum: int = 1) -> None:
    samples = params.get("samples")
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < minimum:
        violations.append(f"parameters.samples must be an integer >= {minimum}")


def _validate_likelihood(table: dict, violations: list[str]) -> None:
    data_values = table.get("data_values")
    variable_values = table.get("variable_values")
    rows = table.get("rows")
    if not isinstance(data_values, list) or not all(_is_number(z) for z in data_values):
        violations.append("likelihood.data_values must be a list of numbers")
        return
    if not isinstance(variable_values, list) or sorted(variable_values) != [-1, 1]:
        violations.append("likelihood.variable_values must be the two spin values [-1, 1]")
        return
    if not isinstance(rows, list) or len(rows) != len(data_values):
        violations.append("likelihood.rows must have one row per data value")
        return
    for r in rows:
        if not isinstance(r, list) or len(r) != len(variable_values):
            violations.append("likelihood.rows must be rectangular over the variable values")
            return
        if not all(_is_number(x) and 0.0 <= x <= 1.0 for x in r):
            violations.append("likelihood entries must lie in [0, 1]")
            return
    for j in range(len(variable_values)):
        total = sum(r[j] for r in rows)
        if abs(total - 1.0) > 1e-12:
            violations.append(f"likelihood column {j} sums to {total}, expected 1")


def validate_document(doc: dict, base_dir: Path) -> list[str]:
    """All schema violations of a config document, without executing."""
    violations: list[str] = []
    kind = doc.get("kind")
    if kind not in KNOWN_KINDS:
        violations.append(f"unknown experiment kind: {kind!r}")
        return violations
    output = doc.get("output")
    if not isinstance(output, dict) or not isinstance(output.get("path"), str):
        violations.append("output.path must be a string")
    elif output.get("format", "structured") not in FORMATS:
        violations.append(f"output.format must be one of {FORMATS}")
    params = doc.get("parameters")
    if params is None:
        params = {}
    if not isinstance(params, dict):
        violations.append("parameters must be a mapping")
        return violations

    if kind == "spin_monte_carlo":
        _check_samples(params, violations)
        _check_seed(params, violations)
        dimension = params.get("dimension", 2)
        if dimension not in (2, 3):
            violations.append("parameters.dimension must be 2 or 3")
        elif dimension == 2:
            angles = params.get("directions_deg")
            if not isinstance(angles, list) or not angles or not all(
                _is_number(a) for a in angles
            ):
                violations.append("parameters.directions_deg must be a nonempty list of numbers")
        else:
            dirs = params.get("directions")
            ok = isinstance(dirs, list) and dirs
            if ok:
                for v in dirs:
                    if not (isinstance(v, list) and len(v) == 3 and all(_is_number(x) for x in v)):
                        ok = False
                        break
                    norm = sum(float(x) ** 2 for x in v) ** 0.5
                    if abs(norm - 1.0) > 1e-12:
                        ok = False
                        break
            if not ok:
                violations.append("parameters.directions must be a nonempty list of unit 3-vectors")
    elif kind == "epr_bohm":
        count = params.get("direction_count", 8)
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            violations.append("parameters.direction_count must be a positive integer")
    elif kind == "chsh":
        _check_samples(params, violations, minimum=1000)
        _check_seed(params, violations)
        angles = params.get("angles_deg")
        if not isinstance(angles, dict):
            violations.append("parameters.angles_deg must be a mapping with a, a_prime, b, b_prime")
        else:
            for key in ("a", "a_prime", "b", "b_prime"):
                value = angles.get(key)
                if not _is_number(value) or not (0.0 <= float(value) < 360.0):
                    violations.append(f"parameters.angles_deg.{key} must be a number in [0, 360)")
    elif kind == "born_table":
        if not _is_number(params.get("preparation_angle_deg")):
            violations.append("parameters.preparation_angle_deg must be a number")
        angles = params.get("measurement_angles_deg")
        if not isinstance(angles, list) or not angles or not all(_is_number(a) for a in angles):
            violations.append(
                "parameters.measurement_angles_deg must be a nonempty list of numbers"
            )
        likelihood = params.get("likelihood")
        if likelihood is not None:
            if not isinstance(likelihood, dict):
                violations.append("parameters.likelihood must be a mapping")
            else:
                _validate_likelihood(likelihood, violations)
    elif kind == "variable_system_check":
        builtin = params.get("builtin")
        system_file = params.get("system_file")
        if builtin is not None:
            if builtin != "sign_pairs":
                violations.append(f"unknown builtin system: {builtin!r}")
        elif system_file is not None:
            if not isinstance(system_file, str):
                violations.append("parameters.system_file must be a path string")
            elif not (base_dir / system_file).exists():
                violations.append(f"referenced file does not exist: {system_file}")
            for key in ("theta", "eta", "lambda"):
                if not isinstance(params.get(key), str):
                    violations.append(f"parameters.{key} must name a variable in the system file")
        else:
            violations.append("variable_system_check needs either builtin or system_file")
    return violations


def _likelihood_from_config(table: dict) -> born.LikelihoodModel:
    return born.LikelihoodModel(
        data_values=tuple(float(z) for z in table["data_values"]),
        variable_values=tuple(float(u) for u in table["variable_values"]),
        table=[[float(x) for x in row] for row in table["rows"]],
    )


def _system_variables(doc: dict, system) -> dict[str, Variable]:
    named = {g.name: g for g in system.generators}
    for entry in doc.get("variables", []):
        v = Variable(
            name=str(entry["name"]), space=system.phi, values=dict(entry["values"])
        )
        named[v.name] = v
    return named


def build_report(doc: dict, base_dir: Path, workers: int = 1) -> experiments.ExperimentReport:
    """Execute the experiment named by a validated config document."""
    kind = doc["kind"]
    params = doc.get("parameters") or {}
    if kind == "spin_monte_carlo":
        dimension = params.get("dimension", 2)
        if dimension == 2:
            model = experiments.SpinModel.from_angles_deg(params["directions_deg"])
        else:
            model = experiments.SpinModel(
                dimension=3,
                directions=tuple(tuple(float(x) for x in v) for v in params["directions"]),
            )
        rng = RngStream(seed=params.get("seed", 0))
        return experiments.spin_monte_carlo_report(
            model, params["samples"], rng, workers=workers
        )
    if kind == "epr_bohm":
        return experiments.epr_bohm_report(params.get("direction_count", 8))
    if kind == "chsh":
        angles = params["angles_deg"]
        setting = experiments.ChshSetting(
            a=float(angles["a"]),
            a_prime=float(angles["a_prime"]),
            b=float(angles["b"]),
            b_prime=float(angles["b_prime"]),
        )
        rng = RngStream(seed=params.get("seed", 0))
        return experiments.chsh_report(setting, params["samples"], rng, workers=workers)
    if kind == "born_table":
        likelihood = params.get("likelihood")
        model = _likelihood_from_config(likelihood) if likelihood else None
        return experiments.born_table_report(
            float(params["preparation_angle_deg"]),
            [float(a) for a in params["measurement_angles_deg"]],
            model,
        )
    if kind == "variable_system_check":
        if params.get("builtin") == "sign_pairs":
            return experiments.exclusion_demo()
        system_doc = yaml.safe_load((base_dir / params["system_file"]).read_text("utf-8"))
        system = system_from_document(system_doc)
        named = _system_variables(system_doc, system)
        try:
            triple = [named[params[k]] for k in ("theta", "eta", "lambda")]
        except KeyError as exc:
            raise ConfigError(f"variable {exc} not found in the system document") from exc
        return experiments.variable_system_report(system, *triple)
    raise ConfigError(f"unknown experiment kind: {kind!r}")


def _flatten(prefix: str, value, rows: list[tuple[str, float]]) -> None:
    if isinstance(value, bool):
        rows.append((prefix, float(value)))
    elif isinstance(value, (int, float)):
        rows.append((prefix, float(value)))
    elif isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)


def _setting_label(inputs: dict) -> str:
    rows: list[tuple[str, float]] = []
    _flatten("", inputs, rows)
    return ";".join(f"{k}={v:g}" for k, v in rows)


def write_structured(report: experiments.ExperimentReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report.to_document(), sort_keys=True, indent=2)
    path.write_text(text + "\n", encoding="utf-8")


def write_csv(report: experiments.ExperimentReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    setting = _setting_label(report.inputs)
    rows: list[tuple[str, float]] = []
    _flatten("", report.results, rows)
    for check in report.checks:
        if check.observed is not None:
            rows.append((f"check.{check.name}", float(check.observed)))
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["setting", "term", "value"])
        for term, value in rows:
            writer.writerow([setting, term, repr(value)])


def run_config(
    config_path: Path,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    output_dir: Optional[Path] = None,
    output_format: Optional[str] = None,
    workers: int = 1,
) -> int:
    try:
        doc = load_config(config_path)
        base_dir = config_path.parent
        if seed is not None:
            doc.setdefault("parameters", {})["seed"] = seed
        if samples is not None:
            doc.setdefault("parameters", {})["samples"] = samples
        violations = validate_document(doc, base_dir)
        if violations:
            for v in violations:
                print(f"config error: {v}", file=sys.stderr)
            return EXIT_CONFIG
        report = build_report(doc, base_dir, workers=workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_path = Path(doc["output"]["path"])
    if output_dir is not None:
        out_path = output_dir / out_path.name
    fmt = output_format or doc["output"].get("format", "structured")
    if fmt == "csv":
        write_csv(report, out_path)
    else:
        write_structured(report, out_path)
    if not report.passed:
        for name in report.failed_checks():
            print(f"check failed: {name}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def validate_config(config_path: Path) -> int:
    try:
        doc = load_config(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    violations = validate_document(doc, config_path.parent)
    for v in violations:
        print(v)
    return EXIT_OK if not violations else EXIT_CONFIG


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="quantvar", description="config-driven experiment runner"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="execute an experiment config")
    run_parser.add_argument("--config", required=True, type=Path)
    run_parser.add_argument("--seed", type=int, default=None)
    run_parser.add_argument("--samples", type=int, default=None)
    run_parser.add_argument("--output", type=Path, default=None, help="report directory")
    run_parser.add_argument("--format", choices=FORMATS, default=None)
    run_parser.add_argument("--workers", type=int, default=1)

    validate_parser = sub.add_parser("validate", help="check a config without running")
    validate_parser.add_argument("--config", required=True, type=Path)

    args = parser.parse_args(argv)
    if args.command == "run":
        return run_config(
            args.config,
            seed=args.seed,
            samples=args.samples,
            output_dir=args.output,
            output_format=args.format,
            workers=args.workers,
        )
    return validate_config(args.config)


if __name__ == "__main__":
    raise SystemExit(main())
