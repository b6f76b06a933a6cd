"""Batch experiment runner.

Every subcommand reads an optional JSON config file, applies flag
overrides, runs the computation, and writes a deterministic output file
(JSON or CSV) that embeds the resolved configuration and the package
version.  Exit codes: 0 success, 1 a verification check failed (or a
degenerate system was hit), 2 usage or config error.
"""

import argparse
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .cfuncs import cspec_to_json, parse_cspec, polynomial_degree
from .errors import DegeneracyError, DomainError
from .hyperoctahedral import check_weight, dominant_weights_in_box, min_gap
from .innerproduct import cached_delta, default_truncation_order, gram_matrix, stability_probe
from .orthosys import (
    DOMINANCE,
    asymptotic_error,
    biorthogonality_check,
    decay_fit,
    monic_orthogonal,
    orthogonality_scan,
    truncated_asymptotic,
    verify_exact,
)
from .rational import rat_str


class ConfigError(Exception):
    pass


def _parse_weight(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad weight {text!r}: {exc}") from exc


def _decimal(value, digits: int) -> str:
    return format(float(value), f".{digits}g")


def _rational_obj(value, digits: int) -> dict:
    return {"rational": rat_str(value), "decimal": _decimal(value, digits)}


def _coords_list(coords: dict, digits: int) -> list:
    return [
        {"mu": list(mu), **_rational_obj(c, digits)}
        for mu, c in sorted(coords.items())
    ]


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    return obj


def _resolve(args, config):
    """Merge config-file fields with flag overrides into one dict."""
    merged = dict(config)
    for key in ("n", "k", "k_step", "ordering", "m", "m_ref", "l_max",
                "lam_max", "digits", "tol", "output", "jobs"):
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    if getattr(args, "lam", None):
        merged["lambda"] = [_parse_weight(w) for w in args.lam]
    elif "lambda" in merged:
        raw = merged["lambda"]
        if raw and isinstance(raw[0], int):
            raw = [raw]
        merged["lambda"] = [tuple(w) for w in raw]
    if args.spec_json is not None:
        try:
            merged["spec"] = json.loads(args.spec_json)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad --spec-json: {exc}") from exc
    if "spec" not in merged:
        raise ConfigError("no c-function spec given (config 'spec' or --spec-json)")
    try:
        merged["spec"] = parse_cspec(merged["spec"])
    except DomainError as exc:
        raise ConfigError(f"in field 'spec': {exc}") from exc
    merged.setdefault("digits", 15)
    merged.setdefault("ordering", DOMINANCE)
    merged.setdefault("jobs", 1)
    if "n" not in merged:
        lams = merged.get("lambda")
        if not lams:
            raise ConfigError("dimension N not given and no weight to infer it from")
        merged["n"] = len(lams[0])
    merged.setdefault("k", default_truncation_order(merged["n"]))
    for lam in merged.get("lambda", []):
        try:
            check_weight(lam)
        except Exception as exc:
            raise ConfigError(f"bad weight {lam}: {exc}") from exc
        if len(lam) != merged["n"]:
            raise ConfigError(f"weight {lam} does not have N={merged['n']} parts")
    return merged


def _weight_box(cfg) -> list:
    if cfg.get("lambda"):
        return sorted(cfg["lambda"])
    lam_max = cfg.get("lam_max")
    if lam_max is None:
        raise ConfigError("need either explicit weights (--lam) or --lam-max")
    return dominant_weights_in_box(cfg["n"], lam_max)


def _config_json(cfg) -> dict:
    out = {}
    for key, v in cfg.items():
        if key in ("jobs", "output"):
            # execution details; keeping them out makes outputs
            # byte-identical across thread counts and target paths
            continue
        if key == "spec":
            out[key] = cspec_to_json(v)
        elif key == "lambda":
            out[key] = [list(w) for w in v]
        else:
            out[key] = v
    return out


def _emit_json(cfg, payload) -> str:
    doc = {"version": __version__, "config": _config_json(cfg), **payload}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit_csv(cfg, header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# version={__version__}\n")
    buf.write("# config=" + json.dumps(_config_json(cfg), sort_keys=True) + "\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(str(c) for c in row) + "\n")
    return buf.getvalue()


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _parallel_map(fn, items, jobs):
    """Order-preserving map; results never depend on completion order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _cmd_ortho(cfg) -> int:
    delta = cached_delta(cfg["spec"], cfg["n"], cfg["k"])
    weights = _weight_box(cfg)
    digits = cfg["digits"]

    def one(lam):
        p = monic_orthogonal(lam, delta, cfg["ordering"])
        return {
            "lambda": list(lam),
            "coords": _coords_list(p.coords, digits),
            "norm_sq": _rational_obj(p.norm_sq, digits),
        }

    results = _parallel_map(one, weights, cfg["jobs"])
    _write(cfg.get("output"), _emit_json(cfg, {"results": results}))
    return 0


def _cmd_asym(cfg) -> int:
    weights = _weight_box(cfg)
    digits = cfg["digits"]
    if "m" not in cfg:
        raise ConfigError("asym needs a truncation level m")

    def one(lam):
        a = truncated_asymptotic(lam, cfg["m"], cfg["spec"])
        return {
            "lambda": list(lam),
            "m": a.m,
            "coords": _coords_list(a.coords, digits),
        }

    results = _parallel_map(one, weights, cfg["jobs"])
    _write(cfg.get("output"), _emit_json(cfg, {"results": results}))
    return 0


def _cmd_exact(cfg) -> int:
    if polynomial_degree(cfg["spec"]) is None:
        raise ConfigError("exact requires a polynomial c-function family")
    delta = cached_delta(cfg["spec"], cfg["n"], cfg["k"])
    tol = cfg.get("tol", 1e-8)
    deg = polynomial_degree(cfg["spec"])
    weights = [w for w in _weight_box(cfg) if min_gap(w) >= deg - 1]
    reports = _parallel_map(
        lambda lam: verify_exact(lam, cfg["spec"], delta, tol=tol),
        weights, cfg["jobs"],
    )
    digits = cfg["digits"]
    rows = [
        (
            '"' + " ".join(map(str, r.lam)) + '"',
            r.cutoff_degree,
            _decimal(r.max_coord_dev, digits),
            r.norm_checked,
            _decimal(r.norm_dev, digits),
            "pass" if r.passed else "FAIL",
        )
        for r in reports
    ]
    header = ["lambda", "cutoff_degree", "max_coord_dev", "norm_checked", "norm_dev", "status"]
    _write(cfg.get("output"), _emit_csv(cfg, header, rows))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_biortho(cfg) -> int:
    delta = cached_delta(cfg["spec"], cfg["n"], cfg["k"])
    weights = _weight_box(cfg)
    digits = cfg["digits"]

    def one(lam):
        m = cfg.get("m", min_gap(lam))
        return biorthogonality_check(lam, m, delta, cfg["spec"])

    reports = _parallel_map(one, weights, cfg["jobs"])
    rows = [
        (
            '"' + " ".join(map(str, r.lam)) + '"',
            r.m,
            r.m_eval,
            _decimal(r.max_deviation, digits),
        )
        for r in reports
    ]
    header = ["lambda", "m", "m_eval", "max_deviation"]
    _write(cfg.get("output"), _emit_csv(cfg, header, rows))
    tol = cfg.get("tol")
    worst = max((r.max_deviation for r in reports), default=0.0)
    return 0 if tol is None or worst <= tol else 1


def _cmd_decay_ray(cfg) -> int:
    lams = cfg.get("lambda")
    if not lams or len(lams) != 1:
        raise ConfigError("decay-ray needs exactly one base weight (--lam)")
    base = lams[0]
    if min_gap(base) < 1:
        raise ConfigError(f"base weight {base} is not strongly dominant")
    l_max = cfg.get("l_max")
    if l_max is None:
        raise ConfigError("decay-ray needs --l-max")
    n, digits = cfg["n"], cfg["digits"]
    delta = cached_delta(cfg["spec"], n, cfg["k"])

    def one(ell):
        lam = tuple(ell * a for a in base)
        m = min_gap(lam)
        m_ref = cfg.get("m_ref", m + 10)
        return ell, asymptotic_error(lam, cfg["spec"], delta, m, m_ref=m_ref)

    results = _parallel_map(one, range(1, l_max + 1), cfg["jobs"])
    rows = [
        (
            ell,
            '"' + " ".join(map(str, r.lam)) + '"',
            r.m_used,
            r.m_ref,
            _decimal(r.err_norm, digits),
            r.exact_zero,
            _decimal(r.n_lambda, digits),
            _decimal(r.asym_norm, digits),
        )
        for ell, r in results
    ]
    header = ["l", "lambda", "m", "m_ref", "err_norm", "exact_zero", "n_lambda", "asym_norm"]
    out = cfg.get("output")
    _write(out and out + ".csv", _emit_csv(cfg, header, rows))

    points = [(ell, r.err_norm) for ell, r in results]
    summary = {}
    try:
        raw = decay_fit(points)
        compensated = decay_fit(
            [(x, e * x ** (-n)) for x, e in points if e > 0]
        )
        summary["raw_slope"] = raw.slope
        summary["raw_residual"] = raw.residual
        summary["compensated_slope"] = compensated.slope
        summary["compensated_residual"] = compensated.residual
        summary["exact_zero_points"] = list(raw.exact_zero_points)
    except ValueError as exc:
        summary["fit_error"] = str(exc)
    summary["points"] = [
        {"l": ell, "err_norm": _decimal(r.err_norm, digits)} for ell, r in results
    ]
    _write(out and out + ".json", _emit_json(cfg, {"summary": summary}))
    return 0


def _cmd_ortho_scan(cfg) -> int:
    delta = cached_delta(cfg["spec"], cfg["n"], cfg["k"])
    weights = _weight_box(cfg)
    scan = orthogonality_scan(weights, delta, cfg["ordering"])
    digits = cfg["digits"]
    rows = [
        (
            '"' + " ".join(map(str, lam)) + '"',
            '"' + " ".join(map(str, mu)) + '"',
            _decimal(dev, digits),
        )
        for (lam, mu), dev in sorted(scan.deviations.items())
    ]
    header = ["lambda", "mu", "abs_inner_product"]
    _write(cfg.get("output"), _emit_csv(cfg, header, rows))
    tol = cfg.get("tol")
    return 0 if tol is None or scan.max_deviation <= tol else 1


def _cmd_gram(cfg) -> int:
    lams = cfg.get("lambda")
    if not lams or len(lams) != 1:
        raise ConfigError("gram needs exactly one weight (--lam)")
    delta = cached_delta(cfg["spec"], cfg["n"], cfg["k"])
    basis, rows = gram_matrix(lams[0], delta)
    header = ["mu\\nu"] + ['"' + " ".join(map(str, nu)) + '"' for nu in basis]
    out_rows = [
        ['"' + " ".join(map(str, mu)) + '"'] + [rat_str(v) for v in row]
        for mu, row in zip(basis, rows)
    ]
    _write(cfg.get("output"), _emit_csv(cfg, header, out_rows))
    return 0


def _cmd_stability(cfg) -> int:
    lams = cfg.get("lambda")
    if not lams or len(lams) != 1:
        raise ConfigError("stability needs exactly one weight (--lam)")
    report = stability_probe(
        lams[0], cfg["spec"], cfg["n"], cfg["k"], cfg.get("k_step", 10)
    )
    payload = {
        "report": {
            "lambda": list(report.lam),
            "k": report.k,
            "k_step": report.k_step,
            "max_abs_diff": _decimal(report.max_abs_diff, cfg["digits"]),
            "entries": report.entries,
        }
    }
    _write(cfg.get("output"), _emit_json(cfg, payload))
    tol = cfg.get("tol")
    return 0 if tol is None or report.max_abs_diff <= tol else 1


_COMMANDS = {
    "ortho": _cmd_ortho,
    "asym": _cmd_asym,
    "exact": _cmd_exact,
    "biortho": _cmd_biortho,
    "decay-ray": _cmd_decay_ray,
    "ortho-scan": _cmd_ortho_scan,
    "gram": _cmd_gram,
    "stability": _cmd_stability,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcortho",
        description="Exact experiments with hyperoctahedral orthogonal polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--spec-json", help="inline c-function spec (JSON)")
        p.add_argument("--n", type=int, help="number of variables")
        p.add_argument("--k", type=int, help="weight truncation order K")
        p.add_argument("--lam", action="append",
                       help="weight as comma-separated integers; repeatable")
        p.add_argument("--lam-max", dest="lam_max", type=int,
                       help="use all dominant weights with first part <= this")
        p.add_argument("--m", type=int, help="asymptotic truncation level")
        p.add_argument("--m-ref", dest="m_ref", type=int, help="reference level")
        p.add_argument("--l-max", dest="l_max", type=int, help="largest ray multiple")
        p.add_argument("--k-step", dest="k_step", type=int, help="stability probe step")
        p.add_argument("--ordering", choices=["dominance", "lexicographic"])
        p.add_argument("--tol", type=float, help="failure threshold for checks")
        p.add_argument("--digits", type=int, help="decimal digits in reports")
        p.add_argument("--jobs", type=int, help="worker threads over independent weights")
        p.add_argument("--output", help="output path (decay-ray: path prefix)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _resolve(args, _load_config(args.config))
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DegeneracyError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
