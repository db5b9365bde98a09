"""Command-line front end: bound, table1, curves, verify, sweep.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
Output is deterministic for a given configuration and seed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    PI2_OVER_4,
    BoundKind,
    BoundResult,
    L_r,
    argmin_L,
    chebyshev_threshold,
    d1,
    d2,
    d3,
    glb,
    glb_chebyshev,
    glb_cosine_asymptotic,
    glb_cosine_exact,
    glb_sine,
    glb_sine_asymptotic,
    glb_sine_best,
    glb_step,
    glb_step_best,
    k_bar,
    k_bar_asymptotic,
    min_L,
    welch_bound,
)
from .circulant import ConsistencyError, QcssParams, spectrum_closed_form, spectrum_dft
from .optimizer import local_min_check
from .seqlab import golay_pcss, random_qcss, read_sequence_set, tolerances, verify_bounds
from .weights import FAMILIES, WeightFamily, read_weight_file, validate_simplex

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "QCSS_BOUNDS_THREADS"

BOUND_KINDS = [k.value for k in BoundKind if k not in (BoundKind.GLB_GENERAL, BoundKind.GLB_SIMPLIFIED)]
SWEEP_FAMILIES = ("chebyshev", "cosine", "sine", "step")

BOUND_COLUMNS = ["K", "M", "N", "kind", "family", "family_param", "value", "welch",
                 "ratio_to_welch", "ratio_to_welch_full", "valid", "rigorous", "notes"]
CURVE_L_COLUMNS = ["r", "L", "pi2_over_4"]
CURVE_D_COLUMNS = ["M", "k_bar_inf", "d1", "d2", "d3"]
SWEEP_COLUMNS = ["M", "K", "family", "N", "K_over_M", "k_bar", "welch", "bound", "family_param",
                 "valid", "beats_welch", "ratio_to_welch"]
TABLE1_ROWS = ["K", "BW", "B1", "B2", "B3", "B1/BW", "B2/BW", "B3/BW", "B2_m"]

SCHEMAS = {"bound": "bound.schema.json", "table1": "table1.schema.json", "curves": "records.schema.json",
           "sweep": "records.schema.json", "verify": "verify.schema.json"}

# store_true flags; a config value of true/1/yes switches them on
_BOOL_KEYS = {"local_min"}


class UsageError(Exception):
    """Bad flags or config; maps to exit code 2."""


def load_schema(command: str) -> dict:
    """The JSON schema shipped for a command's ``--format json`` output."""
    text = resources.files("qcss_bounds").joinpath("schemas", SCHEMAS[command]).read_text(encoding="utf-8")
    return json.loads(text)


# --------------------------------------------------------------------------
# argument parsing


def _int_range(text: str) -> tuple[int, int]:
    """``A:B`` inclusive, or a single integer."""
    try:
        parts = [int(x) for x in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B with integers, got {text!r}") from None
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or parts[0] > parts[1]:
        raise argparse.ArgumentTypeError(f"expected a nonempty range A:B with A <= B, got {text!r}")
    return parts[0], parts[1]


def _float_range(text: str) -> tuple[float, float, float]:
    """``a:b:step`` over K/M values."""
    try:
        parts = [float(x) for x in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}") from None
    if len(parts) != 3 or parts[2] <= 0 or parts[0] > parts[1] or parts[0] <= 0:
        raise argparse.ArgumentTypeError(f"expected 0 < a <= b and step > 0, got {text!r}")
    return parts[0], parts[1], parts[2]


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _common(p: argparse.ArgumentParser, formats=("csv", "json")):
    p.add_argument("--config", type=Path, help="key = value file; command-line flags win")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)


def _params_flags(p: argparse.ArgumentParser):
    p.add_argument("--M", type=int, help="channel count (rows per matrix)")
    p.add_argument("--N", type=int, help="sequence length")
    p.add_argument("--K", type=int, help="set size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcss-bounds",
        description="Welch and generalized Levenshtein bounds for quasi-complementary sequence sets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("bound", help="evaluate bounds at one (K, M, N)")
    _params_flags(p)
    p.add_argument("--kind", choices=BOUND_KINDS + ["all"],
                   help="closed-form bound to report (default: all, unless a weight is given)")
    p.add_argument("--weight", choices=FAMILIES, help="evaluate the GLB functional at this weight family")
    p.add_argument("--m", type=int, help="family width for step, sine or chebyshev")
    p.add_argument("--j", type=int, help="cyclic rotation of the cosine weight")
    p.add_argument("--weight-file", type=Path, help="weight vector, one value per line")
    _common(p)

    p = sub.add_parser("table1", help="ratios of the three weight bounds to Welch at K = K-bar + 1")
    p.add_argument("--N", type=int, default=2048)
    p.add_argument("--M-range", type=_int_range, default=(2, 25))
    _common(p)

    p = sub.add_parser("curves", help="plot data for L(r) or the margins d1, d2, d3")
    p.add_argument("--curve", choices=("L", "d"), default="L")
    p.add_argument("--points", type=_positive_int, default=1000, help="interior grid points on (0, 2)")
    p.add_argument("--M-range", type=_int_range, default=(2, 100))
    _common(p)

    p = sub.add_parser("verify", help="property checks; exit 1 on any violation")
    _params_flags(p)
    p.add_argument("--local-min", action="store_true", help="probe local minimality of the cosine weight")
    p.add_argument("--trials", type=_positive_int, default=10_000)
    p.add_argument("--norm-cap", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative tolerance on f(w+e) - f(w) for --local-min")
    p.add_argument("--sets", type=_positive_int, default=20, help="random sets in the sandwich check")
    p.add_argument("--weight-file", type=Path, help="check a weight vector (needs --N)")
    p.add_argument("--set-file", type=Path, help="check every bound against a sequence set file")
    _common(p, formats=("json",))

    p = sub.add_parser("sweep", help="which weight families beat Welch over a (M, K) grid")
    p.add_argument("--M-range", type=_int_range, default=(2, 8))
    p.add_argument("--N", type=int, default=64)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--K-range", type=_int_range)
    group.add_argument("--ratio-range", type=_float_range, help="K/M values a:b:step")
    group.add_argument("--kbar-offsets", type=_int_list, help="K = K-bar + offset, comma-separated")
    _common(p)
    return parser


def _config_tokens(path: Path) -> list[str]:
    """Turn ``key = value`` lines into ``--key=value`` tokens."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key in ("config", "command"):
            raise UsageError(f"{path}:{lineno}: {key!r} cannot be set from a config file")
        if key.replace("-", "_") in _BOOL_KEYS:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(f"--{key}")
            elif value.lower() not in ("0", "false", "no", "off"):
                raise UsageError(f"{path}:{lineno}: {key} expects true or false, got {value!r}")
            continue
        tokens.append(f"--{key}={value}")
    return tokens


def parse_args(argv: list[str]) -> argparse.Namespace:
    """Parse flags; a ``--config`` file is parsed first so flags override it."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is None:
        return args
    tokens = _config_tokens(args.config)
    # config tokens go right after the command name; later flags win in argparse
    pos = argv.index(args.command)
    return parser.parse_args(argv[:pos + 1] + tokens + argv[pos + 1:])


# --------------------------------------------------------------------------
# output


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_cell(v)}" for k, v in value.items())
    if value is None:
        return ""
    return str(value)


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _emit_table(args, command: str, columns: list[str], rows: list[dict], extra: dict | None = None):
    if args.format == "csv":
        _emit(_csv_text(columns, rows), args.out)
    else:
        doc = {"command": command, "columns": columns, "rows": rows}
        doc.update(extra or {})
        _emit(_json_text(doc), args.out)


def _ratio4(x: float) -> str:
    return f"{x:.4f}"


# --------------------------------------------------------------------------
# bound


def _require_params(args) -> QcssParams:
    missing = [name for name in ("K", "M", "N") if getattr(args, name) is None]
    if missing:
        raise UsageError(f"missing --{', --'.join(missing)}")
    try:
        return QcssParams(args.K, args.M, args.N)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _closed_form(params: QcssParams, kind: str, m: int | None) -> BoundResult:
    if kind == "welch":
        return welch_bound(params)
    if kind == "glb_step":
        return glb_step(params, m) if m is not None else glb_step_best(params)
    if kind == "glb_cosine_exact":
        return glb_cosine_exact(params)
    if kind == "glb_cosine_asymptotic":
        return glb_cosine_asymptotic(params)
    if kind == "glb_sine":
        return glb_sine(params, m) if m is not None else glb_sine_best(params)
    if kind == "glb_sine_asymptotic":
        return glb_sine_asymptotic(params)
    if kind == "glb_chebyshev":
        return glb_chebyshev(params)
    raise UsageError(f"unknown bound kind {kind!r}")


def _bound_row(res: BoundResult, welch: float, family: str = "") -> dict:
    ratio = res.value / welch if welch > 0 else math.nan
    p = res.params
    return {
        "K": p.K, "M": p.M, "N": p.N,
        "kind": res.kind.value,
        "family": family,
        "family_param": dict(res.family_param),
        "value": res.value,
        "welch": welch,
        "ratio_to_welch": _ratio4(ratio) if math.isfinite(ratio) else None,
        "ratio_to_welch_full": ratio if math.isfinite(ratio) else None,
        "valid": res.valid,
        "rigorous": res.rigorous,
        "notes": res.validity_notes,
    }


def cmd_bound(args) -> int:
    params = _require_params(args)
    if args.weight and args.weight_file:
        raise UsageError("--weight and --weight-file are mutually exclusive")
    if (args.weight or args.weight_file) and args.kind:
        raise UsageError("--kind selects a closed form; drop it when evaluating a weight")
    welch = welch_bound(params)
    results: list[tuple[BoundResult, str]] = [(welch, "")]
    if args.weight_file:
        w = read_weight_file(args.weight_file, params.N)
        results.append((glb(params, w, {"file": str(args.weight_file)}), "file"))
    elif args.weight:
        param = args.j if args.weight == "cosine" else args.m
        family = WeightFamily(args.weight, param)
        key = "j" if args.weight == "cosine" else "m"
        fp = {key: param} if param is not None else {}
        results.append((glb(params, family.build(params), fp), family.label()))
    else:
        kinds = BOUND_KINDS if args.kind in (None, "all") else [args.kind]
        results.extend((_closed_form(params, k, args.m), "") for k in kinds if k != "welch")
    rows = [_bound_row(res, welch.value, fam) for res, fam in results]
    _emit_table(args, "bound", BOUND_COLUMNS, rows)
    return EXIT_OK


# --------------------------------------------------------------------------
# table1


def table1_records(N: int = 2048, M_range: tuple[int, int] = (2, 25)) -> list[dict]:
    """One record per M at ``K = K-bar(M, N) + 1`` with raw bounds and ratios."""
    out = []
    for M in range(M_range[0], M_range[1] + 1):
        params = QcssParams(k_bar(M, N) + 1, M, N)
        bw = welch_bound(params).value
        b1 = glb_cosine_exact(params).value
        sine = glb_sine_best(params)
        b3 = glb_chebyshev(params).value
        out.append({
            "M": M, "K": params.K, "BW": bw, "B1": b1, "B2": sine.value, "B3": b3,
            "B1/BW": b1 / bw, "B2/BW": sine.value / bw, "B3/BW": b3 / bw,
            "B2_m": sine.family_param.get("m"),
        })
    return out


def cmd_table1(args) -> int:
    if args.N is None or args.N < 2:
        raise UsageError("--N must be >= 2")
    if args.M_range[0] < 2:
        raise UsageError("--M-range must start at M >= 2")
    recs = table1_records(args.N, args.M_range)
    if args.format == "csv":
        columns = ["row"] + [f"M={r['M']}" for r in recs]
        rows = []
        for name in TABLE1_ROWS:
            row = {"row": name}
            for r in recs:
                v = r[name]
                row[f"M={r['M']}"] = _ratio4(v) if "/" in name else v
            rows.append(row)
        _emit(_csv_text(columns, rows), args.out)
    else:
        for r in recs:
            for name in ("B1/BW", "B2/BW", "B3/BW"):
                r[name + "_4dp"] = _ratio4(r[name])
        _emit(_json_text({"command": "table1", "N": args.N, "rows": recs}), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# curves


def cmd_curves(args) -> int:
    if args.curve == "L":
        r = np.linspace(0.0, 2.0, args.points + 2)[1:-1]
        values = L_r(r)
        rows = [{"r": float(x), "L": float(y), "pi2_over_4": PI2_OVER_4} for x, y in zip(r, values)]
        extra = {"min_L": min_L(), "argmin_L": argmin_L(), "chebyshev_threshold": chebyshev_threshold()}
        _emit_table(args, "curves", CURVE_L_COLUMNS, rows, extra)
    else:
        lo, hi = args.M_range
        if lo < 2:
            raise UsageError("--M-range must start at M >= 2")
        M = np.arange(lo, hi + 1)
        rows = [{"M": int(m), "k_bar_inf": k_bar_asymptotic(int(m)), "d1": float(a), "d2": float(b),
                 "d3": float(c)} for m, a, b, c in zip(M, d1(M), d2(M), d3(M))]
        _emit_table(args, "curves", CURVE_D_COLUMNS, rows)
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def rigorous_bounds(params: QcssParams) -> list[BoundResult]:
    """Every finite-N bound the sandwich check compares against."""
    out = [welch_bound(params), glb_step_best(params), glb_cosine_exact(params),
           glb_sine_best(params), glb_chebyshev(params)]
    for tag in ("uniform", "cosine"):
        out.append(glb(params, WeightFamily(tag).build(params), {"weight": tag}))
    return out


def _check(name: str, ok: bool, **detail) -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def _spectrum_check() -> dict:
    worst = 0.0
    for N in (2, 3, 4, 8, 17, 64):
        p = QcssParams(3, 2, N)
        a = spectrum_closed_form(p).lambdas
        b = spectrum_dft(p).lambdas
        worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(b))))
    return _check("spectrum_closed_form_vs_dft", worst <= 1e-9, max_rel_err=worst, tol=1e-9)


def _weights_check() -> dict:
    failures = []
    for N in (2, 3, 8, 16, 64):
        params = QcssParams(max(2, k_bar(2, N) + 1), 2, N)
        families = [WeightFamily("uniform"), WeightFamily("cosine", 0), WeightFamily("cosine", N),
                    WeightFamily("step", 1), WeightFamily("step", N), WeightFamily("sine", 2),
                    WeightFamily("sine", 2 * N - 1), WeightFamily("chebyshev")]
        for fam in families:
            res = validate_simplex(fam.build(params))
            if not res:
                failures.append(f"N={N} {fam.label()}: {res.message}")
    return _check("weight_simplex", not failures, failures=failures)


def _welch_uniform_check() -> dict:
    worst = 0.0
    for M in (2, 3, 5):
        for N in (2, 7, 32):
            for K in (1, M, 4 * M + 1):
                p = QcssParams(K, M, N)
                w = welch_bound(p).value
                g = glb(p, WeightFamily("uniform").build(p)).value
                worst = max(worst, abs(g - w) / max(abs(w), 1.0))
    return _check("glb_uniform_equals_welch", worst <= 1e-10, max_rel_err=worst, tol=1e-10)


def _golay_check() -> dict:
    worst = 0.0
    for n in (2, 4, 8, 16, 32, 64):
        for K in (1, 2):
            worst = max(worst, tolerances(golay_pcss(n, K)).delta_max)
    return _check("golay_pcss_perfect", worst <= 1e-12, max_delta_max=worst, tol=1e-12)


def _sandwich_check(sets: int, seed: int) -> dict:
    violations = []
    checked = 0
    cases = []
    for N in (4, 8):
        kb = k_bar(2, N)
        cases += [(K, N) for K in range(max(1, kb - 2), kb + 3)]
    for i in range(sets):
        K, N = cases[i % len(cases)]
        sset = random_qcss(K, 2, N, q=2 if i % 2 == 0 else 4, seed=seed + i)
        rep = verify_bounds(sset, rigorous_bounds(QcssParams(K, 2, N)))
        checked += sum(e["checked"] for e in rep.entries)
        violations += [dict(e, K=K, N=N, set_seed=seed + i) for e in rep.violations]
    return _check("sequence_lab_sandwich", not violations, sets=sets, bounds_checked=checked,
                  violations=violations)


def cmd_verify(args) -> int:
    checks = []
    local = None
    if args.weight_file:
        if args.N is None:
            raise UsageError("--weight-file needs --N")
        w = read_weight_file(args.weight_file, args.N)
        res = validate_simplex(w)
        checks.append(_check("weight_file_simplex", res.ok, path=str(args.weight_file),
                             message=res.message, min_index=res.min_index,
                             min_value=res.min_value if math.isfinite(res.min_value) else None,
                             total=res.total if math.isfinite(res.total) else None))
    if args.set_file:
        sset = read_sequence_set(args.set_file)
        rep = verify_bounds(sset, rigorous_bounds(QcssParams(sset.K, sset.M, sset.N)))
        checks.append(_check("set_file_bounds", rep.ok, path=str(args.set_file), report=rep.to_dict()))
    if args.local_min:
        if args.M is None or args.N is None:
            raise UsageError("--local-min needs --M and --N")
        K = args.K if args.K is not None else k_bar(args.M, args.N) + 1
        params = QcssParams(K, args.M, args.N)
        report = local_min_check(params, trials=args.trials, norm_cap=args.norm_cap, seed=args.seed)
        local = report.to_dict()
        checks.append(_check("local_minimality", report.passed(rel_tol=args.tol),
                             max_violation_rel=report.max_violation_rel, tol=args.tol,
                             max_decomp_rel_err=report.max_decomp_rel_err, decomp_tol=1e-9))
    if not checks:
        checks = [_spectrum_check(), _weights_check(), _welch_uniform_check(), _golay_check(),
                  _sandwich_check(args.sets, args.seed)]
    ok = all(c["ok"] for c in checks)
    doc = {"command": "verify", "ok": ok, "seed": args.seed, "checks": checks}
    if local is not None:
        doc["local_min"] = local
    _emit(_json_text(doc), args.out)
    for c in checks:
        if not c["ok"]:
            print(f"verify: {c['name']} failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# sweep


def _thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _sweep_ks(args, M: int) -> list[int]:
    if args.K_range:
        ks = range(args.K_range[0], args.K_range[1] + 1)
    elif args.ratio_range:
        a, b, step = args.ratio_range
        count = int(math.floor((b - a) / step + 1e-9)) + 1
        ks = sorted({int(round((a + i * step) * M)) for i in range(count)})
    else:
        offsets = args.kbar_offsets or [-1, 0, 1, 2]
        kb = k_bar(M, args.N)
        ks = sorted({kb + off for off in offsets})
    return [K for K in ks if K >= 1]


def _family_bound(params: QcssParams, family: str) -> BoundResult:
    if family == "step":
        return glb_step_best(params)
    if family == "cosine":
        return glb_cosine_exact(params)
    if family == "sine":
        return glb_sine_best(params)
    return glb_chebyshev(params)


def sweep_cell(params: QcssParams) -> list[dict]:
    welch = welch_bound(params).value
    kb = k_bar(params.M, params.N)
    rows = []
    for family in SWEEP_FAMILIES:
        res = _family_bound(params, family)
        beats = res.valid and res.value > welch + 1e-12 * abs(welch)
        rows.append({
            "M": params.M, "K": params.K, "family": family, "N": params.N,
            "K_over_M": params.K / params.M, "k_bar": kb, "welch": welch, "bound": res.value,
            "family_param": dict(res.family_param), "valid": res.valid, "beats_welch": bool(beats),
            "ratio_to_welch": _ratio4(res.value / welch) if welch > 0 else None,
        })
    return rows


def cmd_sweep(args) -> int:
    if args.N is None or args.N < 2:
        raise UsageError("--N must be >= 2")
    lo, hi = args.M_range
    if lo < 2:
        raise UsageError("--M-range must start at M >= 2")
    cells = [QcssParams(K, M, args.N) for M in range(lo, hi + 1) for K in _sweep_ks(args, M)]
    if not cells:
        raise UsageError("the sweep grid is empty")
    workers = max(1, min(_thread_cap(), len(cells)))
    if workers == 1:
        chunks = [sweep_cell(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(sweep_cell, cells))
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r["M"], r["K"], r["family"]))
    _emit_table(args, "sweep", SWEEP_COLUMNS, rows)
    return EXIT_OK


# --------------------------------------------------------------------------

_COMMANDS = {
    "bound": cmd_bound,
    "table1": cmd_table1,
    "curves": cmd_curves,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"qcss-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"qcss-bounds {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"qcss-bounds {args.command}: consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
