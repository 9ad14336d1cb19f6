"""Command-line front end: ``zetamellin {eval,sweep,zeros,count,verify}``.

Results go to stdout (or ``--out``) as JSON or CSV.  Exit codes: 0 on
success, 1 on a computation error (a JSON error object is printed), 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import identity, zeta
from .contour import ContourSpec, Normalization
from .errors import ZetaMellinError
from .identity import PhaseBranch, Spectrum
from .special import BranchConvention

__all__ = ["RunConfig", "UsageError", "parse_args", "parse_complex", "run", "main", "SCHEMAS"]

COMMANDS = ("eval", "sweep", "zeros", "count", "verify")
CHECKS = ("norm", "exp-tr-det", "theorem", "involution", "hc")
CSV_COLUMNS = ("alpha_re", "alpha_im", "value_re", "value_im", "err_estimate", "method", "norm")
ZERO_COLUMNS = ("t", "residual", "t_lo", "t_hi", "winding_confirmed")

_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})(?:([+-])({_FLOAT})i)?$")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``<float>[(+|-)<float>i]``, e.g. ``0.5+14.13i`` or ``-1``."""
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise UsageError(f"not a complex literal: {text!r}")
    re_part = float(m.group(1))
    im_part = 0.0
    if m.group(2):
        im_part = float(m.group(3)) * (-1.0 if m.group(2) == "-" else 1.0)
    return complex(re_part, im_part)


def _parse_grid(text: str) -> list[complex]:
    # "re0:re1:n,im0:im1:m"; a bare "x" pins that axis
    try:
        re_axis, im_axis = text.split(",")

        def axis(part):
            bits = part.split(":")
            if len(bits) == 1:
                return np.array([float(bits[0])])
            lo, hi, n = float(bits[0]), float(bits[1]), int(bits[2])
            return np.linspace(lo, hi, n)

        xs, ys = axis(re_axis), axis(im_axis)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad --alpha-grid {text!r}; expected re0:re1:n,im0:im1:m") from exc
    return [complex(x, y) for x in xs for y in ys]


@dataclass
class RunConfig:
    command: str
    func: str = "zeta"
    method: str = "hankel"
    alpha: complex | None = None
    alpha_grid: list[complex] = field(default_factory=list)
    norm: str | None = None
    r: float | None = None
    R: float | None = None
    nodes: int = 8192
    branch: str = "symmetric"
    tol: float = 1e-12
    allow_fallback: bool = False
    spectrum: str = "1"
    phase_n: int = 0
    phase_sign: int = 1
    seed: int = 0
    t_min: float = 1.0
    t_max: float = 50.0
    max_count: int | None = None
    re_lo: float = 0.0
    re_hi: float = 1.0
    check: str | None = None
    workers: int = 1
    out: str | None = None
    format: str = "json"
    argv: list[str] = field(default_factory=list)

    def contour(self) -> ContourSpec:
        return ContourSpec(
            inner_radius=self.r,
            truncation=self.R,
            nodes_per_segment=self.nodes,
            branch=BranchConvention(self.branch),
        )

    def echo(self) -> dict:
        d = asdict(self)
        d["alpha"] = _cjson(self.alpha) if self.alpha is not None else None
        d["alpha_grid"] = [_cjson(a) for a in self.alpha_grid]
        return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--func", choices=("zeta", "eta"), default="zeta")
    common.add_argument("--method", choices=("series", "mellin-real", "hankel"), default="hankel")
    common.add_argument("--norm", choices=[n.value for n in Normalization])
    common.add_argument("--r", type=float, help="Hankel inner radius")
    common.add_argument("--R", type=float, help="Hankel ray truncation")
    common.add_argument("--nodes", type=int, default=8192, help="node budget per contour segment")
    common.add_argument("--branch", choices=[b.value for b in BranchConvention], default="symmetric")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--allow-fallback", action="store_true")
    common.add_argument("--spectrum", default="1", help='"natural:N" or a comma list')
    common.add_argument("--phase-n", type=int, default=0)
    common.add_argument("--phase-sign", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="zetamellin", description="Mellin/Hankel zeta workbench")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("eval", parents=[common], help="evaluate zeta or eta at one point")
    p.add_argument("--alpha", required=True)
    p = sub.add_parser("sweep", parents=[common], help="evaluate over an alpha grid")
    p.add_argument("--alpha-grid", required=True)
    p = sub.add_parser("zeros", parents=[common], help="zeros on the critical line")
    p.add_argument("--t-min", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--max-count", type=int)
    p = sub.add_parser("count", parents=[common], help="argument-principle zero count")
    p.add_argument("--re-lo", type=float, default=0.0)
    p.add_argument("--re-hi", type=float, default=1.0)
    p.add_argument("--t-lo", type=float, default=1.0)
    p.add_argument("--t-hi", type=float, default=50.0)
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--check", choices=CHECKS, required=True)
    p.add_argument("--t-max", type=float, default=50.0)
    return parser


def parse_args(argv: list[str]) -> RunConfig:
    """Parse and validate ``argv``; raises :class:`UsageError` on any problem."""
    ns = _build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        func=ns.func,
        method=ns.method,
        norm=ns.norm,
        r=ns.r,
        R=ns.R,
        nodes=ns.nodes,
        branch=ns.branch,
        tol=ns.tol,
        allow_fallback=ns.allow_fallback,
        spectrum=ns.spectrum,
        phase_n=ns.phase_n,
        phase_sign=ns.phase_sign,
        seed=ns.seed,
        workers=ns.workers,
        out=ns.out,
        format=ns.format,
        argv=list(argv),
    )
    if ns.command == "eval":
        cfg.alpha = parse_complex(ns.alpha)
    elif ns.command == "sweep":
        cfg.alpha_grid = _parse_grid(ns.alpha_grid)
    elif ns.command == "zeros":
        cfg.t_min, cfg.t_max, cfg.max_count = ns.t_min, ns.t_max, ns.max_count
    elif ns.command == "count":
        cfg.re_lo, cfg.re_hi, cfg.t_min, cfg.t_max = ns.re_lo, ns.re_hi, ns.t_lo, ns.t_hi
    else:
        cfg.check, cfg.t_max = ns.check, ns.t_max
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    try:
        cfg.contour()
        Spectrum.parse(cfg.spectrum)
        PhaseBranch(cfg.phase_n, cfg.phase_sign)
    except ZetaMellinError as exc:
        raise UsageError(str(exc)) from exc
    if not 1e-13 <= cfg.tol < 1:
        raise UsageError("--tol must lie in [1e-13, 1)")
    if cfg.workers < 1:
        raise UsageError("--workers must be positive")
    points = [cfg.alpha] if cfg.command == "eval" else cfg.alpha_grid
    for a in points:
        _validate_point(cfg, a)
    if cfg.command == "zeros" and not 0 < cfg.t_min < cfg.t_max:
        raise UsageError("need 0 < --t-min < --t-max")
    if cfg.command == "count":
        if not (cfg.re_lo < cfg.re_hi and cfg.t_min < cfg.t_max):
            raise UsageError("degenerate rectangle")
        if cfg.re_lo <= 1 <= cfg.re_hi and cfg.t_min <= 0 <= cfg.t_max:
            raise UsageError("rectangle contains the pole at alpha = 1")
    if cfg.command == "verify" and cfg.t_max <= 1:
        raise UsageError("--t-max must exceed 1")


def _validate_point(cfg: RunConfig, a: complex) -> None:
    if cfg.method == "mellin-real":
        floor = 1.0 if cfg.func == "zeta" else 0.0
        if not a.real > floor:
            raise UsageError(f"mellin-real {cfg.func} needs Re alpha > {floor:g}")
        allowed = {"zeta": ("gamma",), "eta": ("eta-gamma-corrected", "eta-gamma-as-written")}
        if cfg.norm is not None and cfg.norm not in allowed[cfg.func]:
            raise UsageError(f"--norm {cfg.norm} is not available for mellin-real {cfg.func}")
    elif cfg.norm is not None and not (cfg.method == "hankel" and cfg.norm == "hankel-gamma"):
        raise UsageError(f"--norm {cfg.norm} does not apply to method {cfg.method}")
    if cfg.func == "zeta" and abs(a - 1) <= 1e-12:
        raise UsageError("zeta has a pole at alpha = 1")


def _cjson(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _jsonable(x):
    if isinstance(x, complex):
        return _cjson(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _evaluate(cfg: RunConfig, a: complex) -> tuple[complex, float, list[str], str]:
    """Returns value, error estimate, warnings and the normalization label."""
    if cfg.method == "series":
        if cfg.func == "zeta":
            v = zeta.zeta_ref(a, cfg.tol)
        else:
            v = zeta.eta_series(a, cfg.tol)
        return v, cfg.tol * max(1.0, abs(v)), [], ""
    if cfg.method == "mellin-real":
        if cfg.func == "zeta":
            res, norm = zeta.zeta_mellin_real(a), "gamma"
        else:
            norm = cfg.norm or "eta-gamma-corrected"
            mode = "as-written" if norm == "eta-gamma-as-written" else "corrected"
            res = zeta.eta_mellin_real(a, mode)
        return res.value, res.err_estimate, res.warnings, norm
    fn = zeta.zeta_hankel if cfg.func == "zeta" else zeta.eta_hankel
    res = fn(a, cfg.contour(), allow_fallback=cfg.allow_fallback)
    return res.value, res.err_estimate, res.warnings, "hankel-gamma"


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _cmd_eval(cfg: RunConfig):
    v, err, warns, norm = _evaluate(cfg, cfg.alpha)
    record = {
        "input": cfg.echo(),
        "value": _cjson(v),
        "err_estimate": err,
        "warnings": list(warns),
        "timestamp": _timestamp(),
    }
    row = _csv_row(cfg.alpha, v, err, cfg.method, norm)
    return record, CSV_COLUMNS, [row]


def _csv_row(a, v, err, method, norm) -> dict:
    return {
        "alpha_re": a.real,
        "alpha_im": a.imag,
        "value_re": v.real,
        "value_im": v.imag,
        "err_estimate": err,
        "method": method,
        "norm": norm,
    }


def _cmd_sweep(cfg: RunConfig):
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        results = list(pool.map(lambda a: _evaluate(cfg, a), cfg.alpha_grid))
    records, rows = [], []
    for a, (v, err, warns, norm) in zip(cfg.alpha_grid, results):
        records.append({"alpha": _cjson(a), "value": _cjson(v), "err_estimate": err, "warnings": list(warns)})
        rows.append(_csv_row(a, v, err, cfg.method, norm))
    doc = {"input": cfg.echo(), "records": records, "timestamp": _timestamp()}
    return doc, CSV_COLUMNS, rows


def _cmd_zeros(cfg: RunConfig):
    found = zeta.find_zeros(cfg.t_min, cfg.t_max, cfg.max_count)
    rows = [
        {"t": z.t, "residual": z.residual, "t_lo": z.bracket[0], "t_hi": z.bracket[1],
         "winding_confirmed": z.winding_confirmed}
        for z in found
    ]
    doc = {"input": cfg.echo(), "zeros": rows, "timestamp": _timestamp()}
    return doc, ZERO_COLUMNS, rows


def _cmd_count(cfg: RunConfig):
    n = zeta.count_zeros_rectangle(cfg.re_lo, cfg.re_hi, cfg.t_min, cfg.t_max)
    doc = {"input": cfg.echo(), "count": n, "timestamp": _timestamp()}
    row = {"re_lo": cfg.re_lo, "re_hi": cfg.re_hi, "t_lo": cfg.t_min, "t_hi": cfg.t_max, "count": n}
    return doc, tuple(row), [row]


def _suite_norm(cfg):
    rows = []
    for a in (0.1, 0.25, 0.5, 0.75, 0.98, 1.02, 1.5, 1.98, 2.02, 2.5):
        v = identity.normalization_constant(a, cfg.contour()).value
        rows.append({"alpha": a, "value": v, "abs_err": abs(v - 1)})
    return rows, all(r["abs_err"] < 1e-9 for r in rows)


def _suite_exp_tr_det(cfg):
    rows = []
    kinds = ("hermitian", "triangular", "general")
    for i in range(200):
        kind = kinds[i % 3]
        d = 2 + (i // 3) % 7
        res = identity.exp_tr_det_check(identity.random_matrix(kind, d, cfg.seed * 1000 + i))
        rows.append({"kind": kind, "d": d, "rel_residual": res.rel_residual, "limit": 1e-9})
    for d in range(1, 9):
        res = identity.exp_tr_det_check(identity.random_matrix("nilpotent", d, cfg.seed + d))
        rows.append({"kind": "nilpotent", "d": d, "rel_residual": res.rel_residual, "limit": 1e-12})
        diag = identity.MatrixOperand(np.diag(np.arange(1.0, d + 1) / d))
        res = identity.exp_tr_det_check(diag)
        rows.append({"kind": "diagonal", "d": d, "rel_residual": res.rel_residual, "limit": 1e-12})
    return rows, all(r["rel_residual"] < r["limit"] for r in rows)


def _suite_theorem(cfg):
    rows = []
    ok = True
    cases = [
        (Spectrum.explicit([1.0]), 1.0, -2.0),
        (Spectrum.explicit([1.0, 2.0]), 2.0, -7.25),
    ]
    for spec, a, expected in cases:
        res = identity.theorem_residual(spec, a, PhaseBranch(0, 1))
        good = abs(res.log_gap - expected) < 1e-8
        ok &= good
        rows.append({"spectrum": spec.describe(), "alpha": a, "log_gap": res.log_gap, "expected": expected, "ok": good})
    spectrum = Spectrum.parse(cfg.spectrum)
    phase = PhaseBranch(cfg.phase_n, cfg.phase_sign)
    for a in (0.25, 0.5, 0.75, 1.5, 2.5):
        first = identity.theorem_residual(spectrum, a, phase)
        again = identity.theorem_residual(spectrum, a, phase)
        finite = all(math.isfinite(x) for x in (first.log_gap, first.phase_gap, abs(first.log_lhs), abs(first.log_rhs)))
        good = finite and first == again
        ok &= good
        rows.append({
            "spectrum": spectrum.describe(), "alpha": a, "log_lhs": first.log_lhs, "log_rhs": first.log_rhs,
            "log_gap": first.log_gap, "phase_gap": first.phase_gap, "ok": good,
        })
    return rows, ok


def _suite_involution(cfg):
    spectrum = Spectrum.parse(cfg.spectrum)
    d = identity.log_det_exp(spectrum)
    rows = []
    ok = True
    for z in zeta.find_zeros(1.0, cfg.t_max):
        rec = zeta.involution_check(z.alpha, spectrum)
        good = (
            rec.reflected_point == rec.alpha0
            and abs(rec.zeta_at) < 1e-5
            and abs(rec.zeta_at_reflected) < 1e-5
            and rec.chain_residual < 1e-12 * max(1.0, math.exp(min(d, 700.0)))
        )
        ok &= good
        rows.append({
            "alpha0": rec.alpha0, "reflected": rec.reflected_point, "abs_zeta": abs(rec.zeta_at),
            "abs_zeta_reflected": abs(rec.zeta_at_reflected), "chain_residual": rec.chain_residual, "ok": good,
        })
    return rows, ok and bool(rows)


def _suite_hc(cfg):
    spectrum = Spectrum.parse(cfg.spectrum)
    rows = []
    ok = True
    for z in zeta.find_zeros(1.0, cfg.t_max):
        rec = identity.hc_relation_check(z.alpha, spectrum)
        good = abs(rec.gamma_factor - 1) < 1e-10 and rec.holds_at_half
        ok &= good
        rows.append({"alpha0": rec.alpha0, "gamma_factor": rec.gamma_factor, "holds_at_half": rec.holds_at_half, "ok": good})
    off = identity.hc_relation_check(complex(0.3, 2.0), spectrum)
    rows.append({"alpha0": off.alpha0, "gamma_factor": off.gamma_factor, "holds_at_half": off.holds_at_half, "ok": None})
    return rows, ok and len(rows) > 1


_SUITES = {
    "norm": _suite_norm,
    "exp-tr-det": _suite_exp_tr_det,
    "theorem": _suite_theorem,
    "involution": _suite_involution,
    "hc": _suite_hc,
}


def _cmd_verify(cfg: RunConfig):
    rows, passed = _SUITES[cfg.check](cfg)
    doc = {"input": cfg.echo(), "check": cfg.check, "passed": bool(passed), "rows": rows, "timestamp": _timestamp()}
    columns = tuple(dict.fromkeys(k for row in rows for k in row))
    return doc, columns, rows


_COMMANDS = {
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "zeros": _cmd_zeros,
    "count": _cmd_count,
    "verify": _cmd_verify,
}


def _render(cfg: RunConfig, doc: dict, columns, rows) -> str:
    if cfg.format == "json":
        return json.dumps(_jsonable(doc), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, complex):
        return repr(v)
    return v


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    """Dispatch ``cfg``; returns the process exit code."""
    try:
        doc, columns, rows = _COMMANDS[cfg.command](cfg)
    except (ZetaMellinError, ArithmeticError, ValueError) as exc:
        error = {
            "error_kind": getattr(exc, "kind", type(exc).__name__),
            "message": str(exc),
            "context": _jsonable(getattr(exc, "context", {})),
        }
        sys.stdout.write(json.dumps(error, default=str) + "\n")
        return 1
    _emit(cfg, _render(cfg, doc, columns, rows))
    if cfg.command == "verify" and not doc["passed"]:
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        message = str(exc)
        if not message.startswith("usage:"):
            message = f"{_build_parser().format_usage()}zetamellin: error: {message}"
        sys.stderr.write(f"{message}\n")
        return 2
    return run(cfg)


# JSON schemas of the records each command emits.
_COMPLEX = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
}
_ENVELOPE = {"input": {"type": "object"}, "timestamp": {"type": "string"}}
SCHEMAS = {
    "eval": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "value": _COMPLEX,
            "err_estimate": {"type": "number", "minimum": 0},
            "warnings": {"type": "array", "items": {"type": "string"}},
        },
        "required": ["input", "value", "err_estimate", "warnings", "timestamp"],
    },
    "sweep": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "records": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "alpha": _COMPLEX,
                        "value": _COMPLEX,
                        "err_estimate": {"type": "number", "minimum": 0},
                        "warnings": {"type": "array", "items": {"type": "string"}},
                    },
                    "required": ["alpha", "value", "err_estimate", "warnings"],
                },
            },
        },
        "required": ["input", "records", "timestamp"],
    },
    "zeros": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "zeros": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "t": {"type": "number"},
                        "residual": {"type": "number", "minimum": 0},
                        "t_lo": {"type": "number"},
                        "t_hi": {"type": "number"},
                        "winding_confirmed": {"type": "boolean"},
                    },
                    "required": list(ZERO_COLUMNS),
                },
            },
        },
        "required": ["input", "zeros", "timestamp"],
    },
    "count": {
        "type": "object",
        "properties": {**_ENVELOPE, "count": {"type": "integer"}},
        "required": ["input", "count", "timestamp"],
    },
    "verify": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "check": {"enum": list(CHECKS)},
            "passed": {"type": "boolean"},
            "rows": {"type": "array", "items": {"type": "object"}},
        },
        "required": ["input", "check", "passed", "rows", "timestamp"],
    },
    "error": {
        "type": "object",
        "properties": {
            "error_kind": {"type": "string"},
            "message": {"type": "string"},
            "context": {"type": "object"},
        },
        "required": ["error_kind", "message", "context"],
    },
}
