"""Command-line interface.

Subcommands:

* check: exact verdicts and the central-ratio audit for one (m, k)
* scan-theorem1: measured thresholds vs the k^2 - 3 law over a k range
* probe-inequality: exact rational audit of the neighbor-ratio inequality
* eclass: threshold-curve maximum, min_m, and membership certificates
* scan-eclass: max-threshold scaling scan over a k range
* certmax: certified enclosure of the limit-shape constant
* general: minimal smoothing exponent for a coefficient file

Exit codes: 0 success, 1 usage or input error, 2 verdict mismatch,
3 numeric certification failure, 4 nothing found below the cap.

Output goes to stdout or --out. Formats: text (key=value lines), csv
(floats at 17 significant digits), json (schema "unimodal-lab/1",
stable key order). Rows are sorted by (k, u). UNIMODAL_LAB_THREADS
caps scan parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NoReturn, Optional

from . import __version__, certmax, envelope, kernels, thresholds
from .exactpoly import expand_family, unimodal_report

SCHEMA = "unimodal-lab/1"

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_MISMATCH = 2
_EXIT_CERTIFICATION = 3
_EXIT_NOT_FOUND = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which collides with the mismatch code
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(_EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads() -> int:
    raw = os.environ.get("UNIMODAL_LAB_THREADS", "")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"UNIMODAL_LAB_THREADS must be an integer, got {raw!r}")
        return max(1, min(n, 32))
    return min(4, os.cpu_count() or 1)


@dataclass
class RunConfig:
    """Parsed CLI options for one invocation."""

    subcommand: str
    fmt: str
    out: Optional[str]
    threads: int
    params: dict = field(default_factory=dict)


def _fmt_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_scalar(v) for v in row))
    return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, float) and v != v:  # NaN has no JSON spelling
        return None
    return v


def _json(payload: dict) -> str:
    body = {"schema": SCHEMA, **payload}
    return json.dumps(_jsonable(body), indent=2, sort_keys=True) + "\n"


def _text(pairs: list[tuple[str, object]]) -> str:
    return "".join(f"{k}={_fmt_scalar(v)}\n" for k, v in pairs)


def _text_rows(header: list[str], rows: list[list]) -> str:
    out = []
    for row in rows:
        out.append(" ".join(f"{h}={_fmt_scalar(v)}" for h, v in zip(header, row)))
    return "\n".join(out) + "\n"


def _map_rows(fn: Callable, items: list, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_check(cfg: RunConfig) -> tuple[int, str]:
    m, k = cfg.params["m"], cfg.params["k"]
    report = unimodal_report(expand_family(m, k))
    predicted = m >= thresholds.predicted_threshold(k)
    try:
        closed, raw = thresholds.ratio_vs_coefficients(m, k)
        ratio: Optional[Fraction] = closed
        ratio_ok: Optional[bool] = closed == raw
    except ValueError:
        ratio = None
        ratio_ok = None
    agree = report.unimodal == report.strongly_unimodal == predicted and ratio_ok is not False
    code = _EXIT_OK if agree else _EXIT_MISMATCH
    if cfg.fmt == "csv":
        header = ["m", "k", "unimodal", "strongly_unimodal", "predicted_member", "agree", "central_ratio"]
        row = [m, k, report.unimodal, report.strongly_unimodal, predicted, agree,
               ratio if ratio is not None else ""]
        return code, _csv(header, [row])
    if cfg.fmt == "json":
        return code, _json({
            "command": "check",
            "m": m,
            "k": k,
            "unimodal": report.unimodal,
            "unimodal_witness": report.unimodal_witness,
            "strongly_unimodal": report.strongly_unimodal,
            "strong_witness": report.strong_witness,
            "strong_reason": report.strong_reason,
            "central_ratio": ratio,
            "central_ratio_matches": ratio_ok,
            "predicted_member": predicted,
            "agree": agree,
        })
    pairs = [
        ("m", m), ("k", k),
        ("unimodal", report.unimodal),
        ("strongly_unimodal", report.strongly_unimodal),
        ("predicted_member", predicted),
        ("central_ratio", ratio if ratio is not None else "undefined"),
        ("central_ratio_matches", ratio_ok if ratio_ok is not None else "undefined"),
        ("agree", agree),
    ]
    if report.unimodal_witness is not None:
        pairs.insert(3, ("unimodal_witness", f"{report.unimodal_witness[0]},{report.unimodal_witness[1]}"))
    if report.strong_witness is not None:
        pairs.insert(4, ("strong_witness", f"{report.strong_witness} ({report.strong_reason})"))
    return code, _text(pairs)


def cmd_scan_theorem1(cfg: RunConfig) -> tuple[int, str]:
    k_min, k_max, cap = cfg.params["k_min"], cfg.params["k_max"], cfg.params["cap"]
    if k_min < 2 or k_max < k_min:
        raise ValueError(f"need 2 <= k-min <= k-max, got {k_min}, {k_max}")
    ks = list(range(k_min, k_max + 1))
    rows_r = _map_rows(lambda k: thresholds.scan_thresholds(k, cap), ks, cfg.threads)
    rows = [[r.k, r.min_m_strong, r.min_m_unimodal, r.predicted, r.match] for r in rows_r]
    code = _EXIT_OK if all(r.match for r in rows_r) else _EXIT_MISMATCH
    header = ["k", "min_m_strong", "min_m_unimodal", "predicted", "match"]
    if cfg.fmt == "json":
        return code, _json({
            "command": "scan-theorem1",
            "rows": [dict(zip(header, row)) for row in rows],
            "all_match": code == _EXIT_OK,
        })
    if cfg.fmt == "text":
        return code, _text_rows(header, rows)
    return code, _csv(header, rows)


def cmd_probe_inequality(cfg: RunConfig) -> tuple[int, str]:
    k = cfg.params["k"]
    probes = [thresholds.inequality_one_probe(k, u) for u in thresholds.u_range(k)]
    code = _EXIT_OK if all(p.holds for p in probes) else _EXIT_MISMATCH
    header = ["u", "lhs", "rhs", "holds", "case_bound_holds"]
    rows = [[p.u, float(p.lhs), float(p.rhs), p.holds, p.case_bound_holds] for p in probes]
    if cfg.fmt == "json":
        return code, _json({
            "command": "probe-inequality",
            "k": k,
            "rows": [
                {
                    "u": p.u,
                    "lhs": float(p.lhs),
                    "rhs": float(p.rhs),
                    "lhs_exact": p.lhs,
                    "rhs_exact": p.rhs,
                    "holds": p.holds,
                    "case_bound_first": p.case_bound_first,
                    "case_bound_second": p.case_bound_second,
                    "case_bound_holds": p.case_bound_holds,
                }
                for p in probes
            ],
            "all_hold": code == _EXIT_OK,
        })
    if cfg.fmt == "text":
        return code, _text_rows(header, rows)
    return code, _csv(header, rows)


def _certificate_dict(cert: envelope.MembershipCertificate) -> dict:
    return {
        "m": cert.m,
        "k": cert.k,
        "member": cert.member,
        "min_margin": cert.min_margin,
        "witness_theta": cert.witness_theta,
        "grid_points": cert.grid_points,
    }


def cmd_eclass(cfg: RunConfig) -> tuple[int, str]:
    k = cfg.params["k"]
    grid = cfg.params["grid"]
    tol = cfg.params["tol"]
    scan = envelope.ThetaScan(k, grid_points=grid, refine_tol=tol)
    peak = envelope.max_threshold(scan)
    cert_at = envelope.membership_certificate(peak.min_m, k, grid_points=grid)
    cert_below = (
        envelope.membership_certificate(peak.min_m - 1, k, grid_points=grid)
        if peak.min_m > 1
        else None
    )
    alpha = certmax.certified_alpha()
    sandwich = envelope.sandwich_check(
        k, alpha.value_enclosure.lo, alpha.value_enclosure.hi, grid_points=max(1000, grid // 10)
    )
    ok = cert_at.member and (cert_below is None or not cert_below.member)
    code = _EXIT_OK if ok and sandwich.max_in_enclosure else _EXIT_CERTIFICATION
    if cfg.fmt == "csv":
        header = ["k", "max_threshold", "argmax_theta", "m_of_k", "ratio_k4", "near_integer"]
        return code, _csv(header, [[k, peak.max_value, peak.argmax_theta, peak.min_m,
                                    peak.ratio_k4, peak.near_integer]])
    if cfg.fmt == "text":
        pairs = [
            ("k", k),
            ("backend", kernels.backend()),
            ("max_threshold", peak.max_value),
            ("argmax_theta", peak.argmax_theta),
            ("m_of_k", peak.min_m),
            ("ratio_k4", peak.ratio_k4),
            ("near_integer", peak.near_integer),
            ("member_at_m_of_k", cert_at.member),
            ("margin_at_m_of_k", cert_at.min_margin),
        ]
        if cert_below is not None:
            pairs += [
                ("member_below", cert_below.member),
                ("margin_below", cert_below.min_margin),
            ]
        pairs += [("max_in_enclosure", sandwich.max_in_enclosure)]
        return code, _text(pairs)
    return code, _json({
        "command": "eclass",
        "k": k,
        "backend": kernels.backend(),
        "max_threshold": peak.max_value,
        "argmax_theta": peak.argmax_theta,
        "m_of_k": peak.min_m,
        "ratio_k4": peak.ratio_k4,
        "near_integer": peak.near_integer,
        "certificate_at_m_of_k": _certificate_dict(cert_at),
        "certificate_below": _certificate_dict(cert_below) if cert_below else None,
        "sandwich": {
            "upper_ok": sandwich.upper_ok,
            "lower_ok": sandwich.lower_ok,
            "n_upper_violations": sandwich.n_upper_violations,
            "n_lower_violations": sandwich.n_lower_violations,
            "max_ratio": sandwich.max_ratio,
            "enclosure_lo": sandwich.enclosure_lo,
            "enclosure_hi": sandwich.enclosure_hi,
            "max_in_enclosure": sandwich.max_in_enclosure,
        },
    })


def cmd_scan_eclass(cfg: RunConfig) -> tuple[int, str]:
    k_min, k_max = cfg.params["k_min"], cfg.params["k_max"]
    grid, tol = cfg.params["grid"], cfg.params["tol"]
    if k_min < 2 or k_max < k_min:
        raise ValueError(f"need 2 <= k-min <= k-max, got {k_min}, {k_max}")
    alpha = certmax.certified_alpha()
    a_lo, a_hi = alpha.value_enclosure.lo, alpha.value_enclosure.hi

    def one(k: int):
        peak = envelope.max_threshold(envelope.ThetaScan(k, grid_points=grid, refine_tol=tol))
        lo_b = a_lo / (1.0 + 8.0 / (k * k)) - 1e-9
        hi_b = a_hi + 1e-9
        return peak, lo_b, hi_b, lo_b <= peak.ratio_k4 <= hi_b

    results = _map_rows(one, list(range(k_min, k_max + 1)), cfg.threads)
    header = ["k", "max_threshold", "argmax_theta", "m_of_k", "ratio_k4",
              "sandwich_lo", "sandwich_hi", "in_sandwich"]
    rows = [[p.k, p.max_value, p.argmax_theta, p.min_m, p.ratio_k4, lo_b, hi_b, ok]
            for p, lo_b, hi_b, ok in results]
    code = _EXIT_OK if all(r[-1] for r in rows) else _EXIT_CERTIFICATION
    if cfg.fmt == "json":
        return code, _json({
            "command": "scan-eclass",
            "rows": [dict(zip(header, row)) for row in rows],
            "all_in_sandwich": code == _EXIT_OK,
        })
    if cfg.fmt == "text":
        return code, _text_rows(header, rows)
    return code, _csv(header, rows)


def cmd_certmax(cfg: RunConfig) -> tuple[int, str]:
    tol = cfg.params["tol"]
    result = certmax.certified_alpha(tol)
    cb, ve = result.crit_bracket, result.value_enclosure
    code = _EXIT_OK
    if cfg.fmt == "csv":
        header = ["crit_lo", "crit_hi", "value_lo", "value_hi", "width", "evaluations"]
        return code, _csv(header, [[cb.lo, cb.hi, ve.lo, ve.hi, ve.width, result.evaluations]])
    if cfg.fmt == "text":
        return code, _text([
            ("crit_lo", cb.lo),
            ("crit_hi", cb.hi),
            ("value_lo", ve.lo),
            ("value_hi", ve.hi),
            ("width", ve.width),
            ("evaluations", result.evaluations),
        ])
    return code, _json({
        "command": "certmax",
        "tol": tol,
        "crit_bracket": {"lo": cb.lo, "hi": cb.hi, "width": cb.width},
        "value_enclosure": {"lo": ve.lo, "hi": ve.hi, "width": ve.width},
        "evaluations": result.evaluations,
    })


def cmd_general(cfg: RunConfig) -> tuple[int, str]:
    path, cap = cfg.params["infile"], cfg.params["cap"]
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e}")
    tokens = raw.replace(",", " ").split()
    try:
        coeffs = [int(t) for t in tokens]
    except ValueError:
        raise ValueError(f"{path} must contain whitespace- or comma-separated integers")
    n = thresholds.generic_min_N(coeffs, cap if cap is not None else 64)
    if cfg.fmt == "csv":
        return _EXIT_OK, _csv(["min_n"], [[n]])
    if cfg.fmt == "json":
        return _EXIT_OK, _json({"command": "general", "coeffs": coeffs, "min_n": n})
    return _EXIT_OK, _text([("min_n", n)])


_DISPATCH = {
    "check": cmd_check,
    "scan-theorem1": cmd_scan_theorem1,
    "probe-inequality": cmd_probe_inequality,
    "eclass": cmd_eclass,
    "scan-eclass": cmd_scan_eclass,
    "certmax": cmd_certmax,
    "general": cmd_general,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unimodal-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, default_fmt: str) -> None:
        p.add_argument("--format", choices=["text", "csv", "json"], default=default_fmt)
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("check", help="exact verdicts for one (m, k)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    add_common(p, "text")

    p = sub.add_parser("scan-theorem1", help="threshold scan vs the k^2 - 3 law")
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    add_common(p, "csv")

    p = sub.add_parser("probe-inequality", help="exact audit of the neighbor-ratio inequality")
    p.add_argument("--k", type=int, required=True)
    add_common(p, "csv")

    p = sub.add_parser("eclass", help="threshold maximum and membership certificates")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--grid", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p, "json")

    p = sub.add_parser("scan-eclass", help="max-threshold scaling scan over a k range")
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--grid", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p, "csv")

    p = sub.add_parser("certmax", help="certified enclosure of the limit-shape constant")
    p.add_argument("--tol", type=float, default=5e-4)
    add_common(p, "json")

    p = sub.add_parser("general", help="minimal smoothing exponent for a coefficient file")
    p.add_argument("infile", metavar="FILE")
    p.add_argument("--cap", type=int, default=None)
    add_common(p, "text")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in ("subcommand", "format", "out")
    }
    return RunConfig(args.subcommand, args.format, args.out, _threads(), params)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        code, text = _DISPATCH[cfg.subcommand](cfg)
    except thresholds.NotFoundError as e:
        print(f"unimodal-lab: not found: {e}", file=sys.stderr)
        return _EXIT_NOT_FOUND
    except (
        envelope.Inconclusive,
        envelope.ReductionViolation,
        certmax.BracketFailure,
        certmax.PreconditionViolation,
    ) as e:
        print(f"unimodal-lab: certification failure: {e}", file=sys.stderr)
        return _EXIT_CERTIFICATION
    except ValueError as e:
        print(f"unimodal-lab: error: {e}", file=sys.stderr)
        return _EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
