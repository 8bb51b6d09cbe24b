"""Command-line interface: compute, sweep, check, and reproduce workflows.

Output on stdout is machine-readable (json / csv / table) and byte-stable for
fixed inputs; run summaries go to stderr.  Exit codes: 0 ok, 1 check or
reproduce failure, 2 usage error, 3 I/O error.

Note for shells/argparse: write negative or infinite parameters with '=',
e.g. ``--t=-inf``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import constants, verify
from .geometry import BUILTIN_IDS, NormSpace, builtin_space, load_space, validate_norm
from .means import format_t, parse_t
from .reference import reproduce_target
from .search import SearchConfig

EXIT_OK = 0
EXIT_CHECK_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(ValueError):
    pass


def parse_space(text: str) -> NormSpace:
    """Space grammar: builtin:<id> | pnorm:<p|inf> | file:<path> | bare builtin id."""
    if text.startswith("builtin:"):
        return builtin_space(text.split(":", 1)[1])
    if text.startswith("pnorm:"):
        raw = text.split(":", 1)[1]
        p = math.inf if raw == "inf" else float(raw)
        from .geometry import PNormSpace

        return PNormSpace(p)
    if text.startswith("file:"):
        path = text.split(":", 1)[1]
        space = load_space(path)
        report = validate_norm(space, 500)
        if not report.ok:
            first = report.violations[0]
            raise UsageError(
                f"space file {path!r} fails the {first.kind} check at u={first.u}"
                + (f", v={first.v}" if first.v else "")
                + f" (lhs={first.lhs:.6g}, rhs={first.rhs:.6g})"
            )
        return space
    if text in BUILTIN_IDS:
        return builtin_space(text)
    raise UsageError(
        f"cannot parse space {text!r}; use builtin:<id>, pnorm:<p|inf>, file:<path> "
        f"or one of {BUILTIN_IDS}"
    )


def parse_range(text: str, parser=float) -> list[float]:
    """A scalar, a comma list, or an inclusive start:stop:step triple."""
    if "," in text:
        return [parser(tok) for tok in text.split(",") if tok.strip()]
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise UsageError(f"range step must be positive, got {step}")
        out = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-9 * max(1.0, abs(stop)):
                break
            out.append(v)
            k += 1
        return out
    return [parser(text)]


def _is_ranged(text: str | None) -> bool:
    return text is not None and ("," in text or ":" in text)


def _config_from_args(args) -> SearchConfig:
    return SearchConfig(
        coarse_grid=args.grid,
        refine_rounds=args.rounds,
        refine_shrink=args.shrink,
        top_cells=args.seeds,
        tol=args.tol,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid", type=int, default=1024, help="coarse grid points per angle")
    parser.add_argument("--rounds", type=int, default=3, help="refinement rounds")
    parser.add_argument("--shrink", type=float, default=0.1, help="refinement shrink factor")
    parser.add_argument("--seeds", type=int, default=8, help="refinement seed cells")
    parser.add_argument("--tol", type=float, default=1e-4, help="search tolerance target")
    parser.add_argument(
        "--format", choices=("json", "csv", "table"), default="table", help="output format"
    )
    parser.add_argument("--out", default=None, help="output path (default stdout)")


# constant id -> (needs_t, needs_tau, needs_eps)
CONSTANTS = {
    "skew-james": (True, True, False),
    "james-type": (True, True, False),
    "james": (False, False, False),
    "delta": (False, False, True),
    "eps0": (False, False, False),
    "g": (True, False, False),
    "ct": (True, False, False),
    "vnj": (False, False, False),
    "zbaganu": (False, False, False),
    "gao-skew": (False, True, False),
    "lyj": (False, True, False),
    "thm33-bound": (True, False, False),
}


def _evaluate(space, name, t, tau, eps, cfg) -> dict:
    if name == "skew-james":
        res = constants.skew_james(space, t, tau, cfg=cfg)
        return constants.constant_record(name, space, res, t=t, tau=tau)
    if name == "james-type":
        res = constants.james_type(space, t, tau, cfg=cfg)
        return constants.constant_record(name, space, res, t=t, tau=tau)
    if name == "james":
        return constants.constant_record(name, space, constants.james_constant(space, cfg))
    if name == "delta":
        rec = constants.constant_record(
            name, space, constants.modulus_of_convexity(space, eps, cfg)
        )
        rec["eps"] = eps
        return rec
    if name == "eps0":
        return constants.constant_record(name, space, constants.convexity_coefficient(space, cfg))
    if name == "g":
        return constants.constant_record(name, space, constants.g_constant(space, t, cfg), t=t)
    if name == "ct":
        return constants.constant_record(name, space, constants.c_t_constant(space, t, cfg), t=t)
    if name == "vnj":
        return constants.constant_record(name, space, constants.von_neumann_jordan(space, cfg), t=2.0)
    if name == "zbaganu":
        return constants.constant_record(name, space, constants.zbaganu(space, cfg), t=0.0)
    if name == "gao-skew":
        return constants.constant_record(
            name, space, constants.gao_skew(space, tau, cfg), tau=tau
        )
    if name == "lyj":
        # CLI maps --tau to the second weight with the first fixed at 1
        return constants.constant_record(
            name, space, constants.lyj_constant(space, 1.0, tau, cfg), tau=tau
        )
    if name == "thm33-bound":
        rec = constants.constant_record(name, space, constants.thm33_bound(t))
        rec["t"] = format_t(t)
        rec["method"] = "exact"
        return rec
    raise UsageError(f"unknown constant {name!r}; known: {sorted(CONSTANTS)}")


def _require_params(name, t, tau, eps):
    needs_t, needs_tau, needs_eps = CONSTANTS[name]
    if needs_t and t is None:
        raise UsageError(f"constant {name!r} requires --t")
    if needs_tau and tau is None:
        raise UsageError(f"constant {name!r} requires --tau")
    if needs_eps and eps is None:
        raise UsageError(f"constant {name!r} requires --eps")


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _records_to_csv(records, with_eps: bool) -> str:
    cols = ["space", "constant", "t", "tau"] + (["eps"] if with_eps else []) + ["value", "method"]
    lines = [",".join(cols)]
    for rec in records:
        lines.append(",".join(_fmt_cell(rec.get(c)) for c in cols))
    return "\n".join(lines) + "\n"


def _records_to_table(records) -> str:
    keys = ["space", "constant", "t", "tau", "eps", "value", "method", "tau_star"]
    rows = [[k for k in keys if any(rec.get(k) is not None for rec in records)]]
    for rec in records:
        rows.append([_fmt_cell(rec.get(k)) for k in rows[0]])
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
    ) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _records_output(records, fmt, out_path, with_eps=False) -> None:
    if fmt == "json":
        text = "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"
    elif fmt == "csv":
        text = _records_to_csv(records, with_eps)
    else:
        text = _records_to_table(records)
    _emit(text, out_path)


def run_compute(args) -> int:
    space = parse_space(args.space)
    name = args.constant
    if name not in CONSTANTS:
        raise UsageError(f"unknown constant {name!r}; known: {sorted(CONSTANTS)}")
    t = parse_t(args.t) if args.t is not None else None
    tau = float(args.tau) if args.tau is not None else None
    eps = float(args.eps) if args.eps is not None else None
    _require_params(name, t, tau, eps)
    cfg = _config_from_args(args)
    record = _evaluate(space, name, t, tau, eps, cfg)
    _records_output([record], args.format, args.out, with_eps="eps" in record)
    return EXIT_OK


def run_sweep(args) -> int:
    space = parse_space(args.space)
    name = args.constant
    if name not in CONSTANTS:
        raise UsageError(f"unknown constant {name!r}; known: {sorted(CONSTANTS)}")
    if not (_is_ranged(args.t) or _is_ranged(args.tau) or _is_ranged(args.eps)):
        raise UsageError("sweep requires at least one ranged parameter (use a:b:step or a,b,c)")
    ts = sorted(parse_range(args.t, parse_t)) if args.t is not None else [None]
    taus = sorted(parse_range(args.tau)) if args.tau is not None else [None]
    epss = sorted(parse_range(args.eps)) if args.eps is not None else [None]
    if not ts or not taus or not epss:
        raise UsageError("empty parameter range")
    _require_params(name, ts[0], taus[0], epss[0])
    cfg = _config_from_args(args)
    records = []
    for t in ts:
        for tau in taus:
            for eps in epss:
                records.append(_evaluate(space, name, t, tau, eps, cfg))
    fmt = "csv" if args.format == "table" else args.format
    _records_output(records, fmt, args.out, with_eps=any("eps" in r for r in records))
    return EXIT_OK


def run_check(args) -> int:
    claims = [c.strip() for c in args.claim.split(",")] if args.claim else ["all"]
    spaces = [parse_space(s.strip()) for s in args.space.split(",")] if args.space else None
    cfg = _config_from_args(args)
    certs = verify.run_claims(spaces=spaces, claims=claims, cfg=cfg)
    if args.format == "table":
        _emit(verify.format_certificate_table(certs), args.out)
    else:
        _emit(verify.certificates_to_jsonl(certs), args.out)
    counts = verify.summarize(certs)
    sys.stderr.write(
        f"certificates: {counts['total']} total, {counts['pass']} pass, "
        f"{counts['inconclusive']} inconclusive, {counts['skipped']} skipped, "
        f"{counts['fail']} fail\n"
    )
    return EXIT_CHECK_FAIL if counts["fail"] else EXIT_OK


def run_reproduce(args) -> int:
    cfg = _config_from_args(args)
    lines = reproduce_target(args.target, cfg)
    rows = [["target", "quantity", "expected", "computed", "|diff|", "tol", "status"]]
    for ln in lines:
        rows.append(
            [
                ln.target,
                ln.label,
                f"{ln.expected:.12g}",
                f"{ln.computed:.12g}",
                f"{abs(ln.diff):.3g}",
                f"{ln.tol:g}",
                "pass" if ln.passed else "FAIL",
            ]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    text = "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
    ) + "\n"
    _emit(text, args.out)
    failures = sum(not ln.passed for ln in lines)
    sys.stderr.write(f"reproduce {args.target}: {len(lines)} lines, {failures} failures\n")
    return EXIT_CHECK_FAIL if failures else EXIT_OK


CLAIM_IDS_HELP = ",".join(verify.CLAIM_IDS) + ",all"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banach2d",
        description="Geometric constants of two-dimensional normed spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute one constant")
    p_compute.add_argument("--space", required=True)
    p_compute.add_argument("--constant", required=True)
    p_compute.add_argument("--t", default=None, help="mean parameter (use --t=-inf for -inf)")
    p_compute.add_argument("--tau", default=None)
    p_compute.add_argument("--eps", default=None)
    _add_common(p_compute)
    p_compute.set_defaults(func=run_compute)

    p_sweep = sub.add_parser("sweep", help="sweep parameter ranges")
    p_sweep.add_argument("--space", required=True)
    p_sweep.add_argument("--constant", required=True)
    p_sweep.add_argument("--t", default=None, help="value, comma list, or start:stop:step")
    p_sweep.add_argument("--tau", default=None)
    p_sweep.add_argument("--eps", default=None)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=run_sweep)

    p_check = sub.add_parser("check", help="certify the inequality claims")
    p_check.add_argument("--claim", default="all", help=f"comma list from {CLAIM_IDS_HELP}")
    p_check.add_argument("--space", default=None, help="comma list; default: the four built-ins")
    _add_common(p_check)
    p_check.set_defaults(func=run_check)

    p_repro = sub.add_parser("reproduce", help="regenerate the reference tables")
    p_repro.add_argument("target", help="example-3.1 | example-3.2 | example-3.4 | all")
    _add_common(p_repro)
    p_repro.set_defaults(func=run_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
