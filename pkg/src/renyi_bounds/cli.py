"""Command-line front end.

Exit codes: 0 on success, 1 when a verified property fails or an embezzlement
search gives up, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import bounds, embezzle, rectangles, spectra, verify

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _number(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(f"{x:.12g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _number(obj)


def dump_json(obj) -> str:
    """JSON with floats at 12 significant digits and infinities as ``"inf"``."""
    return json.dumps(_clean(obj), indent=2) + "\n"


def sweep_csv(report: bounds.BoundReport, family: str, param) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "param", "eps", "beta", "bound_bits"])
    for order, value in report.sweep:
        if report.params.get("order") == "alpha":
            order = bounds.conjugate_order(order)
        writer.writerow([family, param, _number(report.eps), _number(order), _number(value)])
    return buf.getvalue()


def _alpha(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return spectra.INF
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order {text!r}") from None
    if math.isnan(value) or value < 0:
        raise argparse.ArgumentTypeError(f"order must be >= 0 or 'inf', got {text!r}")
    return value


def cmd_entropy(args) -> tuple[str, int]:
    p = spectra.load_spectrum(args.spectrum)
    out = {"alpha": args.alpha, "entropy_bits": spectra.renyi(p, args.alpha), "rank": p.rank}
    return dump_json(out), EXIT_OK


def cmd_function_bound(args) -> tuple[str, int]:
    if args.family == "ip":
        if args.n is None:
            raise UsageError("--family ip requires --n")
        family, param = "ip", args.n
        closed = bounds.ip_bounds_closed(args.n, args.eps)
        sigma = rectangles.function_spectrum(rectangles.ip_rectangle(args.n))
        base = bounds.function_bound_uniform(sigma, args.eps)
        companions = {
            "upper_bits": closed.companions["upper_bits"],
            "closed_lower_bits": closed.value_bits,
            "classical_lower_bits": closed.companions["classical_lower_bits"],
        }
        report = _with(base, params={"family": "ip", "n": args.n}, companions=companions)
    elif args.family == "qchar":
        if args.q is None:
            raise UsageError("--family qchar requires --q")
        family, param = "qchar", args.q
        closed = bounds.qchar_bound_closed(args.q, args.eps)
        base = bounds.function_bound_promise(rectangles.qchar_rectangle(args.q), args.eps)
        companions = {
            **base.companions,
            "upper_bits": closed.companions["upper_bits"],
            "closed_lower_bits": closed.value_bits,
        }
        report = _with(base, params={**base.params, "family": "qchar", "q": args.q},
                       companions=companions)
    else:
        r = rectangles.from_csv(args.rectangle)
        family, param = "rectangle", Path(args.rectangle).name
        if r.full_support:
            base = bounds.function_bound_uniform(rectangles.function_spectrum(r), args.eps)
        else:
            base = bounds.function_bound_promise(r, args.eps)
        report = _with(base, params={**base.params, "rectangle": param,
                                     "support_size": r.support_size})
    if args.format == "csv":
        return sweep_csv(report, family, param), EXIT_OK
    return dump_json(report.to_dict()), EXIT_OK


def _with(report: bounds.BoundReport, params=None, companions=None) -> bounds.BoundReport:
    return bounds.BoundReport(
        report.theorem_tag,
        report.value_bits,
        report.optimizer,
        report.eps,
        params=params if params is not None else report.params,
        companions=companions if companions is not None else report.companions,
        sweep=report.sweep,
    )


def cmd_state_bound(args) -> tuple[str, int]:
    phi = spectra.load_spectrum(args.phi)
    psi = spectra.load_spectrum(args.psi)
    if args.exact:
        report = bounds.exact_transform_bound(phi, psi)
    else:
        report = bounds.state_approx_bound(phi, psi, args.eps)
    report = _with(report, params={**report.params, "phi": Path(args.phi).name,
                                   "psi": Path(args.psi).name})
    if args.format == "csv":
        return sweep_csv(report, "state-exact" if args.exact else "state-approx",
                         Path(args.psi).name), EXIT_OK
    return dump_json(report.to_dict()), EXIT_OK


def cmd_embezzle(args) -> tuple[str, int]:
    if args.target is not None:
        target = spectra.load_spectrum(args.target)
    else:
        if args.target_epr < 1:
            raise UsageError("--target-epr must be >= 1")
        target = spectra.uniform(args.target_epr)
    if args.dim is not None:
        if args.dim < 1:
            raise UsageError("--dim must be >= 1")
        f = embezzle.embezzle_fidelity(args.dim, target)
        return dump_json(embezzle.EmbezzleResult(args.dim, f, tuple(target)).to_dict()), EXIT_OK
    try:
        result = embezzle.min_embezzle_dim(target, args.eps)
    except embezzle.EmbezzleCapError as exc:
        out = {**exc.best.to_dict(), "error": str(exc)}
        return dump_json(out), EXIT_VIOLATION
    return dump_json(result.to_dict()), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    results = verify.run_suite(args.suite, args.seed)
    lines = [f"seed {args.seed} suite {args.suite}"]
    lines += [r.line() for r in results]
    failed = [r for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} properties passed")
    return "\n".join(lines) + "\n", EXIT_VIOLATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write to this path instead of stdout")

    parser = argparse.ArgumentParser(
        prog="renyi-bounds",
        description="Rényi-entropy lower bounds on quantum communication.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="Rényi entropy of a spectrum file")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--alpha", type=_alpha, required=True)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("function-bound", parents=[common], help="lower bound for a function")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=("ip", "qchar"))
    src.add_argument("--rectangle", help="CSV of -1/0/1 entries")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--eps", type=float, default=0.0)
    p.set_defaults(func=cmd_function_bound)

    p = sub.add_parser("state-bound", parents=[common], help="lower bound for phi -> psi")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_state_bound)

    p = sub.add_parser("embezzle", parents=[common], help="embezzlement fidelity and search")
    tgt = p.add_mutually_exclusive_group(required=True)
    tgt.add_argument("--target", help="spectrum file")
    tgt.add_argument("--target-epr", type=int, metavar="K")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eps", type=float)
    mode.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_embezzle)

    p = sub.add_parser("verify", parents=[common], help="run the seeded property suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command not in ("function-bound", "state-bound"):
        parser.error(f"--format csv is not available for {args.command}")
    try:
        text, code = args.func(args)
    except (UsageError, ValueError, ArithmeticError, OSError) as exc:
        print(f"renyi-bounds {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
