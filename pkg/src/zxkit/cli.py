"""Command-line front end.

Thin client over ``service.ops``: each subcommand builds a request model,
runs the same operation the HTTP routes use, and renders the response.
Exit codes: 0 success (or equivalent / all rules pass), 1 semantic
negative (a rule failed, circuits differ, compared tensors differ),
2 usage, parse, I/O, or resource-limit errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .service import ops
from .service.models import (
    DecomposeRequest,
    EvalRequest,
    OptimizeRequest,
    QbcCheckRequest,
    RuleValidationRequest,
)
from .tensor import ResourceLimitError


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _split_csv(raw: str | None) -> list[str] | None:
    if raw is None:
        return None
    return [f for f in (p.strip() for p in raw.split(",")) if f]


def cmd_validate_rules(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise ValueError("samples must be at least 1")
    if args.tol <= 0:
        raise ValueError("tolerance must be positive")
    req = RuleValidationRequest(
        samples=args.samples,
        seed=args.seed,
        max_arity=args.max_arity,
        tol=args.tol,
        only=_split_csv(args.only),
        include_timings=args.timings,
    )
    resp = ops.validate_rules(req)
    per_rule: dict[str, list] = {}
    for rec in resp.records:
        per_rule.setdefault(rec.rule, []).append(rec)
    for rule, recs in per_rule.items():
        bad = [r for r in recs if not r.equal]
        status = "ok" if not bad else f"FAILED ({len(bad)} of {len(recs)})"
        print(f"{rule}: {len(recs)} checks, {status}")
        for r in bad:
            print(
                f"  failed: variant={r.variant} angles={r.angles} "
                f"arities={r.arities} swapped={r.color_swapped} residual={r.residual:g}"
            )
    print(
        f"corpus: {len(per_rule)} rules, {resp.checks} checks, "
        f"{resp.failures} failures"
    )
    if args.report is not None:
        payload = resp.model_dump(exclude_none=not args.timings)
        Path(args.report).write_text(_dump(payload))
    return 0 if resp.passed else 1


def cmd_decompose(args: argparse.Namespace) -> int:
    mode = "parity-to-and" if args.theorem1 else "pi4"
    circuit_text = Path(args.infile).read_text() if args.infile else None
    support = _split_csv(args.support)
    req = DecomposeRequest(
        mode=mode,
        wires=args.wires,
        support=[int(w) for w in support] if support else None,
        beta=args.beta,
        circuit_text=circuit_text,
    )
    resp = ops.decompose(req)
    _write_or_print(resp.circuit_text, args.out)
    stats = f"terms {len(resp.circuit_text.splitlines()) - 1}, t-count {resp.t_count}"
    print(stats, file=sys.stderr if args.out is None else sys.stdout)
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    text = Path(args.input).read_text()
    resp = ops.optimize(OptimizeRequest(circuit_text=text))
    _write_or_print(resp.circuit_text, args.out)
    stats = f"t-count {resp.t_before} -> {resp.t_after}"
    print(stats, file=sys.stderr if args.out is None else sys.stdout)
    return 0


def cmd_qbc_check(args: argparse.Namespace) -> int:
    req = QbcCheckRequest(
        circuit_a=Path(args.circuit_a).read_text(),
        circuit_b=Path(args.circuit_b).read_text(),
        data_bits_only=args.data_bits_only,
    )
    resp = ops.qbc_check(req)
    if resp.equivalent:
        print("equivalent")
        return 0
    print(f"not equivalent: first differing ancilla-zero input {resp.witness_bits}")
    return 1


def cmd_eval(args: argparse.Namespace) -> int:
    if args.tol <= 0:
        raise ValueError("tolerance must be positive")
    diagram = json.loads(Path(args.input).read_text())
    compare = json.loads(Path(args.compare).read_text()) if args.compare else None
    req = EvalRequest(diagram=diagram, compare=compare, tol=args.tol)
    resp = ops.eval_diagram(req)
    if args.compare is None:
        _write_or_print(_dump(resp.tensor), args.out)
        return 0
    if args.out is not None:
        Path(args.out).write_text(_dump(resp.tensor))
    match = resp.match
    sys.stdout.write(_dump(match.model_dump(exclude_none=True)))
    return 0 if match.equal else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zxkit",
        description="validate, decompose, optimize, and evaluate ZX diagrams "
        "and phase-polynomial circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "validate-rules", help="check the rewrite-rule corpus against the tensor oracle"
    )
    p.add_argument("--samples", type=int, default=20, help="instantiations per rule")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--max-arity", type=int, default=4, help="arity cap for sampled spiders")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance")
    p.add_argument("--only", help="comma-separated rule ids to validate")
    p.add_argument("--report", help="write the full JSON report here")
    p.add_argument(
        "--timings", action="store_true", help="include per-check timings in the report"
    )
    p.set_defaults(func=cmd_validate_rules)

    p = sub.add_parser("decompose", help="expand parity gadgets into smaller terms")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument(
        "--theorem1",
        action="store_true",
        help="one AND phase per support subset, angles beta*(-2)^(k-1)",
    )
    mode.add_argument(
        "--pi4",
        action="store_true",
        help="replace an odd-pi/4 gadget by single, pair, and triple gadgets",
    )
    p.add_argument("--wires", type=int, help="wire count for an inline gadget")
    p.add_argument("--support", help="comma-separated wires (default: all)")
    p.add_argument("--beta", help="inline gadget angle, e.g. 1/3pi")
    p.add_argument("--in", dest="infile", help="gadget file to decompose instead")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser(
        "optimize", help="fuse gadgets and rewrite wide odd-pi/4 gadgets"
    )
    p.add_argument("input", help="gadget circuit file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser(
        "qbc-check", help="compare two controlled-NOT circuits on ancilla-zero inputs"
    )
    p.add_argument("circuit_a")
    p.add_argument("circuit_b")
    p.add_argument(
        "--data-bits-only",
        action="store_true",
        help="ignore ancilla output bits in the comparison",
    )
    p.set_defaults(func=cmd_qbc_check)

    p = sub.add_parser("eval", help="contract a diagram JSON file to a tensor")
    p.add_argument("input", help="diagram JSON file")
    p.add_argument("--out", help="tensor JSON output file (default: stdout)")
    p.add_argument("--compare", help="second diagram; report equality up to scalar")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
