"""Command-line front end.

Exit codes separate mathematics from plumbing so shell pipelines can
branch on verdicts:

    0  success / verdict yes / verification passed
    1  verdict no / verification failed (a certificate is still emitted)
    2  input error: unparsable files, invalid ideal data, zero ideal
    3  capability or budget error: missing oracle, non-compact carrier

Outputs are JSON records with versioned `schema` fields by default;
`--format text` renders the same content for humans.  All randomness is
seed-flagged; outputs depend only on inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import formats
from .dynamics import System
from .errors import (
    CapabilityError,
    CarrierError,
    FormatError,
    InvalidIdealError,
    IterationBudgetError,
    NotCompactError,
    SystemMismatchError,
    ZeroIdealError,
)
from .harness import EnumBudget, crosscheck, random_series
from .ideals import (
    decide_au,
    decide_left_au,
    decide_m_ideal,
    decide_right_au,
    validate_star,
)
from .representation import opnorm_bracket, refinement_schedule
from .units import residual_left, residual_right, unit_element, verify_witness

_INPUT_ERRORS = (
    FormatError,
    InvalidIdealError,
    ZeroIdealError,
    CarrierError,
    SystemMismatchError,
    FileNotFoundError,
)
_CAPABILITY_ERRORS = (CapabilityError, NotCompactError, IterationBudgetError)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _load_system(args) -> System:
    if not args.system:
        raise FormatError("--system FILE is required for this command")
    return formats.parse_system(_read(args.system))


def _load_spec(args, system: System):
    if not args.spec:
        raise FormatError("--spec FILE is required for this command")
    return formats.parse_ideal(_read(args.spec), system)


def _load_series(args, system: System):
    if not args.series:
        raise FormatError("--series FILE is required for this command")
    return formats.parse_series(_read(args.series), system)


def _render_text(record, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(record, dict):
        lines = []
        for key in record:
            value = record[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(record, list):
        lines = []
        for value in record:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
        return "\n".join(lines) if lines else f"{pad}[]"
    return f"{pad}{record}"


def _emit(args, record: dict) -> None:
    if args.format == "json":
        text = formats.dump_json(record)
    else:
        text = _render_text(record) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _candidate_pool(spec, system, seed: int, count: int):
    budget = EnumBudget(seed=seed)
    rng = random.Random(f"{seed}:verify")
    pool = [random_series(system, spec, budget, rng) for _ in range(count)]
    pool += [unit_element(spec, system.canonical_window(r)) for r in (1, 2, 4)]
    return pool


# -- command handlers ------------------------------------------------------------


def _cmd_validate(args) -> int:
    system = _load_system(args)
    reports = [system.validate().to_dict()]
    if args.spec:
        spec = _load_spec(args, system)
        reports.append(validate_star(spec).to_dict())
    ok = all(r["pass"] for r in reports)
    _emit(args, {"schema": formats.SCHEMA_REPORT, "pass": ok, "reports": reports})
    return 0 if ok else 1


def _cmd_decide(args) -> int:
    system = _load_system(args)
    spec = _load_spec(args, system)
    chooser = {
        "right": decide_right_au,
        "left": decide_left_au,
        "au": decide_au,
        "m_ideal": decide_m_ideal,
    }
    modes = [name for name in chooser if getattr(args, name)]
    if len(modes) != 1:
        raise FormatError(
            "decide needs exactly one of --right, --left, --au, --m-ideal"
        )
    decision = chooser[modes[0]](spec)
    _emit(args, formats.decision_record(decision))
    return 0 if decision.verdict else 1


def _cmd_witness(args) -> int:
    system = _load_system(args)
    spec = _load_spec(args, system)
    decide = decide_right_au if args.side == "right" else decide_left_au
    decision = decide(spec)
    if decision.verdict:
        raise InvalidIdealError(
            f"the ideal has a {args.side} approximate unit: no obstruction exists"
        )
    record = dict(decision.evidence)
    record.pop("failed-clause", None)
    record.pop("kind", None)
    _emit(args, {"schema": formats.SCHEMA_WITNESS, **record})
    return 0


def _cmd_unit(args) -> int:
    system = _load_system(args)
    spec = _load_spec(args, system)
    window = system.canonical_window(args.window)
    element = unit_element(spec, window)
    _emit(
        args,
        {
            "schema": formats.SCHEMA_VALUE,
            "kind": "unit-element",
            "window-radius": args.window,
            "window": list(window),
            "series": formats.series_record(element),
        },
    )
    return 0


def _cmd_residual(args) -> int:
    system = _load_system(args)
    spec = _load_spec(args, system)
    series = _load_series(args, system)
    window = system.canonical_window(args.window)
    fn = residual_right if args.side == "right" else residual_left
    value = fn(spec, series, window)
    _emit(
        args,
        {
            "schema": formats.SCHEMA_VALUE,
            "kind": "residual",
            "side": args.side,
            "window-radius": args.window,
            "exact": str(value),
            "float": float(value),
        },
    )
    return 0


def _cmd_norm(args) -> int:
    system = _load_system(args)
    series = _load_series(args, system)
    schedule = refinement_schedule(system, series, steps=args.steps)
    lower, upper = opnorm_bracket(system, series, schedule)
    _emit(
        args,
        {
            "schema": formats.SCHEMA_VALUE,
            "kind": "operator-norm-bracket",
            "steps": args.steps,
            "lower": lower,
            "upper-exact": str(upper),
            "upper": float(upper),
        },
    )
    return 0


def _cmd_crosscheck(args) -> int:
    budget = EnumBudget(
        max_carrier=args.max_carrier,
        max_stable_len=args.max_stable_len,
        template_window=args.template_window,
        seed=args.seed,
        sample_count=args.sample_count,
    )
    report = crosscheck(budget, mutation=args.mutation)
    if args.format == "json":
        record = report.to_dict()
        _emit(args, record)
    else:
        text = report.render_text() + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    return 0 if report.ok else 1


def _cmd_verify_witness(args) -> int:
    system = _load_system(args)
    spec = _load_spec(args, system)
    if not args.witness:
        raise FormatError("--witness FILE is required")
    record = json.loads(_read(args.witness))
    witness = formats.parse_witness_record(record, system)
    pool = _candidate_pool(spec, system, args.seed, args.samples)
    report = verify_witness(spec, witness, pool)
    _emit(args, {"schema": formats.SCHEMA_REPORT, **report.to_dict()})
    return 0 if report.ok else 1


# -- parser ------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semicrossed",
        description="decide approximate units of semicrossed-product ideals, "
        "with machine-checkable certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--system", help="system description file")
        p.add_argument("--spec", help="ideal description file")
        p.add_argument("--series", help="series literal file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="validate a system and optional ideal")
    common(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("decide", help="decide approximate-unit existence")
    common(p)
    p.add_argument("--right", action="store_true")
    p.add_argument("--left", action="store_true")
    p.add_argument("--au", action="store_true")
    p.add_argument("--m-ideal", dest="m_ideal", action="store_true")
    p.set_defaults(handler=_cmd_decide)

    p = sub.add_parser("witness", help="emit the obstruction witness")
    common(p)
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("unit", help="emit a unit element for a window")
    common(p)
    p.add_argument("--window", type=int, default=4, help="window radius")
    p.set_defaults(handler=_cmd_unit)

    p = sub.add_parser("residual", help="exact residual of a series")
    common(p)
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.add_argument("--window", type=int, default=4, help="window radius")
    p.set_defaults(handler=_cmd_residual)

    p = sub.add_parser("norm", help="operator-norm bracket via truncations")
    common(p)
    p.add_argument("--steps", type=int, default=4, help="refinement steps")
    p.set_defaults(handler=_cmd_norm)

    p = sub.add_parser("crosscheck", help="enumerate and cross-validate")
    common(p)
    p.add_argument("--max-carrier", type=int, default=4)
    p.add_argument("--max-stable-len", type=int, default=3)
    p.add_argument("--template-window", type=int, default=8)
    p.add_argument("--sample-count", type=int, default=25)
    p.add_argument("--mutation", default=None, help="corrupt one decision clause")
    p.set_defaults(handler=_cmd_crosscheck)

    p = sub.add_parser("verify-witness", help="re-check an emitted witness")
    common(p)
    p.add_argument("--witness", help="witness record (JSON)")
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(handler=_cmd_verify_witness)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _INPUT_ERRORS as exc:
        print(f"error:{type(exc).__name__}:{exc}", file=sys.stderr)
        return 2
    except _CAPABILITY_ERRORS as exc:
        print(f"error:{type(exc).__name__}:{exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
