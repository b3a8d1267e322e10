"""Command line interface.

Commands operate on an example (built in, or loaded from a config file) and
print one JSON object per line by default; --format table renders the same
data for reading.  Exact values are serialized as strings ("3/2", "inf"),
counters as integers, so output is byte-stable across runs.

Exit codes: 0 success, 2 usage or config errors, 3 consistency failures
(a stage that contradicts its program, or cross-checks that disagree),
4 undecided results under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .analysis import (DEFAULT_BUDGET, LimitTrace, MembershipVerdict,
                       classify_shannon)
from .config import ConfigError, load_config_file
from .parsing import ParseError, parse_expr
from .programs import (Infinite, ProgramConsistencyError, ProgramError,
                       ValuationProgram, classify_multiplicity,
                       multiplicity_sequence)
from .pullback import composite_value, member_pullback, member_RP, residue
from .registry import Example, get_example
from .series import DEFAULT_PRECISION, SeriesTrace, StreamError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3
EXIT_UNDECIDED = 4


class CLIError(Exception):
    """User-facing failure with a dedicated exit code."""

    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class Reporter:
    """Collects output lines and the facts that drive the exit code."""

    def __init__(self, fmt: str, strict: bool):
        self.fmt = fmt
        self.strict = strict
        self.undecided = 0
        self.disagreements = 0

    def emit(self, obj: dict) -> None:
        if self.fmt == "json":
            print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
        else:
            print(self._as_table_row(obj))

    @staticmethod
    def _as_table_row(obj: dict) -> str:
        parts = []
        for key in sorted(obj):
            if key == "schema":
                continue
            value = obj[key]
            if isinstance(value, dict):
                inner = " ".join(f"{k}={value[k]}" for k in sorted(value))
                parts.append(f"{key}: [{inner}]")
            elif isinstance(value, list):
                parts.append(f"{key}: {' '.join(str(v) for v in value)}")
            else:
                parts.append(f"{key}: {value}")
        return "  ".join(parts)

    def exit_code(self) -> int:
        if self.disagreements:
            return EXIT_INCONSISTENT
        if self.strict and self.undecided:
            return EXIT_UNDECIDED
        return EXIT_OK


def enc(value) -> str | None:
    """Exact scalar to its stable string form."""
    if value is None:
        return None
    if isinstance(value, (Fraction, int, Infinite)):
        return str(value)
    raise TypeError(f"cannot serialize {value!r}")


# -- command implementations --------------------------------------------------

def cmd_run(example: Example, args, rep: Reporter) -> None:
    steps = args.steps
    rep.emit({"schema": "run.header", "example": example.name,
              "kind": example.kind, "bases": list(example.ambient),
              "description": example.description})
    source = example.source
    for n in range(steps + 1):
        values = source.value_vector_at(n)
        rep.emit({
            "schema": "run.stage",
            "stage": n,
            "directive": _directive_text(example, n),
            "values": [enc(v) for v in values],
            "multiplicity": enc(min(values)),
        })


def _directive_text(example: Example, n: int) -> str | None:
    if n == 0:
        return None
    source = example.source
    if isinstance(source, ValuationProgram):
        return source.step_at(n).serialize(source.bases)
    return source.directive_at(n).describe(tuple(source.bases))


def cmd_member(example: Example, args, rep: Reporter) -> None:
    mode = args.mode
    if mode in ("pullback", "both") and not example.has_pullback:
        raise CLIError(f"example {example.name} has no pullback side; "
                       f"--mode {mode} does not apply")
    for expr in args.elements:
        f = _parse_element(expr, example)
        line: dict = {"schema": "member", "element": expr,
                      "example": example.name, "mode": mode,
                      "budget": args.budget}
        union = pull = None
        if mode in ("union", "both"):
            union = example.session.member(f, args.budget)
            line["union"] = _member_dict(union)
            if not union.decided:
                rep.undecided += 1
        if mode in ("pullback", "both"):
            pull = member_pullback(f, example.prime, example.quotient,
                                   args.budget, args.precision)
            line["pullback"] = {"status": pull.status, "detail": pull.detail}
            if not pull.decided:
                rep.undecided += 1
        if mode == "both":
            agreement = _agreement(union, pull)
            line["agreement"] = agreement
            if agreement == "disagree":
                rep.disagreements += 1
        rep.emit(line)


def _member_dict(v: MembershipVerdict) -> dict:
    if v.decided:
        return {"verdict": "In", "stage": v.stage}
    return {"verdict": "NotWithinBudget", "budget": v.budget}


def _agreement(union: MembershipVerdict, pull) -> str:
    """The union search can only certify membership, never exclusion, so a
    budget exhaustion only counts as agreement against a definite NotIn."""
    if union.decided and pull.status == "In":
        return "agree"
    if not union.decided and pull.status == "NotIn":
        return "agree"
    if union.decided and pull.status == "NotIn":
        return "disagree"
    return "undecided"


def cmd_classify(example: Example, args, rep: Reporter) -> None:
    line: dict = {"schema": "classify", "example": example.name,
                  "kind": example.kind}
    if example.kind == "program":
        outcome = classify_multiplicity(example.program)
        shannon = classify_shannon(example.program)
        line["multiplicity"] = _mult_dict(outcome)
        line["shannon"] = _shannon_dict(shannon)
        if outcome.kind == "Undecided" or shannon.kind == "Unknown":
            rep.undecided += 1
    elif example.kind == "series":
        shannon = classify_shannon(SeriesTrace(example.series))
        line["multiplicity"] = {"kind": "Divergent",
                                "detail": "every stage has multiplicity 1"}
        line["shannon"] = _shannon_dict(shannon)
    else:
        line.update(_classify_pullback(example, rep))
    rep.emit(line)


def _classify_pullback(example: Example, rep: Reporter) -> dict:
    prime_text = ", ".join(example.prime.generators)
    if isinstance(example.quotient, ValuationProgram):
        outcome = classify_multiplicity(example.quotient)
        mult = _mult_dict(outcome)
        divergent = outcome.kind == "Divergent"
        undecided = outcome.kind == "Undecided"
    else:
        mult = {"kind": "Divergent",
                "detail": "every quotient stage has multiplicity 1"}
        divergent = True
        undecided = False
    if divergent:
        shannon = {
            "kind": "NonArchimedean",
            "reason": f"the quotient multiplicity sum diverges, so the union "
                      f"is the full pullback along ({prime_text}) and powers "
                      f"of the prime stay below every unit multiple",
            "union_is_pullback": True,
        }
    else:
        shannon = {
            "kind": "Unknown",
            "reason": f"the quotient multiplicity sum does not diverge, so "
                      f"the union may be smaller than the pullback along "
                      f"({prime_text})",
            "union_is_pullback": False,
        }
        rep.undecided += 1
    if undecided:
        rep.undecided += 1
    return {"quotient_multiplicity": mult, "shannon": shannon}


def _mult_dict(outcome) -> dict:
    d = {"kind": outcome.kind, "detail": outcome.detail}
    if outcome.limit is not None:
        d["limit"] = enc(outcome.limit)
    return d


def _shannon_dict(shannon) -> dict:
    d = {"kind": shannon.kind, "reason": shannon.reason}
    if shannon.witness is not None:
        d["witness"] = shannon.witness
    return d


def cmd_multiplicity(example: Example, args, rep: Reporter) -> None:
    entries = _multiplicities(example, args.steps)
    line = {"schema": "multiplicity", "example": example.name,
            "steps": args.steps, "entries": [enc(m) for m in entries]}
    if args.sum:
        line["sum"] = enc(sum(entries, Fraction(0)))
    rep.emit(line)


def _multiplicities(example: Example, steps: int) -> list[Fraction]:
    if example.kind == "program":
        return multiplicity_sequence(example.program, steps)
    return example.source.multiplicity_sequence(steps)


def cmd_value(example: Example, args, rep: Reporter) -> None:
    for expr in args.elements:
        f = _parse_element(expr, example)
        try:
            res = example.session.value_of(f, args.budget)
        except (ValueError, ArithmeticError) as exc:
            raise CLIError(str(exc)) from None
        line = {"schema": "value", "element": expr, "example": example.name,
                "budget": args.budget}
        if res is None:
            line.update({"value": None, "stage": None, "decided": False})
            rep.undecided += 1
        else:
            value, stage = res
            line.update({"value": enc(value), "stage": stage,
                         "decided": True})
        rep.emit(line)


def cmd_wapprox(example: Example, args, rep: Reporter) -> None:
    ref_expr = args.reference or example.ambient[0]
    ref = _parse_element(ref_expr, example)
    for expr in args.elements:
        f = _parse_element(expr, example)
        try:
            trace = example.session.w_approx(f, ref, args.budget)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        rep.emit(_trace_dict(trace, {"schema": "wapprox", "element": expr,
                                     "reference": ref_expr,
                                     "example": example.name,
                                     "budget": args.budget}))
        if not trace.stabilized:
            rep.undecided += 1


def cmd_eapprox(example: Example, args, rep: Reporter) -> None:
    for expr in args.elements:
        f = _parse_element(expr, example)
        try:
            result = example.session.e_approx(f, args.budget)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        line = {"schema": "eapprox", "element": expr,
                "example": example.name, "budget": args.budget}
        if isinstance(result, MembershipVerdict):
            line.update({"verdict": "NotWithinBudget",
                         "note": "the element never entered the union, so "
                                 "there is nothing to transform"})
            rep.undecided += 1
        else:
            line = _trace_dict(result, line)
            if not result.stabilized:
                rep.undecided += 1
        rep.emit(line)


def _trace_dict(trace: LimitTrace, line: dict) -> dict:
    line.update({
        "start": trace.start,
        "approximants": [enc(a) for a in trace.approximants],
        "stabilized": trace.stabilized,
        "last": enc(trace.last),
    })
    return line


def cmd_composite(example: Example, args, rep: Reporter) -> None:
    if not example.has_pullback:
        raise CLIError(f"example {example.name} has no prime/quotient pair; "
                       f"composite values do not apply")
    for expr in args.elements:
        f = _parse_element(expr, example)
        try:
            cv = composite_value(f, example.prime, example.quotient,
                                 args.budget, args.precision)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        line = {"schema": "composite", "element": expr,
                "example": example.name,
                "prime_order": cv.prime_order,
                "residue_value": enc(cv.residue_value),
                "decided": cv.decided}
        if not cv.decided:
            rep.undecided += 1
        if args.diagnostic:
            local = member_RP(f, example.prime)
            diag = {"member_rp": local}
            if local:
                diag["residue"] = str(residue(f, example.prime))
            verdict = member_pullback(f, example.prime, example.quotient,
                                      args.budget, args.precision)
            diag["pullback"] = verdict.status
            line["diagnostic"] = diag
        rep.emit(line)


# -- argument plumbing ---------------------------------------------------------

def _parse_element(expr: str, example: Example):
    try:
        f = parse_expr(expr, example.ambient)
    except ParseError as exc:
        raise CLIError(f"bad element {expr!r}: {exc}") from None
    return f


def _resolve_example(args) -> Example:
    if args.example and args.config:
        raise CLIError("give either --example or --config, not both")
    if args.example:
        try:
            return get_example(args.example)
        except KeyError as exc:
            raise CLIError(str(exc.args[0])) from None
    if args.config:
        try:
            return load_config_file(args.config)
        except FileNotFoundError:
            raise CLIError(f"config file not found: {args.config}") from None
        except (ConfigError, ProgramError, StreamError) as exc:
            raise CLIError(f"bad config {args.config}: {exc}") from None
    raise CLIError("an example is required: --example NAME or --config FILE")


def _add_common(parser: argparse.ArgumentParser, elements: bool = False) -> None:
    parser.add_argument("--example", help="name of a built-in example")
    parser.add_argument("--config", help="path to a config file")
    parser.add_argument("--format", choices=("json", "table"),
                        default="json", help="output format")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum stage to explore")
    parser.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="starting series precision")
    parser.add_argument("--strict", action="store_true",
                        help="exit with status 4 if anything stays undecided")
    if elements:
        parser.add_argument("-e", "--element", dest="elements",
                            action="append", required=True, metavar="EXPR",
                            help="element of the ambient field (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqt",
        description="exact computations along iterated local quadratic "
                    "transforms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="walk the stages: directives, values, "
                                   "multiplicities")
    _add_common(p)
    p.add_argument("--steps", type=int, default=8,
                   help="number of transform steps to walk")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("member", help="membership of elements in the union "
                                      "ring")
    _add_common(p, elements=True)
    p.add_argument("--mode", choices=("union", "pullback", "both"),
                   default="union",
                   help="check the stage union, the pullback ring, or both")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("classify", help="classify the union ring")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("multiplicity", help="stage multiplicities")
    _add_common(p)
    p.add_argument("--steps", type=int, default=8,
                   help="number of entries to list")
    p.add_argument("--sum", action="store_true",
                   help="include the partial sum")
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("value", help="exact values of elements")
    _add_common(p, elements=True)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("wapprox", help="order-ratio approximants")
    _add_common(p, elements=True)
    p.add_argument("--ref", dest="reference", metavar="EXPR",
                   help="reference element (default: the first variable)")
    p.set_defaults(func=cmd_wapprox)

    p = sub.add_parser("eapprox", help="transform-order approximants")
    _add_common(p, elements=True)
    p.set_defaults(func=cmd_eapprox)

    p = sub.add_parser("composite", help="rank-two values along the prime")
    _add_common(p, elements=True)
    p.add_argument("--diagnostic", action="store_true",
                   help="include localization and pullback details")
    p.set_defaults(func=cmd_composite)

    return parser


def _validate_args(args) -> None:
    if args.budget < 0:
        raise CLIError("--budget must be nonnegative")
    if args.precision < 1:
        raise CLIError("--precision must be positive")
    if getattr(args, "steps", 0) < 0:
        raise CLIError("--steps must be nonnegative")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Reporter(args.format, args.strict)
    try:
        _validate_args(args)
        example = _resolve_example(args)
        args.func(example, args, rep)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ProgramConsistencyError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ProgramError, ParseError, StreamError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
