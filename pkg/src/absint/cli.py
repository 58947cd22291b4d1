"""Command-line front end.

    analyze --domain interval --engine ab2 --init "x=[0,0]" prog.while

Exit codes: 0 success, 1 parse or configuration error, 2 the oracle found a
counterexample, 3 an internal invariant was violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

from . import jsonio
from .domain_api import (
    AbstractDomain, MonitoredDomain, State, format_state, is_consistent, opt_state_to_assert,
)
from .domains import DOMAINS, make_domain
from .hoare import conditions, render_condition
from .interpreter import ab1, ab2
from .semantics import OracleConfig, OracleResourceError, check_conditions_bounded
from .syntax import ParseError, cleanup, is_identifier, layout_ann_instr, parse_instr

log = logging.getLogger("absint")

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_INTERNAL = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AnalysisConfig:
    domain: str = "interval"
    engine: str = "ab2"
    init: str = ""
    format: str = "text"
    check_vcs: bool = False
    bound: int = 16
    widen_iters: Optional[int] = None
    approx_budget: Optional[int] = None


def _split_entries(text: str) -> list[str]:
    entries, depth, current = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            entries.append("".join(current))
            current = []
        else:
            current.append(ch)
    entries.append("".join(current))
    return [e.strip() for e in entries if e.strip()]


def parse_init_state(text: str, domain: AbstractDomain) -> State:
    """Parse ``x=v, y=w`` into a state, keeping entry order."""
    state: list = []
    for entry in _split_entries(text):
        name, sep, value = entry.partition("=")
        name = name.strip()
        if not sep or not is_identifier(name):
            raise ConfigError(f"bad state entry {entry!r}; expected var=value")
        if any(name == y for y, _ in state):
            raise ConfigError(f"variable {name!r} bound twice: state must be duplication-free")
        try:
            state.append((name, domain.parse_value(value)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return tuple(state)


@dataclass
class Report:
    config: AnalysisConfig
    domain: AbstractDomain
    program: object
    init: State
    annotated: object
    final: Optional[State]
    conditions: list
    oracle: Optional[dict] = None
    internal_errors: tuple[str, ...] = ()

    @property
    def exit_code(self) -> int:
        if self.internal_errors:
            return EXIT_INTERNAL
        if self.oracle is not None and self.oracle["result"] == "counterexample":
            return EXIT_COUNTEREXAMPLE
        return EXIT_OK

    def to_json(self) -> dict:
        return {
            "domain": self.config.domain,
            "engine": self.config.engine,
            "init": jsonio.state_to_json(self.domain, self.init),
            "program": jsonio.instr_to_json(self.program),
            "annotated": jsonio.ann_instr_to_json(self.annotated),
            "final": jsonio.state_to_json(self.domain, self.final),
            "conditions": [jsonio.condition_to_json(c) for c in self.conditions],
            "oracle": self.oracle,
            "internal_errors": list(self.internal_errors),
        }

    def to_text(self) -> str:
        lines = [
            f"domain: {self.config.domain}  engine: {self.config.engine}",
            f"init: {format_state(self.domain, self.init) or '(empty)'}",
            "",
            "annotated program:",
            *("  " + line for line in layout_ann_instr(self.annotated).splitlines()),
            "",
            "final state: " + ("UNREACHABLE" if self.final is None
                               else format_state(self.domain, self.final) or "(empty)"),
            "",
            f"verification conditions ({len(self.conditions)}):",
            *(f"  {k}. {render_condition(c)}" for k, c in enumerate(self.conditions, 1)),
        ]
        if self.oracle is not None:
            lines.append("")
            if self.oracle["result"] == "pass":
                lines.append(f"oracle (bound {self.oracle['bound']}): PASS")
            else:
                g = ", ".join(f"{x}={v}" for x, v in self.oracle["valuation"].items())
                lines.append(f"oracle (bound {self.oracle['bound']}): counterexample for "
                             f"condition {self.oracle['index'] + 1}: {g}")
        for err in self.internal_errors:
            lines.append(f"internal error: {err}")
        return "\n".join(lines)


def analyze(config: AnalysisConfig, source: str) -> Report:
    """Run the configured analysis on program text.

    Raises ParseError or ConfigError for bad input.
    """
    if config.domain not in DOMAINS:
        raise ConfigError(f"unknown domain {config.domain!r}")
    if config.engine not in ("ab1", "ab2"):
        raise ConfigError(f"unknown engine {config.engine!r}")
    base = make_domain(config.domain, config.widen_iters, config.approx_budget)
    init = parse_init_state(config.init, base)
    program = parse_instr(source)

    d = MonitoredDomain(base)
    if config.engine == "ab1":
        annotated, final = ab1(d, program, init)
    else:
        annotated, final = ab2(d, program, init)
    conds = conditions(annotated, opt_state_to_assert(base, final))

    errors = [f"inconsistent state produced: {format_state(base, s)}" for s in d.violations]
    if final is not None and not is_consistent(final):
        errors.append(f"inconsistent final state: {format_state(base, final)}")
    if cleanup(annotated) != program:
        errors.append("annotated program does not erase to the input program")

    report = Report(config, base, program, init, annotated, final, conds,
                    internal_errors=tuple(errors))
    if config.check_vcs:
        found = check_conditions_bounded(base.meaning, conds, OracleConfig(bound=config.bound))
        if found is None:
            report.oracle = {"bound": config.bound, "result": "pass"}
        else:
            index, g = found
            report.oracle = {"bound": config.bound, "result": "counterexample", "index": index,
                             "valuation": jsonio.valuation_to_json(g)}
    return report


def load_report(obj: dict) -> dict:
    """Decode a JSON report back into syntax trees and states."""
    d = make_domain(obj["domain"])
    return {
        "domain": obj["domain"],
        "engine": obj["engine"],
        "init": jsonio.state_from_json(d, obj["init"]),
        "program": jsonio.instr_from_json(obj["program"]),
        "annotated": jsonio.ann_instr_from_json(obj["annotated"]),
        "final": jsonio.state_from_json(d, obj["final"]),
        "conditions": [jsonio.condition_from_json(c) for c in obj["conditions"]],
        "oracle": obj["oracle"],
    }


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for counterexamples
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="analyze", description="Abstract interpretation of while-programs.")
    p.add_argument("--domain", choices=sorted(DOMAINS), default="interval")
    p.add_argument("--engine", choices=["ab1", "ab2"], default="ab2")
    p.add_argument("--init", default="", help='initial abstract state, e.g. "x=[0,0],y=even"')
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--check-vcs", action="store_true", help="run the bounded validity oracle")
    p.add_argument("--bound", type=_nonnegative, default=16, help="oracle bound (default 16)")
    p.add_argument("--widen-iters", type=_nonnegative, default=None)
    p.add_argument("--approx-budget", type=_nonnegative, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("file", help="program file, or - for standard input")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"analyze: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    config = AnalysisConfig(args.domain, args.engine, args.init, args.format, args.check_vcs,
                            args.bound, args.widen_iters, args.approx_budget)
    try:
        if args.file == "-":
            source = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                source = fh.read()
        report = analyze(config, source)
    except (OSError, ParseError, ConfigError, OracleResourceError) as exc:
        print(f"analyze: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    for err in report.internal_errors:
        log.error(err)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
