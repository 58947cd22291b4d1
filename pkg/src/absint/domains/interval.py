"""Integer intervals with optional infinite bounds."""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Optional

from ..domain_api import EMPTY, AbstractDomain, State, lookup, update
from ..interpreter import abstract_eval
from ..semantics import Predicate, PredicateMeaning
from ..syntax import TRUE, ArithExpr, Assertion, BoolExpr, Conj, Instr, Lt, Num, Var, leq


@dataclass(frozen=True, slots=True)
class Interval:
    """``lo``/``hi`` of None stand for minus/plus infinity."""
    lo: Optional[int]
    hi: Optional[int]

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo},{self.hi}]")

    @property
    def kind(self) -> str:
        if self.lo is None:
            return "all" if self.hi is None else "below"
        return "above" if self.hi is None else "between"

    def __repr__(self):
        match self.kind:
            case "between":
                return f"between({self.lo}, {self.hi})"
            case "above":
                return f"above({self.lo})"
            case "below":
                return f"below({self.hi})"
        return "ALL_Z"


def above(lo: int) -> Interval:
    return Interval(lo, None)


def below(hi: int) -> Interval:
    return Interval(None, hi)


def between(lo: int, hi: int) -> Interval:
    return Interval(lo, hi)


ALL_Z = Interval(None, None)

INTERVAL_MEANING = PredicateMeaning({"leq": Predicate(2, operator.le)})


def interval_from_int(n: int) -> Interval:
    return Interval(n, n)


def interval_add(i1: Interval, i2: Interval) -> Interval:
    # Bounds add independently; an infinite bound on either side stays infinite.
    lo = None if i1.lo is None or i2.lo is None else i1.lo + i2.lo
    hi = None if i1.hi is None or i2.hi is None else i1.hi + i2.hi
    return Interval(lo, hi)


def interval_to_pred(v: Interval, e: ArithExpr) -> Assertion:
    match v.kind:
        case "above":
            return leq(Num(v.lo), e)
        case "below":
            return leq(e, Num(v.hi))
        case "between":
            return Conj(leq(Num(v.lo), e), leq(e, Num(v.hi)))
    return TRUE


def interval_join(i1: Interval, i2: Interval) -> Interval:
    lo = None if i1.lo is None or i2.lo is None else min(i1.lo, i2.lo)
    hi = None if i1.hi is None or i2.hi is None else max(i1.hi, i2.hi)
    return Interval(lo, hi)


def interval_thinner(i1: Interval, i2: Interval) -> bool:
    """Exact inclusion test between the two represented sets."""
    lo_ok = i2.lo is None or (i1.lo is not None and i2.lo <= i1.lo)
    hi_ok = i2.hi is None or (i1.hi is not None and i1.hi <= i2.hi)
    return lo_ok and hi_ok


def open_interval(i1: Interval, i2: Interval) -> Interval:
    """Push the bounds of ``i1`` that ``i2`` has moved past to infinity."""
    match i1.kind, i2.kind:
        case "below", "below":
            return i1 if i2.hi <= i1.hi else ALL_Z
        case "above", "above":
            return i1 if i1.lo <= i2.lo else ALL_Z
        case "between", "between":
            if i1.lo <= i2.lo:
                return i1 if i2.hi <= i1.hi else above(i1.lo)
            return below(i1.hi) if i2.hi <= i1.hi else ALL_Z
    return ALL_Z


def open_intervals(s: State, s2: State) -> State:
    return tuple((x, open_interval(v, lookup(INTERVALS, s2, x))) for x, v in s)


def interval_over_approx(n: int, s: State, s2: State) -> State:
    return open_intervals(s, s2) if n > 0 else EMPTY


def interval_learn_from_success(s: State, b: BoolExpr) -> Optional[State]:
    """Refine ``x`` from ``x < e`` holding: x is below the upper bound of ``e``."""
    match b:
        case Lt(Var(x), e):
            upper = abstract_eval(INTERVALS, s, e).hi
            vx = lookup(INTERVALS, s, x)
            if upper is None:
                return s
            if vx.lo is not None and upper <= vx.lo:
                return None
            if vx.hi is None or upper <= vx.hi:
                return update(x, Interval(vx.lo, upper - 1), s)
            return s
    return s


def interval_learn_from_failure(s: State, b: BoolExpr) -> Optional[State]:
    """Refine ``x`` from ``x < e`` failing: x is at least the lower bound of ``e``."""
    match b:
        case Lt(Var(x), e):
            lower = abstract_eval(INTERVALS, s, e).lo
            vx = lookup(INTERVALS, s, x)
            if lower is None:
                return s
            if vx.hi is not None and vx.hi < lower:
                return None
            if vx.lo is None or lower > vx.lo:
                return update(x, Interval(lower, vx.hi), s)
            return s
    return s


_VALUE_RE = re.compile(
    r"""\s*(?:
        \[\s*(?P<lo>-?\d+)\s*,\s*(?:(?P<hi>-?\d+)\s*\]|\+?inf\s*\))
      | \(\s*-inf\s*,\s*(?:(?P<hi2>-?\d+)\s*\]|\+?inf\s*\))
      | (?P<top>top)
    )\s*\Z""",
    re.VERBOSE,
)


def parse_interval(text: str) -> Interval:
    m = _VALUE_RE.match(text)
    if m is None:
        raise ValueError(f"bad interval {text!r}; expected [a,b], [a,+inf), (-inf,b] or top")
    if m.group("top"):
        return ALL_Z
    lo = m.group("lo")
    hi = m.group("hi") if lo is not None else m.group("hi2")
    return Interval(None if lo is None else int(lo), None if hi is None else int(hi))


def format_interval(v: Interval) -> str:
    match v.kind:
        case "between":
            return f"[{v.lo},{v.hi}]"
        case "above":
            return f"[{v.lo},+inf)"
        case "below":
            return f"(-inf,{v.hi}]"
    return "top"


class IntervalDomain(AbstractDomain[Interval]):
    name = "interval"
    top = ALL_Z
    meaning = INTERVAL_MEANING

    def __init__(self, widen_iters: int = 2, approx_budget: int = 3):
        self.widen_iters = widen_iters
        self.approx_budget = approx_budget

    def from_int(self, n):
        return interval_from_int(n)

    def add(self, v1, v2):
        return interval_add(v1, v2)

    def to_pred(self, v, e):
        return interval_to_pred(v, e)

    def learn_from_success(self, s, b):
        return interval_learn_from_success(s, b)

    def learn_from_failure(self, s, b):
        return interval_learn_from_failure(s, b)

    def join(self, v1, v2):
        return interval_join(v1, v2)

    def thinner(self, v1, v2):
        return interval_thinner(v1, v2)

    def over_approx(self, n, s, s2):
        return interval_over_approx(n, s, s2)

    def choose_widen_iters(self, s: State, i: Instr) -> int:
        return self.widen_iters

    def choose_approx_budget(self, s: State, i: Instr) -> int:
        return self.approx_budget

    def parse_value(self, text):
        return parse_interval(text)

    def format_value(self, v):
        return format_interval(v)

    def value_to_json(self, v):
        return {"lo": v.lo, "hi": v.hi}

    def value_from_json(self, obj):
        return Interval(obj["lo"], obj["hi"])

    def sample_values(self, lo, hi):
        bounds = range(lo, hi + 1)
        out = [between(a, b) for a in bounds for b in bounds if a <= b]
        out += [above(a) for a in bounds] + [below(b) for b in bounds] + [ALL_Z]
        return out


# Learning and widening evaluate expressions with the default configuration;
# the choose_* overrides do not affect them.
INTERVALS = IntervalDomain()
