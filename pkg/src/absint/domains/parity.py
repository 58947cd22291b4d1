"""Even/odd abstract domain."""

from __future__ import annotations

import enum
from typing import Optional

from ..domain_api import EMPTY, AbstractDomain, State
from ..semantics import Predicate, PredicateMeaning
from ..syntax import TRUE, ArithExpr, Assertion, BoolExpr, Instr, Pred


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    TOP = "top"

    def __repr__(self):
        return f"Parity.{self.name}"


EVEN, ODD, PTOP = Parity.EVEN, Parity.ODD, Parity.TOP

PARITY_MEANING = PredicateMeaning({
    "even": Predicate(1, lambda z: z % 2 == 0),
    "odd": Predicate(1, lambda z: z % 2 == 1),
})


def parity_from_int(n: int) -> Parity:
    # Python's % already yields the nonnegative remainder for a positive modulus
    return EVEN if n % 2 == 0 else ODD


def parity_add(v1: Parity, v2: Parity) -> Parity:
    if PTOP in (v1, v2):
        return PTOP
    return EVEN if v1 == v2 else ODD


def parity_to_pred(v: Parity, e: ArithExpr) -> Assertion:
    if v is PTOP:
        return TRUE
    return Pred(v.value, (e,))


class ParityDomain(AbstractDomain[Parity]):
    """Parity domain completed for the loop-aware interpreter.

    Tests teach it nothing and joins are flat.  Over-approximation takes the
    newer state, or gives up entirely at level 0.
    """

    name = "parity"
    top = PTOP
    meaning = PARITY_MEANING

    def __init__(self, widen_iters: int = 1, approx_budget: int = 1):
        self.widen_iters = widen_iters
        self.approx_budget = approx_budget

    def from_int(self, n):
        return parity_from_int(n)

    def add(self, v1, v2):
        return parity_add(v1, v2)

    def to_pred(self, v, e):
        return parity_to_pred(v, e)

    def learn_from_success(self, s: State, b: BoolExpr) -> Optional[State]:
        return s

    def learn_from_failure(self, s: State, b: BoolExpr) -> Optional[State]:
        return s

    def join(self, v1, v2):
        return v1 if v1 == v2 else PTOP

    def thinner(self, v1, v2):
        return v1 == v2 or v2 is PTOP

    def over_approx(self, n, s, s2):
        return s2 if n > 0 else EMPTY

    def choose_widen_iters(self, s: State, i: Instr) -> int:
        return self.widen_iters

    def choose_approx_budget(self, s: State, i: Instr) -> int:
        return self.approx_budget

    def parse_value(self, text):
        try:
            return Parity(text.strip())
        except ValueError:
            raise ValueError(f"bad parity value {text!r}; expected even, odd or top") from None

    def format_value(self, v):
        return v.value

    def value_to_json(self, v):
        return v.value

    def value_from_json(self, obj):
        return Parity(obj)

    def sample_values(self, lo, hi):
        return [EVEN, ODD, PTOP]
