"""Abstract interpreters over a generic domain.

``ab1`` gives up on loops (top invariant, empty final state).  ``ab2``
searches for loop invariants by iterating the body, over-approximating
when iteration does not stabilise, and uses the loop test to detect dead
bodies and loops that can never exit.
"""

from __future__ import annotations

from typing import Callable, Optional

from .domain_api import (
    EMPTY, AbstractDomain, State, join_states_opt, lookup, state_stable, state_to_assert, update,
)
from .syntax import (
    FALSE, AAssign, AnnInstr, ArithExpr, ASeq, Assign, AWhile, BoolExpr, Instr, Num, Plus,
    PreAnn, Seq, Var, While,
)

# Analysis of a loop body from a start state.
BodyAnalyzer = Callable[[State], tuple[AnnInstr, Optional[State]]]


def abstract_eval(d: AbstractDomain, s: State, e: ArithExpr):
    match e:
        case Var(x):
            return lookup(d, s, x)
        case Num(n):
            return d.from_int(n)
        case Plus(l, r):
            return d.add(abstract_eval(d, s, l), abstract_eval(d, s, r))
    raise TypeError(f"not an arithmetic expression: {e!r}")


def ab1(d: AbstractDomain, i: Instr, s: State) -> tuple[AnnInstr, State]:
    match i:
        case Assign(x, e):
            return PreAnn(state_to_assert(d, s), AAssign(x, e)), update(x, abstract_eval(d, s, e), s)
        case Seq(i1, i2):
            a1, s1 = ab1(d, i1, s)
            a2, s2 = ab1(d, i2, s1)
            return ASeq(a1, a2), s2
        case While(b, body):
            a_body, _ = ab1(d, body, EMPTY)
            return AWhile(b, state_to_assert(d, EMPTY), a_body), EMPTY
    raise TypeError(f"not an instruction: {i!r}")


def mark(i: Instr) -> AnnInstr:
    """Annotate every assignment and loop with ``false``: dead code."""
    match i:
        case Assign(x, e):
            return PreAnn(FALSE, AAssign(x, e))
        case Seq(i1, i2):
            return ASeq(mark(i1), mark(i2))
        case While(b, body):
            return AWhile(b, FALSE, mark(body))
    raise TypeError(f"not an instruction: {i!r}")


def step_once(d: AbstractDomain, ab: BodyAnalyzer, b: BoolExpr, init: State, s: State) -> State:
    """One pass through the loop test and body from ``s``, joined with ``init``."""
    s1 = d.learn_from_success(s, b)
    if s1 is None:
        return s
    _, s2 = ab(s1)
    return join_states_opt(d, init, s2)


def step_n(d: AbstractDomain, ab: BodyAnalyzer, b: BoolExpr, init: State, s: State, n: int) -> State:
    # no early exit on a fixpoint: the iteration count is part of the contract
    for _ in range(n):
        s = step_once(d, ab, b, init, s)
    return s


def is_invariant(d: AbstractDomain, ab: BodyAnalyzer, s: State, b: BoolExpr) -> bool:
    return state_stable(d, s, step_once(d, ab, b, s, s))


def find_invariant(d: AbstractDomain, ab: BodyAnalyzer, b: BoolExpr, init: State, s: State,
                   i: Instr, n: int) -> State:
    """Search for a stable state, widening between rounds.

    ``n`` is the number of over-approximation rounds still allowed; once it
    is spent the empty state is returned.
    """
    while True:
        s2 = step_n(d, ab, b, init, s, d.choose_widen_iters(s, i))
        if is_invariant(d, ab, s2, b):
            return s2
        if n == 0:
            return EMPTY
        n -= 1
        s = d.over_approx(n, s, s2)


def annotate_body(d: AbstractDomain, ab: BodyAnalyzer, b: BoolExpr, s: State, i: Instr) -> AnnInstr:
    s1 = d.learn_from_success(s, b)
    if s1 is None:
        return mark(i)
    ai, _ = ab(s1)
    return ai


def ab2(d: AbstractDomain, i: Instr, s: State) -> tuple[AnnInstr, Optional[State]]:
    """Annotate ``i`` from ``s``; the final state is None when ``i`` cannot terminate."""
    match i:
        case Assign(x, e):
            return PreAnn(state_to_assert(d, s), AAssign(x, e)), update(x, abstract_eval(d, s, e), s)
        case Seq(i1, i2):
            a1, s1 = ab2(d, i1, s)
            if s1 is None:
                return ASeq(a1, mark(i2)), None
            a2, s2 = ab2(d, i2, s1)
            return ASeq(a1, a2), s2
        case While(b, body):
            def ab(start: State) -> tuple[AnnInstr, Optional[State]]:
                return ab2(d, body, start)

            inv = find_invariant(d, ab, b, s, s, body, d.choose_approx_budget(s, body))
            return (AWhile(b, state_to_assert(d, inv), annotate_body(d, ab, b, inv, body)),
                    d.learn_from_failure(inv, b))
    raise TypeError(f"not an instruction: {i!r}")
