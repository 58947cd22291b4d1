"""Executable laws every abstract domain must satisfy.

Each law returns a list of human-readable violations (empty when it holds).
Integers are sampled exhaustively over ``[-bound, bound]``; abstract values
come from ``domain.sample_values`` and states are built over ``x`` and ``y``.

The fourteen laws fall into five groups: predicate generation (3),
constants and addition (2), learning from tests (2), over-approximation
(4) and preservation of duplicate-free states (3).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .domain_api import (
    EMPTY, AbstractDomain, State, is_consistent, lookup, opt_state_to_assert, state_to_assert,
)
from .hoare import subst_arith, subst_assert
from .semantics import (
    OracleConfig, check_condition_bounded, eval_arith_array, eval_assert_array, grid_env,
)
from .syntax import TRUE, ArithExpr, BoolHolds, Conj, Imp, Lt, Not, Num, Plus, Var


@dataclass
class LawContext:
    domain: AbstractDomain
    bound: int = 16
    value_bound: int = 3
    state_samples: int = 150
    seed: int = 0

    @cached_property
    def integers(self) -> range:
        return range(-self.bound, self.bound + 1)

    @cached_property
    def values(self) -> list:
        return self.domain.sample_values(-self.value_bound, self.value_bound)

    @cached_property
    def gamma(self) -> dict:
        """Concretization of each sampled value, restricted to the integer window."""
        return {v: frozenset(z for z in self.integers if self.domain.contains(v, z))
                for v in self.values}

    @cached_property
    def expressions(self) -> list[ArithExpr]:
        x, y = Var("x"), Var("y")
        return [Num(0), Num(-5), x, y, Plus(x, Num(1)), Plus(x, y), Plus(Plus(y, Num(-2)), x)]

    @cached_property
    def tests(self) -> list[Lt]:
        x, y = Var("x"), Var("y")
        return [Lt(x, Num(-2)), Lt(x, Num(0)), Lt(x, Num(3)), Lt(x, y), Lt(x, Plus(y, Num(1))),
                Lt(x, Plus(x, Num(1))), Lt(x, x), Lt(y, Plus(x, Num(-1))),
                Lt(Num(0), x), Lt(Plus(x, Num(1)), y)]

    @cached_property
    def states(self) -> list[State]:
        rng = random.Random(self.seed)
        out: list[State] = [EMPTY]
        out += [(("x", v),) for v in self.values] + [(("y", v),) for v in self.values]
        for _ in range(self.state_samples):
            vx, vy = rng.choice(self.values), rng.choice(self.values)
            out.append((("x", vx), ("y", vy)) if rng.random() < 0.5 else (("y", vy), ("x", vx)))
        return out

    @cached_property
    def state_pairs(self) -> list[tuple[State, State]]:
        rng = random.Random(self.seed + 1)
        return [(rng.choice(self.states), rng.choice(self.states)) for _ in range(self.state_samples)]

    @cached_property
    def oracle(self) -> OracleConfig:
        return OracleConfig(bound=self.bound, variables=("x", "y"))


def _top_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    return [f"to_pred(top, {e}) = {d.to_pred(d.top, e)}"
            for e in ctx.expressions if d.to_pred(d.top, e) != TRUE]


def _to_pred_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    env = grid_env(("x", "y"), ctx.bound)
    shape = env["x"].shape
    bad = []
    cache: dict = {}
    for v in ctx.values:
        for e in ctx.expressions:
            lhs = eval_assert_array(d.meaning, env, d.to_pred(v, e), shape)
            ev = np.broadcast_to(np.asarray(eval_arith_array(env, e)), shape)
            rhs = np.array([_member(d, v, int(n), cache) for n in ev], dtype=bool)
            if not np.array_equal(lhs, rhs):
                k = int(np.flatnonzero(lhs != rhs)[0])
                bad.append(f"{v!r}, {e}: differs at x={env['x'][k]}, y={env['y'][k]}")
    return bad


def _member(d, v, n, cache) -> bool:
    key = (v, n)
    if key not in cache:
        cache[key] = d.contains(v, n)
    return cache[key]


def _subst_to_pred(ctx: LawContext) -> list[str]:
    d = ctx.domain
    bad = []
    for v in ctx.values:
        for e in ctx.expressions:
            for x in ("x", "y"):
                for e2 in ctx.expressions[:4]:
                    if subst_assert(x, e2, d.to_pred(v, e)) != d.to_pred(v, subst_arith(x, e2, e)):
                        bad.append(f"{v!r}, {e}, [{x} := {e2}]")
    return bad


def _from_int_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    return [f"from_int({z}) = {d.from_int(z)!r} misses {z}"
            for z in ctx.integers if not d.contains(d.from_int(z), z)]


def _add_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    bad = []
    for v1 in ctx.values:
        for v2 in ctx.values:
            total = d.add(v1, v2)
            sums = {z1 + z2 for z1 in ctx.gamma[v1] for z2 in ctx.gamma[v2]}
            missing = sorted(z for z in sums if not d.contains(total, z))
            if missing:
                bad.append(f"add({v1!r}, {v2!r}) = {total!r} misses {missing[:3]}")
    return bad


def _learn_sem(ctx: LawContext, learn, negate: bool) -> list[str]:
    d = ctx.domain
    bad = []
    for s in ctx.states:
        for b in ctx.tests:
            test = Not(BoolHolds(b)) if negate else BoolHolds(b)
            learned = learn(s, b)
            c = Imp(Conj(state_to_assert(d, s), test), opt_state_to_assert(d, learned))
            g = check_condition_bounded(d.meaning, c, ctx.oracle)
            if g is not None:
                bad.append(f"state {s!r}, test {b}: {learned!r} excludes {g}")
    return bad


def _learn_from_success_sem(ctx):
    return _learn_sem(ctx, ctx.domain.learn_from_success, negate=False)


def _learn_from_failure_sem(ctx):
    return _learn_sem(ctx, ctx.domain.learn_from_failure, negate=True)


def _thinner_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    return [f"thinner({v1!r}, {v2!r}) but not included"
            for v1 in ctx.values for v2 in ctx.values
            if d.thinner(v1, v2) and not ctx.gamma[v1] <= ctx.gamma[v2]]


def _join_sem(ctx: LawContext, left: bool) -> list[str]:
    d = ctx.domain
    bad = []
    for v1 in ctx.values:
        for v2 in ctx.values:
            j = d.join(v1, v2)
            side = ctx.gamma[v1 if left else v2]
            missing = sorted(z for z in side if not d.contains(j, z))
            if missing:
                bad.append(f"join({v1!r}, {v2!r}) = {j!r} misses {missing[:3]}")
    return bad


def _join_sem_left(ctx):
    return _join_sem(ctx, left=True)


def _join_sem_right(ctx):
    return _join_sem(ctx, left=False)


def _over_approx_sem(ctx: LawContext) -> list[str]:
    d = ctx.domain
    bad = []
    for s, s2 in ctx.state_pairs:
        for n in (0, 1, 2):
            out = d.over_approx(n, s, s2)
            for x, v in out:
                if not d.thinner(lookup(d, s2, x), v):
                    bad.append(f"over_approx({n}, {s!r}, {s2!r}) is not above s2 at {x}: {v!r}")
            c = Imp(state_to_assert(d, s2), state_to_assert(d, out))
            g = check_condition_bounded(d.meaning, c, ctx.oracle)
            if g is not None:
                bad.append(f"over_approx({n}, {s!r}, {s2!r}) excludes {g}")
    return bad


def _consistent_learn(ctx: LawContext, learn) -> list[str]:
    bad = []
    for s in ctx.states:
        if not is_consistent(s):
            continue
        for b in ctx.tests:
            out = learn(s, b)
            if out is not None and not is_consistent(out):
                bad.append(f"{s!r}, {b} -> {out!r}")
    return bad


def _learn_from_success_consistent(ctx):
    return _consistent_learn(ctx, ctx.domain.learn_from_success)


def _learn_from_failure_consistent(ctx):
    return _consistent_learn(ctx, ctx.domain.learn_from_failure)


def _over_approx_consistent(ctx: LawContext) -> list[str]:
    d = ctx.domain
    return [f"over_approx({n}, {s!r}, {s2!r})"
            for s, s2 in ctx.state_pairs for n in (0, 1, 2)
            if is_consistent(s) and is_consistent(s2) and not is_consistent(d.over_approx(n, s, s2))]


@dataclass(frozen=True)
class Law:
    name: str
    group: str
    check: Callable[[LawContext], list[str]] = field(repr=False)


LAWS: tuple[Law, ...] = (
    Law("top_sem", "predicates", _top_sem),
    Law("to_pred_sem", "predicates", _to_pred_sem),
    Law("subst_to_pred", "predicates", _subst_to_pred),
    Law("from_int_sem", "arithmetic", _from_int_sem),
    Law("add_sem", "arithmetic", _add_sem),
    Law("learn_from_success_sem", "learning", _learn_from_success_sem),
    Law("learn_from_failure_sem", "learning", _learn_from_failure_sem),
    Law("thinner_sem", "approximation", _thinner_sem),
    Law("join_sem_left", "approximation", _join_sem_left),
    Law("join_sem_right", "approximation", _join_sem_right),
    Law("over_approx_sem", "approximation", _over_approx_sem),
    Law("learn_from_success_consistent", "consistency", _learn_from_success_consistent),
    Law("learn_from_failure_consistent", "consistency", _learn_from_failure_consistent),
    Law("over_approx_consistent", "consistency", _over_approx_consistent),
)


def check_domain(domain: AbstractDomain, **options) -> dict[str, list[str]]:
    """Run every law; returns violations keyed by law name."""
    ctx = LawContext(domain, **options)
    return {law.name: law.check(ctx) for law in LAWS}
