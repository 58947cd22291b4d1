"""The abstract-domain contract and the abstract-state algebra built on it.

A state is an ordered tuple of ``(variable, value)`` pairs.  Absent
variables implicitly carry the domain's top value.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Generic, Iterable, Optional, TypeVar

from .semantics import PredicateMeaning, eval_assert
from .syntax import FALSE, TRUE, ArithExpr, Assertion, BoolExpr, Conj, Instr, Num, Var

V = TypeVar("V")

State = tuple[tuple[str, Any], ...]
EMPTY: State = ()


class AbstractDomain(ABC, Generic[V]):
    """Everything the generic interpreters need to know about a value domain.

    Implementations must be pure.  ``meaning`` interprets the predicate
    names that :meth:`to_pred` emits.
    """

    name: str
    top: V
    meaning: PredicateMeaning

    @abstractmethod
    def from_int(self, n: int) -> V: ...

    @abstractmethod
    def add(self, v1: V, v2: V) -> V: ...

    @abstractmethod
    def to_pred(self, v: V, e: ArithExpr) -> Assertion: ...

    @abstractmethod
    def learn_from_success(self, s: State, b: BoolExpr) -> Optional[State]: ...

    @abstractmethod
    def learn_from_failure(self, s: State, b: BoolExpr) -> Optional[State]: ...

    @abstractmethod
    def join(self, v1: V, v2: V) -> V: ...

    @abstractmethod
    def thinner(self, v1: V, v2: V) -> bool:
        """True when ``v1`` is at least as precise as ``v2``."""

    @abstractmethod
    def over_approx(self, n: int, s: State, s2: State) -> State:
        """Over-approximate ``s2``; ``s`` is the state that preceded it."""

    @abstractmethod
    def choose_widen_iters(self, s: State, i: Instr) -> int: ...

    @abstractmethod
    def choose_approx_budget(self, s: State, i: Instr) -> int: ...

    # text and json forms, used by the command line

    @abstractmethod
    def parse_value(self, text: str) -> V: ...

    @abstractmethod
    def format_value(self, v: V) -> str: ...

    @abstractmethod
    def value_to_json(self, v: V) -> Any: ...

    @abstractmethod
    def value_from_json(self, obj: Any) -> V: ...

    @abstractmethod
    def sample_values(self, lo: int, hi: int) -> list[V]:
        """Every value whose finite bounds lie in ``[lo, hi]`` (for testing)."""

    def contains(self, v: V, z: int) -> bool:
        """Membership of ``z`` in the concretization of ``v``."""
        return eval_assert(self.meaning, {}, self.to_pred(v, Num(z)))


def lookup(d: AbstractDomain, s: State, x: str):
    for y, v in s:
        if y == x:
            return v
    return d.top


def update(x: str, v, s: State) -> State:
    """Replace the first binding of ``x``, or append one at the end."""
    for k, (y, _) in enumerate(s):
        if y == x:
            return s[:k] + ((x, v),) + s[k + 1:]
    return s + ((x, v),)


def state_to_assert(d: AbstractDomain, s: State) -> Assertion:
    out: Assertion = TRUE
    for x, v in reversed(s):
        out = Conj(d.to_pred(v, Var(x)), out)
    return out


def opt_state_to_assert(d: AbstractDomain, s: Optional[State]) -> Assertion:
    return FALSE if s is None else state_to_assert(d, s)


def is_consistent(s: Iterable[tuple[str, Any]]) -> bool:
    seen: list[str] = []
    for x, _ in s:
        if x in seen:
            return False
        seen.append(x)
    return True


def join_states(d: AbstractDomain, s1: State, s2: State) -> State:
    """Pointwise join over the variables of ``s1``.

    Variables missing from ``s1`` are dropped (implicitly top).  The result
    is built by repeated updates from the empty state, so it is always
    duplicate-free even when ``s1`` is not.
    """
    out = EMPTY
    for x, v in reversed(s1):
        out = update(x, d.join(v, lookup(d, s2, x)), out)
    return out


def join_states_opt(d: AbstractDomain, s: State, s2: Optional[State]) -> State:
    return s if s2 is None else join_states(d, s, s2)


def state_stable(d: AbstractDomain, s1: State, s2: State) -> bool:
    """True when ``s2`` is at least as precise as ``s1`` on every variable of ``s1``."""
    return all(d.thinner(lookup(d, s2, x), v) for x, v in s1)


def format_state(d: AbstractDomain, s: State) -> str:
    return ", ".join(f"{x}={d.format_value(v)}" for x, v in s)


class MonitoredDomain(AbstractDomain):
    """Delegates to ``inner`` and records every state that has duplicates.

    Both the states the interpreters hand to the domain and the states it
    returns are inspected.
    """

    def __init__(self, inner: AbstractDomain):
        self.inner = inner
        self.name = inner.name
        self.top = inner.top
        self.meaning = inner.meaning
        self.seen = 0
        self.violations: list[State] = []

    def _watch(self, s):
        if s is not None:
            self.seen += 1
            if not is_consistent(s):
                self.violations.append(s)
        return s

    def from_int(self, n):
        return self.inner.from_int(n)

    def add(self, v1, v2):
        return self.inner.add(v1, v2)

    def to_pred(self, v, e):
        return self.inner.to_pred(v, e)

    def learn_from_success(self, s, b):
        return self._watch(self.inner.learn_from_success(self._watch(s), b))

    def learn_from_failure(self, s, b):
        return self._watch(self.inner.learn_from_failure(self._watch(s), b))

    def join(self, v1, v2):
        return self.inner.join(v1, v2)

    def thinner(self, v1, v2):
        return self.inner.thinner(v1, v2)

    def over_approx(self, n, s, s2):
        return self._watch(self.inner.over_approx(n, self._watch(s), self._watch(s2)))

    def choose_widen_iters(self, s, i):
        return self.inner.choose_widen_iters(self._watch(s), i)

    def choose_approx_budget(self, s, i):
        return self.inner.choose_approx_budget(self._watch(s), i)

    def parse_value(self, text):
        return self.inner.parse_value(text)

    def format_value(self, v):
        return self.inner.format_value(v)

    def value_to_json(self, v):
        return self.inner.value_to_json(v)

    def value_from_json(self, obj):
        return self.inner.value_from_json(obj)

    def sample_values(self, lo, hi):
        return self.inner.sample_values(lo, hi)
