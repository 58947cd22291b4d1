"""Concrete semantics and a bounded validity oracle.

Programs run under a fuel budget; conditions are checked exhaustively on a
small integer grid.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .syntax import (
    AnnInstr, Assertion, Assign, ArithExpr, AAssign, ASeq, AWhile, BoolExpr, BoolHolds,
    Condition, Conj, FalseA, Instr, Lt, Not, Num, Plus, Pred, PreAnn, Seq, TrueA, Var,
    While, condition_vars,
)

# A valuation maps variable names to integers; unbound names read as 0.
Valuation = Mapping[str, int]

DEFAULT_CELL_CAP = 10**7


def updated(g: Valuation, x: str, v: int) -> dict[str, int]:
    out = dict(g)
    out[x] = v
    return out


def eval_arith(g: Valuation, e: ArithExpr) -> int:
    match e:
        case Num(n):
            return n
        case Var(x):
            return g.get(x, 0)
        case Plus(l, r):
            return eval_arith(g, l) + eval_arith(g, r)
    raise TypeError(f"not an arithmetic expression: {e!r}")


def eval_bool(g: Valuation, b: BoolExpr) -> bool:
    return eval_arith(g, b.left) < eval_arith(g, b.right)


@dataclass(frozen=True)
class Predicate:
    """A predicate of fixed arity.

    ``fn`` must only use elementwise operators so the same function can be
    applied to Python ints and to numpy arrays.
    """
    arity: int
    fn: Callable[..., object]


@dataclass(frozen=True)
class PredicateMeaning:
    """Meaning of predicate names; unknown names and wrong arities are false."""
    predicates: Mapping[str, Predicate] = field(default_factory=dict)

    def __call__(self, name: str, values: Sequence[int]) -> bool:
        p = self.predicates.get(name)
        if p is None or len(values) != p.arity:
            return False
        return bool(p.fn(*values))

    def holds_array(self, name: str, values: Sequence, shape: tuple[int, ...]) -> np.ndarray:
        p = self.predicates.get(name)
        if p is None or len(values) != p.arity:
            return np.zeros(shape, dtype=bool)
        return np.broadcast_to(np.asarray(p.fn(*values), dtype=bool), shape)


EMPTY_MEANING = PredicateMeaning()


def eval_assert(m: PredicateMeaning, g: Valuation, a: Assertion) -> bool:
    match a:
        case Pred(name, args):
            return m(name, [eval_arith(g, e) for e in args])
        case BoolHolds(b):
            return eval_bool(g, b)
        case Conj(a1, a2):
            return eval_assert(m, g, a1) and eval_assert(m, g, a2)
        case Not(inner):
            return not eval_assert(m, g, inner)
        case TrueA():
            return True
        case FalseA():
            return False
    raise TypeError(f"not an assertion: {a!r}")


# -- concrete execution ------------------------------------------------------


@dataclass(frozen=True)
class TracePoint:
    """Valuation observed at a program point.

    ``kind`` is ``"enter"`` (before any instruction node), ``"body_entry"``
    or ``"body_exit"`` (around one iteration of a loop body).  ``point`` is
    the node's pre-order number, see :func:`number_points`.
    """
    kind: str
    point: int
    valuation: Mapping[str, int]


@dataclass(frozen=True)
class Execution:
    final: Optional[dict[str, int]]  # None when fuel ran out
    trace: tuple[TracePoint, ...]

    @property
    def exhausted(self) -> bool:
        return self.final is None


class _OutOfFuel(Exception):
    pass


def number_points(i: Instr) -> dict[int, Instr]:
    """Pre-order numbering of instruction nodes, starting at 0."""
    table: dict[int, Instr] = {}

    def walk(node: Instr):
        table[len(table)] = node
        match node:
            case Seq(i1, i2):
                walk(i1)
                walk(i2)
            case While(_, body):
                walk(body)

    walk(i)
    return table


def exec_concrete(g: Valuation, i: Instr, fuel: int) -> Execution:
    """Big-step execution where each loop iteration costs one unit of fuel."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    trace: list[TracePoint] = []
    budget = [fuel]

    # pre-order numbering needs the subtree sizes to skip loop bodies
    sizes = _subtree_sizes(i)

    def run_numbered(node: Instr, env: dict[str, int], pid: int) -> dict[str, int]:
        trace.append(TracePoint("enter", pid, env))
        match node:
            case Assign(x, e):
                return updated(env, x, eval_arith(env, e))
            case Seq(i1, i2):
                mid = run_numbered(i1, env, pid + 1)
                return run_numbered(i2, mid, pid + 1 + sizes[id(i1)])
            case While(b, body):
                while eval_bool(env, b):
                    if budget[0] == 0:
                        raise _OutOfFuel
                    budget[0] -= 1
                    trace.append(TracePoint("body_entry", pid, env))
                    env = run_numbered(body, env, pid + 1)
                    trace.append(TracePoint("body_exit", pid, env))
                return env
        raise TypeError(f"not an instruction: {node!r}")

    try:
        final = run_numbered(i, dict(g), 0)
    except _OutOfFuel:
        return Execution(None, tuple(trace))
    return Execution(final, tuple(trace))


def _subtree_sizes(i: Instr) -> dict[int, int]:
    sizes: dict[int, int] = {}

    def size(node: Instr) -> int:
        match node:
            case Seq(i1, i2):
                n = 1 + size(i1) + size(i2)
            case While(_, body):
                n = 1 + size(body)
            case _:
                n = 1
        sizes[id(node)] = n
        return n

    size(i)
    return sizes


def annotation_points(i: AnnInstr) -> dict[int, tuple[tuple[Assertion, ...], Optional[Assertion]]]:
    """Map pre-order point ids (of ``cleanup(i)``) to annotations.

    Each entry holds the assertions of the ``PreAnn`` wrappers sitting on
    that node, and the loop invariant when the node is a loop.
    """
    table: dict[int, tuple[tuple[Assertion, ...], Optional[Assertion]]] = {}
    counter = itertools.count()

    def walk(node: AnnInstr, pending: tuple[Assertion, ...]):
        match node:
            case PreAnn(a, inner):
                walk(inner, pending + (a,))
            case AAssign():
                table[next(counter)] = (pending, None)
            case ASeq(i1, i2):
                table[next(counter)] = (pending, None)
                walk(i1, ())
                walk(i2, ())
            case AWhile(_, inv, body):
                table[next(counter)] = (pending, inv)
                walk(body, ())

    walk(i, ())
    return table


def trace_violations(m: PredicateMeaning, ai: AnnInstr, execution: Execution) -> list[tuple[TracePoint, Assertion]]:
    """Trace points whose valuation falsifies the annotation attached there."""
    points = annotation_points(ai)
    tests = _loop_tests(ai)
    bad = []
    for tp in execution.trace:
        pres, inv = points[tp.point]
        required: list[Assertion] = []
        if tp.kind == "enter":
            required.extend(pres)
            if inv is not None:
                required.append(inv)
        elif tp.kind == "body_entry":
            required.append(Conj(inv, BoolHolds(tests[tp.point])))
        elif tp.kind == "body_exit":
            required.append(inv)
        for a in required:
            if not eval_assert(m, tp.valuation, a):
                bad.append((tp, a))
    return bad


def _loop_tests(i: AnnInstr) -> dict[int, BoolExpr]:
    out = {}
    counter = itertools.count()

    def walk(node: AnnInstr):
        match node:
            case PreAnn(_, inner):
                walk(inner)
            case AAssign():
                next(counter)
            case ASeq(i1, i2):
                next(counter)
                walk(i1)
                walk(i2)
            case AWhile(b, _, body):
                out[next(counter)] = b
                walk(body)

    walk(i)
    return out


# -- bounded validity oracle -------------------------------------------------


class OracleResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    """Each variable ranges over [-bound, bound]; ``variables`` defaults to the free ones."""
    bound: int = 16
    variables: Optional[tuple[str, ...]] = None
    cell_cap: int = DEFAULT_CELL_CAP
    vectorized: bool = True

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")


def _grid_variables(c: Condition, cfg: OracleConfig) -> list[str]:
    free = condition_vars(c)
    if cfg.variables is None:
        return sorted(free)
    names = sorted(set(cfg.variables))
    missing = free - set(names)
    if missing:
        raise ValueError(f"oracle variables do not cover {sorted(missing)}")
    return names


def check_condition_bounded(m: PredicateMeaning, c: Condition, cfg: OracleConfig = OracleConfig()) -> Optional[dict[str, int]]:
    """Search the grid for a valuation satisfying ``c.hyp`` but not ``c.concl``.

    Valuations are visited in lexicographic order of the sorted variable
    names, so the counterexample returned is the least one.
    """
    names = _grid_variables(c, cfg)
    width = 2 * cfg.bound + 1
    cells = width ** len(names)
    if cells > cfg.cell_cap:
        raise OracleResourceError(f"{cells} valuations exceed the cap of {cfg.cell_cap}")
    if cfg.vectorized:
        return _check_vectorized(m, c, names, cfg.bound)
    values = range(-cfg.bound, cfg.bound + 1)
    for combo in itertools.product(values, repeat=len(names)):
        g = dict(zip(names, combo))
        if eval_assert(m, g, c.hyp) and not eval_assert(m, g, c.concl):
            return g
    return None


def check_conditions_bounded(m: PredicateMeaning, cs: Iterable[Condition], cfg: OracleConfig = OracleConfig()) -> Optional[tuple[int, dict[str, int]]]:
    for index, c in enumerate(cs):
        g = check_condition_bounded(m, c, cfg)
        if g is not None:
            return index, g
    return None


_CHUNK = 1 << 20


def _check_vectorized(m, c, names, bound) -> Optional[dict[str, int]]:
    width = 2 * bound + 1
    total = width ** len(names)
    dtype = np.int64 if _fits_int64(c, bound) else object
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        env = {}
        rest = idx
        for name in reversed(names):
            env[name] = (rest % width - bound).astype(dtype)
            rest = rest // width
        bad = eval_assert_array(m, env, c.hyp, idx.shape) & ~eval_assert_array(m, env, c.concl, idx.shape)
        hits = np.flatnonzero(bad)
        if hits.size:
            k = int(hits[0])
            g = {name: int(env[name][k]) for name in names}
            # confirm on the scalar path before reporting
            if not (eval_assert(m, g, c.hyp) and not eval_assert(m, g, c.concl)):
                raise RuntimeError(f"vectorized and scalar evaluation disagree at {g}")
            return g
    return None


def _fits_int64(c: Condition, bound: int) -> bool:
    limit = 1 << 60
    return all(_magnitude(e, bound) < limit for e in _expressions(c.hyp)) and \
        all(_magnitude(e, bound) < limit for e in _expressions(c.concl))


def _magnitude(e: ArithExpr, bound: int) -> int:
    match e:
        case Num(n):
            return abs(n)
        case Var():
            return bound
        case Plus(l, r):
            return _magnitude(l, bound) + _magnitude(r, bound)
    raise TypeError(e)


def _expressions(a: Assertion):
    match a:
        case Pred(_, args):
            yield from args
        case BoolHolds(Lt(l, r)):
            yield l
            yield r
        case Conj(a1, a2):
            yield from _expressions(a1)
            yield from _expressions(a2)
        case Not(inner):
            yield from _expressions(inner)


def eval_arith_array(env, e: ArithExpr):
    match e:
        case Num(n):
            return n
        case Var(x):
            return env.get(x, 0)
        case Plus(l, r):
            return eval_arith_array(env, l) + eval_arith_array(env, r)
    raise TypeError(e)


def eval_assert_array(m: PredicateMeaning, env, a: Assertion, shape) -> np.ndarray:
    """Vectorized :func:`eval_assert`: ``env`` maps names to equally shaped arrays."""
    match a:
        case Pred(name, args):
            return m.holds_array(name, [eval_arith_array(env, e) for e in args], shape)
        case BoolHolds(Lt(l, r)):
            return np.broadcast_to(np.asarray(operator.lt(eval_arith_array(env, l), eval_arith_array(env, r)), dtype=bool), shape)
        case Conj(a1, a2):
            return eval_assert_array(m, env, a1, shape) & eval_assert_array(m, env, a2, shape)
        case Not(inner):
            return ~eval_assert_array(m, env, inner, shape)
        case TrueA():
            return np.ones(shape, dtype=bool)
        case FalseA():
            return np.zeros(shape, dtype=bool)
    raise TypeError(f"not an assertion: {a!r}")


def grid_env(names: Sequence[str], bound: int) -> dict[str, np.ndarray]:
    """All valuations of ``names`` over [-bound, bound], as flat arrays in lexicographic order."""
    axes = np.meshgrid(*[np.arange(-bound, bound + 1)] * len(names), indexing="ij")
    return {name: axis.ravel() for name, axis in zip(names, axes)}
