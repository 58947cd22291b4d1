"""Weakest pre-conditions and verification conditions for annotated programs."""

from __future__ import annotations

from .syntax import (
    AAssign, ASeq, AWhile, AnnInstr, ArithExpr, Assertion, BoolExpr, BoolHolds, Condition,
    Conj, FalseA, Imp, Lt, Not, Num, Plus, Pred, PreAnn, TrueA, Var, render_assertion,
)


def subst_arith(x: str, s: ArithExpr, e: ArithExpr) -> ArithExpr:
    """Replace every ``Var(x)`` in ``e`` by ``s``."""
    match e:
        case Num():
            return e
        case Var(y):
            return s if y == x else e
        case Plus(l, r):
            return Plus(subst_arith(x, s, l), subst_arith(x, s, r))
    raise TypeError(f"not an arithmetic expression: {e!r}")


def subst_bool(x: str, s: ArithExpr, b: BoolExpr) -> BoolExpr:
    return Lt(subst_arith(x, s, b.left), subst_arith(x, s, b.right))


def subst_assert(x: str, s: ArithExpr, a: Assertion) -> Assertion:
    match a:
        case Pred(name, args):
            return Pred(name, [subst_arith(x, s, e) for e in args])
        case BoolHolds(b):
            return BoolHolds(subst_bool(x, s, b))
        case Conj(a1, a2):
            return Conj(subst_assert(x, s, a1), subst_assert(x, s, a2))
        case Not(inner):
            return Not(subst_assert(x, s, inner))
        case TrueA() | FalseA():
            return a
    raise TypeError(f"not an assertion: {a!r}")


def precondition(i: AnnInstr, post: Assertion) -> Assertion:
    """The pre-condition of ``i`` for ``post``; annotations are taken for granted."""
    match i:
        case PreAnn(a, _):
            return a
        case AAssign(x, e):
            return subst_assert(x, e, post)
        case ASeq(i1, i2):
            return precondition(i1, precondition(i2, post))
        case AWhile(_, inv, _):
            return inv
    raise TypeError(f"not an annotated instruction: {i!r}")


def conditions(i: AnnInstr, post: Assertion) -> list[Condition]:
    """Implications whose validity makes ``i`` consistent with ``post``.

    Order is fixed: an annotation's own condition comes before those of the
    instruction it wraps, and a loop's two conditions come before its body's.
    """
    match i:
        case PreAnn(a, inner):
            return [Imp(a, precondition(inner, post))] + conditions(inner, post)
        case AAssign():
            return []
        case ASeq(i1, i2):
            return conditions(i1, precondition(i2, post)) + conditions(i2, post)
        case AWhile(b, inv, body):
            return [
                Imp(Conj(inv, BoolHolds(b)), precondition(body, inv)),
                Imp(Conj(inv, Not(BoolHolds(b))), post),
            ] + conditions(body, inv)
    raise TypeError(f"not an annotated instruction: {i!r}")


def render_condition(c: Condition) -> str:
    return f"{render_assertion(c.hyp)} ==> {render_assertion(c.concl)}"
