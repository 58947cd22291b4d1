"""JSON encoding of syntax trees and abstract states.

Every node is an object with a ``kind`` discriminator; keys are emitted in
a fixed order so golden files are stable.
"""

from __future__ import annotations

from typing import Any, Optional

from .domain_api import AbstractDomain, State
from .syntax import (
    FALSE, TRUE, AAssign, AnnInstr, ArithExpr, ASeq, Assertion, Assign, AWhile, BoolExpr,
    BoolHolds, Condition, Conj, FalseA, Imp, Instr, Lt, Not, Num, Plus, Pred, PreAnn, Seq, TrueA,
    Var, While,
)


def aexpr_to_json(e: ArithExpr) -> dict:
    match e:
        case Num(n):
            return {"kind": "num", "value": n}
        case Var(x):
            return {"kind": "var", "name": x}
        case Plus(l, r):
            return {"kind": "plus", "left": aexpr_to_json(l), "right": aexpr_to_json(r)}
    raise TypeError(e)


def aexpr_from_json(obj: dict) -> ArithExpr:
    match obj["kind"]:
        case "num":
            return Num(int(obj["value"]))
        case "var":
            return Var(obj["name"])
        case "plus":
            return Plus(aexpr_from_json(obj["left"]), aexpr_from_json(obj["right"]))
    raise ValueError(f"unknown expression kind {obj['kind']!r}")


def bexpr_to_json(b: BoolExpr) -> dict:
    return {"kind": "lt", "left": aexpr_to_json(b.left), "right": aexpr_to_json(b.right)}


def bexpr_from_json(obj: dict) -> BoolExpr:
    if obj["kind"] != "lt":
        raise ValueError(f"unknown test kind {obj['kind']!r}")
    return Lt(aexpr_from_json(obj["left"]), aexpr_from_json(obj["right"]))


def assertion_to_json(a: Assertion) -> dict:
    match a:
        case Pred(name, args):
            return {"kind": "pred", "name": name, "args": [aexpr_to_json(e) for e in args]}
        case BoolHolds(b):
            return {"kind": "bool", "test": bexpr_to_json(b)}
        case Conj(a1, a2):
            return {"kind": "conj", "left": assertion_to_json(a1), "right": assertion_to_json(a2)}
        case Not(inner):
            return {"kind": "not", "arg": assertion_to_json(inner)}
        case TrueA():
            return {"kind": "true"}
        case FalseA():
            return {"kind": "false"}
    raise TypeError(a)


def assertion_from_json(obj: dict) -> Assertion:
    match obj["kind"]:
        case "pred":
            return Pred(obj["name"], [aexpr_from_json(e) for e in obj["args"]])
        case "bool":
            return BoolHolds(bexpr_from_json(obj["test"]))
        case "conj":
            return Conj(assertion_from_json(obj["left"]), assertion_from_json(obj["right"]))
        case "not":
            return Not(assertion_from_json(obj["arg"]))
        case "true":
            return TRUE
        case "false":
            return FALSE
    raise ValueError(f"unknown assertion kind {obj['kind']!r}")


def instr_to_json(i: Instr) -> dict:
    match i:
        case Assign(x, e):
            return {"kind": "assign", "var": x, "expr": aexpr_to_json(e)}
        case Seq(i1, i2):
            return {"kind": "seq", "first": instr_to_json(i1), "second": instr_to_json(i2)}
        case While(b, body):
            return {"kind": "while", "test": bexpr_to_json(b), "body": instr_to_json(body)}
    raise TypeError(i)


def instr_from_json(obj: dict) -> Instr:
    match obj["kind"]:
        case "assign":
            return Assign(obj["var"], aexpr_from_json(obj["expr"]))
        case "seq":
            return Seq(instr_from_json(obj["first"]), instr_from_json(obj["second"]))
        case "while":
            return While(bexpr_from_json(obj["test"]), instr_from_json(obj["body"]))
    raise ValueError(f"unknown instruction kind {obj['kind']!r}")


def ann_instr_to_json(i: AnnInstr) -> dict:
    match i:
        case PreAnn(a, inner):
            return {"kind": "pre", "assert": assertion_to_json(a), "instr": ann_instr_to_json(inner)}
        case AAssign(x, e):
            return {"kind": "assign", "var": x, "expr": aexpr_to_json(e)}
        case ASeq(i1, i2):
            return {"kind": "seq", "first": ann_instr_to_json(i1), "second": ann_instr_to_json(i2)}
        case AWhile(b, inv, body):
            return {"kind": "while", "test": bexpr_to_json(b), "inv": assertion_to_json(inv),
                    "body": ann_instr_to_json(body)}
    raise TypeError(i)


def ann_instr_from_json(obj: dict) -> AnnInstr:
    match obj["kind"]:
        case "pre":
            return PreAnn(assertion_from_json(obj["assert"]), ann_instr_from_json(obj["instr"]))
        case "assign":
            return AAssign(obj["var"], aexpr_from_json(obj["expr"]))
        case "seq":
            return ASeq(ann_instr_from_json(obj["first"]), ann_instr_from_json(obj["second"]))
        case "while":
            return AWhile(bexpr_from_json(obj["test"]), assertion_from_json(obj["inv"]),
                          ann_instr_from_json(obj["body"]))
    raise ValueError(f"unknown annotated instruction kind {obj['kind']!r}")


def condition_to_json(c: Condition) -> dict:
    return {"hyp": assertion_to_json(c.hyp), "concl": assertion_to_json(c.concl)}


def condition_from_json(obj: dict) -> Condition:
    return Imp(assertion_from_json(obj["hyp"]), assertion_from_json(obj["concl"]))


def state_to_json(d: AbstractDomain, s: Optional[State]) -> Optional[list]:
    if s is None:
        return None
    return [{"var": x, "value": d.value_to_json(v)} for x, v in s]


def state_from_json(d: AbstractDomain, obj: Optional[list]) -> Optional[State]:
    if obj is None:
        return None
    return tuple((entry["var"], d.value_from_json(entry["value"])) for entry in obj)


def valuation_to_json(g: Any) -> dict:
    return {x: g[x] for x in sorted(g)}
