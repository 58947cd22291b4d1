import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from absint import jsonio
from absint.domains import IntervalDomain, ParityDomain
from absint.hoare import conditions
from absint.interpreter import ab1, ab2
from absint.domain_api import opt_state_to_assert
from absint.syntax import Lt, Num, Var

from generators import aexprs, assertions, instrs, states


def through_text(obj):
    return json.loads(json.dumps(obj))


@given(aexprs)
def test_aexpr(e):
    assert jsonio.aexpr_from_json(through_text(jsonio.aexpr_to_json(e))) == e


@given(assertions)
def test_assertion(a):
    assert jsonio.assertion_from_json(through_text(jsonio.assertion_to_json(a))) == a


@given(instrs)
def test_instr(i):
    assert jsonio.instr_from_json(through_text(jsonio.instr_to_json(i))) == i


@settings(max_examples=50, deadline=None)
@given(st.data(), instrs)
def test_analysis_results(data, i):
    for d in (IntervalDomain(), ParityDomain()):
        s = data.draw(states(d))
        for engine in (ab1, ab2):
            ai, final = engine(d, i, s)
            assert jsonio.ann_instr_from_json(through_text(jsonio.ann_instr_to_json(ai))) == ai
            assert jsonio.state_from_json(d, through_text(jsonio.state_to_json(d, final))) == final
            for c in conditions(ai, opt_state_to_assert(d, final)):
                assert jsonio.condition_from_json(through_text(jsonio.condition_to_json(c))) == c


def test_shape():
    assert jsonio.bexpr_to_json(Lt(Var("x"), Num(1))) == {
        "kind": "lt", "left": {"kind": "var", "name": "x"}, "right": {"kind": "num", "value": 1},
    }
    assert jsonio.state_to_json(ParityDomain(), None) is None
    assert jsonio.valuation_to_json({"y": 1, "x": 2}) == {"x": 2, "y": 1}
    assert list(jsonio.valuation_to_json({"y": 1, "x": 2})) == ["x", "y"]


@pytest.mark.parametrize("decode, obj", [
    (jsonio.aexpr_from_json, {"kind": "times"}),
    (jsonio.bexpr_from_json, {"kind": "le"}),
    (jsonio.assertion_from_json, {"kind": "or"}),
    (jsonio.instr_from_json, {"kind": "if"}),
    (jsonio.ann_instr_from_json, {"kind": "if"}),
])
def test_unknown_kinds(decode, obj):
    with pytest.raises(ValueError):
        decode(obj)
