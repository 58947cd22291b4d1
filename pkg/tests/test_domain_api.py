import pytest

from absint.domain_api import (
    EMPTY, AbstractDomain, MonitoredDomain, format_state, is_consistent, join_states,
    join_states_opt, lookup, opt_state_to_assert, state_stable, state_to_assert, update,
)
from absint.domains import ALL_Z, EVEN, ODD, PTOP, IntervalDomain, ParityDomain, above, between
from absint.syntax import FALSE, TRUE, Conj, Lt, Num, Pred, Var, leq

P = ParityDomain()
I = IntervalDomain()
x, y = Var("x"), Var("y")


def test_abstract_contract():
    with pytest.raises(TypeError):
        AbstractDomain()


def test_lookup_defaults_to_top():
    s = (("x", EVEN),)
    assert lookup(P, s, "x") is EVEN
    assert lookup(P, s, "y") is PTOP
    assert lookup(I, EMPTY, "z") == ALL_Z


def test_update_replaces_or_appends():
    s = (("x", EVEN), ("y", ODD))
    assert update("x", ODD, s) == (("x", ODD), ("y", ODD))
    assert update("z", ODD, s) == (("x", EVEN), ("y", ODD), ("z", ODD))
    assert update("x", ODD, EMPTY) == (("x", ODD),)


def test_state_to_assert():
    s = (("x", EVEN), ("y", ODD))
    assert state_to_assert(P, s) == Conj(Pred("even", (x,)), Conj(Pred("odd", (y,)), TRUE))
    assert state_to_assert(P, EMPTY) == TRUE
    assert opt_state_to_assert(P, None) == FALSE
    assert state_to_assert(I, (("x", between(0, 1)),)) == \
        Conj(Conj(leq(Num(0), x), leq(x, Num(1))), TRUE)


def test_is_consistent():
    assert is_consistent(EMPTY)
    assert is_consistent((("x", EVEN), ("y", EVEN)))
    assert not is_consistent((("x", EVEN), ("y", EVEN), ("x", ODD)))


class TestJoin:
    def test_pointwise(self):
        s1 = (("x", between(0, 0)), ("y", between(5, 5)))
        s2 = (("y", between(7, 9)), ("x", between(1, 1)))
        assert join_states(I, s1, s2) == (("y", between(5, 9)), ("x", between(0, 1)))

    def test_missing_variable_becomes_top(self):
        assert join_states(I, (("x", between(0, 0)),), EMPTY) == (("x", ALL_Z),)
        assert join_states(I, EMPTY, (("x", between(0, 0)),)) == EMPTY

    def test_result_is_duplicate_free(self):
        s1 = (("x", EVEN), ("x", ODD))
        out = join_states(P, s1, (("x", EVEN),))
        assert is_consistent(out)

    def test_absent_second_state(self):
        s = (("x", EVEN),)
        assert join_states_opt(P, s, None) == s


def test_stable():
    wide = (("x", above(0)),)
    narrow = (("x", between(0, 4)),)
    assert state_stable(I, wide, narrow)
    assert not state_stable(I, narrow, wide)
    assert state_stable(I, EMPTY, narrow)
    # variables missing from the second state are top
    assert not state_stable(I, narrow, EMPTY)
    assert not state_stable(I, (("x", between(0, 2)),), (("x", between(0, 3)),))
    assert state_stable(I, (("x", between(0, 10)),), (("x", between(0, 10)),))


def test_format_state():
    assert format_state(I, (("x", between(0, 0)), ("y", above(1)))) == "x=[0,0], y=[1,+inf)"
    assert format_state(P, EMPTY) == ""


def test_monitor_records_inconsistent_states():
    m = MonitoredDomain(I)
    m.learn_from_success((("x", between(0, 0)), ("x", between(1, 1))), Lt(y, Num(0)))
    m.over_approx(1, (("x", between(0, 0)),), (("x", between(0, 1)),))
    assert len(m.violations) == 2  # input and unchanged output of the first call
    assert m.seen == 5
    assert m.name == "interval" and m.top == ALL_Z and m.from_int(3) == between(3, 3)
