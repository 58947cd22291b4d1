import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from absint.domains import (
    ALL_Z, DOMAINS, EVEN, ODD, PTOP, IntervalDomain, ParityDomain, above, below, between,
    make_domain,
)
from absint.domains.interval import (
    Interval, format_interval, interval_add, interval_join, interval_learn_from_failure,
    interval_learn_from_success, interval_over_approx, interval_thinner, interval_to_pred,
    open_interval, parse_interval,
)
from absint.domains.parity import PARITY_MEANING, parity_add, parity_from_int, parity_to_pred
from absint.semantics import eval_assert
from absint.syntax import TRUE, Conj, Lt, Num, Plus, Pred, Var, leq

x = Var("x")
WINDOW = range(-8, 9)
SMALL = IntervalDomain().sample_values(-4, 4)


def gamma(v):
    return {z for z in WINDOW if IntervalDomain().contains(v, z)}


class TestParity:
    @pytest.mark.parametrize("n, expected", [(4, EVEN), (7, ODD), (-3, ODD), (0, EVEN), (-8, EVEN)])
    def test_from_int(self, n, expected):
        assert parity_from_int(n) is expected

    def test_add_table(self):
        assert parity_add(ODD, EVEN) is ODD
        assert parity_add(EVEN, ODD) is ODD
        assert parity_add(ODD, ODD) is EVEN
        assert parity_add(EVEN, EVEN) is EVEN
        assert parity_add(PTOP, EVEN) is PTOP
        assert parity_add(ODD, PTOP) is PTOP

    def test_add_sound(self):
        for z1, z2 in itertools.product(WINDOW, WINDOW):
            assert parity_add(parity_from_int(z1), parity_from_int(z2)) is parity_from_int(z1 + z2)

    def test_to_pred(self):
        assert parity_to_pred(EVEN, x) == Pred("even", (x,))
        assert parity_to_pred(ODD, x) == Pred("odd", (x,))
        assert parity_to_pred(PTOP, Plus(x, x)) == TRUE

    def test_meaning(self):
        assert PARITY_MEANING("odd", [-1]) and PARITY_MEANING("even", [-2])
        assert not PARITY_MEANING("odd", [2]) and not PARITY_MEANING("leq", [0, 1])

    def test_lattice(self):
        d = ParityDomain()
        assert d.join(EVEN, EVEN) is EVEN and d.join(EVEN, ODD) is PTOP
        assert d.thinner(ODD, PTOP) and not d.thinner(PTOP, ODD) and not d.thinner(EVEN, ODD)

    def test_learning_keeps_state(self):
        d = ParityDomain()
        s = (("x", EVEN),)
        assert d.learn_from_success(s, Lt(x, Num(0))) == s
        assert d.learn_from_failure(s, Lt(x, Num(0))) == s

    def test_over_approx(self):
        d = ParityDomain()
        assert d.over_approx(0, (("x", EVEN),), (("x", ODD),)) == ()
        assert d.over_approx(1, (("x", EVEN),), (("x", ODD),)) == (("x", ODD),)

    def test_text(self):
        d = ParityDomain()
        assert [d.parse_value(t) for t in ("even", " odd", "top")] == [EVEN, ODD, PTOP]
        with pytest.raises(ValueError):
            d.parse_value("EVEN")


class TestInterval:
    def test_invariant(self):
        with pytest.raises(ValueError):
            between(3, 2)

    def test_add(self):
        assert interval_add(between(1, 2), between(3, 4)) == between(4, 6)
        assert interval_add(above(1), below(2)) == ALL_Z
        assert interval_add(between(0, 0), between(0, 0)) == between(0, 0)
        assert interval_add(above(1), between(-3, 5)) == above(-2)
        assert interval_add(below(1), below(2)) == below(3)
        assert interval_add(ALL_Z, between(0, 0)) == ALL_Z

    def test_add_exact(self):
        for i1, i2 in itertools.product(SMALL, SMALL):
            total = interval_add(i1, i2)
            d = IntervalDomain()
            assert all(d.contains(total, a + b) for a in gamma(i1) for b in gamma(i2))
            if i1.lo is not None and i2.lo is not None:
                assert total.lo == i1.lo + i2.lo
            if i1.hi is not None and i2.hi is not None:
                assert total.hi == i1.hi + i2.hi

    def test_to_pred(self):
        assert interval_to_pred(between(0, 10), x) == Conj(leq(Num(0), x), leq(x, Num(10)))
        assert interval_to_pred(above(3), x) == leq(Num(3), x)
        assert interval_to_pred(below(3), x) == leq(x, Num(3))
        assert interval_to_pred(ALL_Z, x) == TRUE
        assert not IntervalDomain().meaning("leq", [3])

    def test_join(self):
        assert interval_join(between(0, 3), between(2, 5)) == between(0, 5)
        assert interval_join(above(3), above(5)) == above(3)
        assert interval_join(between(0, 3), below(1)) == below(3)
        assert interval_join(above(0), below(0)) == ALL_Z

    def test_join_is_least_upper_bound(self):
        for i1, i2 in itertools.product(SMALL, SMALL):
            j = interval_join(i1, i2)
            assert interval_thinner(i1, j) and interval_thinner(i2, j)
            for k in SMALL:
                if interval_thinner(i1, k) and interval_thinner(i2, k):
                    assert interval_thinner(j, k)

    def test_thinner(self):
        assert interval_thinner(between(2, 3), above(1))
        assert not interval_thinner(ALL_Z, between(0, 1))
        assert interval_thinner(ALL_Z, ALL_Z)
        assert interval_thinner(below(-4), ALL_Z)

    def test_thinner_is_subset(self):
        for i1, i2 in itertools.product(SMALL, SMALL):
            assert interval_thinner(i1, i2) == (gamma(i1) <= gamma(i2)), (i1, i2)

    def test_open_interval(self):
        assert open_interval(between(0, 3), between(0, 9)) == above(0)
        assert open_interval(between(0, 3), between(-1, 3)) == below(3)
        assert open_interval(between(0, 3), between(-1, 4)) == ALL_Z
        assert open_interval(below(5), below(7)) == ALL_Z
        assert open_interval(below(5), below(4)) == below(5)
        assert open_interval(above(5), above(4)) == ALL_Z
        assert open_interval(above(0), between(0, 3)) == ALL_Z
        for v in SMALL:
            if v != ALL_Z:
                assert open_interval(v, v) == v

    def test_over_approx(self):
        s, s2 = (("x", between(0, 0)),), (("x", between(0, 2)),)
        assert interval_over_approx(2, s, s2) == (("x", above(0)),)
        assert interval_over_approx(0, s, s2) == ()
        # entries follow the older state; missing entries of s2 read as top
        assert interval_over_approx(1, (("y", between(0, 0)),), s2) == (("y", ALL_Z),)

    def test_learn_from_success(self):
        b = Lt(x, Num(6))
        assert interval_learn_from_success((("x", between(0, 10)),), b) == (("x", between(0, 5)),)
        assert interval_learn_from_success((("x", between(20, 30)),), Lt(x, Num(10))) is None
        assert interval_learn_from_success((("x", above(0)),), Lt(x, Num(10))) == (("x", between(0, 9)),)
        assert interval_learn_from_success((), Lt(x, Num(10))) == (("x", below(9)),)
        assert interval_learn_from_success((("x", between(0, 3)),), b) == (("x", between(0, 3)),)
        assert interval_learn_from_success((("x", ALL_Z),), Lt(x, Var("y"))) == (("x", ALL_Z),)
        # only `var < e` teaches anything
        assert interval_learn_from_success((("x", between(0, 0)),), Lt(Num(5), x)) == (("x", between(0, 0)),)

    def test_learn_from_failure(self):
        b = Lt(x, Num(10))
        assert interval_learn_from_failure((("x", between(0, 10)),), b) == (("x", between(10, 10)),)
        assert interval_learn_from_failure((("x", between(0, 5)),), b) is None
        assert interval_learn_from_failure((("x", between(20, 30)),), b) == (("x", between(20, 30)),)
        assert interval_learn_from_failure((("x", below(12)),), b) == (("x", between(10, 12)),)
        s = (("y", between(2, 4)), ("x", between(0, 10)))
        assert interval_learn_from_failure(s, Lt(x, Var("y"))) == (("y", between(2, 4)), ("x", between(2, 10)))

    def test_choose_defaults(self):
        d = IntervalDomain()
        assert d.choose_widen_iters((), None) == 2
        assert d.choose_approx_budget((), None) == 3


class TestText:
    @pytest.mark.parametrize("text, value", [
        ("[0,10]", between(0, 10)),
        (" [ -3 , 4 ] ", between(-3, 4)),
        ("[2,+inf)", above(2)),
        ("[2,inf)", above(2)),
        ("(-inf,-1]", below(-1)),
        ("(-inf,+inf)", ALL_Z),
        ("top", ALL_Z),
    ])
    def test_parse(self, text, value):
        assert parse_interval(text) == value

    @pytest.mark.parametrize("text", ["[3,2]", "[1,2)", "(0,1]", "[a,b]", "", "all"])
    def test_reject(self, text):
        with pytest.raises(ValueError):
            parse_interval(text)

    @given(st.sampled_from(IntervalDomain().sample_values(-20, 20)))
    def test_roundtrip(self, v):
        d = IntervalDomain()
        assert parse_interval(format_interval(v)) == v
        assert d.value_from_json(d.value_to_json(v)) == v


def test_make_domain():
    assert set(DOMAINS) == {"parity", "interval"}
    d = make_domain("interval", widen_iters=5)
    assert d.choose_widen_iters((), None) == 5 and d.choose_approx_budget((), None) == 3
    assert make_domain("parity", approx_budget=0).choose_approx_budget((), None) == 0


def test_contains_uses_predicates():
    assert IntervalDomain().contains(between(0, 3), 3) and not IntervalDomain().contains(below(0), 1)
    assert ParityDomain().contains(ODD, -7)
    assert eval_assert(PARITY_MEANING, {"x": 5}, parity_to_pred(ODD, x))


def test_interval_repr():
    assert repr(Interval(None, None)) == "ALL_Z" and repr(between(1, 2)) == "between(1, 2)"
