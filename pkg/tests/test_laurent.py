import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virtgraph.errors import NonIntegerPowers
from virtgraph.laurent import LOOP, ONE, ZERO, LaurentPoly, from_A_power, from_t_power, parse

sympy = pytest.importorskip("sympy")

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


def _to_sympy(p: LaurentPoly):
    # quarter powers of t as powers of s = t^(1/4)
    s = sympy.Symbol("s")
    return sum(c * s**e for e, c in p.items()), s


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_product_matches_sympy(a, b):
    pa, s = _to_sympy(a)
    pb, _ = _to_sympy(b)
    got, _ = _to_sympy(a * b)
    assert sympy.expand(pa * pb - got) == 0


@settings(max_examples=60, deadline=None)
@given(polys)
def test_string_round_trip(p):
    assert parse(str(p)) == p
    if all(e % 2 == 0 for e in p.exponents()):
        assert parse(p.to_string("A"), "A") == p


def test_A_and_t_conventions():
    # A = t^(-1/4), so A^-2 = t^(1/2)
    assert from_A_power(-2) == from_t_power(2)
    assert str(from_A_power(-2)) == "t^(1/2)"
    assert LOOP == -from_t_power(2) - from_t_power(-2)
    assert LOOP.to_string("A") == "-A^2 - A^(-2)"


def test_formatting():
    assert str(parse("-t^4 + t^3 + t")) == "-t^4 + t^3 + t"
    assert str(parse("3*t^2 - t^(-3/2) + 2")) == "3*t^2 + 2 - t^(-3/2)"
    assert str(ZERO) == "0"
    assert str(ONE) == "1"


def test_negative_power_of_unit():
    m = from_A_power(3, -1)
    assert m ** -1 == from_A_power(-3, -1)
    assert m ** -2 == from_A_power(-6)
    with pytest.raises(ValueError):
        (ONE + ONE) ** -1


def test_evaluations():
    trefoil = parse("-t^4 + t^3 + t")
    v = trefoil.eval_at_i()
    assert (v.re, v.im) == (-1, 0)
    assert trefoil.eval_at_minus_one() == -3
    with pytest.raises(NonIntegerPowers):
        parse("t^(1/2)").eval_at_i()


def test_integer_powers_flag():
    assert parse("t^2 - 1").has_integer_t_powers()
    assert not parse("t^(3/2) + 1").has_integer_t_powers()
