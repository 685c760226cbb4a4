import pytest
from hypothesis import assume, given, settings
from hypothesis.strategies import fractions
from sympy import QQ

from qtet.exactmath import QParam, q_bracket, q_power
from qtet.reports import InputError


def as_qq(x):
    return QQ(x.numerator, x.denominator)


def test_q_power_examples(q2):
    assert q_power(q2, 0) == QQ(1)
    assert q_power(q2, -2) == QQ(1, 4)
    assert q_power(q2, 3) == QQ(8)


def test_q_bracket_examples(q2):
    assert q_bracket(q2, 0) == QQ(0)
    assert q_bracket(q2, 1) == QQ(1)
    assert q_bracket(q2, 3) == QQ(21, 4)


def test_q_bracket_negative_rejected(q2):
    with pytest.raises(InputError):
        q_bracket(q2, -1)


@pytest.mark.parametrize("q", [QParam.rational("2"), QParam.rational("-1/3"), QParam.indeterminate()])
def test_bracket_is_symmetric_sum_of_powers(q):
    for n in range(1, 17):
        expected = q.zero
        for k in range(n):
            expected += q.power(n - 1 - 2 * k)
        assert q.bracket(n) == expected


@pytest.mark.parametrize("text", ["0", "1", "-1", "abc", "1/0", "2.5", ""])
def test_invalid_q_rejected(text):
    with pytest.raises(InputError):
        QParam.parse(text)


def test_parse_symbolic():
    q = QParam.parse("q")
    assert q.symbolic
    assert q.format_scalar(q.power(2)) == "q**2"


@pytest.mark.parametrize("text", ["-3/4", "7", "0", "5/3"])
def test_scalar_text_roundtrip(q2, text):
    assert q2.format_scalar(q2.parse_scalar(text)) == text


def test_scalar_text_is_canonical(q2):
    assert q2.format_scalar(q2.parse_scalar("6/8")) == "3/4"
    with pytest.raises(InputError):
        q2.parse_scalar("1/2 + 1")


def test_symbolic_scalars_reduce():
    q = QParam.indeterminate()
    x = q.parse_scalar("(q**2 - 1)/(q - 1)")
    assert x == q.parse_scalar("q + 1")


@settings(max_examples=1000)
@given(fractions(), fractions(), fractions())
def test_field_laws(a, b, c):
    x, y, z = as_qq(a), as_qq(b), as_qq(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assume(x != 0)
    assert x * (QQ(1) / x) == QQ(1)
