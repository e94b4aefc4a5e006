import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from riordan.exprparse import (
    Add, Div, DivisionValuation, ExprError, ExpressionTooLarge, IllegalCharacter, Mul, Neg,
    NegativePowerOfNonunit, Pow, Rational, Root, RootConstantTerm, Sqrt, Sub, UnexpectedToken,
    Var, evaluate, parse, parse_series, pretty, tokenize,
)
from riordan.fps import Fps, mul, nth_root, power_int, recip
from riordan.reversibility import normal_form_series

N = 16
t = Fps.var(N)


def kinds(text):
    return [tok.kind for tok in tokenize(text)]


def test_tokenize_examples():
    assert kinds("1/(1-t)") == ["Rational", "Slash", "LParen", "Rational", "Minus", "t", "RParen", "End"]
    assert kinds("root(2, 1+t^2)")[:4] == ["root", "LParen", "Rational", "Comma"]
    with pytest.raises(IllegalCharacter) as e:
        tokenize("1 @ t")
    assert e.value.offset == 2
    assert tokenize("0.125")[0].value == mpq(1, 8)


def test_parse_examples():
    R = lambda q: Rational(mpq(q))  # noqa: E731
    assert parse("-t/root(2,1+t^2)") == Div(Neg(Var()), Root(2, Add(R(1), Pow(Var(), 2))))
    assert parse("1+2*t") == Add(R(1), Mul(R(2), Var()))
    assert parse("sqrt(t)") == Sqrt(Var())
    assert parse("1-t-t") == Sub(Sub(R(1), Var()), Var())
    assert parse("-t^2") == Neg(Pow(Var(), 2))
    with pytest.raises(UnexpectedToken) as e:
        parse("1+")
    assert e.value.found.kind == "End" and e.value.offset == 2


def test_error_offsets():
    cases = {
        "t^x": 2, "(1+t": 4, "root(0,t)": 5, "1 2": 2, "sqrt 2": 5, "t^2.5": 2,
    }
    for text, off in cases.items():
        with pytest.raises(ExprError) as e:
            parse(text)
        assert e.value.offset == off, text


def test_evaluate_examples():
    assert parse_series("1/(1-t)", 4).coeffs == (1, 1, 1, 1, 1)
    assert mul(parse_series("1/(1-t)", N), 1 - t) == 1
    assert parse_series("t/(1-t)", 4).coeffs == (0, 1, 1, 1, 1)
    assert parse_series("-t/root(2, 1+t^2)", N) == normal_form_series(2, 1, N).series


def catalan(n):
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c


def test_catalan_expansion():
    assert list(parse_series("(1 - sqrt(1-4*t))/(2*t)", 5).coeffs) == [1, 1, 2, 5, 14, 42]
    assert list(parse_series("(1 - sqrt(1-4*t))/(2*t)", N).coeffs) == catalan(N)


def test_evaluation_errors_carry_spans():
    with pytest.raises(RootConstantTerm) as e:
        parse_series("1 + sqrt(2+t)", N)
    assert (e.value.start, e.value.end) == (9, 12)
    with pytest.raises(RootConstantTerm):
        parse_series("root(3, t^2)", N)
    with pytest.raises(NegativePowerOfNonunit) as e:
        parse_series("1 + t^-2", N)
    assert e.value.start == 4
    with pytest.raises(DivisionValuation):
        parse_series("t/t^2", N)
    with pytest.raises(DivisionValuation):
        parse_series("1/(t-t)", N)


def test_valuation_cancellations_are_exact():
    # the numerator vanishes to degree 2, so the naive evaluation loses precision
    got = parse_series("(sqrt(1+t) - 1 - t/2)/t^2", N)
    want = (nth_root(1 + Fps.var(N + 2), 2) - 1 - Fps.var(N + 2) / 2).shift_down(2).truncate(N)
    assert got == want
    assert parse_series("(t^2 - t^3)/t^2", N) == 1 - t
    assert parse_series("sqrt(t^2 + t^3)", N) == t * nth_root(1 + t, 2)
    assert parse_series("(1+t)^-2", N) == recip((1 + t) ** 2)


def test_sqrt_is_root_two():
    assert parse_series("sqrt(1+t)", N) == parse_series("root(2, 1+t)", N)


def test_decimals_are_exact():
    assert parse_series("0.5*t + 1.25", N) == Fps.const(mpq(5, 4), N) + t / 2


def test_deep_nesting_is_structured():
    for text in ["(" * 3000 + "t" + ")" * 3000, "-" * 4000 + "t", "sqrt(" * 1000 + "1" + ")" * 1000]:
        with pytest.raises(ExpressionTooLarge):
            parse_series(text, 4)
    assert parse_series("+".join(["t"] * 2000), 3)[1] == 2000
    with pytest.raises(ExpressionTooLarge):
        tokenize("1" * 4097)


ROUND_TRIP = [
    "1/(1-t)", "t/(1-t)", "(1-sqrt(1-4*t))/(2*t)", "-t/root(2,1+t^2)", "-t^2", "(-t)^2",
    "1-(t-1)", "0.25*t/3/(2*t)", "--t", "t*-t", "-(1+t)*2", "(1+t)^-3", "2^3", "1-2-3",
    "t/(2*t)*3", "root(5, 1 + 7.5*t)",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_pretty_round_trip(text):
    e = parse(text)
    assert parse(pretty(e)) == e
    assert pretty(parse(pretty(e))) == pretty(e)


# randomized trees: evaluation is compositional and printing round-trips

leaf = st.one_of(
    st.builds(Var),
    st.builds(Rational, st.sampled_from([mpq(1), mpq(2), mpq(3, 4), mpq(1, 2), mpq(5)])),
)


def extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Pow, children, st.integers(0, 3)),
    )


trees = st.recursive(leaf, extend, max_leaves=8)


def direct(e, n):
    if isinstance(e, Var):
        return Fps.var(n)
    if isinstance(e, Rational):
        return Fps.const(e.value, n)
    if isinstance(e, Neg):
        return -direct(e.arg, n)
    if isinstance(e, Add):
        return direct(e.left, n) + direct(e.right, n)
    if isinstance(e, Sub):
        return direct(e.left, n) - direct(e.right, n)
    if isinstance(e, Mul):
        return mul(direct(e.left, n), direct(e.right, n))
    if isinstance(e, Pow):
        return power_int(direct(e.base, n), e.exponent)
    raise TypeError(e)


@given(trees)
def test_evaluation_is_compositional(e):
    assert evaluate(e, 8) == direct(e, 8)


@given(trees, trees)
def test_division_and_root_compose(a, b):
    unit = Add(Rational(mpq(1)), Mul(Var(), a))
    assert evaluate(Div(b, unit), 8) == mul(direct(b, 8), recip(direct(unit, 8)))
    assert evaluate(Root(3, unit), 8) == nth_root(direct(unit, 8), 3)


@given(trees)
def test_random_tree_round_trip(e):
    assert parse(pretty(e)) == e


# fuzzing: nothing but ExprError may escape

ALPHABET = "t0123456789.+-*/^(), sqrtoo"


def _check_no_crash(text):
    try:
        parse_series(text, 6)
    except ExprError as exc:
        assert 0 <= exc.offset <= len(text)


def test_fuzz_random_bytes():
    rng = random.Random(1)
    for i in range(10_000):
        n = rng.choice([rng.randint(0, 16), rng.randint(0, 200), 4096 if i % 1000 == 0 else 8])
        data = bytes(rng.randrange(256) for _ in range(n))
        _check_no_crash(data.decode("latin-1"))


def test_fuzz_grammar_alphabet():
    rng = random.Random(2)
    for _ in range(3000):
        _check_no_crash("".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, 30))))


@given(st.text(max_size=60))
def test_fuzz_unicode(text):
    _check_no_crash(text)
