import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from riordan.exprparse import parse_series
from riordan.fps import Fps, compose, derivative, recip, revert
from riordan.group import RiordanPair, identity, inverse, involution_m, multiply, scalar
from riordan.involutions import is_involution
from riordan.subgroups import (
    Appell, Bcn, Bell, ConjugatorStatus, Derivative, HittingTime, Lagrange, NotAMember,
    Reciprocal, Stabilizer, TagError, is_member, is_subgroup_involution, parse_tag,
    stabilizer_parity_involutions, subgroup_conjugator,
)

from conftest import N

t = Fps.var(N)
T = Fps.var(N + 1)
PASCAL = RiordanPair(recip(1 - t), t / (1 - t))
STAB_EVEN = Stabilizer(1 + t * t + 3 * t ** 4, "1+t^2+3*t^4")


def involutive_seed(a, b, order=N + 1):
    x = Fps.var(order)
    s = x + a * x ** 2 + b * x ** 3
    return compose(revert(s), -s)


def seeds():
    return st.builds(involutive_seed, st.integers(-3, 3).filter(bool), st.integers(-2, 2))


def test_construct_examples():
    assert Derivative().construct(T / (1 - T)) == RiordanPair(recip((1 - t) ** 2), t / (1 - t))
    assert HittingTime().construct(-T / (1 + T)) == RiordanPair(recip(1 + t), -t / (1 + t))
    assert Bcn(1, 1).construct(order=N) == PASCAL
    assert Reciprocal(2).construct(T / (1 - T)) == RiordanPair((1 - t) ** 2, t / (1 - t))
    with pytest.raises(ValueError):
        Bcn(1, 0)


def test_membership_examples():
    assert is_member(Bell(), PASCAL)
    assert not is_member(Appell(), PASCAL)
    assert is_member(Lagrange(), involution_m(1, N))
    assert is_member(Bcn(5, 1), PASCAL)  # any c for the same n
    assert not is_member(Bcn(1, 2), PASCAL)


def test_subgroup_involution_examples():
    P = HittingTime().construct(-T / (1 + T))
    assert is_subgroup_involution(HittingTime(), P) and is_involution(P)
    assert is_subgroup_involution(Appell(), RiordanPair(Fps.const(-1, N), t))
    assert not is_subgroup_involution(Bcn(1, 1), PASCAL)
    with pytest.raises(NotAMember):
        is_subgroup_involution(Appell(), PASCAL)


def test_hitting_time_conjugator_example():
    P = RiordanPair(recip(1 + t), -t / (1 + t))
    res = subgroup_conjugator(HittingTime(), P)
    assert res.status is ConjugatorStatus.FOUND
    x = t * (t + 2) / (2 * (t + 1))
    U = res.witness.conjugator
    assert U.f == x
    assert res.witness.verify() and res.witness.target == involution_m(1, N)
    # the closed-form transition matrix (t x'/x, x) works as well
    closed = HittingTime().construct(T * (T + 2) / (2 * (T + 1)))
    assert multiply(inverse(closed), multiply(P, closed)) == involution_m(1, N)


def test_derivative_example_infeasible_for_m():
    h = -T / (1 + T)
    P = Derivative().construct(h)
    res = subgroup_conjugator(Derivative(), P, target_sign=1)
    assert res.status is ConjugatorStatus.INFEASIBLE_IN_SUBGROUP
    assert res.degree == 0 and res.component == "g"
    assert "x'(t) would vanish" in res.certificate
    assert res.outside_witness.verify()


def test_derivative_reaches_minus_m_inside():
    # derivative-subgroup involutions start their diagonal with -1, so -M is the reachable target
    P = Derivative().construct(-T / (1 + T))
    assert P.g[0] == -1
    res = subgroup_conjugator(Derivative(), P)
    assert res.found and res.target_sign == -1
    assert Derivative().is_member(res.witness.conjugator) and res.witness.verify()


def test_lagrange_conjugator_example():
    res = subgroup_conjugator(Lagrange(), involution_m(1, N))
    assert res.found and res.witness.conjugator == identity(N)


def test_reciprocal_parity():
    h = involutive_seed(1, 1)
    even = subgroup_conjugator(Reciprocal(2), Reciprocal(2).construct(h), target_sign=1)
    assert even.found
    odd = subgroup_conjugator(Reciprocal(3), Reciprocal(3).construct(h), target_sign=1)
    assert odd.status is ConjugatorStatus.INFEASIBLE_IN_SUBGROUP and odd.outside_witness.verify()


def test_stabilizer_conjugators():
    h = involutive_seed(2, -1, N)
    res = subgroup_conjugator(STAB_EVEN, STAB_EVEN.construct(h))
    assert res.found and STAB_EVEN.is_member(res.witness.conjugator)
    odd_phi = Stabilizer(1 + t, "1+t")
    res = subgroup_conjugator(odd_phi, odd_phi.construct(h))
    assert res.status is ConjugatorStatus.INFEASIBLE_IN_SUBGROUP
    assert res.degree <= N and res.outside_witness.verify()


def test_stabilizer_parity_examples():
    r = stabilizer_parity_involutions(1 + t * t)
    assert r.m_in_stabilizer and not r.minus_m_in_stabilizer
    r = stabilizer_parity_involutions(1 + t)
    assert not r.m_in_stabilizer and not r.minus_m_in_stabilizer
    assert stabilizer_parity_involutions(Fps.const(1, N)).m_in_stabilizer


def test_parse_tag():
    assert parse_tag("derivative") == Derivative()
    assert parse_tag("reciprocal:r=2") == Reciprocal(2)
    assert parse_tag("bcn:c=1/2,n=3") == Bcn(mpq(1, 2), 3)
    st_ = parse_tag("stabilizer:f=1+t^2", N)
    assert st_.phi == 1 + t * t and st_.tag() == "stabilizer:f=1+t^2"
    for tag in (Derivative(), HittingTime(), Lagrange(), Bell(), Appell(), Reciprocal(3), Bcn(2, 2)):
        assert parse_tag(tag.tag()) == tag
    for bad in ("nosuch", "reciprocal:r=x", "bcn:c=1", "derivative:r=1", "stabilizer:g=1"):
        with pytest.raises(TagError):
            parse_tag(bad)


def test_scalar_rejected():
    with pytest.raises(ValueError):
        subgroup_conjugator(Appell(), scalar(-1, N))


# properties

EXTRA = [Derivative(), HittingTime(), Reciprocal(1), Reciprocal(2), Reciprocal(3)]
PLAIN = [Lagrange(), STAB_EVEN, Stabilizer(1 + t, "1+t")]


@given(seeds(), st.sampled_from(EXTRA + PLAIN))
def test_construct_member_and_table(h, tag):
    if not tag.needs_extra_degree:
        h = h.truncate(N)
    P = tag.construct(h)
    assert P.order == N and tag.is_member(P)
    assert is_subgroup_involution(tag, P) == is_involution(P) is True


@given(seeds())
def test_bell_members(h):
    y = h.shift_down(1).truncate(N)
    P = Bell().construct(y)
    assert Bell().is_member(P)
    assert is_subgroup_involution(Bell(), P) == is_involution(P)


@given(st.integers(0, 10 ** 6), st.sampled_from(EXTRA + PLAIN + [Bell()]))
def test_closure(seed, tag):
    rng = random.Random(seed)

    def member():
        order = N + 1 if tag.needs_extra_degree else N
        x = Fps.var(order)
        s = x + rng.randint(-2, 2) * x ** 2 + rng.randint(-2, 2) * x ** 3
        if isinstance(tag, Bell):
            return tag.construct(1 + rng.randint(-2, 2) * t + rng.randint(-2, 2) * t * t)
        return tag.construct(s)

    P, Q = member(), member()
    assert tag.is_member(multiply(P, inverse(Q)))


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))
def test_bcn_closure_and_involutions(c1, c2, n):
    tag = Bcn(c1, n)
    P, Q = tag.element(c1, N), tag.element(c2, N)
    assert tag.is_member(multiply(P, inverse(Q)))
    assert is_subgroup_involution(tag, P) == is_involution(P) == (c1 == 0)


@given(seeds())
def test_appell_only_scalar_involutions(h):
    for g in (Fps.const(1, N), Fps.const(-1, N), 1 + t, -1 + 2 * t * t):
        P = Appell().construct(g)
        assert is_subgroup_involution(Appell(), P) == is_involution(P)


@given(seeds(), st.sampled_from([HittingTime(), Lagrange(), Reciprocal(2), Reciprocal(1), Derivative(), Bell(), STAB_EVEN]))
def test_found_witnesses_verify(h, tag):
    if isinstance(tag, Bell):
        P = tag.construct(h.shift_down(1).truncate(N))
    else:
        P = tag.construct(h if tag.needs_extra_degree else h.truncate(N))
    res = subgroup_conjugator(tag, P)
    assert res.found
    assert res.witness.verify() and tag.is_member(res.witness.conjugator)
    assert res.target_sign == int(P.g[0])


@given(seeds())
def test_derivative_infeasible_for_m(h):
    P = Derivative().construct(h)
    res = subgroup_conjugator(Derivative(), P, target_sign=1)
    assert res.status is ConjugatorStatus.INFEASIBLE_IN_SUBGROUP
    assert res.degree <= N and res.outside_witness.verify()


def test_derivative_relation():
    h = involutive_seed(1, 0)
    P = Derivative().construct(h)
    assert P.g.truncate(N - 1) == derivative(h).truncate(N - 1)
    assert parse_series("-t/(1+t)", N) == -t / (1 + t)
