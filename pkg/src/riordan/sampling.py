"""Seeded generators of random series, pairs and involutions with small-height coefficients."""

from __future__ import annotations

import random

from gmpy2 import mpq

from .fps import DEFAULT_ORDER, Fps, compose, revert
from .group import RiordanPair, conjugate, involution_m


def small_rational(rng: random.Random, height: int = 3, nonzero: bool = False) -> mpq:
    while True:
        q = mpq(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


def random_fps(rng: random.Random, order: int = DEFAULT_ORDER, *, valuation: int = 0,
               unit: bool = False, degree: int = 4, height: int = 3) -> Fps:
    """Random polynomial series of low degree (keeps coefficient growth tame).

    ``unit=True`` forces the constant term to 1.
    """
    cs = [mpq(0)] * (order + 1)
    for k in range(valuation, min(order, valuation + degree) + 1):
        cs[k] = small_rational(rng, height)
    if unit:
        cs[0] = mpq(1)
    if valuation < len(cs) and not cs[valuation]:
        cs[valuation] = small_rational(rng, height, nonzero=True)
    return Fps(cs)


def random_pair(rng: random.Random, order: int = DEFAULT_ORDER, degree: int = 3,
                height: int = 2) -> RiordanPair:
    g = random_fps(rng, order, degree=degree, height=height)
    f = random_fps(rng, order, valuation=1, degree=degree, height=height)
    return RiordanPair(g, f)


def random_series_involution(rng: random.Random, order: int = DEFAULT_ORDER,
                             degree: int = 2, height: int = 2) -> Fps:
    """``s^{-1}(-s(t))`` for random invertible ``s``; an exact involution at this order."""
    s = random_fps(rng, order, valuation=1, degree=degree, height=height)
    return compose(revert(s), -s)


def random_involution(rng: random.Random, sign: int = 1, order: int = DEFAULT_ORDER,
                      degree: int = 2, height: int = 2) -> tuple[RiordanPair, RiordanPair]:
    """A random conjugate ``X^{-1} (sign*M) X``; returns ``(involution, X)``."""
    X = random_pair(rng, order, degree=degree, height=height)
    return conjugate(involution_m(sign, order), X), X
