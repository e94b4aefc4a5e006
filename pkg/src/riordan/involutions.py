"""Involutions and pseudo-involutions in the Riordan group.

Every nonscalar involution ``P = (a, h)`` is conjugate to ``eps * M`` with
``M = (1, -t)`` and ``eps = a(0)``.  An explicit conjugator is

    x = (t - h) / 2,   u = 1 + eps * a,   U = (u, x),

which satisfies ``U^{-1} P U = (eps, -t)`` because ``x(h) = -x`` and
``a * a(h) = 1`` for any involution.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .fps import Fps, compose
from .group import (
    RiordanPair,
    commutator,
    conjugate,
    identity,
    inverse,
    involution_m,
    is_scalar,
    multiply,
    signed,
)


class NotAnInvolution(ValueError):
    pass


class InvolutionClass(Enum):
    IDENTITY = "identity"
    MINUS_IDENTITY = "minus-identity"
    CONJUGATE_TO_M = "conjugate-to-M"
    CONJUGATE_TO_MINUS_M = "conjugate-to-minus-M"
    NOT_INVOLUTION = "not-involution"


@dataclass(frozen=True)
class ConjugacyWitness:
    """``conjugator`` carries ``source`` onto ``target``.

    For pairs this means ``conjugator^{-1} source conjugator == target``; for
    series it means ``conjugator(source(t)) == target(conjugator(t))``, i.e.
    ``x o h o x^{-1} == target``.
    """

    source: RiordanPair | Fps
    conjugator: RiordanPair | Fps
    target: RiordanPair | Fps
    sign: int

    def verify(self) -> bool:
        if isinstance(self.source, RiordanPair):
            return conjugate(self.source, self.conjugator) == self.target
        x = self.conjugator
        return compose(x, self.source) == compose(self.target, x)

    def to_json(self) -> dict:
        def enc(v):
            return v.to_json() if isinstance(v, RiordanPair) else {"series": v.to_json()}

        return {
            "conjugator": enc(self.conjugator),
            "target": enc(self.target),
            "sign": self.sign,
            "verified": self.verify(),
        }


@dataclass(frozen=True)
class Classification:
    kind: InvolutionClass
    sign: int | None = None
    witness: ConjugacyWitness | None = None


@dataclass(frozen=True)
class TwoInvolutionWitness:
    """``I1 * I2 == sign * [A, B]``.

    ``product_is_involution`` flags the degenerate case where the product is an
    involution itself, which is conventionally not counted as a product of two.
    """

    I1: RiordanPair
    I2: RiordanPair
    sign: int
    A: RiordanPair
    B: RiordanPair
    product_is_involution: bool

    def verify(self) -> bool:
        return multiply(self.I1, self.I2) == signed(commutator(self.A, self.B), self.sign)


def is_involution(P: RiordanPair) -> bool:
    return multiply(P, P) == identity(P.order)


def is_pseudo_involution(P: RiordanPair) -> bool:
    """``P * M`` is an involution."""
    return is_involution(multiply(P, involution_m(1, P.order)))


def is_series_involution(h: Fps) -> bool:
    return compose(h, h) == Fps.var(h.order)


def series_involution_conjugator(h: Fps) -> ConjugacyWitness:
    """``x = (t - h)/2``, which satisfies ``x(h(t)) = -x(t)``."""
    t = Fps.var(h.order)
    if h == t:
        raise NotAnInvolution("h = t is the trivial involution; nothing to conjugate")
    if h[0] or not is_series_involution(h):
        raise NotAnInvolution("h is not a compositional involution")
    x = (t - h) / 2
    w = ConjugacyWitness(source=h, conjugator=x, target=-t, sign=1)
    if not w.verify():  # pragma: no cover - guaranteed algebraically
        raise AssertionError("series conjugator failed verification")
    return w


def riordan_involution_conjugator(P: RiordanPair) -> ConjugacyWitness:
    """Witness ``U`` with ``U^{-1} P U = (eps, -t)``, ``eps = g(0)``."""
    if is_scalar(P):
        raise NotAnInvolution("scalar involutions are not conjugate to +-M")
    if not is_involution(P):
        raise NotAnInvolution("pair is not an involution")
    a, h = P.g, P.f
    eps = int(a[0])
    t = Fps.var(P.order)
    x = (t - h) / 2
    u = 1 + a.scale(eps)
    U = RiordanPair(u, x)
    w = ConjugacyWitness(source=P, conjugator=U, target=involution_m(eps, P.order), sign=eps)
    if not w.verify():  # pragma: no cover - guaranteed algebraically
        raise AssertionError("involution conjugator failed verification")
    return w


def classify_involution(P: RiordanPair) -> Classification:
    if P == identity(P.order):
        return Classification(InvolutionClass.IDENTITY, 1)
    if P == signed(identity(P.order), -1):
        return Classification(InvolutionClass.MINUS_IDENTITY, -1)
    if not is_involution(P):
        return Classification(InvolutionClass.NOT_INVOLUTION)
    w = riordan_involution_conjugator(P)
    kind = InvolutionClass.CONJUGATE_TO_M if w.sign == 1 else InvolutionClass.CONJUGATE_TO_MINUS_M
    return Classification(kind, w.sign, w)


def two_involution_product_witness(I1: RiordanPair, I2: RiordanPair) -> TwoInvolutionWitness:
    """Write ``I1 * I2`` as a signed commutator ``sign * [M^{R1}, R1^{-1} R2]``.

    Here ``I_k = eps_k * R_k^{-1} M R_k``, so ``R_k`` is the inverse of the
    conjugator returned by :func:`riordan_involution_conjugator`.
    """
    ws = []
    for I in (I1, I2):
        try:
            ws.append(riordan_involution_conjugator(I))
        except NotAnInvolution as exc:
            raise NotAnInvolution(f"expected a nonscalar involution: {exc}") from None
    R1 = inverse(ws[0].conjugator)
    R2 = inverse(ws[1].conjugator)
    M = involution_m(1, I1.order)
    A = conjugate(M, R1)
    B = multiply(inverse(R1), R2)
    sign = ws[0].sign * ws[1].sign
    out = TwoInvolutionWitness(I1, I2, sign, A, B, is_involution(multiply(I1, I2)))
    if not out.verify():  # pragma: no cover
        raise AssertionError("two-involution witness failed verification")
    return out


__all__ = [
    "Classification",
    "ConjugacyWitness",
    "InvolutionClass",
    "NotAnInvolution",
    "TwoInvolutionWitness",
    "classify_involution",
    "is_involution",
    "is_pseudo_involution",
    "is_series_involution",
    "riordan_involution_conjugator",
    "series_involution_conjugator",
    "two_involution_product_witness",
]
