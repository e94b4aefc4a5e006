"""Reversibility of series and Riordan arrays, and strong reversibility.

A series ``f`` with ``f(0) = 0`` is reversible when some invertible ``u``
satisfies ``f(u) = u(f^{-1})``.  Everything here is decided only through the
truncation order: "reversible" always means "reversible to order N".

Over the rationals a series with multiplier ``-1`` that is not an involution is
never reversible: its square is ``t + a t^{p+1} + ...`` with ``p`` even, and a
reverser's multiplier ``c`` must satisfy ``c^p = -1``.  The solver reports that
as an obstruction at degree ``p + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from gmpy2 import mpq

from ._solve import solve_greedy
from .fps import DEFAULT_ORDER, Fps, FpsError, coeff, compose, format_coeff, power, revert
from .group import (
    DiagonalPattern,
    RiordanPair,
    conjugate,
    diagonal_pattern,
    identity,
    inverse,
    involution_m,
    is_scalar,
    multiply,
)
from .involutions import is_involution, is_pseudo_involution, riordan_involution_conjugator


class WitnessError(ValueError):
    """A supplied witness does not satisfy the required identity."""


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class NormalFormDescriptor:
    """``series = -t / (1 + lam t^p)^{1/p}``; ``conjugator`` s gives ``s^{-1}(f(s)) = series``."""

    p: int
    lam: mpq
    series: Fps
    conjugator: Fps | None = None

    def to_json(self) -> dict:
        out = {"p": self.p, "lambda": format_coeff(self.lam), "series": self.series.to_json()}
        if self.conjugator is not None:
            out["conjugator"] = self.conjugator.to_json()
        return out


def normal_form_series(p: int, lam, order: int = DEFAULT_ORDER) -> NormalFormDescriptor:
    if p < 1:
        raise ValueError("p must be a positive integer")
    lam = coeff(lam)
    t = Fps.var(order)
    series = -t * power(1 + Fps.monomial(lam, p, order), mpq(-1, p))
    return NormalFormDescriptor(p, lam, series)


class Verdict(Enum):
    REVERSIBLE = "reversible"
    OBSTRUCTED = "obstructed"
    MULTIPLIER_OBSTRUCTION = "multiplier-obstruction"


@dataclass(frozen=True)
class ReversibilityReport:
    verdict: Verdict
    order: int
    witness: Fps | None = None
    degree: int | None = None
    details: list = field(default_factory=list)

    @property
    def reversible(self) -> bool:
        return self.verdict is Verdict.REVERSIBLE

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "order": self.order, "details": list(self.details)}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["verified"] = True
        if self.degree is not None:
            out["degree"] = self.degree
        return out


def _check_series(f: Fps):
    if f[0] or f.order < 1 or not f[1]:
        raise FpsError("series needs f(0) = 0 and f'(0) != 0")


def is_series_reversible(f: Fps) -> ReversibilityReport:
    """Solve ``f(u) = u(f^{-1})`` degree by degree.

    Multiplier ``-1``: ``u'(0) = 1`` and ``u_k`` is fixed at degree ``k``
    (odd degrees are resonant).  Multiplier ``1``, ``f = t + a t^m + ...``: the
    reverser needs ``u'(0) = -1`` and ``u_k`` first appears at degree ``k + m - 1``.
    Resonant unknowns stay 0.
    """
    _check_series(f)
    N = f.order
    f1 = f[1]
    t = Fps.var(N)
    if f1 not in (1, -1):
        return ReversibilityReport(
            Verdict.MULTIPLIER_OBSTRUCTION, N,
            details=[f"multiplier {format_coeff(f1)} differs from that of the inverse, "
                     f"{format_coeff(1 / f1)}; multipliers are conjugation invariants"],
        )
    fbar = revert(f)

    def residual(vals):
        u = Fps(vals)
        return (compose(f, u) - compose(u, fbar)).coeffs

    vals = [mpq(0)] * (N + 1)
    if f1 == -1:
        vals[1] = mpq(1)
        steps = [([], [0, 1])] + [([k], [k]) for k in range(2, N + 1)]
    else:
        if f == t:
            return ReversibilityReport(Verdict.REVERSIBLE, N, witness=t, details=["f = t"])
        m = (f - t).valuation()
        vals[1] = mpq(-1)
        steps = [([], list(range(0, m + 1)))]
        steps += [([d - m + 1], [d]) for d in range(m + 1, N + 1)]

    log: list = []
    vals, bad = solve_greedy(residual, vals, steps, log)
    details = [
        f"degree {p}: " + (f"u_{i} solved" if act == "solved" else "inconsistent")
        for p, i, act in log
    ]
    if bad is None:
        u = Fps(vals)
        if compose(f, u) != compose(u, fbar):  # pragma: no cover
            raise AssertionError("reverser failed verification")
        details.append(f"reverser verified through degree {N}; resonant unknowns set to 0")
        return ReversibilityReport(Verdict.REVERSIBLE, N, witness=u, details=details)
    if f1 == -1:
        ff = compose(f, f) - t
        v = ff.valuation()
        if v == bad:
            details.append(
                f"f(f(t)) = t + a t^{v} + ... with p = {v - 1}: any reverser's multiplier c "
                f"must satisfy c^{v - 1} = -1, which has no rational solution"
            )
    return ReversibilityReport(Verdict.OBSTRUCTED, N, degree=bad, details=details)


@dataclass(frozen=True)
class NormalFormObstruction:
    degree: int
    reason: str


def conjugate_to_normal_form(f: Fps) -> NormalFormDescriptor | NormalFormObstruction:
    """Find ``p``, ``lam`` and ``s`` with ``s'(0) = 1`` and ``s^{-1}(f(s)) = -t/(1 + lam t^p)^{1/p}``.

    Works by successive elementary conjugations ``t + c t^m``: a mismatch at
    even degree ``k`` is removed with ``m = k``, at odd degree ``k`` with
    ``m = k - p``.  Degree ``p + 1`` fixes ``lam``; degree ``2p + 1`` is resonant
    and must already agree.
    """
    _check_series(f)
    if f[1] != -1:
        raise FpsError("normal forms are defined for multiplier -1")
    N = f.order
    t = Fps.var(N)
    ff = compose(f, f) - t
    v = ff.valuation()
    if v is None:
        s = revert((t - f) / 2)
        nf = NormalFormDescriptor(1, mpq(0), -t, s)
        if compose(f, s) != compose(s, -t):  # pragma: no cover
            raise AssertionError("involution conjugator failed verification")
        return nf
    p = v - 1
    if p % 2:
        return NormalFormObstruction(v, f"f(f(t)) - t has even valuation {v}")

    cur, s = f, t
    target = -t
    lam = None
    for k in range(2, N + 1):
        if k == p + 1:
            lam = p * cur[k]
            target = normal_form_series(p, lam, N).series
            continue
        e = cur[k] - target[k]
        if not e:
            continue
        m = k if k % 2 == 0 else k - p
        if m < 2 or m == p + 1:
            return NormalFormObstruction(
                k, f"resonant degree {k}: coefficient differs from the normal form by {format_coeff(e)}"
            )
        trial = _conj(cur, t + Fps.monomial(1, m, N))
        beta = trial[k] - cur[k]
        if not beta:  # pragma: no cover - excluded by the degree analysis
            return NormalFormObstruction(k, f"degree {k} is unexpectedly resonant")
        phi = t + Fps.monomial(-e / beta, m, N)
        cur = _conj(cur, phi)
        s = compose(s, phi)

    nf = normal_form_series(p, lam, N)
    if compose(f, s) != compose(s, nf.series):  # pragma: no cover
        raise AssertionError("normal-form conjugator failed verification")
    return NormalFormDescriptor(p, lam, nf.series, s)


def _conj(f: Fps, phi: Fps) -> Fps:
    return compose(revert(phi), compose(f, phi))


# ---------------------------------------------------------------------------
# Riordan level


@dataclass(frozen=True)
class ScreenReport:
    """Necessary conditions for reversibility of a Riordan array.

    Passing both is not a proof that the array is reversible.
    """

    pattern: DiagonalPattern
    diagonal_ok: bool
    series: ReversibilityReport

    @property
    def series_ok(self) -> bool:
        return self.series.reversible

    @property
    def passes(self) -> bool:
        return self.diagonal_ok and self.series_ok

    def to_json(self) -> dict:
        return {
            "diagonal_pattern": self.pattern.value,
            "diagonal_ok": self.diagonal_ok,
            "series": self.series.to_json(),
            "passes": self.passes,
            "note": "necessary conditions only; passing does not prove the array reversible",
        }


def riordan_reversibility_screen(P: RiordanPair) -> ScreenReport:
    pattern = diagonal_pattern(P)
    return ScreenReport(pattern, pattern is not DiagonalPattern.OTHER, is_series_reversible(P.f))


def strong_decompose(P: RiordanPair, U: RiordanPair | None = None) -> tuple[RiordanPair, RiordanPair]:
    """Split ``P = S T`` into two involutions, given ``U`` with ``U^{-1} P U`` a pseudo-involution.

    ``T = U M U^{-1}`` and ``S = P T``.
    """
    N = P.order
    if U is None:
        U = identity(N)
    if not is_pseudo_involution(conjugate(P, U)):
        raise WitnessError("conjugate(P, U) is not a pseudo-involution")
    T = conjugate(involution_m(1, N), inverse(U))
    S = multiply(P, T)
    if not (is_involution(S) and is_involution(T) and multiply(S, T) == P):  # pragma: no cover
        raise AssertionError("decomposition failed verification")
    return S, T


def strong_reversibility_from_involution_pair(P: RiordanPair, S: RiordanPair) -> RiordanPair:
    """Given an involution ``S`` with ``S P S = P^{-1}``, return ``U`` making ``U^{-1} P U`` a pseudo-involution.

    ``U`` conjugates ``S`` to ``+-M``.  When ``S`` is scalar, ``P`` is itself an
    involution and ``U`` is taken from ``P`` instead.
    """
    N = P.order
    if not is_involution(S):
        raise WitnessError("S is not an involution")
    if conjugate(P, S) != inverse(P):
        raise WitnessError("S does not conjugate P to its inverse")
    if not is_scalar(S):
        U = riordan_involution_conjugator(S).conjugator
    elif is_scalar(P):
        U = identity(N)
    else:
        U = riordan_involution_conjugator(P).conjugator
    if not is_pseudo_involution(conjugate(P, U)):  # pragma: no cover
        raise AssertionError("returned conjugator failed verification")
    return U


class TwoReversibleClass(Enum):
    CONSTANT_DIAGONAL = "constant-diagonal"
    ALTERNATING_DIAGONAL = "alternating-diagonal"
    OTHER = "other"

    @property
    def note(self) -> str:
        return _NOTES[self]


_NOTES = {
    TwoReversibleClass.CONSTANT_DIAGONAL: "constant diagonal: reversible by the known classification; no witness computed",
    TwoReversibleClass.ALTERNATING_DIAGONAL: "alternating diagonal, as for involutions: candidate for reversibility",
    TwoReversibleClass.OTHER: "a product of two reversible arrays by the known classification; no witness computed",
}


def two_reversible_classification(P: RiordanPair) -> TwoReversibleClass:
    pat = diagonal_pattern(P)
    if pat in (DiagonalPattern.ALL_ONES, DiagonalPattern.ALL_MINUS_ONES):
        return TwoReversibleClass.CONSTANT_DIAGONAL
    if pat in (DiagonalPattern.ALTERNATING_PLUS_FIRST, DiagonalPattern.ALTERNATING_MINUS_FIRST):
        return TwoReversibleClass.ALTERNATING_DIAGONAL
    return TwoReversibleClass.OTHER
