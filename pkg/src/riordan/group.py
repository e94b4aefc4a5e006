"""Riordan pairs, the group law on them, and their lower-triangular matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fps import DEFAULT_ORDER, Fps, OrderMismatch, compose, format_coeff, mul, recip, revert


class PairError(ValueError):
    """A pair (g, f) violating the Riordan constraints."""


class G0Zero(PairError):
    pass


class F0Nonzero(PairError):
    pass


class F1Zero(PairError):
    pass


@dataclass(frozen=True)
class RiordanPair:
    """A Riordan array ``(g, f)`` with ``g(0) != 0``, ``f(0) = 0`` and ``f'(0) != 0``.

    ``P * Q`` is the group product ``(g * u(f), v(f))``.
    """

    g: Fps
    f: Fps

    def __post_init__(self):
        if self.g.order != self.f.order:
            raise OrderMismatch(f"g has order {self.g.order}, f has order {self.f.order}")
        if not self.g[0]:
            raise G0Zero("g(0) must be nonzero")
        if self.f[0]:
            raise F0Nonzero("f(0) must be zero")
        if self.f.order < 1 or not self.f[1]:
            raise F1Zero("f'(0) must be nonzero")

    @property
    def order(self) -> int:
        return self.g.order

    def __mul__(self, other: "RiordanPair") -> "RiordanPair":
        return multiply(self, other)

    def inverse(self) -> "RiordanPair":
        return inverse(self)

    def truncate(self, order: int) -> "RiordanPair":
        return RiordanPair(self.g.truncate(order), self.f.truncate(order))

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "f": self.f.to_json()}

    def __repr__(self):
        return f"RiordanPair(g={self.g.to_string()}, f={self.f.to_string()})"


def make_pair(g: Fps, f: Fps) -> RiordanPair:
    return RiordanPair(g, f)


def identity(order: int = DEFAULT_ORDER) -> RiordanPair:
    return RiordanPair(Fps.const(1, order), Fps.var(order))


def scalar(c, order: int = DEFAULT_ORDER) -> RiordanPair:
    """``c * I``, represented as ``(c, t)``."""
    return RiordanPair(Fps.const(c, order), Fps.var(order))


def involution_m(sign: int = 1, order: int = DEFAULT_ORDER) -> RiordanPair:
    """``M = (1, -t)``, or ``-M = (-1, -t)`` for ``sign = -1``."""
    return RiordanPair(Fps.const(sign, order), -Fps.var(order))


def signed(P: RiordanPair, sign) -> RiordanPair:
    """``sign * P``; scalar arrays are central, so this is ``(sign * g, f)``."""
    return RiordanPair(P.g.scale(sign), P.f)


def multiply(P: RiordanPair, Q: RiordanPair) -> RiordanPair:
    if P.order != Q.order:
        raise OrderMismatch(f"pairs have orders {P.order} and {Q.order}")
    return RiordanPair(mul(P.g, compose(Q.g, P.f)), compose(Q.f, P.f))


def inverse(P: RiordanPair) -> RiordanPair:
    fbar = revert(P.f)
    return RiordanPair(recip(compose(P.g, fbar)), fbar)


def conjugate(P: RiordanPair, X: RiordanPair) -> RiordanPair:
    """``P^X = X^{-1} P X``."""
    return multiply(multiply(inverse(X), P), X)


def commutator(P: RiordanPair, Q: RiordanPair) -> RiordanPair:
    """``[P, Q] = P^{-1} Q^{-1} P Q``."""
    return multiply(multiply(inverse(P), inverse(Q)), multiply(P, Q))


def is_scalar(P: RiordanPair) -> bool:
    return P.f == Fps.var(P.order) and (P.g == 1 or P.g == -1)


# ---------------------------------------------------------------------------
# diagonal


class DiagonalPattern(Enum):
    ALL_ONES = "all-ones"
    ALL_MINUS_ONES = "all-minus-ones"
    ALTERNATING_PLUS_FIRST = "alternating-plus-first"
    ALTERNATING_MINUS_FIRST = "alternating-minus-first"
    OTHER = "other"


_PATTERNS = {
    (1, 1): DiagonalPattern.ALL_ONES,
    (-1, 1): DiagonalPattern.ALL_MINUS_ONES,
    (1, -1): DiagonalPattern.ALTERNATING_PLUS_FIRST,
    (-1, -1): DiagonalPattern.ALTERNATING_MINUS_FIRST,
}


def diagonal_entry(P: RiordanPair, n: int):
    """The n-th main-diagonal entry ``g(0) * f'(0)^n``."""
    return P.g[0] * P.f[1] ** n


def diagonal_pattern(P: RiordanPair) -> DiagonalPattern:
    g0, f1 = P.g[0], P.f[1]
    for (a, b), pat in _PATTERNS.items():
        if g0 == a and f1 == b:
            return pat
    return DiagonalPattern.OTHER


def in_commutator_subgroup(P: RiordanPair) -> bool:
    """Membership in the commutator subgroup: all ones on the main diagonal."""
    return P.g[0] == 1 and P.f[1] == 1


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class RiordanMatrix:
    """The leading ``K x K`` block of a Riordan array as an exact object array."""

    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        if not isinstance(other, RiordanMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.all(self.entries == other.entries)
        )

    def __matmul__(self, other: "RiordanMatrix") -> "RiordanMatrix":
        return RiordanMatrix(self.entries @ other.entries)

    def rows(self) -> list[list[str]]:
        return [[format_coeff(x) for x in row] for row in self.entries]

    def to_text(self) -> str:
        """Right-aligned table; entries above the diagonal are left blank."""
        rows = self.rows()
        k = self.size
        widths = [max(len(rows[n][j]) for n in range(j, k)) for j in range(k)]
        lines = []
        for n, row in enumerate(rows):
            cells = [row[j].rjust(widths[j]) for j in range(n + 1)]
            lines.append("  ".join(cells))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.rows()) + "\n"


def to_matrix(P: RiordanPair, size: int) -> RiordanMatrix:
    """Column ``k`` holds the coefficients of ``g f^k``."""
    if size > P.order + 1:
        raise ValueError(f"size {size} exceeds truncation order {P.order} + 1")
    out = np.zeros((size, size), dtype=object)
    out[:, :] = 0
    col = P.g
    for k in range(size):
        for n in range(k, size):
            out[n, k] = col[n]
        col = mul(col, P.f)
    return RiordanMatrix(out)
