"""Truncated formal power series with exact rational coefficients.

Every series carries its truncation order ``N`` and stores the coefficients of
``t^0 .. t^N``.  Two series are equal when all of those coefficients agree.
Arithmetic between series of different orders is refused rather than silently
truncated.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from gmpy2 import mpq

DEFAULT_ORDER = 16

ZERO = mpq(0)
ONE = mpq(1)


class FpsError(ValueError):
    """Raised when a series operation's precondition does not hold."""


class OrderMismatch(FpsError):
    pass


def coeff(x) -> mpq:
    """Convert ``x`` (int, Fraction, mpq or a ``"p/q"``/decimal string) to an exact rational."""
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not accepted")
    if isinstance(x, (int, Rational)) or type(x).__name__ == "mpq":
        return mpq(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


def format_coeff(c) -> str:
    """Canonical string for a coefficient: ``"p"`` or ``"p/q"`` in lowest terms."""
    return str(mpq(c))


class Fps:
    """A power series ``c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})``.

    Instances are immutable.  Arithmetic operators are overloaded; calling a
    series on another series composes them, ``a(b) == compose(a, b)``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [coeff(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise FpsError("order must be non-negative")
            cs = (cs + [ZERO] * (order + 1))[: order + 1]
        if not cs:
            raise FpsError("a series needs at least one coefficient")
        self._c = tuple(cs)

    @classmethod
    def _raw(cls, cs: Sequence[mpq]) -> "Fps":
        obj = object.__new__(cls)
        obj._c = tuple(cs)
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER) -> "Fps":
        return cls([c], order)

    @classmethod
    def var(cls, order: int = DEFAULT_ORDER) -> "Fps":
        """The indeterminate ``t``."""
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, c, k: int, order: int = DEFAULT_ORDER) -> "Fps":
        cs = [ZERO] * (order + 1)
        if k <= order:
            cs[k] = coeff(c)
        return cls._raw(cs)

    # basic protocol -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, Fps):
            return self._c == other._c
        if isinstance(other, (int, Rational)) or type(other).__name__ == "mpq":
            return self._c[0] == other and not any(self._c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"Fps({self.to_string()})"

    def to_string(self, var: str = "t") -> str:
        terms = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        tail = f"O({var}^{self.order + 1})"
        if not terms:
            return tail
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return f"{out} + {tail}"

    def to_json(self) -> list[str]:
        return [format_coeff(c) for c in self._c]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Fps":
        return cls([coeff(s) for s in data])

    # structure ----------------------------------------------------------

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for k, c in enumerate(self._c):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return not any(self._c)

    def truncate(self, order: int) -> "Fps":
        """Re-express at a different order (padding with zeros when raising it)."""
        return Fps(self._c, order)

    def shift_down(self, k: int) -> "Fps":
        """Divide by ``t^k``; the top ``k`` coefficients become unknown and are set to zero."""
        if any(self._c[:k]):
            raise FpsError(f"series is not divisible by t^{k}")
        return Fps._raw(self._c[k:] + (ZERO,) * k)

    def shift_up(self, k: int) -> "Fps":
        """Multiply by ``t^k``."""
        return Fps._raw(((ZERO,) * k + self._c)[: len(self._c)])

    def scale(self, c) -> "Fps":
        c = coeff(c)
        return Fps._raw([c * x for x in self._c])

    # operators ----------------------------------------------------------

    def _check(self, other) -> "Fps":
        if not isinstance(other, Fps):
            other = Fps.const(other, self.order)
        elif other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Fps._raw([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Fps._raw([a - b for a, b in zip(self._c, other._c)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Fps._raw([-a for a in self._c])

    def __mul__(self, other):
        if not isinstance(other, Fps):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if not isinstance(other, Fps):
            c = coeff(other)
            if not c:
                raise FpsError("division by zero")
            return self.scale(1 / c)
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(self._check(other), self)

    def __pow__(self, n: int):
        return power_int(self, n)

    def __call__(self, inner: "Fps") -> "Fps":
        return compose(self, inner)


# ---------------------------------------------------------------------------
# module-level operations


def _same_order(a: Fps, b: Fps) -> int:
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    return a.order


def add(a: Fps, b: Fps) -> Fps:
    _same_order(a, b)
    return a + b


def _mul_lists(a: Sequence[mpq], b: Sequence[mpq], n: int) -> list:
    out = [ZERO] * (n + 1)
    for i in range(n + 1):
        ai = a[i]
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def mul(a: Fps, b: Fps) -> Fps:
    n = _same_order(a, b)
    return Fps._raw(_mul_lists(a._c, b._c, n))


def recip(a: Fps) -> Fps:
    a0 = a[0]
    if not a0:
        raise FpsError("reciprocal needs a nonzero constant term")
    n = a.order
    inv0 = 1 / a0
    out = [ZERO] * (n + 1)
    out[0] = inv0
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            if a[j]:
                s += a[j] * out[k - j]
        out[k] = -s * inv0
    return Fps._raw(out)


def divide(a: Fps, b: Fps) -> Fps:
    """Quotient ``a / b`` after cancelling the common power of ``t``.

    When ``b`` has valuation ``v > 0`` only the coefficients up to ``N - v`` of the
    result are determined by the inputs; the rest are computed from the zero
    padding and must not be relied on.
    """
    _same_order(a, b)
    vb = b.valuation()
    if vb is None:
        raise FpsError("division by the zero series")
    va = a.valuation()
    if va is not None and va < vb:
        raise FpsError(f"valuation of divisor ({vb}) exceeds that of dividend ({va})")
    if vb:
        a = a.shift_down(vb)
        b = b.shift_down(vb)
    return mul(a, recip(b))


def compose(a: Fps, b: Fps) -> Fps:
    """``a(b(t))``; ``b`` must have zero constant term."""
    n = _same_order(a, b)
    if b[0]:
        raise FpsError("inner series of a composition must have zero constant term")
    nz = [k for k, c in enumerate(b._c) if c]
    if not nz:
        return Fps.const(a[0], n)
    if nz == [1]:
        # monomial inner series c*t
        c = b[1]
        out = []
        p = ONE
        for k in range(n + 1):
            out.append(a[k] * p)
            p *= c
        return Fps._raw(out)
    # Horner
    acc = [ZERO] * (n + 1)
    bc = b._c
    for k in range(n, -1, -1):
        acc = _mul_lists(acc, bc, n)
        acc[0] += a[k]
    return Fps._raw(acc)


def revert(f: Fps) -> Fps:
    """Compositional inverse via Lagrange inversion.

    ``[t^n] revert(f) = (1/n) [t^{n-1}] (t/f)^n``.
    """
    if f[0]:
        raise FpsError("reversion needs f(0) = 0")
    if not f[1]:
        raise FpsError("reversion needs f'(0) != 0")
    n = f.order
    if n < 1:
        return f
    # t/f, known through degree n-1
    phi = recip(Fps._raw(f._c[1:])).coeffs
    out = [ZERO] * (n + 1)
    pw = [ONE] + [ZERO] * (n - 1)
    for k in range(1, n + 1):
        pw = _mul_lists(pw, phi, n - 1)
        out[k] = pw[k - 1] / k
    return Fps._raw(out)


def derivative(a: Fps) -> Fps:
    """Formal derivative; the top coefficient is unknown and set to zero."""
    n = a.order
    out = [(k + 1) * a[k + 1] for k in range(n)] + [ZERO]
    return Fps._raw(out)


def power(a: Fps, alpha) -> Fps:
    """``a^alpha`` for a unit series with ``a(0) = 1`` and rational ``alpha``.

    Uses the recurrence obtained from ``a * r' = alpha * a' * r``.
    """
    if a[0] != 1:
        raise FpsError("rational powers need constant term 1")
    alpha = coeff(alpha)
    n = a.order
    out = [ZERO] * (n + 1)
    out[0] = ONE
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            aj = a[j]
            if aj:
                s += (alpha * j - (k - j)) * aj * out[k - j]
        out[k] = s / k
    return Fps._raw(out)


def nth_root(a: Fps, n: int) -> Fps:
    """The unique ``r`` with ``r(0) = 1`` and ``r^n = a``."""
    if n < 1:
        raise FpsError("root index must be a positive integer")
    if a[0] != 1:
        raise FpsError("nth_root needs constant term 1")
    return power(a, mpq(1, n))


def power_int(a: Fps, k: int) -> Fps:
    if k < 0:
        return power_int(recip(a), -k)
    result = Fps.const(1, a.order)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def var(order: int = DEFAULT_ORDER) -> Fps:
    return Fps.var(order)


def const(c, order: int = DEFAULT_ORDER) -> Fps:
    return Fps.const(c, order)
