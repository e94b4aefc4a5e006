"""Classical subgroups of the Riordan group.

Each subgroup is a small frozen dataclass (its tag) that knows how to build
members from a seed series, test membership, and read off involutivity from
the seed.  :func:`subgroup_conjugator` looks for an element of the subgroup
conjugating a nonscalar involution to ``(eps, -t)``.

Members whose ``g`` involves a derivative or a division by ``f`` lose one
reliable degree: seeds for ``Derivative``, ``HittingTime`` and ``Reciprocal``
must be given at order ``N + 1`` to produce a pair at order ``N``, and their
membership tests only constrain ``g`` through degree ``N - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar

from gmpy2 import mpq

from ._solve import solve_greedy
from .fps import Fps, FpsError, coeff, compose, derivative, divide, format_coeff, power, recip
from .group import RiordanPair, identity, involution_m, is_scalar, multiply
from .involutions import ConjugacyWitness, is_involution, is_series_involution, riordan_involution_conjugator


class NotAMember(ValueError):
    pass


def _agree(a: Fps, b: Fps, upto: int) -> bool:
    return a.coeffs[: upto + 1] == b.coeffs[: upto + 1]


def _t(order: int) -> Fps:
    return Fps.var(order)


@dataclass(frozen=True)
class Subgroup:
    name: ClassVar[str] = ""
    # one reliable degree is lost when building g from the seed
    needs_extra_degree: ClassVar[bool] = False
    # g-part degree d of a member built from x depends on x up to degree d + lag
    lag: ClassVar[int] = 0

    def construct(self, h: Fps | None = None, order: int | None = None) -> RiordanPair:
        raise NotImplementedError

    def is_member(self, P: RiordanPair) -> bool:
        raise NotImplementedError

    def involution_rule(self, P: RiordanPair) -> bool:
        """The involution test as read off the seed series (no squaring)."""
        return is_series_involution(P.f)

    def from_conjugator_series(self, x: Fps, order: int) -> RiordanPair | None:
        """Member built from the conjugating series ``x`` (given at ``order + 1``)."""
        return None

    def tag(self) -> str:
        return self.name

    def _check_seed(self, h: Fps):
        if h[0] or h.order < 1 or not h[1]:
            raise FpsError(f"{self.name} seed needs h(0) = 0 and h'(0) != 0")


@dataclass(frozen=True)
class Derivative(Subgroup):
    """``(h', h)``."""

    name: ClassVar[str] = "derivative"
    needs_extra_degree: ClassVar[bool] = True
    lag: ClassVar[int] = 1

    def construct(self, h=None, order=None):
        self._check_seed(h)
        n = h.order - 1
        return RiordanPair(derivative(h).truncate(n), h.truncate(n))

    def is_member(self, P):
        return _agree(P.g, derivative(P.f), P.order - 1)

    def from_conjugator_series(self, x, order):
        return self.construct(x)


@dataclass(frozen=True)
class HittingTime(Subgroup):
    """``(t h'/h, h)``."""

    name: ClassVar[str] = "hitting-time"
    needs_extra_degree: ClassVar[bool] = True
    lag: ClassVar[int] = 1

    def construct(self, h=None, order=None):
        self._check_seed(h)
        n = h.order - 1
        th = Fps([k * c for k, c in enumerate(h)])
        return RiordanPair(divide(th, h).truncate(n), h.truncate(n))

    def is_member(self, P):
        # g f = t f' holds exactly through degree N and pins g through N - 1
        tf = Fps([k * c for k, c in enumerate(P.f)])
        return P.g * P.f == tf

    def from_conjugator_series(self, x, order):
        return self.construct(x)


@dataclass(frozen=True)
class Lagrange(Subgroup):
    """``(1, h)``."""

    name: ClassVar[str] = "lagrange"

    def construct(self, h=None, order=None):
        self._check_seed(h)
        return RiordanPair(Fps.const(1, h.order), h)

    def is_member(self, P):
        return P.g == 1

    def from_conjugator_series(self, x, order):
        return self.construct(x.truncate(order))


@dataclass(frozen=True)
class Bell(Subgroup):
    """``(h, t h)`` with ``h(0) != 0``.

    ``t h`` at order N does not see ``h_N``, so the involution rule fixes ``g``
    only through degree N - 1; involutive seeds should come from ``t h`` known
    at order N + 1.
    """

    name: ClassVar[str] = "bell"
    lag: ClassVar[int] = 1

    def construct(self, h=None, order=None):
        if not h[0]:
            raise FpsError("Bell seed needs h(0) != 0")
        return RiordanPair(h, h.shift_up(1))

    def is_member(self, P):
        return P.f == P.g.shift_up(1)

    def from_conjugator_series(self, x, order):
        return self.construct(x.shift_down(1).truncate(order))


@dataclass(frozen=True)
class Reciprocal(Subgroup):
    """``((t/h)^r, h)``."""

    r: int = 1
    name: ClassVar[str] = "reciprocal"
    needs_extra_degree: ClassVar[bool] = True
    lag: ClassVar[int] = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("reciprocal exponent r must be a positive integer")

    def construct(self, h=None, order=None):
        self._check_seed(h)
        n = h.order - 1
        t_over_h = recip(h.shift_down(1))
        return RiordanPair((t_over_h ** self.r).truncate(n), h.truncate(n))

    def is_member(self, P):
        # g * (f/t)^r = 1, with f/t known through degree N - 1
        prod = P.g * P.f.shift_down(1) ** self.r
        return _agree(prod, Fps.const(1, P.order), P.order - 1)

    def from_conjugator_series(self, x, order):
        return self.construct(x)

    def tag(self):
        return f"reciprocal:r={self.r}"


@dataclass(frozen=True)
class Stabilizer(Subgroup):
    """``(phi / phi(h), h)`` for a fixed series ``phi`` with ``phi(0) != 0``."""

    phi: Fps = None
    expr: str | None = None
    name: ClassVar[str] = "stabilizer"

    def __post_init__(self):
        if self.phi is None or not self.phi[0]:
            raise ValueError("stabilizer series needs a nonzero constant term")

    def _phi(self, order: int) -> Fps:
        if self.phi.order < order:
            raise FpsError(f"stabilizer series known only to order {self.phi.order}")
        return self.phi.truncate(order)

    def construct(self, h=None, order=None):
        self._check_seed(h)
        phi = self._phi(h.order)
        return RiordanPair(phi / compose(phi, h), h)

    def is_member(self, P):
        phi = self._phi(P.order)
        return P.g * compose(phi, P.f) == phi

    def from_conjugator_series(self, x, order):
        return self.construct(x.truncate(order))

    def tag(self):
        body = self.expr if self.expr is not None else "[" + ",".join(self.phi.to_json()) + "]"
        return f"stabilizer:f={body}"


@dataclass(frozen=True)
class Appell(Subgroup):
    """``(h, t)`` with ``h(0) != 0``."""

    name: ClassVar[str] = "appell"

    def construct(self, h=None, order=None):
        if not h[0]:
            raise FpsError("Appell seed needs h(0) != 0")
        return RiordanPair(h, _t(h.order))

    def is_member(self, P):
        return P.f == _t(P.order)

    def involution_rule(self, P):
        return P.g == 1 or P.g == -1


@dataclass(frozen=True)
class Bcn(Subgroup):
    """The one-parameter family ``(1/(1 - c t^n), t/(1 - c t^n)^{1/n})`` for fixed ``n``.

    ``c`` selects the element built by :meth:`construct`; membership accepts
    any ``c``, since these elements form a group isomorphic to ``(Q, +)``.
    """

    c: object = 0
    n: int = 1
    name: ClassVar[str] = "bcn"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("B_{c,n} needs n >= 1")
        object.__setattr__(self, "c", coeff(self.c))

    def element(self, c, order: int) -> RiordanPair:
        base = 1 - Fps.monomial(c, self.n, order)
        return RiordanPair(recip(base), _t(order) * power(base, mpq(-1, self.n)))

    def construct(self, h=None, order=None):
        if order is None:
            if h is None:
                raise ValueError("B_{c,n} construction needs an order")
            order = h.order
        return self.element(self.c, order)

    def is_member(self, P):
        N, n = P.order, self.n
        c = n * P.f[n + 1] if n + 1 <= N else 0
        return P == self.element(c, N)

    def involution_rule(self, P):
        return P == identity(P.order)

    def tag(self):
        return f"bcn:c={format_coeff(self.c)},n={self.n}"


# ---------------------------------------------------------------------------
# module-level surface


def construct(tag: Subgroup, h: Fps | None = None, order: int | None = None) -> RiordanPair:
    return tag.construct(h, order)


def is_member(tag: Subgroup, P: RiordanPair) -> bool:
    return tag.is_member(P)


def is_subgroup_involution(tag: Subgroup, P: RiordanPair) -> bool:
    if not tag.is_member(P):
        raise NotAMember(f"pair is not a member of {tag.tag()}")
    return tag.involution_rule(P)


class ConjugatorStatus(Enum):
    FOUND = "found"
    INFEASIBLE_IN_SUBGROUP = "infeasible-in-subgroup"


@dataclass(frozen=True)
class ConjugatorResult:
    """Outcome of :func:`subgroup_conjugator`.

    On ``INFEASIBLE_IN_SUBGROUP``, ``degree``/``component`` locate the first
    inconsistent coefficient and ``outside_witness`` is an unrestricted
    conjugator to ``(g(0), -t)`` from the whole group.
    """

    status: ConjugatorStatus
    tag: Subgroup
    target_sign: int
    witness: ConjugacyWitness | None = None
    certificate: str | None = None
    degree: int | None = None
    component: str | None = None
    outside_witness: ConjugacyWitness | None = None

    @property
    def found(self) -> bool:
        return self.status is ConjugatorStatus.FOUND


def _initial_series(tag: Subgroup, P: RiordanPair) -> list:
    N = P.order
    vals = [mpq(0)] * (N + 2)
    vals[1] = mpq(1)
    if isinstance(tag, (HittingTime, Lagrange)):
        x = (_t(N) - P.f) / 2
        vals[: N + 1] = list(x.coeffs)
    return vals


def subgroup_conjugator(tag: Subgroup, P: RiordanPair, target_sign: int | None = None) -> ConjugatorResult:
    """Find ``U`` in the subgroup with ``U^{-1} P U = (eps, -t)``.

    ``eps`` defaults to ``g(0)``, the only sign reachable by any conjugation.
    The conjugating series ``x`` (the ``f`` of ``U``) is solved degree by degree
    with ``x'(0) = 1``; hitting-time and Lagrange start from ``x = (t - h)/2``.
    """
    if not tag.is_member(P):
        raise NotAMember(f"pair is not a member of {tag.tag()}")
    if is_scalar(P) or not is_involution(P):
        raise ValueError("subgroup_conjugator needs a nonscalar involution")
    N = P.order
    eps = int(P.g[0]) if target_sign is None else target_sign
    if eps not in (1, -1):
        raise ValueError("target sign must be +1 or -1")
    E = involution_m(eps, N)

    def build(vals):
        return tag.from_conjugator_series(Fps(vals), N)

    def residual(vals):
        U = build(vals)
        L, R = multiply(P, U), multiply(U, E)
        return list((L.g - R.g).coeffs) + list((L.f - R.f).coeffs)

    lag = tag.lag
    g_pos = lambda d: d  # noqa: E731
    f_pos = lambda d: N + 1 + d  # noqa: E731
    steps = [([], [g_pos(d) for d in range(0, 2 - lag)] + [f_pos(0), f_pos(1)])]
    for k in range(2, N + 2):
        pos = []
        if k <= N:
            pos.append(f_pos(k))
        if 0 <= k - lag <= N:
            pos.append(g_pos(k - lag))
        steps.append(([k], pos))

    vals, bad = solve_greedy(residual, _initial_series(tag, P), steps)
    if bad is None:
        U = build(vals)
        w = ConjugacyWitness(source=P, conjugator=U, target=E, sign=eps)
        if w.verify() and tag.is_member(U):
            return ConjugatorResult(ConjugatorStatus.FOUND, tag, eps, witness=w)
        raise AssertionError("solver returned an unverified conjugator")  # pragma: no cover

    component, degree = ("g", bad) if bad <= N else ("f", bad - N - 1)
    text = (
        f"no {tag.tag()} element U with x'(0) = 1 satisfies P U = U ({eps}, -t): "
        f"the {component}-part equation fails at degree {degree}"
    )
    if degree == 0 and component == "g" and eps != P.g[0]:
        text += (
            f"; at degree 0 it reads {P.g[0]} * G(0) = {eps} * G(0), forcing G(0) = 0 "
            "(for the derivative subgroup G(0) = x'(0), so x'(t) would vanish)"
        )
    return ConjugatorResult(
        ConjugatorStatus.INFEASIBLE_IN_SUBGROUP, tag, eps,
        certificate=text, degree=degree, component=component,
        outside_witness=riordan_involution_conjugator(P),
    )


@dataclass(frozen=True)
class ParityReport:
    m_in_stabilizer: bool
    minus_m_in_stabilizer: bool
    ratio: Fps


def stabilizer_parity_involutions(f: Fps) -> ParityReport:
    """Which of ``M``, ``-M`` lie in ``Stab(f)``: test ``f(t)/f(-t) = +-1``."""
    if not f[0]:
        raise FpsError("stabilizer series needs f(0) != 0")
    ratio = f / compose(f, -_t(f.order))
    return ParityReport(ratio == 1, ratio == -1, ratio)


# ---------------------------------------------------------------------------
# tag strings


class TagError(ValueError):
    pass


def _kv(body: str) -> dict:
    out = {}
    for part in body.split(","):
        k, sep, v = part.partition("=")
        if not sep:
            raise TagError(f"expected key=value, got {part!r}")
        out[k.strip()] = v.strip()
    return out


def parse_tag(text: str, order: int = 16) -> Subgroup:
    """Parse ``derivative``, ``reciprocal:r=2``, ``stabilizer:f=<expr>``, ``bcn:c=1/2,n=3`` ..."""
    name, _, body = text.strip().partition(":")
    name = name.strip().lower()
    simple = {"derivative": Derivative, "hitting-time": HittingTime, "lagrange": Lagrange,
              "bell": Bell, "appell": Appell}
    if name in simple:
        if body:
            raise TagError(f"{name} takes no parameters")
        return simple[name]()
    if name == "reciprocal":
        try:
            return Reciprocal(int(_kv(body)["r"]))
        except (KeyError, ValueError) as exc:
            raise TagError(f"bad reciprocal tag {text!r}: {exc}") from None
    if name == "stabilizer":
        key, sep, expr = body.partition("=")
        if key.strip() != "f" or not sep:
            raise TagError("stabilizer tag must look like stabilizer:f=<expr>")
        from .exprparse import parse_series

        return Stabilizer(parse_series(expr, order), expr.strip())
    if name == "bcn":
        try:
            kv = _kv(body)
            return Bcn(coeff(kv["c"]), int(kv["n"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise TagError(f"bad bcn tag {text!r}: {exc}") from None
    raise TagError(f"unknown subgroup {name!r}")


ALL_TAGS = (Derivative, HittingTime, Lagrange, Bell, Reciprocal, Stabilizer, Appell, Bcn)
