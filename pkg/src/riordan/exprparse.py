"""Series expressions such as ``-t/root(2, 1+t^2)`` parsed into exact power series.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' '-'? INT)?
    atom  := NUMBER | 't' | '(' expr ')' | 'sqrt' '(' expr ')' | 'root' '(' INT ',' expr ')'

Numbers are integers or decimals (``0.25`` is exactly 1/4); a fraction such as
``3/4`` is an ordinary division.  Unary minus binds looser than ``^``, so
``-t^2`` is ``-(t^2)``.  Division cancels the common power of ``t`` first, so
``(1 - sqrt(1 - 4*t))/(2*t)`` is a series.  Evaluation raises its internal order
whenever such cancellations would otherwise eat into the requested precision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .fps import Fps, mul, nth_root, power_int, recip

MAX_INPUT = 4096
MAX_EXPONENT = 10_000
_MAX_SLACK = 64


class ExprError(ValueError):
    """Base class for expression errors; ``start``/``end`` delimit the offending source span."""

    def __init__(self, message: str, start: int, end: int | None = None):
        super().__init__(f"{message} (at offset {start})")
        self.message = message
        self.start = start
        self.end = start + 1 if end is None else end

    @property
    def offset(self) -> int:
        return self.start

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": self.message,
                "offset": self.start, "end": self.end}


class IllegalCharacter(ExprError):
    pass


class UnexpectedToken(ExprError):
    def __init__(self, found: "Token", expected):
        self.found = found
        self.expected = frozenset(expected)
        what = "end of input" if found.kind == "End" else repr(found.text)
        super().__init__(f"unexpected {what}; expected {' or '.join(sorted(self.expected))}",
                         found.start, found.end)


class DivisionValuation(ExprError):
    pass


class RootConstantTerm(ExprError):
    pass


class NegativePowerOfNonunit(ExprError):
    pass


class ExpressionTooLarge(ExprError):
    """Input too long, nested too deeply, or an exponent beyond ``MAX_EXPONENT``."""


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    value: mpq | None = None


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>[0-9]+(?:\.[0-9]+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),])"
)
_OPS = {"+": "Plus", "-": "Minus", "*": "Star", "/": "Slash", "^": "Caret",
        "(": "LParen", ")": "RParen", ",": "Comma"}
_IDENTS = {"t", "sqrt", "root"}


def tokenize(text: str) -> list[Token]:
    """Longest-match tokens ending with an ``End`` token; whitespace is skipped."""
    if len(text) > MAX_INPUT:
        raise ExpressionTooLarge(f"input longer than {MAX_INPUT} characters", MAX_INPUT, len(text))
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise IllegalCharacter(f"illegal character {text[pos]!r}", pos)
        s, kind = m.group(), m.lastgroup
        if kind == "num":
            out.append(Token("Rational", s, pos, m.end(), mpq(Fraction(s))))
        elif kind == "ident":
            if s not in _IDENTS:
                raise IllegalCharacter(f"unknown name {s!r}", pos, m.end())
            out.append(Token(s, s, pos, m.end()))
        elif kind == "op":
            out.append(Token(_OPS[s], s, pos, m.end()))
        pos = m.end()
    out.append(Token("End", "", len(text), len(text)))
    return out


# ---------------------------------------------------------------------------
# syntax tree; spans do not take part in equality


def _span():
    return field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Rational:
    value: mpq
    start: int = _span()
    end: int = _span()


@dataclass(frozen=True)
class Var:
    start: int = _span()
    end: int = _span()


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    start: int = _span()
    end: int = _span()


@dataclass(frozen=True)
class _Binary:
    left: "Node"
    right: "Node"
    start: int = _span()
    end: int = _span()


class Add(_Binary):
    pass


class Sub(_Binary):
    pass


class Mul(_Binary):
    pass


class Div(_Binary):
    pass


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    start: int = _span()
    end: int = _span()


@dataclass(frozen=True)
class Sqrt:
    arg: "Node"
    start: int = _span()
    end: int = _span()


@dataclass(frozen=True)
class Root:
    n: int
    arg: "Node"
    start: int = _span()
    end: int = _span()


Node = Rational | Var | Neg | Add | Sub | Mul | Div | Pow | Sqrt | Root
_BINARY = {"Plus": Add, "Minus": Sub, "Star": Mul, "Slash": Div}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str, label: str) -> Token:
        tok = self.cur
        if tok.kind != kind:
            raise UnexpectedToken(tok, {label})
        self.i += 1
        return tok

    def integer(self, label: str) -> tuple[int, Token]:
        tok = self.cur
        if tok.kind != "Rational" or not tok.text.isdigit():
            raise UnexpectedToken(tok, {label})
        self.i += 1
        return int(tok.text), tok

    def parse(self):
        node = self.expr()
        if self.cur.kind != "End":
            raise UnexpectedToken(self.cur, {"operator", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.cur.kind in ("Plus", "Minus"):
            cls = _BINARY[self.cur.kind]
            self.i += 1
            right = self.term()
            node = cls(node, right, node.start, right.end)
        return node

    def term(self):
        node = self.unary()
        while self.cur.kind in ("Star", "Slash"):
            cls = _BINARY[self.cur.kind]
            self.i += 1
            right = self.unary()
            node = cls(node, right, node.start, right.end)
        return node

    def unary(self):
        if self.cur.kind == "Minus":
            start = self.cur.start
            self.i += 1
            arg = self.unary()
            return Neg(arg, start, arg.end)
        return self.power()

    def power(self):
        base = self.atom()
        if self.cur.kind != "Caret":
            return base
        self.i += 1
        sign = 1
        if self.cur.kind == "Minus":
            self.i += 1
            sign = -1
        k, tok = self.integer("integer exponent")
        if k > MAX_EXPONENT:
            raise ExpressionTooLarge(f"exponent exceeds {MAX_EXPONENT}", tok.start, tok.end)
        return Pow(base, sign * k, base.start, tok.end)

    def atom(self):
        tok = self.cur
        kind = tok.kind
        if kind == "Rational":
            self.i += 1
            return Rational(tok.value, tok.start, tok.end)
        if kind == "t":
            self.i += 1
            return Var(tok.start, tok.end)
        if kind == "LParen":
            self.i += 1
            node = self.expr()
            self.take("RParen", "')'")
            return node
        if kind == "sqrt":
            self.i += 1
            self.take("LParen", "'('")
            arg = self.expr()
            close = self.take("RParen", "')'")
            return Sqrt(arg, tok.start, close.end)
        if kind == "root":
            self.i += 1
            self.take("LParen", "'('")
            n, ntok = self.integer("root index")
            if not 1 <= n <= MAX_EXPONENT:
                raise ExpressionTooLarge(f"root index must lie in 1..{MAX_EXPONENT}", ntok.start, ntok.end)
            self.take("Comma", "','")
            arg = self.expr()
            close = self.take("RParen", "')'")
            return Root(n, arg, tok.start, close.end)
        raise UnexpectedToken(tok, {"number", "'t'", "'('", "'-'", "sqrt", "root"})


def parse(tokens: list[Token] | str):
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    try:
        return _Parser(tokens).parse()
    except RecursionError:
        raise ExpressionTooLarge("expression nested too deeply", 0, tokens[-1].end) from None


# ---------------------------------------------------------------------------
# pretty printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2}
_SYM = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def pretty(node) -> str:
    """Source text with minimal parentheses; ``parse(pretty(e)) == e`` for parsed trees."""
    return _pp(node, 0)


def _decimal(q: mpq) -> str:
    num, den = int(q.numerator), int(q.denominator)
    if den == 1:
        return str(num)
    twos, fives = 0, 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{q} has no finite decimal expansion")
    digits = max(twos, fives)
    whole, frac = divmod(num * 10 ** digits // int(q.denominator), 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


def _pp(node, ctx: int) -> str:
    if isinstance(node, Rational):
        if node.value < 0:
            raise ValueError("negative literals do not occur in parsed trees; use Neg")
        return _decimal(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Neg):
        s = "-" + _pp(node.arg, 3)
        return f"({s})" if ctx >= 2 else s
    if isinstance(node, _Binary):
        p = _PREC[type(node)]
        s = f"{_pp(node.left, p)}{_SYM[type(node)]}{_pp(node.right, p + 1)}"
        return f"({s})" if p < ctx else s
    if isinstance(node, Pow):
        return f"{_pp(node.base, 4)}^{node.exponent}"
    if isinstance(node, Sqrt):
        return f"sqrt({_pp(node.arg, 0)})"
    if isinstance(node, Root):
        return f"root({node.n},{_pp(node.arg, 0)})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


class _NeedMore(Exception):
    def __init__(self, node):
        self.node = node


def evaluate(node, order: int) -> Fps:
    """Evaluate to a series at ``order``; every returned coefficient is exact.

    Each subresult carries the highest degree it is known exactly through.
    When cancellations leave fewer than ``order`` exact degrees, the whole
    expression is re-evaluated at a higher internal order.
    """
    slack = 0
    culprit = node
    while True:
        try:
            val, exact = _ev(node, order + slack)
            if exact >= order:
                return val.truncate(order)
            slack += order - exact
        except _NeedMore as exc:
            culprit = exc.node
            slack = 2 * slack + 1
        except RecursionError:
            raise ExpressionTooLarge("expression nested too deeply", node.start, node.end) from None
        if slack > _MAX_SLACK:
            raise DivisionValuation(
                f"cancellation exceeds the working precision (order + {_MAX_SLACK})",
                culprit.start, culprit.end,
            )


def _ev(node, n: int) -> tuple[Fps, int]:
    # long left-leaning chains such as 1+t+t^2+... are walked without recursion
    spine = []
    while isinstance(node, _Binary):
        spine.append(node)
        node = node.left
    val, exact = _leaf(node, n)
    for op in reversed(spine):
        rv, rexact = _ev(op.right, n)
        val, exact = _binary(op, val, exact, rv, rexact, n)
    return val, exact


def _val(v: Fps, exact: int) -> int:
    """Valuation, or ``exact + 1`` when no nonzero coefficient is known yet."""
    val = v.valuation()
    return exact + 1 if val is None or val > exact else val


def _binary(op, a: Fps, ra: int, b: Fps, rb: int, n: int):
    if isinstance(op, Add):
        return a + b, min(ra, rb)
    if isinstance(op, Sub):
        return a - b, min(ra, rb)
    if isinstance(op, Mul):
        return mul(a, b), min(n, ra + _val(b, rb), rb + _val(a, ra))
    vb = _val(b, rb)
    if vb > rb:
        raise _NeedMore(op.right)
    bad = next((i for i, c in enumerate(a.coeffs[:vb]) if c and i <= ra), None)
    if bad is not None:
        raise DivisionValuation(
            f"dividend has valuation {bad} but divisor has valuation {vb}", op.start, op.end
        )
    if ra < vb - 1:
        raise _NeedMore(op.left)
    # coefficients below vb past the exact range are noise from truncation
    top = Fps(list(a.coeffs[vb:]) + [0] * vb)
    return mul(top, recip(b.shift_down(vb))), min(ra, rb) - vb


def _leaf(node, n: int) -> tuple[Fps, int]:
    if isinstance(node, Rational):
        return Fps.const(node.value, n), n
    if isinstance(node, Var):
        return Fps.var(n), n
    if isinstance(node, Neg):
        v, r = _ev(node.arg, n)
        return -v, r
    if isinstance(node, Pow):
        v, r = _ev(node.base, n)
        k = node.exponent
        if k == 0:
            return Fps.const(1, n), n
        if k < 0:
            if r < 0:
                raise _NeedMore(node.base)
            if not v[0]:
                raise NegativePowerOfNonunit(
                    "negative power of a series with zero constant term", node.start, node.end
                )
            return power_int(recip(v), -k), r
        return power_int(v, k), min(n, r + (k - 1) * _val(v, r))
    if isinstance(node, (Sqrt, Root)):
        k = 2 if isinstance(node, Sqrt) else node.n
        v, r = _ev(node.arg, n)
        val = _val(v, r)
        if val > r:
            if r >= n:
                return Fps.const(0, n), n
            raise _NeedMore(node.arg)
        if val % k:
            raise RootConstantTerm(
                f"radicand has valuation {val}, not a multiple of {k}", node.arg.start, node.arg.end
            )
        unit = v.shift_down(val)
        if unit[0] != 1:
            raise RootConstantTerm(
                f"radicand needs constant term 1 after removing t^{val}, found {unit[0]}",
                node.arg.start, node.arg.end,
            )
        return nth_root(unit, k).shift_up(val // k), min(n, r - val + val // k)
    raise TypeError(f"not an expression node: {node!r}")


def parse_series(text: str, order: int) -> Fps:
    """Parse and evaluate ``text`` at truncation ``order``."""
    return evaluate(parse(tokenize(text)), order)


__all__ = [
    "Add", "Div", "DivisionValuation", "ExprError", "ExpressionTooLarge", "IllegalCharacter",
    "Mul", "Neg", "NegativePowerOfNonunit", "Pow", "Rational", "Root", "RootConstantTerm",
    "Sqrt", "Sub", "Token", "UnexpectedToken", "Var", "evaluate", "parse", "parse_series",
    "pretty", "tokenize",
]
