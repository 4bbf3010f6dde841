"""Concrete syntax: tokenizer, recursive-descent parser, and printer.

Precedence, tightest first: prefix operators (``~ [] <> A- A+ E- E+`` and
quantifier prefixes, which extend as far right as possible), ``&``, ``|``,
``->`` (right associative), ``<->`` (left associative).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    NAMED_PROPERTIES,
    And,
    Apply,
    Atom,
    Box,
    Dia,
    Ess,
    Formula,
    Iff,
    Implies,
    Ind,
    IQuant,
    KindError,
    Mode,
    NegProp,
    Not,
    Or,
    Pos,
    PQuant,
    Prop,
    Signature,
    Tag,
    Temporal,
    apply,
    neg,
)

KEYWORDS = {"all", "ex", "allp", "exp", "Pos", "Ess"}

_TEMPORAL = {
    "A-": (Tag.PAST, Mode.ALL),
    "A+": (Tag.FUTURE, Mode.ALL),
    "E-": (Tag.PAST, Mode.EX),
    "E+": (Tag.FUTURE, Mode.EX),
}
_TEMPORAL_TEXT = {v: k for k, v in _TEMPORAL.items()}

_PUNCT = ["<->", "->", "[]", "<>", "(", ")", ",", ".", "~", "&", "|"]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Syntax error, unbound name, or binder-kind violation."""

    def __init__(self, message, line=0, col=0, expected=()):
        self.line, self.col = line, col
        self.expected = frozenset(expected)
        where = f"{line}:{col}: " if line else ""
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{where}{message}{exp}")


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'temporal', a punctuation string, or 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    i, line, lstart = 0, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            lstart = i
            continue
        if c.isspace():
            i += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        col = i - lstart + 1
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            nxt = text[m.end() : m.end() + 2]
            if word in ("A", "E") and nxt[:1] in ("+", "-") and nxt != "->":
                toks.append(Token("temporal", word + nxt[0], line, col))
                i = m.end() + 1
            else:
                toks.append(Token("ident", word, line, col))
                i = m.end()
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(Token(p, p, line, col))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(Token("eof", "", line, i - lstart + 1))
    return toks


class _Parser:
    def __init__(self, text, signature):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = signature
        self.named = set(NAMED_PROPERTIES) | (set(signature.named_properties) if signature else set())
        self.scope: list[tuple[str, str]] = []  # (kind, name), innermost last

    # token helpers
    def peek(self, k=0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind, expected=None):
        t = self.peek()
        if t.kind != kind:
            self.fail(f"unexpected {t.text or 'end of input'!r}", t, expected or {kind})
        return self.next()

    def fail(self, msg, tok=None, expected=()):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, expected)

    def bound_kind(self, name):
        for kind, n in reversed(self.scope):
            if n == name:
                return kind
        return None

    # grammar
    def formula(self):
        left = self.imp()
        while self.peek().kind == "<->":
            self.next()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.peek().kind == "->":
            self.next()
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.peek().kind == "|":
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek().kind == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self):
        t = self.peek()
        if t.kind == "~":
            self.next()
            return Not(self.unary())
        if t.kind == "[]":
            self.next()
            return Box(self.unary())
        if t.kind == "<>":
            self.next()
            return Dia(self.unary())
        if t.kind == "temporal":
            self.next()
            tag, mode = _TEMPORAL[t.text]
            if self.peek().kind == "ident" and self.peek(1).kind == ".":
                # sugared "E- x. body" == E- (ex x. body)
                return Temporal(tag, mode, self.binder(IQuant, mode, "ind"))
            return Temporal(tag, mode, self.unary())
        if t.kind == "ident" and t.text in ("all", "ex", "allp", "exp"):
            self.next()
            mode = Mode.ALL if t.text.startswith("all") else Mode.EX
            if t.text.endswith("p"):
                return self.binder(PQuant, mode, "prop")
            return self.binder(IQuant, mode, "ind")
        return self.atomic()

    def binder(self, cls, mode, kind):
        v = self.expect("ident", {"variable"})
        if v.text in KEYWORDS:
            self.fail(f"keyword {v.text!r} cannot be bound", v)
        if kind == "prop" and v.text in self.named:
            self.fail(f"named property {v.text!r} cannot be bound", v)
        if kind == "ind" and not re.fullmatch(r"[a-z][a-zA-Z0-9_]*", v.text):
            self.fail(f"individual variable {v.text!r} must start lowercase", v)
        self.expect(".")
        self.scope.append((kind, v.text))
        try:
            body = self.formula()
        finally:
            self.scope.pop()
        return cls(mode, v.text, body)

    def atomic(self):
        t = self.peek()
        if t.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind != "ident":
            self.fail(
                f"unexpected {t.text or 'end of input'!r}",
                t,
                {"(", "~", "[]", "<>", "A-", "A+", "E-", "E+", "identifier"},
            )
        self.next()
        if t.text == "Pos":
            self.expect("(")
            p = self.prop_term()
            self.expect(")")
            return Pos(p)
        if t.text == "Ess":
            self.expect("(")
            p = self.prop_term()
            self.expect(",")
            x = self.ind_term()
            self.expect(")")
            return Ess(p, x)
        if t.text in KEYWORDS:
            self.fail(f"misplaced keyword {t.text!r}", t)
        if self.peek().kind == "(":
            self.next()
            args = [self.ind_term()]
            while self.peek().kind == ",":
                self.next()
                args.append(self.ind_term())
            self.expect(")", {")", ","})
            if len(args) == 1:
                return apply(self.prop_name(t), args[0])
            if self.bound_kind(t.text):
                self.fail(f"bound variable {t.text!r} used as a predicate", t)
            self.check_pred(t, len(args))
            return Atom(t.text, tuple(args))
        kind = self.bound_kind(t.text)
        if kind:
            self.fail(f"{kind} variable {t.text!r} used as a proposition", t)
        if self.sig is not None and t.text not in self.sig.atoms:
            self.fail(f"unbound name {t.text!r}", t)
        return Atom(t.text)

    def check_pred(self, tok, arity):
        if self.sig is not None and (tok.text, arity) not in self.sig.predicates:
            self.fail(f"unbound predicate {tok.text}/{arity}", tok)

    def prop_term(self):
        negs = 0
        while self.peek().kind == "~":
            self.next()
            negs += 1
        t = self.expect("ident", {"~", "property"})
        p = self.prop_name(t)
        for _ in range(negs):
            p = neg(p)
        return p

    def prop_name(self, t) -> Prop:
        kind = self.bound_kind(t.text)
        if kind == "ind":
            self.fail(f"individual variable {t.text!r} used as a property", t)
        if t.text in KEYWORDS:
            self.fail(f"misplaced keyword {t.text!r}", t)
        if kind is None and t.text in self.named:
            return Prop(t.text, True)
        if kind is None and self.sig is not None:
            self.fail(f"unbound property variable {t.text!r}", t)
        return Prop(t.text)

    def ind_term(self) -> Ind:
        t = self.expect("ident", {"individual"})
        kind = self.bound_kind(t.text)
        if kind == "prop":
            self.fail(f"property variable {t.text!r} used as an individual", t)
        if not re.fullmatch(r"[a-z][a-zA-Z0-9_]*", t.text) or t.text in KEYWORDS:
            self.fail(f"bad individual name {t.text!r}", t)
        const = kind is None and self.sig is not None and t.text in self.sig.constants
        if kind is None and self.sig is not None and not const:
            self.fail(f"unbound individual variable {t.text!r}", t)
        return Ind(t.text, const)


def parse(text: str, signature: Signature | None = None) -> Formula:
    """Parse formula text.

    Without a signature free names are accepted (free individual and
    property variables are variables; bare identifiers are atoms). With a
    signature every free name must be declared there.
    """
    p = _Parser(text, signature)
    f = p.formula()
    t = p.peek()
    if t.kind != "eof":
        p.fail(f"unexpected {t.text!r}", t, {"&", "|", "->", "<->", "end of input"})
    return f


def parse_prop_term(text: str) -> Prop | NegProp:
    p = _Parser(text, None)
    t = p.prop_term()
    p.expect("eof", {"end of input"})
    return t


def parse_ind(text: str) -> Ind:
    p = _Parser(text, None)
    t = p.ind_term()
    p.expect("eof", {"end of input"})
    return t


# ------------------------------------------------------------- printer

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_PREFIX = 5
_ATOMIC = 6


def _prec(f):
    if type(f) in _PREC:
        return _PREC[type(f)]
    if isinstance(f, (Not, Box, Dia, Temporal, IQuant, PQuant)):
        return _PREFIX
    return _ATOMIC


def _open(f) -> bool:
    """True if the rendering ends in a quantifier body that would swallow
    anything written after it."""
    if isinstance(f, (IQuant, PQuant)):
        return True
    if isinstance(f, (Not, Box, Dia, Temporal)):
        return _open(f.body)
    return False


def render_term(t) -> str:
    if isinstance(t, NegProp):
        return "~" + t.base.name
    return t.name


def render(f: Formula, sugar: bool = False) -> str:
    """Print with the minimal parentheses that preserve structure."""
    return _r(f, 0, True, sugar)


def _r(f, min_prec, rightmost, sugar) -> str:
    p = _prec(f)
    if p < min_prec or (not rightmost and p == _PREFIX and _open(f)):
        return "(" + _r(f, 0, True, sugar) + ")"
    if isinstance(f, Atom):
        if f.args:
            return f"{f.name}({', '.join(a.name for a in f.args)})"
        return f.name
    if isinstance(f, Pos):
        return f"Pos({render_term(f.prop)})"
    if isinstance(f, Apply):
        return f"{f.prop.name}({f.arg.name})"
    if isinstance(f, Ess):
        return f"Ess({render_term(f.prop)},{f.arg.name})"
    if isinstance(f, Not):
        return "~" + _r(f.body, _PREFIX, rightmost, sugar)
    if isinstance(f, Box):
        return "[]" + _r(f.body, _PREFIX, rightmost, sugar)
    if isinstance(f, Dia):
        return "<>" + _r(f.body, _PREFIX, rightmost, sugar)
    if isinstance(f, Temporal):
        op = _TEMPORAL_TEXT[(f.tag, f.mode)]
        b = f.body
        if sugar and isinstance(b, IQuant) and b.mode == f.mode:
            return f"{op} {b.var}. " + _r(b.body, 0, True, sugar)
        return f"{op} " + _r(b, _PREFIX, rightmost, sugar)
    if isinstance(f, IQuant):
        return f"{f.mode.value} {f.var}. " + _r(f.body, 0, True, sugar)
    if isinstance(f, PQuant):
        return f"{f.mode.value}p {f.var}. " + _r(f.body, 0, True, sugar)
    op = _OPS[type(f)]
    if isinstance(f, Implies):
        lp, rp = p + 1, p
    else:
        lp, rp = p, p + 1
    return f"{_r(f.left, lp, False, sugar)} {op} {_r(f.right, rp, rightmost, sugar)}"


__all__ = ["ParseError", "parse", "parse_prop_term", "parse_ind", "render", "tokenize", "KindError"]
