"""Abstract syntax for the modal/temporal formula language.

Formulas are frozen dataclasses. Property terms are either a named
property (``G``, ``NE``), a property variable, or the negation of one of
those; double negation is collapsed by :func:`neg`, and applying a negated
property is built as the negated application (``(~F)(x)`` is ``~F(x)``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Union


class Tag(str, Enum):
    PAST = "past"
    FUTURE = "future"


class Mode(str, Enum):
    ALL = "all"
    EX = "ex"


NAMED_PROPERTIES = frozenset({"G", "NE"})

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
IND_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class KindError(ValueError):
    """A term of one kind was used where another kind is required."""


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Ind:
    name: str
    const: bool = False

    def __post_init__(self):
        if not IND_RE.match(self.name):
            raise ValueError(f"bad individual name {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Prop:
    name: str
    named: bool = False

    def __post_init__(self):
        if not IDENT_RE.match(self.name):
            raise ValueError(f"bad property name {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class NegProp:
    base: Prop

    def __post_init__(self):
        if not isinstance(self.base, Prop):
            raise KindError("negated property terms must wrap a plain property")

    def __str__(self):
        return f"~{self.base}"


PropTerm = Union[Prop, NegProp]


def neg(t: PropTerm) -> PropTerm:
    """Negate a property term, collapsing double negation."""
    if isinstance(t, NegProp):
        return t.base
    return NegProp(t)


def prop(name: str) -> Prop:
    return Prop(name, name in NAMED_PROPERTIES)


# ------------------------------------------------------------- formulas


class Formula:
    __slots__ = ()

    def __str__(self):
        from .parser import render

        return render(self)

    # operator sugar for building formulas in code
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str
    args: tuple = ()

    def __repr__(self):
        return f"Atom({self.name!r}{', ' + repr(self.args) if self.args else ''})"


@dataclass(frozen=True, repr=False)
class Pos(Formula):
    prop: PropTerm

    def __repr__(self):
        return f"Pos({self.prop})"


@dataclass(frozen=True, repr=False)
class Apply(Formula):
    prop: Prop
    arg: Ind

    def __post_init__(self):
        if not isinstance(self.prop, Prop):
            raise KindError("use apply() to apply a negated property")

    def __repr__(self):
        return f"Apply({self.prop}, {self.arg})"


@dataclass(frozen=True, repr=False)
class Ess(Formula):
    prop: PropTerm
    arg: Ind

    def __repr__(self):
        return f"Ess({self.prop}, {self.arg})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula

    def __repr__(self):
        return f"Not({self.body!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Iff({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Box(Formula):
    body: Formula

    def __repr__(self):
        return f"Box({self.body!r})"


@dataclass(frozen=True, repr=False)
class Dia(Formula):
    body: Formula

    def __repr__(self):
        return f"Dia({self.body!r})"


@dataclass(frozen=True, repr=False)
class Temporal(Formula):
    tag: Tag
    mode: Mode
    body: Formula

    def __repr__(self):
        return f"Temporal({self.tag.value}, {self.mode.value}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class IQuant(Formula):
    mode: Mode
    var: str
    body: Formula

    def __post_init__(self):
        if not IND_RE.match(self.var):
            raise ValueError(f"bad individual variable {self.var!r}")

    def __repr__(self):
        return f"IQuant({self.mode.value}, {self.var}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class PQuant(Formula):
    mode: Mode
    var: str
    body: Formula

    def __post_init__(self):
        if not IDENT_RE.match(self.var) or self.var in NAMED_PROPERTIES:
            raise ValueError(f"bad property variable {self.var!r}")

    def __repr__(self):
        return f"PQuant({self.mode.value}, {self.var}, {self.body!r})"


BINARY = (And, Or, Implies, Iff)
UNARY = (Not, Box, Dia)
BINDERS = (IQuant, PQuant)


def apply(p: PropTerm, x: Ind) -> Formula:
    """``p(x)``; a negated property yields the negated application."""
    if isinstance(p, NegProp):
        return Not(Apply(p.base, x))
    return Apply(p, x)


def children(f: Formula) -> tuple:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, (Not, Box, Dia, Temporal, IQuant, PQuant)):
        return (f.body,)
    return ()


def rebuild(f: Formula, kids) -> Formula:
    """Return ``f`` with its subformula children replaced."""
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, UNARY):
        return type(f)(kids[0])
    if isinstance(f, Temporal):
        return Temporal(f.tag, f.mode, kids[0])
    if isinstance(f, BINDERS):
        return type(f)(f.mode, f.var, kids[0])
    return f


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def modal_depth(f: Formula) -> int:
    kids = children(f)
    d = max((modal_depth(k) for k in kids), default=0)
    return d + 1 if isinstance(f, (Box, Dia)) else d


# ------------------------------------------------------ free variables


def _term_free(t) -> set:
    if isinstance(t, Ind):
        return set() if t.const else {("ind", t.name)}
    if isinstance(t, NegProp):
        t = t.base
    if isinstance(t, Prop):
        return set() if t.named else {("prop", t.name)}
    if isinstance(t, Formula):
        return free_names(t)
    raise TypeError(t)


def free_names(f: Formula) -> set:
    """Free names as ``(kind, name)`` pairs; kinds are ind, prop, atom.

    Atom names (propositional letters and predicate symbols) are always
    free; they are reported so substitution can treat formula
    metavariables uniformly.
    """
    if isinstance(f, Atom):
        out = {("atom", f.name)}
        for a in f.args:
            out |= _term_free(a)
        return out
    if isinstance(f, Pos):
        return _term_free(f.prop)
    if isinstance(f, (Apply, Ess)):
        return _term_free(f.prop) | _term_free(f.arg)
    if isinstance(f, IQuant):
        return free_names(f.body) - {("ind", f.var)}
    if isinstance(f, PQuant):
        return free_names(f.body) - {("prop", f.var)}
    out = set()
    for k in children(f):
        out |= free_names(k)
    return out


def free_variables(f: Formula) -> set:
    """Free individual and property variables."""
    return {n for n in free_names(f) if n[0] != "atom"}


def all_names(f: Formula) -> set:
    """Every identifier occurring in ``f``, bound or free, any kind."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g.name)
            out.update(a.name for a in g.args)
        elif isinstance(g, Pos):
            out.add(_pname(g.prop))
        elif isinstance(g, (Apply, Ess)):
            out.add(_pname(g.prop))
            out.add(g.arg.name)
        elif isinstance(g, BINDERS):
            out.add(g.var)
    return out


def _pname(t: PropTerm) -> str:
    return t.base.name if isinstance(t, NegProp) else t.name


def fresh_name(base: str, avoid) -> str:
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


# --------------------------------------------------------- substitution


def _sub_ind(t: Ind, m: dict) -> Ind:
    if t.const:
        return t
    v = m.get(("ind", t.name))
    if v is None:
        return t
    if not isinstance(v, Ind):
        raise KindError(f"individual variable {t.name} bound to {v!r}")
    return v


def _sub_prop(t: PropTerm, m: dict) -> PropTerm:
    if isinstance(t, NegProp):
        return neg(_sub_prop(t.base, m))
    if t.named:
        return t
    v = m.get(("prop", t.name))
    if v is None:
        return t
    if not isinstance(v, (Prop, NegProp)):
        raise KindError(f"property variable {t.name} bound to {v!r}")
    return v


def substitute(f: Formula, mapping: dict) -> Formula:
    """Capture-avoiding simultaneous substitution.

    ``mapping`` keys are ``(kind, name)`` with kind ``atom`` (value a
    Formula, replacing a zero-argument atom), ``prop`` (a property term)
    or ``ind`` (an individual term).
    """
    for (kind, _), v in mapping.items():
        ok = {"atom": Formula, "prop": (Prop, NegProp), "ind": Ind}[kind]
        if not isinstance(v, ok):
            raise KindError(f"cannot substitute {v!r} for a {kind}")
    return _subst(f, dict(mapping))


def _subst(f: Formula, m: dict) -> Formula:
    if not m:
        return f
    if isinstance(f, Atom):
        if not f.args and ("atom", f.name) in m:
            return m[("atom", f.name)]
        if f.args:
            return Atom(f.name, tuple(_sub_ind(a, m) for a in f.args))
        return f
    if isinstance(f, Pos):
        return Pos(_sub_prop(f.prop, m))
    if isinstance(f, Apply):
        return apply(_sub_prop(f.prop, m), _sub_ind(f.arg, m))
    if isinstance(f, Ess):
        return Ess(_sub_prop(f.prop, m), _sub_ind(f.arg, m))
    if isinstance(f, BINDERS):
        kind = "ind" if isinstance(f, IQuant) else "prop"
        body_free = free_names(f.body)
        m2 = {k: v for k, v in m.items() if k != (kind, f.var) and k in body_free}
        if not m2:
            return f
        incoming = set()
        for v in m2.values():
            incoming |= _term_free(v)
        var, body = f.var, f.body
        if (kind, var) in incoming:
            avoid = {n for _, n in incoming} | {n for _, n in body_free} | all_names(body)
            var = fresh_name(var, avoid)
            new = Ind(var) if kind == "ind" else Prop(var)
            body = _subst(body, {(kind, f.var): new})
        return type(f)(f.mode, var, _subst(body, m2))
    return rebuild(f, [_subst(k, m) for k in children(f)])


def substitute_property(f: Formula, var: str, t: PropTerm) -> Formula:
    if isinstance(t, Ind):
        raise KindError("cannot substitute an individual for a property variable")
    return substitute(f, {("prop", var): t})


def substitute_individual(f: Formula, var: str, t: Ind) -> Formula:
    if not isinstance(t, Ind):
        raise KindError("cannot substitute a property for an individual variable")
    return substitute(f, {("ind", var): t})


# ------------------------------------------------------ alpha equality


def alpha_equal(a: Formula, b: Formula) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _term_eq(s, t, ea, eb) -> bool:
    if isinstance(s, Ind) and isinstance(t, Ind):
        if s.const or t.const:
            return s == t
        da, db = ea.get(("ind", s.name)), eb.get(("ind", t.name))
        if da is None and db is None:
            return s.name == t.name
        return da == db
    if isinstance(s, NegProp) and isinstance(t, NegProp):
        return _term_eq(s.base, t.base, ea, eb)
    if isinstance(s, Prop) and isinstance(t, Prop):
        if s.named or t.named:
            return s == t
        da, db = ea.get(("prop", s.name)), eb.get(("prop", t.name))
        if da is None and db is None:
            return s.name == t.name
        return da == db
    return False


def _alpha(a, b, ea, eb, depth) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        return (
            a.name == b.name
            and len(a.args) == len(b.args)
            and all(_term_eq(s, t, ea, eb) for s, t in zip(a.args, b.args))
        )
    if isinstance(a, Pos):
        return _term_eq(a.prop, b.prop, ea, eb)
    if isinstance(a, (Apply, Ess)):
        return _term_eq(a.prop, b.prop, ea, eb) and _term_eq(a.arg, b.arg, ea, eb)
    if isinstance(a, Temporal):
        if a.tag != b.tag or a.mode != b.mode:
            return False
    if isinstance(a, BINDERS):
        if a.mode != b.mode:
            return False
        kind = "ind" if isinstance(a, IQuant) else "prop"
        return _alpha(
            a.body, b.body, {**ea, (kind, a.var): depth}, {**eb, (kind, b.var): depth}, depth + 1
        )
    return all(_alpha(x, y, ea, eb, depth) for x, y in zip(children(a), children(b)))


# -------------------------------------------------------- normalization

_CANON = re.compile(r"[vf]+\d+\Z")


def _canon_prefixes(f: Formula) -> tuple[str, str]:
    used = {n for _, n in free_names(f)}
    for g in subformulas(f):
        if isinstance(g, (Pos, Apply, Ess)):
            p = g.prop.base if isinstance(g.prop, NegProp) else g.prop
            if p.named:
                used.add(p.name)
    k = 1
    while True:
        iv, pv = "v" * k, "f" * k
        if not any(re.fullmatch(rf"({iv}|{pv})\d+", n) for n in used):
            return iv, pv
        k += 1


def normalize(f: Formula) -> Formula:
    """Canonical form: depth-indexed bound names, flattened and sorted
    conjunctions/disjunctions. Idempotent; alpha-equal inputs normalize
    to identical formulas."""
    from .parser import render

    iv, pv = _canon_prefixes(f)

    def go(g, env, depth):
        if isinstance(g, Atom):
            return Atom(g.name, tuple(_sub_ind(a, env) for a in g.args)) if g.args else g
        if isinstance(g, Pos):
            return Pos(_sub_prop(g.prop, env))
        if isinstance(g, Apply):
            return apply(_sub_prop(g.prop, env), _sub_ind(g.arg, env))
        if isinstance(g, Ess):
            return Ess(_sub_prop(g.prop, env), _sub_ind(g.arg, env))
        if isinstance(g, IQuant):
            name = f"{iv}{depth}"
            return IQuant(g.mode, name, go(g.body, {**env, ("ind", g.var): Ind(name)}, depth + 1))
        if isinstance(g, PQuant):
            name = f"{pv}{depth}"
            return PQuant(g.mode, name, go(g.body, {**env, ("prop", g.var): Prop(name)}, depth + 1))
        if isinstance(g, (And, Or)):
            op = type(g)
            parts = [go(p, env, depth) for p in _flatten(g, op)]
            parts.sort(key=render)
            out = parts[-1]
            for p in reversed(parts[:-1]):
                out = op(p, out)
            return out
        return rebuild(g, [go(k, env, depth) for k in children(g)])

    return go(f, {}, 0)


def _flatten(f, op):
    if isinstance(f, op):
        return _flatten(f.left, op) + _flatten(f.right, op)
    return [f]


@lru_cache(maxsize=1 << 16)
def key(f: Formula) -> str:
    """Text of the normal form; equal keys mean equal up to alpha and AC."""
    from .parser import render

    return render(normalize(f))


# -------------------------------------------------------- signatures


@dataclass(frozen=True)
class Signature:
    atoms: frozenset = frozenset()
    predicates: frozenset = frozenset()  # (name, arity)
    named_properties: frozenset = NAMED_PROPERTIES
    constants: frozenset = frozenset()

    @classmethod
    def of(cls, f: Formula) -> "Signature":
        atoms, preds, named = set(), set(), set(NAMED_PROPERTIES)
        for g in subformulas(f):
            if isinstance(g, Atom):
                if g.args:
                    preds.add((g.name, len(g.args)))
                else:
                    atoms.add(g.name)
            elif isinstance(g, (Pos, Apply, Ess)):
                p = g.prop.base if isinstance(g.prop, NegProp) else g.prop
                if p.named:
                    named.add(p.name)
        return cls(frozenset(atoms), frozenset(preds), frozenset(named))
