"""Line-oriented proof script files and a builder for writing them.

Grammar (one item per line, ``#`` starts a comment)::

    system NAME
    goal FORMULA
    premise NAME FORMULA
    N FORMULA | axiom SCHEMA [VAR=VALUE ...]     VALUE is a token or {text}
    N FORMULA | premise NAME
    N FORMULA | mp I J                          J proves FORMULA_I -> FORMULA
    N FORMULA | nec I
    N FORMULA | geni I VAR
    N FORMULA | genp I VAR
    N FORMULA | unfold I DEF K                  K-th occurrence, either direction
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formula import Formula, Implies, Ind, NegProp, Prop, key
from .hilbert import (
    MP,
    AxiomJ,
    CheckReport,
    FormalSystem,
    GenI,
    GenP,
    Nec,
    PremiseJ,
    Proof,
    Step,
    Unfold,
    check_proof,
    is_tautology,
    unfold_at,
)
from .formula import Box, IQuant, Mode, PQuant
from .parser import ParseError, parse, render, render_term

_NAME = re.compile(r"[A-Za-z0-9_+\-]+$")
_TOKEN = re.compile(r"\S+=\{[^{}]*\}|\S+")


class ScriptError(ValueError):
    def __init__(self, message, line=0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Script:
    system: str
    goal: Formula
    premises: tuple = ()  # ((name, formula), ...)
    proof: Proof = field(default_factory=lambda: Proof(()))
    comments: tuple = ()  # ((step id, text), ...) emitted before that step

    @property
    def premise_map(self) -> dict:
        return dict(self.premises)

    def check(self, system: FormalSystem) -> CheckReport:
        return check_proof(system, self.proof, self.goal, self.premise_map)


# ---------------------------------------------------------------- parsing


def _parse_just(text: str):
    toks = _TOKEN.findall(text)
    if not toks:
        raise ValueError("empty justification")
    head, args = toks[0], toks[1:]

    def ints(n):
        if len(args) != n:
            raise ValueError(f"{head} takes {n} arguments")
        return [int(a) for a in args[:n]]

    if head == "axiom":
        if not args or not _NAME.match(args[0]):
            raise ValueError("axiom needs a schema name")
        binds = []
        for a in args[1:]:
            name, eq, value = a.partition("=")
            if not eq or not name.isidentifier() or not value:
                raise ValueError(f"bad binding {a!r}")
            if value.startswith("{") and value.endswith("}"):
                value = value[1:-1].strip()
            binds.append((name, value))
        return AxiomJ(args[0], tuple(binds))
    if head == "premise":
        if len(args) != 1 or not _NAME.match(args[0]):
            raise ValueError("premise takes one name")
        return PremiseJ(args[0])
    if head == "mp":
        return MP(*ints(2))
    if head == "nec":
        return Nec(*ints(1))
    if head in ("geni", "genp"):
        if len(args) != 2 or not args[1].isidentifier():
            raise ValueError(f"{head} takes a step and a variable")
        return (GenI if head == "geni" else GenP)(int(args[0]), args[1])
    if head == "unfold":
        if len(args) != 3 or not _NAME.match(args[1]):
            raise ValueError("unfold takes a step, a definition and a position")
        return Unfold(int(args[0]), args[1], int(args[2]))
    raise ValueError(f"unknown justification {head!r}")


def _split_step(rest: str):
    """Split ``FORMULA | JUST`` at the first bar where both halves parse."""
    last = None
    for m in re.finditer(r"\|", rest):
        left, right = rest[: m.start()], rest[m.end():]
        try:
            just = _parse_just(right)
        except ValueError as e:
            last = e
            continue
        try:
            return parse(left), just
        except ParseError as e:
            last = e
    raise ValueError(str(last) if last else "missing '| justification'")


def parse_script(text: str) -> Script:
    system = goal = None
    premises, steps, comments, pending = [], [], [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            pending.append(line[1:].strip())
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if word == "system":
                if system is not None:
                    raise ValueError("duplicate system line")
                if not _NAME.match(rest):
                    raise ValueError(f"bad system name {rest!r}")
                system = rest
            elif word == "goal":
                if goal is not None:
                    raise ValueError("duplicate goal line")
                goal = parse(rest)
            elif word == "premise":
                name, _, ftext = rest.partition(" ")
                if not _NAME.match(name):
                    raise ValueError(f"bad premise name {name!r}")
                if any(n == name for n, _ in premises):
                    raise ValueError(f"duplicate premise {name}")
                premises.append((name, parse(ftext)))
            elif word.isdigit():
                f, just = _split_step(rest)
                sid = int(word)
                for c in pending:
                    comments.append((sid, c))
                pending = []
                steps.append(Step(sid, f, just))
            else:
                raise ValueError(f"unexpected {word!r}")
        except (ValueError, ParseError) as e:
            raise ScriptError(str(e), no) from None
    if system is None:
        raise ScriptError("missing system line")
    if goal is None:
        raise ScriptError("missing goal line")
    return Script(system, goal, tuple(premises), Proof(tuple(steps)), tuple(comments))


# -------------------------------------------------------------- printing


def _value_text(v) -> str:
    if isinstance(v, str):
        text = v
    elif isinstance(v, (Prop, NegProp)):
        text = render_term(v)
    elif isinstance(v, Ind):
        text = v.name
    else:
        text = render(v)
    return "{" + text + "}" if (" " in text or not text) else text


def format_just(j) -> str:
    if isinstance(j, AxiomJ):
        return " ".join(["axiom", j.schema] + [f"{n}={_value_text(v)}" for n, v in j.bindings])
    if isinstance(j, PremiseJ):
        return f"premise {j.name}"
    if isinstance(j, MP):
        return f"mp {j.minor} {j.major}"
    if isinstance(j, Nec):
        return f"nec {j.src}"
    if isinstance(j, GenI):
        return f"geni {j.src} {j.var}"
    if isinstance(j, GenP):
        return f"genp {j.src} {j.var}"
    if isinstance(j, Unfold):
        return f"unfold {j.src} {j.definition} {j.position}"
    raise TypeError(j)


def format_script(s: Script, header: str = "") -> str:
    out = [f"# {line}" if line else "#" for line in header.splitlines()]
    out += [f"system {s.system}", f"goal {render(s.goal)}"]
    out += [f"premise {n} {render(f)}" for n, f in s.premises]
    notes = {}
    for sid, c in s.comments:
        notes.setdefault(sid, []).append(c)
    for st in s.proof.steps:
        out += [f"# {c}" if c else "#" for c in notes.get(st.id, [])]
        out.append(f"{st.id} {render(st.formula)} | {format_just(st.just)}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------- builder


class BuildError(ValueError):
    pass


class ProofBuilder:
    """Append steps whose formulas are computed from their justifications.

    Every method returns the new step id. The builder re-checks the whole
    proof in :meth:`script`, so a mistake surfaces when the script is made,
    not when it is shipped.
    """

    def __init__(self, system: FormalSystem, premises=()):
        self.system = system
        self.premises = dict(premises)
        self.steps: list[Step] = []
        self.comments: list = []
        self._note: list = []

    def _add(self, f, just) -> int:
        sid = len(self.steps) + 1
        self.comments += [(sid, c) for c in self._note]
        self._note = []
        self.steps.append(Step(sid, f, just))
        return sid

    def note(self, text: str) -> None:
        self._note.append(text)

    def formula(self, i: int) -> Formula:
        return self.steps[i - 1].formula

    def axiom(self, schema: str, **bindings) -> int:
        s = self.system.schema(schema)
        if s is None:
            raise BuildError(f"{schema} not in {self.system.name}")
        j = AxiomJ(schema, tuple(bindings.items()))
        return self._add(s.instantiate(bindings, self.system.wrap), j)

    def taut(self, f) -> int:
        f = parse(f) if isinstance(f, str) else f
        if not is_tautology(f):
            raise BuildError(f"not a tautology: {render(f)}")
        return self._add(f, AxiomJ("TAUT"))

    def premise(self, name: str) -> int:
        return self._add(self.premises[name], PremiseJ(name))

    def mp(self, minor: int, major: int) -> int:
        imp = self.formula(major)
        if not isinstance(imp, Implies) or key(imp.left) != key(self.formula(minor)):
            raise BuildError(f"mp {minor} {major}: no match")
        return self._add(imp.right, MP(minor, major))

    def nec(self, i: int) -> int:
        return self._add(Box(self.formula(i)), Nec(i))

    def geni(self, i: int, var: str) -> int:
        return self._add(self.system.wrap(IQuant(Mode.ALL, var, self.formula(i))), GenI(i, var))

    def genp(self, i: int, var: str) -> int:
        return self._add(PQuant(Mode.ALL, var, self.formula(i)), GenP(i, var))

    def unfold(self, i: int, definition: str, position: int = 1) -> int:
        d = self.system.definition(definition)
        out = unfold_at(self.formula(i), d, position)
        if out is None:
            raise BuildError(f"unfold {definition} at {position}: no occurrence")
        return self._add(out, Unfold(i, definition, position))

    def fold(self, i: int, definition: str, target, position: int = 1) -> int:
        """Step to ``target`` whose ``position``-th definiendum unfolds to step i."""
        target = parse(target) if isinstance(target, str) else target
        d = self.system.definition(definition)
        back = unfold_at(target, d, position)
        if back is None or key(back) != key(self.formula(i)):
            raise BuildError(f"fold {definition} at {position} does not reach step {i}")
        return self._add(target, Unfold(i, definition, position))

    def chain(self, target, *ids) -> int:
        """Derive ``target`` from steps ``ids`` by one tautology and mp."""
        target = parse(target) if isinstance(target, str) else target
        f = target
        for i in reversed(ids):
            f = Implies(self.formula(i), f)
        cur = self.taut(f)
        for i in ids:
            cur = self.mp(i, cur)
        return cur

    def script(self, goal, system_name: str | None = None) -> Script:
        goal = parse(goal) if isinstance(goal, str) else goal
        s = Script(
            system_name or self.system.name,
            goal,
            tuple(self.premises.items()),
            Proof(tuple(self.steps)),
            tuple(self.comments),
        )
        rep = s.check(self.system)
        if not rep.accepted:
            bad = rep.failing_step
            text = render(self.formula(bad)) if bad else ""
            raise BuildError(f"step {bad} {rep.reason}: {rep.message} [{text}]")
        return s
