"""Axiom schemas, formal systems, and the proof checker.

Steps are compared up to alpha-renaming and reordering of conjunctions
and disjunctions (see :func:`ontomodal.formula.key`). Unfold positions
count definiendum occurrences in pre-order of the normalized formula,
starting at 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from . import evalcore
from .definitions import Definition
from .formula import (
    And,
    Atom,
    Box,
    Formula,
    Iff,
    Implies,
    Ind,
    IQuant,
    Mode,
    NegProp,
    Not,
    Or,
    PQuant,
    Prop,
    children,
    free_variables,
    key,
    normalize,
    rebuild,
    substitute,
)
from .parser import parse, parse_ind, parse_prop_term, render

RULES = ("mp", "nec", "gen-i", "gen-p", "unfold")
REASONS = (
    "bad-instantiation",
    "bad-mp",
    "nec-on-premise",
    "capture",
    "unknown-dependency",
    "goal-mismatch",
    "bad-generalization",
    "bad-unfold",
    "unknown-premise",
    "bad-step-id",
    "rule-disabled",
)


class SchemaError(ValueError):
    pass


def _identity(q):
    return q


# ------------------------------------------------------------- schemas


@dataclass(frozen=True)
class AxiomSchema:
    """A named axiom schema.

    Either ``pattern`` (a formula whose atoms/properties/individuals named
    in ``metavars`` are placeholders) or ``builder`` (a function of the
    bindings and the system's quantifier rewrite) defines the instances.
    ``metavars`` is a tuple of ``(name, kind)`` with kind one of
    ``formula``, ``prop``, ``ind``.
    """

    name: str
    metavars: tuple = ()
    pattern: Formula | None = None
    builder: Callable | None = field(default=None, compare=False)
    side_condition: Callable | None = field(default=None, compare=False)
    display: str = ""

    def instantiate(self, bindings: Mapping, wrap: Callable = _identity) -> Formula:
        kinds = dict(self.metavars)
        missing = [n for n in kinds if n not in bindings]
        if missing:
            raise SchemaError(f"{self.name}: missing binding for {', '.join(missing)}")
        extra = [n for n in bindings if n not in kinds]
        if extra:
            raise SchemaError(f"{self.name}: unknown metavariable {', '.join(extra)}")
        bindings = {n: coerce_binding(kinds[n], v) for n, v in bindings.items()}
        for n, v in bindings.items():
            want = {"formula": Formula, "prop": (Prop, NegProp), "ind": Ind}[kinds[n]]
            if not isinstance(v, want):
                raise SchemaError(f"{self.name}: {n} needs a {kinds[n]}, got {v!r}")
            if kinds[n] == "prop" and isinstance(v, Prop) and v.named and self._is_var_slot(n):
                raise SchemaError(f"{self.name}: {n} must be a property variable")
        if self.side_condition is not None:
            err = self.side_condition(bindings)
            if err:
                raise SchemaError(f"{self.name}: {err}")
        if self.builder is not None:
            return self.builder(bindings, wrap)
        sub = {}
        for n, v in bindings.items():
            sub[({"formula": "atom", "prop": "prop", "ind": "ind"}[kinds[n]], n)] = v
        return substitute(self.pattern, sub)

    def _is_var_slot(self, n):
        # binder slots of the quantifier schemas must be variables
        return self.builder is not None and n in ("x", "F")

    def text(self) -> str:
        return render(self.pattern) if self.pattern is not None else self.display


def coerce_binding(kind: str, value):
    """Parse a textual binding according to its metavariable kind."""
    if not isinstance(value, str):
        return value
    try:
        if kind == "formula":
            return parse(value)
        if kind == "prop":
            return parse_prop_term(value)
        return parse_ind(value)
    except ValueError as e:
        raise SchemaError(f"cannot read {value!r} as a {kind}: {e}") from None


def pattern_schema(name, text, **kinds):
    metavars = tuple(kinds.items()) or tuple((n, "formula") for n in ("phi", "psi") if n in text)
    return AxiomSchema(name, metavars, parse(text))


TAUT = AxiomSchema("TAUT", (), None, display="any propositional tautology")

MODAL_SCHEMAS = {
    "EQ1": "[]phi -> phi",
    "EQ2": "phi -> <>phi",
    "EQ3": "[]phi <-> ~<>~phi",
    "EQ4": "<>phi <-> ~[]~phi",
    "EQ5": "[](phi & psi) <-> []phi & []psi",
    "EQ6": "<>(phi | psi) <-> <>phi | <>psi",
    "EQ7": "[]phi | []psi -> [](phi | psi)",
    "EQ8": "<>(phi & psi) -> <>phi & <>psi",
    "EQ9": "[](phi -> psi) -> ([]phi -> []psi)",
    "EQ10": "(<>phi -> <>psi) -> <>(phi -> psi)",
    "EQ11": "[][]phi <-> []phi",
    "EQ12": "<><>phi <-> <>phi",
    "EQ13": "<>[]phi -> []phi",
}
TEMPORAL_SCHEMAS = {"EQ30": "A- phi -> E- phi", "EQ31": "A+ phi -> E+ phi"}


def _modal(name):
    text = MODAL_SCHEMAS.get(name) or TEMPORAL_SCHEMAS[name]
    metavars = tuple((n, "formula") for n in ("phi", "psi") if n in text)
    return AxiomSchema(name, metavars, parse(text))


# quantifier logic; builders receive the system's rewrite for individual
# quantifier nodes so transformed systems get transformed instances


def _iq(mode, b, body, wrap):
    return wrap(IQuant(mode, b["x"].name, body))


def _pq(mode, b, body, wrap):
    return PQuant(mode, b["F"].name, body)


def _not_free(kind, var):
    def check(b):
        if (kind, b[var].name) in free_variables(b["A"]):
            return f"{b[var].name} occurs free in the vacuous body"
        return None

    return check


def _quantifier_schemas():
    IND = (("x", "ind"), ("t", "ind"), ("A", "formula"))
    PRP = (("F", "prop"), ("T", "prop"), ("A", "formula"))
    AB_I = (("x", "ind"), ("A", "formula"), ("B", "formula"))
    AB_P = (("F", "prop"), ("A", "formula"), ("B", "formula"))

    def si(b):
        return substitute(b["A"], {("ind", b["x"].name): b["t"]})

    def sp(b):
        return substitute(b["A"], {("prop", b["F"].name): b["T"]})

    S = AxiomSchema
    return (
        S("UI", IND, builder=lambda b, w: Implies(_iq(Mode.ALL, b, b["A"], w), si(b)),
          display="(all x. A) -> A[x:=t]"),
        S("EG", IND, builder=lambda b, w: Implies(si(b), _iq(Mode.EX, b, b["A"], w)),
          display="A[x:=t] -> ex x. A"),
        S("QK", AB_I, builder=lambda b, w: Implies(
            _iq(Mode.ALL, b, Implies(b["A"], b["B"]), w),
            Implies(_iq(Mode.ALL, b, b["A"], w), _iq(Mode.ALL, b, b["B"], w))),
          display="(all x. A -> B) -> (all x. A) -> all x. B"),
        S("VQ", (("x", "ind"), ("A", "formula")),
          builder=lambda b, w: Implies(b["A"], _iq(Mode.ALL, b, b["A"], w)),
          side_condition=_not_free("ind", "x"), display="A -> all x. A   (x not free in A)"),
        S("EDEF", (("x", "ind"), ("A", "formula")), builder=lambda b, w: Iff(
            _iq(Mode.EX, b, b["A"], w), Not(_iq(Mode.ALL, b, Not(b["A"]), w))),
          display="(ex x. A) <-> ~all x. ~A"),
        S("UIP", PRP, builder=lambda b, w: Implies(_pq(Mode.ALL, b, b["A"], w), sp(b)),
          display="(allp F. A) -> A[F:=T]"),
        S("EGP", PRP, builder=lambda b, w: Implies(sp(b), _pq(Mode.EX, b, b["A"], w)),
          display="A[F:=T] -> exp F. A"),
        S("QKP", AB_P, builder=lambda b, w: Implies(
            _pq(Mode.ALL, b, Implies(b["A"], b["B"]), w),
            Implies(_pq(Mode.ALL, b, b["A"], w), _pq(Mode.ALL, b, b["B"], w))),
          display="(allp F. A -> B) -> (allp F. A) -> allp F. B"),
        S("VQP", (("F", "prop"), ("A", "formula")),
          builder=lambda b, w: Implies(b["A"], _pq(Mode.ALL, b, b["A"], w)),
          side_condition=_not_free("prop", "F"), display="A -> allp F. A   (F not free in A)"),
        S("EDEFP", (("F", "prop"), ("A", "formula")), builder=lambda b, w: Iff(
            _pq(Mode.EX, b, b["A"], w), Not(_pq(Mode.ALL, b, Not(b["A"]), w))),
          display="(exp F. A) <-> ~allp F. ~A"),
    )


QUANTIFIER_SCHEMAS = _quantifier_schemas()


# -------------------------------------------------------------- systems


@dataclass(frozen=True)
class FormalSystem:
    name: str
    schemas: tuple
    rules: frozenset
    definitions: tuple = ()
    quantifier_schemas: tuple = ()
    wrap: Callable = field(default=_identity, compare=False)
    transforms: tuple = ()

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a formal system needs at least one rule")
        bad = set(self.rules) - set(RULES)
        if bad:
            raise ValueError(f"unknown rules {sorted(bad)}")

    def schema(self, name) -> AxiomSchema | None:
        for s in self.schemas + self.quantifier_schemas:
            if s.name == name:
                return s
        return None

    def definition(self, name) -> Definition | None:
        return next((d for d in self.definitions if d.name == name), None)

    def with_schemas(self, extra, name=None) -> "FormalSystem":
        return replace(self, schemas=self.schemas + tuple(extra), name=name or self.name)

    def without(self, schema_name) -> "FormalSystem":
        return replace(self, schemas=tuple(s for s in self.schemas if s.name != schema_name))

    def describe(self) -> str:
        lines = [f"system: {self.name}", f"rules: {' '.join(r for r in RULES if r in self.rules)}"]
        for s in self.schemas:
            lines.append(f"schema: {s.name} {s.text()}")
        for s in self.quantifier_schemas:
            lines.append(f"logic: {s.name} {s.display}")
        for d in self.definitions:
            lines.append(f"definition: {d.name} {render(d.definiendum)} := {render(d.definiens)}")
        return "\n".join(lines) + "\n"


def builtin_system(name: str) -> FormalSystem:
    """T, S4, S5 (Lewis-style modal systems) or TMP (minimal tense logic)."""
    modal = {
        "T": [f"EQ{i}" for i in range(1, 11)],
        "S4": [f"EQ{i}" for i in range(1, 13)],
        "S5": [f"EQ{i}" for i in range(1, 14)],
    }
    if name in modal:
        return FormalSystem(name, (TAUT,) + tuple(_modal(n) for n in modal[name]), frozenset({"mp", "nec"}))
    if name == "TMP":
        return FormalSystem("TMP", (TAUT, _modal("EQ30"), _modal("EQ31")), frozenset({"mp"}))
    raise KeyError(f"unknown system {name!r}; known: T, S4, S5, TMP")


def temporal_schemas():
    return (_modal("EQ30"), _modal("EQ31"))


# ----------------------------------------------------------------- proofs


@dataclass(frozen=True)
class AxiomJ:
    schema: str
    bindings: tuple = ()  # ((name, value), ...)


@dataclass(frozen=True)
class PremiseJ:
    name: str


@dataclass(frozen=True)
class MP:
    minor: int  # proves A
    major: int  # proves A -> B


@dataclass(frozen=True)
class Nec:
    src: int


@dataclass(frozen=True)
class GenI:
    src: int
    var: str


@dataclass(frozen=True)
class GenP:
    src: int
    var: str


@dataclass(frozen=True)
class Unfold:
    src: int
    definition: str
    position: int


@dataclass(frozen=True)
class Step:
    id: int
    formula: Formula
    just: object


@dataclass(frozen=True)
class Proof:
    steps: tuple

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class CheckReport:
    verdict: str  # "Accept" | "Reject"
    failing_step: int | None = None
    reason: str | None = None
    message: str = ""
    premises_used: tuple = ()
    goal_matched: bool = False

    @property
    def accepted(self) -> bool:
        return self.verdict == "Accept"


class _StepFailure(Exception):
    def __init__(self, reason, message):
        assert reason in REASONS, reason
        self.reason, self.message = reason, message


# --------------------------------------------------------- tautologies

MAX_TAUT_ATOMS = 12


def skeleton(f: Formula):
    """Propositional skeleton: maximal non-boolean subformulas become atoms
    (alpha/AC-equal subformulas share one)."""
    table: dict[str, str] = {}

    def go(g):
        if isinstance(g, (Not, And, Or, Implies, Iff)):
            return rebuild(g, [go(k) for k in children(g)])
        k = key(g)
        if k not in table:
            table[k] = f"s{len(table)}"
        return Atom(table[k])

    return go(f), len(table)


def is_tautology(f: Formula) -> bool:
    sk, n = skeleton(f)
    if n > MAX_TAUT_ATOMS:
        raise SchemaError(f"tautology check limited to {MAX_TAUT_ATOMS} atoms, got {n}")
    prog = evalcore.compile_formula(sk, {f"s{i}": i for i in range(n)})
    return evalcore.scan_valuations(prog, 1, [0], [0], [0], n, False) < 0


# -------------------------------------------------------------- unfolding


def occurrences(f: Formula, d: Definition) -> list:
    """Paths (child-index tuples) of definiendum instances in pre-order."""
    out = []

    def go(g, path):
        if d.match(g) is not None:
            out.append(path)
        for i, k in enumerate(children(g)):
            go(k, path + (i,))

    go(f, ())
    return out


def _replace_at(f, path, fn):
    if not path:
        return fn(f)
    kids = list(children(f))
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], fn)
    return rebuild(f, kids)


def unfold_at(f: Formula, d: Definition, position: int) -> Formula | None:
    """Replace the ``position``-th (1-based) definiendum instance of the
    normalized ``f`` by its definiens; None if there is no such instance."""
    nf = normalize(f)
    occ = occurrences(nf, d)
    if not 1 <= position <= len(occ):
        return None
    return _replace_at(nf, occ[position - 1], lambda g: d.expand(d.match(g)))


# ---------------------------------------------------------------- checker


def check_proof(
    system: FormalSystem, proof: Proof, goal: Formula, premises: Mapping[str, Formula] | None = None
) -> CheckReport:
    """Validate every step against its justification, then the goal."""
    return check_suffix(system, proof, goal, premises, 0, {})


def check_suffix(system, proof, goal, premises, start: int, known: dict) -> CheckReport:
    """Check ``proof.steps[start:]`` given the results ``known`` for the
    steps before ``start`` (as recorded by :func:`step_results`)."""
    premises = dict(premises or {})
    known = dict(known)
    last_id = proof.steps[start - 1].id if start else None
    for step in proof.steps[start:]:
        try:
            if last_id is not None and step.id <= last_id:
                raise _StepFailure("bad-step-id", f"step ids must increase ({step.id} after {last_id})")
            deps = _check_step(system, step, known, premises)
        except _StepFailure as e:
            return CheckReport("Reject", step.id, e.reason, e.message)
        known[step.id] = (key(step.formula), deps, step.formula)
        last_id = step.id
    if not proof.steps:
        return CheckReport("Reject", None, "goal-mismatch", "empty proof")
    final_key, deps, _ = known[proof.steps[-1].id]
    used = tuple(sorted(deps))
    if final_key != key(goal):
        return CheckReport(
            "Reject", proof.steps[-1].id, "goal-mismatch",
            f"last step proves {render(proof.steps[-1].formula)}, goal is {render(goal)}", used, False,
        )
    return CheckReport("Accept", None, None, "", used, True)


def step_results(system, proof, premises) -> list:
    """Per-step (id, (key, premise deps, formula)) of an accepted proof."""
    known, out = {}, []
    premises = dict(premises or {})
    for step in proof.steps:
        deps = _check_step(system, step, known, premises)
        known[step.id] = (key(step.formula), deps, step.formula)
        out.append((step.id, known[step.id]))
    return out


def _get(known, i, cited_by):
    if i not in known:
        raise _StepFailure("unknown-dependency", f"step {cited_by} cites missing step {i}")
    return known[i]


def _need_rule(system, rule):
    if rule not in system.rules:
        raise _StepFailure("rule-disabled", f"rule {rule} is not part of {system.name}")


def _check_step(system, step, known, premises) -> frozenset:
    j = step.just
    k = key(step.formula)
    if isinstance(j, AxiomJ):
        schema = system.schema(j.schema)
        if schema is None:
            raise _StepFailure("bad-instantiation", f"{j.schema} is not a schema of {system.name}")
        if schema is TAUT or schema.name == "TAUT":
            try:
                ok = is_tautology(step.formula)
            except SchemaError as e:
                raise _StepFailure("bad-instantiation", str(e)) from None
            if not ok:
                raise _StepFailure("bad-instantiation", "not a propositional tautology")
            return frozenset()
        try:
            inst = schema.instantiate(dict(j.bindings), system.wrap)
        except (SchemaError, ValueError) as e:
            raise _StepFailure("bad-instantiation", str(e)) from None
        if key(inst) != k:
            raise _StepFailure("bad-instantiation", f"{j.schema} instance is {render(inst)}")
        return frozenset()
    if isinstance(j, PremiseJ):
        if j.name not in premises:
            raise _StepFailure("unknown-premise", f"no premise named {j.name}")
        if key(premises[j.name]) != k:
            raise _StepFailure("unknown-premise", f"premise {j.name} states {render(premises[j.name])}")
        return frozenset({j.name})
    if isinstance(j, MP):
        _need_rule(system, "mp")
        ka, da, _ = _get(known, j.minor, step.id)
        _, db, fb = _get(known, j.major, step.id)
        if not isinstance(fb, Implies):
            raise _StepFailure("bad-mp", f"step {j.major} is not an implication")
        if key(fb.left) != ka or key(fb.right) != k:
            raise _StepFailure("bad-mp", f"step {j.major} does not take step {j.minor} to this formula")
        return da | db
    if isinstance(j, Nec):
        _need_rule(system, "nec")
        ka, da, fa = _get(known, j.src, step.id)
        if da:
            raise _StepFailure("nec-on-premise", f"step {j.src} depends on premises {sorted(da)}")
        if key(Box(fa)) != k:
            raise _StepFailure("bad-instantiation", f"necessitation of step {j.src} gives []({render(fa)})")
        return frozenset()
    if isinstance(j, (GenI, GenP)):
        rule, kind = ("gen-i", "ind") if isinstance(j, GenI) else ("gen-p", "prop")
        _need_rule(system, rule)
        _, da, fa = _get(known, j.src, step.id)
        for p in sorted(da):
            if (kind, j.var) in free_variables(premises[p]):
                raise _StepFailure("capture", f"{j.var} is free in premise {p}")
        try:
            q = system.wrap(IQuant(Mode.ALL, j.var, fa)) if kind == "ind" else PQuant(Mode.ALL, j.var, fa)
        except ValueError as e:
            raise _StepFailure("bad-generalization", str(e)) from None
        if key(q) != k:
            raise _StepFailure("bad-generalization", f"generalizing step {j.src} gives {render(q)}")
        return da
    if isinstance(j, Unfold):
        _need_rule(system, "unfold")
        d = system.definition(j.definition)
        if d is None:
            raise _StepFailure("bad-unfold", f"{j.definition} is not a definition of {system.name}")
        ka, da, fa = _get(known, j.src, step.id)
        forward = unfold_at(fa, d, j.position)
        if forward is not None and key(forward) == k:
            return da
        backward = unfold_at(step.formula, d, j.position)
        if backward is not None and key(backward) == ka:
            return da
        raise _StepFailure("bad-unfold", f"{j.definition} at position {j.position} does not relate the steps")
    raise _StepFailure("bad-instantiation", f"unknown justification {j!r}")
