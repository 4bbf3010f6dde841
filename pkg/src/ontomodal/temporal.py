"""Temporalization, time reversal and symmetry-breaking temporalization,
lifted from formulas to formal systems and to proofs."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .formula import (
    And,
    Atom,
    Formula,
    IQuant,
    Mode,
    Not,
    Or,
    Tag,
    Temporal,
    children,
    key,
    normalize,
    rebuild,
)
from .hilbert import (
    TAUT,
    AxiomJ,
    AxiomSchema,
    CheckReport,
    FormalSystem,
    Proof,
    Step,
    Unfold,
    check_proof,
    coerce_binding,
    occurrences,
    temporal_schemas,
    unfold_at,
)
from .proofscript import Script

_HOLE = "__hole"


@dataclass(frozen=True)
class Transformation:
    """A structural formula map given by a local rewrite applied bottom-up."""

    name: str
    suffix: str
    local: Callable

    def __call__(self, f: Formula) -> Formula:
        return self.apply(f)

    def apply(self, f: Formula) -> Formula:
        kids = children(f)
        g = rebuild(f, [self.apply(k) for k in kids]) if kids else f
        return self.local(g)


def _both(q):
    if not isinstance(q, IQuant):
        return q
    return And(Temporal(Tag.PAST, q.mode, q), Temporal(Tag.FUTURE, q.mode, q))


def _swap(g):
    if not isinstance(g, Temporal):
        return g
    return Temporal(Tag.FUTURE if g.tag == Tag.PAST else Tag.PAST, g.mode, g.body)


def _exclusive(q):
    if not isinstance(q, IQuant):
        return q
    past, fut = Temporal(Tag.PAST, q.mode, q), Temporal(Tag.FUTURE, q.mode, q)
    return Or(And(past, Not(fut)), And(fut, Not(past)))


TEMPORALIZE = Transformation("temporalize", "T", _both)
TIME_REVERSE = Transformation("time-reverse", "R", _swap)
BREAK = Transformation("break", "TB", _exclusive)
TRANSFORMATIONS = {t.name: t for t in (TEMPORALIZE, TIME_REVERSE, BREAK)}


def temporalize(f: Formula) -> Formula:
    return TEMPORALIZE.apply(f)


def time_reverse(f: Formula) -> Formula:
    return TIME_REVERSE.apply(f)


def break_temporalize(f: Formula) -> Formula:
    return BREAK.apply(f)


# ---------------------------------------------------------------- systems


def _fill(f: Formula, body: Formula) -> Formula:
    if isinstance(f, Atom) and f.name == _HOLE:
        return body
    kids = children(f)
    return rebuild(f, [_fill(k, body) for k in kids]) if kids else f


def _compose_wrap(old: Callable, t: Transformation) -> Callable:
    """Rewrite for individual quantifier nodes in the transformed system:
    the old rewrite, then ``t`` on everything except the (already
    transformed) body."""

    def wrap(q):
        shell = t.apply(old(IQuant(q.mode, q.var, Atom(_HOLE))))
        return _fill(shell, q.body)

    return wrap


def transform_schema(s: AxiomSchema, t: Transformation) -> AxiomSchema:
    if s.pattern is None:
        return s  # tautologies and quantifier logic are carried over
    return replace(s, pattern=t.apply(s.pattern))


def transform_system(s: FormalSystem, t: Transformation) -> FormalSystem:
    schemas = tuple(transform_schema(x, t) for x in s.schemas)
    have = {x.name for x in schemas}
    schemas += tuple(x for x in temporal_schemas() if x.name not in have)
    return FormalSystem(
        f"{s.name}_{t.suffix}",
        schemas,
        s.rules,
        tuple(d.transformed(t.apply) for d in s.definitions),
        s.quantifier_schemas,
        _compose_wrap(s.wrap, t),
        s.transforms + (t.name,),
    )


def system_keys(s: FormalSystem) -> dict:
    """Normalized view of a system used to compare systems for equality:
    schema patterns, definitions and the quantifier rewrite."""
    probe = IQuant(Mode.ALL, "x", Atom("body"))
    return {
        "schemas": sorted(key(x.pattern) if x.pattern is not None else x.name for x in s.schemas),
        "definitions": sorted((d.name, key(d.definiens)) for d in s.definitions),
        "wrap": key(s.wrap(probe)) + "|" + key(s.wrap(IQuant(Mode.EX, "x", Atom("body")))),
    }


def systems_equal(a: FormalSystem, b: FormalSystem) -> bool:
    return system_keys(a) == system_keys(b)


# ------------------------------------------------------------------ replay


def _retarget_unfold(step: Step, prev: Formula, target: FormalSystem) -> Step:
    """Find an occurrence that relates the transformed steps."""
    j = step.just
    d = target.definition(j.definition)
    if d is None:
        return step
    n = max(len(occurrences(normalize(prev), d)), len(occurrences(normalize(step.formula), d)))
    order = [j.position] + [k for k in range(1, n + 1) if k != j.position]
    for k in order:
        fwd = unfold_at(prev, d, k)
        if fwd is not None and key(fwd) == key(step.formula):
            return replace(step, just=Unfold(j.src, j.definition, k))
        back = unfold_at(step.formula, d, k)
        if back is not None and key(back) == key(prev):
            return replace(step, just=Unfold(j.src, j.definition, k))
    return step


def transform_proof(proof: Proof, t: Transformation, target: FormalSystem) -> Proof:
    """Map every step formula and formula binding through ``t``.

    Unfold positions are searched afresh, since the transform can reorder
    occurrences. Nothing is checked here.
    """
    out, formulas = [], {}
    for st in proof.steps:
        f = t.apply(st.formula)
        j = st.just
        if isinstance(j, AxiomJ) and j.schema != TAUT.name:
            schema = target.schema(j.schema)
            kinds = dict(schema.metavars) if schema is not None else {}
            binds = []
            for n, v in j.bindings:
                if kinds.get(n) == "formula":
                    try:
                        v = t.apply(coerce_binding("formula", v))
                    except ValueError:
                        pass
                binds.append((n, v))
            j = AxiomJ(j.schema, tuple(binds))
        new = Step(st.id, f, j)
        if isinstance(j, Unfold) and j.src in formulas:
            new = _retarget_unfold(new, formulas[j.src], target)
        formulas[st.id] = f
        out.append(new)
    return Proof(tuple(out))


def transform_script(s: Script, t: Transformation, target: FormalSystem, name: str | None = None) -> Script:
    return Script(
        name or target.name,
        t.apply(s.goal),
        tuple((n, t.apply(f)) for n, f in s.premises),
        transform_proof(s.proof, t, target),
        s.comments,
    )


def replay_transformed(proof, t: Transformation, target: FormalSystem, goal=None, premises=None) -> CheckReport:
    """Transform a proof (or script) by ``t`` and check it in ``target``.

    Without an explicit goal the transformed last step is the goal.
    """
    if isinstance(proof, Script):
        goal = goal if goal is not None else t.apply(proof.goal)
        premises = premises if premises is not None else {n: t.apply(f) for n, f in proof.premises}
        proof = proof.proof
    moved = transform_proof(proof, t, target)
    if goal is None:
        goal = moved.steps[-1].formula if moved.steps else Atom("p")
    return check_proof(target, moved, goal, premises or {})
