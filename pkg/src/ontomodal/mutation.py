"""Mutation testing for proof scripts: single-step deletions and
single-connective changes of step formulas must be rejected."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

from .formula import (
    And,
    Box,
    Dia,
    Formula,
    Iff,
    Implies,
    IQuant,
    Mode,
    Not,
    Or,
    PQuant,
    Tag,
    Temporal,
    children,
    rebuild,
)
from .hilbert import FormalSystem, Proof, check_suffix, step_results
from .parser import render
from .proofscript import Script

_BINARY = (And, Or, Implies, Iff)


def _local_mutants(g: Formula) -> list:
    out = []
    if isinstance(g, _BINARY):
        out += [op(g.left, g.right) for op in _BINARY if op is not type(g)]
    elif isinstance(g, Box):
        out.append(Dia(g.body))
    elif isinstance(g, Dia):
        out.append(Box(g.body))
    elif isinstance(g, Not):
        out.append(g.body)
    elif isinstance(g, (IQuant, PQuant)):
        out.append(replace(g, mode=Mode.EX if g.mode == Mode.ALL else Mode.ALL))
    elif isinstance(g, Temporal):
        out.append(replace(g, mode=Mode.EX if g.mode == Mode.ALL else Mode.ALL))
        out.append(replace(g, tag=Tag.FUTURE if g.tag == Tag.PAST else Tag.PAST))
    return out


def connective_mutants(f: Formula) -> Iterator[Formula]:
    """Every formula differing from ``f`` in exactly one connective."""
    yield from _local_mutants(f)
    kids = children(f)
    for i, k in enumerate(kids):
        for m in connective_mutants(k):
            new = list(kids)
            new[i] = m
            yield rebuild(f, new)


@dataclass
class MutationReport:
    deletions: int = 0
    deletions_rejected: int = 0
    mutants: int = 0
    mutants_rejected: int = 0
    survivors: list = field(default_factory=list)  # (kind, step id, formula text)

    @property
    def deletion_rate(self) -> float:
        return self.deletions_rejected / self.deletions if self.deletions else 1.0

    @property
    def mutant_rate(self) -> float:
        return self.mutants_rejected / self.mutants if self.mutants else 1.0


def mutate_script(script: Script, system: FormalSystem, limit_per_step: int | None = None) -> MutationReport:
    """Check every deletion and connective mutant of ``script``.

    The unchanged prefix before a mutated step is checked once and reused.
    """
    rep = MutationReport()
    steps = script.proof.steps
    prefix = step_results(system, script.proof, script.premise_map)

    def rejected(i, new_steps):
        known = dict(prefix[:i])
        r = check_suffix(system, Proof(new_steps), script.goal, script.premise_map, i, known)
        return not r.accepted

    for i, st in enumerate(steps):
        rep.deletions += 1
        if rejected(i, steps[:i] + steps[i + 1:]):
            rep.deletions_rejected += 1
        else:
            rep.survivors.append(("delete", st.id, render(st.formula)))
    for i, st in enumerate(steps):
        for n, m in enumerate(connective_mutants(st.formula)):
            if limit_per_step is not None and n >= limit_per_step:
                break
            rep.mutants += 1
            if rejected(i, steps[:i] + (replace(st, formula=m),) + steps[i + 1:]):
                rep.mutants_rejected += 1
            else:
                rep.survivors.append(("mutate", st.id, render(m)))
    return rep
