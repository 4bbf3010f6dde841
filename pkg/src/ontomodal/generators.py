"""Seeded random formula generators for property tests and benchmarks."""
from __future__ import annotations

import random

from .formula import (
    NAMED_PROPERTIES,
    And,
    Atom,
    Box,
    Dia,
    Ess,
    Iff,
    Implies,
    Ind,
    IQuant,
    Mode,
    Not,
    Or,
    Pos,
    PQuant,
    Prop,
    Tag,
    Temporal,
    apply,
    neg,
)

ATOMS = ("p", "q", "r")
INDS = ("x", "y", "z", "u")
PROPS = ("F", "H", "phi", "psi")
PREDS = ("R",)


def random_modal(rng: random.Random, atoms=ATOMS, depth: int = 4, size: int = 8):
    """Propositional modal formula with modal depth <= ``depth`` and about
    ``size`` connectives."""

    def go(d, budget):
        if budget <= 0:
            return Atom(rng.choice(atoms))
        r = rng.random()
        if r < 0.18:
            return Not(go(d, budget - 1))
        if r < 0.45 and d > 0:
            return (Box if rng.random() < 0.5 else Dia)(go(d - 1, budget - 1))
        op = rng.choice((And, And, Or, Or, Implies, Iff))
        left = rng.randint(0, budget - 1)
        return op(go(d, left), go(d, budget - 1 - left))

    return go(depth, rng.randint(1, size))


def _ind(rng, scope):
    pool = [n for k, n in scope if k == "ind"] + list(INDS)
    return Ind(rng.choice(pool))


def _prop(rng, scope, allow_neg=True):
    pool = [n for k, n in scope if k == "prop"] + list(PROPS)
    if rng.random() < 0.2:
        p = Prop(rng.choice(sorted(NAMED_PROPERTIES)), True)
    else:
        p = Prop(rng.choice(pool))
    if allow_neg and rng.random() < 0.25:
        return neg(p)
    return p


def random_formula(
    rng: random.Random,
    size: int = 10,
    temporal: bool = True,
    quantifiers: bool = True,
    modal: bool = True,
):
    """Formula over every constructor of the language."""

    def leaf(scope):
        r = rng.random()
        if r < 0.3:
            return Atom(rng.choice(ATOMS))
        if r < 0.4:
            return Atom(rng.choice(PREDS), (_ind(rng, scope), _ind(rng, scope)))
        if r < 0.55:
            return Pos(_prop(rng, scope))
        if r < 0.85:
            return apply(_prop(rng, scope), _ind(rng, scope))
        return Ess(_prop(rng, scope), _ind(rng, scope))

    def go(budget, scope):
        if budget <= 0:
            return leaf(scope)
        r = rng.random()
        if r < 0.12:
            return Not(go(budget - 1, scope))
        if r < 0.24 and modal:
            return (Box if rng.random() < 0.5 else Dia)(go(budget - 1, scope))
        if r < 0.34 and temporal:
            return Temporal(rng.choice(list(Tag)), rng.choice(list(Mode)), go(budget - 1, scope))
        if r < 0.46 and quantifiers:
            v = rng.choice(INDS)
            return IQuant(rng.choice(list(Mode)), v, go(budget - 1, scope + [("ind", v)]))
        if r < 0.54 and quantifiers:
            v = rng.choice(PROPS)
            return PQuant(rng.choice(list(Mode)), v, go(budget - 1, scope + [("prop", v)]))
        op = rng.choice((And, Or, Implies, Iff))
        left = rng.randint(0, budget - 1)
        return op(go(left, scope), go(budget - 1 - left, scope))

    return go(rng.randint(0, size), [])
