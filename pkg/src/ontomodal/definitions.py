"""Definitional equivalences for God-likeness, essence and necessary
existence, used by the proof checker's unfold rule and by the evaluator."""
from __future__ import annotations

from dataclasses import dataclass

from .formula import Apply, Ess, Formula, Prop, substitute
from .parser import parse


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple  # ((kind, name), ...)
    definiendum: Formula
    definiens: Formula

    def match(self, g: Formula):
        """Bindings if ``g`` is an instance of the definiendum, else None."""
        d = self.definiendum
        if isinstance(d, Apply) and isinstance(g, Apply) and g.prop == d.prop:
            return {self.params[0]: g.arg}
        if isinstance(d, Ess) and isinstance(g, Ess):
            return {self.params[0]: g.prop, self.params[1]: g.arg}
        return None

    def expand(self, bindings) -> Formula:
        return substitute(self.definiens, bindings)

    def transformed(self, fn, suffix="") -> "Definition":
        return Definition(self.name, self.params, self.definiendum, fn(self.definiens))


def _d(name, params, lhs, rhs):
    return Definition(name, params, parse(lhs), parse(rhs))


DEF_G = _d("DEF-G", (("ind", "x"),), "G(x)", "allp phi. Pos(phi) -> phi(x)")
DEF_ESS = _d(
    "DEF-ESS",
    (("prop", "phi"), ("ind", "x")),
    "Ess(phi,x)",
    "phi(x) & allp psi. psi(x) -> [] all y. phi(y) -> psi(y)",
)
# "[] ex phi(x)" read as [] ex y. phi(y)
DEF_NE = _d("DEF-NE", (("ind", "x"),), "NE(x)", "allp phi. Ess(phi,x) -> [] ex y. phi(y)")

DEFINITIONS = {d.name: d for d in (DEF_G, DEF_ESS, DEF_NE)}

assert isinstance(DEF_G.definiendum, Apply) and DEF_G.definiendum.prop == Prop("G", True)
