"""Labelled tableau decision procedure for K, T, S4 and S5.

Formulas are put in negation normal form and explored depth first.
Rule order is fixed: conjunctions, then disjunction branching (left
disjunct first), then successor creation for diamonds in the order they
entered the world. S4 uses ancestor subset blocking; S5 runs on a single
cluster where every world sees every world.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .evalcore import Unsupported
from .formula import And, Atom, Box, Dia, Formula, Iff, Implies, Not, Or
from .kripke import Countermodel, KripkeModel, Valid, eval_all, format_model

SYSTEMS = ("K", "T", "S4", "S5")


class TableauError(ValueError):
    pass


@dataclass
class Stats:
    nodes: int = 0
    worlds: int = 0


@dataclass(frozen=True)
class TableauResult:
    verdict: str  # "SAT" | "UNSAT"
    model: KripkeModel | None
    root: str | None
    stats: Stats = field(compare=False)

    @property
    def sat(self) -> bool:
        return self.verdict == "SAT"


# --------------------------------------------------------------- NNF
# ('lit', name, polarity) | ('and', a, b) | ('or', a, b) | ('box', a) | ('dia', a)


def nnf(f: Formula, positive: bool = True):
    if isinstance(f, Atom):
        if f.args:
            raise Unsupported(f)
        return ("lit", f.name, positive)
    if isinstance(f, Not):
        return nnf(f.body, not positive)
    if isinstance(f, And):
        return (("and" if positive else "or"), nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Or):
        return (("or" if positive else "and"), nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Implies):
        return nnf(Or(Not(f.left), f.right), positive)
    if isinstance(f, Iff):
        both = And(Implies(f.left, f.right), Implies(f.right, f.left))
        return nnf(both, positive)
    if isinstance(f, Box):
        return ("box" if positive else "dia", nnf(f.body, positive))
    if isinstance(f, Dia):
        return ("dia" if positive else "box", nnf(f.body, positive))
    raise Unsupported(f)


class _Closed(Exception):
    pass


def _saturate(start: dict, pending: list, reflexive: bool, stats: Stats):
    """Yield every propositionally saturated, clash-free extension."""
    s = dict(start)
    todo = list(pending)
    while todo:
        g = todo.pop(0)
        if g in s:
            continue
        s[g] = None
        stats.nodes += 1
        tag = g[0]
        if tag == "lit":
            if ("lit", g[1], not g[2]) in s:
                return
        elif tag == "and":
            todo.extend((g[1], g[2]))
        elif tag == "box" and reflexive:
            todo.append(g[1])
    for g in s:
        if g[0] == "or" and g[1] not in s and g[2] not in s:
            for d in (g[1], g[2]):
                yield from _saturate(s, [d], reflexive, stats)
            return
    yield s


# --------------------------------------------------------- K / T / S4


class _TreeProver:
    def __init__(self, system: str, stats: Stats):
        self.system = system
        self.reflexive = system in ("T", "S4")
        self.stats = stats

    def prove(self, formulas: list, ancestors: list):
        """Return (saturated set, [(kind, child)]) or None."""
        for s in _saturate({}, formulas, self.reflexive, self.stats):
            node = self._modal(s, ancestors)
            if node is not None:
                return node
        return None

    def _modal(self, s: dict, ancestors: list):
        boxes = [g for g in s if g[0] == "box"]
        inherited = [b[1] for b in boxes]
        if self.system == "S4":
            inherited = inherited + boxes
        me = {"set": s, "kids": []}
        chain = ancestors + [me]
        for g in s:
            if g[0] != "dia":
                continue
            need = [g[1]] + inherited
            if self.reflexive and all(n in s for n in need):
                me["kids"].append(("loop", me))
                continue
            if self.system == "S4":
                anc = next((a for a in chain if all(n in a["set"] for n in need)), None)
                if anc is not None:
                    me["kids"].append(("back", anc))
                    continue
            self.stats.nodes += 1
            child = self.prove(need, chain)
            if child is None:
                return None
            me["kids"].append(("tree", child))
        return me

    def model(self, root) -> tuple[KripkeModel, str]:
        order, index = [], {}

        def number(node):
            index[id(node)] = len(order)
            order.append(node)
            for kind, k in node["kids"]:
                if kind == "tree":
                    number(k)

        number(root)
        n = len(order)
        ws = tuple(f"w{i + 1}" for i in range(n))
        edges = set()
        for node in order:
            for _, k in node["kids"]:
                edges.add((index[id(node)], index[id(k)]))
        if self.reflexive:
            edges |= {(i, i) for i in range(n)}
        if self.system == "S4":
            changed = True
            while changed:
                changed = False
                for a, b in list(edges):
                    for c, d in list(edges):
                        if b == c and (a, d) not in edges:
                            edges.add((a, d))
                            changed = True
        val = frozenset(
            (ws[i], g[1]) for i, node in enumerate(order) for g in node["set"] if g[0] == "lit" and g[2]
        )
        access = frozenset((ws[a], ws[b]) for a, b in edges)
        return KripkeModel(ws, access, valuation=val), ws[0]


# ----------------------------------------------------------------- S5


class _ClusterProver:
    def __init__(self, stats: Stats):
        self.stats = stats

    def prove(self, worlds: list):
        """``worlds`` is a list of (set, pending) pairs."""
        # saturate every world, adding bodies of all boxes everywhere
        while True:
            bodies = []
            for s, _ in worlds:
                bodies.extend(g[1] for g in s if g[0] == "box")
            for s, pend in worlds:
                pend.extend(b for b in bodies if b not in s)
            idx = next((i for i, (_, p) in enumerate(worlds) if p), None)
            if idx is None:
                break
            s, pend = worlds[idx]
            branches = list(_saturate(s, pend, True, self.stats))
            if len(branches) != 1:
                for b in branches:
                    copy = [(dict(w), list(p)) for w, p in worlds]
                    copy[idx] = (b, [])
                    out = self.prove(copy)
                    if out is not None:
                        return out
                return None
            worlds[idx] = (branches[0], [])
        for s, _ in worlds:
            for g in s:
                if g[0] == "dia" and not any(g[1] in w for w, _ in worlds):
                    self.stats.nodes += 1
                    # reuse a world if possible; a fresh world is the last resort
                    for i in range(len(worlds)):
                        copy = [(dict(w), list(p)) for w, p in worlds]
                        copy[i][1].append(g[1])
                        out = self.prove(copy)
                        if out is not None:
                            return out
                    return self.prove(worlds + [({}, [g[1]])])
        return [w for w, _ in worlds]

    @staticmethod
    def model(sets) -> tuple[KripkeModel, str]:
        ws = tuple(f"w{i + 1}" for i in range(len(sets)))
        access = frozenset((a, b) for a in ws for b in ws)
        val = frozenset((ws[i], g[1]) for i, s in enumerate(sets) for g in s if g[0] == "lit" and g[2])
        return KripkeModel(ws, access, valuation=val), ws[0]


# ------------------------------------------------------------ public API


def decide_sat(f: Formula, system: str = "K") -> TableauResult:
    """Satisfiability of a propositional modal formula in K, T, S4 or S5.

    A SAT verdict carries a model that is re-checked with the evaluator
    before it is returned.
    """
    if system not in SYSTEMS:
        raise TableauError(f"unknown system {system!r}; expected one of {', '.join(SYSTEMS)}")
    root = nnf(f)
    stats = Stats()
    if system == "S5":
        prover = _ClusterProver(stats)
        sets = prover.prove([({}, [root])])
        if sets is None:
            return TableauResult("UNSAT", None, None, stats)
        model, w = prover.model(sets)
    else:
        prover = _TreeProver(system, stats)
        node = prover.prove([root], [])
        if node is None:
            return TableauResult("UNSAT", None, None, stats)
        model, w = prover.model(node)
    stats.worlds = len(model.worlds)
    if w not in eval_all(model, f):
        raise AssertionError(f"tableau model fails verification for {f}")
    return TableauResult("SAT", model, w, stats)


def decide_valid(f: Formula, system: str = "K"):
    """:class:`Valid` or the :class:`Countermodel` found for ``~f``."""
    r = decide_sat(Not(f), system)
    if r.sat:
        return Countermodel(r.model, r.root)
    return Valid()


def extract_countermodel(result) -> str:
    """Model text of a SAT result (or of a Countermodel)."""
    if isinstance(result, Countermodel):
        return format_model(result.model)
    if not isinstance(result, TableauResult) or not result.sat:
        raise TableauError("no model: verdict is UNSAT")
    return format_model(result.model)
