"""Exhaustive satisfiability oracle, independent of the tableau.

S5: enumerate every cluster of distinct valuations (universal access) of
size up to ``#diamonds + 1`` and evaluate directly.

K, T, S4: the small-model bound for these logics (2^|closure| worlds) is
far out of reach of explicit frame enumeration, so the oracle enumerates
every world type instead -- every assignment to the atoms and box
subformulas -- and repeatedly deletes types whose diamond demands have no
surviving successor. The survivors form a finite model of the logic's
frame class (the filtration), so the check is exact. Any SAT answer is
turned into an explicit KripkeModel and re-evaluated.
"""
from __future__ import annotations

import itertools

from . import evalcore
from .formula import And, Atom, Box, Dia, Formula, Iff, Implies, Not, Or, subformulas
from .kripke import KripkeModel, eval_all, propositional_atoms

MAX_TYPE_BITS = 16


class OracleBoundError(ValueError):
    pass


def diamond_count(f: Formula) -> int:
    """Distinct diamond subformulas after pushing negations inward."""
    from .tableau import nnf

    seen = set()
    stack = [nnf(f)]
    while stack:
        g = stack.pop()
        if g[0] == "dia":
            seen.add(g)
        stack.extend(x for x in g[1:] if isinstance(x, tuple))
    return len(seen)


def bruteforce_sat(f: Formula, system: str) -> tuple[bool, KripkeModel | None, str | None]:
    """(satisfiable, model, world) by exhaustive enumeration."""
    if system == "S5":
        return _s5(f)
    if system in ("K", "T", "S4"):
        return _types(f, system)
    raise ValueError(f"unknown system {system!r}")


# ------------------------------------------------------------------ S5


def _s5(f):
    atoms = propositional_atoms(f)
    prog = evalcore.compile_formula(f, {a: i for i, a in enumerate(atoms)})
    k = len(atoms)
    bound = min(diamond_count(f) + 1, 1 << k)
    for size in range(1, bound + 1):
        full = (1 << size) - 1
        succ = [full] * size
        zero = [0] * size
        for vals in itertools.combinations(range(1 << k), size):
            masks = [sum(1 << w for w, v in enumerate(vals) if v >> i & 1) for i in range(k)]
            out = evalcore.eval_mask(prog, size, succ, zero, zero, masks)
            if out:
                ws = tuple(f"w{i + 1}" for i in range(size))
                val = frozenset((ws[w], atoms[i]) for w, v in enumerate(vals) for i in range(k) if v >> i & 1)
                m = KripkeModel(ws, frozenset((a, b) for a in ws for b in ws), valuation=val)
                w = ws[(out & -out).bit_length() - 1]
                assert w in eval_all(m, f)
                return True, m, w
    return False, None, None


# -------------------------------------------------------- type elimination


def _core(f):
    """Rewrite into the basis atom / not / and / box."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(_core(f.body))
    if isinstance(f, And):
        return And(_core(f.left), _core(f.right))
    if isinstance(f, Or):
        return Not(And(Not(_core(f.left)), Not(_core(f.right))))
    if isinstance(f, Implies):
        return Not(And(_core(f.left), Not(_core(f.right))))
    if isinstance(f, Iff):
        a, b = _core(f.left), _core(f.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(f, Box):
        return Box(_core(f.body))
    if isinstance(f, Dia):
        return Not(Box(Not(_core(f.body))))
    raise evalcore.Unsupported(f)


def _types(f, system):
    core = _core(f)
    base = []
    for g in subformulas(core):
        if (isinstance(g, Atom) or isinstance(g, Box)) and g not in base:
            base.append(g)
    m = len(base)
    if m > MAX_TYPE_BITS:
        raise OracleBoundError(f"{m} base formulas exceeds the oracle bound {MAX_TYPE_BITS}")
    n = 1 << m
    everything = (1 << n) - 1
    basevec = []
    for j in range(m):
        v = 0
        for t in range(n):
            if t >> j & 1:
                v |= 1 << t
        basevec.append(v)
    memo = {}

    def vec(g):
        # bitset over types where g is true
        if g in memo:
            return memo[g]
        if isinstance(g, (Atom, Box)):
            r = basevec[base.index(g)]
        elif isinstance(g, Not):
            r = everything & ~vec(g.body)
        else:
            r = vec(g.left) & vec(g.right)
        memo[g] = r
        return r

    boxes = [(j, g) for j, g in enumerate(base) if isinstance(g, Box)]
    bodies = {j: vec(g.body) for j, g in boxes}
    alive = everything
    if system in ("T", "S4"):
        for j, _ in boxes:
            alive &= (everything & ~basevec[j]) | bodies[j]

    def succ(t):
        s = everything
        for j, _ in boxes:
            on = t >> j & 1
            if system == "K":
                if on:
                    s &= bodies[j]
            elif system == "T":
                if on:
                    s &= bodies[j]
            elif system == "S4":
                if on:
                    s &= basevec[j]
        return s

    changed = True
    while changed:
        changed = False
        t_iter = alive
        while t_iter:
            low = t_iter & -t_iter
            t = low.bit_length() - 1
            t_iter ^= low
            s = succ(t) & alive
            for j, _ in boxes:
                if not (t >> j & 1) and not (s & ~bodies[j]):
                    alive &= ~low
                    changed = True
                    break
    hit = alive & vec(core)
    if not hit:
        return False, None, None
    start = (hit & -hit).bit_length() - 1
    # the submodel generated by the witness type
    order, seen = [start], {start}
    i = 0
    while i < len(order):
        t = order[i]
        s = succ(t) & alive
        while s:
            low = s & -s
            u = low.bit_length() - 1
            s ^= low
            if u not in seen:
                seen.add(u)
                order.append(u)
        i += 1
    ws = tuple(f"w{i + 1}" for i in range(len(order)))
    access = frozenset(
        (ws[a], ws[b]) for a, ta in enumerate(order) for b, tb in enumerate(order) if succ(ta) >> tb & 1
    )
    val = frozenset(
        (ws[a], g.name) for a, t in enumerate(order) for j, g in enumerate(base) if isinstance(g, Atom) and t >> j & 1
    )
    model = KripkeModel(ws, access, valuation=val)
    assert ws[0] in eval_all(model, f), "oracle model fails verification"
    return True, model, ws[0]
