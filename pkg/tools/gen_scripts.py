"""Regenerate the shipped proof scripts under src/ontomodal/scripts.

    python3 tools/gen_scripts.py          # write files
    python3 tools/gen_scripts.py --check  # exit 1 if files are stale
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ontomodal.ontology import system_O
from ontomodal.parser import parse, render
from ontomodal.proofscript import ProofBuilder, Script, format_script
from ontomodal.systems import system_by_name
from ontomodal.temporal import BREAK, TEMPORALIZE, transform_script

OUT = Path(__file__).resolve().parent.parent / "src" / "ontomodal" / "scripts"

LEMMA1 = "all x. allp psi. G(x) & psi(x) -> Pos(psi)"
EX_G = "ex x. G(x)"
BRIDGE = "[] A+ ~Pos(G) -> [] ~E+ ex x. G(x)"


def _t1_body(b: ProofBuilder) -> int:
    """Pos(phi) -> <> ex x. phi(x), premise-free."""
    b.note("suppose ~<> ex x. phi(x); then [] all x. phi(x) -> psi(x) for every psi")
    s = b.taut("~phi(x) -> phi(x) -> psi(x)")
    s = b.geni(s, "x")
    k = b.axiom("QK", x="x", A="~phi(x)", B="phi(x) -> psi(x)")
    s = b.mp(s, k)
    e = b.axiom("EDEF", x="x", A="phi(x)")
    s = b.chain("~(ex x. phi(x)) -> all x. phi(x) -> psi(x)", e, s)
    s = b.nec(s)
    k = b.axiom("EQ9", phi="~ex x. phi(x)", psi="all x. phi(x) -> psi(x)")
    s = b.mp(s, k)
    d = b.axiom("EQ4", phi="ex x. phi(x)")
    s = b.chain("~<>(ex x. phi(x)) -> [](all x. phi(x) -> psi(x))", d, s)
    s = b.genp(s, "psi")
    b.note("instantiate psi := ~phi")
    s = b.mp(s, b.axiom("UIP", F="psi", T="~phi", A="~<>(ex x. phi(x)) -> [](all x. phi(x) -> psi(x))"))
    b.note("axiom 2 with psi := ~phi, then axiom 1: contradiction")
    a2 = b.axiom("AX2", phi="phi", psi="~phi")
    a1 = b.axiom("AX1", phi="phi")
    return b.chain("Pos(phi) -> <> ex x. phi(x)", a2, a1, s)


def _t2_body(b: ProofBuilder, lemma: int) -> int:
    """G(x) -> Ess(G,x) from step ``lemma``: G(x) & psi(x) -> Pos(psi)."""
    b.note("Pos(psi) -> all y. G(y) -> psi(y), by the definition of G")
    s = b.taut("G(y) -> G(y)")
    s = b.unfold(s, "DEF-G", 2)
    u = b.axiom("UIP", F="phi", T="psi", A="Pos(phi) -> phi(y)")
    s = b.chain("G(y) -> Pos(psi) -> psi(y)", s, u)
    s = b.chain("Pos(psi) -> G(y) -> psi(y)", s)
    s = b.geni(s, "y")
    s = b.mp(s, b.axiom("QK", x="y", A="Pos(psi)", B="G(y) -> psi(y)"))
    v = b.axiom("VQ", x="y", A="Pos(psi)")
    s = b.chain("Pos(psi) -> all y. G(y) -> psi(y)", s, v)
    b.note("necessitate and distribute; positivity is necessary (axiom 4)")
    s = b.nec(s)
    s = b.mp(s, b.axiom("EQ9", phi="Pos(psi)", psi="all y. G(y) -> psi(y)"))
    a4 = b.axiom("AX4", phi="psi")
    s = b.chain("G(x) -> psi(x) -> [](all y. G(y) -> psi(y))", lemma, a4, s)
    b.note("generalize over psi and fold the definition of essence")
    s = b.genp(s, "psi")
    s = b.mp(s, b.axiom("QKP", F="psi", A="G(x)", B="psi(x) -> [](all y. G(y) -> psi(y))"))
    v = b.axiom("VQP", F="psi", A="G(x)")
    s = b.chain("G(x) -> (allp psi. psi(x) -> [](all y. G(y) -> psi(y)))", s, v)
    s = b.chain("G(x) -> G(x) & (allp psi. psi(x) -> [](all y. G(y) -> psi(y)))", s)
    return b.fold(s, "DEF-ESS", "G(x) -> Ess(G,x)")


def theorem1() -> Script:
    b = ProofBuilder(system_O())
    _t1_body(b)
    return b.script("Pos(phi) -> <> ex x. phi(x)")


def theorem2() -> Script:
    b = ProofBuilder(system_O(), {"LEMMA1-REPAIRED": parse(LEMMA1)})
    b.note("repaired lemma 1, instantiated at x and psi")
    s = b.premise("LEMMA1-REPAIRED")
    s = b.mp(s, b.axiom("UI", x="x", t="x", A="allp psi. G(x) & psi(x) -> Pos(psi)"))
    s = b.mp(s, b.axiom("UIP", F="psi", T="psi", A="G(x) & psi(x) -> Pos(psi)"))
    _t2_body(b, s)
    return b.script("G(x) -> Ess(G,x)")


def _main_body(b: ProofBuilder) -> int:
    b.note("repaired lemma 1 from axiom 1 and the definition of G")
    s = b.taut("G(x) -> G(x)")
    s = b.unfold(s, "DEF-G", 2)
    u = b.axiom("UIP", F="phi", T="~psi", A="Pos(phi) -> phi(x)")
    a1 = b.axiom("AX1", phi="psi")
    lemma = b.chain("G(x) & psi(x) -> Pos(psi)", s, u, a1)
    ess = _t2_body(b, lemma)

    b.note("L3: G(x) -> NE(x) & Ess(G,x), from axiom 5")
    s = b.taut("G(x) -> G(x)")
    s = b.unfold(s, "DEF-G", 2)
    u = b.axiom("UIP", F="phi", T="NE", A="Pos(phi) -> phi(x)")
    a5 = b.axiom("AX5")
    ne = b.chain("G(x) -> NE(x)", s, u, a5)
    l3 = b.chain("G(x) -> NE(x) & Ess(G,x)", ne, ess)

    b.note("L4: ex x. G(x) -> [] ex x. G(x), unfolding NE")
    s = b.unfold(l3, "DEF-NE", 1)
    u = b.axiom("UIP", F="phi", T="G", A="Ess(phi,x) -> [] ex y. phi(y)")
    s = b.chain(f"G(x) -> [] {EX_G}", s, u)
    s = b.chain(f"~[]({EX_G}) -> ~G(x)", s)
    s = b.geni(s, "x")
    s = b.mp(s, b.axiom("QK", x="x", A=f"~[]({EX_G})", B="~G(x)"))
    v = b.axiom("VQ", x="x", A=f"~[]({EX_G})")
    s = b.chain(f"~[]({EX_G}) -> all x. ~G(x)", s, v)
    e = b.axiom("EDEF", x="x", A="G(x)")
    l4 = b.chain(f"({EX_G}) -> [] {EX_G}", s, e)

    b.note("L5: <> ex x. G(x) -> <>[] ex x. G(x)")
    s = b.chain(f"~[]({EX_G}) -> ~({EX_G})", l4)
    s = b.nec(s)
    s = b.mp(s, b.axiom("EQ9", phi=f"~[]({EX_G})", psi=f"~({EX_G})"))
    d1 = b.axiom("EQ4", phi=EX_G)
    d2 = b.axiom("EQ4", phi=f"[]({EX_G})")
    l5 = b.chain(f"<>({EX_G}) -> <>[]({EX_G})", s, d1, d2)

    b.note("L6: <> ex x. G(x) -> [] ex x. G(x), by the S5 schema")
    e13 = b.axiom("EQ13", phi=EX_G)
    l6 = b.chain(f"<>({EX_G}) -> []({EX_G})", l5, e13)

    b.note("L7: <> ex x. G(x), from theorem 1 and axiom 3")
    t1 = _t1_body(b)
    s = b.genp(t1, "phi")
    s = b.mp(s, b.axiom("UIP", F="phi", T="G", A="Pos(phi) -> <> ex x. phi(x)"))
    l7 = b.mp(b.axiom("AX3"), s)

    b.note("conclusion")
    return b.mp(l7, l6)


def main_theorem() -> Script:
    b = ProofBuilder(system_O())
    _main_body(b)
    return b.script(f"[] {EX_G}")


def _continue(base: Script, system_name: str, premises=()) -> ProofBuilder:
    """Builder seeded with the steps of an existing script."""
    b = ProofBuilder(system_by_name(system_name), list(base.premises) + list(premises))
    b.steps = list(base.proof.steps)
    b.comments = list(base.comments)
    return b


def temporalized() -> Script:
    target = system_by_name("O_T")
    moved = transform_script(main_theorem(), TEMPORALIZE, target)
    b = _continue(moved, "O_T")
    last = len(b.steps)
    past, fut = f"E- {EX_G}", f"E+ {EX_G}"
    b.note("distribute the box over the conjunction")
    d = b.axiom("EQ5", phi=past, psi=fut)
    b.chain(f"([] {past}) & ([] {fut})", last, d)
    return b.script(f"([] {past}) & ([] {fut})")


def _break_body(system_name: str, premises=()) -> tuple[ProofBuilder, int]:
    moved = transform_script(main_theorem(), BREAK, system_by_name(system_name))
    b = _continue(moved, system_name, premises)
    return b, len(b.steps)


_X = f"(E- {EX_G}) & ~E+ {EX_G}"
_Y = f"(E+ {EX_G}) & ~E- {EX_G}"
RIGID_SPLIT = f"[](({_X}) | ({_Y})) -> []({_X}) | []({_Y})"


def breaking() -> Script:
    b, last = _break_body("O_TB", [("RIGID-SPLIT", parse(RIGID_SPLIT))])
    b.note("split the necessary disjunction (assumed), then distribute each box")
    s = b.mp(last, b.premise("RIGID-SPLIT"))
    d1 = b.axiom("EQ5", phi=f"E- {EX_G}", psi=f"~E+ {EX_G}")
    d2 = b.axiom("EQ5", phi=f"E+ {EX_G}", psi=f"~E- {EX_G}")
    goal = f"([] E- {EX_G}) & ([] ~E+ {EX_G}) | ([] E+ {EX_G}) & ([] ~E- {EX_G})"
    b.chain(goal, s, d1, d2)
    return b.script(goal)


def gods_death() -> Script:
    b, last = _break_body("O_TB+AX6", [("BRIDGE", parse(BRIDGE))])
    b.note("no future positivity, hence by the bridge no future God-like being")
    a6 = b.axiom("AX6", phi="G")
    nofut = b.mp(a6, b.premise("BRIDGE"))
    b.note("inside the box the disjunction leaves only the past case")
    s = b.taut(f"({_X}) | ({_Y}) -> ~(E+ {EX_G}) -> E- {EX_G}")
    s = b.nec(s)
    s = b.mp(s, b.axiom("EQ9", phi=f"({_X}) | ({_Y})", psi=f"~(E+ {EX_G}) -> E- {EX_G}"))
    s = b.mp(last, s)
    s = b.mp(s, b.axiom("EQ9", phi=f"~E+ {EX_G}", psi=f"E- {EX_G}"))
    s = b.mp(nofut, s)
    goal = f"([] E- {EX_G}) & ([] ~ E+ {EX_G})"
    b.chain(goal, s, nofut)
    return b.script(goal)


HEADERS = {
    "theorem1": "Every positive property is possibly instantiated.",
    "theorem2": "Being God-like is the essence of any God-like individual.\n"
    "LEMMA1-REPAIRED restricts the lemma to God-like individuals.",
    "main": "Necessarily, a God-like being exists.",
    "temporalized": "Replay of the main theorem under temporalization, then box distribution.",
    "break": "Replay of the main theorem under symmetry-breaking temporalization.\n"
    "RIGID-SPLIT assumes the past/future alternative is settled necessarily.",
    "gods_death": "God-like beings existed and will not exist.\n"
    "BRIDGE links the absence of future positivity to the absence of future God-like beings.",
}
BUILDERS = {
    "theorem1": theorem1,
    "theorem2": theorem2,
    "main": main_theorem,
    "temporalized": temporalized,
    "break": breaking,
    "gods_death": gods_death,
}


def render_all() -> dict:
    files = {}
    index = ["# name system expected premises goal"]
    for name, build in BUILDERS.items():
        s = build()
        files[f"{name}.proof"] = format_script(s, HEADERS[name])
        used = ",".join(n for n, _ in s.premises) or "-"
        index.append(f"{name} {s.system} Accept {used} {render(s.goal)}")
    files["index.txt"] = "\n".join(index) + "\n"
    return files


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    stale = []
    for name, text in render_all().items():
        path = OUT / name
        if args.check:
            if not path.exists() or path.read_text("utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, "utf-8")
    if stale:
        print("stale: " + " ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
