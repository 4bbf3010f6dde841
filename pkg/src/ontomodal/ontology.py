"""The ontological system O: S5 plus five positivity axioms, three
definitions, and first/second-order quantifier logic."""
from __future__ import annotations

from importlib import resources

from .definitions import DEF_ESS, DEF_G, DEF_NE
from .hilbert import QUANTIFIER_SCHEMAS, FormalSystem, builtin_system, pattern_schema
from .kripke import format_model
from .parser import parse, render
from .proofscript import Script, parse_script
from .tableau import decide_valid

AXIOMS = {
    "AX1": "Pos(~phi) <-> ~Pos(phi)",
    # boxed form, as used when the axiom is applied
    "AX2": "Pos(phi) & [](all x. phi(x) -> psi(x)) -> Pos(psi)",
    "AX3": "Pos(G)",
    "AX4": "Pos(phi) -> []Pos(phi)",
    "AX5": "Pos(NE)",
    "AX6": "[] A+ ~Pos(phi)",
}
_AXIOM_KINDS = {
    "AX1": {"phi": "prop"},
    "AX2": {"phi": "prop", "psi": "prop"},
    "AX3": {},
    "AX4": {"phi": "prop"},
    "AX5": {},
    "AX6": {"phi": "prop"},
}


def axiom(name: str):
    return pattern_schema(name, AXIOMS[name], **_AXIOM_KINDS[name])


def system_O() -> FormalSystem:
    s5 = builtin_system("S5")
    return FormalSystem(
        "O",
        s5.schemas + tuple(axiom(f"AX{i}") for i in range(1, 6)),
        frozenset({"mp", "nec", "gen-i", "gen-p", "unfold"}),
        (DEF_G, DEF_ESS, DEF_NE),
        QUANTIFIER_SCHEMAS,
    )


# ---------------------------------------------------------- shipped scripts


def script_text(name: str) -> str:
    return resources.files("ontomodal").joinpath("scripts", f"{name}.proof").read_text("utf-8")


def load_script(name: str) -> Script:
    return parse_script(script_text(name))


def script_theorem1() -> Script:
    return load_script("theorem1")


def script_theorem2() -> Script:
    return load_script("theorem2")


def script_main_theorem() -> Script:
    return load_script("main")


# ------------------------------------------------------------ modal collapse

COLLAPSE_THESIS = "<>p -> []p"


def collapse_report() -> str:
    """Countermodel for the collapse schema in bare S5, and the status of
    its derivation inside O."""
    f = parse(COLLAPSE_THESIS)
    r = decide_valid(f, "S5")
    lines = ["thesis: " + COLLAPSE_THESIS, "system: S5"]
    if r:
        lines.append("s5-verdict: Valid")
    else:
        lines += [
            "s5-verdict: Countermodel",
            f"worlds: {len(r.model.worlds)}",
            f"refuting-world: {r.world}",
            "model:",
        ]
        lines += ["  " + ln for ln in format_model(r.model).splitlines()]
    # instance level: one collapse instance already makes p rigid
    inst = parse(f"({COLLAPSE_THESIS}) -> (p <-> []p)")
    lines.append(f"instance-check: {render(inst)}: " + ("Valid" if decide_valid(inst, "S5") else "Countermodel"))
    lines += [
        "o-derivation: not mechanized",
        "note: the collapse is claimed for O as a whole; no derivation is supplied, so none is checked",
    ]
    return "\n".join(lines) + "\n"
