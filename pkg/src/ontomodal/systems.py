"""Formal systems by name.

Names are ``BASE[_SUFFIX...][+SCHEMA...]``: a builtin or ontological base,
transformation suffixes applied left to right (``T`` temporalize, ``R``
time reversal, ``TB`` symmetry-breaking), and extra axioms to add.
"""
from __future__ import annotations

from .hilbert import FormalSystem, builtin_system
from .ontology import AXIOMS, axiom, system_O
from .temporal import TRANSFORMATIONS, transform_system

_BY_SUFFIX = {t.suffix: t for t in TRANSFORMATIONS.values()}


def system_by_name(name: str) -> FormalSystem:
    base, *extras = name.split("+")
    root, *suffixes = base.split("_")
    s = system_O() if root == "O" else builtin_system(root)
    for suf in suffixes:
        if suf not in _BY_SUFFIX:
            raise KeyError(f"unknown transformation suffix {suf!r} in {name!r}")
        s = transform_system(s, _BY_SUFFIX[suf])
    for x in extras:
        if x not in AXIOMS:
            raise KeyError(f"unknown axiom {x!r} in {name!r}")
        if s.schema(x) is None:
            s = s.with_schemas([axiom(x)])
    if extras:
        s = FormalSystem(name, s.schemas, s.rules, s.definitions, s.quantifier_schemas, s.wrap, s.transforms)
    return s


REGISTRY = ("T", "S4", "S5", "TMP", "O", "O_T", "O_TB", "O_TB+AX6")
