"""Bitmask evaluation of propositional modal/temporal formulas.

Uses the compiled ``_evalcore`` extension when it imports, otherwise the
pure-Python ``_evalcore_py``. Set ``ONTOMODAL_PURE=1`` to force the
fallback.
"""
from __future__ import annotations

import os

from . import _evalcore_py
from .formula import (
    And,
    Atom,
    Box,
    Dia,
    Formula,
    Iff,
    Implies,
    Mode,
    Not,
    Or,
    Tag,
    Temporal,
)

if os.environ.get("ONTOMODAL_PURE"):
    _impl = _evalcore_py
else:
    try:
        from . import _evalcore as _impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _impl = _evalcore_py

BACKEND = "compiled" if _impl is not _evalcore_py else "python"

_BIN = {And: _evalcore_py.AND, Or: _evalcore_py.OR, Implies: _evalcore_py.IMP, Iff: _evalcore_py.IFF}
_TEMP = {
    (Tag.PAST, Mode.ALL): _evalcore_py.PALL,
    (Tag.PAST, Mode.EX): _evalcore_py.PEX,
    (Tag.FUTURE, Mode.ALL): _evalcore_py.FALL,
    (Tag.FUTURE, Mode.EX): _evalcore_py.FEX,
}


class Unsupported(ValueError):
    """Formula outside the propositional modal/temporal fragment."""

    def __init__(self, sub: Formula):
        from .parser import render

        self.subformula = sub
        super().__init__(f"unsupported construct: {render(sub)}")


def compile_formula(f: Formula, atom_index: dict[str, int]) -> list[int]:
    """Postfix program for ``f``; raises :class:`Unsupported` on
    quantifiers, positivity, application, essence and predicates."""
    prog: list[int] = []

    def go(g):
        if isinstance(g, Atom) and not g.args:
            prog.extend((_evalcore_py.ATOM, atom_index[g.name]))
        elif isinstance(g, Not):
            go(g.body)
            prog.append(_evalcore_py.NOT)
        elif type(g) in _BIN:
            go(g.left)
            go(g.right)
            prog.append(_BIN[type(g)])
        elif isinstance(g, Box):
            go(g.body)
            prog.append(_evalcore_py.BOX)
        elif isinstance(g, Dia):
            go(g.body)
            prog.append(_evalcore_py.DIA)
        elif isinstance(g, Temporal):
            go(g.body)
            prog.append(_TEMP[(g.tag, g.mode)])
        else:
            raise Unsupported(g)

    go(f)
    return prog


def eval_mask(prog, n, succ, past, fut, atoms) -> int:
    if n > 63 or len(atoms) > 64:
        # beyond one machine word; Python ints have no width limit
        return _evalcore_py.eval_mask(prog, n, succ, past, fut, atoms)
    return _impl.eval_mask(prog, n, succ, past, fut, atoms)


def scan_valuations(prog, n, succ, past, fut, n_atoms, want_sat) -> int:
    return _impl.scan_valuations(prog, n, succ, past, fut, n_atoms, want_sat)
