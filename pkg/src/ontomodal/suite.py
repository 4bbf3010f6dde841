"""The shipped proof scripts: index and bulk checking."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .hilbert import CheckReport
from .ontology import load_script
from .parser import parse
from .systems import system_by_name


@dataclass(frozen=True)
class IndexEntry:
    name: str
    system: str
    expected: str
    premises: tuple
    goal: str


def shipped_index() -> list:
    text = resources.files("ontomodal").joinpath("scripts", "index.txt").read_text("utf-8")
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, system, expected, prem, goal = line.split(None, 4)
        premises = () if prem == "-" else tuple(prem.split(","))
        out.append(IndexEntry(name, system, expected, premises, goal))
    return out


@dataclass(frozen=True)
class SuiteRow:
    entry: IndexEntry
    report: CheckReport

    @property
    def ok(self) -> bool:
        e, r = self.entry, self.report
        return (
            r.verdict == e.expected
            and (not r.accepted or tuple(r.premises_used) == tuple(sorted(e.premises)))
        )


def run_all() -> list:
    rows = []
    for e in shipped_index():
        s = load_script(e.name)
        if s.system != e.system or s.goal != parse(e.goal):
            raise ValueError(f"index entry for {e.name} disagrees with the script header")
        rows.append(SuiteRow(e, s.check(system_by_name(s.system))))
    return rows
