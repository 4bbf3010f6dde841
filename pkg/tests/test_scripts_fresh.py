import subprocess
import sys
from pathlib import Path

import pytest

from ontomodal.mutation import connective_mutants, mutate_script
from ontomodal.ontology import load_script
from ontomodal.parser import parse
from ontomodal.systems import system_by_name

ROOT = Path(__file__).resolve().parents[1]


def test_shipped_scripts_match_generator():
    r = subprocess.run([sys.executable, str(ROOT / "tools" / "gen_scripts.py"), "--check"], capture_output=True, text=True)
    assert r.returncode == 0, r.stdout + r.stderr


class TestMutants:
    def test_binary_swaps(self):
        got = {str(m) for m in connective_mutants(parse("p & q"))}
        assert {str(parse(t)) for t in ("p | q", "p -> q", "p <-> q")} <= got

    def test_modal_flip_and_negation_drop(self):
        got = {str(m) for m in connective_mutants(parse("~[]p"))}
        assert str(parse("~<>p")) in got and str(parse("[]p")) in got

    def test_mutants_differ(self):
        f = parse("[](p -> E+ ex x. G(x))")
        assert all(m != f for m in connective_mutants(f))


@pytest.mark.parametrize("name", ["theorem1", "theorem2"])
def test_mutation_resistance(name):
    s = load_script(name)
    rep = mutate_script(s, system_by_name(s.system))
    assert rep.deletion_rate == 1.0
    assert rep.mutant_rate >= 0.95
