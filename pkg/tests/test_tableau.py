import random

import pytest
from hypothesis import assume, given

from ontomodal.formula import Box, Dia, subformulas
from ontomodal.generators import random_modal
from ontomodal.kripke import Countermodel, check_frame_class, eval_all, parse_model
from ontomodal.oracle import bruteforce_sat
from ontomodal.parser import parse
from ontomodal.tableau import TableauError, decide_sat, decide_valid, extract_countermodel
from oracles import atoms_of, naive_sat_s5, naive_valid
from strategies import modal

SYSTEMS = ("K", "T", "S4", "S5")
REQUIRED = {
    "K": set(),
    "T": {"reflexive"},
    "S4": {"reflexive", "transitive"},
    "S5": {"equivalence"},
}


class TestExamples:
    def test_contradiction(self):
        for s in SYSTEMS:
            assert decide_sat(parse("p & ~p"), s).verdict == "UNSAT"

    def test_s5_two_worlds(self):
        r = decide_sat(parse("<>p & <>~p"), "S5")
        assert r.sat and len(r.model.worlds) == 2

    def test_eq13_system_dependence(self):
        f = parse("<>[]p -> []p")
        assert decide_valid(f, "S5")
        r = decide_valid(f, "T")
        assert isinstance(r, Countermodel)
        assert r.world not in eval_all(r.model, f)
        assert "reflexive" in check_frame_class(r.model)
        assert not naive_valid(f, "T", 2)

    def test_k_valid(self):
        assert decide_valid(parse("[](p -> q) -> []p -> []q"), "K")

    def test_t_not_k(self):
        assert isinstance(decide_valid(parse("[]p -> p"), "K"), Countermodel)
        assert decide_valid(parse("[]p -> p"), "T")

    def test_s4_not_t(self):
        f = parse("[]p -> [][]p")
        assert isinstance(decide_valid(f, "T"), Countermodel)
        assert decide_valid(f, "S4")

    def test_s5_not_s4(self):
        f = parse("<>p -> []<>p")
        assert isinstance(decide_valid(f, "S4"), Countermodel)
        assert decide_valid(f, "S5")

    def test_unknown_system(self):
        with pytest.raises(TableauError):
            decide_sat(parse("p"), "KD45")


class TestCountermodel:
    def test_extract_round_trip(self):
        f = parse("<>[]p -> []p")
        r = decide_sat(parse("~(<>[]p -> []p)"), "T")
        m = parse_model(extract_countermodel(r))
        assert r.root not in eval_all(m, f)

    def test_extract_unsat_raises(self):
        with pytest.raises(TableauError):
            extract_countermodel(decide_sat(parse("p & ~p"), "K"))

    @pytest.mark.parametrize("system", SYSTEMS)
    @given(modal)
    def test_models_in_class_and_verified(self, system, f):
        r = decide_sat(f, system)
        if r.sat:
            assert r.root in eval_all(r.model, f)
            assert REQUIRED[system] <= check_frame_class(r.model)


class TestOracleAgreement:
    @pytest.mark.parametrize("system", SYSTEMS)
    def test_random(self, system):
        rng = random.Random(11)
        for _ in range(200):
            f = random_modal(rng, atoms=("p", "q"), depth=3, size=6)
            assert decide_sat(f, system).sat == bruteforce_sat(f, system)[0], f

    @given(modal)
    def test_s5_naive(self, f):
        # a satisfiable S5 formula has a cluster model with at most one world
        # per modal subformula plus the root, and no two worlds alike
        bound = min(1 + sum(isinstance(g, (Box, Dia)) for g in set(subformulas(f))), 2 ** len(atoms_of(f)))
        assume(bound <= 4)
        assert decide_sat(f, "S5").sat == naive_sat_s5(f, bound)

    @pytest.mark.parametrize("system", SYSTEMS)
    def test_valid_means_valid_on_small_frames(self, system):
        rng = random.Random(3)
        for _ in range(60):
            f = random_modal(rng, atoms=("p", "q"), depth=2, size=5)
            if decide_valid(f, system):
                assert naive_valid(f, system, 2)


class TestDeterminism:
    @given(modal)
    def test_repeatable(self, f):
        a, b = decide_sat(f, "S4"), decide_sat(f, "S4")
        assert a.verdict == b.verdict
        assert a.model == b.model
