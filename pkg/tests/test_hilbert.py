import itertools
import random
from dataclasses import replace

import pytest

from ontomodal.definitions import DEF_ESS, DEF_G
from ontomodal.formula import Box, key
from ontomodal.generators import random_modal
from ontomodal.hilbert import (
    MP,
    QUANTIFIER_SCHEMAS,
    REASONS,
    TAUT,
    AxiomJ,
    FormalSystem,
    GenI,
    GenP,
    Nec,
    PremiseJ,
    Proof,
    SchemaError,
    Step,
    Unfold,
    builtin_system,
    check_proof,
    is_tautology,
    occurrences,
    unfold_at,
)
from ontomodal.kripke import FrameClass, bruteforce_validity
from ontomodal.ontology import system_O
from ontomodal.parser import parse, render
from oracles import atoms_of, naive_eval

S5 = builtin_system("S5")


def proof(*rows):
    return Proof(tuple(Step(i, parse(f) if isinstance(f, str) else f, j) for i, f, j in rows))


def truth_table(f):
    atoms = sorted(atoms_of(f))
    for bits in itertools.product((0, 1), repeat=len(atoms)):
        val = {("w", a) for a, b in zip(atoms, bits) if b}
        if not naive_eval(["w"], set(), val, "w", f):
            return False
    return True


class TestSchemas:
    def test_eq1_instance(self):
        assert S5.schema("EQ1").instantiate({"phi": "p"}) == parse("[]p -> p")

    def test_eq9_instance(self):
        got = S5.schema("EQ9").instantiate({"phi": "p & q", "psi": "<>r"})
        assert key(got) == key(parse("[](p & q -> <>r) -> [](p & q) -> []<>r"))

    def test_missing_binding(self):
        with pytest.raises(SchemaError):
            S5.schema("EQ5").instantiate({"phi": "p"})

    def test_extra_binding(self):
        with pytest.raises(SchemaError):
            S5.schema("EQ1").instantiate({"phi": "p", "chi": "q"})

    def test_kind_mismatch(self):
        with pytest.raises(SchemaError):
            system_O().schema("AX1").instantiate({"phi": "p & q"})

    def test_vacuous_side_condition(self):
        vq = next(s for s in QUANTIFIER_SCHEMAS if s.name == "VQ")
        assert key(vq.instantiate({"x": "x", "A": "p"})) == key(parse("p -> all x. p"))
        with pytest.raises(SchemaError):
            vq.instantiate({"x": "x", "A": "G(x)"})

    def test_universal_instantiation(self):
        ui = next(s for s in QUANTIFIER_SCHEMAS if s.name == "UI")
        got = ui.instantiate({"x": "x", "t": "y", "A": "G(x)"})
        assert key(got) == key(parse("(all x. G(x)) -> G(y)"))

    def test_builtin_counts(self):
        assert [len(builtin_system(n).schemas) for n in ("T", "S4", "S5", "TMP")] == [11, 13, 14, 3]
        assert builtin_system("TMP").rules == {"mp"}
        assert S5.rules == {"mp", "nec"}

    def test_unknown_system(self):
        with pytest.raises(KeyError):
            builtin_system("K45")

    def test_rules_required(self):
        with pytest.raises(ValueError):
            FormalSystem("X", (TAUT,), frozenset())
        with pytest.raises(ValueError):
            FormalSystem("X", (TAUT,), frozenset({"cut"}))


class TestTautology:
    @pytest.mark.parametrize("text", ["p | ~p", "(p -> q) -> ~q -> ~p", "[]p -> []p", "(ex x. G(x)) | ~ex y. G(y)"])
    def test_tautologies(self, text):
        assert is_tautology(parse(text))

    @pytest.mark.parametrize("text", ["p", "[]p -> p", "p -> q"])
    def test_non_tautologies(self, text):
        assert not is_tautology(parse(text))

    def test_atom_bound(self):
        f = parse(" | ".join(f"p{i}" for i in range(13)))
        with pytest.raises(SchemaError):
            is_tautology(f)

    def test_random_propositional(self):
        rng = random.Random(2)
        for _ in range(300):
            f = random_modal(rng, atoms=("p", "q", "r"), depth=0, size=7)
            assert is_tautology(f) == truth_table(f)


class TestUnfold:
    def test_positions(self):
        f = parse("G(x) & G(y)")
        assert len(occurrences(f, DEF_G)) == 2
        assert key(unfold_at(f, DEF_G, 1)) in {
            key(parse("(allp phi. Pos(phi) -> phi(x)) & G(y)")),
            key(parse("G(x) & allp phi. Pos(phi) -> phi(y)")),
        }
        assert unfold_at(f, DEF_G, 3) is None

    def test_ess(self):
        got = unfold_at(parse("Ess(G, x)"), DEF_ESS, 1)
        assert key(got) == key(parse("G(x) & allp psi. psi(x) -> [] all y. G(y) -> psi(y)"))


class TestChecker:
    def test_accepts_simple(self):
        p = proof(
            (1, "p -> p", AxiomJ("TAUT")),
            (2, "[](p -> p)", Nec(1)),
        )
        assert check_proof(S5, p, parse("[](p -> p)")).accepted

    def test_mp(self):
        p = proof(
            (1, "[]p", PremiseJ("A")),
            (2, "[]p -> p", AxiomJ("EQ1", (("phi", "p"),))),
            (3, "p", MP(1, 2)),
        )
        r = check_proof(S5, p, parse("p"), {"A": parse("[]p")})
        assert r.accepted and r.premises_used == ("A",)

    def _reject(self, system, p, goal, premises=None):
        r = check_proof(system, p, parse(goal), premises)
        assert not r.accepted
        assert r.reason in REASONS
        return r

    def test_bad_instantiation(self):
        r = self._reject(S5, proof((1, "p -> []p", AxiomJ("EQ1", (("phi", "p"),)))), "p -> []p")
        assert (r.failing_step, r.reason) == (1, "bad-instantiation")

    def test_not_tautology(self):
        assert self._reject(S5, proof((1, "p -> q", AxiomJ("TAUT"))), "p -> q").reason == "bad-instantiation"

    def test_bad_mp(self):
        p = proof((1, "p | ~p", AxiomJ("TAUT")), (2, "q -> q", AxiomJ("TAUT")), (3, "q", MP(1, 2)))
        assert self._reject(S5, p, "q").reason == "bad-mp"

    def test_nec_on_premise(self):
        p = proof((1, "p", PremiseJ("A")), (2, "[]p", Nec(1)))
        r = self._reject(S5, p, "[]p", {"A": parse("p")})
        assert (r.failing_step, r.reason) == (2, "nec-on-premise")

    def test_capture(self):
        o = system_O()
        p = proof((1, "G(x)", PremiseJ("A")), (2, "all x. G(x)", GenI(1, "x")))
        assert self._reject(o, p, "all x. G(x)", {"A": parse("G(x)")}).reason == "capture"

    def test_property_capture(self):
        o = system_O()
        p = proof((1, "Pos(phi)", PremiseJ("A")), (2, "allp phi. Pos(phi)", GenP(1, "phi")))
        assert self._reject(o, p, "allp phi. Pos(phi)", {"A": parse("Pos(phi)")}).reason == "capture"

    def test_generalization_without_premises(self):
        o = system_O()
        p = proof((1, "G(x) | ~G(x)", AxiomJ("TAUT")), (2, "all x. G(x) | ~G(x)", GenI(1, "x")))
        assert check_proof(o, p, parse("all x. G(x) | ~G(x)")).accepted

    def test_bad_generalization(self):
        o = system_O()
        p = proof((1, "G(x) | ~G(x)", AxiomJ("TAUT")), (2, "all y. G(x) | ~G(x)", GenI(1, "x")))
        assert self._reject(o, p, "all y. G(x) | ~G(x)").reason == "bad-generalization"

    def test_unknown_dependency(self):
        assert self._reject(S5, proof((1, "[]p", Nec(7))), "[]p").reason == "unknown-dependency"

    def test_goal_mismatch(self):
        r = self._reject(S5, proof((1, "p | ~p", AxiomJ("TAUT"))), "q | ~q")
        assert r.reason == "goal-mismatch" and not r.goal_matched

    def test_empty_proof(self):
        assert self._reject(S5, Proof(()), "p").reason == "goal-mismatch"

    def test_unknown_premise(self):
        assert self._reject(S5, proof((1, "p", PremiseJ("B"))), "p", {"A": parse("p")}).reason == "unknown-premise"

    def test_premise_text_must_match(self):
        assert self._reject(S5, proof((1, "q", PremiseJ("A"))), "q", {"A": parse("p")}).reason == "unknown-premise"

    def test_bad_step_id(self):
        p = proof((2, "p | ~p", AxiomJ("TAUT")), (1, "q | ~q", AxiomJ("TAUT")))
        assert self._reject(S5, p, "q | ~q").reason == "bad-step-id"

    def test_rule_disabled(self):
        p = proof((1, "A+ p -> E+ p", AxiomJ("EQ31", (("phi", "p"),))), (2, "[](A+ p -> E+ p)", Nec(1)))
        assert self._reject(builtin_system("TMP"), p, "[](A+ p -> E+ p)").reason == "rule-disabled"

    def test_schema_outside_system(self):
        p = proof((1, "<>[]p -> []p", AxiomJ("EQ13", (("phi", "p"),))))
        assert self._reject(builtin_system("T"), p, "<>[]p -> []p").reason == "bad-instantiation"

    def test_bad_unfold(self):
        o = system_O()
        p = proof((1, "G(x) -> G(x)", AxiomJ("TAUT")), (2, "G(x) -> G(x)", Unfold(1, "DEF-G", 3)))
        assert self._reject(o, p, "G(x) -> G(x)").reason == "bad-unfold"

    def test_unfold_both_directions(self):
        o = system_O()
        folded = "G(x) -> G(x)"
        opened = unfold_at(parse(folded), DEF_G, 1)
        p = proof((1, folded, AxiomJ("TAUT")), (2, opened, Unfold(1, "DEF-G", 1)), (3, folded, Unfold(2, "DEF-G", 1)))
        assert check_proof(o, p, parse(folded)).accepted

    def test_alpha_and_order_insensitive(self):
        p = proof((1, "q & p -> p", AxiomJ("TAUT")))
        assert check_proof(S5, p, parse("p & q -> p")).accepted


def _renumber(p, fn):
    def j(x):
        if isinstance(x, MP):
            return MP(fn(x.minor), fn(x.major))
        if hasattr(x, "src"):
            return replace(x, src=fn(x.src))
        return x

    return Proof(tuple(Step(fn(s.id), s.formula, j(s.just)) for s in p.steps))


class TestRenumbering:
    def test_verdict_invariant(self):
        from ontomodal.ontology import script_theorem1

        s = script_theorem1()
        base = s.check(system_O())
        for fn in (lambda i: i + 100, lambda i: 3 * i + 1):
            moved = _renumber(s.proof, fn)
            r = check_proof(system_O(), moved, s.goal, s.premise_map)
            assert r.verdict == base.verdict


class TestSoundness:
    """Every instance of a shipped schema is valid on the frames of its system."""

    @pytest.mark.parametrize("name,frames", [("T", FrameClass.T), ("S4", FrameClass.S4), ("S5", FrameClass.S5)])
    def test_random_instances(self, name, frames):
        rng = random.Random(17)
        system = builtin_system(name)
        for schema in system.schemas[1:]:
            for _ in range(4):
                b = {n: random_modal(rng, atoms=("p", "q"), depth=1, size=3) for n, _ in schema.metavars}
                inst = schema.instantiate(b)
                assert bruteforce_validity(inst, frames, 2), (schema.name, render(inst))

    def test_eq13_fails_in_s4(self):
        inst = S5.schema("EQ13").instantiate({"phi": "p"})
        assert not bruteforce_validity(inst, FrameClass.S4, 3)

    def test_nec_preserves_validity(self):
        f = S5.schema("EQ5").instantiate({"phi": "p", "psi": "q"})
        assert bruteforce_validity(Box(f), FrameClass.K, 3)
