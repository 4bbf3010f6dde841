import pytest

from ontomodal.hilbert import MP, AxiomJ, GenP, Nec, PremiseJ, Unfold, builtin_system
from ontomodal.ontology import load_script, system_O
from ontomodal.parser import parse
from ontomodal.proofscript import BuildError, ProofBuilder, ScriptError, format_script, parse_script

SHIPPED = ("theorem1", "theorem2", "main", "temporalized", "break", "gods_death")

SMALL = """\
system S5
goal p
premise A []p
# from the premise
1 []p | premise A
2 []p -> p | axiom EQ1 phi=p
3 p | mp 1 2
"""


class TestParse:
    def test_small(self):
        s = parse_script(SMALL)
        assert s.system == "S5" and s.goal == parse("p")
        assert s.premise_map == {"A": parse("[]p")}
        assert [st.just for st in s.proof.steps] == [PremiseJ("A"), AxiomJ("EQ1", (("phi", "p"),)), MP(1, 2)]
        assert s.comments == ((1, "from the premise"),)
        assert s.check(builtin_system("S5")).accepted

    def test_braced_binding(self):
        s = parse_script("system S5\ngoal x\n1 [](p | q) -> p | q | axiom EQ1 phi={p | q}\n")
        assert s.proof.steps[0].just == AxiomJ("EQ1", (("phi", "p | q"),))
        assert s.proof.steps[0].formula == parse("[](p | q) -> p | q")

    def test_bar_inside_formula(self):
        s = parse_script("system S5\ngoal p | ~p\n1 p | ~p | axiom TAUT\n")
        assert s.proof.steps[0].formula == parse("p | ~p")
        assert s.check(builtin_system("S5")).accepted

    def test_other_justifications(self):
        s = parse_script("system O\ngoal q\n1 p | nec 4\n2 p | genp 1 F\n3 p | unfold 2 DEF-G 1\n")
        assert [st.just for st in s.proof.steps] == [Nec(4), GenP(1, "F"), Unfold(2, "DEF-G", 1)]


class TestErrors:
    @pytest.mark.parametrize(
        "text,line",
        [
            ("system S5\ngoal p\n1 p | frobnicate 2\n", 3),
            ("system S5\ngoal p &\n", 2),
            ("system S5\ngoal p\n\n1 p | mp 1\n", 4),
            ("system S5\ngoal p\n1 p axiom TAUT\n", 3),
            ("system S5\nsystem T\n", 2),
            ("system S5\ngoal p\nwhatever\n", 3),
            ("system S5\ngoal p\npremise A p\npremise A q\n", 4),
        ],
    )
    def test_line_numbers(self, text, line):
        with pytest.raises(ScriptError) as e:
            parse_script(text)
        assert e.value.line == line

    def test_missing_header(self):
        with pytest.raises(ScriptError):
            parse_script("goal p\n")
        with pytest.raises(ScriptError):
            parse_script("system S5\n")


class TestRoundTrip:
    def test_small(self):
        s = parse_script(SMALL)
        assert format_script(s) == SMALL
        assert parse_script(format_script(s)) == s

    @pytest.mark.parametrize("name", SHIPPED)
    def test_shipped(self, name):
        s = load_script(name)
        text = format_script(s)
        assert parse_script(text) == s
        assert format_script(parse_script(text)) == text


class TestBuilder:
    def test_chain_and_script(self):
        b = ProofBuilder(builtin_system("S5"), {"A": parse("[]p")})
        i = b.premise("A")
        j = b.axiom("EQ1", phi="p")
        k = b.mp(i, j)
        s = b.script("p")
        assert k == 3 and s.check(builtin_system("S5")).accepted

    def test_chain(self):
        b = ProofBuilder(builtin_system("S5"))
        i = b.axiom("EQ1", phi="p")
        j = b.axiom("EQ2", phi="p")
        b.chain("[]p -> <>p", i, j)
        assert b.script("[]p -> <>p").check(builtin_system("S5")).accepted

    def test_mismatch(self):
        b = ProofBuilder(builtin_system("S5"))
        i = b.axiom("EQ1", phi="p")
        with pytest.raises(BuildError):
            b.mp(i, i)

    def test_non_tautology(self):
        with pytest.raises(BuildError):
            ProofBuilder(builtin_system("S5")).taut("p -> q")

    def test_rejected_script(self):
        b = ProofBuilder(builtin_system("S5"), {"A": parse("p")})
        b.nec(b.premise("A"))
        with pytest.raises(BuildError):
            b.script("[]p")

    def test_fold(self):
        b = ProofBuilder(system_O())
        i = b.taut("G(x) -> G(x)")
        j = b.unfold(i, "DEF-G", 1)
        b.fold(j, "DEF-G", "G(x) -> G(x)", 1)
        assert b.script("G(x) -> G(x)").check(system_O()).accepted
