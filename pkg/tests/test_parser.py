import pytest
from hypothesis import given

from ontomodal.formula import (
    And,
    Apply,
    Atom,
    Box,
    Dia,
    Implies,
    Ind,
    IQuant,
    Mode,
    Pos,
    Prop,
    Signature,
    Tag,
    Temporal,
)
from ontomodal.parser import ParseError, parse, render, tokenize
from strategies import formulas

G = Prop("G", True)
p = Atom("p")


class TestParse:
    def test_box_implies(self):
        assert parse("[]p -> p") == Implies(Box(p), p)

    def test_atom(self):
        assert parse("p") == p

    def test_temporal_mix(self):
        f = parse("A-(Pos(G)) & E+ (ex x. G(x))")
        expected = And(
            Temporal(Tag.PAST, Mode.ALL, Pos(G)),
            Temporal(Tag.FUTURE, Mode.EX, IQuant(Mode.EX, "x", Apply(G, Ind("x")))),
        )
        assert f == expected
        assert parse(render(f)) == f

    def test_whitespace_insensitive(self):
        assert parse("  [] ( p&q )->p ") == parse("[](p & q) -> p")

    def test_implication_right_assoc(self):
        assert parse("p -> q -> r") == parse("p -> (q -> r)")

    def test_iff_left_assoc(self):
        assert parse("p <-> q <-> r") == parse("(p <-> q) <-> r")

    def test_precedence(self):
        assert parse("p | q & r -> s") == parse("(p | (q & r)) -> s")

    def test_quantifier_extends_right(self):
        f = parse("ex x. G(x) -> p")
        assert isinstance(f, IQuant)

    def test_sugared_temporal_quantifier(self):
        assert parse("E- x. G(x)") == parse("E- ex x. G(x)")

    def test_comments(self):
        assert parse("p # trailing\n") == p

    def test_arrow_not_temporal(self):
        toks = [t.text for t in tokenize("E->p")]
        assert toks[:2] == ["E", "->"]


class TestErrors:
    def test_position_and_expected(self):
        with pytest.raises(ParseError) as e:
            parse("p &\n  & q")
        assert (e.value.line, e.value.col) == (2, 3)
        assert {"~", "(", "identifier"} <= e.value.expected

    def test_column(self):
        with pytest.raises(ParseError) as e:
            parse("p & & q")
        assert (e.value.line, e.value.col) == (1, 5)

    def test_kind_violation(self):
        with pytest.raises(ParseError):
            parse("all x. Pos(x)")

    def test_unbound_under_signature(self):
        sig = Signature(atoms=frozenset({"p"}))
        assert parse("p", sig) == p
        with pytest.raises(ParseError):
            parse("q", sig)


class TestRender:
    def test_box(self):
        assert render(Box(p)) == "[]p"

    def test_axiom_13(self):
        assert render(Implies(Dia(Box(p)), Box(p))) == "<>[]p -> []p"

    def test_exists(self):
        assert render(IQuant(Mode.EX, "x", Apply(G, Ind("x")))) == "ex x. G(x)"

    def test_sugar(self):
        f = parse("E- ex x. G(x)")
        assert render(f, sugar=True) == "E- x. G(x)"
        assert parse(render(f, sugar=True)) == f

    def test_minimal_parentheses(self):
        assert render(parse("((p & q)) | (r)")) == "p & q | r"

    @given(formulas)
    def test_round_trip(self, f):
        assert parse(render(f)) == f

    @given(formulas)
    def test_sugared_round_trip(self, f):
        assert parse(render(f, sugar=True)) == f
