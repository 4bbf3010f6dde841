import pytest
from hypothesis import given

from ontomodal.formula import (
    And,
    Apply,
    Atom,
    Ess,
    Ind,
    IQuant,
    KindError,
    Mode,
    NegProp,
    Not,
    Pos,
    PQuant,
    Prop,
    Signature,
    alpha_equal,
    apply,
    children,
    free_variables,
    neg,
    normalize,
    rebuild,
    subformulas,
    substitute,
    substitute_individual,
    substitute_property,
)
from ontomodal.parser import parse, render
from oracles import free_names_of
from strategies import formulas

G = Prop("G", True)


class TestTerms:
    def test_double_negation_collapses(self):
        phi = Prop("phi")
        assert neg(neg(phi)) == phi
        assert isinstance(neg(phi), NegProp)

    def test_nested_negprop_rejected(self):
        with pytest.raises((KindError, ValueError)):
            NegProp(NegProp(Prop("phi")))

    def test_individual_names(self):
        with pytest.raises(ValueError):
            Ind("X")
        with pytest.raises(ValueError):
            Ind("")

    def test_apply_negated_property_is_negated_application(self):
        f = apply(neg(Prop("phi")), Ind("x"))
        assert f == Not(Apply(Prop("phi"), Ind("x")))

    def test_named_property_cannot_be_bound(self):
        with pytest.raises((KindError, ValueError)):
            PQuant(Mode.ALL, "G", Pos(G))

    @given(formulas)
    def test_no_double_negated_property_terms(self, f):
        for g in subformulas(f):
            if isinstance(g, (Pos, Ess)):
                assert not (isinstance(g.prop, NegProp) and isinstance(g.prop.base, NegProp))


class TestSubstitution:
    def test_property_psi_to_not_phi(self):
        f = substitute_property(parse("Pos(psi)"), "psi", neg(Prop("phi")))
        assert render(f) == "Pos(~phi)"

    def test_no_free_occurrence_is_unchanged(self):
        f = parse("Pos(G) & ex x. G(x)")
        assert substitute_property(f, "psi", Prop("phi")) == f

    def test_property_binder_renamed(self):
        f = parse("allp F. Pos(F) -> F(x) & phi(x)")
        out = substitute_property(f, "phi", Prop("F"))
        # the substituted F stays free, the binder is renamed away from it
        assert ("prop", "F") in free_variables(out)
        assert isinstance(out, PQuant) and out.var != "F"
        assert free_names_of(out) == (free_names_of(f) - {"phi"}) | {"F"}

    def test_individual_simple(self):
        assert render(substitute_individual(parse("G(x)"), "x", Ind("y"))) == "G(y)"

    def test_individual_bound_is_unchanged(self):
        f = parse("ex x. G(x)")
        assert substitute_individual(f, "x", Ind("y")) == f

    def test_individual_binder_renamed(self):
        out = substitute_individual(parse("ex y. R(x, y)"), "x", Ind("y"))
        assert isinstance(out, IQuant) and out.var != "y"
        assert free_names_of(out) == {"y"}
        assert alpha_equal(out, parse("ex z. R(y, z)"))

    def test_kind_mismatch(self):
        with pytest.raises((KindError, ValueError, TypeError)):
            substitute(parse("G(x)"), {("ind", "x"): Prop("phi")})

    @given(formulas)
    def test_substitution_safety(self, f):
        fv = free_variables(f)
        for kind, name in sorted(fv):
            if kind == "ind":
                t = Ind("y")
                out = substitute_individual(f, name, t)
                assert free_variables(out) <= (fv - {(kind, name)}) | {("ind", "y")}
            else:
                t = neg(Prop("F"))
                out = substitute_property(f, name, t)
                assert free_variables(out) <= (fv - {(kind, name)}) | {("prop", "F")}


class TestAlphaAndNormalize:
    def test_alpha_renaming(self):
        assert alpha_equal(parse("ex x. G(x)"), parse("ex y. G(y)"))

    def test_alpha_different_property(self):
        assert not alpha_equal(parse("ex x. G(x)"), parse("ex x. NE(x)"))

    def test_alpha_free_names_matter(self):
        assert not alpha_equal(parse("G(x)"), parse("G(y)"))

    def test_commutative_normalization(self):
        a, b = parse("p"), parse("[]q")
        assert normalize(And(a, b)) == normalize(And(b, a))

    def test_canonical_binder(self):
        assert normalize(parse("ex z. G(z)")) == normalize(parse("ex w. G(w)"))
        assert isinstance(normalize(parse("ex z. G(z)")), IQuant)

    @given(formulas)
    def test_idempotent(self, f):
        n = normalize(f)
        assert normalize(n) == n

    @given(formulas)
    def test_alpha_variants_share_normal_form(self, f):
        g = _rename_binders(f)
        assert alpha_equal(f, g)
        assert render(normalize(f)) == render(normalize(g))

    @given(formulas)
    def test_normal_form_preserves_alpha_class(self, f):
        assert alpha_equal(normalize(f), normalize(_rename_binders(f)))


def _rename_binders(f, counter=None):
    """Rename every binder to a fresh name (an alpha-variant of f)."""
    counter = counter if counter is not None else [0]
    kids = children(f)
    if isinstance(f, IQuant):
        counter[0] += 1
        new = f"zz{counter[0]}"
        body = substitute_individual(f.body, f.var, Ind(new))
        return IQuant(f.mode, new, _rename_binders(body, counter))
    if isinstance(f, PQuant):
        counter[0] += 1
        new = f"Q{counter[0]}"
        body = substitute_property(f.body, f.var, Prop(new))
        return PQuant(f.mode, new, _rename_binders(body, counter))
    return rebuild(f, [_rename_binders(k, counter) for k in kids]) if kids else f


class TestSignature:
    def test_signature_collects_names(self):
        sig = Signature.of(parse("p & R(x, y) & G(x) & Pos(NE)"))
        assert "p" in sig.atoms
        assert ("R", 2) in sig.predicates
        assert {"G", "NE"} <= sig.named_properties

    def test_atom_with_args(self):
        f = parse("R(x, y)")
        assert f == Atom("R", (Ind("x"), Ind("y")))
