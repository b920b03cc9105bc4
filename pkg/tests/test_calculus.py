import pytest

from herbrandfi.calculus import onesided as o
from herbrandfi.calculus import twosided as t2
from herbrandfi.calculus.translate import translate
from herbrandfi.errors import (
    CaptureRisk, EigenvariableViolation, RegularityViolation, RuleMismatch, TypingError,
)
from herbrandfi.kernel import alpha_eq
from herbrandfi.syntax import EPS, Atom, Const, Exists, Fun, Not, Or, Var

c = Const("c")
a = Var("a")
x = Var("x")
Pc, Qc = Atom("P", (c,)), Atom("Q", (c,))
Pa, Px = Atom("P", (a,)), Atom("P", (x,))
EM = Or(Px, Not(Px))


def same(seq1, seq2):
    return len(seq1) == len(seq2) and all(alpha_eq(p, q) for p, q in zip(seq1, seq2))


def quantified_lem():
    """⊢ ∃x P(x), ¬∃x P(x) via an eigenvariable ``a``."""
    return o.NegEx("a", o.Perm((2, 1), o.Ex(a, "x", Px, o.Lem(Pa))))


class TestOneSided:
    def test_lem(self):
        assert o.end_sequent(o.Lem(Pc)) == (Not(Pc), Pc)

    def test_excluded_middle_proof(self, corpus):
        assert same(o.check_one_sided(corpus("X1.prf").proof), (Exists("x", EM),))

    def test_contract_mismatch(self):
        p = o.Contract(o.OrIntro(1, Qc, o.Lem(Pc)))
        with pytest.raises(RuleMismatch) as e:
            o.end_sequent(p)
        assert e.value.path == "root"

    def test_mismatch_path_points_at_node(self):
        p = o.NegNeg(o.Contract(o.Lem(Pc)))
        with pytest.raises(RuleMismatch) as e:
            o.end_sequent(p)
        assert e.value.path == "root/1"

    def test_or_intro(self):
        assert o.end_sequent(o.OrIntro(2, Qc, o.Lem(Pc))) == (Not(Pc), Or(Qc, Pc))

    def test_negor(self):
        p = o.NegOr(o.Lem(Pc), o.Lem(Qc))
        with pytest.raises(RuleMismatch):
            o.end_sequent(p)
        p = o.NegOr(o.Perm((2, 1), o.Lem(Pc)), o.Perm((2, 1), o.Lem(Qc)))
        assert o.end_sequent(p) == (Pc, Qc, Not(Or(Pc, Qc)))

    def test_ex_requires_instance(self):
        with pytest.raises(RuleMismatch):
            o.end_sequent(o.Ex(Fun("f", (c,)), "x", Px, o.Lem(Pc)))

    def test_ex_witness_must_be_individual(self):
        with pytest.raises((RuleMismatch, TypingError)):
            o.end_sequent(o.Ex(EPS, "x", Px, o.Lem(Pc)))

    def test_negex(self):
        assert same(o.end_sequent(quantified_lem()), (Exists("x", Px), Not(Exists("x", Px))))

    def test_negex_eigenvariable_condition(self, corpus):
        with pytest.raises(EigenvariableViolation) as e:
            o.end_sequent(corpus("bad_eigen.prf").proof)
        assert e.value.path == "root" and e.value.name == "a"

    def test_weak_and_negneg(self):
        assert o.end_sequent(o.NegNeg(o.Weak(Qc, o.Lem(Pc)))) == (Not(Pc), Pc, Not(Not(Qc)))

    def test_cut(self, corpus):
        assert same(o.check_one_sided(corpus("X3.prf").proof), (Exists("x", EM),))

    def test_perm_must_be_permutation(self):
        with pytest.raises(RuleMismatch):
            o.end_sequent(o.Perm((1, 1), o.Lem(Pc)))

    def test_regularity_enforced(self):
        p = o.NegOr(quantified_lem(), quantified_lem())
        assert o.end_sequent(p)
        with pytest.raises(RegularityViolation):
            o.check_one_sided(p)
        assert o.check_one_sided(p, regular=False)


class TestRegularize:
    def test_regular_proof_unchanged(self, corpus):
        p = corpus("X1.prf").proof
        assert o.regularize(p) is p

    def test_second_introduction_renamed(self):
        q = quantified_lem()
        r = o.regularize(o.NegOr(q, q))
        assert o.eigenvariables(r) == ["a", "a1"]
        assert o.is_regular(r)

    def test_idempotent(self):
        q = quantified_lem()
        r = o.regularize(o.NegOr(q, q))
        assert o.regularize(r) is r

    def test_free_occurrence_elsewhere(self):
        p = o.Weak(Pa, quantified_lem())
        r = o.regularize(p)
        assert o.eigenvariables(r) == ["a1"]
        assert same(o.end_sequent(r), o.end_sequent(p))


class TestProofSubst:
    def test_lem(self):
        assert o.proof_subst(o.Lem(Pa), "a", c) == o.Lem(Pc)

    def test_identity(self):
        p = o.Lem(Pa)
        assert o.proof_subst(p, "a", a) is p

    def test_witness(self):
        p = o.Ex(Fun("f", (a,)), "x", Px, o.Lem(Atom("P", (Fun("f", (a,)),))))
        q = o.proof_subst(p, "a", c)
        assert q.witness == Fun("f", (c,))
        assert o.end_sequent(q)[-1] == Exists("x", Px)

    def test_eigenvariable_refused(self):
        with pytest.raises(CaptureRisk):
            o.proof_subst(quantified_lem(), "a", c)

    def test_term_with_eigenvariable_refused(self):
        p = o.Weak(Atom("Q", (Var("b"),)), quantified_lem())
        with pytest.raises(CaptureRisk):
            o.proof_subst(p, "b", a)


class TestCollapsePerms:
    def test_inverse_pair_vanishes(self):
        p = o.Lem(Pc)
        assert o.collapse_perms(o.Perm((2, 1), o.Perm((2, 1), p))) == p

    def test_composition(self):
        p = o.Weak(Qc, o.Lem(Pc))
        q = o.Perm((3, 1, 2), o.Perm((2, 3, 1), o.Perm((1, 3, 2), p)))
        r = o.collapse_perms(q)
        assert isinstance(r, o.Perm) and isinstance(r.premise, o.Weak)
        assert o.end_sequent(r) == o.end_sequent(q)


class TestTwoSided:
    def test_id(self):
        assert t2.check_two_sided(t2.Id(Pc)) == ((Pc,), (Pc,))

    def test_exr(self):
        p = t2.ExR(c, "x", Px, t2.WeakL(Qc, t2.Id(Pc)))
        assert t2.check_two_sided(p) == ((Pc, Qc), (Exists("x", Px),))

    def test_exl_eigenvariable_condition(self):
        p = t2.ExL("a", t2.WeakR(Pa, t2.Id(Pa)))
        with pytest.raises(EigenvariableViolation):
            t2.check_two_sided(p)

    def test_negation_rules(self):
        assert t2.check_two_sided(t2.NegR(t2.Id(Pc))) == ((), (Not(Pc), Pc))
        assert t2.check_two_sided(t2.NegL(t2.Id(Pc))) == ((Pc, Not(Pc)), ())

    def test_or_left_contexts_must_agree(self):
        with pytest.raises(RuleMismatch):
            t2.check_two_sided(t2.OrL(t2.Id(Pc), t2.WeakL(Qc, t2.Id(Pc))))

    def test_cut(self):
        p = t2.Cut2(Pc, t2.Id(Pc), t2.Id(Pc))
        assert t2.check_two_sided(p) == ((Pc,), (Pc,))

    def test_perm(self):
        p = t2.Perm2((2, 1), (1,), t2.WeakL(Qc, t2.Id(Pc)))
        assert t2.check_two_sided(p) == ((Qc, Pc), (Pc,))


def _rules(p):
    return [q.rule for q in o.nodes(p)]


class TestTranslate:
    def test_axiom(self):
        assert translate(t2.Id(Pc)) == o.Lem(Pc)

    def test_negation_on_the_left_adds_double_negation(self):
        r = translate(t2.NegL(t2.Id(Pc)))
        assert "negneg" in _rules(r)
        assert o.end_sequent(r) == (Not(Pc), Not(Not(Pc)))

    def test_negation_on_the_right_is_free(self):
        r = translate(t2.NegR(t2.Id(Pc)))
        assert r == o.Lem(Pc)
        assert o.end_sequent(r) == (Not(Pc), Pc)

    def test_or_left_single_context_formula(self):
        side = t2.NegL(t2.Id(Pc))                     # P(c), ¬P(c) ⊢
        p = t2.OrL(side, side)                        # P(c), ¬P(c) ∨ ¬P(c) ⊢
        r = translate(p)
        rules = _rules(r)
        assert rules.count("negor") == 1 and rules.count("contract") == 1
        assert same(o.end_sequent(r), (Not(Pc), Not(Or(Not(Pc), Not(Pc)))))

    def test_or_left_also_merges_succedent(self):
        side = t2.WeakR(Qc, t2.NegL(t2.Id(Pc)))       # P(c), ¬P(c) ⊢ Q(c)
        r = translate(t2.OrL(side, side))
        assert _rules(r).count("contract") == 2

    @pytest.mark.parametrize("name", ["two_sided_id.prf", "two_sided_em.prf",
                                      "two_sided_orl.prf", "two_sided_exl.prf"])
    def test_corpus(self, corpus, name):
        p = corpus(name).proof
        g, d = t2.check_two_sided(p)
        assert same(o.check_one_sided(translate(p)), tuple(Not(f) for f in g) + d)

    def test_existential_on_the_left(self, corpus):
        r = translate(corpus("two_sided_exl.prf").proof)
        assert "nex" in _rules(r) and o.is_regular(r)
