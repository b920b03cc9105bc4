import random

import pytest

from herbrandfi import generators as gen
from herbrandfi.calculus import onesided as o
from herbrandfi.errors import IndexOutOfRange, TypingError
from herbrandfi.interpretation import (
    TransformerEnv, canonical_args, canonical_counter, canonical_evidence, counter_type,
    evidence_type, transform, transform_proof, winning,
)
from herbrandfi.kernel import alpha_eq, inhabitant, normalize, normalize_prop, typecheck
from herbrandfi.syntax import (
    EPS, IOTA, NULL, Abs, App, Arrow, Atom, Const, Exists, Not, Or, Pair, Prod, Var,
)

c = Const("c")
Pc, Qc = Atom("P", (c,)), Atom("Q", (c,))
Px = Atom("P", (Var("x"),))
ExP = Exists("x", Px)


class TestTypes:
    def test_atom(self):
        assert evidence_type(Pc) == NULL and counter_type(Pc) == NULL

    def test_exists(self):
        assert evidence_type(ExP) == Prod(IOTA, Arrow(NULL, NULL))

    def test_negation_counter(self):
        assert counter_type(Not(Pc)) == Arrow(NULL, NULL)

    def test_negation_evidence(self):
        assert evidence_type(Not(Pc)) == Arrow(Arrow(NULL, NULL), NULL)

    def test_exists_counter(self):
        assert counter_type(ExP) == Arrow(evidence_type(ExP), evidence_type(Not(Px)))

    def test_disjunction(self):
        a, b = Pc, ExP
        assert evidence_type(Or(a, b)) == Prod(counter_type(Not(a)), counter_type(Not(b)))
        assert counter_type(Or(a, b)) == Prod(
            Arrow(counter_type(Not(a)), evidence_type(Not(a))),
            Arrow(counter_type(Not(b)), evidence_type(Not(b))))

    def test_independent_of_names_and_arguments(self):
        other = Exists("y", Atom("Q", (Var("y"), c)))
        assert evidence_type(ExP) == evidence_type(other)


class TestCanonical:
    def test_atom(self):
        assert canonical_evidence(Pc) == EPS

    def test_exists(self):
        assert alpha_eq(canonical_evidence(ExP), Pair(c, Abs("z", NULL, EPS)))

    def test_negation(self):
        assert alpha_eq(canonical_evidence(Not(Pc)), Abs("z", Arrow(NULL, NULL), EPS))

    def test_counter(self):
        assert canonical_counter(Pc) == EPS
        assert typecheck(canonical_counter(ExP)) == counter_type(ExP)


class TestWinning:
    def test_atom(self):
        assert winning(Pc, EPS, EPS) == Pc

    def test_quantifier_free_is_fixed(self):
        rng = random.Random(0)
        tg = gen.TermGen(rng)
        a = Or(Not(Pc), Or(Qc, Not(Not(Pc))))
        for _ in range(20):
            u = tg.term(evidence_type(a), 3)
            v = tg.term(counter_type(a), 3)
            assert winning(a, u, v) == a

    def test_negated_atom(self):
        u = Abs("w", Arrow(NULL, NULL), EPS)
        v = Abs("w", NULL, EPS)
        assert winning(Not(Pc), u, v) == Not(Pc)

    def test_exists(self):
        u = Pair(c, Abs("z", NULL, EPS))
        v = Abs("y", evidence_type(ExP), Abs("z", Arrow(NULL, NULL), EPS))
        assert normalize_prop(winning(ExP, u, v)) == Pc

    def test_ill_typed_arguments(self):
        with pytest.raises(TypingError):
            winning(ExP, EPS, EPS)


class TestTransform:
    def test_lem_second_position(self):
        u, v = Var("u", Arrow(NULL, NULL)), Var("v", NULL)
        env = TransformerEnv(o.Lem(Pc))
        assert transform(env, 2, [u, v]) == App(u, v)

    def test_weak_principal(self):
        p = o.Weak(ExP, o.Lem(Pc))
        env = TransformerEnv(p)
        r = transform(env, 3, canonical_args(env.end_sequent))
        assert alpha_eq(r, canonical_evidence(ExP))

    def test_excluded_middle_witness(self, corpus):
        p = corpus("X1.prf").proof
        goal = o.end_sequent(p)[0]
        r = normalize(transform(TransformerEnv(p), 1, [inhabitant(counter_type(goal))]))
        assert isinstance(r, Pair) and normalize(r.fst) == c

    def test_types_on_corpus(self, corpus):
        for name in ("X1.prf", "X2.prf", "X3.prf"):
            p = corpus(name).proof
            env = TransformerEnv(p)
            args = canonical_args(env.end_sequent)
            for i, a in enumerate(env.end_sequent, start=1):
                r = transform(env, i, args)
                assert typecheck(r) == evidence_type(a) and not r.fv

    def test_index_out_of_range(self):
        env = TransformerEnv(o.Lem(Pc))
        with pytest.raises(IndexOutOfRange):
            transform(env, 3, [EPS, EPS])
        with pytest.raises(IndexOutOfRange):
            transform(env, 0, [EPS, EPS])

    def test_argument_count(self):
        with pytest.raises(TypingError):
            transform(TransformerEnv(o.Lem(Pc)), 1, [EPS])

    def test_argument_type(self):
        with pytest.raises(TypingError):
            transform(TransformerEnv(o.Lem(Pc)), 1, [EPS, EPS])

    def test_convenience_wrapper(self, corpus):
        p = corpus("X2.prf").proof
        assert typecheck(transform_proof(p, 1)) == evidence_type(o.end_sequent(p)[0])
