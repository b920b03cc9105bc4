"""Acceptance suite: eight end-to-end criteria, each with zero tolerance.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""
import random

import pytest

from herbrandfi import generators as gen
from herbrandfi.calculus import onesided as o
from herbrandfi.calculus import twosided as t2
from herbrandfi.calculus.translate import translate
from herbrandfi.herbrand import extract
from herbrandfi.interpretation import (
    TransformerEnv, canonical_args, counter_type, evidence_type, transform,
)
from herbrandfi.kernel import (
    alpha_eq, inhabitant, is_normal, normalize, step, substitute, typecheck,
)
from herbrandfi.logic import subst_formula
from herbrandfi.syntax import IOTA, Const, Fun, Not, Or, Var, disj, show_term, type_depth
from herbrandfi.verifier import check_soundness, eliminate_cases, tautology

from conftest import CORPUS, load
from oracles import (
    assignments, atom_keys, closed_normal_shape, contains_case, equivalent, evaluate,
    term_depth, truth_table_tautology,
)

pytestmark = pytest.mark.acceptance


def corpus_proofs():
    """Every well-formed corpus proof as a one-sided proof."""
    out = []
    for path in sorted(CORPUS.glob("*.prf")):
        if path.name.startswith("bad_"):
            continue
        pf = load(path.name)
        p = translate(pf.proof) if pf.two_sided else pf.proof
        out.append((path.name, pf.signature, p))
    return out


def test_c1_kernel_soundness(record_property):
    rng = random.Random(1)
    tg = gen.TermGen(rng, redex_bias=0.5)
    failures, steps, cases = [], 0, 0
    while cases < 1000:
        ty = gen.random_type(rng, rng.randint(0, 3))
        t = tg.term(ty, rng.randint(3, 8))
        if term_depth(t) > 8:
            continue
        cases += 1
        cur = t
        while True:
            if typecheck(cur) != ty:
                failures.append(("subject reduction", show_term(t)))
                break
            nxt = step(cur)
            if nxt is None:
                break
            cur = nxt
            steps += 1
        nf = normalize(t)
        if not alpha_eq(nf, cur) or not is_normal(nf):
            failures.append(("normal form", show_term(t)))
        if not closed_normal_shape(nf, ty):
            failures.append(("shape", show_term(nf)))
    record_property("detail", f"1000 closed terms, {steps} reduction steps, {len(failures)} failures")
    assert not failures, failures[:5]


def test_c2_inhabitation(record_property):
    types = list(gen.types_up_to_depth(3))
    exhaustive = len(types)
    by_size = gen.types_up_to_size(4)
    rng = random.Random(2)
    sampled = [gen.random_type(rng, d, exact=True) for d in (4, 5, 6) for _ in range(2000)]
    assert {type_depth(ty) for ty in sampled} == {4, 5, 6}
    failures = [ty for ty in types + by_size + sampled
                if typecheck(inhabitant(ty)) != ty or inhabitant(ty).fv]
    record_property("detail", f"all {exhaustive} types of depth <= 3, all {len(by_size)} types with <= 4 "
                              f"constructors, {len(sampled)} sampled at depth 4-6; {len(failures)} failures")
    assert not failures, failures[:5]


def _transformer_typing_failures(p):
    env = TransformerEnv(p)
    seq = env.end_sequent
    args = canonical_args(seq)
    bad = []
    for i, a in enumerate(seq, start=1):
        r = transform(env, i, args)
        if typecheck(r) != evidence_type(a) or r.fv:
            bad.append(i)
    return bad


def test_c3_transformer_typing(record_property):
    failures = []
    corpus = corpus_proofs()
    for name, _, p in corpus:
        if _transformer_typing_failures(p):
            failures.append(name)
    rng = random.Random(3)
    for k in range(200):
        p = gen.random_closed_proof(rng, steps=rng.randint(3, 12))
        assert o.is_regular(p) and not any(f.fv for f in o.end_sequent(p))
        if _transformer_typing_failures(p):
            failures.append(f"generated #{k}")
    record_property("detail", f"{len(corpus)} corpus + 200 generated proofs, {len(failures)} failures")
    assert not failures, failures


def _free_non_eigen(p):
    eig = set(o.eigenvariables(p))
    free = set()
    for q in o.nodes(p):
        for d in o.local_data(q):
            free |= d.fv
    return sorted(free - eig), eig


def test_c4_substitution_lemma(record_property):
    rng = random.Random(4)
    tg = gen.TermGen(rng)
    failures, triples, comparisons = [], 0, 0
    while triples < 200:
        p = gen.random_open_proof(rng, steps=rng.randint(3, 10))
        cands, eig = _free_non_eigen(p)
        if not cands:
            continue
        alpha = rng.choice(cands)
        choices = [Const("c"), Fun("f", (Const("d"),))]
        choices += [Var(b, IOTA) for b in ("a", "b") if b not in eig and b != alpha]
        t = rng.choice(choices)
        seq = o.end_sequent(p)
        args = [tg.term(counter_type(a), rng.randint(0, 3), {alpha: IOTA}) if rng.random() < 0.6
                else canonical_args([a])[0] for a in seq]
        q = o.proof_subst(p, alpha, t)
        args_t = [substitute(a, alpha, t) for a in args]
        triples += 1
        for i in range(1, len(seq) + 1):
            lhs = substitute(transform(TransformerEnv(p), i, args), alpha, t)
            rhs = transform(TransformerEnv(q), i, args_t)
            comparisons += 1
            if not alpha_eq(lhs, rhs):
                failures.append((triples, i))
    record_property("detail", f"200 triples, {comparisons} transformer comparisons, {len(failures)} failures")
    assert not failures, failures[:5]


def _alternative_args(rng, sig, seq, n=3):
    tg = gen.TermGen(rng, sig)
    return [[tg.term(counter_type(a), rng.randint(1, 4)) for a in seq] for _ in range(n)]


def test_c5_soundness(record_property):
    rng = random.Random(5)
    failures, runs = [], 0
    items = [(name, sig, p) for name, sig, p in corpus_proofs()]
    for k in range(200):
        items.append((f"generated #{k}", gen.DEFAULT_SIG,
                      gen.random_closed_proof(rng, steps=rng.randint(3, 12))))
    for name, sig, p in items:
        seq = o.end_sequent(p)
        const = sig.default_constant
        vectors = [canonical_args(seq, const)] + _alternative_args(rng, sig, seq)
        for args in vectors:
            assert all(not a.fv for a in args)
            runs += 1
            if not check_soundness(p, args, const):
                failures.append(name)
    record_property("detail", f"{len(items)} proofs x 4 counter-evidence vectors = {runs} runs, "
                              f"{len(failures)} failures")
    assert not failures, failures[:5]


def test_c6_herbrand_extraction(record_property):
    c = Const("c")
    fc = Fun("f", (c,))
    x1 = extract(load("X1.prf").proof)
    assert x1.verified and [show_term(t) for t in x1.witnesses] == ["c"]
    x2 = extract(load("X2.prf").proof)
    names = {show_term(t) for t in x2.witnesses}
    assert x2.verified and {"c", "f(c)"} <= names
    # no single witness suffices: each one-term instance has a falsifying row
    goal = o.end_sequent(load("X2.prf").proof)[0]
    keys = sorted(set(atom_keys(disj([subst_formula(goal.body, goal.var, w) for w in (c, fc)]))))
    assert len(keys) == 3
    for w in (c, fc):
        inst = subst_formula(goal.body, goal.var, w)
        assert not all(evaluate(inst, s) for s in assignments(keys))
    assert all(evaluate(x2.disjunction, s) for s in assignments(keys))
    x3 = extract(load("X3.prf").proof)
    assert x3.verified
    rng = random.Random(6)
    failures, witnesses = [], 0
    for k in range(100):
        p = gen.random_exists_proof(rng)
        res = extract(p)
        witnesses += len(res.witnesses)
        if not res.verified or not truth_table_tautology(res.disjunction):
            failures.append(k)
    record_property("detail", f"X1 [c], X2 {sorted(names)}, X3 verified; 100 generated goals with "
                              f"{witnesses} witnesses, {len(failures)} failures")
    assert not failures, failures


def test_c7_verifier_oracles(record_property):
    rng = random.Random(7)
    disagreements, tautologies = [], 0
    for k in range(500):
        p = gen.random_case_free_prop(rng)
        if k % 3 == 0:
            p = Or(p, Not(p)) if k % 2 else Or(Not(p), p)
        assert len(atom_keys(p)) <= 4
        expected = truth_table_tautology(p)
        tautologies += expected
        if tautology(p) != expected:
            disagreements.append(k)
    changed = []
    for k in range(500):
        p = gen.random_case_prop(rng)
        e = eliminate_cases(p)
        if contains_case(e) or not equivalent(p, e):
            changed.append(k)
    record_property("detail", f"500 propositions ({tautologies} tautologies), {len(disagreements)} "
                              f"disagreements; 500 case eliminations, {len(changed)} failures")
    assert not disagreements and not changed, (disagreements[:5], changed[:5])


def test_c8_translation(record_property):
    rng = random.Random(8)
    failures = []
    for k in range(200):
        q = gen.random_two_sided_proof(rng, steps=rng.randint(3, 12))
        g, d = t2.check_two_sided(q)
        got = o.check_one_sided(translate(q))
        want = tuple(Not(a) for a in g) + tuple(d)
        if len(got) != len(want) or not all(alpha_eq(a, b) for a, b in zip(got, want)):
            failures.append(k)
    record_property("detail", f"200 two-sided proofs, {len(failures)} failures")
    assert not failures, failures


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
