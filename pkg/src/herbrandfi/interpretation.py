"""Evidence types, winning formulas and term transformers.

``transform(env, i, args)`` maps counter-evidence ``args[j] : ⟨A_j⟩`` for every
occurrence of the end sequent to evidence of type ``[A_i]``, by recursion on
the last inference of the proof.  Indices are 1-based.
"""
from __future__ import annotations

from itertools import count
from typing import Dict, List, Optional, Sequence

from .calculus.onesided import (
    Contract, Cut, Ex, Lem, NegEx, NegNeg, NegOr, OrIntro, Perm, Proof, Weak,
    check_one_sided, conclusions, proof_names,
)
from .errors import IndexOutOfRange, TypingError, UnboundVariable
from .kernel import annotation_context, inhabitant, subst_prop, substitute, typecheck
from .syntax import (
    IOTA, NULL, Abs, App, Arrow, Atom, Case, Equiv, Exists, Formula, Not, Or,
    Pair, Prod, Proj, SimpleType, Term, Var,
)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

def evidence_type(a: Formula) -> SimpleType:
    """``[A]``."""
    d = a.__dict__
    if "_ev" not in d:
        if isinstance(a, (Atom, Equiv)):
            ty = NULL
        elif isinstance(a, Exists):
            ty = Prod(IOTA, counter_type(Not(a.body)))
        elif isinstance(a, Not):
            ty = Arrow(Arrow(counter_type(a.body), evidence_type(a.body)), counter_type(a.body))
        elif isinstance(a, Or):
            ty = Prod(counter_type(Not(a.left)), counter_type(Not(a.right)))
        else:
            raise TypeError(f"not a formula: {a!r}")
        d["_ev"] = ty
    return d["_ev"]


def counter_type(a: Formula) -> SimpleType:
    """``⟨A⟩``."""
    d = a.__dict__
    if "_ct" not in d:
        if isinstance(a, (Atom, Equiv)):
            ty = NULL
        elif isinstance(a, Exists):
            ty = Arrow(evidence_type(a), evidence_type(Not(a.body)))
        elif isinstance(a, Not):
            ty = Arrow(counter_type(a.body), evidence_type(a.body))
        elif isinstance(a, Or):
            ty = Prod(Arrow(counter_type(Not(a.left)), evidence_type(Not(a.left))),
                      Arrow(counter_type(Not(a.right)), evidence_type(Not(a.right))))
        else:
            raise TypeError(f"not a formula: {a!r}")
        d["_ct"] = ty
    return d["_ct"]


def canonical_evidence(a: Formula, const: str = "c") -> Term:
    """``E_A``: the canonical closed inhabitant of ``[A]``."""
    return inhabitant(evidence_type(a), const)


def canonical_counter(a: Formula, const: str = "c") -> Term:
    """The canonical closed inhabitant of ``⟨A⟩``."""
    return inhabitant(counter_type(a), const)


# ---------------------------------------------------------------------------
# Winning formulas
# ---------------------------------------------------------------------------

def _quantifier_free(a) -> bool:
    return not isinstance(a, Exists) and all(
        _quantifier_free(c) for c in ((a.left, a.right) if isinstance(a, Or)
                                      else (a.body,) if isinstance(a, Not) else ()))


def winning(a: Formula, u: Term, v: Term, check: bool = True) -> Formula:
    """``W[A](u, v)``: evidence ``u`` beats counter-evidence ``v``."""
    if check:
        ctx = annotation_context(u, v)
        for t, want, what in ((u, evidence_type(a), "evidence"), (v, counter_type(a), "counter-evidence")):
            try:
                got = typecheck(t, ctx)
            except UnboundVariable as e:
                raise TypingError(what, want, e) from None
            if got != want:
                raise TypingError(what, want, got)
    return _win(a, u, v)


def _win(a, u, v):
    if _quantifier_free(a):
        return a
    if isinstance(a, Exists):
        vu = App(App(v, u), Proj(2, u))
        return _win(subst_prop(a.body, a.var, Proj(1, u)), App(Proj(2, u), vu), vu)
    if isinstance(a, Or):
        c1 = App(App(Proj(1, v), Proj(1, u)), Proj(1, u))
        c2 = App(App(Proj(2, v), Proj(2, u)), Proj(2, u))
        return Or(_win(a.left, App(Proj(1, u), c1), c1),
                  _win(a.right, App(Proj(2, u), c2), c2))
    if isinstance(a, Not):
        uv = App(u, v)
        return Not(_win(a.body, App(v, uv), uv))
    raise TypeError(f"not a formula: {a!r}")


# ---------------------------------------------------------------------------
# Term transformers
# ---------------------------------------------------------------------------

class TransformerEnv:
    """A checked, regular proof together with the state of one transformation.

    Results are memoized on (node, index, argument identities); arguments
    built for subproofs are cached per node so that different indices share
    them and hit the memo.
    """

    def __init__(self, proof: Proof, const: str = "c", check: bool = True):
        if check:
            check_one_sided(proof)
        self.proof = proof
        self.const = const
        self.seqs = conclusions(proof)
        self.end_sequent = self.seqs[id(proof)]
        self._avoid = proof_names(proof)
        self._counter = count(1)
        self._memo: Dict[tuple, Term] = {}
        self._aux: Dict[tuple, object] = {}
        self._pins: List[object] = []

    def fresh(self, base: str) -> str:
        while True:
            name = f"{base}{next(self._counter)}"
            if name not in self._avoid:
                return name

    def reserve(self, names) -> None:
        self._avoid |= set(names)

    # -- recursion ----------------------------------------------------------

    def _key(self, node, tag, args):
        return (id(node), tag) + tuple(id(a) for a in args)

    def _cached(self, node, tag, args, build):
        key = self._key(node, tag, args)
        hit = self._aux.get(key)
        if hit is None:
            hit = build()
            self._aux[key] = hit
            self._pins.append(args)
        return hit

    def F(self, p: Proof, i: int, args: Sequence[Term]) -> Term:
        seq = self.seqs[id(p)]
        n = len(seq)
        if not 1 <= i <= n:
            raise IndexOutOfRange(i, n)
        if len(args) != n:
            raise TypingError(f"transformer of {p.rule}", f"{n} argument(s)", len(args))
        key = (id(p), i) + tuple(id(a) for a in args)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._compute(p, i, list(args), n)
        self._memo[key] = res
        self._pins.append(args)
        return res

    def _lam(self, base, ty, body_fn):
        z = self.fresh(base)
        return Abs(z, ty, body_fn(Var(z, ty)))

    def _compute(self, p: Proof, i: int, args: list, n: int) -> Term:
        F = self.F
        seqs = self.seqs

        if isinstance(p, Lem):
            u, v = args
            if i == 2:
                return App(u, v)
            a = p.formula
            return Abs(self.fresh("z"), Arrow(counter_type(a), evidence_type(a)), v)

        if isinstance(p, Weak):
            if i == n:
                return canonical_evidence(p.formula, self.const)
            return F(p.premise, i, args[:-1])

        if isinstance(p, Perm):
            pargs = [None] * n
            for j, src in enumerate(p.perm):
                pargs[src - 1] = args[j]
            pargs = self._cached(p, "perm", args, lambda: tuple(pargs))
            return F(p.premise, p.perm[i - 1], pargs)

        if isinstance(p, Cut):
            s1 = seqs[id(p.left)]
            k = len(s1) - 1
            m = n - k
            us, vs = args[:k], args[k:]
            a = s1[-1]
            h = self._cached(p, "h", us, lambda: self._lam(
                "z", counter_type(a), lambda z: F(p.left, k + 1, us + [z])))
            if i > k:
                vh = self._cached(p, "vh", vs + [h], lambda: tuple(vs) + (h,))
                return F(p.right, i - k, vh)
            uh = self._cached(p, "uh", args, lambda: tuple(us) + (
                App(F(p.right, m + 1, list(vs) + [h]), h),))
            return F(p.left, i, uh)

        if isinstance(p, Contract):
            k = n - 1
            a = seqs[id(p)][-1]
            pargs = self._cached(p, "vv", args, lambda: tuple(args) + (args[-1],))
            if i <= k:
                return F(p.premise, i, pargs)
            e1 = F(p.premise, k + 1, pargs)
            e2 = F(p.premise, k + 2, pargs)
            return Case(_win(a, e1, args[-1]), e1, e2)

        if isinstance(p, Ex):
            k = n - 1
            us, v = args[:k], args[k]
            a = seqs[id(p.premise)][-1]
            h = self._cached(p, "h", us, lambda: self._lam(
                "z", counter_type(a), lambda z: F(p.premise, k + 1, us + [z])))
            pair = self._cached(p, "pair", us, lambda: Pair(p.witness, h))
            if i == n:
                return pair
            pargs = self._cached(p, "ctx", args, lambda: tuple(us) + (App(App(v, pair), h),))
            return F(p.premise, i, pargs)

        if isinstance(p, NegEx):
            k = n - 1
            us, v = args[:k], args[k]
            ex = seqs[id(p)][-1].body                     # ∃x A
            alpha = p.eigen

            def build_h():
                y = self.fresh("y")
                yv = Var(y, evidence_type(ex))
                body = F(p.premise, k + 1, us + [Proj(2, yv)])
                return Abs(y, yv.type, substitute(body, alpha, Proj(1, yv)))

            h = self._cached(p, "h", us, build_h)
            if i == n:
                return self._cached(p, "principal", us, lambda: Abs(
                    self.fresh("z"), counter_type(Not(ex)), h))
            vh = self._cached(p, "vh", args, lambda: App(v, h))
            pargs = self._cached(p, "ctx", args, lambda: tuple(us) + (Proj(2, vh),))
            return substitute(F(p.premise, i, pargs), alpha, Proj(1, vh))

        if isinstance(p, OrIntro):
            k = n - 1
            us, v = args[:k], args[k]
            disj = seqs[id(p)][-1]
            a = seqs[id(p.premise)][-1]
            b = disj.right if p.index == 1 else disj.left

            def build_q():
                live = self._lam("z", counter_type(a), lambda z: F(p.premise, k + 1, us + [z]))
                dead = Abs(self.fresh("z"), counter_type(b), canonical_evidence(b, self.const))
                return Pair(live, dead) if p.index == 1 else Pair(dead, live)

            q = self._cached(p, "q", us, build_q)
            if i == n:
                return q
            j = p.index
            pargs = self._cached(p, "ctx", args, lambda: tuple(us) + (
                App(App(Proj(j, v), Proj(j, q)), Proj(j, q)),))
            return F(p.premise, i, pargs)

        if isinstance(p, NegOr):
            s1 = seqs[id(p.left)]
            s2 = seqs[id(p.right)]
            k, m = len(s1) - 1, len(s2) - 1
            us, vs, w = args[:k], args[k:k + m], args[k + m]
            na, nb = s1[-1], s2[-1]
            negor = seqs[id(p)][-1]

            def build_q():
                q1 = self._lam("z", counter_type(na), lambda z: F(p.left, k + 1, us + [z]))
                q2 = self._lam("z", counter_type(nb), lambda z: F(p.right, m + 1, vs + [z]))
                return Abs(self.fresh("z"), counter_type(negor), Pair(q1, q2))

            q = self._cached(p, "q", us + vs, build_q)
            if i == n:
                return q
            wqw = self._cached(p, "wqw", args, lambda: App(w, App(q, w)))
            if i <= k:
                pargs = self._cached(p, "ctx1", args, lambda: tuple(us) + (Proj(1, wqw),))
                return F(p.left, i, pargs)
            pargs = self._cached(p, "ctx2", args, lambda: tuple(vs) + (Proj(2, wqw),))
            return F(p.right, i - k, pargs)

        if isinstance(p, NegNeg):
            k = n - 1
            us, v = args[:k], args[k]
            a = seqs[id(p.premise)][-1]
            q = self._cached(p, "q", us, lambda: self._lam(
                "y", counter_type(a), lambda y: F(p.premise, k + 1, us + [y])))
            if i == n:
                return self._cached(p, "principal", us, lambda: Abs(
                    self.fresh("z"), counter_type(seqs[id(p)][-1]), q))
            pargs = self._cached(p, "ctx", args, lambda: tuple(us) + (App(App(v, q), q),))
            return F(p.premise, i, pargs)

        raise TypeError(f"unknown proof node {type(p).__name__}")


def transform(env: TransformerEnv, i: int, args: Sequence[Term], check: bool = True) -> Term:
    """``F^p_i(args)`` for the proof held by ``env``."""
    seq = env.end_sequent
    if not 1 <= i <= len(seq):
        raise IndexOutOfRange(i, len(seq))
    args = list(args)
    if len(args) != len(seq):
        raise TypingError("arguments", f"{len(seq)} argument(s)", len(args))
    if check:
        ctx = annotation_context(*args)
        for j, (a, f) in enumerate(zip(args, seq)):
            try:
                got = typecheck(a, ctx)
            except UnboundVariable as e:
                raise TypingError(f"argument {j + 1}", counter_type(f), e) from None
            if got != counter_type(f):
                raise TypingError(f"argument {j + 1}", counter_type(f), got)
    for a in args:
        env.reserve(a.fv)
    return env.F(env.proof, i, args)


def canonical_args(seq, const: str = "c") -> List[Term]:
    return [canonical_counter(f, const) for f in seq]


def transform_proof(p: Proof, i: int, args: Optional[Sequence[Term]] = None,
                    const: str = "c") -> Term:
    """Convenience wrapper: fresh environment, canonical args by default."""
    env = TransformerEnv(p, const)
    if args is None:
        args = canonical_args(env.end_sequent, const)
    return transform(env, i, args)
