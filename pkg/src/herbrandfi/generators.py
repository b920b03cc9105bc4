"""Seeded random generators for types, terms, propositions and proofs.

Every generator takes a ``random.Random`` instance, so results are fully
determined by the seed.
"""
from __future__ import annotations

import random
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import onesided as o
from .calculus import twosided as t2
from .kernel import alpha_eq, fresh_name, subst_prop
from .logic import Signature, all_names, is_quantifier_free
from .syntax import (
    EPS, IOTA, NULL, Abs, App, Arrow, Atom, Case, Const, Equiv, Exists, Formula,
    Fun, Iota, Not, Null, Or, Pair, Prod, Proj, SimpleType, Term, Var,
)

DEFAULT_SIG = Signature(("c", "d"), (("f", 1), ("g", 2)), (("P", 1), ("Q", 1), ("R", 2)))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

def types_up_to_size(n: int) -> List[SimpleType]:
    """Every type with at most ``n`` occurrences of × and →."""
    by_size: Dict[int, List[SimpleType]] = {0: [IOTA, NULL]}
    for k in range(1, n + 1):
        out = []
        for left in range(k):
            for a, b in product(by_size[left], by_size[k - 1 - left]):
                out.append(Prod(a, b))
                out.append(Arrow(a, b))
        by_size[k] = out
    return [ty for k in range(n + 1) for ty in by_size[k]]


def types_up_to_depth(d: int) -> List[SimpleType]:
    """Every type of depth at most ``d`` (81,610 of them for ``d = 3``)."""
    if d == 0:
        return [IOTA, NULL]
    prev = types_up_to_depth(d - 1)
    out: List[SimpleType] = [IOTA, NULL]
    for a, b in product(prev, prev):
        out.append(Prod(a, b))
        out.append(Arrow(a, b))
    return out


def random_type(rng: random.Random, depth: int, exact: bool = False) -> SimpleType:
    """A random type of depth at most ``depth`` (exactly ``depth`` if asked)."""
    if depth == 0 or (not exact and rng.random() < 0.3):
        return rng.choice((IOTA, NULL))
    if exact:
        deep = random_type(rng, depth - 1, True)
        other = random_type(rng, rng.randrange(depth), False)
        a, b = (deep, other) if rng.random() < 0.5 else (other, deep)
    else:
        a, b = random_type(rng, depth - 1), random_type(rng, depth - 1)
    return Prod(a, b) if rng.random() < 0.5 else Arrow(a, b)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class TermGen:
    """Random well-typed terms, rich in redexes and case distinctions."""

    def __init__(self, rng: random.Random, sig: Signature = DEFAULT_SIG, redex_bias: float = 0.0):
        self.rng = rng
        self.sig = sig
        self.redex_bias = redex_bias
        self.counter = 0

    def fresh(self, base="v"):
        self.counter += 1
        return f"{base}{self.counter}"

    def prop(self, depth: int, env: Dict[str, SimpleType], allow_eq=True) -> Formula:
        rng = self.rng
        r = rng.random()
        if depth <= 0 or r < 0.5:
            if allow_eq and rng.random() < 0.15:
                ty = random_type(rng, 1)
                return Equiv(self.term(ty, max(depth - 1, 0), env), self.term(ty, max(depth - 1, 0), env))
            p, n = rng.choice(self.sig.predicates)
            return Atom(p, tuple(self.term(IOTA, max(depth - 1, 0), env) for _ in range(n)))
        if r < 0.75:
            return Not(self.prop(depth - 1, env, allow_eq))
        return Or(self.prop(depth - 1, env, allow_eq), self.prop(depth - 1, env, allow_eq))

    def term(self, ty: SimpleType, depth: int, env: Optional[Dict[str, SimpleType]] = None) -> Term:
        """A term of type ``ty`` whose syntax tree has depth at most about ``depth``."""
        env = env or {}
        rng = self.rng
        same = [n for n, t in env.items() if t == ty]
        if depth <= 0:
            if same and rng.random() < 0.5:
                return Var(rng.choice(same), ty)
            return self._intro(ty, 0, env)
        if depth >= 2 and rng.random() < self.redex_bias:
            return self._redex(ty, depth, env)
        r = rng.random()
        if same and r < 0.15:
            return Var(rng.choice(same), ty)
        if r < 0.45:
            return self._intro(ty, depth, env)
        if r < 0.6:
            u = random_type(rng, 1)
            return App(self.term(Arrow(u, ty), depth - 1, env), self.term(u, depth - 1, env))
        if r < 0.75:
            u = random_type(rng, 1)
            if rng.random() < 0.5:
                return Proj(1, self.term(Prod(ty, u), depth - 1, env))
            return Proj(2, self.term(Prod(u, ty), depth - 1, env))
        if r < 0.9:
            return Case(self.prop(min(depth - 1, 2), env), self.term(ty, depth - 1, env),
                        self.term(ty, depth - 1, env))
        return self._intro(ty, depth, env)

    def _redex(self, ty, depth, env):
        """A term of type ``ty`` whose root is a redex."""
        rng = self.rng
        u = random_type(rng, 1)
        k = rng.random()
        if k < 0.4:
            x = self.fresh()
            body = self.term(ty, depth - 1, {**env, x: u})
            return App(Abs(x, u, body), self.term(u, depth - 2, env))
        if k < 0.6:
            if rng.random() < 0.5:
                return Proj(1, Pair(self.term(ty, depth - 2, env), self.term(u, depth - 2, env)))
            return Proj(2, Pair(self.term(u, depth - 2, env), self.term(ty, depth - 2, env)))
        if k < 0.8:
            x, y = self.fresh(), self.fresh()
            fn = Case(self.prop(1, env), Abs(x, u, self.term(ty, depth - 3, {**env, x: u})),
                      Abs(y, u, self.term(ty, depth - 3, {**env, y: u})))
            return App(fn, self.term(u, depth - 2, env))
        x = self.fresh()
        fn = Abs(x, u, self.term(ty, depth - 2, {**env, x: u}))
        return App(fn, Case(self.prop(1, env), self.term(u, depth - 3, env), self.term(u, depth - 3, env)))

    def _intro(self, ty, depth, env):
        rng = self.rng
        if isinstance(ty, Null):
            return EPS
        if isinstance(ty, Iota):
            if depth > 0 and self.sig.functions and rng.random() < 0.5:
                f, n = rng.choice(self.sig.functions)
                return Fun(f, tuple(self.term(IOTA, depth - 1, env) for _ in range(n)))
            ivars = [n for n, t in env.items() if t == IOTA]
            if ivars and rng.random() < 0.5:
                return Var(rng.choice(ivars), IOTA)
            return Const(rng.choice(self.sig.constants))
        if isinstance(ty, Prod):
            return Pair(self.term(ty.left, depth - 1, env), self.term(ty.right, depth - 1, env))
        x = self.fresh()
        return Abs(x, ty.domain, self.term(ty.codomain, depth - 1, {**env, x: ty.domain}))


def random_closed_term(rng: random.Random, ty: SimpleType, depth: int,
                       sig: Signature = DEFAULT_SIG) -> Term:
    return TermGen(rng, sig).term(ty, depth)


# ---------------------------------------------------------------------------
# Propositions for the verifier
# ---------------------------------------------------------------------------

PROP_SIG = Signature(("c",), (("f", 1),), (("P", 1), ("Q", 1)))


def random_case_free_prop(rng: random.Random, depth: int = 4) -> Formula:
    """Closed propositions over at most four distinct atoms.

    Atoms are drawn from ``P(c), P(f c), Q(c), Q(f c), c ≡ f c, f c ≡ c``;
    arguments are dressed up with redexes so that keys must be found through
    normalization.  Equations between convertible sides may also occur.
    """
    c = Const("c")
    fc = Fun("f", (c,))
    templates = [("P", c), ("P", fc), ("Q", c), ("Q", fc), ("=", c, fc), ("=", fc, c)]
    chosen = rng.sample(templates, rng.randint(1, 4))

    def arg(base):
        k = rng.random()
        if k < 0.2:
            return Proj(1, Pair(base, EPS))
        if k < 0.35:
            return App(Abs("x", IOTA, Var("x")), base)
        if k < 0.45 and base == fc:
            return App(Abs("x", IOTA, Fun("f", (Var("x"),))), c)
        return base

    def atom():
        if rng.random() < 0.05:
            b = rng.choice((c, fc))
            return Equiv(arg(b), arg(b))
        tpl = rng.choice(chosen)
        if tpl[0] == "=":
            return Equiv(arg(tpl[1]), arg(tpl[2]))
        return Atom(tpl[0], (arg(tpl[1]),))

    def go(d):
        r = rng.random()
        if d == 0 or r < 0.3:
            return atom()
        if r < 0.55:
            return Not(go(d - 1))
        return Or(go(d - 1), go(d - 1))

    return go(depth)


def random_case_prop(rng: random.Random, depth: int = 3) -> Formula:
    """Closed propositions whose atom arguments contain nested case terms."""
    c = Const("c")
    fc = Fun("f", (c,))

    def arg(d):
        r = rng.random()
        if d == 0 or r < 0.4:
            return rng.choice((c, fc))
        if r < 0.8:
            return Case(go(d - 1), arg(d - 1), arg(d - 1))
        if r < 0.9:
            return Proj(1, Pair(arg(d - 1), EPS))
        return App(Case(go(d - 1), Abs("x", IOTA, Var("x")), Abs("y", IOTA, c)), rng.choice((c, fc)))

    def go(d):
        r = rng.random()
        if d == 0 or r < 0.35:
            return Atom(rng.choice(("P", "Q")), (arg(d),))
        if r < 0.6:
            return Not(go(d - 1))
        return Or(go(d - 1), go(d - 1))

    return go(depth)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class FormulaGen:
    def __init__(self, rng: random.Random, sig: Signature = DEFAULT_SIG,
                 free_vars: Sequence[str] = ("a", "b"), quantifiers: bool = True):
        self.rng = rng
        self.sig = sig
        self.free_vars = tuple(free_vars)
        self.quantifiers = quantifiers
        self.counter = 0

    def term(self, depth: int, bound: Sequence[str] = ()) -> Term:
        rng = self.rng
        pool = list(bound) + list(self.free_vars)
        if depth <= 0 or rng.random() < 0.6 or not self.sig.functions:
            if pool and rng.random() < 0.5:
                return Var(rng.choice(pool), IOTA)
            return Const(rng.choice(self.sig.constants))
        f, n = rng.choice(self.sig.functions)
        return Fun(f, tuple(self.term(depth - 1, bound) for _ in range(n)))

    def atom(self, bound=()) -> Formula:
        p, n = self.rng.choice(self.sig.predicates)
        return Atom(p, tuple(self.term(1, bound) for _ in range(n)))

    def formula(self, depth: int, bound: Sequence[str] = ()) -> Formula:
        rng = self.rng
        r = rng.random()
        if depth <= 0 or r < 0.35:
            return self.atom(bound)
        if r < 0.6:
            return Not(self.formula(depth - 1, bound))
        if r < 0.85 or not self.quantifiers:
            return Or(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
        self.counter += 1
        x = f"x{self.counter}"
        return Exists(x, self.formula(depth - 1, tuple(bound) + (x,)))


def first_order_subterms(f: Formula) -> List[Term]:
    """Individual terms occurring as (sub)arguments of atoms, not under ∃."""
    out: List[Term] = []

    def term(t):
        out.append(t)
        if isinstance(t, Fun):
            for a in t.args:
                term(a)

    def go(g):
        if isinstance(g, Atom):
            for a in g.args:
                term(a)
        elif isinstance(g, Or):
            go(g.left)
            go(g.right)
        elif isinstance(g, Not):
            go(g.body)

    go(f)
    return out


def abstract(rng: random.Random, f: Formula, t: Term, x: str) -> Formula:
    """Replace some of the occurrences of ``t`` (outside binders) by ``x``."""
    def term(s):
        if alpha_eq(s, t) and rng.random() < 0.7:
            return Var(x, IOTA)
        if isinstance(s, Fun):
            return Fun(s.name, tuple(term(a) for a in s.args))
        return s

    def go(g):
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(term(a) for a in g.args))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        if isinstance(g, Not):
            return Not(go(g.body))
        return g

    return go(f)


def match_instance(matrix: Formula, x: str, f: Formula) -> Optional[Term]:
    """A term ``t`` with ``matrix[t/x]`` alpha-equal to ``f``, if one exists."""
    found: List[Term] = []

    def mt(p, s):
        if isinstance(p, Var) and p.name == x:
            if found:
                return alpha_eq(found[0], s)
            if x in s.fv:
                return False
            found.append(s)
            return True
        if isinstance(p, Fun):
            return (isinstance(s, Fun) and p.name == s.name and len(p.args) == len(s.args)
                    and all(mt(a, b) for a, b in zip(p.args, s.args)))
        return alpha_eq(p, s)

    def mf(p, g):
        if type(p) is not type(g):
            return False
        if isinstance(p, Atom):
            return p.pred == g.pred and all(mt(a, b) for a, b in zip(p.args, g.args))
        if isinstance(p, Or):
            return mf(p.left, g.left) and mf(p.right, g.right)
        if isinstance(p, Not):
            return mf(p.body, g.body)
        if isinstance(p, Exists):
            # only match when x is not touched below the binder
            return x not in p.fv and alpha_eq(p, g)
        return alpha_eq(p, g)

    if not mf(matrix, f):
        return None
    if found:
        return found[0]
    return Const("c")


# ---------------------------------------------------------------------------
# One-sided proofs
# ---------------------------------------------------------------------------

def _to_end(p: o.Proof, seq, j: int) -> Tuple[o.Proof, tuple]:
    """Move occurrence ``j`` (0-based) of ``seq`` to the last position."""
    n = len(seq)
    if j == n - 1:
        return p, seq
    perm = tuple(k + 1 for k in range(n) if k != j) + (j + 1,)
    return o.Perm(perm, p), tuple(seq[k - 1] for k in perm)


def _two_to_end(p, seq, j, k):
    n = len(seq)
    perm = tuple(m + 1 for m in range(n) if m not in (j, k)) + (j + 1, k + 1)
    if perm == tuple(range(1, n + 1)):
        return p, seq
    return o.Perm(perm, p), tuple(seq[m - 1] for m in perm)


class ProofGen:
    """Forward random construction of checked one-sided proofs."""

    def __init__(self, rng: random.Random, sig: Signature = DEFAULT_SIG,
                 quantifiers: bool = True, max_formula_depth: int = 2, max_width: int = 5):
        self.rng = rng
        self.sig = sig
        self.quantifiers = quantifiers
        self.fg = FormulaGen(rng, sig, ("a", "b") if quantifiers else (), quantifiers)
        self.max_depth = max_formula_depth
        self.max_width = max_width
        self.eigen_counter = 0

    def formula(self):
        return self.fg.formula(self.rng.randint(0, self.max_depth))

    def lem(self):
        a = self.formula()
        return o.Lem(a), (Not(a), a)

    def step(self, pool):
        """Apply one random rule to proofs from ``pool``; None if it does not fit."""
        rng = self.rng
        p, seq = rng.choice(pool)
        rules = ["or", "negneg", "contract", "cut", "negor", "weak"]
        if self.quantifiers:
            rules += ["ex", "ex", "nex", "quant"]
        rule = rng.choice(rules)
        n = len(seq)

        if rule == "or":
            q, s = _to_end(p, seq, rng.randrange(n))
            i = rng.choice((1, 2))
            other = self.formula()
            q = o.OrIntro(i, other, q)
            a = s[-1]
            return q, s[:-1] + ((Or(a, other) if i == 1 else Or(other, a)),)
        if rule == "negneg":
            q, s = _to_end(p, seq, rng.randrange(n))
            return o.NegNeg(q), s[:-1] + (Not(Not(s[-1])),)
        if rule == "weak":
            if n >= self.max_width:
                return None
            a = self.formula()
            return o.Weak(a, p), seq + (a,)
        if rule == "contract":
            pairs = [(j, k) for j in range(n) for k in range(j + 1, n) if alpha_eq(seq[j], seq[k])]
            if not pairs:
                return None
            j, k = rng.choice(pairs)
            q, s = _two_to_end(p, seq, j, k)
            return o.Contract(q), s[:-1]
        if rule == "cut":
            j = rng.randrange(n)
            a = seq[j]
            partners = [(p2, s2, m) for (p2, s2) in pool for m, b in enumerate(s2)
                        if isinstance(b, Not) and alpha_eq(b.body, a)]
            if partners and rng.random() < 0.7:
                p2, s2, m = rng.choice(partners)
            else:
                p2, s2, m = o.Lem(a), (Not(a), a), 0
            if n + len(s2) - 2 > self.max_width:
                return None
            q1, s1 = _to_end(p, seq, j)
            q2, s2 = _to_end(p2, s2, m)
            return o.Cut(s1[-1], q1, q2), s1[:-1] + s2[:-1]
        if rule == "negor":
            negs = [(q, s, j) for (q, s) in pool for j, f in enumerate(s) if isinstance(f, Not)]
            if not negs:
                return None
            q1, s1, j1 = rng.choice(negs)
            own = [(q, s, j) for (q, s, j) in negs if q is q1]
            q2, s2, j2 = rng.choice(own if rng.random() < 0.4 else negs)
            if len(s1) + len(s2) - 1 > self.max_width:
                return None
            q1, s1 = _to_end(q1, s1, j1)
            q2, s2 = _to_end(q2, s2, j2)
            return o.NegOr(q1, q2), s1[:-1] + s2[:-1] + (Not(Or(s1[-1].body, s2[-1].body)),)
        if rule == "ex":
            j = rng.randrange(n)
            a = seq[j]
            exs = [f for f in seq if isinstance(f, Exists)]
            for e in exs:
                t = match_instance(e.body, e.var, a)
                if t is not None and rng.random() < 0.8:
                    q, s = _to_end(p, seq, j)
                    return o.Ex(t, e.var, e.body, q), s[:-1] + (e,)
            terms = first_order_subterms(a)
            x = fresh_name("x", all_names(a))
            if terms:
                t = rng.choice(terms)
                matrix = abstract(rng, a, t, x)
            else:
                t = self.fg.term(1)
                matrix = a
            if not is_quantifier_free(matrix) and rng.random() < 0.5:
                return None
            q, s = _to_end(p, seq, j)
            return o.Ex(t, x, matrix, q), s[:-1] + (Exists(x, matrix),)
        if rule == "quant":
            # ¬∃x A(x), ∃x A(x) from an excluded middle on A(α)
            a = self.formula()
            names = sorted(v for v in a.fv if v in self.fg.free_vars)
            if not names:
                return None
            alpha = rng.choice(names)
            self.eigen_counter += 1
            x = fresh_name("x", all_names(a))
            matrix = subst_prop(a, alpha, Var(x, IOTA))
            q = o.Ex(Var(alpha, IOTA), x, matrix, o.Lem(a))
            q = o.NegEx(alpha, o.Perm((2, 1), q), x)
            return q, (Exists(x, matrix), Not(Exists(x, matrix)))
        if rule == "nex":
            cands = []
            for j, f in enumerate(seq):
                if isinstance(f, Not):
                    for alpha in sorted(f.fv):
                        if all(alpha not in g.fv for k, g in enumerate(seq) if k != j):
                            cands.append((j, alpha))
            if not cands:
                return None
            j, alpha = rng.choice(cands)
            q, s = _to_end(p, seq, j)
            node = o.NegEx(alpha, q)
            concl = o.negex_formula(node, s[-1])
            return node, s[:-1] + (concl,)
        return None

    def proof(self, steps: int) -> o.Proof:
        """A checked proof built from ``steps`` random inferences."""
        pool = [self.lem() for _ in range(2)]
        last = pool[-1]
        for _ in range(steps):
            if self.rng.random() < 0.15:
                pool.append(self.lem())
                continue
            res = self.step(pool)
            if res is None:
                continue
            pool.append(res)
            last = res
            if self.rng.random() < 0.6:
                res = self._contract_any(*res)
                if res is not None:
                    pool.append(res)
                    last = res
        return last[0]

    def _contract_any(self, p, seq):
        n = len(seq)
        pairs = [(j, k) for j in range(n) for k in range(j + 1, n) if alpha_eq(seq[j], seq[k])]
        if not pairs:
            return None
        j, k = self.rng.choice(pairs)
        q, s = _two_to_end(p, seq, j, k)
        return o.Contract(q), s[:-1]


def close_proof(rng: random.Random, p: o.Proof, sig: Signature = DEFAULT_SIG) -> o.Proof:
    """Regularize, then replace every free non-eigen variable by a closed term."""
    p = o.regularize(p)
    eig = set(o.eigenvariables(p))
    free = set()
    for q in o.nodes(p):
        for d in o.local_data(q):
            free |= d.fv
    for alpha in sorted(free - eig):
        c = Const(rng.choice(sig.constants))
        t = Fun(sig.functions[0][0], (c,) * sig.functions[0][1]) if sig.functions and rng.random() < 0.3 else c
        p = o.proof_subst(p, alpha, t)
    return p


def random_closed_proof(rng: random.Random, steps: int = 8, sig: Signature = DEFAULT_SIG,
                        quantifiers: bool = True) -> o.Proof:
    """A checked, regular proof whose end sequent is closed."""
    gen = ProofGen(rng, sig, quantifiers)
    return close_proof(rng, gen.proof(steps), sig)


def random_open_proof(rng: random.Random, steps: int = 8, sig: Signature = DEFAULT_SIG) -> o.Proof:
    """A checked, regular proof that may mention the free variables ``a``, ``b``."""
    return o.regularize(ProofGen(rng, sig, True).proof(steps))


# ---------------------------------------------------------------------------
# Proofs of ∃x A with A quantifier-free
# ---------------------------------------------------------------------------

def random_exists_proof(rng: random.Random, steps: int = 6, sig: Signature = DEFAULT_SIG,
                        max_instances: int = 4) -> o.Proof:
    """A proof of a closed ``∃x A`` (A quantifier-free) with several witnesses."""
    gen = ProofGen(rng, sig, quantifiers=False, max_width=max_instances)
    while True:
        p = gen.proof(steps)
        seq = o.end_sequent(p)
        if 1 <= len(seq) <= max_instances:
            break
    fg = FormulaGen(rng, sig, (), False)
    x = "x"
    witnesses, parts = [], []
    for b in seq:
        terms = first_order_subterms(b)
        t = rng.choice(terms) if terms and rng.random() < 0.85 else fg.term(1)
        witnesses.append(t)
        parts.append(abstract(rng, b, t, x))
    n = len(seq)
    matrix = parts[-1]
    for q in reversed(parts[:-1]):
        matrix = Or(q, matrix)
    goal = Exists(x, matrix)

    cur = seq
    for j in range(n):
        # the j-th original occurrence always sits at position 0 at this point
        p, cur = _to_end(p, cur, 0)
        t = witnesses[j]
        inst = [subst_prop(q, x, t) for q in parts]
        if j < n - 1:
            rest = inst[-1]
            for q in reversed(inst[j + 1:-1]):
                rest = Or(q, rest)
            p = o.OrIntro(1, rest, p)
        for i in range(j - 1, -1, -1):
            p = o.OrIntro(2, inst[i], p)
        p = o.Ex(t, x, matrix, p)
        cur = cur[:-1] + (goal,)
    for _ in range(n - 1):
        p = o.Contract(p)
    return p


# ---------------------------------------------------------------------------
# Two-sided proofs
# ---------------------------------------------------------------------------

class TwoSidedGen:
    def __init__(self, rng: random.Random, sig: Signature = DEFAULT_SIG, max_width: int = 5):
        self.rng = rng
        self.fg = FormulaGen(rng, sig, ("a", "b"), True)
        self.max_width = max_width

    def formula(self):
        return self.fg.formula(self.rng.randint(0, 2))

    def axiom(self):
        a = self.formula()
        return t2.Id(a), ((a,), (a,))

    @staticmethod
    def _ante_last(p, seq, j):
        g, d = seq
        n = len(g)
        if j == n - 1:
            return p, seq
        perm = tuple(k + 1 for k in range(n) if k != j) + (j + 1,)
        return t2.Perm2(perm, tuple(range(1, len(d) + 1)), p), (tuple(g[k - 1] for k in perm), d)

    @staticmethod
    def _succ_first(p, seq, j):
        g, d = seq
        n = len(d)
        if j == 0:
            return p, seq
        perm = (j + 1,) + tuple(k + 1 for k in range(n) if k != j)
        return t2.Perm2(tuple(range(1, len(g) + 1)), perm, p), (g, tuple(d[k - 1] for k in perm))

    def step(self, pool):
        rng = self.rng
        p, (g, d) = rng.choice(pool)
        rule = rng.choice(["orr", "orl", "negr", "negl", "exr", "exl", "contractr",
                           "contractl", "weakr", "weakl", "cut", "perm"])
        width = len(g) + len(d)
        if rule == "orr" and d:
            q, (g2, d2) = self._succ_first(p, (g, d), rng.randrange(len(d)))
            i, other = rng.choice((1, 2)), self.formula()
            a = d2[0]
            return t2.OrR(i, other, q), (g2, ((Or(a, other) if i == 1 else Or(other, a)),) + d2[1:])
        if rule == "orl":
            a, b = self.formula(), self.formula()
            return (t2.OrL(t2.WeakL(a, p), t2.WeakL(b, p)), (g + (Or(a, b),), d))
        if rule == "negr" and g:
            q, (g2, d2) = self._ante_last(p, (g, d), rng.randrange(len(g)))
            return t2.NegR(q), (g2[:-1], (Not(g2[-1]),) + d2)
        if rule == "negl" and d:
            q, (g2, d2) = self._succ_first(p, (g, d), rng.randrange(len(d)))
            return t2.NegL(q), (g2 + (Not(d2[0]),), d2[1:])
        if rule == "exr" and d:
            q, (g2, d2) = self._succ_first(p, (g, d), rng.randrange(len(d)))
            a = d2[0]
            terms = first_order_subterms(a)
            x = fresh_name("x", all_names(a))
            if terms:
                t = rng.choice(terms)
                m = abstract(rng, a, t, x)
            else:
                t, m = self.fg.term(1), a
            return t2.ExR(t, x, m, q), (g2, (Exists(x, m),) + d2[1:])
        if rule == "exl" and g:
            cands = [(j, al) for j, f in enumerate(g) for al in sorted(f.fv)
                     if all(al not in h.fv for k, h in enumerate(g) if k != j)
                     and all(al not in h.fv for h in d)]
            if not cands:
                return None
            j, al = rng.choice(cands)
            q, (g2, d2) = self._ante_last(p, (g, d), j)
            node = t2.ExL(al, q)
            body = g2[-1]
            x = o.negex_var(node, body)
            return node, (g2[:-1] + (Exists(x, subst_prop(body, al, Var(x, IOTA))),), d2)
        if rule == "contractr":
            pairs = [(j, k) for j in range(len(d)) for k in range(j + 1, len(d)) if alpha_eq(d[j], d[k])]
            if not pairs:
                return None
            j, k = rng.choice(pairs)
            rest = [m for m in range(len(d)) if m not in (j, k)]
            perm = (j + 1, k + 1) + tuple(m + 1 for m in rest)
            q = t2.Perm2(tuple(range(1, len(g) + 1)), perm, p)
            d2 = tuple(d[m - 1] for m in perm)
            return t2.ContractR(q), (g, d2[1:])
        if rule == "contractl":
            pairs = [(j, k) for j in range(len(g)) for k in range(j + 1, len(g)) if alpha_eq(g[j], g[k])]
            if not pairs:
                return None
            j, k = rng.choice(pairs)
            rest = [m for m in range(len(g)) if m not in (j, k)]
            perm = tuple(m + 1 for m in rest) + (j + 1, k + 1)
            q = t2.Perm2(perm, tuple(range(1, len(d) + 1)), p)
            g2 = tuple(g[m - 1] for m in perm)
            return t2.ContractL(q), (g2[:-1], d)
        if rule in ("weakr", "weakl") and width < self.max_width:
            a = self.formula()
            if rule == "weakr":
                return t2.WeakR(a, p), (g, (a,) + d)
            return t2.WeakL(a, p), (g + (a,), d)
        if rule == "cut" and d:
            j = rng.randrange(len(d))
            a = d[j]
            partners = [(p2, s2, m) for (p2, s2) in pool for m, b in enumerate(s2[0]) if alpha_eq(a, b)]
            if partners and rng.random() < 0.7:
                p2, s2, m = rng.choice(partners)
            else:
                p2, s2, m = t2.Id(a), ((a,), (a,)), 0
            q1, (g1, d1) = self._succ_first(p, (g, d), j)
            q2, (g3, d3) = self._ante_last(p2, s2, m)
            if len(g1) + len(d1) + len(g3) + len(d3) - 2 > self.max_width + 1:
                return None
            return t2.Cut2(d1[0], q1, q2), (g1 + g3[:-1], d1[1:] + d3)
        if rule == "perm" and width > 1:
            lp = list(range(1, len(g) + 1))
            rp = list(range(1, len(d) + 1))
            rng.shuffle(lp)
            rng.shuffle(rp)
            return t2.Perm2(tuple(lp), tuple(rp), p), (tuple(g[k - 1] for k in lp), tuple(d[k - 1] for k in rp))
        return None

    def proof(self, steps: int) -> t2.Proof2:
        pool = [self.axiom() for _ in range(2)]
        last = pool[-1]
        for _ in range(steps):
            if self.rng.random() < 0.15:
                pool.append(self.axiom())
                continue
            res = self.step(pool)
            if res is not None:
                pool.append(res)
                last = res
        return last[0]


def random_two_sided_proof(rng: random.Random, steps: int = 8, sig: Signature = DEFAULT_SIG) -> t2.Proof2:
    return TwoSidedGen(rng, sig).proof(steps)
