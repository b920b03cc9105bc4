"""The typed term calculus: typing, substitution, reduction, normalization.

Reduction rules (applied at a node, in this priority order)::

    (λx.u) v            -->  u[v/x]
    (case_A{f}{g}) u    -->  case_A{f u}{g u}
    f (case_A{u}{v})    -->  case_A{f u}{f v}
    π_i (u1, u2)        -->  u_i
    π_i (case_A{u}{v})  -->  case_A{π_i u}{π_i v}
    g(.., case_A{u}{v}, ..)  -->  case_A{g(.., u, ..)}{g(.., v, ..)}   (g a function symbol)

The strategy is leftmost-outermost.  Children are visited left to right; the
children of ``case_A{u}{v}`` are the terms embedded in ``A`` followed by
``u`` and ``v``.  ``normalize`` computes exactly the normal form reached by
iterating ``step`` but avoids re-searching the whole term for every redex.
"""
from __future__ import annotations

from itertools import count
from typing import Callable, Dict, Mapping, Optional

from .errors import StepBudgetExceeded, TypingError, UnboundVariable
from .syntax import (
    EPS, IOTA, NULL, Abs, App, Arrow, Atom, Case, Const, Eps, Equiv, Exists,
    Formula, Fun, Iota, Not, Null, Or, Pair, Prod, Proj, SimpleType, Term, Var,
)

DEFAULT_FUEL = 1_000_000


# ---------------------------------------------------------------------------
# Fresh names and substitution
# ---------------------------------------------------------------------------

def fresh_name(base: str, avoid) -> str:
    """``base`` with its numeric suffix replaced by the least free one."""
    root = base.rstrip("0123456789") or base
    for k in count(1):
        cand = f"{root}{k}"
        if cand not in avoid:
            return cand


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding ``t[s/x]``.  Descends into case conditions."""
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return s
    if isinstance(t, Fun):
        return Fun(t.name, tuple(substitute(a, x, s) for a in t.args))
    if isinstance(t, Pair):
        return Pair(substitute(t.fst, x, s), substitute(t.snd, x, s))
    if isinstance(t, Proj):
        return Proj(t.index, substitute(t.arg, x, s))
    if isinstance(t, App):
        return App(substitute(t.fun, x, s), substitute(t.arg, x, s))
    if isinstance(t, Case):
        return Case(subst_prop(t.cond, x, s), substitute(t.then, x, s),
                    substitute(t.orelse, x, s))
    if isinstance(t, Abs):
        var, body = t.var, t.body
        if var in s.fv:
            new = fresh_name(var, s.fv | body.fv | {x})
            body = substitute(body, var, Var(new, t.var_type))
            var = new
        return Abs(var, t.var_type, substitute(body, x, s))
    raise TypeError(f"not a term: {t!r}")


def subst_prop(f: Formula, x: str, s: Term) -> Formula:
    """Capture-avoiding substitution into a formula or proposition."""
    if x not in f.fv:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute(a, x, s) for a in f.args))
    if isinstance(f, Or):
        return Or(subst_prop(f.left, x, s), subst_prop(f.right, x, s))
    if isinstance(f, Not):
        return Not(subst_prop(f.body, x, s))
    if isinstance(f, Equiv):
        return Equiv(substitute(f.lhs, x, s), substitute(f.rhs, x, s))
    if isinstance(f, Exists):
        var, body = f.var, f.body
        if var in s.fv:
            new = fresh_name(var, s.fv | body.fv | {x})
            body = subst_prop(body, var, Var(new, IOTA))
            var = new
        return Exists(var, subst_prop(body, x, s))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Alpha-equivalence
# ---------------------------------------------------------------------------

def alpha_eq(a, b) -> bool:
    """Equality up to renaming of bound variables (terms or formulas)."""
    return _aeq(a, b, {}, {}, 0)


def _aeq(a, b, ea, eb, depth) -> bool:
    if a is b and all(ea.get(n) == eb.get(n) for n in a.fv):
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        la, lb = ea.get(a.name), eb.get(b.name)
        if la is None and lb is None:
            return a.name == b.name and a.type == b.type
        return la == lb
    if isinstance(a, (Eps, Const)):
        return a == b
    if isinstance(a, Fun):
        return (a.name == b.name and len(a.args) == len(b.args)
                and all(_aeq(x, y, ea, eb, depth) for x, y in zip(a.args, b.args)))
    if isinstance(a, Pair):
        return _aeq(a.fst, b.fst, ea, eb, depth) and _aeq(a.snd, b.snd, ea, eb, depth)
    if isinstance(a, Proj):
        return a.index == b.index and _aeq(a.arg, b.arg, ea, eb, depth)
    if isinstance(a, App):
        return _aeq(a.fun, b.fun, ea, eb, depth) and _aeq(a.arg, b.arg, ea, eb, depth)
    if isinstance(a, Abs):
        return a.var_type == b.var_type and _aeq(
            a.body, b.body, {**ea, a.var: depth}, {**eb, b.var: depth}, depth + 1)
    if isinstance(a, Case):
        return (_aeq(a.cond, b.cond, ea, eb, depth)
                and _aeq(a.then, b.then, ea, eb, depth)
                and _aeq(a.orelse, b.orelse, ea, eb, depth))
    if isinstance(a, Atom):
        return (a.pred == b.pred and len(a.args) == len(b.args)
                and all(_aeq(x, y, ea, eb, depth) for x, y in zip(a.args, b.args)))
    if isinstance(a, Or):
        return _aeq(a.left, b.left, ea, eb, depth) and _aeq(a.right, b.right, ea, eb, depth)
    if isinstance(a, Not):
        return _aeq(a.body, b.body, ea, eb, depth)
    if isinstance(a, Equiv):
        return _aeq(a.lhs, b.lhs, ea, eb, depth) and _aeq(a.rhs, b.rhs, ea, eb, depth)
    if isinstance(a, Exists):
        return _aeq(a.body, b.body, {**ea, a.var: depth}, {**eb, b.var: depth}, depth + 1)
    raise TypeError(f"cannot compare {a!r}")


def alpha_key(x, env: Optional[Dict[str, int]] = None):
    """A hashable key; two objects share a key iff they are alpha-equal."""
    env = env or {}
    d = len(env)
    if isinstance(x, Var):
        if x.name in env:
            return ("b", env[x.name])
        return ("v", x.name, x.type)
    if isinstance(x, Eps):
        return ("e",)
    if isinstance(x, Const):
        return ("c", x.name)
    if isinstance(x, Fun):
        return ("f", x.name) + tuple(alpha_key(a, env) for a in x.args)
    if isinstance(x, Pair):
        return ("p", alpha_key(x.fst, env), alpha_key(x.snd, env))
    if isinstance(x, Proj):
        return ("pi", x.index, alpha_key(x.arg, env))
    if isinstance(x, App):
        return ("@", alpha_key(x.fun, env), alpha_key(x.arg, env))
    if isinstance(x, Abs):
        return ("lam", x.var_type, alpha_key(x.body, {**env, x.var: d}))
    if isinstance(x, Case):
        return ("case", alpha_key(x.cond, env), alpha_key(x.then, env),
                alpha_key(x.orelse, env))
    if isinstance(x, Atom):
        return ("R", x.pred) + tuple(alpha_key(a, env) for a in x.args)
    if isinstance(x, Or):
        return ("or", alpha_key(x.left, env), alpha_key(x.right, env))
    if isinstance(x, Not):
        return ("not", alpha_key(x.body, env))
    if isinstance(x, Equiv):
        return ("eq", alpha_key(x.lhs, env), alpha_key(x.rhs, env))
    if isinstance(x, Exists):
        return ("ex", alpha_key(x.body, {**env, x.var: d}))
    raise TypeError(f"cannot key {x!r}")


# ---------------------------------------------------------------------------
# Typing
# ---------------------------------------------------------------------------

def annotation_context(*items) -> Dict[str, SimpleType]:
    """Context assigning every free variable of ``items`` its annotated type."""
    ctx: Dict[str, SimpleType] = {}

    def visit(x, bound):
        if isinstance(x, Var):
            if x.name not in bound:
                ctx.setdefault(x.name, x.type)
        elif isinstance(x, Abs):
            visit(x.body, bound | {x.var})
        elif isinstance(x, Exists):
            visit(x.body, bound | {x.var})
        else:
            for c in _children(x):
                visit(c, bound)

    for it in items:
        visit(it, frozenset())
    return ctx


def _children(x):
    if isinstance(x, (Fun, Atom)):
        return x.args
    if isinstance(x, Pair):
        return (x.fst, x.snd)
    if isinstance(x, Proj):
        return (x.arg,)
    if isinstance(x, App):
        return (x.fun, x.arg)
    if isinstance(x, Abs):
        return (x.body,)
    if isinstance(x, Case):
        return (x.cond, x.then, x.orelse)
    if isinstance(x, Or):
        return (x.left, x.right)
    if isinstance(x, (Not, Exists)):
        return (x.body,)
    if isinstance(x, Equiv):
        return (x.lhs, x.rhs)
    return ()


def typecheck(t: Term, ctx: Optional[Mapping[str, SimpleType]] = None) -> SimpleType:
    """Infer the unique type of ``t``; raise TypingError / UnboundVariable."""
    return _infer(t, dict(ctx or {}), ())


def _loc(path):
    return "/".join(path)


def _infer(t, ctx, path) -> SimpleType:
    if isinstance(t, Eps):
        return NULL
    if isinstance(t, Const):
        return IOTA
    if isinstance(t, Var):
        if t.name not in ctx:
            raise UnboundVariable(t.name)
        if ctx[t.name] != t.type:
            raise TypingError(_loc(path), ctx[t.name], t.type)
        return t.type
    if isinstance(t, Fun):
        for j, a in enumerate(t.args):
            ty = _infer(a, ctx, path + (f"{t.name}[{j + 1}]",))
            if ty != IOTA:
                raise TypingError(_loc(path + (f"{t.name}[{j + 1}]",)), IOTA, ty)
        return IOTA
    if isinstance(t, Pair):
        return Prod(_infer(t.fst, ctx, path + ("fst",)),
                    _infer(t.snd, ctx, path + ("snd",)))
    if isinstance(t, Proj):
        ty = _infer(t.arg, ctx, path + (f"π{t.index}",))
        if not isinstance(ty, Prod):
            raise TypingError(_loc(path), "a product type", ty)
        return ty.left if t.index == 1 else ty.right
    if isinstance(t, Abs):
        inner = dict(ctx)
        inner[t.var] = t.var_type
        return Arrow(t.var_type, _infer(t.body, inner, path + (f"λ{t.var}",)))
    if isinstance(t, App):
        fty = _infer(t.fun, ctx, path + ("fun",))
        aty = _infer(t.arg, ctx, path + ("arg",))
        if not isinstance(fty, Arrow):
            raise TypingError(_loc(path + ("fun",)), "a function type", fty)
        if fty.domain != aty:
            raise TypingError(_loc(path + ("arg",)), fty.domain, aty)
        return fty.codomain
    if isinstance(t, Case):
        _check_prop(t.cond, ctx, path + ("cond",), allow_exists=False)
        a = _infer(t.then, ctx, path + ("then",))
        b = _infer(t.orelse, ctx, path + ("else",))
        if a != b:
            raise TypingError(_loc(path + ("else",)), a, b)
        return a
    raise TypeError(f"not a term: {t!r}")


def check_proposition(p: Formula, ctx=None) -> None:
    """Well-formedness of a proposition (no quantifiers)."""
    _check_prop(p, dict(ctx or {}), (), allow_exists=False)


def check_formula_terms(f: Formula, ctx=None) -> None:
    """Every atom argument of a formula is an individual term."""
    _check_prop(f, dict(ctx or {}), (), allow_exists=True)


def _check_prop(p, ctx, path, allow_exists):
    if isinstance(p, Atom):
        for j, a in enumerate(p.args):
            ty = _infer(a, ctx, path + (f"{p.pred}[{j + 1}]",))
            if ty != IOTA:
                raise TypingError(_loc(path + (f"{p.pred}[{j + 1}]",)), IOTA, ty)
    elif isinstance(p, Or):
        _check_prop(p.left, ctx, path + ("∨1",), allow_exists)
        _check_prop(p.right, ctx, path + ("∨2",), allow_exists)
    elif isinstance(p, Not):
        _check_prop(p.body, ctx, path + ("¬",), allow_exists)
    elif isinstance(p, Equiv):
        a = _infer(p.lhs, ctx, path + ("≡1",))
        b = _infer(p.rhs, ctx, path + ("≡2",))
        if a != b:
            raise TypingError(_loc(path + ("≡2",)), a, b)
    elif isinstance(p, Exists):
        if not allow_exists:
            raise TypingError(_loc(path), "a quantifier-free proposition", "∃")
        inner = dict(ctx)
        inner[p.var] = IOTA
        _check_prop(p.body, inner, path + (f"∃{p.var}",), allow_exists)
    else:
        raise TypeError(f"not a proposition: {p!r}")


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------

def _contract(t: Term) -> Optional[Term]:
    """Contract the redex at the root of ``t``, if there is one."""
    if isinstance(t, App):
        f, a = t.fun, t.arg
        if isinstance(f, Abs):
            return substitute(f.body, f.var, a)
        if isinstance(f, Case):
            return Case(f.cond, App(f.then, a), App(f.orelse, a))
        if isinstance(a, Case):
            return Case(a.cond, App(f, a.then), App(f, a.orelse))
    elif isinstance(t, Proj):
        s = t.arg
        if isinstance(s, Pair):
            return s.fst if t.index == 1 else s.snd
        if isinstance(s, Case):
            return Case(s.cond, Proj(t.index, s.then), Proj(t.index, s.orelse))
    elif isinstance(t, Fun):
        for j, a in enumerate(t.args):
            if isinstance(a, Case):
                pre, post = t.args[:j], t.args[j + 1:]
                return Case(a.cond, Fun(t.name, pre + (a.then,) + post),
                            Fun(t.name, pre + (a.orelse,) + post))
    return None


def _is_root_redex(t: Term) -> bool:
    if isinstance(t, App):
        return isinstance(t.fun, (Abs, Case)) or isinstance(t.arg, Case)
    if isinstance(t, Proj):
        return isinstance(t.arg, (Pair, Case))
    if isinstance(t, Fun):
        return any(isinstance(a, Case) for a in t.args)
    return False


def is_normal(x) -> bool:
    """No redex anywhere, including inside case conditions (cached)."""
    d = x.__dict__
    if "_nf" in d:
        return d["_nf"]
    if isinstance(x, Term) and _is_root_redex(x):
        res = False
    else:
        res = all(is_normal(c) for c in _children(x))
    d["_nf"] = res
    return res


def step(t: Term) -> Optional[Term]:
    """One leftmost-outermost reduction step, or None on a normal form."""
    r = _contract(t)
    if r is not None:
        return r
    if is_normal(t):
        return None
    if isinstance(t, Fun):
        args = list(t.args)
        for j, a in enumerate(args):
            s = step(a)
            if s is not None:
                args[j] = s
                return Fun(t.name, tuple(args))
    elif isinstance(t, Pair):
        s = step(t.fst)
        if s is not None:
            return Pair(s, t.snd)
        return Pair(t.fst, step(t.snd))
    elif isinstance(t, Proj):
        return Proj(t.index, step(t.arg))
    elif isinstance(t, App):
        s = step(t.fun)
        if s is not None:
            return App(s, t.arg)
        return App(t.fun, step(t.arg))
    elif isinstance(t, Abs):
        return Abs(t.var, t.var_type, step(t.body))
    elif isinstance(t, Case):
        c = step_prop(t.cond)
        if c is not None:
            return Case(c, t.then, t.orelse)
        s = step(t.then)
        if s is not None:
            return Case(t.cond, s, t.orelse)
        return Case(t.cond, t.then, step(t.orelse))
    raise AssertionError("non-normal term without a redex")


def step_prop(p: Formula) -> Optional[Formula]:
    """One step inside the leftmost non-normal term of a proposition."""
    if is_normal(p):
        return None
    if isinstance(p, Atom):
        args = list(p.args)
        for j, a in enumerate(args):
            s = step(a)
            if s is not None:
                args[j] = s
                return Atom(p.pred, tuple(args))
    if isinstance(p, Or):
        s = step_prop(p.left)
        if s is not None:
            return Or(s, p.right)
        return Or(p.left, step_prop(p.right))
    if isinstance(p, Not):
        return Not(step_prop(p.body))
    if isinstance(p, Equiv):
        s = step(p.lhs)
        if s is not None:
            return Equiv(s, p.rhs)
        return Equiv(p.lhs, step(p.rhs))
    if isinstance(p, Exists):
        return Exists(p.var, step_prop(p.body))
    raise AssertionError("non-normal proposition without a redex")


class _Fuel:
    __slots__ = ("budget", "used")

    def __init__(self, budget):
        self.budget = budget
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.budget:
            raise StepBudgetExceeded(self.budget)


def _is_abs_or_case(t):
    return isinstance(t, (Abs, Case))


def _is_pair_or_case(t):
    return isinstance(t, (Pair, Case))


def _is_case(t):
    return isinstance(t, Case)


class _Normalizer:
    def __init__(self, fuel):
        self.fuel = fuel
        self.memo: Dict[int, object] = {}
        self.pins = []

    def full(self, t):
        if is_normal(t):
            return t
        hit = self.memo.get(id(t))
        if hit is not None:
            return hit
        r = self.run(t, None)
        self.memo[id(t)] = r
        self.pins.append(t)
        return r

    def run(self, t: Term, stop: Optional[Callable[[Term], bool]]) -> Term:
        """Reduce in leftmost-outermost order until ``stop`` holds or normal."""
        fuel = self.fuel
        while True:
            if stop is not None and stop(t):
                return t
            r = _contract(t)
            if r is not None:
                fuel.tick()
                t = r
                continue
            if is_normal(t):
                return t
            if isinstance(t, App):
                f = self.run(t.fun, _is_abs_or_case)
                if isinstance(f, (Abs, Case)):
                    t = App(f, t.arg)
                    continue
                a = self.run(t.arg, _is_case)
                t = App(f, a)
                if isinstance(a, Case):
                    continue
                return t
            if isinstance(t, Proj):
                s = self.run(t.arg, _is_pair_or_case)
                t = Proj(t.index, s)
                if isinstance(s, (Pair, Case)):
                    continue
                return t
            if isinstance(t, Fun):
                args = list(t.args)
                hit_case = False
                for j, a in enumerate(args):
                    args[j] = self.run(a, _is_case)
                    if isinstance(args[j], Case):
                        hit_case = True
                        break
                t = Fun(t.name, tuple(args))
                if hit_case:
                    continue
                return t
            if isinstance(t, Pair):
                return Pair(self.full(t.fst), self.full(t.snd))
            if isinstance(t, Abs):
                return Abs(t.var, t.var_type, self.full(t.body))
            if isinstance(t, Case):
                return Case(self.prop(t.cond), self.full(t.then), self.full(t.orelse))
            raise AssertionError(f"unexpected non-normal term {t!r}")

    def prop(self, p: Formula) -> Formula:
        if is_normal(p):
            return p
        if isinstance(p, Atom):
            return Atom(p.pred, tuple(self.full(a) for a in p.args))
        if isinstance(p, Or):
            return Or(self.prop(p.left), self.prop(p.right))
        if isinstance(p, Not):
            return Not(self.prop(p.body))
        if isinstance(p, Equiv):
            return Equiv(self.full(p.lhs), self.full(p.rhs))
        if isinstance(p, Exists):
            return Exists(p.var, self.prop(p.body))
        raise TypeError(f"not a proposition: {p!r}")


def normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """The leftmost-outermost normal form of ``t``."""
    return _Normalizer(_Fuel(fuel)).full(t)


def normalize_counted(t: Term, fuel: int = DEFAULT_FUEL):
    """``(normal form, number of contractions performed)``."""
    n = _Normalizer(_Fuel(fuel))
    return n.full(t), n.fuel.used


def normalize_prop(p: Formula, fuel: int = DEFAULT_FUEL) -> Formula:
    """Normalize every term embedded in a proposition."""
    return _Normalizer(_Fuel(fuel)).prop(p)


def normalize_by_steps(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Iterate :func:`step` to a normal form (slow reference path)."""
    for _ in range(fuel):
        s = step(t)
        if s is None:
            return t
        t = s
    if step(t) is None:
        return t
    raise StepBudgetExceeded(fuel)


def convertible(u: Term, v: Term, fuel: int = DEFAULT_FUEL) -> bool:
    return alpha_eq(normalize(u, fuel), normalize(v, fuel))


# ---------------------------------------------------------------------------
# Inhabitants
# ---------------------------------------------------------------------------

def inhabitant(ty: SimpleType, const: str = "c") -> Term:
    """The canonical closed inhabitant of ``ty``."""
    if isinstance(ty, Null):
        return EPS
    if isinstance(ty, Iota):
        return Const(const)
    if isinstance(ty, Prod):
        return Pair(inhabitant(ty.left, const), inhabitant(ty.right, const))
    if isinstance(ty, Arrow):
        return Abs("z", ty.domain, inhabitant(ty.codomain, const))
    raise TypeError(f"not a type: {ty!r}")


# ---------------------------------------------------------------------------
# Normal-form shapes
# ---------------------------------------------------------------------------

def has_normal_shape(t: Term, ty: SimpleType) -> bool:
    """Top-level shape of a closed normal form of type ``ty``."""
    if isinstance(t, Case):
        return True
    if isinstance(ty, Null):
        return isinstance(t, Eps)
    if isinstance(ty, Iota):
        from .syntax import is_first_order
        return is_first_order(t)
    if isinstance(ty, Prod):
        return isinstance(t, Pair)
    if isinstance(ty, Arrow):
        return isinstance(t, Abs)
    return False
