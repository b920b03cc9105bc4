"""Decision procedure for the quantifier-free fragment used in verification.

Propositions are made case-free with the two case axioms, atoms are keyed by
their normalized arguments, closed equations are decided by convertibility,
and the remaining propositional question is settled by Shannon splitting.
"""
from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

from .errors import NonClosedTerm
from .interpretation import TransformerEnv, canonical_args, transform, winning
from .kernel import DEFAULT_FUEL, alpha_eq, alpha_key, normalize, normalize_prop
from .syntax import (
    App, Atom, Case, Equiv, Formula, Fun, Not, Or, Pair, Proj, Term,
    conj, disj,
)

# ---------------------------------------------------------------------------
# Case elimination
# ---------------------------------------------------------------------------


def _lift_term(t: Term):
    """Leftmost case node of ``t`` not under a binder, with a rebuilder."""
    if isinstance(t, Case):
        return t, lambda r: r
    if isinstance(t, Fun):
        for j, a in enumerate(t.args):
            hit = _lift_term(a)
            if hit:
                c, rb = hit
                return c, (lambda r, j=j, rb=rb: Fun(t.name, t.args[:j] + (rb(r),) + t.args[j + 1:]))
    elif isinstance(t, Pair):
        hit = _lift_term(t.fst)
        if hit:
            c, rb = hit
            return c, lambda r: Pair(rb(r), t.snd)
        hit = _lift_term(t.snd)
        if hit:
            c, rb = hit
            return c, lambda r: Pair(t.fst, rb(r))
    elif isinstance(t, Proj):
        hit = _lift_term(t.arg)
        if hit:
            c, rb = hit
            return c, lambda r: Proj(t.index, rb(r))
    elif isinstance(t, App):
        hit = _lift_term(t.fun)
        if hit:
            c, rb = hit
            return c, lambda r: App(rb(r), t.arg)
        hit = _lift_term(t.arg)
        if hit:
            c, rb = hit
            return c, lambda r: App(t.fun, rb(r))
    return None


def _lift_atom(p):
    if isinstance(p, Atom):
        for j, a in enumerate(p.args):
            hit = _lift_term(a)
            if hit:
                c, rb = hit
                return c, (lambda r, j=j, rb=rb: Atom(p.pred, p.args[:j] + (rb(r),) + p.args[j + 1:]))
    elif isinstance(p, Equiv):
        hit = _lift_term(p.lhs)
        if hit:
            c, rb = hit
            return c, lambda r: Equiv(rb(r), p.rhs)
        hit = _lift_term(p.rhs)
        if hit:
            c, rb = hit
            return c, lambda r: Equiv(p.lhs, rb(r))
    return None


def eliminate_cases(p: Formula, fuel: int = DEFAULT_FUEL) -> Formula:
    """Case-free equivalent of a closed proposition.

    ``R(..case_B{s}{s'}..)`` becomes ``(B ∧ R(..s..)) ∨ (¬B ∧ R(..s'..))`` with
    ``B`` itself made case-free first.
    """
    if p.fv:
        raise NonClosedTerm(p.fv)
    return _elim(p, fuel)


def _elim(p, fuel):
    if isinstance(p, Or):
        return Or(_elim(p.left, fuel), _elim(p.right, fuel))
    if isinstance(p, Not):
        return Not(_elim(p.body, fuel))
    hit = _lift_atom(p)
    if hit is None:
        return p
    c, rebuild = hit
    cond = _elim(c.cond, fuel)
    yes = _elim(normalize_prop(rebuild(c.then), fuel), fuel)
    no = _elim(normalize_prop(rebuild(c.orelse), fuel), fuel)
    return Or(conj(cond, yes), conj(Not(cond), no))


# ---------------------------------------------------------------------------
# Propositional skeleton
# ---------------------------------------------------------------------------

TRUE = ("T",)


class Skeleton:
    """Boolean structure over atom keys.  ``atoms`` maps key -> representative."""

    def __init__(self):
        self.atoms: Dict[object, Formula] = {}

    def build(self, p: Formula, fuel: int = DEFAULT_FUEL):
        if isinstance(p, Or):
            return ("or", self.build(p.left, fuel), self.build(p.right, fuel))
        if isinstance(p, Not):
            return ("not", self.build(p.body, fuel))
        if isinstance(p, Atom):
            if p.fv:
                raise NonClosedTerm(p.fv)
            q = Atom(p.pred, tuple(normalize(a, fuel) for a in p.args))
            key = alpha_key(q)
            self.atoms.setdefault(key, q)
            return ("v", key)
        if isinstance(p, Equiv):
            if p.fv:
                raise NonClosedTerm(p.fv)
            lhs, rhs = normalize(p.lhs, fuel), normalize(p.rhs, fuel)
            if alpha_eq(lhs, rhs):
                return TRUE
            key = ("≡", alpha_key(lhs), alpha_key(rhs))
            self.atoms.setdefault(key, Equiv(lhs, rhs))
            return ("v", key)
        raise TypeError(f"not a proposition: {p!r}")


def _assign(f, key, val):
    tag = f[0]
    if tag == "v":
        if f[1] == key:
            return val
        return f
    if tag == "T":
        return True
    if tag == "not":
        b = _assign(f[1], key, val)
        if b is True or b is False:
            return not b
        return ("not", b)
    a = _assign(f[1], key, val)
    if a is True:
        return True
    b = _assign(f[2], key, val)
    if b is True:
        return True
    if a is False:
        return b
    if b is False:
        return a
    return ("or", a, b)


def _simplify(f):
    return _assign(f, object(), None)


def _first_var(f):
    while True:
        tag = f[0]
        if tag == "v":
            return f[1]
        f = f[1]


def _counterexample(f, assignment):
    """A falsifying extension of ``assignment`` or None if ``f`` is valid."""
    if f is True:
        return None
    if f is False:
        return assignment
    key = _first_var(f)
    for val in (False, True):
        g = _assign(f, key, val)
        res = _counterexample(g, {**assignment, key: val})
        if res is not None:
            return res
    return None


def falsifying_assignment(p: Formula, fuel: int = DEFAULT_FUEL) -> Optional[Dict[Formula, bool]]:
    """Truth values for atoms that make a case-free ``p`` false, or None."""
    sk = Skeleton()
    f = _simplify(sk.build(p, fuel))
    res = _counterexample(f, {})
    if res is None:
        return None
    return {sk.atoms[k]: v for k, v in res.items()}


def tautology(p: Formula, fuel: int = DEFAULT_FUEL) -> bool:
    """True iff a case-free closed proposition holds under every atom assignment."""
    sk = Skeleton()
    return _counterexample(_simplify(sk.build(p, fuel)), {}) is None


# ---------------------------------------------------------------------------
# Soundness check
# ---------------------------------------------------------------------------

def soundness_formula(env: TransformerEnv, args: Sequence[Term]) -> Formula:
    """``⋁_i W[A_i](F_i(args), args_i)``."""
    parts = []
    for i, (a, v) in enumerate(zip(env.end_sequent, args), start=1):
        parts.append(winning(a, transform(env, i, args), v, check=False))
    return disj(parts)


def soundness_report(proof, args: Optional[Sequence[Term]] = None, const: str = "c",
                     fuel: int = DEFAULT_FUEL) -> Tuple[bool, Formula, Optional[dict]]:
    """``(holds, case-free formula, falsifying assignment or None)``."""
    env = TransformerEnv(proof, const)
    if args is None:
        args = canonical_args(env.end_sequent, const)
    d = soundness_formula(env, args)
    e = eliminate_cases(normalize_prop(d, fuel), fuel)
    bad = falsifying_assignment(e, fuel)
    return bad is None, e, bad


def check_soundness(proof, args: Optional[Sequence[Term]] = None, const: str = "c",
                    fuel: int = DEFAULT_FUEL) -> bool:
    """Does the extracted evidence win for some occurrence, provably in QF?"""
    return soundness_report(proof, args, const, fuel)[0]
