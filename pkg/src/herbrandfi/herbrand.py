"""Herbrand disjunctions read off from the evidence for ``∃x A``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .calculus.onesided import Proof
from .errors import MalformedNormalForm, NotHerbrandGoal
from .interpretation import TransformerEnv, canonical_evidence, counter_type, transform
from .kernel import DEFAULT_FUEL, alpha_key, normalize_counted
from .logic import is_quantifier_free, subst_formula
from .syntax import Abs, Case, Exists, Formula, Not, Pair, Term, disj, is_first_order
from .verifier import tautology


@dataclass(frozen=True)
class HerbrandResult:
    witnesses: Tuple[Term, ...]
    disjunction: Formula
    realizer: Term
    verified: bool
    step_count: int = 0


def read_off(u: Term) -> List[Term]:
    """Witness terms of a closed normal ``u : [∃x A]``, in order, with repeats."""
    out: List[Term] = []
    stack = [u]
    while stack:
        t = stack.pop()
        if isinstance(t, Case):
            stack += [t.orelse, t.then]
        elif isinstance(t, Pair):
            w = t.fst
            if isinstance(w, Case):
                stack += [Pair(w.orelse, t.snd), Pair(w.then, t.snd)]
            elif is_first_order(w) and not w.fv:
                out.append(w)
            else:
                raise MalformedNormalForm(f"first component {w}")
        else:
            raise MalformedNormalForm(f"{type(t).__name__} {t}")
    return out


def dedup(terms) -> List[Term]:
    seen = set()
    out = []
    for t in terms:
        k = alpha_key(t)
        if k not in seen:
            seen.add(k)
            out.append(t)
    return out


def herbrand_goal(seq) -> Exists:
    if len(seq) != 1 or not isinstance(seq[0], Exists):
        raise NotHerbrandGoal("end sequent must be a single ∃x A")
    goal = seq[0]
    if not is_quantifier_free(goal.body):
        raise NotHerbrandGoal("matrix of the goal must be quantifier-free")
    if goal.fv:
        raise NotHerbrandGoal(f"goal is not closed (free: {', '.join(sorted(goal.fv))})")
    return goal


def extract(p: Proof, const: str = "c", counter: Optional[Term] = None,
            fuel: int = DEFAULT_FUEL) -> HerbrandResult:
    """Witnesses and verified Herbrand disjunction for a proof of ``∃x A``.

    ``counter`` defaults to ``λz. E_¬A``; any closed inhabitant of ``⟨∃x A⟩``
    may be supplied instead.
    """
    env = TransformerEnv(p, const)
    goal = herbrand_goal(env.end_sequent)
    if counter is None:
        counter = Abs("z", typecheck_goal_arg(goal), canonical_evidence(Not(goal.body), const))
    raw = transform(env, 1, [counter])
    u, steps = normalize_counted(raw, fuel)
    witnesses = tuple(dedup(read_off(u)))
    disjunction = disj(subst_formula(goal.body, goal.var, t) for t in witnesses)
    return HerbrandResult(witnesses, disjunction, u, tautology(disjunction, fuel), steps)


def typecheck_goal_arg(goal: Exists):
    """Type of the bound variable of ``λz. E_¬A`` (that is, ``[∃x A]``)."""
    ty = counter_type(goal)
    return ty.domain
