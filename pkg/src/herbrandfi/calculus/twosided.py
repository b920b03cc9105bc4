"""Two-sided classical sequent calculus (G1c) over ∨, ¬, ∃.

A sequent is a pair ``(antecedent, succedent)`` of formula tuples.  Principal
formulas are the LAST antecedent formula and the FIRST succedent formula,
matching the displayed rule schemas ``Γ, A ⊢ Δ`` and ``Γ ⊢ A, Δ``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Dict, Optional, Tuple

from ..errors import EigenvariableViolation, RuleMismatch, TypingError, UnboundVariable
from ..kernel import alpha_eq, annotation_context, check_formula_terms, subst_prop, typecheck
from ..syntax import IOTA, Exists, Formula, Not, Or, Term, Var, show_formula
from .onesided import negex_var

TwoSequent = Tuple[Tuple[Formula, ...], Tuple[Formula, ...]]


class Proof2:
    rule: ClassVar[str] = "?"
    premises: ClassVar[tuple] = ()

    def children(self) -> tuple:
        return tuple(getattr(self, n) for n in self.premises)


@dataclass(frozen=True)
class Id(Proof2):
    formula: Formula
    rule: ClassVar[str] = "id"


@dataclass(frozen=True)
class OrR(Proof2):
    index: int
    other: Formula
    premise: Proof2
    rule: ClassVar[str] = "orr"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class OrL(Proof2):
    left: Proof2
    right: Proof2
    rule: ClassVar[str] = "orl"
    premises: ClassVar[tuple] = ("left", "right")


@dataclass(frozen=True)
class NegR(Proof2):
    """From ``Γ, A ⊢ Δ`` infer ``Γ ⊢ ¬A, Δ``."""
    premise: Proof2
    rule: ClassVar[str] = "negr"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class NegL(Proof2):
    """From ``Γ ⊢ A, Δ`` infer ``Γ, ¬A ⊢ Δ``."""
    premise: Proof2
    rule: ClassVar[str] = "negl"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class ExR(Proof2):
    witness: Term
    var: str
    matrix: Formula
    premise: Proof2
    rule: ClassVar[str] = "exr"
    premises: ClassVar[tuple] = ("premise",)

    @property
    def formula(self):
        return Exists(self.var, self.matrix)


@dataclass(frozen=True)
class ExL(Proof2):
    eigen: str
    premise: Proof2
    var: Optional[str] = None
    rule: ClassVar[str] = "exl"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class ContractR(Proof2):
    premise: Proof2
    rule: ClassVar[str] = "contractr"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class ContractL(Proof2):
    premise: Proof2
    rule: ClassVar[str] = "contractl"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class WeakR(Proof2):
    formula: Formula
    premise: Proof2
    rule: ClassVar[str] = "weakr"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class WeakL(Proof2):
    formula: Formula
    premise: Proof2
    rule: ClassVar[str] = "weakl"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class Cut2(Proof2):
    """From ``Γ1 ⊢ A, Δ1`` and ``Γ2, A ⊢ Δ2`` infer ``Γ1, Γ2 ⊢ Δ1, Δ2``."""
    formula: Formula
    left: Proof2
    right: Proof2
    rule: ClassVar[str] = "cut"
    premises: ClassVar[tuple] = ("left", "right")


@dataclass(frozen=True)
class Perm2(Proof2):
    """Permute antecedent and succedent (1-based, conclusion j ← premise perm[j])."""
    lperm: Tuple[int, ...]
    rperm: Tuple[int, ...]
    premise: Proof2
    rule: ClassVar[str] = "perm"
    premises: ClassVar[tuple] = ("premise",)


RULES2 = ("id", "orr", "orl", "negr", "negl", "exr", "exl", "contractr",
          "contractl", "weakr", "weakl", "cut", "perm")


def _fmt(seq: TwoSequent) -> str:
    ante, succ = seq
    return (", ".join(show_formula(f) for f in ante) + " ⊢ "
            + ", ".join(show_formula(f) for f in succ))


def _typed(f, path):
    try:
        check_formula_terms(f, annotation_context(f))
    except (TypingError, UnboundVariable) as e:
        raise RuleMismatch(path, f"ill-typed formula {show_formula(f)}: {e}") from None


def _conclude(p: Proof2, prem, path) -> TwoSequent:
    def need(cond, msg):
        if not cond:
            raise RuleMismatch(path, msg)

    if isinstance(p, Id):
        _typed(p.formula, path)
        return ((p.formula,), (p.formula,))
    if isinstance(p, OrR):
        ((g, d),) = prem
        need(p.index in (1, 2), f"∨R index must be 1 or 2, got {p.index}")
        need(len(d) >= 1, "∨R premise has empty succedent")
        _typed(p.other, path)
        a = d[0]
        return (g, ((Or(a, p.other) if p.index == 1 else Or(p.other, a)),) + d[1:])
    if isinstance(p, OrL):
        (g1, d1), (g2, d2) = prem
        need(len(g1) >= 1 and len(g2) >= 1, "∨L premises need a principal formula")
        need(len(g1) == len(g2) and all(alpha_eq(a, b) for a, b in zip(g1[:-1], g2[:-1])),
             f"∨L contexts differ: {_fmt((g1, d1))} vs {_fmt((g2, d2))}")
        need(len(d1) == len(d2) and all(alpha_eq(a, b) for a, b in zip(d1, d2)),
             f"∨L succedents differ: {_fmt((g1, d1))} vs {_fmt((g2, d2))}")
        return (g1[:-1] + (Or(g1[-1], g2[-1]),), d1)
    if isinstance(p, NegR):
        ((g, d),) = prem
        need(len(g) >= 1, "¬R premise has empty antecedent")
        return (g[:-1], (Not(g[-1]),) + d)
    if isinstance(p, NegL):
        ((g, d),) = prem
        need(len(d) >= 1, "¬L premise has empty succedent")
        return (g + (Not(d[0]),), d[1:])
    if isinstance(p, ExR):
        ((g, d),) = prem
        need(len(d) >= 1, "∃R premise has empty succedent")
        try:
            ty = typecheck(p.witness, annotation_context(p.witness))
        except (TypingError, UnboundVariable) as e:
            raise RuleMismatch(path, f"ill-typed witness: {e}") from None
        need(ty == IOTA, f"∃R witness must have type ι, found {ty}")
        _typed(p.formula, path)
        inst = subst_prop(p.matrix, p.var, p.witness)
        need(alpha_eq(inst, d[0]),
             f"∃R premise has {show_formula(d[0])}, expected {show_formula(inst)}")
        return (g, (p.formula,) + d[1:])
    if isinstance(p, ExL):
        ((g, d),) = prem
        need(len(g) >= 1, "∃L premise has empty antecedent")
        body = g[-1]
        x = negex_var(p, body)
        need(x == p.eigen or x not in body.fv, f"bound variable {x} occurs free in the premise")
        out = (g[:-1] + (Exists(x, subst_prop(body, p.eigen, Var(x, IOTA))),), d)
        if any(p.eigen in f.fv for f in out[0] + out[1]):
            raise EigenvariableViolation(path, p.eigen)
        return out
    if isinstance(p, ContractR):
        ((g, d),) = prem
        need(len(d) >= 2 and alpha_eq(d[0], d[1]), "cR needs two equal leading succedent formulas")
        return (g, d[1:])
    if isinstance(p, ContractL):
        ((g, d),) = prem
        need(len(g) >= 2 and alpha_eq(g[-1], g[-2]), "cL needs two equal trailing antecedent formulas")
        return (g[:-1], d)
    if isinstance(p, WeakR):
        ((g, d),) = prem
        _typed(p.formula, path)
        return (g, (p.formula,) + d)
    if isinstance(p, WeakL):
        ((g, d),) = prem
        _typed(p.formula, path)
        return (g + (p.formula,), d)
    if isinstance(p, Cut2):
        (g1, d1), (g2, d2) = prem
        _typed(p.formula, path)
        need(len(d1) >= 1 and alpha_eq(d1[0], p.formula),
             f"cut left premise must start its succedent with {show_formula(p.formula)}")
        need(len(g2) >= 1 and alpha_eq(g2[-1], p.formula),
             f"cut right premise must end its antecedent with {show_formula(p.formula)}")
        return (g1 + g2[:-1], d1[1:] + d2)
    if isinstance(p, Perm2):
        ((g, d),) = prem
        need(sorted(p.lperm) == list(range(1, len(g) + 1)),
             f"{list(p.lperm)} is not a permutation of 1..{len(g)}")
        need(sorted(p.rperm) == list(range(1, len(d) + 1)),
             f"{list(p.rperm)} is not a permutation of 1..{len(d)}")
        return (tuple(g[j - 1] for j in p.lperm), tuple(d[j - 1] for j in p.rperm))
    raise RuleMismatch(path, f"unknown proof node {type(p).__name__}")


def conclusions2(p: Proof2) -> Dict[int, TwoSequent]:
    out: Dict[int, TwoSequent] = {}

    def go(q, path):
        if id(q) in out:
            return out[id(q)]
        prem = [go(c, f"{path}/{j + 1}") for j, c in enumerate(q.children())]
        out[id(q)] = _conclude(q, prem, path)
        return out[id(q)]

    go(p, "root")
    return out


def check_two_sided(p: Proof2) -> TwoSequent:
    """Check every inference; return ``(antecedent, succedent)``."""
    return conclusions2(p)[id(p)]
