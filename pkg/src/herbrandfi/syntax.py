"""Abstract syntax shared by every layer.

Simple types, L+-terms, and the propositional/first-order formula language.
Formulas and propositions share node classes: a quantifier-free formula *is*
a proposition, which keeps the winning-formula construction literal.

All nodes are immutable.  Free variables and the normal-form flag are cached
lazily on each node, so subterms shared between trees are analysed once.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple, Union


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Iota:
    def __str__(self):
        return "ι"


@dataclass(frozen=True)
class Null:
    def __str__(self):
        return "□"


@dataclass(frozen=True)
class Prod:
    left: "SimpleType"
    right: "SimpleType"

    def __str__(self):
        return f"({self.left} × {self.right})"


@dataclass(frozen=True)
class Arrow:
    domain: "SimpleType"
    codomain: "SimpleType"

    def __str__(self):
        return f"({self.domain} → {self.codomain})"


SimpleType = Union[Iota, Null, Prod, Arrow]

IOTA = Iota()
NULL = Null()


def type_depth(ty: SimpleType) -> int:
    if isinstance(ty, (Iota, Null)):
        return 0
    if isinstance(ty, Prod):
        return 1 + max(type_depth(ty.left), type_depth(ty.right))
    return 1 + max(type_depth(ty.domain), type_depth(ty.codomain))


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class Term:
    """Base class of L+-terms."""

    __slots__ = ()

    def __str__(self):
        return show_term(self)


@dataclass(frozen=True, eq=True)
class Eps(Term):
    @cached_property
    def fv(self):
        return frozenset()

    def __str__(self):
        return "ε"


@dataclass(frozen=True)
class Const(Term):
    name: str

    @cached_property
    def fv(self):
        return frozenset()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fun(Term):
    """Application of a signature function symbol to individual terms."""

    name: str
    args: Tuple[Term, ...]

    @cached_property
    def fv(self):
        return frozenset().union(*(a.fv for a in self.args))


@dataclass(frozen=True)
class Var(Term):
    name: str
    type: SimpleType = IOTA

    @cached_property
    def fv(self):
        return frozenset((self.name,))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term

    @cached_property
    def fv(self):
        return self.fst.fv | self.snd.fv


@dataclass(frozen=True)
class Proj(Term):
    index: int
    arg: Term

    @cached_property
    def fv(self):
        return self.arg.fv


@dataclass(frozen=True)
class Abs(Term):
    var: str
    var_type: SimpleType
    body: Term

    @cached_property
    def fv(self):
        return self.body.fv - {self.var}


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term

    @cached_property
    def fv(self):
        return self.fun.fv | self.arg.fv


@dataclass(frozen=True)
class Case(Term):
    """``case_A{then}{orelse}``; the condition is a proposition."""

    cond: "Formula"
    then: Term
    orelse: Term

    @cached_property
    def fv(self):
        return self.cond.fv | self.then.fv | self.orelse.fv


EPS = Eps()


def is_first_order(t: Term) -> bool:
    """True for L-terms: constants, individual variables, function symbols."""
    if isinstance(t, Const):
        return True
    if isinstance(t, Var):
        return t.type == IOTA
    if isinstance(t, Fun):
        return all(is_first_order(a) for a in t.args)
    return False


# ---------------------------------------------------------------------------
# Formulas / propositions
# ---------------------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __str__(self):
        return show_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: Tuple[Term, ...] = ()

    @cached_property
    def fv(self):
        return frozenset().union(*(a.fv for a in self.args))


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    @cached_property
    def fv(self):
        return self.left.fv | self.right.fv


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    @cached_property
    def fv(self):
        return self.body.fv


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    @cached_property
    def fv(self):
        return self.body.fv - {self.var}


@dataclass(frozen=True)
class Equiv(Formula):
    """The proposition ``lhs ≡ rhs``.  Never part of a first-order formula."""

    lhs: Term
    rhs: Term

    @cached_property
    def fv(self):
        return self.lhs.fv | self.rhs.fv


# Propositions are formulas built from Atom, Or, Not and Equiv.
Proposition = Formula


def conj(a: Formula, b: Formula) -> Formula:
    """``a ∧ b`` as the abbreviation ``¬(¬a ∨ ¬b)``."""
    return Not(Or(Not(a), Not(b)))


def disj(items) -> Formula:
    """Right-nested disjunction of a non-empty sequence."""
    items = list(items)
    if not items:
        raise ValueError("empty disjunction")
    out = items[-1]
    for f in reversed(items[:-1]):
        out = Or(f, out)
    return out


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _atomic(t: Term) -> bool:
    return isinstance(t, (Eps, Const, Var, Fun, Pair))


def show_term(t: Term) -> str:
    if isinstance(t, Eps):
        return "ε"
    if isinstance(t, (Const, Var)):
        return t.name
    if isinstance(t, Fun):
        return f"{t.name}({', '.join(show_term(a) for a in t.args)})"
    if isinstance(t, Pair):
        return f"⟨{show_term(t.fst)},{show_term(t.snd)}⟩"
    if isinstance(t, Proj):
        inner = show_term(t.arg)
        if not (_atomic(t.arg) or isinstance(t.arg, (App, Abs))):
            inner = f"({inner})"
        return f"π{t.index} {inner}"
    if isinstance(t, Abs):
        return f"(λ{t.var}:{t.var_type}. {show_term(t.body)})"
    if isinstance(t, App):
        return f"({show_term(t.fun)} {show_term(t.arg)})"
    if isinstance(t, Case):
        return (f"case[{show_formula(t.cond)}]"
                f"{{{show_term(t.then)}}}{{{show_term(t.orelse)}}}")
    raise TypeError(f"not a term: {t!r}")


def show_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(show_term(a) for a in f.args)})"
    if isinstance(f, Or):
        return f"({show_formula(f.left)} ∨ {show_formula(f.right)})"
    if isinstance(f, Not):
        return f"¬{show_formula(f.body)}"
    if isinstance(f, Exists):
        return f"∃{f.var}.{show_formula(f.body)}"
    if isinstance(f, Equiv):
        return f"({show_term(f.lhs)} ≡ {show_term(f.rhs)})"
    raise TypeError(f"not a formula: {f!r}")


def show_sequent(formulas) -> str:
    return ", ".join(show_formula(f) for f in formulas)
