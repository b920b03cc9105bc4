"""First-order layer: signatures, formula substitution, free variables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import SignatureError
from .kernel import annotation_context, subst_prop
from .syntax import (
    IOTA, Abs, App, Atom, Case, Const, Equiv, Exists, Formula, Fun, Not, Or,
    Pair, Proj, Term, Var,
)


@dataclass(frozen=True)
class Signature:
    constants: Tuple[str, ...]
    functions: Tuple[Tuple[str, int], ...] = ()
    predicates: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        if not self.constants:
            raise SignatureError("a signature needs at least one constant")
        if not any(n == 1 for _, n in self.predicates):
            raise SignatureError("a signature needs at least one unary predicate")
        names = list(self.constants) + [f for f, _ in self.functions] + [p for p, _ in self.predicates]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise SignatureError(f"duplicate symbol(s): {', '.join(sorted(dup))}")
        for f, n in self.functions:
            if n < 1:
                raise SignatureError(f"function {f} must have arity >= 1")
        for p, n in self.predicates:
            if n < 0:
                raise SignatureError(f"predicate {p} has negative arity")

    @property
    def default_constant(self) -> str:
        return self.constants[0]

    def function_arity(self, name):
        return dict(self.functions).get(name)

    def predicate_arity(self, name):
        return dict(self.predicates).get(name)

    def check_term(self, t: Term) -> None:
        """Constants, function symbols and arities agree with the signature."""
        if isinstance(t, Const):
            if t.name not in self.constants:
                raise SignatureError(f"unknown constant {t.name}")
        elif isinstance(t, Fun):
            n = self.function_arity(t.name)
            if n is None:
                raise SignatureError(f"unknown function symbol {t.name}")
            if n != len(t.args):
                raise SignatureError(f"{t.name} expects {n} argument(s), got {len(t.args)}")
            for a in t.args:
                self.check_term(a)
        elif isinstance(t, Pair):
            self.check_term(t.fst)
            self.check_term(t.snd)
        elif isinstance(t, Proj):
            self.check_term(t.arg)
        elif isinstance(t, Abs):
            self.check_term(t.body)
        elif isinstance(t, App):
            self.check_term(t.fun)
            self.check_term(t.arg)
        elif isinstance(t, Case):
            self.check_formula(t.cond)
            self.check_term(t.then)
            self.check_term(t.orelse)

    def check_formula(self, f: Formula) -> None:
        if isinstance(f, Atom):
            n = self.predicate_arity(f.pred)
            if n is None:
                raise SignatureError(f"unknown predicate {f.pred}")
            if n != len(f.args):
                raise SignatureError(f"{f.pred} expects {n} argument(s), got {len(f.args)}")
            for a in f.args:
                self.check_term(a)
        elif isinstance(f, Or):
            self.check_formula(f.left)
            self.check_formula(f.right)
        elif isinstance(f, (Not, Exists)):
            self.check_formula(f.body)
        elif isinstance(f, Equiv):
            self.check_term(f.lhs)
            self.check_term(f.rhs)


def subst_formula(a: Formula, x: str, t: Term) -> Formula:
    """Capture-avoiding ``A[t/x]``."""
    return subst_prop(a, x, t)


def free_individual_vars(a) -> frozenset:
    """Free variables of type ι, including those inside embedded L+ terms."""
    return frozenset(n for n, ty in annotation_context(a).items() if ty == IOTA)


def is_quantifier_free(a: Formula) -> bool:
    if isinstance(a, Exists):
        return False
    if isinstance(a, Or):
        return is_quantifier_free(a.left) and is_quantifier_free(a.right)
    if isinstance(a, Not):
        return is_quantifier_free(a.body)
    return True


def formula_size(a: Formula) -> int:
    if isinstance(a, Or):
        return 1 + formula_size(a.left) + formula_size(a.right)
    if isinstance(a, (Not, Exists)):
        return 1 + formula_size(a.body)
    return 1


def all_names(x) -> set:
    """Every variable name occurring in a term or formula, bound or free."""
    out = set()
    stack = [x]
    while stack:
        y = stack.pop()
        if isinstance(y, Var):
            out.add(y.name)
        elif isinstance(y, Abs):
            out.add(y.var)
            stack.append(y.body)
        elif isinstance(y, Exists):
            out.add(y.var)
            stack.append(y.body)
        elif isinstance(y, (Fun, Atom)):
            stack.extend(y.args)
        elif isinstance(y, Pair):
            stack += [y.fst, y.snd]
        elif isinstance(y, Proj):
            stack.append(y.arg)
        elif isinstance(y, App):
            stack += [y.fun, y.arg]
        elif isinstance(y, Case):
            stack += [y.cond, y.then, y.orelse]
        elif isinstance(y, Or):
            stack += [y.left, y.right]
        elif isinstance(y, Not):
            stack.append(y.body)
        elif isinstance(y, Equiv):
            stack += [y.lhs, y.rhs]
    return out
