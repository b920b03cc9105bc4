"""One-sided sequent calculus with explicit negation.

Sequents are tuples of formulas.  Principal formulas sit at the end of the
conclusion; ``Perm`` reorders occurrences explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import ClassVar, Dict, Optional, Tuple

from ..errors import (
    CaptureRisk, EigenvariableViolation, RegularityViolation, RuleMismatch,
    TypingError, UnboundVariable,
)
from ..kernel import (
    alpha_eq, annotation_context, fresh_name, subst_prop, substitute, typecheck,
)
from ..logic import all_names
from ..syntax import IOTA, Exists, Formula, Not, Or, Term, Var, show_formula

Sequent = Tuple[Formula, ...]


class Proof:
    """Base class of one-sided proof nodes."""

    rule: ClassVar[str] = "?"
    premises: ClassVar[tuple] = ()

    def children(self) -> tuple:
        return tuple(getattr(self, n) for n in self.premises)


@dataclass(frozen=True)
class Lem(Proof):
    """Axiom: ``¬A, A``."""
    formula: Formula
    rule: ClassVar[str] = "lem"


@dataclass(frozen=True)
class OrIntro(Proof):
    """From ``Γ, A_i`` infer ``Γ, A_1 ∨ A_2``; ``other`` is the other disjunct."""
    index: int
    other: Formula
    premise: Proof
    rule: ClassVar[str] = "or"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class NegOr(Proof):
    """From ``Γ, ¬A`` and ``Δ, ¬B`` infer ``Γ, Δ, ¬(A ∨ B)``."""
    left: Proof
    right: Proof
    rule: ClassVar[str] = "negor"
    premises: ClassVar[tuple] = ("left", "right")


@dataclass(frozen=True)
class Ex(Proof):
    """From ``Γ, A[t/x]`` infer ``Γ, ∃x A``."""
    witness: Term
    var: str
    matrix: Formula
    premise: Proof
    rule: ClassVar[str] = "ex"
    premises: ClassVar[tuple] = ("premise",)

    @property
    def formula(self) -> Formula:
        return Exists(self.var, self.matrix)


@dataclass(frozen=True)
class NegEx(Proof):
    """From ``Γ, ¬A[α/x]`` infer ``Γ, ¬∃x A`` (``α`` the eigenvariable).

    ``var`` names the bound variable of the conclusion; when absent a name
    not occurring in the premise formula is chosen.
    """
    eigen: str
    premise: Proof
    var: Optional[str] = None
    rule: ClassVar[str] = "nex"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class Contract(Proof):
    premise: Proof
    rule: ClassVar[str] = "contract"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class Weak(Proof):
    formula: Formula
    premise: Proof
    rule: ClassVar[str] = "weak"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class NegNeg(Proof):
    premise: Proof
    rule: ClassVar[str] = "negneg"
    premises: ClassVar[tuple] = ("premise",)


@dataclass(frozen=True)
class Cut(Proof):
    """From ``Γ, A`` and ``Δ, ¬A`` infer ``Γ, Δ``."""
    formula: Formula
    left: Proof
    right: Proof
    rule: ClassVar[str] = "cut"
    premises: ClassVar[tuple] = ("left", "right")


@dataclass(frozen=True)
class Perm(Proof):
    """Conclusion position ``j`` holds premise position ``perm[j]`` (1-based)."""
    perm: Tuple[int, ...]
    premise: Proof
    rule: ClassVar[str] = "perm"
    premises: ClassVar[tuple] = ("premise",)


RULES = ("lem", "or", "negor", "ex", "nex", "contract", "weak", "negneg", "cut", "perm")


def with_children(p: Proof, kids) -> Proof:
    from dataclasses import replace
    return replace(p, **dict(zip(p.premises, kids)))


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def negex_var(p: NegEx, body: Formula) -> str:
    """Bound variable used in the conclusion of a ¬∃ inference."""
    if p.var is not None:
        return p.var
    names = all_names(body)
    return "x" if "x" not in names else fresh_name("x", names)


def negex_formula(p: NegEx, premise_last: Formula) -> Formula:
    if not isinstance(premise_last, Not):
        raise RuleMismatch("", "¬∃ premise must end in a negation")
    body = premise_last.body
    x = negex_var(p, body)
    if x != p.eigen and x in body.fv:
        raise RuleMismatch("", f"bound variable {x} occurs free in the premise")
    return Not(Exists(x, subst_prop(body, p.eigen, Var(x, IOTA))))


def _fmt(seq) -> str:
    return "[" + ", ".join(show_formula(f) for f in seq) + "]"


def _well_typed(f: Formula, path):
    from ..kernel import check_formula_terms
    try:
        check_formula_terms(f, annotation_context(f))
    except (TypingError, UnboundVariable) as e:
        raise RuleMismatch(path, f"ill-typed formula {show_formula(f)}: {e}") from None


def _conclude(p: Proof, prem, path) -> Sequent:
    """Conclusion of ``p`` given its premises' conclusions."""
    def need(cond, msg):
        if not cond:
            raise RuleMismatch(path, msg)

    if isinstance(p, Lem):
        _well_typed(p.formula, path)
        return (Not(p.formula), p.formula)
    if isinstance(p, OrIntro):
        (s,) = prem
        need(p.index in (1, 2), f"∨ index must be 1 or 2, got {p.index}")
        need(len(s) >= 1, "∨ premise is empty")
        _well_typed(p.other, path)
        a = s[-1]
        return s[:-1] + ((Or(a, p.other) if p.index == 1 else Or(p.other, a)),)
    if isinstance(p, NegOr):
        s1, s2 = prem
        need(len(s1) >= 1 and isinstance(s1[-1], Not), f"¬∨ left premise must end in a negation: {_fmt(s1)}")
        need(len(s2) >= 1 and isinstance(s2[-1], Not), f"¬∨ right premise must end in a negation: {_fmt(s2)}")
        return s1[:-1] + s2[:-1] + (Not(Or(s1[-1].body, s2[-1].body)),)
    if isinstance(p, Ex):
        (s,) = prem
        need(len(s) >= 1, "∃ premise is empty")
        try:
            ty = typecheck(p.witness, annotation_context(p.witness))
        except (TypingError, UnboundVariable) as e:
            raise RuleMismatch(path, f"ill-typed witness: {e}") from None
        need(ty == IOTA, f"∃ witness must have type ι, found {ty}")
        _well_typed(p.formula, path)
        inst = subst_prop(p.matrix, p.var, p.witness)
        need(alpha_eq(inst, s[-1]),
             f"∃ premise ends in {show_formula(s[-1])}, expected {show_formula(inst)}")
        return s[:-1] + (p.formula,)
    if isinstance(p, NegEx):
        (s,) = prem
        need(len(s) >= 1, "¬∃ premise is empty")
        try:
            concl = negex_formula(p, s[-1])
        except RuleMismatch as e:
            raise RuleMismatch(path, e.detail) from None
        out = s[:-1] + (concl,)
        if any(p.eigen in f.fv for f in out):
            raise EigenvariableViolation(path, p.eigen)
        return out
    if isinstance(p, Contract):
        (s,) = prem
        need(len(s) >= 2, "contraction needs two formulas")
        need(alpha_eq(s[-1], s[-2]),
             f"contraction on distinct formulas {show_formula(s[-2])} and {show_formula(s[-1])}")
        return s[:-1]
    if isinstance(p, Weak):
        (s,) = prem
        _well_typed(p.formula, path)
        return s + (p.formula,)
    if isinstance(p, NegNeg):
        (s,) = prem
        need(len(s) >= 1, "¬¬ premise is empty")
        return s[:-1] + (Not(Not(s[-1])),)
    if isinstance(p, Cut):
        s1, s2 = prem
        _well_typed(p.formula, path)
        need(len(s1) >= 1 and alpha_eq(s1[-1], p.formula),
             f"cut left premise must end in {show_formula(p.formula)}: {_fmt(s1)}")
        need(len(s2) >= 1 and alpha_eq(s2[-1], Not(p.formula)),
             f"cut right premise must end in {show_formula(Not(p.formula))}: {_fmt(s2)}")
        return s1[:-1] + s2[:-1]
    if isinstance(p, Perm):
        (s,) = prem
        need(sorted(p.perm) == list(range(1, len(s) + 1)),
             f"{list(p.perm)} is not a permutation of 1..{len(s)}")
        return tuple(s[j - 1] for j in p.perm)
    raise RuleMismatch(path, f"unknown proof node {type(p).__name__}")


def conclusions(p: Proof) -> Dict[int, Sequent]:
    """Conclusion of every node, keyed by ``id(node)``; checks each rule."""
    out: Dict[int, Sequent] = {}

    def go(q, path):
        if id(q) in out:
            return out[id(q)]
        prem = [go(c, f"{path}/{j + 1}") for j, c in enumerate(q.children())]
        out[id(q)] = _conclude(q, prem, path)
        return out[id(q)]

    go(p, "root")
    return out


def end_sequent(p: Proof) -> Sequent:
    return conclusions(p)[id(p)]


# ---------------------------------------------------------------------------
# Regularity
# ---------------------------------------------------------------------------

def local_data(p: Proof) -> tuple:
    """Formulas and terms stored in the node itself."""
    if isinstance(p, (Lem, Weak, Cut)):
        return (p.formula,)
    if isinstance(p, OrIntro):
        return (p.other,)
    if isinstance(p, Ex):
        return (p.witness, p.formula)
    return ()


def nodes(p: Proof):
    """Preorder traversal."""
    stack = [p]
    while stack:
        q = stack.pop()
        yield q
        stack.extend(reversed(q.children()))


def eigenvariables(p: Proof) -> list:
    return [q.eigen for q in nodes(p) if isinstance(q, NegEx)]


def proof_names(p: Proof) -> set:
    out = set()
    for q in nodes(p):
        for d in local_data(q):
            out |= all_names(d)
        if isinstance(q, NegEx):
            out.add(q.eigen)
            if q.var:
                out.add(q.var)
    return out


def _occurrence_counts(p: Proof) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for q in nodes(p):
        for d in local_data(q):
            for n in d.fv:
                counts[n] = counts.get(n, 0) + 1
    return counts


def irregular_eigenvariables(p: Proof) -> Dict[int, str]:
    """¬∃ nodes (by id) whose eigenvariable is not pure, with a reason.

    Pure means: introduced by this node only, and not occurring anywhere in
    the proof outside the subproof above the node.
    """
    total = _occurrence_counts(p)
    intro: Dict[str, int] = {}
    negs = [q for q in nodes(p) if isinstance(q, NegEx)]
    for q in negs:
        intro[q.eigen] = intro.get(q.eigen, 0) + 1
    bad = {}
    for q in negs:
        if intro[q.eigen] > 1:
            bad[id(q)] = "introduced more than once"
        elif _occurrence_counts(q.premise).get(q.eigen, 0) != total.get(q.eigen, 0):
            bad[id(q)] = "occurs outside the subproof of its ¬∃ inference"
    return bad


def is_regular(p: Proof) -> bool:
    return not irregular_eigenvariables(p)


def check_one_sided(p: Proof, regular: bool = True) -> Sequent:
    """Check every inference and (by default) regularity; return the end sequent."""
    seq = end_sequent(p)
    if regular:
        bad = irregular_eigenvariables(p)
        for q in nodes(p):
            if id(q) in bad:
                raise RegularityViolation(q.eigen, bad[id(q)])
    return seq


def _rename_local(q: Proof, mapping: Dict[str, str]) -> Proof:
    if not mapping:
        return q

    def tm(t):
        for old, new in mapping.items():
            t = substitute(t, old, Var(new, IOTA))
        return t

    def fm(f):
        for old, new in mapping.items():
            f = subst_prop(f, old, Var(new, IOTA))
        return f

    if isinstance(q, (Lem, Weak, Cut)):
        return replace(q, formula=fm(q.formula))
    if isinstance(q, OrIntro):
        return replace(q, other=fm(q.other))
    if isinstance(q, Ex):
        f = fm(q.formula)
        return replace(q, witness=tm(q.witness), var=f.var, matrix=f.body)
    return q


def _rename_eigen(q: Proof, old: str, new: str) -> Proof:
    """Rename free occurrences of ``old`` in ``q``, stopping at rebinding ¬∃ nodes."""
    if isinstance(q, NegEx) and q.eigen == old:
        return q
    q2 = _rename_local(q, {old: new})
    kids = q.children()
    if not kids:
        return q2
    return with_children(q2, [_rename_eigen(c, old, new) for c in kids])


def _rename_node(p: Proof, index: int, avoid: set) -> Proof:
    """Give the ¬∃ node at preorder position ``index`` a fresh eigenvariable."""
    pos = [0]

    def go(q):
        k = pos[0]
        pos[0] += 1
        if k == index:
            new = fresh_name(q.eigen, avoid)
            avoid.add(new)
            prem = _rename_eigen(q.premise, q.eigen, new)
            pos[0] += sum(1 for _ in nodes(q.premise))
            return NegEx(new, prem, q.var)
        kids = q.children()
        if not kids or k > index:
            pos[0] += sum(1 for _ in nodes(q)) - 1
            return q
        new_kids = [go(c) for c in kids]
        if all(a is b for a, b in zip(new_kids, kids)):
            return q
        return with_children(q, new_kids)

    return go(p)


def regularize(p: Proof) -> Proof:
    """Rename impure eigenvariables apart; regular proofs are returned as is.

    Offending ¬∃ nodes are renamed one at a time, last in preorder first, so
    the first introduction of a name keeps it whenever that suffices.
    """
    avoid = None
    while True:
        bad = irregular_eigenvariables(p)
        if not bad:
            return p
        if avoid is None:
            avoid = proof_names(p)
        order = [k for k, q in enumerate(nodes(p)) if id(q) in bad]
        p = _rename_node(p, order[-1], avoid)


# ---------------------------------------------------------------------------
# Proof substitution
# ---------------------------------------------------------------------------

def proof_subst(p: Proof, alpha: str, t: Term) -> Proof:
    """``p[t/α]``: substitute into every formula and ∃ witness of ``p``."""
    eig = set(eigenvariables(p))
    if alpha in eig:
        raise CaptureRisk(alpha)
    clash = eig & t.fv
    if clash:
        raise CaptureRisk(min(clash))
    if isinstance(t, Var) and t.name == alpha:
        return p
    from dataclasses import replace

    def go(q):
        if isinstance(q, (Lem, Weak, Cut)):
            q2 = replace(q, formula=subst_prop(q.formula, alpha, t))
        elif isinstance(q, OrIntro):
            q2 = replace(q, other=subst_prop(q.other, alpha, t))
        elif isinstance(q, Ex):
            f = subst_prop(q.formula, alpha, t)
            q2 = replace(q, witness=substitute(q.witness, alpha, t), var=f.var, matrix=f.body)
        elif isinstance(q, NegEx) and q.var is not None and q.var in t.fv:
            q2 = replace(q, var=None)
        else:
            q2 = q
        kids = q.children()
        if not kids:
            return q2
        return with_children(q2, [go(c) for c in kids])

    return go(p)


def collapse_perms(p: Proof) -> Proof:
    """Merge chains of ``Perm`` nodes and drop identity permutations."""
    kids = p.children()
    if isinstance(p, Perm):
        inner = collapse_perms(p.premise)
        perm = p.perm
        if isinstance(inner, Perm):
            perm = tuple(inner.perm[j - 1] for j in perm)
            inner = inner.premise
        if perm == tuple(range(1, len(perm) + 1)):
            return inner
        return Perm(perm, inner)
    if not kids:
        return p
    return with_children(p, [collapse_perms(c) for c in kids])


def size(p: Proof) -> int:
    return sum(1 for _ in nodes(p))
