"""Reading and writing proof files.

A file holds a signature followed by one proof::

    (sig (const c) (fun f 1) (pred P 1))
    (proof1
      (ex (witness c) (x) (or (P x) (not (P x)))
        ...))

Terms: identifiers (declared constants, otherwise individual variables or
bound variables in scope), ``eps``, ``(f t ...)``, ``(pair u v)``,
``(pi1 u)``, ``(pi2 u)``, ``(lam x T body)``, ``(app u v ...)``,
``(case A u v)`` and ``(var x T)`` for a free variable of type ``T``.
Types: ``iota``, ``null``, ``(prod U V)``, ``(arrow U V)``.
Formulas: ``(P t ...)``, ``(or A B)``, ``(not A)``, ``(exists x A)`` and,
inside case conditions, ``(eq u v)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Union

from .calculus import onesided as o
from .calculus import twosided as t2
from .errors import ParseError, SignatureError
from .logic import Signature
from .sexpr import SExpr, SList, Sym, read_all
from .syntax import (
    EPS, IOTA, NULL, Abs, App, Arrow, Atom, Case, Const, Eps, Equiv, Exists,
    Formula, Fun, Iota, Not, Null, Or, Pair, Prod, Proj, SimpleType, Term, Var,
)

RESERVED = {"eps", "pair", "pi1", "pi2", "lam", "app", "case", "var", "or", "not",
            "exists", "eq", "iota", "null", "prod", "arrow", "sig", "proof1", "proof2"}


@dataclass(frozen=True)
class ProofFile:
    signature: Signature
    proof: Union[o.Proof, t2.Proof2]

    @property
    def two_sided(self) -> bool:
        return isinstance(self.proof, t2.Proof2)


def _err(x: SExpr, expected: str):
    return ParseError(x.line, x.col, expected)


def _sym(x: SExpr, expected: str) -> str:
    if not isinstance(x, Sym):
        raise _err(x, expected)
    return x.text


def _list(x: SExpr, expected: str) -> tuple:
    if not isinstance(x, SList):
        raise _err(x, expected)
    return x.items


def _int(x: SExpr, expected="an integer") -> int:
    s = _sym(x, expected)
    try:
        return int(s)
    except ValueError:
        raise _err(x, expected) from None


def _head(x: SExpr) -> Optional[str]:
    if isinstance(x, SList) and x.items and isinstance(x.items[0], Sym):
        return x.items[0].text
    return None


def _arity(x: SList, n: int, what: str):
    if len(x.items) != n:
        raise _err(x, f"{what} with {n - 1} argument(s)")


class _Reader:
    def __init__(self, sig: Signature):
        self.sig = sig
        self.funs = dict(sig.functions)
        self.preds = dict(sig.predicates)

    # types -----------------------------------------------------------------

    def type(self, x: SExpr) -> SimpleType:
        if isinstance(x, Sym):
            if x.text == "iota":
                return IOTA
            if x.text == "null":
                return NULL
            raise _err(x, "a type (iota, null, (prod U V) or (arrow U V))")
        h = _head(x)
        if h in ("prod", "arrow"):
            _arity(x, 3, h)
            a, b = self.type(x.items[1]), self.type(x.items[2])
            return Prod(a, b) if h == "prod" else Arrow(a, b)
        raise _err(x, "a type (iota, null, (prod U V) or (arrow U V))")

    # terms -----------------------------------------------------------------

    def term(self, x: SExpr, env: Dict[str, SimpleType]) -> Term:
        if isinstance(x, Sym):
            s = x.text
            if s == "eps":
                return EPS
            if s in env:
                return Var(s, env[s])
            if s in self.sig.constants:
                return Const(s)
            if s in self.funs or s in self.preds or s in RESERVED:
                raise _err(x, f"a term, not the symbol {s!r}")
            return Var(s, IOTA)
        h = _head(x)
        items = x.items
        if h is None:
            raise _err(x, "a term")
        if h == "pair":
            _arity(x, 3, "pair")
            return Pair(self.term(items[1], env), self.term(items[2], env))
        if h in ("pi1", "pi2"):
            _arity(x, 2, h)
            return Proj(1 if h == "pi1" else 2, self.term(items[1], env))
        if h == "lam":
            _arity(x, 4, "lam")
            v = _sym(items[1], "a variable name")
            ty = self.type(items[2])
            return Abs(v, ty, self.term(items[3], {**env, v: ty}))
        if h == "app":
            if len(items) < 3:
                raise _err(x, "app with at least 2 arguments")
            out = self.term(items[1], env)
            for a in items[2:]:
                out = App(out, self.term(a, env))
            return out
        if h == "case":
            _arity(x, 4, "case")
            return Case(self.formula(items[1], env), self.term(items[2], env),
                        self.term(items[3], env))
        if h == "var":
            _arity(x, 3, "var")
            return Var(_sym(items[1], "a variable name"), self.type(items[2]))
        if h in self.funs:
            n = self.funs[h]
            if len(items) - 1 != n:
                raise _err(x, f"{h} applied to {n} argument(s)")
            return Fun(h, tuple(self.term(a, env) for a in items[1:]))
        raise _err(items[0], "a function symbol or term constructor "
                             "(pair, pi1, pi2, lam, app, case, var)")

    # formulas --------------------------------------------------------------

    def formula(self, x: SExpr, env: Dict[str, SimpleType]) -> Formula:
        if isinstance(x, Sym):
            if self.preds.get(x.text) == 0:
                return Atom(x.text, ())
            raise _err(x, "a formula")
        h = _head(x)
        items = x.items
        if h == "or":
            _arity(x, 3, "or")
            return Or(self.formula(items[1], env), self.formula(items[2], env))
        if h == "not":
            _arity(x, 2, "not")
            return Not(self.formula(items[1], env))
        if h == "exists":
            _arity(x, 3, "exists")
            v = _sym(items[1], "a variable name")
            return Exists(v, self.formula(items[2], {**env, v: IOTA}))
        if h == "eq":
            _arity(x, 3, "eq")
            return Equiv(self.term(items[1], env), self.term(items[2], env))
        if h in self.preds:
            n = self.preds[h]
            if len(items) - 1 != n:
                raise _err(x, f"{h} applied to {n} argument(s)")
            return Atom(h, tuple(self.term(a, env) for a in items[1:]))
        raise _err(x, "a formula ((P t ...), (or A B), (not A), (exists x A))")

    # proofs ----------------------------------------------------------------

    def _tagged(self, x: SExpr, tag: str) -> SExpr:
        """The single payload of ``(tag payload)``."""
        if _head(x) != tag or len(x.items) != 2:
            raise _err(x, f"({tag} <one item>)")
        return x.items[1]

    def _bound_name(self, x: SExpr) -> str:
        items = _list(x, "(x) naming the bound variable")
        if len(items) != 1:
            raise _err(x, "(x) naming the bound variable")
        return _sym(items[0], "a variable name")

    def _sub_count(self, x: SList, fixed: int, subs: int, rule: str):
        if len(x.items) != 1 + fixed + subs:
            raise _err(x, f"{rule} with {fixed} data field(s) and {subs} subproof(s)")

    def proof1(self, x: SExpr) -> o.Proof:
        h = _head(x)
        if h not in o.RULES:
            raise _err(x, "a one-sided rule, one of " + ", ".join(o.RULES))
        it = x.items
        if h == "lem":
            self._sub_count(x, 1, 0, h)
            return o.Lem(self.formula(it[1], {}))
        if h == "or":
            self._sub_count(x, 2, 1, h)
            other = self._tagged(it[2], "other")
            return o.OrIntro(_int(it[1], "1 or 2"), self.formula(other, {}), self.proof1(it[3]))
        if h == "negor":
            self._sub_count(x, 0, 2, h)
            return o.NegOr(self.proof1(it[1]), self.proof1(it[2]))
        if h == "ex":
            self._sub_count(x, 3, 1, h)
            w = self._tagged(it[1], "witness")
            v = self._bound_name(it[2])
            return o.Ex(self.term(w, {}), v, self.formula(it[3], {}), self.proof1(it[4]))
        if h == "nex":
            if len(it) not in (3, 4):
                raise _err(x, "nex with (eigen a), optional (var x) and 1 subproof")
            e = self._tagged(it[1], "eigen")
            var = None
            if len(it) == 4:
                vv = self._tagged(it[2], "var")
                var = _sym(vv, "a variable name")
            return o.NegEx(_sym(e, "a variable name"), self.proof1(it[-1]), var)
        if h == "contract":
            self._sub_count(x, 0, 1, h)
            return o.Contract(self.proof1(it[1]))
        if h == "weak":
            self._sub_count(x, 1, 1, h)
            return o.Weak(self.formula(it[1], {}), self.proof1(it[2]))
        if h == "negneg":
            self._sub_count(x, 0, 1, h)
            return o.NegNeg(self.proof1(it[1]))
        if h == "cut":
            self._sub_count(x, 1, 2, h)
            return o.Cut(self.formula(it[1], {}), self.proof1(it[2]), self.proof1(it[3]))
        if h == "perm":
            self._sub_count(x, 1, 1, h)
            perm = tuple(_int(j) for j in _list(it[1], "a permutation list"))
            return o.Perm(perm, self.proof1(it[2]))
        raise AssertionError(h)

    def proof2(self, x: SExpr) -> t2.Proof2:
        h = _head(x)
        if h not in t2.RULES2:
            raise _err(x, "a two-sided rule, one of " + ", ".join(t2.RULES2))
        it = x.items
        if h == "id":
            self._sub_count(x, 1, 0, h)
            return t2.Id(self.formula(it[1], {}))
        if h == "orr":
            self._sub_count(x, 2, 1, h)
            other = self._tagged(it[2], "other")
            return t2.OrR(_int(it[1], "1 or 2"), self.formula(other, {}), self.proof2(it[3]))
        if h == "orl":
            self._sub_count(x, 0, 2, h)
            return t2.OrL(self.proof2(it[1]), self.proof2(it[2]))
        if h in ("negr", "negl", "contractr", "contractl"):
            self._sub_count(x, 0, 1, h)
            cls = {"negr": t2.NegR, "negl": t2.NegL, "contractr": t2.ContractR,
                   "contractl": t2.ContractL}[h]
            return cls(self.proof2(it[1]))
        if h == "exr":
            self._sub_count(x, 3, 1, h)
            w = self._tagged(it[1], "witness")
            return t2.ExR(self.term(w, {}), self._bound_name(it[2]),
                          self.formula(it[3], {}), self.proof2(it[4]))
        if h == "exl":
            if len(it) not in (3, 4):
                raise _err(x, "exl with (eigen a), optional (var x) and 1 subproof")
            e = self._tagged(it[1], "eigen")
            var = None
            if len(it) == 4:
                vv = self._tagged(it[2], "var")
                var = _sym(vv, "a variable name")
            return t2.ExL(_sym(e, "a variable name"), self.proof2(it[-1]), var)
        if h in ("weakr", "weakl"):
            self._sub_count(x, 1, 1, h)
            cls = t2.WeakR if h == "weakr" else t2.WeakL
            return cls(self.formula(it[1], {}), self.proof2(it[2]))
        if h == "cut":
            self._sub_count(x, 1, 2, h)
            return t2.Cut2(self.formula(it[1], {}), self.proof2(it[2]), self.proof2(it[3]))
        if h == "perm":
            self._sub_count(x, 2, 1, h)
            lp = tuple(_int(j) for j in _list(it[1], "a permutation list"))
            rp = tuple(_int(j) for j in _list(it[2], "a permutation list"))
            return t2.Perm2(lp, rp, self.proof2(it[3]))
        raise AssertionError(h)


def parse_signature(x: SExpr) -> Signature:
    if _head(x) != "sig":
        raise _err(x, "(sig ...) header")
    consts, funs, preds = [], [], []
    for entry in x.items[1:]:
        h = _head(entry)
        args = entry.items[1:] if isinstance(entry, SList) else ()
        if h == "const":
            if not args:
                raise _err(entry, "(const name ...)")
            names = [_sym(a, "a constant name") for a in args]
            consts.extend(names)
        elif h in ("fun", "pred"):
            if len(args) != 2:
                raise _err(entry, f"({h} name arity)")
            (funs if h == "fun" else preds).append((_sym(args[0], "a symbol name"), _int(args[1])))
        else:
            raise _err(entry, "(const ...), (fun name arity) or (pred name arity)")
    for n in consts + [f for f, _ in funs] + [p for p, _ in preds]:
        if n in RESERVED or n in o.RULES or n in t2.RULES2:
            raise ParseError(x.line, x.col, f"a symbol name other than the keyword {n!r}")
    try:
        return Signature(tuple(consts), tuple(funs), tuple(preds))
    except SignatureError as e:
        raise ParseError(x.line, x.col, f"a valid signature ({e})") from None


def parse_proof_file(text: Union[str, bytes]) -> ProofFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(1, e.start + 1, "UTF-8 text") from None
    forms = read_all(text)
    if not forms:
        raise ParseError(1, 1, "(sig ...) header")
    sig = parse_signature(forms[0])
    if len(forms) < 2:
        end = forms[0]
        raise ParseError(end.line, end.col, "(proof1 ...) or (proof2 ...) after the signature")
    body = forms[1]
    if len(forms) > 2:
        raise _err(forms[2], "end of file after the proof")
    h = _head(body)
    if h not in ("proof1", "proof2") or len(body.items) != 2:
        raise _err(body, "(proof1 NODE) or (proof2 NODE)")
    r = _Reader(sig)
    proof = r.proof1(body.items[1]) if h == "proof1" else r.proof2(body.items[1])
    return ProofFile(sig, proof)


def parse_formula(text: str, sig: Signature) -> Formula:
    (x,) = read_all(text)
    return _Reader(sig).formula(x, {})


def parse_term(text: str, sig: Signature) -> Term:
    (x,) = read_all(text)
    return _Reader(sig).term(x, {})


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def show_type_sexpr(ty: SimpleType) -> str:
    if isinstance(ty, Iota):
        return "iota"
    if isinstance(ty, Null):
        return "null"
    if isinstance(ty, Prod):
        return f"(prod {show_type_sexpr(ty.left)} {show_type_sexpr(ty.right)})"
    return f"(arrow {show_type_sexpr(ty.domain)} {show_type_sexpr(ty.codomain)})"


def term_sexpr(t: Term, bound=frozenset()) -> str:
    if isinstance(t, Eps):
        return "eps"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        if t.name in bound or t.type == IOTA:
            return t.name
        return f"(var {t.name} {show_type_sexpr(t.type)})"
    if isinstance(t, Fun):
        return "(" + " ".join([t.name] + [term_sexpr(a, bound) for a in t.args]) + ")"
    if isinstance(t, Pair):
        return f"(pair {term_sexpr(t.fst, bound)} {term_sexpr(t.snd, bound)})"
    if isinstance(t, Proj):
        return f"(pi{t.index} {term_sexpr(t.arg, bound)})"
    if isinstance(t, Abs):
        return (f"(lam {t.var} {show_type_sexpr(t.var_type)} "
                f"{term_sexpr(t.body, bound | {t.var})})")
    if isinstance(t, App):
        return f"(app {term_sexpr(t.fun, bound)} {term_sexpr(t.arg, bound)})"
    if isinstance(t, Case):
        return (f"(case {formula_sexpr(t.cond, bound)} {term_sexpr(t.then, bound)} "
                f"{term_sexpr(t.orelse, bound)})")
    raise TypeError(f"not a term: {t!r}")


def formula_sexpr(f: Formula, bound=frozenset()) -> str:
    if isinstance(f, Atom):
        return "(" + " ".join([f.pred] + [term_sexpr(a, bound) for a in f.args]) + ")"
    if isinstance(f, Or):
        return f"(or {formula_sexpr(f.left, bound)} {formula_sexpr(f.right, bound)})"
    if isinstance(f, Not):
        return f"(not {formula_sexpr(f.body, bound)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} {formula_sexpr(f.body, bound | {f.var})})"
    if isinstance(f, Equiv):
        return f"(eq {term_sexpr(f.lhs, bound)} {term_sexpr(f.rhs, bound)})"
    raise TypeError(f"not a formula: {f!r}")


def _node_header(p) -> str:
    r = p.rule
    if isinstance(p, (o.Lem, t2.Id)):
        return f"{r} {formula_sexpr(p.formula)}"
    if isinstance(p, (o.OrIntro, t2.OrR)):
        return f"{r} {p.index} (other {formula_sexpr(p.other)})"
    if isinstance(p, (o.Ex, t2.ExR)):
        return f"{r} (witness {term_sexpr(p.witness)}) ({p.var}) {formula_sexpr(p.matrix)}"
    if isinstance(p, (o.NegEx, t2.ExL)):
        s = f"{r} (eigen {p.eigen})"
        return s + (f" (var {p.var})" if p.var is not None else "")
    if isinstance(p, (o.Weak, t2.WeakR, t2.WeakL, o.Cut, t2.Cut2)):
        return f"{r} {formula_sexpr(p.formula)}"
    if isinstance(p, o.Perm):
        return f"{r} ({' '.join(map(str, p.perm))})"
    if isinstance(p, t2.Perm2):
        return f"{r} ({' '.join(map(str, p.lperm))}) ({' '.join(map(str, p.rperm))})"
    return r


def proof_sexpr(p, indent: int = 2) -> str:
    lines: List[str] = []

    def go(q, depth):
        pad = " " * (indent * depth)
        kids = q.children()
        lines.append(f"{pad}({_node_header(q)}" + ("" if kids else ")"))
        for k in kids:
            go(k, depth + 1)
        if kids:
            lines[-1] += ")"

    go(p, 0)
    return "\n".join(lines)


def signature_sexpr(sig: Signature) -> str:
    parts = [f"(const {c})" for c in sig.constants]
    parts += [f"(fun {f} {n})" for f, n in sig.functions]
    parts += [f"(pred {p} {n})" for p, n in sig.predicates]
    return "(sig " + " ".join(parts) + ")"


def print_proof_file(pf: ProofFile) -> str:
    tag = "proof2" if pf.two_sided else "proof1"
    body = proof_sexpr(pf.proof).replace("\n", "\n  ")
    return f"{signature_sexpr(pf.signature)}\n({tag}\n  {body})\n"
