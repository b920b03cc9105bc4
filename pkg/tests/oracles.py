"""Reference implementations used as test oracles.

These are deliberately naive and share no code with the verifier: they
enumerate truth tables and evaluate case terms directly.
"""
from itertools import product

from herbrandfi.kernel import convertible, normalize
from herbrandfi.syntax import (
    Abs, App, Arrow, Atom, Case, Const, Eps, Equiv, Fun, Iota, Not, Null, Or, Pair, Prod,
    Proj, Var, show_term,
)


def is_l_term(t):
    """Closed first-order term built from constants and function symbols."""
    if isinstance(t, Const):
        return True
    if isinstance(t, Fun):
        return all(is_l_term(a) for a in t.args)
    return False


def closed_normal_shape(t, ty):
    """Shape table for closed normal forms, checked recursively.

    ι: an L-term or a case; □: ε or a case; U×V: a pair or a case;
    U→V: an abstraction or a case. Case branches and conditions are checked too.
    """
    if isinstance(t, Case):
        return cond_shape(t.cond) and closed_normal_shape(t.then, ty) and closed_normal_shape(t.orelse, ty)
    if isinstance(ty, Iota):
        return is_l_term(t)
    if isinstance(ty, Null):
        return isinstance(t, Eps)
    if isinstance(ty, Prod):
        return (isinstance(t, Pair) and closed_normal_shape(t.fst, ty.left)
                and closed_normal_shape(t.snd, ty.right))
    if isinstance(ty, Arrow):
        return isinstance(t, Abs)
    return False


def cond_shape(p):
    if isinstance(p, Atom):
        return all(closed_normal_shape(a, Iota()) for a in p.args)
    if isinstance(p, Not):
        return cond_shape(p.body)
    if isinstance(p, Or):
        return cond_shape(p.left) and cond_shape(p.right)
    if isinstance(p, Equiv):
        return True
    return False


def atom_key(pred, args):
    return (pred, tuple(show_term(a) for a in args))


def equation_key(p):
    return ("≡", show_term(normalize(p.lhs)), show_term(normalize(p.rhs)))


def resolve(t, sigma):
    """Case-free value of a closed ι-term under an atom assignment."""
    n = normalize(t)
    if isinstance(n, Case):
        branch = n.then if evaluate(n.cond, sigma) else n.orelse
        return resolve(branch, sigma)
    if isinstance(n, Fun):
        return Fun(n.name, tuple(resolve(a, sigma) for a in n.args))
    return n


def evaluate(p, sigma):
    """Truth value of a closed proposition (cases allowed) under ``sigma``."""
    if isinstance(p, Atom):
        key = atom_key(p.pred, [resolve(a, sigma) for a in p.args])
        return sigma.get(key, False)
    if isinstance(p, Not):
        return not evaluate(p.body, sigma)
    if isinstance(p, Or):
        return evaluate(p.left, sigma) or evaluate(p.right, sigma)
    if isinstance(p, Equiv):
        # only convertible pairs are provably equal; anything else is unknown
        if convertible(p.lhs, p.rhs):
            return True
        return sigma.get(equation_key(p), False)
    raise TypeError(f"not a proposition: {p}")


def atom_keys(p):
    """Every atom key that evaluation can reach, exploring both case branches."""
    keys = set()

    def values(t):
        n = normalize(t)
        if isinstance(n, Case):
            collect(n.cond)
            return values(n.then) + values(n.orelse)
        if isinstance(n, Fun):
            return [Fun(n.name, args) for args in product(*[values(a) for a in n.args])]
        return [n]

    def collect(q):
        if isinstance(q, Atom):
            for args in product(*[values(a) for a in q.args]):
                keys.add(atom_key(q.pred, args))
        elif isinstance(q, Not):
            collect(q.body)
        elif isinstance(q, Or):
            collect(q.left)
            collect(q.right)
        elif isinstance(q, Equiv) and not convertible(q.lhs, q.rhs):
            keys.add(equation_key(q))

    collect(p)
    return sorted(keys)


def assignments(keys):
    for bits in product((False, True), repeat=len(keys)):
        yield dict(zip(keys, bits))


def truth_table_tautology(p):
    keys = atom_keys(p)
    return all(evaluate(p, s) for s in assignments(keys))


def equivalent(p, q):
    keys = sorted(set(atom_keys(p)) | set(atom_keys(q)))
    return all(evaluate(p, s) == evaluate(q, s) for s in assignments(keys))


def term_depth(t):
    """Height of the syntax tree, descending into case conditions."""
    if isinstance(t, (Eps, Const, Var)):
        return 1
    if isinstance(t, Fun):
        return 1 + max((term_depth(a) for a in t.args), default=0)
    if isinstance(t, Pair):
        return 1 + max(term_depth(t.fst), term_depth(t.snd))
    if isinstance(t, Proj):
        return 1 + term_depth(t.arg)
    if isinstance(t, Abs):
        return 1 + term_depth(t.body)
    if isinstance(t, App):
        return 1 + max(term_depth(t.fun), term_depth(t.arg))
    if isinstance(t, Case):
        return 1 + max(prop_depth(t.cond), term_depth(t.then), term_depth(t.orelse))
    raise TypeError(t)


def prop_depth(p):
    if isinstance(p, Atom):
        return 1 + max((term_depth(a) for a in p.args), default=0)
    if isinstance(p, Not):
        return 1 + prop_depth(p.body)
    if isinstance(p, Or):
        return 1 + max(prop_depth(p.left), prop_depth(p.right))
    if isinstance(p, Equiv):
        return 1 + max(term_depth(p.lhs), term_depth(p.rhs))
    raise TypeError(p)


def contains_case(x):
    if isinstance(x, Case):
        return True
    if isinstance(x, (Eps, Const, Var)):
        return False
    if isinstance(x, Fun):
        return any(contains_case(a) for a in x.args)
    if isinstance(x, Atom):
        return any(contains_case(a) for a in x.args)
    if isinstance(x, Pair):
        return contains_case(x.fst) or contains_case(x.snd)
    if isinstance(x, Proj):
        return contains_case(x.arg)
    if isinstance(x, Abs):
        return contains_case(x.body)
    if isinstance(x, App):
        return contains_case(x.fun) or contains_case(x.arg)
    if isinstance(x, Not):
        return contains_case(x.body)
    if isinstance(x, Or):
        return contains_case(x.left) or contains_case(x.right)
    if isinstance(x, Equiv):
        return contains_case(x.lhs) or contains_case(x.rhs)
    return False
