"""Translation of two-sided proofs into one-sided ones.

A proof of ``Γ ⊢ Δ`` becomes a proof of ``¬Γ, Δ`` (antecedent order kept).
Since one-sided rules act on the last positions, each step is wrapped in
``Perm`` nodes that move the active formulas to the end and back.
"""
from __future__ import annotations

from itertools import count

from ..syntax import Not
from . import onesided as o
from . import twosided as t
from .twosided import check_two_sided, conclusions2


def _perm(proof, labels, target):
    """Reorder a proof whose positions carry ``labels`` into ``target``."""
    perm = tuple(labels.index(x) + 1 for x in target)
    if perm == tuple(range(1, len(perm) + 1)):
        return proof
    return o.Perm(perm, proof)


def translate(p: t.Proof2) -> o.Proof:
    """One-sided proof of ``¬Γ, Δ`` for a checked two-sided proof of ``Γ ⊢ Δ``."""
    check_two_sided(p)
    seqs = conclusions2(p)
    fresh = count()

    def labels_of(q):
        g, d = seqs[id(q)]
        return ([("g", next(fresh)) for _ in g], [("d", next(fresh)) for _ in d])

    def go(q):
        """Returns (proof, antecedent labels, succedent labels)."""
        if isinstance(q, t.Id):
            g, d = labels_of(q)
            return o.Lem(q.formula), g, d
        if isinstance(q, t.Perm2):
            r, g, d = go(q.premise)
            g2 = [g[j - 1] for j in q.lperm]
            d2 = [d[j - 1] for j in q.rperm]
            return _perm(r, g + d, g2 + d2), g2, d2
        if isinstance(q, t.NegR):
            # τ(premise) already concludes ¬Γ, ¬A, Δ
            r, g, d = go(q.premise)
            return r, g[:-1], [g[-1]] + d
        if isinstance(q, (t.NegL, t.ExR, t.OrR, t.ExL)):
            r, g, d = go(q.premise)
            if isinstance(q, t.ExL):
                a, rest_g, rest_d = g[-1], g[:-1], d
            else:
                a, rest_g, rest_d = d[0], g, d[1:]
            r = _perm(r, g + d, rest_g + rest_d + [a])
            if isinstance(q, t.NegL):
                r = o.NegNeg(r)
            elif isinstance(q, t.ExR):
                r = o.Ex(q.witness, q.var, q.matrix, r)
            elif isinstance(q, t.OrR):
                r = o.OrIntro(q.index, q.other, r)
            else:
                r = o.NegEx(q.eigen, r, q.var)
            if isinstance(q, (t.NegL, t.ExL)):
                g2, d2 = rest_g + [a], rest_d
            else:
                g2, d2 = rest_g, [a] + rest_d
            return _perm(r, rest_g + rest_d + [a], g2 + d2), g2, d2
        if isinstance(q, (t.ContractR, t.ContractL)):
            r, g, d = go(q.premise)
            if isinstance(q, t.ContractR):
                a, b, rest = d[0], d[1], g + d[2:]
            else:
                a, b, rest = g[-2], g[-1], g[:-2] + d
            r = o.Contract(_perm(r, g + d, rest + [a, b]))
            if isinstance(q, t.ContractR):
                g2, d2 = g, [a] + d[2:]
            else:
                g2, d2 = g[:-2] + [a], d
            return _perm(r, rest + [a], g2 + d2), g2, d2
        if isinstance(q, (t.WeakR, t.WeakL)):
            r, g, d = go(q.premise)
            a = ("w", next(fresh))
            if isinstance(q, t.WeakR):
                r = o.Weak(q.formula, r)
                g2, d2 = g, [a] + d
            else:
                r = o.Weak(Not(q.formula), r)
                g2, d2 = g + [a], d
            return _perm(r, g + d + [a], g2 + d2), g2, d2
        if isinstance(q, t.Cut2):
            r1, g1, d1 = go(q.left)
            r2, g2, d2 = go(q.right)
            r1 = _perm(r1, g1 + d1, g1 + d1[1:] + [d1[0]])
            r2 = _perm(r2, g2 + d2, g2[:-1] + d2 + [g2[-1]])
            r = o.Cut(q.formula, r1, r2)
            cur = g1 + d1[1:] + g2[:-1] + d2
            ga, da = g1 + g2[:-1], d1[1:] + d2
            return _perm(r, cur, ga + da), ga, da
        if isinstance(q, t.OrL):
            r1, g1, d1 = go(q.left)
            r2, g2, d2 = go(q.right)
            r1 = _perm(r1, g1 + d1, g1[:-1] + d1 + [g1[-1]])
            r2 = _perm(r2, g2 + d2, g2[:-1] + d2 + [g2[-1]])
            r = o.NegOr(r1, r2)
            a = ("or", next(fresh))
            cur = g1[:-1] + d1 + g2[:-1] + d2 + [a]
            # merge the duplicated context left to right
            for x, y in zip(g1[:-1] + d1, g2[:-1] + d2):
                rest = [z for z in cur if z not in (x, y)]
                r = o.Contract(_perm(r, cur, rest + [x, y]))
                cur = rest + [x]
            ga, da = g1[:-1] + [a], d1
            return _perm(r, cur, ga + da), ga, da
        raise TypeError(f"unknown two-sided node {type(q).__name__}")

    proof, _, _ = go(p)
    return o.regularize(o.collapse_perms(proof))
