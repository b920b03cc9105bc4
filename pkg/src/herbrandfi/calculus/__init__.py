"""Proof trees, checkers, translation and proof substitution."""
from .onesided import (
    RULES, Contract, Cut, Ex, Lem, NegEx, NegNeg, NegOr, OrIntro, Perm, Proof,
    Weak, check_one_sided, conclusions, eigenvariables, end_sequent,
    collapse_perms, is_regular, nodes, proof_subst, regularize,
)
from .translate import translate
from .twosided import (
    RULES2, ContractL, ContractR, Cut2, ExL, ExR, Id, NegL, NegR, OrL, OrR,
    Perm2, Proof2, WeakL, WeakR, check_two_sided,
)
