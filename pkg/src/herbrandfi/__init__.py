"""Functional interpretation of classical sequent proofs and Herbrand extraction."""
import sys

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
