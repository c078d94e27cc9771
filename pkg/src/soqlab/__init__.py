"""Numerical laboratory for SO_q(N) and the quotient spaces SO_q(N)/SO_q(N-2)."""
from .scalars import QParams, default_tol, q_int
from .weyl import WeylWord, omega_k, omega_N_words

__all__ = ["QParams", "default_tol", "q_int", "WeylWord", "omega_k", "omega_N_words"]
__version__ = "0.1.0"
