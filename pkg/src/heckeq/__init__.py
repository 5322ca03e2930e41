"""Exact Hecke-algebra computations for subgroups of finite permutation groups.

The package computes double-coset bases and structure constants of
p_H Q[G] p_H, central idempotents for rational irreducible characters,
defining equations for the isotypical pieces of A_H, and checks all of
these as exact subspace identities in rational G-modules.
"""

__version__ = "0.1.0"

from .errors import HeckeqError, InputError, InternalError, TheoremViolation  # noqa: F401
