"""Exact differential algebra: ring towers, induced derivations, matrix
algebras with inner derivations, differential descent, and Cech boundary
maps, all over exact rational arithmetic."""

from ._diffalg import *  # noqa: F401,F403
