"""DAMAS solver package for EasyDamas."""

from easydamas.solver.damas import damas_solve, embed_solution, restrict_system

__all__ = ["damas_solve", "embed_solution", "restrict_system"]
