"""Büchi-game winning regions evaluated in absorptive semirings."""
from semibuchi.game import BuchiGame, GameError, load_game, parse_game
from semibuchi.interpret import (
    Interpretation,
    boolean_interpretation,
    build_cost,
    build_repair,
    build_strat,
    build_target,
)
from semibuchi.poly import AbsorptivePoly, Monomial, PolySemiring, drop_exponents, eval_hom, parse_poly
from semibuchi.semirings import BOOLEAN, TROPICAL, VITERBI, MinMaxSemiring, semiring_by_name
from semibuchi.solver import eval_win0, solve

__all__ = [
    "AbsorptivePoly", "BOOLEAN", "BuchiGame", "GameError", "Interpretation", "MinMaxSemiring",
    "Monomial", "PolySemiring", "TROPICAL", "VITERBI", "boolean_interpretation", "build_cost",
    "build_repair", "build_strat", "build_target", "drop_exponents", "eval_hom", "eval_win0",
    "load_game", "parse_game", "parse_poly", "semiring_by_name", "solve",
]
