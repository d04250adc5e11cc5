"""Unification modulo free symbols, an involutive inverse and XOR."""

from ._core import (
    MalformedTerm,
    ParseError,
    check_complete,
    eq_modulo_e,
    is_unifier,
    normalize,
    pair_sum_problem,
    parse_problem,
    run_cli,
    solve_acun,
    table1_problems,
    unify,
    unify_std,
)

__all__ = [
    "MalformedTerm",
    "ParseError",
    "check_complete",
    "eq_modulo_e",
    "is_unifier",
    "normalize",
    "pair_sum_problem",
    "parse_problem",
    "run_cli",
    "solve_acun",
    "table1_problems",
    "unify",
    "unify_std",
]
