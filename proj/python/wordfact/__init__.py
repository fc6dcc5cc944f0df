"""Word factorization in SL_n(Z) and Sp_2n(Z).

Matrices are lists of rows of Python ints; words are strings in the
``t[i,j]^k * Y1^-1 * SP[1,2]`` text format.
"""

from ._wordfact import (
    GenSet,
    HeuristicStall,
    bench_csv,
    build_birman,
    build_extended_symplectic,
    build_sl_elementary,
    congruence_factor,
    evaluate,
    flood_factor,
    genset,
    height_factor,
    height_full,
    height_offblock,
    height_rowlocal,
    hnf_factor,
    is_sl_member,
    is_sp_member,
    random_word,
    symplectic_factor,
)

__all__ = [
    "GenSet",
    "HeuristicStall",
    "bench_csv",
    "build_birman",
    "build_extended_symplectic",
    "build_sl_elementary",
    "congruence_factor",
    "evaluate",
    "flood_factor",
    "genset",
    "height_factor",
    "height_full",
    "height_offblock",
    "height_rowlocal",
    "hnf_factor",
    "is_sl_member",
    "is_sp_member",
    "random_word",
    "symplectic_factor",
]
