"""Exact linear algebra: GF(2), graded F2[tau], and 2-local integers."""

from __future__ import annotations

from .f2 import (
    Echelon,
    SparseBinaryMatrix,
    image_basis_f2,
    kernel_basis_f2,
    rank_f2,
    solve_f2,
)
from .groups import FiniteAbelianGroup, extensions
from .integer import SparseIntegerMatrix, rank_q, smith_form, smith_normal_form
from .tau import GradedMatrix, TauModule, graded_homology, graded_smith, homology_coordinates

F2 = "F2"
INTEGER_2LOCAL = "Integer2Local"


class NotAComplexError(ValueError):
    pass


def homology_at(d_in, d_out, ring: str = F2) -> FiniteAbelianGroup:
    """ker(d_out) / im(d_in).

    Over F2 the result is an elementary abelian group of the homology rank.
    Over the 2-local integers, odd invariant factors are units and are
    dropped; the free rank is the rational Betti number.
    """
    if d_in.rows != d_out.cols:
        raise ValueError(
            f"middle dimensions disagree: d_in has {d_in.rows} rows, d_out has {d_out.cols} columns"
        )
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("not a complex: d_out . d_in != 0")
    n = d_in.rows
    if ring == F2:
        return FiniteAbelianGroup.f2_vector_space(n - rank_f2(d_out) - rank_f2(d_in))
    if ring == INTEGER_2LOCAL:
        factors = smith_normal_form(d_in)
        free = n - rank_q(d_out) - len(factors)
        return FiniteAbelianGroup.from_invariant_factors(
            [d for d in factors if d != 1], free_rank=free, localize_at=2
        )
    raise ValueError(f"unknown ring {ring!r}")


__all__ = [
    "Echelon",
    "F2",
    "FiniteAbelianGroup",
    "GradedMatrix",
    "INTEGER_2LOCAL",
    "NotAComplexError",
    "SparseBinaryMatrix",
    "SparseIntegerMatrix",
    "TauModule",
    "extensions",
    "graded_homology",
    "homology_coordinates",
    "graded_smith",
    "homology_at",
    "image_basis_f2",
    "kernel_basis_f2",
    "rank_f2",
    "rank_q",
    "smith_form",
    "smith_normal_form",
    "solve_f2",
]
