"""Leech lattice construction and fixed-norm coset enumeration.

The public surface: build the Golay code and lattice context once, then
enumerate {x in Lambda : (x,x) = norm, (x, anchor_k) = value_k} exactly.
The enumerator reduces the problem to the rank-(24-k) sublattice
orthogonal to the anchors (integer kernel of the inner-product map), finds
one particular solution of the inhomogeneous integer system, and runs the
exact sphere search on that coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ..util import chunk_evenly, parallel_map
from .fincke_pohst import EnumerationStats, enumerate_sphere, outer_interval
from .golay import GolayCode, GolayConstructionError, build_golay
from .intlinalg import (
    integer_row_kernel,
    rank_rational,
    solve_integer_combination,
)
from .leech import (
    A_ALTERNATE,
    A_CANONICAL,
    B_ALTERNATE,
    B_CANONICAL,
    LeechConstructionError,
    canonical_sort,
    is_leech_member,
    leech_basis,
    membership_mask,
    norm4_shell,
    conventional_inner,
    rows_as_set,
    shell_size,
)
from .reduction import reduce_basis_rows, shorten_against

__all__ = [
    "A_ALTERNATE",
    "A_CANONICAL",
    "B_ALTERNATE",
    "B_CANONICAL",
    "CosetConstraint",
    "EnumerationStats",
    "GolayCode",
    "GolayConstructionError",
    "InfeasibleCosetError",
    "LeechConstructionError",
    "LeechContext",
    "build_golay",
    "canonical_sort",
    "default_context",
    "enumerate_coset_shell",
    "enumerate_sphere",
    "is_leech_member",
    "leech_basis",
    "membership_mask",
    "norm4_shell",
    "conventional_inner",
    "rows_as_set",
    "shell_size",
]


class InfeasibleCosetError(RuntimeError):
    """The integer constraint system has no solution in the lattice at all
    (as opposed to a feasible coset whose shell happens to be empty)."""


@dataclass(frozen=True)
class CosetConstraint:
    """Requires conventional_inner(x, anchor) == value (value integral)."""

    anchor: np.ndarray
    value: int


@dataclass(frozen=True)
class LeechContext:
    code: GolayCode
    basis: np.ndarray  # (24, 24) rows generate the scaled lattice


@lru_cache(maxsize=1)
def default_context() -> LeechContext:
    code = build_golay()
    return LeechContext(code=code, basis=leech_basis(code))


def _coset_setup(
    constraints: Sequence[CosetConstraint], ctx: LeechContext
) -> tuple[np.ndarray, np.ndarray]:
    """Particular solution x0 and sublattice rows K for the constraint set."""
    basis = ctx.basis
    if not constraints:
        return np.zeros(24, dtype=np.int64), basis.copy()

    anchors = [np.asarray(c.anchor, dtype=np.int64) for c in constraints]
    if rank_rational([list(a) for a in anchors]) != len(anchors):
        raise ValueError("constraint anchors must be linearly independent")

    cols = []
    for a in anchors:
        prod = basis @ a
        if np.any(prod % 8):
            raise ValueError("anchor is not in the lattice dual (scaled by 8)")
        cols.append(prod // 8)
    mat = [list(row) for row in np.stack(cols, axis=1)]  # 24 x k

    target = [c.value for c in constraints]
    part = solve_integer_combination(mat, target)
    if part is None:
        raise InfeasibleCosetError(
            f"no lattice point satisfies inner products {target}"
        )
    kernel = integer_row_kernel(mat)
    if len(kernel) != 24 - len(anchors):
        raise LeechConstructionError("unexpected kernel rank")

    x0 = np.asarray(part, dtype=np.int64) @ basis
    k_rows = np.array(kernel, dtype=np.int64) @ basis
    return x0, k_rows


def enumerate_coset_shell(
    constraints: Sequence[CosetConstraint],
    norm,
    ctx: Optional[LeechContext] = None,
    workers: int = 1,
    stats: Optional[EnumerationStats] = None,
) -> np.ndarray:
    """The complete set {x in Lambda : (x,x)=norm, (x,anchor_i)=value_i}.

    Returns an (n, 24) int64 array in canonical (lexicographic) order.
    Raises InfeasibleCosetError when the inner-product system has no
    lattice solution; an empty array means a feasible but empty shell.
    """
    if ctx is None:
        ctx = default_context()
    norm = Fraction(norm)
    if norm <= 0:
        raise ValueError("norm must be positive")
    target_scaled = 8 * norm
    if target_scaled.denominator != 1:
        return np.zeros((0, 24), dtype=np.int64)  # even lattice: no such norm

    x0, k_rows = _coset_setup(constraints, ctx)
    k_rows = reduce_basis_rows(k_rows)
    x0 = shorten_against(x0, k_rows)

    gram = (k_rows @ k_rows.T).astype(object)
    gram_f = [[Fraction(int(gram[i, j])) for j in range(gram.shape[1])] for i in range(gram.shape[0])]
    rhs = [Fraction(int(v)) for v in (k_rows @ x0)]

    from ..arith import rational_linear_solve

    tau = rational_linear_solve(gram_f, rhs)
    tau_g_tau = sum(t * r for t, r in zip(tau, rhs))
    x0_sq = Fraction(int(x0 @ x0))
    fp_target = Fraction(target_scaled) - x0_sq + tau_g_tau
    if fp_target < 0:
        return np.zeros((0, 24), dtype=np.int64)

    if stats is None:
        stats = EnumerationStats()

    if workers > 1:
        tops = outer_interval(gram_f, tau, fp_target)
        chunks = chunk_evenly(tops, workers * 4)

        def job(vals):
            local = EnumerationStats()
            sols = enumerate_sphere(
                gram_f, tau, fp_target, top_values=vals, stats=local
            )
            return sols, local

        results = parallel_map(job, chunks, workers=workers)
        solutions = []
        for sols, local in results:
            solutions.extend(sols)
            stats.nodes += local.nodes
            stats.leaves += local.leaves
            stats.solutions += local.solutions
    else:
        solutions = enumerate_sphere(gram_f, tau, fp_target, stats=stats)

    if not solutions:
        return np.zeros((0, 24), dtype=np.int64)
    w = np.array(sorted(solutions), dtype=np.int64)
    points = w @ k_rows + x0

    _verify_shell(points, constraints, target_scaled, ctx)
    return canonical_sort(points)


def _verify_shell(
    points: np.ndarray,
    constraints: Sequence[CosetConstraint],
    target_scaled: Fraction,
    ctx: LeechContext,
) -> None:
    norms = (points.astype(np.int64) ** 2).sum(axis=1)
    if not bool((norms == int(target_scaled)).all()):
        raise LeechConstructionError("enumerated point with wrong norm")
    for c in constraints:
        dots = points @ np.asarray(c.anchor, dtype=np.int64)
        if not bool((dots == 8 * c.value).all()):
            raise LeechConstructionError("enumerated point violates a constraint")
    if not bool(membership_mask(points, ctx.code).all()):
        raise LeechConstructionError("enumerated point is not a lattice member")
    if len(rows_as_set(points)) != len(points):
        raise LeechConstructionError("duplicate points in enumeration")
