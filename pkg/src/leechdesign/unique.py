"""Uniqueness computation: all second-shell candidates against a fixed
inner shell, their two-class split, and the isometric twin.

Setting (all exact): rescaling the 275-point shell so that its vectors
have squared norm 12 makes the lattice L it generates integral with
pairwise inner products {2, -3}.  Working coordinates are the stored
integer vectors of the design layer; the lattice inner product of stored
rows u, v is (u . v) / 40.  A second-shell candidate y (the unit-sphere
second shell rescaled to squared norm 44/3) must satisfy

    <y, x> in {4, -1, -6}  for all 275 shell vectors x,

and writing y over the dual basis e'_1..e'_22 of 22 chosen shell vectors
forces the coefficient of e'_i to be 5 c_i - 1 with c_i in {0, +-1}: the
coefficient is <y, e_i>, and the three admissible values are congruent
to -1 mod 5.  The search over c in {0,+-1}^22 with the exact norm
constraint is therefore complete; no candidate outside that cube exists.

Candidates are materialized as integer vectors 3 * y in stored
coordinates, so all pairwise decisions downstream are int64 arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import rational_matrix_inverse
from .construct import PointLayer, WeightedPointSet
from .lattice import canonical_sort, rows_as_set
from .lattice.fincke_pohst import EnumerationStats, enumerate_sphere
from .lattice.intlinalg import det_int, hnf_rows, rank_rational

WORK_DEN = 40  # stored dot / 40 = lattice inner product
CANDIDATE_NORM = Fraction(44, 3)
ADMISSIBLE_PRODUCTS = (4, -1, -6)


class UniquenessError(RuntimeError):
    pass


@dataclass(frozen=True)
class IntegralizedLayer:
    """The inner shell as an integral lattice generating set."""

    points: np.ndarray  # (275, 24) stored ints

    def inner_matrix(self) -> np.ndarray:
        d = self.points @ self.points.T
        if np.any(d % WORK_DEN):
            raise UniquenessError("non-integral lattice inner product")
        return d // WORK_DEN


@dataclass(frozen=True)
class DualFrame:
    basis_indices: tuple[int, ...]  # 22 rows of the layer
    basis_points: np.ndarray  # (22, 24)
    gram: np.ndarray  # (22, 22) int
    gram_inv: list  # exact Fractions
    coeffs: np.ndarray  # (275, 22) int: x = sum_j coeffs[x, j] e_j


@dataclass(frozen=True)
class CandidateSet:
    vectors3: np.ndarray  # (n, 24) int: 3 * stored candidate coordinates
    dual_coeffs: np.ndarray  # (n, 22) int: coefficients 5 c - 1 over e'
    stats: EnumerationStats
    norm_only_leaves: Optional[int]  # leaves passing the 22-cube + norm only


def integralize_X1(ws: WeightedPointSet) -> IntegralizedLayer:
    layer = ws.layers[0]
    if layer.r2 != Fraction(12, 5) or layer.denom != 5:
        raise UniquenessError("expected the inner shell at squared radius 12/5")
    out = IntegralizedLayer(points=layer.points.copy())
    inner = out.inner_matrix()
    diag = np.diag(inner)
    if not bool((diag == 12).all()):
        raise UniquenessError("integralized norms are not 12")
    off = inner[~np.eye(len(inner), dtype=bool)]
    if not set(np.unique(off).tolist()) <= {2, -3}:
        raise UniquenessError("integralized inner products are not {2, -3}")
    return out


def _lattice_coordinates(pts: np.ndarray) -> np.ndarray:
    """Integer coordinates of every shell vector over an HNF basis of the
    lattice the whole shell generates (exact back-substitution)."""
    h, _ = hnf_rows([list(map(int, r)) for r in pts])
    hrows = [r for r in h if any(r)]
    if len(hrows) != 22:
        raise UniquenessError(f"shell lattice has rank {len(hrows)}, expected 22")
    pivots = [next(c for c in range(24) if row[c] != 0) for row in hrows]
    coords = np.zeros((len(pts), 22), dtype=np.int64)
    for i, p in enumerate(pts):
        resid = [int(x) for x in p]
        for r, (row, piv) in enumerate(zip(hrows, pivots)):
            if resid[piv] % row[piv]:
                raise UniquenessError("point outside its own generated lattice")
            q = resid[piv] // row[piv]
            coords[i, r] = q
            if q:
                resid = [x - q * hx for x, hx in zip(resid, row)]
        if any(resid):
            raise UniquenessError("point outside its own generated lattice")
    return coords


def _unimodular_point_subset(coords: np.ndarray, pref: list[int]) -> list[int]:
    """22 point indices whose rows form a basis of Z^22: greedy independent
    start, then swap descent on |det| using single-point exchanges.

    Each accepted swap replaces basis row k by a point whose coordinate
    over the current basis has fractional entry of absolute value < 1 at
    position k, which multiplies |det| by that value: |det| is a strictly
    decreasing positive integer sequence, so the descent terminates."""
    rows: list[list[int]] = []
    subset: list[int] = []
    for idx in pref:
        cand = rows + [list(map(int, coords[idx]))]
        if rank_rational(cand) == len(cand):
            subset.append(idx)
            rows.append(cand[-1])
            if len(subset) == 22:
                break
    if len(subset) != 22:
        raise UniquenessError("shell does not span 22 dimensions")

    while True:
        basis = [[int(x) for x in coords[i]] for i in subset]
        det = abs(det_int(basis))
        if det == 0:
            raise UniquenessError("basis degenerated during swap descent")
        if det == 1:
            return subset
        inv = rational_matrix_inverse(
            [[Fraction(v) for v in row] for row in basis]
        )
        improved = False
        for idx in pref:
            if idx in subset:
                continue
            m = [
                sum(Fraction(int(coords[idx, c])) * inv[c][k] for c in range(22))
                for k in range(22)
            ]
            frac = [
                (abs(v), k)
                for k, v in enumerate(m)
                if v.denominator != 1 and abs(v) < 1
            ]
            if frac:
                _, k = min(frac)
                subset[k] = idx
                improved = True
                break
        if not improved:
            raise UniquenessError(
                f"swap descent stuck at index^2 {det}; no single-point "
                "exchange improves the basis"
            )


def build_dual_frame(layer: IntegralizedLayer, order: Optional[list[int]] = None) -> DualFrame:
    """Choose 22 shell vectors forming a basis of the lattice generated by
    the whole shell, invert their Gram matrix exactly, and express all 275
    shell vectors integrally over the chosen basis.

    A greedy independent subset generally generates a finite-index
    sublattice, so the choice is repaired by determinant swap descent
    until the subset is a genuine lattice basis.
    """
    pts = layer.points
    n = len(pts)
    pref = list(range(n)) if order is None else list(order)
    coords = _lattice_coordinates(pts)
    chosen = _unimodular_point_subset(coords, pref)

    basis = pts[chosen]
    gram_np = (basis @ basis.T) // WORK_DEN
    if np.any((basis @ basis.T) % WORK_DEN):
        raise UniquenessError("basis Gram is not integral")
    if det_int([list(map(int, r)) for r in gram_np]) <= 0:
        raise UniquenessError("basis Gram is not positive definite")
    gram_inv = rational_matrix_inverse(
        [[Fraction(int(gram_np[i, j])) for j in range(22)] for i in range(22)]
    )

    prods_raw = pts @ basis.T
    if np.any(prods_raw % WORK_DEN):
        raise UniquenessError("non-integral inner product against basis")
    prods = prods_raw // WORK_DEN  # <x, e_j>, exact ints
    coeffs = np.zeros((n, 22), dtype=np.int64)
    for i in range(n):
        exact = [
            sum(gram_inv[r][c] * int(prods[i, c]) for c in range(22))
            for r in range(22)
        ]
        for r, v in enumerate(exact):
            if v.denominator != 1:
                raise UniquenessError(
                    "shell vector has fractional coordinates over the chosen "
                    "basis even after swap descent"
                )
            coeffs[i, r] = int(v)
    # Round trip: coeffs @ basis must reproduce the points exactly.
    if not bool((coeffs @ basis == pts).all()):
        raise UniquenessError("dual-frame coefficient round trip failed")
    return DualFrame(
        basis_indices=tuple(chosen),
        basis_points=basis,
        gram=gram_np,
        gram_inv=gram_inv,
        coeffs=coeffs,
    )


def enumerate_candidates(
    frame: DualFrame,
    layer: IntegralizedLayer,
    prune_with_constraints: bool = False,
    workers: int = 1,
) -> CandidateSet:
    """Complete candidate enumeration (see module docstring).

    With prune_with_constraints=False the admissibility filter is applied
    only at the leaves, so the returned norm_only_leaves counts vectors of
    the correct norm whose dual coefficients lie in the {0,+-1} cube but
    whose inner products against the full shell are not all admissible.
    """
    gram_q = [
        [25 * frame.gram_inv[i][j] for j in range(22)] for i in range(22)
    ]
    shift = [Fraction(-1, 5)] * 22

    sums = frame.coeffs.sum(axis=1)
    if np.any((sums - 1) % 5):
        raise UniquenessError(
            "a shell vector has coefficient sum != 1 mod 5; no candidate "
            "can satisfy its admissibility constraint"
        )
    k = (sums - 1) // 5
    cmat = frame.coeffs.astype(np.int64)
    clo = (k - 1).astype(np.int64)
    chi = (k + 1).astype(np.int64)

    stats = EnumerationStats()
    allowed = [(-1, 0, 1)] * 22
    if workers > 1:
        from .util import parallel_map

        def job(top):
            local = EnumerationStats()
            sols = enumerate_sphere(
                gram_q,
                shift,
                CANDIDATE_NORM,
                allowed=allowed,
                int_constraints=(cmat, clo, chi),
                prune_constraints=prune_with_constraints,
                top_values=[top],
                stats=local,
            )
            return sols, local

        solutions = []
        for sols, local in parallel_map(job, [-1, 0, 1], workers=workers):
            solutions.extend(sols)
            stats.nodes += local.nodes
            stats.leaves += local.leaves
            stats.solutions += local.solutions
            stats.constraint_rejected_leaves += local.constraint_rejected_leaves
        solutions.sort()
    else:
        solutions = enumerate_sphere(
            gram_q,
            shift,
            CANDIDATE_NORM,
            allowed=allowed,
            int_constraints=(cmat, clo, chi),
            prune_constraints=prune_with_constraints,
            stats=stats,
        )
    if not solutions:
        raise UniquenessError("no candidates found")

    c_arr = np.array(solutions, dtype=np.int64)
    u_arr = 5 * c_arr - 1

    # Ambient: y = sum_i (G^-1 u)_i e_i, materialized as 3 y (integral).
    vecs3 = np.zeros((len(u_arr), 24), dtype=np.int64)
    for row, u in enumerate(u_arr):
        w = [
            sum(frame.gram_inv[i][j] * int(u[j]) for j in range(22))
            for i in range(22)
        ]
        t3 = [3 * sum(w[i] * int(frame.basis_points[i, col]) for i in range(22)) for col in range(24)]
        for col, v in enumerate(t3):
            if v.denominator != 1:
                raise UniquenessError("candidate is not in (1/3) * stored frame")
            vecs3[row, col] = int(v)

    order = np.lexsort(vecs3.T[::-1])
    vecs3 = vecs3[order]
    u_arr = u_arr[order]

    _verify_candidates(vecs3, u_arr, layer, frame)
    norm_only = None if prune_with_constraints else stats.leaves
    return CandidateSet(
        vectors3=vecs3, dual_coeffs=u_arr, stats=stats, norm_only_leaves=norm_only
    )


def _verify_candidates(
    vecs3: np.ndarray, u_arr: np.ndarray, layer: IntegralizedLayer, frame: DualFrame
) -> None:
    norms = (vecs3**2).sum(axis=1)
    expect = CANDIDATE_NORM * 9 * WORK_DEN
    if expect.denominator != 1 or not bool((norms == int(expect)).all()):
        raise UniquenessError("candidate with wrong squared norm")
    prods = vecs3 @ layer.points.T  # 3 * 40 * <y, x>
    if np.any(prods % (3 * WORK_DEN)):
        raise UniquenessError("candidate inner product is not integral")
    vals = prods // (3 * WORK_DEN)
    if not set(np.unique(vals).tolist()) <= set(ADMISSIBLE_PRODUCTS):
        raise UniquenessError("candidate with inadmissible inner product")
    if len(rows_as_set(vecs3)) != len(vecs3):
        raise UniquenessError("duplicate candidates")
    # Dual coefficients are the inner products against the basis vectors.
    against_basis = vals[:, list(frame.basis_indices)]
    if not bool((against_basis == u_arr).all()):
        raise UniquenessError("dual coefficients disagree with inner products")


def generated_lattice_membership(frame: DualFrame, u_arr: np.ndarray) -> int:
    """How many candidates lie in the lattice generated by 5 e_1..5 e_22
    and -sum_i e'_i (coefficients over e': rows 5 G and all -1)."""
    gen_rows = [[5 * int(frame.gram[i, j]) for j in range(22)] for i in range(22)]
    gen_rows.append([-1] * 22)
    h, _ = hnf_rows(gen_rows)
    h = [row for row in h if any(row)]
    count = 0
    for u in u_arr:
        resid = [int(x) for x in u]
        ok = True
        for hrow in h:
            piv = next(c for c in range(22) if hrow[c] != 0)
            if resid[piv] % hrow[piv]:
                ok = False
                break
            q = resid[piv] // hrow[piv]
            if q:
                resid = [x - q * hx for x, hx in zip(resid, hrow)]
        if ok and any(resid):
            ok = False
        count += ok
    return count


@dataclass(frozen=True)
class CandidateSplit:
    part_a: np.ndarray  # (2025, 24) ints, 3 * stored coords
    part_b: np.ndarray
    cross_products: tuple[Fraction, ...]  # distinct <y, y'> across parts


def split_candidates(candidates: CandidateSet, ws: WeightedPointSet) -> CandidateSplit:
    """Partition by the compatibility relation: same part iff the pairwise
    normalized inner product is one of the three second-shell values.

    Verifies the relation is an equivalence with exactly two classes of
    2025 (exhaustively: all 4050^2 ordered pairs), identifies one class
    with the constructed second shell, and returns the other.
    """
    vec = candidates.vectors3
    n = len(vec)
    if n != 4050:
        raise UniquenessError(f"expected 4050 candidates, got {n}")
    dots = vec @ vec.T  # 9 * 40 * <y, y'>
    scale = 9 * WORK_DEN
    norm_dot = int(CANDIDATE_NORM * scale)
    beta_dots = {
        int(Fraction(7, 22) * CANDIDATE_NORM * scale),
        int(Fraction(-1, 44) * CANDIDATE_NORM * scale),
        int(Fraction(-4, 11) * CANDIDATE_NORM * scale),
    }

    same = np.isin(dots, sorted(beta_dots))
    np.fill_diagonal(same, True)

    # Two classes: grow from candidate 0, check the complement is one class.
    in_a = same[0]
    size_a = int(in_a.sum())
    in_b = ~in_a
    size_b = int(in_b.sum())
    if size_a != 2025 or size_b != 2025:
        raise UniquenessError(f"split sizes {size_a}/{size_b}, expected 2025/2025")
    # Exhaustive transitivity: within parts everything compatible, across
    # parts nothing compatible.
    if not bool(same[np.ix_(in_a, in_a)].all()):
        raise UniquenessError("compatibility is not transitive on part A")
    if not bool(same[np.ix_(in_b, in_b)].all()):
        raise UniquenessError("compatibility is not transitive on part B")
    if bool(same[np.ix_(in_a, in_b)].any()):
        raise UniquenessError("cross-part pair is compatible")

    cross_vals = sorted(
        {Fraction(int(v), scale) for v in np.unique(dots[np.ix_(in_a, in_b)])}
    )
    if any(Fraction(v, scale) / CANDIDATE_NORM in (Fraction(7, 22), Fraction(-1, 44), Fraction(-4, 11)) for v in np.unique(dots[np.ix_(in_a, in_b)])):
        raise UniquenessError("cross-part normalized product in the second-shell set")

    part_a = canonical_sort(vec[in_a])
    part_b = canonical_sort(vec[in_b])

    x2_stored = rows_as_set(ws.layers[1].points)
    set_a = rows_as_set(part_a)
    set_b = rows_as_set(part_b)
    if set_a == x2_stored:
        pass
    elif set_b == x2_stored:
        part_a, part_b = part_b, part_a
        set_a, set_b = set_b, set_a
    else:
        raise UniquenessError("neither part equals the constructed second shell")
    if set_a & set_b:
        raise UniquenessError("parts intersect")
    return CandidateSplit(part_a=part_a, part_b=part_b, cross_products=tuple(cross_vals))


def twin_design(ws: WeightedPointSet, split: CandidateSplit) -> WeightedPointSet:
    """The companion configuration: same inner shell, second shell replaced
    by the other candidate class (same radius, weight, and denominators)."""
    twin_layer = PointLayer(
        points=split.part_b,
        denom=ws.layers[1].denom,
        weight=ws.layers[1].weight,
        r2=ws.layers[1].r2,
    )
    return WeightedPointSet(layers=(ws.layers[0], twin_layer))
