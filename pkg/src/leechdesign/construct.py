"""Build the weighted two-shell point configuration and its companions.

Coordinates live in the sqrt8-scaled integer frame of the lattice module.
A projected point with denominator d is stored as the integer vector
d * (scaled coords); the conventional inner product of stored rows u, v
with denominators d_u, d_v is (u . v) / (8 d_u d_v).  For the design built
here all denominators are 5 (the A,B-projection has denominator 15 and the
outer shell is rescaled by 3), so every pairwise quantity downstream is an
exact integer computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .lattice import (
    CosetConstraint,
    LeechContext,
    canonical_sort,
    default_context,
    enumerate_coset_shell,
    membership_mask,
    conventional_inner,
    rows_as_set,
)

W1 = Fraction(1)
W2 = Fraction(1, 729)
R1_SQ = Fraction(12, 5)
R2_SQ = Fraction(132, 5)

# Scale pairs attaching the two shells to the unit sphere of R^23: layer i
# contributes points +-(a_i * x / r_1, b_i); a_i^2 (r_i/r_1)^2 + b_i^2 = 1.
A1_SQ = Fraction(4, 5)  # a_1 = 2/sqrt5
B1_SQ = Fraction(1, 5)  # b_1 = 1/sqrt5
A2_SQ = Fraction(4, 45)  # a_2 = 2/(3 sqrt5)
B2_SQ = Fraction(1, 45)  # b_2 = 1/(3 sqrt5)


class DesignConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class PointLayer:
    """Concentric layer: `points / denom` are scaled-frame coordinates."""

    points: np.ndarray  # (n, 24) int64
    denom: int
    weight: Fraction
    r2: Fraction  # conventional squared radius

    def __post_init__(self):
        norms = (self.points.astype(np.int64) ** 2).sum(axis=1)
        expect = self.r2 * 8 * self.denom * self.denom
        if expect.denominator != 1 or not bool((norms == int(expect)).all()):
            raise DesignConstructionError(
                f"layer norm check failed (expected {expect})"
            )
        if self.weight <= 0:
            raise DesignConstructionError("weights must be positive")

    @property
    def size(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True)
class WeightedPointSet:
    layers: tuple[PointLayer, ...]

    @property
    def size(self) -> int:
        return sum(layer.size for layer in self.layers)

    def dot_scale(self, i: int, j: int) -> int:
        """Stored-int dot D corresponds to conventional inner D / dot_scale."""
        return 8 * self.layers[i].denom * self.layers[j].denom

    def gram_block(self, i: int, j: int) -> np.ndarray:
        return self.layers[i].points @ self.layers[j].points.T


def check_anchor_pair(a, b, ctx: Optional[LeechContext] = None) -> None:
    ctx = ctx or default_context()
    pair = np.stack([np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)])
    if not bool(membership_mask(pair, ctx.code).all()):
        raise DesignConstructionError("anchors must be lattice members")
    if conventional_inner(a, a) != 4 or conventional_inner(b, b) != 4:
        raise DesignConstructionError("anchors must have norm 4")
    if conventional_inner(a, b) != -1:
        raise DesignConstructionError("anchors must have inner product -1")


def gram_solve_2x2(rhs_a: Fraction, rhs_b: Fraction) -> tuple[Fraction, Fraction]:
    """Solve [[4,-1],[-1,4]] c = rhs for the anchor Gram matrix."""
    ca = (4 * rhs_a + rhs_b) / 15
    cb = (rhs_a + 4 * rhs_b) / 15
    return ca, cb


def project_AB(x, a, b) -> list[Fraction]:
    """Orthogonal projection of one vector to the complement of span(a, b),
    exact, in scaled-frame coordinates."""
    ca, cb = gram_solve_2x2(conventional_inner(x, a), conventional_inner(x, b))
    return [
        Fraction(int(xi)) - ca * int(ai) - cb * int(bi)
        for xi, ai, bi in zip(x, a, b)
    ]


def project_rows_scaled(rows: np.ndarray, a, b, mult: int) -> np.ndarray:
    """mult * P(row) for every row, verified integral."""
    rows = np.asarray(rows, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    da = rows @ a  # 8 * (x, A)
    db = rows @ b
    if np.any(da % 8) or np.any(db % 8):
        raise DesignConstructionError("non-integral inner product against anchor")
    ia, ib = da // 8, db // 8
    num_a = 4 * ia + ib  # 15 * c_A
    num_b = ia + 4 * ib  # 15 * c_B
    out15 = 15 * mult * rows - mult * np.outer(num_a, a) - mult * np.outer(num_b, b)
    if np.any(out15 % 15):
        raise DesignConstructionError(f"projection not integral at mult={mult}")
    return out15 // 15


def project_out_single(rows: np.ndarray, a, mult: int) -> np.ndarray:
    """mult * P0(row), P0 projecting out the single anchor a (norm 4)."""
    rows = np.asarray(rows, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    da = rows @ a
    if np.any(da % 8):
        raise DesignConstructionError("non-integral inner product against anchor")
    ia = da // 8  # coefficient is (x, a) / 4 = ia / 4
    out4 = 4 * mult * rows - mult * np.outer(ia, a)
    if np.any(out4 % 4):
        raise DesignConstructionError(f"single projection not integral at mult={mult}")
    return out4 // 4


def build_design(
    a=None,
    b=None,
    ctx: Optional[LeechContext] = None,
    workers: int = 1,
) -> WeightedPointSet:
    """The weighted configuration: 275 points at squared radius 12/5 with
    weight 1, and 2025 points at squared radius 132/5 with weight 1/729."""
    ctx = ctx or default_context()
    from .lattice import A_CANONICAL, B_CANONICAL

    a = A_CANONICAL if a is None else np.asarray(a, dtype=np.int64)
    b = B_CANONICAL if b is None else np.asarray(b, dtype=np.int64)
    check_anchor_pair(a, b, ctx)

    shell1 = enumerate_coset_shell(
        [CosetConstraint(a, 3), CosetConstraint(b, -3)], 6, ctx, workers=workers
    )
    shell2 = enumerate_coset_shell(
        [CosetConstraint(a, 2), CosetConstraint(b, 0)], 4, ctx, workers=workers
    )
    if shell1.shape[0] != 275 or shell2.shape[0] != 2025:
        raise DesignConstructionError(
            f"wrong shell cardinalities: {shell1.shape[0]}, {shell2.shape[0]}"
        )

    x1 = canonical_sort(project_rows_scaled(shell1, a, b, mult=5))
    x2 = canonical_sort(project_rows_scaled(shell2, a, b, mult=15))  # 5 * (3 P(x))

    layer1 = PointLayer(points=x1, denom=5, weight=W1, r2=R1_SQ)
    layer2 = PointLayer(points=x2, denom=5, weight=W2, r2=R2_SQ)

    if len(rows_as_set(x1)) != 275 or len(rows_as_set(x2)) != 2025:
        raise DesignConstructionError("projection collapsed points")
    return WeightedPointSet(layers=(layer1, layer2))


def build_Y(a=None, b=None, ctx: Optional[LeechContext] = None, workers: int = 1):
    """The four norm-4 families with (x, a) = 2 and (x, b) in {1, 0, -1, -2},
    projected along a only; stored as 2 * P0(x) with denominator 2.

    Returns dict keyed by +1, +2, -2, -1 mapping to (n, 24) int arrays.
    """
    ctx = ctx or default_context()
    from .lattice import A_CANONICAL, B_CANONICAL

    a = A_CANONICAL if a is None else np.asarray(a, dtype=np.int64)
    b = B_CANONICAL if b is None else np.asarray(b, dtype=np.int64)
    check_anchor_pair(a, b, ctx)

    expected = {1: 275, 2: 2025, -2: 2025, -1: 275}
    b_value = {1: 1, 2: 0, -2: -1, -1: -2}
    out = {}
    for key, bval in b_value.items():
        shell = enumerate_coset_shell(
            [CosetConstraint(a, 2), CosetConstraint(b, bval)], 4, ctx, workers=workers
        )
        if shell.shape[0] != expected[key]:
            raise DesignConstructionError(
                f"Y[{key}] has {shell.shape[0]} points, expected {expected[key]}"
            )
        proj = canonical_sort(project_out_single(shell, a, mult=2))
        norms = (proj**2).sum(axis=1)
        if not bool((norms == 8 * 4 * 3).all()):  # r^2 = 3 at denom 2
            raise DesignConstructionError("Y projection radius is not 3")
        out[key] = proj

    union = rows_as_set(out[1]) | rows_as_set(out[2]) | rows_as_set(out[-1]) | rows_as_set(out[-2])
    if len(union) != 4600:
        raise DesignConstructionError(f"Y union has {len(union)} points, expected 4600")
    return out


def y_antipodal_pair_count(y_sets) -> int:
    """Number of {v, -v} pairs in the union of the four projected families."""
    union = (
        rows_as_set(y_sets[1])
        | rows_as_set(y_sets[2])
        | rows_as_set(y_sets[-1])
        | rows_as_set(y_sets[-2])
    )
    seen = set()
    pairs = 0
    for v in union:
        if v in seen:
            continue
        neg = tuple(-c for c in v)
        if neg == v:
            raise DesignConstructionError("self-antipodal point in Y union")
        if neg not in union:
            raise DesignConstructionError("Y union is not antipode-closed")
        seen.add(v)
        seen.add(neg)
        pairs += 1
    return pairs


def check_X1_equals_PY(a=None, b=None, ctx: Optional[LeechContext] = None) -> bool:
    """Does projecting the (2, 1) family through the full A,B-projection
    reproduce the inner shell exactly, as sets of rational vectors?"""
    ctx = ctx or default_context()
    from .lattice import A_CANONICAL, B_CANONICAL

    a = A_CANONICAL if a is None else np.asarray(a, dtype=np.int64)
    b = B_CANONICAL if b is None else np.asarray(b, dtype=np.int64)

    design = build_design(a, b, ctx)
    y_plus1 = enumerate_coset_shell(
        [CosetConstraint(a, 2), CosetConstraint(b, 1)], 4, ctx
    )
    proj = project_rows_scaled(y_plus1, a, b, mult=5)
    return rows_as_set(proj) == rows_as_set(design.layers[0].points)


# -- the antipodal double cover on S^22 ---------------------------------------


@dataclass(frozen=True)
class SymbolicSpherePoint:
    """(sign) * (a_layer * x / r_1, b_layer) without materializing radicals."""

    layer: int  # 1 or 2
    index: int  # row in the layer's canonical point array
    sign: int  # +1 or -1


def build_Z(design: WeightedPointSet) -> list[SymbolicSpherePoint]:
    """All 4600 symbolic points of the antipodal 7-design carrier."""
    pts: list[SymbolicSpherePoint] = []
    for sign in (1, -1):
        for layer in (1, 2):
            n = design.layers[layer - 1].size
            pts.extend(SymbolicSpherePoint(layer, i, sign) for i in range(n))
    return pts


_AB_PRODUCTS = {
    (1, 1): (A1_SQ, B1_SQ),
    (2, 2): (A2_SQ, B2_SQ),
    (1, 2): (Fraction(4, 15), Fraction(1, 15)),  # a1*a2, b1*b2
    (2, 1): (Fraction(4, 15), Fraction(1, 15)),
}


def z_inner(design: WeightedPointSet, p: SymbolicSpherePoint, q: SymbolicSpherePoint) -> Fraction:
    """Exact inner product of two symbolic sphere points (always rational)."""
    aa, bb = _AB_PRODUCTS[(p.layer, q.layer)]
    u = design.layers[p.layer - 1].points[p.index]
    v = design.layers[q.layer - 1].points[q.index]
    d = int(u @ v)
    scale = design.dot_scale(p.layer - 1, q.layer - 1)
    x_dot = Fraction(d, scale) / R1_SQ  # (x . y) / r_1^2
    return p.sign * q.sign * (aa * x_dot + bb)


def z_value_histogram(design: WeightedPointSet) -> dict[Fraction, int]:
    """Multiset of inner products over all ordered pairs of the 4600 points,
    computed from the design's integer Gram blocks."""
    hist: dict[Fraction, int] = {}
    for i in (0, 1):
        for j in (0, 1):
            aa, bb = _AB_PRODUCTS[(i + 1, j + 1)]
            block = design.gram_block(i, j)
            scale = design.dot_scale(i, j)
            vals, counts = np.unique(block, return_counts=True)
            for d, c in zip(vals, counts):
                base = aa * Fraction(int(d), scale) / R1_SQ + bb
                # sign product +1 occurs twice (+/+, -/-), -1 twice (+/-, -/+)
                for v, mult in ((base, 2), (-base, 2)):
                    hist[v] = hist.get(v, 0) + mult * int(c)
    total = sum(hist.values())
    if total != 4600 * 4600:
        raise DesignConstructionError(f"Z pair count {total} != 4600^2")
    return hist
