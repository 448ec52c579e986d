from fractions import Fraction

import numpy as np
import pytest

from leechdesign.construct import (
    DesignConstructionError,
    SymbolicSpherePoint,
    build_Y,
    build_Z,
    build_design,
    check_X1_equals_PY,
    gram_solve_2x2,
    project_AB,
    project_rows_scaled,
    y_antipodal_pair_count,
    z_inner,
    z_value_histogram,
)
from leechdesign.lattice import (
    A_CANONICAL,
    B_CANONICAL,
    CosetConstraint,
    enumerate_coset_shell,
    rows_as_set,
)


def test_projection_annihilates_anchors():
    assert all(v == 0 for v in project_AB(A_CANONICAL, A_CANONICAL, B_CANONICAL))
    assert all(v == 0 for v in project_AB(B_CANONICAL, A_CANONICAL, B_CANONICAL))


def test_gram_solve_values():
    assert gram_solve_2x2(Fraction(3), Fraction(-3)) == (Fraction(3, 5), Fraction(-3, 5))
    assert gram_solve_2x2(Fraction(2), Fraction(0)) == (Fraction(8, 15), Fraction(2, 15))
    assert gram_solve_2x2(Fraction(2), Fraction(1)) == (Fraction(3, 5), Fraction(2, 5))


def test_projected_norms(ctx):
    x1_shell = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 3), CosetConstraint(B_CANONICAL, -3)], 6, ctx
    )
    p = project_AB(x1_shell[0], A_CANONICAL, B_CANONICAL)
    norm = sum(v * v for v in p) / 8
    assert norm == Fraction(12, 5)

    x2_shell = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 2), CosetConstraint(B_CANONICAL, 0)], 4, ctx
    )
    p = project_AB(x2_shell[0], A_CANONICAL, B_CANONICAL)
    assert sum(v * v for v in p) / 8 == Fraction(44, 15)

    # orthogonality is exact
    for vec in (A_CANONICAL, B_CANONICAL):
        assert sum(pi * int(ai) for pi, ai in zip(p, vec)) == 0


def test_design_shape(design):
    assert [layer.size for layer in design.layers] == [275, 2025]
    assert design.size == 2300
    assert design.layers[0].r2 == Fraction(12, 5)
    assert design.layers[1].r2 == Fraction(132, 5)
    assert design.layers[1].r2 / design.layers[0].r2 == 11
    assert design.layers[1].weight / design.layers[0].weight == Fraction(1, 729)


def test_normalized_product_sets(design):
    g11 = design.gram_block(0, 0)
    off = g11[~np.eye(275, dtype=bool)]
    s11 = {Fraction(int(v), 8 * 25) / design.layers[0].r2 for v in np.unique(off)}
    assert s11 == {Fraction(1, 6), Fraction(-1, 4)}

    g22 = design.gram_block(1, 1)
    off = g22[~np.eye(2025, dtype=bool)]
    s22 = {Fraction(int(v), 8 * 25) / design.layers[1].r2 for v in np.unique(off)}
    assert s22 == {Fraction(7, 22), Fraction(-1, 44), Fraction(-4, 11)}

    g12 = design.gram_block(0, 1)
    # normalized product * sqrt(11) = D / (scale * r1^2)
    s12 = {Fraction(int(v), 8 * 25) / design.layers[0].r2 for v in np.unique(g12)}
    assert s12 == {Fraction(1), Fraction(-1, 4), Fraction(-3, 2)}


def test_outer_shell_is_three_times_projection(ctx, design):
    x2_shell = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 2), CosetConstraint(B_CANONICAL, 0)], 4, ctx
    )
    scaled = project_rows_scaled(x2_shell, A_CANONICAL, B_CANONICAL, mult=15)
    assert rows_as_set(scaled) == rows_as_set(design.layers[1].points)


def test_rebuild_with_other_anchor_pair_same_gram_multiset(design, alt_design):
    for i in range(2):
        for j in range(2):
            a = design.gram_block(i, j)
            b = alt_design.gram_block(i, j)
            va, ca = np.unique(a, return_counts=True)
            vb, cb = np.unique(b, return_counts=True)
            assert bool((va == vb).all()) and bool((ca == cb).all())


def test_anchor_preconditions_enforced(ctx):
    with pytest.raises(DesignConstructionError):
        build_design(A_CANONICAL, A_CANONICAL, ctx)


def test_Y_family(ctx):
    ys = build_Y(A_CANONICAL, B_CANONICAL, ctx)
    assert {k: v.shape[0] for k, v in ys.items()} == {1: 275, 2: 2025, -2: 2025, -1: 275}
    union = rows_as_set(ys[1]) | rows_as_set(ys[2]) | rows_as_set(ys[-1]) | rows_as_set(ys[-2])
    assert len(union) == 4600
    for i in (1, 2):
        assert rows_as_set(ys[i]) == {tuple(-c for c in row) for row in ys[-i]}
    assert y_antipodal_pair_count(ys) == 2300


def test_X1_equals_projected_Y_plus_one(ctx):
    assert check_X1_equals_PY(A_CANONICAL, B_CANONICAL, ctx)


def test_Z_symbolic_points(design):
    z = build_Z(design)
    assert len(z) == 4600
    p = SymbolicSpherePoint(layer=1, index=0, sign=1)
    assert z_inner(design, p, p) == 1
    antipode = SymbolicSpherePoint(layer=1, index=0, sign=-1)
    assert z_inner(design, p, antipode) == -1
    # antipodal pairing: sign flip is a fixed-point-free involution
    assert sum(1 for q in z if q.sign == 1) == 2300


def test_Z_value_histogram(design):
    hist = z_value_histogram(design)
    assert set(hist) == {
        Fraction(1),
        Fraction(-1),
        Fraction(1, 3),
        Fraction(-1, 3),
        Fraction(0),
    }
    assert sum(hist.values()) == 4600 * 4600
    assert hist[Fraction(1)] == 4600  # exactly the diagonal
    assert hist[Fraction(-1)] == 4600  # exactly the antipodal pairs


def test_Z_matches_projected_model(ctx, design):
    ys = build_Y(A_CANONICAL, B_CANONICAL, ctx)
    stacked = np.concatenate([ys[1], ys[2], ys[-1], ys[-2]])
    gram = stacked @ stacked.T
    vals, counts = np.unique(gram, return_counts=True)
    y_hist = {Fraction(int(v), 96): int(c) for v, c in zip(vals, counts)}
    assert y_hist == z_value_histogram(design)
