from fractions import Fraction

import numpy as np

from leechdesign.coherent import classify_pairs, compare_with_reference, intersection_numbers
from leechdesign.construct import project_rows_scaled
from leechdesign.design import euclidean_strength
from leechdesign.lattice import (
    A_CANONICAL,
    B_CANONICAL,
    CosetConstraint,
    enumerate_coset_shell,
    rows_as_set,
)
from leechdesign.lattice.intlinalg import det_int
from leechdesign.unique import (
    CANDIDATE_NORM,
    build_dual_frame,
    enumerate_candidates,
    generated_lattice_membership,
)


def test_integralized_layer(x1_integral):
    inner = x1_integral.inner_matrix()
    assert bool((np.diag(inner) == 12).all())
    off = inner[~np.eye(275, dtype=bool)]
    assert set(np.unique(off).tolist()) == {2, -3}


def test_dual_frame_biorthogonality(dual_frame):
    for i in range(22):
        for j in range(22):
            v = sum(
                dual_frame.gram_inv[i][k] * int(dual_frame.gram[k, j])
                for k in range(22)
            )
            assert v == (1 if i == j else 0)


def test_dual_frame_gram_positive_definite(dual_frame):
    d = det_int([list(map(int, r)) for r in dual_frame.gram])
    assert d > 0


def test_dual_frame_coefficients_reconstruct_points(x1_integral, dual_frame):
    assert bool(
        (dual_frame.coeffs @ dual_frame.basis_points == x1_integral.points).all()
    )


def test_candidate_count_and_norms(candidates):
    assert candidates.vectors3.shape == (4050, 24)
    norms = (candidates.vectors3**2).sum(axis=1)
    assert bool((norms == int(CANDIDATE_NORM * 9 * 40)).all())


def test_candidate_coefficient_form(candidates):
    assert set(np.unique(candidates.dual_coeffs).tolist()) <= {-6, -1, 4}


def test_candidate_admissibility_full_shell(candidates, x1_integral):
    prods = candidates.vectors3 @ x1_integral.points.T
    vals = prods // 120
    assert bool((prods % 120 == 0).all())
    assert set(np.unique(vals).tolist()) <= {4, -1, -6}


def test_no_norm_leaf_fails_the_filter(candidates):
    # every vector of the right norm in the coefficient cube already
    # satisfies all 275 admissibility constraints
    assert candidates.norm_only_leaves == 4050
    assert candidates.stats.constraint_rejected_leaves == 0


def test_pruned_and_unpruned_searches_agree(dual_frame, x1_integral, candidates):
    pruned = enumerate_candidates(dual_frame, x1_integral, prune_with_constraints=True)
    assert bool((pruned.vectors3 == candidates.vectors3).all())


def test_split_sizes_and_equivalence(split):
    assert split.part_a.shape == (2025, 24)
    assert split.part_b.shape == (2025, 24)
    assert not (rows_as_set(split.part_a) & rows_as_set(split.part_b))


def test_part_a_is_the_constructed_second_shell(split, design):
    assert rows_as_set(split.part_a) == rows_as_set(design.layers[1].points)


def test_part_b_is_the_other_projected_coset(ctx, split):
    shell = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 0), CosetConstraint(B_CANONICAL, -2)], 4, ctx
    )
    twin_pts = project_rows_scaled(shell, A_CANONICAL, B_CANONICAL, mult=15)
    assert rows_as_set(split.part_b) == rows_as_set(twin_pts)


def test_candidates_are_union_of_both_shells(candidates, split):
    both = rows_as_set(split.part_a) | rows_as_set(split.part_b)
    assert rows_as_set(candidates.vectors3) == both


def test_cross_part_products_disjoint_from_shell_set(split):
    shell_values = {Fraction(7, 22), Fraction(-1, 44), Fraction(-4, 11)}
    normalized = {v / CANDIDATE_NORM for v in split.cross_products}
    assert not (normalized & shell_values)


def test_twin_is_a_tight_6_design(twin):
    assert [layer.size for layer in twin.layers] == [275, 2025]
    conds = euclidean_strength(twin, 6)
    assert all(c.passed for c in conds)


def test_twin_tensor_matches_reference(twin):
    tensor = intersection_numbers(classify_pairs(twin))
    assert compare_with_reference(tensor) == []


def test_basis_choice_does_not_change_candidates(x1_integral, candidates):
    frame2 = build_dual_frame(x1_integral, order=list(reversed(range(275))))
    cands2 = enumerate_candidates(frame2, x1_integral)
    assert bool((cands2.vectors3 == candidates.vectors3).all())


def test_two_bases_have_equal_gram_determinant(x1_integral, dual_frame):
    frame2 = build_dual_frame(x1_integral, order=list(reversed(range(275))))
    d1 = det_int([list(map(int, r)) for r in dual_frame.gram])
    d2 = det_int([list(map(int, r)) for r in frame2.gram])
    assert d1 == d2  # both are bases of the same lattice


def test_literal_generated_lattice_membership_is_rare(dual_frame, candidates):
    # Read literally (5 e_i primal), the generated lattice contains almost
    # none of the candidates; the dual-basis reading contains all of them
    # by construction.  Recorded as data, not a claim.
    n = generated_lattice_membership(dual_frame, candidates.dual_coeffs)
    assert n == 1


def test_coefficient_sums_are_one_mod_five(dual_frame):
    sums = dual_frame.coeffs.sum(axis=1)
    assert bool(((sums - 1) % 5 == 0).all())


def test_candidate_search_thread_independent(dual_frame, x1_integral, candidates):
    threaded = enumerate_candidates(dual_frame, x1_integral, workers=2)
    assert bool((threaded.vectors3 == candidates.vectors3).all())


def test_swapped_negated_anchors_build_the_twin(ctx, design, twin):
    # the defining inner products of the two shells are symmetric under
    # (a, b) -> (-b, -a) with the second shell replaced by the companion
    # class, and the projection is unchanged; so rebuilding with the
    # swapped negated anchors must reproduce the twin configuration
    from leechdesign.construct import build_design

    rebuilt = build_design(-B_CANONICAL, -A_CANONICAL, ctx)
    assert rows_as_set(rebuilt.layers[0].points) == rows_as_set(design.layers[0].points)
    assert rows_as_set(rebuilt.layers[1].points) == rows_as_set(twin.layers[1].points)
