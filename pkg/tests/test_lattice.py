import numpy as np
import pytest

from leechdesign.lattice import (
    A_CANONICAL,
    B_CANONICAL,
    CosetConstraint,
    InfeasibleCosetError,
    canonical_sort,
    enumerate_coset_shell,
    is_leech_member,
    membership_mask,
    norm4_shell,
    conventional_inner,
    rows_as_set,
    shell_size,
)
from leechdesign.lattice.intlinalg import det_int


def test_golay_weight_distribution(ctx):
    assert ctx.code.weight_counts == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_golay_contains_zero_and_all_ones(ctx):
    assert ctx.code.contains_mask(0)
    assert ctx.code.contains_mask((1 << 24) - 1)


def test_golay_octad_count(ctx):
    assert len(ctx.code.masks_of_weight(8)) == 759


def test_membership_examples(ctx):
    assert is_leech_member([4, 4] + [0] * 22, ctx.code)
    assert is_leech_member([-3] + [1] * 23, ctx.code)
    assert not is_leech_member([1] + [0] * 23, ctx.code)
    # sum condition: all-even, codeword zero, but sum = 4 != 0 mod 8
    assert not is_leech_member([4] + [0] * 23, ctx.code)


def test_conventional_inner_examples(ctx):
    assert conventional_inner(A_CANONICAL, A_CANONICAL) == 4
    assert conventional_inner(A_CANONICAL, B_CANONICAL) == -1
    zero = np.zeros(24, dtype=np.int64)
    assert conventional_inner(zero, zero) == 0


def test_basis_determinant(ctx):
    assert abs(det_int([list(map(int, r)) for r in ctx.basis])) == 8**12


def test_shell_sizes(ctx):
    assert shell_size(4, ctx.code) == 196560
    assert shell_size(6, ctx.code) == 16773120
    assert shell_size(2, ctx.code) == 0


def test_norm4_shell_matches_count_and_membership(ctx):
    shell = norm4_shell(ctx.code)
    assert shell.shape == (196560, 24)
    assert bool(((shell**2).sum(axis=1) == 32).all())
    rng = np.random.default_rng(0)
    idx = rng.integers(0, len(shell), 2000)
    assert bool(membership_mask(shell[idx], ctx.code).all())


def test_closure_on_random_pairs(ctx):
    shell = norm4_shell(ctx.code)
    rng = np.random.default_rng(42)
    i = rng.integers(0, len(shell), 1000)
    j = rng.integers(0, len(shell), 1000)
    sums = shell[i] + shell[j]
    assert bool(membership_mask(sums, ctx.code).all())


@pytest.fixture(scope="module")
def x2_shell(ctx):
    return enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 2), CosetConstraint(B_CANONICAL, 0)], 4, ctx
    )


def test_coset_enumeration_size_and_contracts(ctx, x2_shell):
    assert x2_shell.shape[0] == 2025
    assert bool(membership_mask(x2_shell, ctx.code).all())
    assert bool(((x2_shell**2).sum(axis=1) == 32).all())
    assert bool((x2_shell @ A_CANONICAL == 16).all())
    assert bool((x2_shell @ B_CANONICAL == 0).all())


def test_coset_enumeration_matches_shape_filter_oracle(ctx, x2_shell):
    shell = norm4_shell(ctx.code)
    keep = (shell @ A_CANONICAL == 16) & (shell @ B_CANONICAL == 0)
    oracle = canonical_sort(shell[keep])
    assert oracle.shape == x2_shell.shape
    assert bool((oracle == x2_shell).all())


def test_coset_enumeration_deterministic_and_thread_independent(ctx, x2_shell):
    again = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 2), CosetConstraint(B_CANONICAL, 0)], 4, ctx
    )
    threaded = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 2), CosetConstraint(B_CANONICAL, 0)],
        4,
        ctx,
        workers=2,
    )
    assert bool((again == x2_shell).all())
    assert bool((threaded == x2_shell).all())


def test_infeasible_constraints_reported_distinctly(ctx):
    double_a = 2 * A_CANONICAL
    assert bool(membership_mask(double_a.reshape(1, -1), ctx.code).all())
    with pytest.raises(InfeasibleCosetError):
        enumerate_coset_shell([CosetConstraint(double_a, 1)], 4, ctx)


def test_feasible_but_empty_shell_returns_empty(ctx):
    # (x, A) = 4 with norm 4 forces x = A by Cauchy-Schwarz (equality);
    # adding (x, B) = 0 contradicts (A, B) = -1, so the coset has no
    # norm-4 vector, while the constraint system itself is feasible.
    out = enumerate_coset_shell(
        [CosetConstraint(A_CANONICAL, 4), CosetConstraint(B_CANONICAL, 0)], 4, ctx
    )
    assert out.shape[0] == 0


def test_anchor_dependence_guard(ctx):
    with pytest.raises(ValueError):
        enumerate_coset_shell(
            [CosetConstraint(A_CANONICAL, 2), CosetConstraint(2 * A_CANONICAL, 4)],
            4,
            ctx,
        )


@pytest.mark.slow
def test_unconstrained_enumeration_matches_shell_size(ctx):
    shell = enumerate_coset_shell([], 4, ctx)
    assert shell.shape[0] == shell_size(4, ctx.code)
    assert rows_as_set(shell) == rows_as_set(norm4_shell(ctx.code))


def _random_spd_form(rng, n):
    a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    # A^T A + I: positive definite with min eigenvalue >= 1, so any
    # solution satisfies |w_i| <= sqrt(target) + |shift_i|
    return [
        [sum(a[k][i] * a[k][j] for k in range(n)) + (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]


def test_sphere_search_agrees_with_brute_force():
    import itertools
    import math
    import random
    from fractions import Fraction

    from leechdesign.lattice.fincke_pohst import enumerate_sphere

    rng = random.Random(2024)
    for _ in range(15):
        n = rng.randint(1, 3)
        gram = _random_spd_form(rng, n)
        shift = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n)]
        w0 = [rng.randint(-2, 2) for _ in range(n)]
        y = [Fraction(w0[i]) + shift[i] for i in range(n)]
        target = sum(y[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))
        sols = set(enumerate_sphere(gram, shift, target))
        bound = math.isqrt(int(target)) + 5
        brute = set()
        for w in itertools.product(range(-bound, bound + 1), repeat=n):
            y = [Fraction(w[i]) + shift[i] for i in range(n)]
            q = sum(y[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))
            if q == target:
                brute.add(w)
        assert tuple(w0) in brute
        assert sols == brute


def test_sphere_search_constraint_modes_agree_with_brute_force():
    import itertools
    import random
    from fractions import Fraction

    from leechdesign.lattice.fincke_pohst import enumerate_sphere

    rng = random.Random(77)
    for _ in range(10):
        n = rng.randint(2, 4)
        gram = _random_spd_form(rng, n)
        shift = [Fraction(-1, 5)] * n
        allowed = [(-1, 0, 1)] * n
        w0 = [rng.choice([-1, 0, 1]) for _ in range(n)]
        y = [Fraction(w0[i]) + shift[i] for i in range(n)]
        target = sum(y[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))
        m = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(2)])
        lo = np.array([-2, -3])
        hi = np.array([2, 1])
        brute = set()
        for w in itertools.product((-1, 0, 1), repeat=n):
            y = [Fraction(w[i]) + shift[i] for i in range(n)]
            q = sum(y[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))
            d = m @ np.array(w)
            if q == target and bool(np.all(d >= lo) and np.all(d <= hi)):
                brute.add(w)
        for prune in (True, False):
            sols = set(
                enumerate_sphere(
                    gram,
                    shift,
                    target,
                    allowed=allowed,
                    int_constraints=(m, lo, hi),
                    prune_constraints=prune,
                )
            )
            assert sols == brute
