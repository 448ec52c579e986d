"""Exact sphere / coset enumeration for positive-definite rational forms.

Depth-first search over integer coordinate vectors w such that

    (w + shift)^T  G  (w + shift)  ==  target        (exactly)

using the rational Cholesky decomposition
Q(y) = sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2.  All pruning bounds are
computed with integer arithmetic (isqrt on scaled numerators); no floating
point is involved anywhere, so completeness of the search is unconditional.

The search optionally restricts each coordinate to a finite allowed set and
can carry integer linear side constraints lo_r <= M w <= hi_r, either
enforced during the descent (sound interval propagation via per-level
reachability bounds) or only at the leaves (so that the caller can count
norm-passing leaves that fail the side constraints).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

import numpy as np


@dataclass
class EnumerationStats:
    nodes: int = 0
    leaves: int = 0
    solutions: int = 0
    constraint_rejected_leaves: int = 0


class NotPositiveDefiniteError(ValueError):
    pass


def rational_cholesky(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Decompose Q(y) = y^T gram y as sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2."""
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d: list[Fraction] = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise NotPositiveDefiniteError(f"pivot {i} is {d[i]}")
        for j in range(i + 1, n):
            mu[i][j] = q[i][j] / d[i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[i][k] * q[i][m] / d[i]
                q[m][k] = q[k][m]
    return d, mu


def _floor_plus_sqrt(a: int, b: int, p: int, q: int) -> int:
    """floor(a/b + sqrt(p/q)) for integers with b, q > 0, p >= 0."""
    t = p * q
    r = isqrt(t)
    f = (a * q + b * r) // (b * q)
    bb_t = b * b * t

    def le(k: int) -> bool:
        left = (k * b - a) * q
        if left <= 0:
            return True
        return left * left <= bb_t

    while le(f + 1):
        f += 1
    while not le(f):
        f -= 1
    return f


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def enumerate_sphere(
    gram,
    shift,
    target,
    allowed: Optional[Sequence[Sequence[int]]] = None,
    int_constraints: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None,
    prune_constraints: bool = True,
    top_values: Optional[Sequence[int]] = None,
    stats: Optional[EnumerationStats] = None,
) -> list[tuple[int, ...]]:
    """All integer w with (w + shift)^T gram (w + shift) == target.

    allowed:         per-coordinate finite candidate sets (sorted ints).
    int_constraints: (M, lo, hi) integer rows, lo <= M @ w <= hi; requires
                     `allowed` when pruning during the descent.
    top_values:      restrict the outermost coordinate (used to split the
                     search across workers; the union over a partition of
                     the outermost interval is the full solution set).
    """
    n = len(gram)
    if stats is None:
        stats = EnumerationStats()
    d, mu = rational_cholesky(gram)
    tau = [Fraction(x) for x in shift]
    target = Fraction(target)

    tden = _lcm([t.denominator for t in tau]) if n else 1
    tau_num = [int(t * tden) for t in tau]
    mden = [
        _lcm([mu[i][j].denominator for j in range(i + 1, n)] or [1]) for i in range(n)
    ]
    munum = [
        [int(mu[i][j] * mden[i]) for j in range(n)] for i in range(n)
    ]
    sden = [mden[i] * tden for i in range(n)]
    d_num = [x.numerator for x in d]
    d_den = [x.denominator for x in d]

    use_constraints = int_constraints is not None
    if use_constraints:
        cmat, clo, chi = int_constraints
        cmat = np.asarray(cmat, dtype=np.int64)
        clo = np.asarray(clo, dtype=np.int64)
        chi = np.asarray(chi, dtype=np.int64)
        mrows = cmat.shape[0]
        if prune_constraints and allowed is None:
            raise ValueError("constraint pruning needs finite allowed sets")
        if allowed is not None:
            smin = np.zeros((n + 1, mrows), dtype=np.int64)
            smax = np.zeros((n + 1, mrows), dtype=np.int64)
            for lvl in range(1, n + 1):
                i = lvl - 1
                vals = np.array(sorted(allowed[i]), dtype=np.int64)
                contrib = cmat[:, i : i + 1] * vals[None, :]
                smin[lvl] = smin[lvl - 1] + contrib.min(axis=1)
                smax[lvl] = smax[lvl - 1] + contrib.max(axis=1)
        else:
            smin = smax = None
        pstack = [np.zeros(mrows, dtype=np.int64) for _ in range(n + 1)]
        ccols = [np.ascontiguousarray(cmat[:, i]) for i in range(n)]

    # Preallocated per-level state (valid along the current DFS path only).
    ctr = [[0] * n for _ in range(n)]
    rstack: list[Fraction] = [Fraction(0)] * n
    wlists: list[list[int]] = [[] for _ in range(n)]
    widx = [0] * n
    wcur = [0] * n

    solutions: list[tuple[int, ...]] = []

    def candidate_values(level: int) -> list[int]:
        r = rstack[level]
        if r < 0:
            return []
        rho = r / d[level]
        p, q = rho.numerator, rho.denominator
        a, b = ctr[level][level], sden[level]
        hi = _floor_plus_sqrt(-a, b, p, q)
        lo = -_floor_plus_sqrt(a, b, p, q)
        if lo > hi:
            return []
        if allowed is not None:
            vals = [v for v in allowed[level] if lo <= v <= hi]
        else:
            vals = list(range(lo, hi + 1))
        if level == n - 1 and top_values is not None:
            keep = set(top_values)
            vals = [v for v in vals if v in keep]
        return vals

    top = n - 1
    for i in range(n):
        ctr[top][i] = tau_num[i] * mden[i]
    rstack[top] = target
    if use_constraints:
        pstack[top + 1][:] = 0
    wlists[top] = candidate_values(top)
    widx[top] = 0

    level = top
    while level <= top:
        if widx[level] >= len(wlists[level]):
            level += 1
            continue
        w = wlists[level][widx[level]]
        widx[level] += 1
        stats.nodes += 1

        num = w * sden[level] + ctr[level][level]
        val = Fraction(d_num[level] * num * num, d_den[level] * sden[level] * sden[level])
        rem = rstack[level] - val

        if use_constraints:
            pnew = pstack[level + 1] + ccols[level] * w

        if level == 0:
            if rem == 0:
                stats.leaves += 1
                if use_constraints:
                    if bool(np.all(pnew >= clo) and np.all(pnew <= chi)):
                        wcur[0] = w
                        solutions.append(tuple(wcur))
                        stats.solutions += 1
                    else:
                        stats.constraint_rejected_leaves += 1
                else:
                    wcur[0] = w
                    solutions.append(tuple(wcur))
                    stats.solutions += 1
            continue

        if use_constraints and prune_constraints:
            if not bool(
                np.all(pnew + smin[level] <= chi) and np.all(pnew + smax[level] >= clo)
            ):
                continue

        wcur[level] = w
        y_num = w * tden + tau_num[level]
        child = level - 1
        row_src = ctr[level]
        row_dst = ctr[child]
        for i in range(level):
            row_dst[i] = row_src[i] + munum[i][level] * y_num
        rstack[child] = rem
        if use_constraints:
            pstack[level][:] = pnew
        wlists[child] = candidate_values(child)
        widx[child] = 0
        level = child

    solutions.sort()
    return solutions


def outer_interval(gram, shift, target) -> list[int]:
    """Candidate values of the outermost coordinate (for work splitting)."""
    n = len(gram)
    d, mu = rational_cholesky(gram)
    tau = [Fraction(x) for x in shift]
    t = Fraction(target)
    if t < 0:
        return []
    rho = t / d[n - 1]
    s = tau[n - 1]
    hi = _floor_plus_sqrt(-s.numerator, s.denominator, rho.numerator, rho.denominator)
    lo = -_floor_plus_sqrt(s.numerator, s.denominator, rho.numerator, rho.denominator)
    return list(range(lo, hi + 1))
