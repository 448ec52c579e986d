"""Design-strength verification by exact kernel sums and moment oracles.

The working criterion: a weighted set on p concentric spheres is a
t-design iff for every degree l in 1..t and every radial exponent
j in 0..min((t-l)//2, p-1) the pairwise sum

    T(l,j) = sum_{x,y} w(x) w(y) (|x||y|)^(l+2j) Q_l(cos(x,y))

vanishes, where Q_l is the degree-l positive-definite zonal kernel with
Q_l(1) = 1.  (Conditions with l = 0 hold identically for unions of
concentric layers; radial exponents beyond p-1 follow from the lower ones
because the radial Vandermonde system of p distinct radii is regular.)
Because Q_l has the parity of l, each term is a polynomial in the exact
rationals (x.y) and |x|^2 |y|^2, so every T(l,j) is computed in Q without
any radicals, for arbitrary rational input layers.

Two independent oracles accompany the kernel route: an exact probe-moment
check (necessary conditions from powers of linear forms) and a seeded
floating-point random-polynomial comparison in an orthonormalized frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .arith import ExactScalar
from .construct import PointLayer, WeightedPointSet

MAX_STRENGTH = 8


@dataclass(frozen=True)
class StrengthCondition:
    label: str
    value: ExactScalar
    passed: bool  # value exactly zero


class GegenbauerEvaluator:
    """Normalized degree-k zonal kernels on S^(n-1): Q_0 = 1, Q_1 = u,
    Q_k = ((2k+n-4) u Q_{k-1} - (k-1) Q_{k-2}) / (k+n-3); Q_k(1) = 1."""

    def __init__(self, dimension: int, max_degree: int = MAX_STRENGTH):
        if dimension < 2:
            raise ValueError("dimension must be at least 2")
        if max_degree > MAX_STRENGTH:
            raise ValueError(f"degree capped at {MAX_STRENGTH}")
        self.dimension = dimension
        self.max_degree = max_degree
        self._coeffs: list[list[Fraction]] = []  # poly coeffs, low power first
        self._build()

    def _build(self) -> None:
        n = self.dimension
        polys = [[Fraction(1)], [Fraction(0), Fraction(1)]]
        for k in range(2, self.max_degree + 1):
            prev = polys[k - 1]
            prev2 = polys[k - 2]
            shifted = [Fraction(0)] + list(prev)  # u * Q_{k-1}
            coeffs = []
            for i in range(k + 1):
                c = Fraction(2 * k + n - 4) * shifted[i] if i < len(shifted) else Fraction(0)
                if i < len(prev2):
                    c -= (k - 1) * prev2[i]
                coeffs.append(c / (k + n - 3))
            polys.append(coeffs)
        self._coeffs = polys

    def coefficients(self, k: int) -> list[Fraction]:
        if not 0 <= k <= self.max_degree:
            raise ValueError(f"degree {k} out of range")
        return self._coeffs[k]

    def eval(self, k: int, u):
        """Q_k(u) for a Fraction or ExactScalar argument, exact."""
        coeffs = self.coefficients(k)
        if isinstance(u, ExactScalar):
            acc = ExactScalar(0)
            power = ExactScalar(1)
            for c in coeffs:
                acc = acc + power * c
                power = power * u
            return acc
        u = Fraction(u)
        acc = Fraction(0)
        power = Fraction(1)
        for c in coeffs:
            acc += c * power
            power *= u
        return acc

    def homogeneous_pair_value(self, k: int, dot: Fraction, nx2ny2: Fraction) -> Fraction:
        """(|x||y|)^k Q_k(x.y / |x||y|) as a polynomial in dot = x.y and
        nx2ny2 = |x|^2 |y|^2 (exact; uses that Q_k has the parity of k)."""
        coeffs = self.coefficients(k)
        acc = Fraction(0)
        for power, c in enumerate(coeffs):
            if c == 0:
                continue
            rem = k - power
            if rem % 2:
                raise ArithmeticError("kernel parity violated")
            acc += c * dot**power * nx2ny2 ** (rem // 2)
        return acc


def gegenbauer_eval(n: int, k: int, u):
    return GegenbauerEvaluator(n, max(k, 1)).eval(k, u)


def _layer_pair_histogram(ws: WeightedPointSet, i: int, j: int):
    """Distinct stored dot values and counts for the (i, j) layer block."""
    block = ws.gram_block(i, j)
    vals, counts = np.unique(block, return_counts=True)
    return [(int(v), int(c)) for v, c in zip(vals, counts)]


def euclidean_strength(
    ws: WeightedPointSet, t: int, dimension: int = 22
) -> list[StrengthCondition]:
    """One condition per (l, j); the set is a t-design iff all pass.

    The l = 0 conditions are omitted: they hold identically for any union
    of concentric layers (see module docstring).
    """
    if t > MAX_STRENGTH:
        raise ValueError(f"strength capped at {MAX_STRENGTH}")
    p = len(ws.layers)
    radii = [layer.r2 for layer in ws.layers]
    if len(set(radii)) != p or any(r <= 0 for r in radii):
        raise ValueError("layers must have distinct positive radii")
    ev = GegenbauerEvaluator(dimension, t)

    hists = {}
    for i in range(p):
        for j in range(i, p):
            hists[(i, j)] = _layer_pair_histogram(ws, i, j)

    out: list[StrengthCondition] = []
    for l in range(1, t + 1):
        for j in range(0, min((t - l) // 2, p - 1) + 1):
            total = Fraction(0)
            for bi in range(p):
                for bj in range(bi, p):
                    w2 = ws.layers[bi].weight * ws.layers[bj].weight
                    scale = ws.dot_scale(bi, bj)
                    nx2ny2 = ws.layers[bi].r2 * ws.layers[bj].r2
                    radial = nx2ny2**j
                    sym = 1 if bi == bj else 2
                    for d, c in hists[(bi, bj)]:
                        dot = Fraction(d, scale)
                        term = ev.homogeneous_pair_value(l, dot, nx2ny2)
                        total += sym * c * w2 * radial * term
            out.append(
                StrengthCondition(
                    label=f"l={l},j={j}",
                    value=ExactScalar(total),
                    passed=total == 0,
                )
            )
    return out


def spherical_strength_from_values(
    values: Iterable[tuple[Fraction, int]], t: int, dimension: int
) -> list[StrengthCondition]:
    """Kernel sums sum Q_k(u) over a histogram of unit-sphere cosines."""
    ev = GegenbauerEvaluator(dimension, t)
    vals = list(values)
    out = []
    for k in range(1, t + 1):
        total = Fraction(0)
        for u, c in vals:
            total += c * ev.eval(k, Fraction(u))
        out.append(
            StrengthCondition(label=f"k={k}", value=ExactScalar(total), passed=total == 0)
        )
    return out


def spherical_strength(
    layer: PointLayer, t: int, dimension: int = 22
) -> list[StrengthCondition]:
    """Spherical design strength of one equal-norm layer (unweighted)."""
    if t > MAX_STRENGTH:
        raise ValueError(f"strength capped at {MAX_STRENGTH}")
    gram = layer.points @ layer.points.T
    norms = (layer.points**2).sum(axis=1)
    if len(np.unique(norms)) != 1:
        raise ValueError("mixed radii: spherical strength needs one sphere")
    scale = 8 * layer.denom * layer.denom
    vals, counts = np.unique(gram, return_counts=True)
    hist = [
        (Fraction(int(v), scale) / layer.r2, int(c)) for v, c in zip(vals, counts)
    ]
    return spherical_strength_from_values(hist, t, dimension)


def sphere_monomial_average(alpha: Sequence[int], n: int) -> Fraction:
    """Average of prod x_i^alpha_i over the unit sphere S^(n-1), exact:
    zero when any exponent is odd, else
    prod (alpha_i - 1)!! / prod_{j=0}^{k-1} (n + 2j) with k = |alpha| / 2."""
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be nonnegative")
    if any(a % 2 for a in alpha):
        return Fraction(0)
    k = sum(alpha) // 2
    num = 1
    for a in alpha:
        for odd in range(1, a, 2):
            num *= odd
    den = 1
    for j in range(k):
        den *= n + 2 * j
    return Fraction(num, den)


@dataclass(frozen=True)
class ProbeMomentResult:
    probe_index: int
    k: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def moment_spot_check(
    ws: WeightedPointSet,
    t: int,
    probes: Sequence[tuple[np.ndarray, int]],
    dimension: int = 22,
) -> list[ProbeMomentResult]:
    """Necessary-condition oracle, independent of the kernel route.

    For each probe y and each k <= t the design property forces

        sum_x w(x) (x.y)^k  ==  [k even] (k-1)!! / prod_{j<k/2}(n+2j)
                                * |y|^k * sum_i w_i |X_i| r_i^k.

    Probes are (stored integer vector, denominator) pairs.
    """
    results: list[ProbeMomentResult] = []
    layer_weight_counts = [
        (layer.weight, layer.size, layer.r2) for layer in ws.layers
    ]
    for idx, (vec, dy) in enumerate(probes):
        vec = np.asarray(vec, dtype=np.int64)
        if not vec.any():
            raise ValueError("probes must be nonzero")
        y_norm2 = Fraction(int(vec @ vec), 8 * dy * dy)
        per_layer = []
        for layer in ws.layers:
            dots = layer.points @ vec
            vals, counts = np.unique(dots, return_counts=True)
            scale = 8 * layer.denom * dy
            per_layer.append(
                (layer.weight, [(Fraction(int(v), scale), int(c)) for v, c in zip(vals, counts)])
            )
        for k in range(0, t + 1):
            lhs = Fraction(0)
            for w, hist in per_layer:
                for u, c in hist:
                    lhs += w * c * u**k
            if k % 2:
                rhs = Fraction(0)
            else:
                num = 1
                for odd in range(1, k, 2):
                    num *= odd
                den = 1
                for j in range(k // 2):
                    den *= dimension + 2 * j
                radial = sum(
                    w * cnt * r2 ** (k // 2) for w, cnt, r2 in layer_weight_counts
                )
                rhs = Fraction(num, den) * y_norm2 ** (k // 2) * radial
            results.append(ProbeMomentResult(idx, k, lhs, rhs))
    return results


def tightness_check(ws: WeightedPointSet, e: int, dimension: int = 22) -> bool:
    """Cardinality meets the dim P_e(R^n) bound: |X| = C(n+e, e)."""
    return ws.size == comb(dimension + e, e)


def float_polynomial_check(
    ws: WeightedPointSet,
    t: int,
    seed: int = 20240601,
    trials: int = 40,
    tol: float = 1e-9,
    dimension: int = 22,
) -> list[tuple[float, float]]:
    """Seeded random-polynomial oracle in an orthonormalized frame.

    Draws sparse polynomials of degree <= t, compares the weighted point
    sum against the exact layered sphere averages (converted to float at
    the end).  Returns (lhs, rhs) pairs; the caller compares at `tol`.
    """
    rng = np.random.default_rng(seed)
    stacked = np.concatenate([layer.points / layer.denom for layer in ws.layers])
    u, s, vt = np.linalg.svd(stacked, full_matrices=False)
    rank = int((s > 1e-8 * s[0]).sum())
    if rank != dimension:
        raise ValueError(f"point span has rank {rank}, expected {dimension}")
    frame = vt[:dimension]  # orthonormal rows spanning the design subspace
    coords = [
        (layer.points / layer.denom) @ frame.T / np.sqrt(8.0) for layer in ws.layers
    ]

    out: list[tuple[float, float]] = []
    for _ in range(trials):
        n_monomials = int(rng.integers(1, 6))
        monos = []
        for _ in range(n_monomials):
            deg = int(rng.integers(0, t + 1))
            alpha = np.zeros(dimension, dtype=np.int64)
            for _ in range(deg):
                alpha[int(rng.integers(0, dimension))] += 1
            coef = float(rng.normal())
            monos.append((coef, alpha))
        lhs = 0.0
        for layer, pts in zip(ws.layers, coords):
            vals = np.zeros(len(pts))
            for coef, alpha in monos:
                mono = np.ones(len(pts))
                for i in np.nonzero(alpha)[0]:
                    mono *= pts[:, i] ** int(alpha[i])
                vals += coef * mono
            lhs += float(layer.weight) * float(vals.sum())
        rhs = 0.0
        for coef, alpha in monos:
            deg = int(alpha.sum())
            avg = sphere_monomial_average([int(x) for x in alpha], dimension)
            if avg == 0:
                continue
            for layer in ws.layers:
                r_pow = float(layer.r2) ** (deg / 2.0)
                rhs += coef * float(layer.weight) * layer.size * r_pow * float(avg)
        out.append((lhs, rhs))
    return out


def design_probes(ws: WeightedPointSet) -> list[tuple[np.ndarray, int]]:
    """Every design point as a probe (stored vector, denominator)."""
    probes = []
    for layer in ws.layers:
        for row in layer.points:
            probes.append((row, layer.denom))
    return probes


def mutate_design(
    ws: WeightedPointSet, layer_idx: int, point_idx: int, step_a: int = 1, step_b: int = 2
) -> WeightedPointSet:
    """Move one point by the difference of two other layer points (an
    integer step inside the design's linear span); the moved point becomes
    its own layer at its new exact radius."""
    layer = ws.layers[layer_idx]
    pts = layer.points.copy()
    moved = pts[point_idx] + pts[step_a] - pts[step_b]
    if not moved.any():
        raise ValueError("mutation produced the zero vector")
    rest = np.delete(pts, point_idx, axis=0)
    new_r2 = Fraction(int(moved @ moved), 8 * layer.denom * layer.denom)
    if any(new_r2 == other.r2 for other in ws.layers):
        raise ValueError("mutation landed on an existing radius; pick another delta")
    layers = list(ws.layers)
    layers[layer_idx] = PointLayer(
        points=rest, denom=layer.denom, weight=layer.weight, r2=layer.r2
    )
    layers.append(
        PointLayer(
            points=moved.reshape(1, -1),
            denom=layer.denom,
            weight=layer.weight,
            r2=new_r2,
        )
    )
    return WeightedPointSet(layers=tuple(layers))
