"""Pair classification and intersection numbers of the 13-relation
configuration carried by the two-shell design.

Ordered pairs (x, y) are classified by fiber pair and exact normalized
inner product; the composition counts p_{a,b}^c are computed for every
ordered pair of relations by 0/1 matrix products and checked for
constancy over each target class exhaustively (every pair, not a
sample).  Counts are accumulated in float32 BLAS products of indicator
matrices: every partial sum is an integer bounded by the fiber size
2025 << 2^24, so the products are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .construct import WeightedPointSet
from .coherent_fixture import (
    LABELS,
    LABEL_FIBERS,
    LABEL_INDEX,
    TRANSPOSE,
    fixture_tensor,
)

ALPHA_VALUES = (Fraction(1, 6), Fraction(-1, 4))
BETA_VALUES = (Fraction(7, 22), Fraction(-1, 44), Fraction(-4, 11))
GAMMA_SQRT11_VALUES = (Fraction(1), Fraction(-1, 4), Fraction(-3, 2))


class RelationClassificationError(RuntimeError):
    """An inner product outside the nine admissible values appeared."""


class ConfigurationAxiomError(RuntimeError):
    """A composition count is not constant on a relation class."""

    def __init__(self, a: str, b: str, c: str, witness1, witness2, v1: int, v2: int):
        self.witnesses = (witness1, witness2)
        super().__init__(
            f"p_[{a},{b}]^[{c}] not well defined: pair {witness1} sees {v1}, "
            f"pair {witness2} sees {v2}"
        )


@dataclass(frozen=True)
class RelationPartition:
    """Block label matrices with local indices; fiber 1 first."""

    block_labels: dict  # (i, j) -> int8 array of local labels
    fiber_sizes: tuple[int, int]

    def global_label_matrix(self) -> np.ndarray:
        n1, n2 = self.fiber_sizes
        n = n1 + n2
        out = np.zeros((n, n), dtype=np.int8)
        out[:n1, :n1] = self.block_labels[(0, 0)]
        out[:n1, n1:] = self.block_labels[(0, 1)] + 7
        out[n1:, :n1] = self.block_labels[(1, 0)] + 10
        out[n1:, n1:] = self.block_labels[(1, 1)] + 3
        return out


def _expected_dot_values(ws: WeightedPointSet, i: int, j: int) -> list[int]:
    """Stored-integer dot values for the admissible normalized products of
    block (i, j), identity value first for diagonal blocks."""
    scale = ws.dot_scale(i, j)
    r2i, r2j = ws.layers[i].r2, ws.layers[j].r2
    if i == j:
        values = ALPHA_VALUES if i == 0 else BETA_VALUES
        diag = r2i * scale
        rest = [u * r2i * scale for u in values]
        out = [diag, *rest]
    else:
        if r2j / r2i not in (Fraction(11), Fraction(1, 11)):
            raise RelationClassificationError("cross radii are not in ratio 11")
        geom = r2i if r2j / r2i == 11 else r2j  # sqrt(r2i r2j / 11)
        out = [u * geom * scale for u in GAMMA_SQRT11_VALUES]
    ints = []
    for v in out:
        if v.denominator != 1:
            raise RelationClassificationError(f"non-integer expected dot {v}")
        ints.append(int(v))
    return ints


def classify_pairs(ws: WeightedPointSet) -> RelationPartition:
    """Label every ordered pair; fatal if any inner product is off-list."""
    if len(ws.layers) != 2:
        raise RelationClassificationError("expected exactly two layers")
    n1, n2 = ws.layers[0].size, ws.layers[1].size
    blocks = {}
    for i in range(2):
        for j in range(2):
            gram = ws.gram_block(i, j)
            expected = _expected_dot_values(ws, i, j)
            labels = np.full(gram.shape, -1, dtype=np.int8)
            if i == j:
                eye = np.eye(gram.shape[0], dtype=bool)
                if not bool((gram[eye] == expected[0]).all()):
                    raise RelationClassificationError("diagonal norm mismatch")
                if bool((gram[~eye] == expected[0]).any()):
                    raise RelationClassificationError(
                        "duplicate point: off-diagonal pair at full norm"
                    )
                labels[eye] = 0
                for k, val in enumerate(expected[1:], start=1):
                    labels[(~eye) & (gram == val)] = k
            else:
                for k, val in enumerate(expected):
                    labels[gram == val] = k
            if bool((labels < 0).any()):
                bad = np.argwhere(labels < 0)[0]
                raise RelationClassificationError(
                    f"inner product {gram[bad[0], bad[1]]}/{ws.dot_scale(i, j)} in "
                    f"block ({i},{j}) is outside the admissible set"
                )
            blocks[(i, j)] = labels
    part = RelationPartition(block_labels=blocks, fiber_sizes=(n1, n2))
    _check_partition_consistency(part)
    return part


def _check_partition_consistency(part: RelationPartition) -> None:
    lab01 = part.block_labels[(0, 1)]
    lab10 = part.block_labels[(1, 0)]
    if not bool((lab01 == lab10.T).all()):
        raise RelationClassificationError("cross blocks are not transposes")
    for key in ((0, 0), (1, 1)):
        lab = part.block_labels[key]
        if not bool((lab == lab.T).all()):
            raise RelationClassificationError("within-fiber relations not symmetric")


_BLOCK_OF_LABEL = {}
for _idx, (_rf, _cf) in enumerate(LABEL_FIBERS):
    _BLOCK_OF_LABEL[_idx] = (_rf - 1, _cf - 1)

_LOCAL_INDEX = [0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 0, 1, 2]


def intersection_numbers(part: RelationPartition) -> np.ndarray:
    """The full 13x13x13 tensor, with exhaustive well-definedness checks."""
    indicators = {}
    for a in range(13):
        bi, bj = _BLOCK_OF_LABEL[a]
        labels = part.block_labels[(bi, bj)]
        indicators[a] = (labels == _LOCAL_INDEX[a]).astype(np.float32)

    offsets = (0, part.fiber_sizes[0])
    tensor = np.zeros((13, 13, 13), dtype=np.int64)
    for a in range(13):
        a_bi, a_bj = _BLOCK_OF_LABEL[a]
        for b in range(13):
            b_bi, b_bj = _BLOCK_OF_LABEL[b]
            if a_bj != b_bi:
                continue
            prod = indicators[a] @ indicators[b]
            counts = np.rint(prod).astype(np.int64)
            target_block = (a_bi, b_bj)
            target_labels = part.block_labels[target_block]
            for c in range(13):
                if _BLOCK_OF_LABEL[c] != target_block:
                    continue
                mask = target_labels == _LOCAL_INDEX[c]
                vals = counts[mask]
                if vals.size == 0:
                    continue
                v0 = int(vals[0])
                if not bool((vals == v0).all()):
                    where = np.argwhere(mask)
                    flat = vals != v0
                    first_bad = where[np.argmax(flat)]
                    first_good = where[0]
                    w1 = (
                        int(first_good[0]) + offsets[a_bi],
                        int(first_good[1]) + offsets[b_bj],
                    )
                    w2 = (
                        int(first_bad[0]) + offsets[a_bi],
                        int(first_bad[1]) + offsets[b_bj],
                    )
                    raise ConfigurationAxiomError(
                        LABELS[a], LABELS[b], LABELS[c], w1, w2, v0,
                        int(vals[flat][0]),
                    )
                tensor[a, b, c] = v0
    return tensor


def compare_with_reference(
    tensor: np.ndarray, reference: Optional[np.ndarray] = None
) -> list[tuple[str, str, str, int, int]]:
    """Entrywise comparison; returns mismatches (a, b, c, got, expected)."""
    if reference is None:
        reference = fixture_tensor()
    mismatches = []
    diff = np.argwhere(tensor != reference)
    for a, b, c in diff:
        mismatches.append(
            (
                LABELS[a],
                LABELS[b],
                LABELS[c],
                int(tensor[a, b, c]),
                int(reference[a, b, c]),
            )
        )
    return mismatches


def check_tensor_identities(tensor: np.ndarray, fiber_sizes=(275, 2025)) -> None:
    """Structural identities every coherent configuration must satisfy."""
    for a in range(13):
        for b in range(13):
            for c in range(13):
                if tensor[a, b, c] != tensor[TRANSPOSE[b], TRANSPOSE[a], TRANSPOSE[c]]:
                    raise ConfigurationAxiomError(
                        LABELS[a], LABELS[b], LABELS[c], None, None,
                        int(tensor[a, b, c]),
                        int(tensor[TRANSPOSE[b], TRANSPOSE[a], TRANSPOSE[c]]),
                    )
    # Valencies: k_a = p_{a, aT}^{identity of the source fiber}.
    valency = {}
    for a in range(13):
        rf, _ = LABEL_FIBERS[a]
        ident = LABEL_INDEX["11.0"] if rf == 1 else LABEL_INDEX["22.0"]
        valency[a] = int(tensor[a, TRANSPOSE[a], ident])
    if sum(valency[a] for a in range(3)) != fiber_sizes[0]:
        raise AssertionError("fiber-1 valencies do not sum to |X1|")
    if sum(valency[a] for a in range(3, 7)) != fiber_sizes[1]:
        raise AssertionError("fiber-2 valencies do not sum to |X2|")
    # Column sums: sum_b p_{a,b}^c = k_a whenever fibers are compatible.
    for a in range(13):
        ra, ca = LABEL_FIBERS[a]
        for c in range(13):
            rc, cc = LABEL_FIBERS[c]
            if rc != ra:
                continue
            s = sum(
                int(tensor[a, b, c])
                for b in range(13)
                if LABEL_FIBERS[b] == (ca, cc)
            )
            if s != valency[a]:
                raise AssertionError(
                    f"column sum {s} != valency {valency[a]} at a={LABELS[a]}, c={LABELS[c]}"
                )
