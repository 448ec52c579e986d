"""Text formats for point sets and layered designs.

Lattice point sets: one vector per line, 24 space-separated integers,
lines in lexicographic order, with header

    # leech-scaled8 norm=<p/q> count=<n>

Layered weighted sets extend this with one block per layer:

    # design layers=<k>
    # layer weight=<p/q> r2=<p/q> denom=<d> count=<n>
    <24 integers per line: denom * scaled coordinates>

Candidate exports carry the header "# candidates norm=44/3 count=<n>".
All writers emit byte-deterministic output for a given object.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .arith import rat_from_text, rat_to_text
from .construct import PointLayer, WeightedPointSet
from .lattice import canonical_sort


class FormatError(ValueError):
    pass


def _parse_header(line: str, tag: str) -> dict[str, str]:
    if not line.startswith(f"# {tag}"):
        raise FormatError(f"expected '# {tag}' header, got {line!r}")
    fields = {}
    for tok in line[1:].split()[1:]:
        key, _, val = tok.partition("=")
        fields[key] = val
    return fields


def write_lattice_points(path: Path, points: np.ndarray, norm: Fraction) -> None:
    points = canonical_sort(np.asarray(points, dtype=np.int64))
    lines = [f"# leech-scaled8 norm={rat_to_text(Fraction(norm))} count={len(points)}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in points)
    Path(path).write_text("\n".join(lines) + "\n")


def read_lattice_points(path: Path) -> tuple[np.ndarray, Fraction]:
    text = Path(path).read_text().strip().splitlines()
    fields = _parse_header(text[0], "leech-scaled8")
    norm = rat_from_text(fields["norm"])
    count = int(fields["count"])
    rows = [[int(x) for x in line.split()] for line in text[1:]]
    if len(rows) != count or any(len(r) != 24 for r in rows):
        raise FormatError("point count or width mismatch")
    return np.array(rows, dtype=np.int64), norm


def write_design(path: Path, ws: WeightedPointSet) -> None:
    lines = [f"# design layers={len(ws.layers)}"]
    for layer in ws.layers:
        pts = canonical_sort(layer.points)
        lines.append(
            f"# layer weight={rat_to_text(layer.weight)} r2={rat_to_text(layer.r2)} "
            f"denom={layer.denom} count={layer.size}"
        )
        lines.extend(" ".join(str(int(x)) for x in row) for row in pts)
    Path(path).write_text("\n".join(lines) + "\n")


def read_design(path: Path) -> WeightedPointSet:
    text = Path(path).read_text().strip().splitlines()
    head = _parse_header(text[0], "design")
    n_layers = int(head["layers"])
    layers = []
    i = 1
    for _ in range(n_layers):
        fields = _parse_header(text[i], "layer")
        weight = rat_from_text(fields["weight"])
        r2 = rat_from_text(fields["r2"])
        denom = int(fields["denom"])
        count = int(fields["count"])
        rows = [[int(x) for x in line.split()] for line in text[i + 1 : i + 1 + count]]
        if len(rows) != count or any(len(r) != 24 for r in rows):
            raise FormatError("layer point count or width mismatch")
        layers.append(
            PointLayer(
                points=np.array(rows, dtype=np.int64),
                denom=denom,
                weight=weight,
                r2=r2,
            )
        )
        i += 1 + count
    return WeightedPointSet(layers=tuple(layers))


def write_candidates(path: Path, vectors3: np.ndarray) -> None:
    vectors3 = canonical_sort(np.asarray(vectors3, dtype=np.int64))
    lines = [f"# candidates norm=44/3 count={len(vectors3)}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in vectors3)
    Path(path).write_text("\n".join(lines) + "\n")


def read_candidates(path: Path) -> np.ndarray:
    text = Path(path).read_text().strip().splitlines()
    fields = _parse_header(text[0], "candidates")
    count = int(fields["count"])
    rows = [[int(x) for x in line.split()] for line in text[1:]]
    if len(rows) != count:
        raise FormatError("candidate count mismatch")
    return np.array(rows, dtype=np.int64)


def write_tensor(path: Path, tensor: np.ndarray, labels: list[str]) -> None:
    """Plain-text tensor entries "a b c value", structural zeros omitted."""
    lines = []
    for a in range(13):
        for b in range(13):
            for c in range(13):
                v = int(tensor[a, b, c])
                if v:
                    lines.append(f"{labels[a]} {labels[b]} {labels[c]} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_tensor(path: Path, labels: list[str]) -> np.ndarray:
    index = {name: i for i, name in enumerate(labels)}
    tensor = np.zeros((13, 13, 13), dtype=np.int64)
    for line in Path(path).read_text().strip().splitlines():
        a, b, c, v = line.split()
        tensor[index[a], index[b], index[c]] = int(v)
    return tensor
