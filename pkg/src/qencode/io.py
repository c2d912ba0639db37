"""Readers and writers for plain PGM (P2), CSV vectors/tables and edge lists."""
from __future__ import annotations

import csv
import io
import math

import numpy as np

from .errors import FormatError, GraphFormatError
from .graph import Graph
from .image import Image


def _strip_comments(text: str) -> list[str]:
    return [ln.split("#", 1)[0] for ln in text.splitlines()]


def parse_pgm(text: str) -> Image:
    tokens = " ".join(_strip_comments(text)).split()
    if not tokens or tokens[0] != "P2":
        raise FormatError("only plain ASCII PGM (P2) is supported")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
        values = [int(t) for t in tokens[4:]]
    except ValueError as exc:
        raise FormatError(f"malformed PGM: {exc}") from exc
    if width < 1 or height < 1:
        raise FormatError("PGM dimensions must be positive")
    depth = int(math.log2(maxval + 1)) if maxval >= 1 else 0
    if depth < 1 or 2**depth - 1 != maxval:
        raise FormatError(f"PGM maxval {maxval} is not of the form 2^d - 1")
    if len(values) != width * height:
        raise FormatError(f"PGM has {len(values)} pixels, expected {width * height}")
    if any(v < 0 or v > maxval for v in values):
        raise FormatError("PGM pixel value exceeds maxval")
    return Image(np.array(values, dtype=np.int64).reshape(height, width), depth)


def format_pgm(img: Image) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in img.pixels]
    return f"P2\n{img.width} {img.height}\n{img.maxval}\n" + "\n".join(rows) + "\n"


def parse_csv_table(text: str) -> np.ndarray:
    """Comma-separated numbers, '#' comments, blank lines ignored. Returns 2-D."""
    lines = [ln for ln in _strip_comments(text) if ln.strip()]
    rows = []
    for row in csv.reader(io.StringIO("\n".join(lines))):
        cells = [c.strip() for c in row if c.strip()]
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise FormatError(f"non-numeric CSV cell: {exc}") from exc
    if not rows:
        raise FormatError("CSV contains no data")
    if len({len(r) for r in rows}) != 1:
        raise FormatError("CSV rows have different lengths")
    return np.array(rows)


def parse_csv_vector(text: str) -> np.ndarray:
    """One value per line, or a single comma-separated row."""
    table = parse_csv_table(text)
    if table.shape[0] != 1 and table.shape[1] != 1:
        raise FormatError("vector CSV must be a single row or a single column")
    return table.reshape(-1)


def parse_edge_list(text: str) -> Graph:
    """Line 1: vertex count. Then ``a b`` or ``a b w`` with 1-based vertices."""
    lines = [ln.split() for ln in _strip_comments(text) if ln.strip()]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n = int(lines[0][0])
        edges, weights = [], {}
        for parts in lines[1:]:
            if len(parts) not in (2, 3):
                raise GraphFormatError(f"bad edge line {' '.join(parts)!r}")
            a, b = int(parts[0]) - 1, int(parts[1]) - 1
            edges.append((a, b))
            if len(parts) == 3:
                weights[(a, b)] = float(parts[2])
    except ValueError as exc:
        raise GraphFormatError(f"malformed edge list: {exc}") from exc
    return Graph(n, tuple(edges), weights)
