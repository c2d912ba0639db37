"""Graph states of undirected simple graphs.

Start from ``|+>^n`` and apply one diagonal unitary per edge: CZ for an
unweighted edge, ``exp(-i phi Z_a Z_b)`` for an edge of weight ``phi``.
All edge unitaries are diagonal, so application order does not matter.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit
from .errors import GraphFormatError, ShapeError
from .result import EncodingResult
from .statevec import RegisterLayout, StateVector


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphFormatError("graph needs at least one vertex")
        canon = []
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise GraphFormatError(f"self-loop at vertex {a}")
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise GraphFormatError(f"edge ({a}, {b}) outside [0, {self.n_vertices})")
            canon.append((min(a, b), max(a, b)))
        if len(set(canon)) != len(canon):
            raise GraphFormatError("duplicate edge")
        weights = {}
        for (a, b), w in self.weights.items():
            e = (min(a, b), max(a, b))
            if e not in canon:
                raise GraphFormatError(f"weight given for missing edge {e}")
            weights[e] = float(w)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "weights", weights)

    @property
    def weighted(self) -> bool:
        return bool(self.weights)


def edge_phases(a: int, b: int, n: int, phi: float | None = None) -> np.ndarray:
    """Diagonal of the edge unitary on ``n`` qubits (qubit 0 most significant)."""
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise ShapeError(f"invalid edge ({a}, {b}) for {n} qubits")
    idx = np.arange(2**n)
    bit_a = (idx >> (n - 1 - a)) & 1
    bit_b = (idx >> (n - 1 - b)) & 1
    if phi is None:
        return np.where(bit_a & bit_b, -1.0, 1.0).astype(complex)
    # Z eigenvalue s = +1 for bit 0, -1 for bit 1
    parity = np.where(bit_a ^ bit_b, -1.0, 1.0)
    return np.exp(-1j * phi * parity)


def edge_unitary(a: int, b: int, n: int, phi: float | None = None) -> np.ndarray:
    """Dense 2^n x 2^n edge unitary; ``phi=None`` gives CZ."""
    return np.diag(edge_phases(a, b, n, phi))


def graph_state(g: Graph, edge_order=None) -> EncodingResult:
    """Graph state of ``g``. ``edge_order`` only exists to check order independence."""
    n = g.n_vertices
    amps = np.full(2**n, 2 ** (-n / 2), dtype=complex)
    for a, b in (edge_order if edge_order is not None else g.edges):
        amps = amps * edge_phases(a, b, n, g.weights.get((min(a, b), max(a, b))))
    circ = None
    if not g.weighted:
        circ = Circuit(n)
        for q in range(n):
            circ.h(q)
        for a, b in g.edges:
            circ.cz(a, b)
    state = StateVector(RegisterLayout.qubits(n, "vertex"), amps)
    meta = {"method": "graph", "n_vertices": n, "edges": [list(e) for e in g.edges]}
    if g.weighted:
        meta["weights"] = [[a, b, w] for (a, b), w in sorted(g.weights.items())]
    return EncodingResult(state, circ, meta)
