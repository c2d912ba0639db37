"""Vector, matrix and time-series encoders and the recursive amplitude
state-preparation circuit (conditional-probability tree, depth-first)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .circuit import Circuit
from .errors import DegenerateInputError, RangeError, ShapeError, UnsupportedSignError
from .result import EncodingResult
from .scalar import TWO_PI
from .statevec import RegisterLayout, StateVector, normalize


def pad_to_power_of_two(x) -> np.ndarray:
    x = np.asarray(x).reshape(-1)
    if x.size == 0:
        raise DegenerateInputError("cannot pad an empty vector")
    size = 1 << (x.size - 1).bit_length()
    if size == x.size:
        return x.copy()
    return np.concatenate([x, np.zeros(size - x.size, dtype=x.dtype)])


def vectorize_matrix(m) -> np.ndarray:
    """Stack the columns of ``m``."""
    m = np.asarray(m)
    if m.size == 0:
        raise DegenerateInputError("empty matrix")
    if m.ndim == 1:
        return m.copy()
    return m.reshape(m.shape[0], -1).flatten(order="F")


def encode_angle_vector(x) -> EncodingResult:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size == 0:
        raise DegenerateInputError("empty vector")
    if np.any((x < 0) | (x > TWO_PI)) or not np.all(np.isfinite(x)):
        raise RangeError("angle entries must lie in [0, 2*pi]")
    amps = np.ones(1)
    circ = Circuit(x.size)
    for q, xi in enumerate(x):
        amps = np.kron(amps, [math.cos(xi), math.sin(xi)])
        circ.ry(q, 2 * xi)
    state = StateVector(RegisterLayout.qubits(x.size, "angle"), amps)
    return EncodingResult(state, circ, {"method": "angle", "length": int(x.size)})


def encode_amplitude(x, *, label: str = "amplitude") -> EncodingResult:
    """Amplitude encoding of ``x`` (zero-padded to a power of two).

    Signed input is accepted. A preparation circuit is attached only when
    every entry is real and non-negative.
    """
    raw = np.asarray(x)
    if raw.size == 0:
        raise DegenerateInputError("empty vector")
    padded = pad_to_power_of_two(raw)
    amps = normalize(padded)
    n = int(padded.size).bit_length() - 1
    state = StateVector(RegisterLayout.qubits(n, label), amps)
    circ = None
    if not np.iscomplexobj(amps) and np.all(amps >= 0) and n > 0:
        circ = prep_circuit_from_tree(build_prep_tree(amps))
    meta = {"method": "amplitude", "length": int(raw.size), "norm": float(np.linalg.norm(padded))}
    return EncodingResult(state, circ, meta)


# --- recursive preparation ----------------------------------------------------


@dataclass
class PrepNode:
    """Rotation on ``qubit`` conditioned on the higher qubits equal to ``prefix``.

    ``p`` is P(qubit = 1 | prefix). ``dead`` marks a zero-mass prefix, for
    which no gate is emitted.
    """

    qubit: int
    prefix: tuple[int, ...]
    p: float
    dead: bool = False
    one: "PrepNode | None" = None
    zero: "PrepNode | None" = None

    @property
    def theta(self) -> float:
        return 2 * math.asin(math.sqrt(min(max(self.p, 0.0), 1.0)))


@dataclass
class PrepTree:
    n_qubits: int
    root: PrepNode
    _index: dict = field(default_factory=dict, repr=False)

    def nodes(self) -> Iterator[PrepNode]:
        """Depth-first, 1-branch before 0-branch."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.zero is not None:
                stack.append(node.zero)
            if node.one is not None:
                stack.append(node.one)

    def node(self, prefix) -> PrepNode:
        if not self._index:
            self._index = {nd.prefix: nd for nd in self.nodes()}
        return self._index[tuple(prefix)]

    def probability(self, prefix) -> float:
        return self.node(prefix).p


def build_prep_tree(x) -> PrepTree:
    x = np.asarray(x)
    if np.iscomplexobj(x):
        raise UnsupportedSignError("tree preparation takes real non-negative input")
    x = x.astype(float).reshape(-1)
    if x.size < 2 or x.size & (x.size - 1):
        raise ShapeError(f"length must be a power of two >= 2, got {x.size}")
    if np.any(x < 0):
        raise UnsupportedSignError("tree preparation cannot represent negative entries")
    probs = normalize(x) ** 2
    n = x.size.bit_length() - 1
    grid = probs.reshape((2,) * n)

    def mass(prefix):
        return float(grid[prefix].sum())

    def build(prefix: tuple[int, ...]) -> PrepNode:
        q = len(prefix)
        total = mass(prefix)
        dead = total <= 0.0
        p = 0.0 if dead else min(mass(prefix + (1,)) / total, 1.0)
        node = PrepNode(q, prefix, p, dead)
        if q + 1 < n:
            node.one = build(prefix + (1,))
            node.zero = build(prefix + (0,))
        return node

    return PrepTree(n, build(()))


def prep_circuit_from_tree(tree: PrepTree) -> Circuit:
    """RY / MCRY circuit visiting the tree depth-first.

    Zero-conditioned controls are realised by X conjugation: X gates are
    toggled only when the required conditioning changes between rotations,
    and every control is restored at the end.
    """
    circ = Circuit(tree.n_qubits)
    flipped: set[int] = set()
    for node in tree.nodes():
        if node.dead:
            continue
        need = {q for q, bit in enumerate(node.prefix) if bit == 0}
        for q in sorted(flipped ^ need):
            circ.x(q)
        flipped = need
        if node.prefix:
            circ.mcry([(q, 1) for q in range(len(node.prefix))], node.qubit, node.theta)
        else:
            circ.ry(node.qubit, node.theta)
    for q in sorted(flipped):
        circ.x(q)
    return circ


# --- time series --------------------------------------------------------------


def concat_channels(series) -> np.ndarray:
    """Rows are time steps, columns channels; result is channel-major."""
    t = np.asarray(series, dtype=float)
    if t.ndim == 1:
        t = t[:, None]
    if t.ndim != 2 or t.size == 0:
        raise ShapeError("time series must be a non-empty 2-D table")
    return t.flatten(order="F")


def encode_timeseries(series) -> EncodingResult:
    t = np.asarray(series, dtype=float)
    if t.ndim == 1:
        t = t[:, None]
    res = encode_amplitude(concat_channels(t), label="sample")
    meta = dict(res.meta, method="timeseries", timesteps=int(t.shape[0]),
                channels=int(t.shape[1]))
    return EncodingResult(res.state, res.circuit, meta)
