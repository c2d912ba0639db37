"""Gate-list circuits, a dense qubit simulator and seeded measurement sampling.

Gate conventions:

* ``RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]``
* ``RZ(p) = diag(exp(-ip/2), exp(ip/2))``, ``Phase(p) = diag(1, exp(ip))``
* ``CZ = diag(1, 1, 1, -1)``
* ``QFT`` on a qubit subset maps ``|j> -> N^-1/2 sum_k exp(2 pi i jk/N) |k>``
  with the first listed qubit as the most significant bit of ``j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import cos, isfinite, sin

import numpy as np

from .errors import FormatError, RangeError, ShapeError, UnsupportedRegisterError
from .statevec import RegisterLayout, StateVector, basis_state

GATE_KINDS = ("X", "H", "RY", "RZ", "P", "CZ", "MCRY", "QFT")

# Shots per RNG block. Block b draws from default_rng([seed, b]), so results
# only depend on (seed, shot index) and never on how blocks are scheduled.
SAMPLE_BLOCK = 1 << 16

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = cos(theta / 2), sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz_matrix(phi: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])


def phase_matrix(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(complex)


def dft_matrix(n_points: int) -> np.ndarray:
    j = np.arange(n_points)
    return np.exp(2j * np.pi * np.outer(j, j) / n_points) / np.sqrt(n_points)


@dataclass(frozen=True)
class Gate:
    """One gate. ``qubits`` holds the targets (two for CZ, the block for QFT);
    ``controls`` holds (qubit, polarity) pairs for MCRY."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise FormatError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(
            self, "controls", tuple((int(q), int(p)) for q, p in self.controls)
        )
        arity = {"X": 1, "H": 1, "RY": 1, "RZ": 1, "P": 1, "CZ": 2, "MCRY": 1}
        if self.kind in arity and len(self.qubits) != arity[self.kind]:
            raise ShapeError(f"{self.kind} takes {arity[self.kind]} target qubit(s)")
        if self.kind == "QFT" and not self.qubits:
            raise ShapeError("QFT needs at least one qubit")
        if self.kind in ("RY", "RZ", "P", "MCRY"):
            if self.angle is None or not isfinite(self.angle):
                raise RangeError(f"{self.kind} needs a finite angle")
        if any(p not in (0, 1) for _, p in self.controls):
            raise ShapeError("control polarity must be 0 or 1")
        touched = self.qubits + tuple(q for q, _ in self.controls)
        if len(set(touched)) != len(touched):
            raise ShapeError(f"{self.kind} acts on overlapping qubits {touched}")

    @property
    def all_qubits(self) -> tuple[int, ...]:
        return self.qubits + tuple(q for q, _ in self.controls)

    def to_text(self) -> str:
        qs = " ".join(f"q{q}" for q in self.qubits)
        if self.kind == "MCRY":
            ctl = ",".join(f"q{q}={p}" for q, p in self.controls)
            return f"MCRY [{ctl}] {qs} {self.angle:.12g}"
        if self.angle is not None:
            return f"{self.kind} {qs} {self.angle:.12g}"
        return f"{self.kind} {qs}"


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate):
        for q in gate.all_qubits:
            if not 0 <= q < self.n_qubits:
                raise ShapeError(f"qubit {q} outside register of {self.n_qubits}")

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def x(self, q):
        return self.append(Gate("X", (q,)))

    def h(self, q):
        return self.append(Gate("H", (q,)))

    def ry(self, q, theta):
        return self.append(Gate("RY", (q,), float(theta)))

    def rz(self, q, phi):
        return self.append(Gate("RZ", (q,), float(phi)))

    def phase(self, q, phi):
        return self.append(Gate("P", (q,), float(phi)))

    def cz(self, a, b):
        return self.append(Gate("CZ", (a, b)))

    def mcry(self, controls, target, theta):
        return self.append(Gate("MCRY", (target,), float(theta), tuple(controls)))

    def qft(self, qubits):
        return self.append(Gate("QFT", tuple(qubits)))

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ShapeError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def __len__(self):
        return len(self.gates)

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def to_text(self) -> str:
        lines = [f"# qubits {self.n_qubits}"] + [g.to_text() for g in self.gates]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n_qubits: int | None = None) -> "Circuit":
        gates = []
        declared = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = re.match(r"#\s*qubits\s+(\d+)", line)
                if m:
                    declared = int(m.group(1))
                continue
            gates.append(_parse_gate(line))
        n = n_qubits if n_qubits is not None else declared
        if n is None:
            n = 1 + max((q for g in gates for q in g.all_qubits), default=-1)
        return cls(n, gates)


def _qubit(tok: str) -> int:
    m = re.fullmatch(r"q(\d+)", tok)
    if not m:
        raise FormatError(f"bad qubit token {tok!r}")
    return int(m.group(1))


def _parse_gate(line: str) -> Gate:
    m = re.fullmatch(r"MCRY\s*\[([^\]]*)\]\s+(q\d+)\s+(\S+)", line)
    if m:
        controls = []
        for item in filter(None, (s.strip() for s in m.group(1).split(","))):
            q, _, p = item.partition("=")
            controls.append((_qubit(q.strip()), int(p)))
        return Gate("MCRY", (_qubit(m.group(2)),), float(m.group(3)), tuple(controls))
    toks = line.split()
    kind = toks[0].upper()
    try:
        if kind in ("RY", "RZ", "P"):
            return Gate(kind, (_qubit(toks[1]),), float(toks[2]))
        if kind in ("X", "H", "CZ", "QFT"):
            return Gate(kind, tuple(_qubit(t) for t in toks[1:]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed gate line {line!r}") from exc
    raise FormatError(f"unknown gate line {line!r}")


# --- simulation -------------------------------------------------------------


def _apply_1q(psi: np.ndarray, mat: np.ndarray, q: int) -> np.ndarray:
    psi = np.tensordot(mat, psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q)


def _apply_block(psi: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    k = len(qubits)
    moved = np.moveaxis(psi, qubits, range(k))
    shape = moved.shape
    out = (mat @ moved.reshape(2**k, -1)).reshape(shape)
    return np.moveaxis(out, range(k), qubits)


def _apply_mcry_tensor(psi, controls, target, theta):
    idx = [slice(None)] * psi.ndim
    for q, pol in controls:
        idx[q] = pol
    # fix the target axis to the end of the sliced view
    sub = psi[tuple(idx)]
    remaining = [q for q in range(psi.ndim) if q not in {c for c, _ in controls}]
    t_axis = remaining.index(target)
    psi = psi.copy()
    psi[tuple(idx)] = _apply_1q(sub, ry_matrix(theta), t_axis)
    return psi


def _apply_gate(psi: np.ndarray, g: Gate) -> np.ndarray:
    k = g.kind
    if k == "X":
        return _apply_1q(psi, _X, g.qubits[0])
    if k == "H":
        return _apply_1q(psi, _H, g.qubits[0])
    if k == "RY":
        return _apply_1q(psi, ry_matrix(g.angle), g.qubits[0])
    if k == "RZ":
        return _apply_1q(psi, rz_matrix(g.angle), g.qubits[0])
    if k == "P":
        return _apply_1q(psi, phase_matrix(g.angle), g.qubits[0])
    if k == "CZ":
        a, b = g.qubits
        psi = psi.copy()
        idx = [slice(None)] * psi.ndim
        idx[a] = idx[b] = 1
        psi[tuple(idx)] *= -1
        return psi
    if k == "MCRY":
        return _apply_mcry_tensor(psi, g.controls, g.qubits[0], g.angle)
    if k == "QFT":
        return _apply_block(psi, dft_matrix(2 ** len(g.qubits)), g.qubits)
    raise FormatError(f"cannot simulate {k}")


def _require_qubits(state: StateVector, n: int | None = None):
    if not state.layout.all_qubits:
        raise UnsupportedRegisterError("gate simulation needs an all-qubit register")
    if n is not None and state.layout.n_subsystems != n:
        raise ShapeError(
            f"circuit on {n} qubits given a state on {state.layout.n_subsystems}"
        )


def simulate(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Apply the gates left to right to ``initial`` (default ``|0...0>``)."""
    if initial is None:
        initial = basis_state(RegisterLayout.qubits(circuit.n_qubits), 0)
    _require_qubits(initial, circuit.n_qubits)
    n = circuit.n_qubits
    psi = np.array(initial.amplitudes).reshape((2,) * n) if n else np.array(initial.amplitudes)
    for g in circuit.gates:
        psi = _apply_gate(psi, g)
    return StateVector(initial.layout, psi.reshape(-1))


def apply_mcry(state: StateVector, controls, target: int, theta: float) -> StateVector:
    """RY(theta) on ``target`` where every (qubit, polarity) control matches."""
    _require_qubits(state)
    g = Gate("MCRY", (target,), float(theta), tuple(controls))
    n = state.layout.n_subsystems
    if any(q >= n or q < 0 for q in g.all_qubits):
        raise ShapeError("qubit index outside register")
    psi = _apply_gate(np.array(state.amplitudes).reshape((2,) * n), g)
    return StateVector(state.layout, psi.reshape(-1))


# --- sampling ---------------------------------------------------------------


@dataclass(frozen=True)
class ShotRecord:
    outcome: int
    count: int


def _cdf(state: StateVector) -> np.ndarray:
    cdf = np.cumsum(state.probabilities())
    return cdf / cdf[-1]


def iter_outcomes(state: StateVector, seed: int, shots: int | None = None,
                  first_chunk: int = 256):
    """Yield ``(first_shot_index, outcomes)`` chunks in shot order.

    Shot ``s`` always takes the ``s % SAMPLE_BLOCK``-th uniform of the stream
    ``default_rng([seed, s // SAMPLE_BLOCK])``, whatever the chunking.
    ``shots=None`` streams forever.
    """
    cdf = _cdf(state)
    shot = 0
    chunk = first_chunk
    while shots is None or shot < shots:
        block, offset = divmod(shot, SAMPLE_BLOCK)
        if offset == 0:
            rng = np.random.default_rng([int(seed), block])
        size = min(chunk, SAMPLE_BLOCK - offset)
        if shots is not None:
            size = min(size, shots - shot)
        u = rng.random(size)
        yield shot, np.minimum(np.searchsorted(cdf, u, side="right"), cdf.size - 1)
        shot += size
        chunk = min(chunk * 2, SAMPLE_BLOCK)


def sample_outcomes(state: StateVector, shots: int, seed: int) -> np.ndarray:
    """Basis-index outcome of every shot, in shot order."""
    if shots <= 0:
        return np.zeros(0, dtype=np.int64)
    parts = [o for _, o in iter_outcomes(state, seed, shots, first_chunk=SAMPLE_BLOCK)]
    return np.concatenate(parts)


def sample(state: StateVector, shots: int, seed: int) -> list[ShotRecord]:
    """Measure ``shots`` times in the computational basis; records sorted by outcome."""
    outcomes = sample_outcomes(state, shots, seed)
    values, counts = np.unique(outcomes, return_counts=True)
    return [ShotRecord(int(v), int(c)) for v, c in zip(values, counts)]


def counts_array(records: list[ShotRecord], dim: int) -> np.ndarray:
    out = np.zeros(dim, dtype=np.int64)
    for r in records:
        out[r.outcome] += r.count
    return out
