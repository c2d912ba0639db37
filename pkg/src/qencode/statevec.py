"""Dense state vectors over mixed-radix (qubit/qutrit) registers.

Subsystem 0 is the leftmost tensor factor, i.e. the most significant digit of
the basis index, so ``|101> = |1> (x) |0> (x) |1> = e_5``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, FormatError, RangeError, ShapeError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class RegisterLayout:
    local_dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(self.local_dims) != len(self.labels):
            raise ShapeError(
                f"{len(self.local_dims)} local dims but {len(self.labels)} labels"
            )
        bad = [d for d in self.local_dims if d not in (2, 3)]
        if bad:
            raise ShapeError(f"local dimensions must be 2 or 3, got {bad}")

    @classmethod
    def qubits(cls, n: int, label: str = "data") -> "RegisterLayout":
        return cls((2,) * n, (label,) * n)

    @classmethod
    def qutrits(cls, n: int, label: str = "data") -> "RegisterLayout":
        return cls((3,) * n, (label,) * n)

    @property
    def dim(self) -> int:
        return prod(self.local_dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.local_dims)

    @property
    def all_qubits(self) -> bool:
        return all(d == 2 for d in self.local_dims)

    def __add__(self, other: "RegisterLayout") -> "RegisterLayout":
        return RegisterLayout(
            self.local_dims + other.local_dims, self.labels + other.labels
        )

    def indices(self, label: str) -> list[int]:
        """Subsystem positions carrying ``label``."""
        return [i for i, lab in enumerate(self.labels) if lab == label]

    def digits(self, index: int) -> tuple[int, ...]:
        """Mixed-radix expansion of a basis index, most significant first."""
        if not 0 <= index < self.dim:
            raise RangeError(f"basis index {index} outside [0, {self.dim})")
        out = []
        for d in reversed(self.local_dims):
            index, r = divmod(index, d)
            out.append(r)
        return tuple(reversed(out))

    def index(self, digits: Sequence[int]) -> int:
        if len(digits) != self.n_subsystems:
            raise ShapeError("digit string length does not match register")
        idx = 0
        for dig, d in zip(digits, self.local_dims):
            if not 0 <= dig < d:
                raise RangeError(f"digit {dig} invalid for local dimension {d}")
            idx = idx * d + int(dig)
        return idx


@dataclass(frozen=True)
class StateVector:
    layout: RegisterLayout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.layout.dim:
            raise ShapeError(
                f"{amps.size} amplitudes for a register of dimension {self.layout.dim}"
            )
        if not np.all(np.isfinite(amps)):
            raise FormatError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.layout.dim

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.layout.local_dims)

    def relabel(self, labels: Sequence[str]) -> "StateVector":
        return StateVector(RegisterLayout(self.layout.local_dims, labels), self.amplitudes)

    def to_dict(self) -> dict:
        return {
            "local_dims": list(self.layout.local_dims),
            "labels": list(self.layout.labels),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StateVector":
        try:
            layout = RegisterLayout(data["local_dims"], data["labels"])
            amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ShapeError):
                raise
            raise FormatError(f"malformed state JSON: {exc}") from exc
        return cls(layout, amps)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        return cls.from_dict(json.loads(text))


def basis_state(layout: RegisterLayout, index: int) -> StateVector:
    if not 0 <= index < layout.dim:
        raise RangeError(f"basis index {index} outside [0, {layout.dim})")
    amps = np.zeros(layout.dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(layout, amps)


def kron(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product with ``a`` as the more significant factor."""
    return StateVector(a.layout + b.layout, np.kron(a.amplitudes, b.amplitudes))


def kron_all(states: Sequence[StateVector]) -> StateVector:
    if not states:
        raise DegenerateInputError("empty tensor product")
    out = states[0]
    for s in states[1:]:
        out = kron(out, s)
    return out


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugating ``a``."""
    if a.layout.local_dims != b.layout.local_dims:
        raise ShapeError(
            f"layout mismatch: {a.layout.local_dims} vs {b.layout.local_dims}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(inner_product(a, b)) ** 2


def normalize(v) -> np.ndarray:
    v = np.asarray(v)
    if not np.issubdtype(v.dtype, np.number) or v.size == 0:
        raise DegenerateInputError("cannot normalize an empty or non-numeric vector")
    v = v.astype(complex if np.iscomplexobj(v) else float).reshape(-1)
    scale = np.max(np.abs(v))
    if scale == 0:
        raise DegenerateInputError("cannot normalize the zero vector")
    v = v / scale  # guards against under/overflow in the norm
    return v / np.linalg.norm(v)
