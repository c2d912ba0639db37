"""Scalar encoders: basis (integer / fixed point), angle, and complex numbers.

The angle embedding is ``x -> cos x|0> + sin x|1>``; with the half-angle RY
convention of the simulator that state is prepared by ``RY(2x)``.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .circuit import Circuit
from .errors import RangeError
from .result import EncodingResult
from .statevec import RegisterLayout, StateVector, basis_state

TWO_PI = 2 * math.pi


def degrees_to_radians(x):
    return x * math.pi / 180


def encode_basis_integer(x: int, m: int) -> EncodingResult:
    x, m = int(x), int(m)
    if m < 1:
        raise RangeError("need at least one bit")
    if not 0 <= x < 2**m:
        raise RangeError(f"{x} does not fit in {m} unsigned bits")
    circ = Circuit(m)
    for q in range(m):
        if (x >> (m - 1 - q)) & 1:
            circ.x(q)
    state = basis_state(RegisterLayout.qubits(m, "bit"), x)
    return EncodingResult(state, circ, {"method": "basis", "bits": m, "value": x})


def encode_fixed_point(x: float, int_bits: int, frac_bits: int) -> EncodingResult:
    """Unsigned fixed point: basis encoding of ``round(x * 2**frac_bits)``."""
    if int_bits < 0 or frac_bits < 0 or int_bits + frac_bits < 1:
        raise RangeError("bit counts must be non-negative with at least one bit")
    if not (0 <= x < 2**int_bits):
        raise RangeError(f"{x} outside [0, 2**{int_bits})")
    scaled = int(round(x * 2**frac_bits))
    m = int_bits + frac_bits
    if scaled >= 2**m:
        raise RangeError(f"{x} rounds to {scaled}, overflowing {m} bits")
    res = encode_basis_integer(scaled, m)
    meta = {"method": "fixed-point", "int_bits": int_bits, "frac_bits": frac_bits,
            "value": scaled / 2**frac_bits}
    return EncodingResult(res.state, res.circuit, meta)


def decode_fixed_point(index: int, frac_bits: int) -> float:
    return index / 2**frac_bits


def _check_angle(x, what="angle"):
    if not (0 <= x <= TWO_PI):
        raise RangeError(f"{what} {x} outside [0, 2*pi]")


def encode_angle(x: float) -> EncodingResult:
    x = float(x)
    _check_angle(x)
    state = StateVector(RegisterLayout.qubits(1, "angle"), [math.cos(x), math.sin(x)])
    circ = Circuit(1).ry(0, 2 * x)
    return EncodingResult(state, circ, {"method": "angle", "angle": x})


def decode_angle(p_one: float) -> float:
    """Angle in [0, pi/2] whose embedding has P(|1>) = ``p_one``.

    Only |sin x| is observable, so x and pi - x (etc.) are indistinguishable.
    """
    return math.asin(math.sqrt(min(max(p_one, 0.0), 1.0)))


def encode_complex(z: complex) -> EncodingResult:
    z = complex(z)
    theta, phi = abs(z), cmath.phase(z)
    _check_angle(theta, "modulus")
    amps = [math.cos(theta / 2), cmath.exp(1j * phi) * math.sin(theta / 2)]
    state = StateVector(RegisterLayout.qubits(1, "complex"), amps)
    circ = Circuit(1).ry(0, theta).phase(0, phi)
    return EncodingResult(state, circ, {"method": "complex", "theta": theta, "phi": phi})


def decode_complex_modulus(p_one: float) -> float:
    """|z| from P(|1>) = sin^2(|z|/2). The phase is not recoverable by measurement."""
    return 2 * math.asin(math.sqrt(min(max(p_one, 0.0), 1.0)))


def argmax_decode(state: StateVector) -> int:
    return int(np.argmax(state.probabilities()))
