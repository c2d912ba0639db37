"""Image encoders: FRQI, NEQR, GNEQR, QPIE (+2D QFT), BRQI, qutrit FRQI/NEQR.

Pixel grids are 2-D integer arrays indexed ``[row, col]``. Unless a register
says otherwise, the linear position is row-major ``row * width + col``.
NEQR/GNEQR registers are ``|f>|y>|x>`` with y = row and x = column; BRQI
registers are ``|c>|x>|y>|b>`` with x = row, y = column and the bitplane
index least significant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, iter_outcomes, sample, simulate
from .errors import (
    DegenerateInputError,
    FormatError,
    RangeError,
    SamplingTimeoutError,
    ShapeError,
    UnsupportedDepthError,
    UnsupportedLayoutError,
)
from .result import EncodingResult
from .statevec import RegisterLayout, StateVector
from .vector import build_prep_tree, pad_to_power_of_two, prep_circuit_from_tree

AMP_TOL = 1e-9
DEFAULT_SHOT_CAP = 10**7
QUTRIT_COLOR_TRITS = 6
# two color qutrits address the 3^2 = 9 colour states; a single trit value uses the first three
QUTRIT_NEQR_COLOR_QUTRITS = 2


@dataclass(frozen=True)
class Image:
    pixels: np.ndarray
    depth: int = 8

    def __post_init__(self):
        px = np.array(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ShapeError("image must be a non-empty 2-D grid")
        if not np.issubdtype(px.dtype, np.integer):
            if not np.all(np.equal(np.mod(px, 1), 0)):
                raise FormatError("pixel values must be integers")
        px = px.astype(np.int64)
        if self.depth < 1:
            raise UnsupportedDepthError("bit depth must be positive")
        if px.min() < 0 or px.max() > 2**self.depth - 1:
            raise RangeError(f"pixel values must lie in [0, {2**self.depth - 1}]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def maxval(self) -> int:
        return 2**self.depth - 1


def as_image(img, depth: int = 8) -> Image:
    return img if isinstance(img, Image) else Image(np.asarray(img), depth)


def _log(side: int, base: int) -> int | None:
    k, s = 0, 1
    while s < side:
        s *= base
        k += 1
    return k if s == side else None


def _square_exponent(img: Image, base: int) -> int:
    if img.height != img.width:
        raise ShapeError(f"image must be square, got {img.height}x{img.width}")
    n = _log(img.width, base)
    if n is None:
        raise ShapeError(f"side {img.width} is not a power of {base}")
    return n


def _pow2_exponent(side: int) -> int:
    n = _log(side, 2)
    if n is None:
        raise ShapeError(f"side {side} is not a power of two")
    return n


def _meta(method, img: Image, **extra) -> dict:
    return {"method": method, "height": img.height, "width": img.width,
            "depth": img.depth, **extra}


def _bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def pixel_angles(img: Image) -> np.ndarray:
    """Row-major angles in [0, pi/2]."""
    return img.pixels.reshape(-1) * (math.pi / (2 * img.maxval))


# --- FRQI ---------------------------------------------------------------------


def frqi_encode(img, depth: int = 8) -> EncodingResult:
    img = as_image(img, depth)
    n = _square_exponent(img, 2)
    theta = pixel_angles(img)
    amps = np.concatenate([np.cos(theta), np.sin(theta)]) / 2**n
    layout = RegisterLayout((2,) * (1 + 2 * n),
                            ("color",) + ("position-y",) * n + ("position-x",) * n)
    return EncodingResult(StateVector(layout, amps), frqi_prep_circuit(img),
                          _meta("frqi", img))


def frqi_prep_circuit(img, depth: int = 8) -> Circuit:
    """Uniform positions, then one MCRY on the color qubit per pixel."""
    img = as_image(img, depth)
    n = _square_exponent(img, 2)
    circ = Circuit(1 + 2 * n)
    for q in range(1, 1 + 2 * n):
        circ.h(q)
    for i, th in enumerate(pixel_angles(img)):
        controls = [(1 + q, b) for q, b in enumerate(_bits(i, 2 * n))]
        circ.mcry(controls, 0, 2 * th)
    return circ


def _color_position_split(state: StateVector):
    dims = state.layout.local_dims
    if not state.layout.labels or state.layout.labels[0] != "color":
        raise FormatError("expected a leading color subsystem")
    return state.amplitudes.reshape(dims[0], -1)


def _grid(meta: dict, n_positions: int) -> tuple[int, int]:
    h = int(meta.get("height", 0)) or int(round(math.sqrt(n_positions)))
    w = int(meta.get("width", 0)) or n_positions // h
    if h * w != n_positions:
        raise FormatError(f"{h}x{w} grid does not match {n_positions} positions")
    return h, w


def frqi_decode_exact(state: StateVector, meta: dict | None = None) -> np.ndarray:
    """Invert FRQI (qubit or qutrit color): theta_i = atan2(|a1|, |a0|)."""
    meta = meta or {}
    depth = int(meta.get("depth", 8))
    blocks = _color_position_split(state)
    n_pos = blocks.shape[1]
    marg = (np.abs(blocks) ** 2).sum(axis=0)
    if np.max(np.abs(marg - 1.0 / n_pos)) > AMP_TOL:
        raise FormatError("position marginals are not uniform; not an FRQI state")
    if blocks.shape[0] > 2 and np.max(np.abs(blocks[2:])) > AMP_TOL:
        raise FormatError("FRQI color amplitude outside |0>,|1>")
    theta = np.arctan2(np.abs(blocks[1]), np.abs(blocks[0]))
    maxval = 2**depth - 1
    px = np.rint(theta * 2 * maxval / math.pi).astype(np.int64)
    return px.reshape(_grid(meta, n_pos))


def frqi_decode_sampled(state: StateVector, meta: dict | None, shots: int, seed: int):
    """Estimate each pixel from sampled color statistics: theta = asin(sqrt(P(1|i))).

    Returns (image, shots). Positions never observed decode to 0.
    """
    meta = meta or {}
    depth = int(meta.get("depth", 8))
    blocks = _color_position_split(state)
    n_pos = blocks.shape[1]
    counts = np.zeros(blocks.shape, dtype=np.int64)
    for rec in sample(state, shots, seed):
        c, i = divmod(rec.outcome, n_pos)
        counts[c, i] += rec.count
    seen = counts[:2].sum(axis=0)
    p1 = np.divide(counts[1], seen, out=np.zeros(n_pos), where=seen > 0)
    theta = np.arcsin(np.sqrt(p1))
    px = np.rint(theta * 2 * (2**depth - 1) / math.pi).astype(np.int64)
    return px.reshape(_grid(meta, n_pos)), shots


# --- NEQR / GNEQR -------------------------------------------------------------


def _basis_color_circuit(n_color: int, n_pos: int, colors) -> Circuit:
    """H on position qubits, then MCRY(pi) per set color bit per position."""
    circ = Circuit(n_color + n_pos)
    for q in range(n_color, n_color + n_pos):
        circ.h(q)
    for i, v in enumerate(colors):
        controls = [(n_color + q, b) for q, b in enumerate(_bits(i, n_pos))]
        for cq, bit in enumerate(_bits(int(v), n_color)):
            if bit:
                circ.append(Gate("MCRY", (cq,), math.pi, tuple(controls)))
    return circ


def gneqr_encode(img, depth: int = 8) -> EncodingResult:
    """Rectangular NEQR: 2^n_y rows by 2^n_x columns."""
    img = as_image(img, depth)
    ny, nx = _pow2_exponent(img.height), _pow2_exponent(img.width)
    n_pos = nx + ny
    d = img.depth
    flat = img.pixels.reshape(-1)
    amps = np.zeros(2 ** (d + n_pos))
    amps[flat * 2**n_pos + np.arange(flat.size)] = 1.0 / math.sqrt(2**n_pos)
    layout = RegisterLayout((2,) * (d + n_pos),
                            ("color",) * d + ("position-y",) * ny + ("position-x",) * nx)
    circ = _basis_color_circuit(d, n_pos, flat)
    return EncodingResult(StateVector(layout, amps), circ, _meta("gneqr", img))


def neqr_encode(img, depth: int = 8) -> EncodingResult:
    img = as_image(img, depth)
    _square_exponent(img, 2)
    res = gneqr_encode(img)
    return EncodingResult(res.state, res.circuit, _meta("neqr", img))


def _neqr_split(state: StateVector) -> tuple[int, int]:
    labels = state.layout.labels
    d = labels.count("color")
    n_pos = len(labels) - d
    if d == 0 or labels[:d] != ("color",) * d or not state.layout.all_qubits:
        raise FormatError("not an NEQR register")
    return d, n_pos


def neqr_decode_exact(state: StateVector, meta: dict | None = None) -> np.ndarray:
    d, n_pos = _neqr_split(state)
    grid = state.amplitudes.reshape(2**d, 2**n_pos)
    nz = np.abs(grid) > AMP_TOL
    per_pos = nz.sum(axis=0)
    if np.any(per_pos != 1):
        bad = int(np.flatnonzero(per_pos != 1)[0])
        raise FormatError(f"position {bad} has {per_pos[bad]} nonzero color amplitudes")
    px = np.argmax(nz, axis=0).astype(np.int64)
    return px.reshape(_grid(meta or {}, 2**n_pos))


def neqr_decode_sampled(state: StateVector, meta: dict | None = None, seed: int = 0,
                        shot_cap: int = DEFAULT_SHOT_CAP):
    """Measure until every position has been seen once; returns (image, shots).

    Each shot fixes its pixel exactly, so this is a coupon-collector process
    over the 2^(2n) positions.
    """
    d, n_pos = _neqr_split(state)
    if n_pos == 0:
        raise ShapeError("no position qubits to sample over")
    n_positions = 2**n_pos
    px = np.full(n_positions, -1, dtype=np.int64)
    missing = n_positions
    for start, outcomes in iter_outcomes(state, seed, shot_cap):
        colors, positions = np.divmod(outcomes, n_positions)
        known = px[positions]
        lo = np.full(n_positions, np.iinfo(np.int64).max)
        hi = np.full(n_positions, -1)
        np.minimum.at(lo, positions, colors)
        np.maximum.at(hi, positions, colors)
        if np.any((known >= 0) & (known != colors)) or np.any((hi >= 0) & (lo != hi)):
            raise FormatError("a position was observed with two different colors")
        uniq, first = np.unique(positions, return_index=True)
        fresh = px[uniq] < 0
        if not fresh.any():
            continue
        px[uniq[fresh]] = colors[first[fresh]]
        missing -= int(fresh.sum())
        if missing == 0:
            used = start + int(first[fresh].max()) + 1
            return px.reshape(_grid(meta or {}, n_positions)), used
    raise SamplingTimeoutError(f"not all positions observed within {shot_cap} shots")


# --- QPIE ---------------------------------------------------------------------


def qpie_encode(img, depth: int = 8) -> EncodingResult:
    """Amplitude encoding of the row-major pixel vector (zero-padded)."""
    img = as_image(img, depth)
    flat = img.pixels.reshape(-1).astype(float)
    if not np.any(flat):
        raise DegenerateInputError("all-zero image has no QPIE state")
    padded = pad_to_power_of_two(flat)
    amps = padded / np.linalg.norm(padded)
    n = padded.size.bit_length() - 1
    ny, nx = _log(img.height, 2), _log(img.width, 2)
    if ny is not None and nx is not None:
        labels = ("row",) * ny + ("col",) * nx
    else:
        labels = ("pixel",) * n
    circ = prep_circuit_from_tree(build_prep_tree(amps)) if n else None
    return EncodingResult(StateVector(RegisterLayout((2,) * n, labels), amps),
                          circ, _meta("qpie", img))


def qpie_qft2d_circuit(layout: RegisterLayout) -> Circuit:
    rows, cols = layout.indices("row"), layout.indices("col")
    if not rows and not cols:
        raise UnsupportedLayoutError("layout has no row/column qubit split")
    circ = Circuit(layout.n_subsystems)
    if rows:
        circ.qft(rows)
    if cols:
        circ.qft(cols)
    return circ


def qpie_qft2d(state: StateVector, layout: RegisterLayout | None = None) -> StateVector:
    """QFT on the row qubits, then on the column qubits."""
    layout = layout or state.layout
    if "pixel" in layout.labels or not set(layout.labels) <= {"row", "col"}:
        raise UnsupportedLayoutError("2D QFT needs a power-of-two row/column register")
    return simulate(qpie_qft2d_circuit(layout), state)


# --- BRQI ---------------------------------------------------------------------


def bitplanes(img, depth: int = 8) -> np.ndarray:
    """Array of shape (depth, rows, cols); plane b holds bit b of every pixel."""
    img = as_image(img, depth)
    b = np.arange(img.depth)[:, None, None]
    return (img.pixels[None, :, :] >> b) & 1


BRQI_PLANE_QUBITS = 3


def brqi_encode(img, depth: int = 8) -> EncodingResult:
    img = as_image(img, depth)
    if img.depth != 8:
        raise UnsupportedDepthError("BRQI is defined for 8-bit images only")
    k, n = _pow2_exponent(img.height), _pow2_exponent(img.width)
    planes = bitplanes(img)                                   # [b, x, y]
    bits = np.transpose(planes, (1, 2, 0)).reshape(-1)        # index x, y, b
    n_rest = k + n + BRQI_PLANE_QUBITS
    amps = np.zeros(2 ** (1 + n_rest))
    amps[bits * 2**n_rest + np.arange(bits.size)] = 1 / math.sqrt(2**n_rest)
    layout = RegisterLayout((2,) * (1 + n_rest),
                            ("color",) + ("position-x",) * k + ("position-y",) * n
                            + ("bitplane",) * BRQI_PLANE_QUBITS)
    circ = _basis_color_circuit(1, n_rest, bits)
    return EncodingResult(StateVector(layout, amps), circ, _meta("brqi", img))


def brqi_decode_exact(state: StateVector, meta: dict | None = None) -> np.ndarray:
    labels = state.layout.labels
    if labels[:1] != ("color",) or labels.count("bitplane") != BRQI_PLANE_QUBITS:
        raise FormatError("not a BRQI register")
    n_rest = len(labels) - 1
    grid = np.abs(state.amplitudes.reshape(2, 2**n_rest)) > AMP_TOL
    if np.any(grid.sum(axis=0) != 1):
        raise FormatError("ambiguous BRQI color bit")
    bits = grid[1].astype(np.int64).reshape(-1, 8)            # [(x, y), b]
    px = (bits << np.arange(8)).sum(axis=1)
    return px.reshape(_grid(meta or {}, px.size))


# --- qutrit registers ---------------------------------------------------------


def _qutrit_layout(n: int, n_color: int = 1) -> RegisterLayout:
    return RegisterLayout((3,) * (n_color + 2 * n),
                          ("color",) * n_color + ("position-y",) * n + ("position-x",) * n)


def qutrit_frqi_encode(img, depth: int = 8) -> EncodingResult:
    img = as_image(img, depth)
    n = _square_exponent(img, 3)
    theta = pixel_angles(img)
    amps = np.concatenate([np.cos(theta), np.sin(theta), np.zeros_like(theta)]) / 3**n
    return EncodingResult(StateVector(_qutrit_layout(n), amps), None,
                          _meta("qutrit-frqi", img))


def trits(value: int, width: int = QUTRIT_COLOR_TRITS) -> list[int]:
    """Ternary digits, least significant first."""
    if not 0 <= value < 3**width:
        raise RangeError(f"{value} needs more than {width} trits")
    out = []
    for _ in range(width):
        value, r = divmod(value, 3)
        out.append(r)
    return out


def qutrit_neqr_accumulation(img, depth: int = 8) -> np.ndarray:
    """Unnormalised sum over trit planes b and positions i of |C_b^i>|i>."""
    img = as_image(img, depth)
    n = _square_exponent(img, 3)
    flat = img.pixels.reshape(-1)
    acc = np.zeros((3, flat.size))
    for i, v in enumerate(flat):
        for t in trits(int(v)):
            acc[t, i] += 1
    return acc.reshape(-1)


def qutrit_neqr_encode(img, depth: int = 8) -> EncodingResult:
    """Renormalised trit accumulation on 2 color + 2n position qutrits."""
    img = as_image(img, depth)
    if img.pixels.max() > 255:
        raise RangeError("qutrit NEQR stores at most 8-bit values")
    n = _square_exponent(img, 3)
    acc = qutrit_neqr_accumulation(img).reshape(3, -1)
    full = np.zeros((3**QUTRIT_NEQR_COLOR_QUTRITS, acc.shape[1]))
    full[:3] = acc
    amps = full.reshape(-1) / np.linalg.norm(acc)
    layout = _qutrit_layout(n, QUTRIT_NEQR_COLOR_QUTRITS)
    return EncodingResult(StateVector(layout, amps), None,
                          _meta("qutrit-neqr", img, trits=QUTRIT_COLOR_TRITS))


ENCODERS = {
    "frqi": frqi_encode,
    "neqr": neqr_encode,
    "gneqr": gneqr_encode,
    "qpie": qpie_encode,
    "brqi": brqi_encode,
    "qutrit-frqi": qutrit_frqi_encode,
    "qutrit-neqr": qutrit_neqr_encode,
}
