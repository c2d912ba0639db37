"""Product types (tensor product) and sum types (tag-register superposition)."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate
from .errors import DegenerateInputError, EmptyBranchError, FormatError, RangeError
from .result import EncodingResult
from .statevec import RegisterLayout, StateVector, kron_all

WEIGHT_TOL = 1e-12


def _shift(circuit: Circuit, offset: int, width: int) -> Circuit:
    gates = [
        Gate(g.kind, tuple(q + offset for q in g.qubits), g.angle,
             tuple((q + offset, p) for q, p in g.controls))
        for g in circuit.gates
    ]
    return Circuit(width, gates)


def product_encode(parts: Sequence[EncodingResult]) -> EncodingResult:
    """Left-to-right Kronecker product; the first part is most significant."""
    if not parts:
        raise DegenerateInputError("product of zero parts")
    state = kron_all([p.state for p in parts])
    circ = None
    if state.layout.all_qubits and all(p.circuit is not None for p in parts):
        width = state.layout.n_subsystems
        circ = Circuit(width)
        offset = 0
        for p in parts:
            circ = circ + _shift(p.circuit, offset, width)
            offset += p.layout.n_subsystems
    meta = {"method": "product", "parts": [dict(p.meta) for p in parts]}
    return EncodingResult(state, circ, meta)


def _tag_qubits(k: int) -> int:
    return max(1, math.ceil(math.log2(k)))


def sum_encode(variants: Sequence[EncodingResult], weights=None) -> EncodingResult:
    """sum_t sqrt(p_t) |t> (x) |variant_t>, variants zero-padded to a common space.

    The branch register copies the layout of the largest variant; smaller
    variants occupy its leading basis indices. Weights are rescaled to sum 1.
    """
    k = len(variants)
    if k < 2:
        raise DegenerateInputError("a sum type needs at least two variants")
    if weights is None:
        w = np.full(k, 1.0 / k)
    else:
        w = np.asarray(weights, dtype=float).reshape(-1)
        if w.size != k:
            raise FormatError(f"{w.size} weights for {k} variants")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise RangeError("weights must be finite and non-negative")
        if w.sum() <= 0:
            raise DegenerateInputError("all-zero weight vector")
        w = w / w.sum()
    widest = max(variants, key=lambda v: v.state.dim)
    branch_dim = widest.state.dim
    n_tag = _tag_qubits(k)
    amps = np.zeros((2**n_tag, branch_dim), dtype=complex)
    for t, (v, p) in enumerate(zip(variants, w)):
        amps[t, : v.state.dim] = math.sqrt(p) * v.state.amplitudes
    layout = RegisterLayout.qubits(n_tag, "tag") + RegisterLayout(
        widest.layout.local_dims, ("branch",) * widest.layout.n_subsystems
    )
    meta = {
        "method": "sum",
        "weights": [float(x) for x in w],
        "variants": [
            {"local_dims": list(v.layout.local_dims), "labels": list(v.layout.labels),
             "layout": dict(v.meta)}
            for v in variants
        ],
    }
    return EncodingResult(StateVector(layout, amps.reshape(-1)), None, meta)


def tag_probabilities(result: EncodingResult) -> np.ndarray:
    n_tag = result.layout.labels.count("tag")
    return result.state.probabilities().reshape(2**n_tag, -1).sum(axis=1)


def sum_select(result: EncodingResult, tag: int) -> EncodingResult:
    """Project onto tag register = ``tag``, drop the tag, renormalise."""
    labels = result.layout.labels
    n_tag = labels.count("tag")
    if n_tag == 0 or labels[:n_tag] != ("tag",) * n_tag:
        raise FormatError("state has no leading tag register")
    if not 0 <= tag < 2**n_tag:
        raise RangeError(f"tag {tag} outside register")
    branch = result.state.amplitudes.reshape(2**n_tag, -1)[tag]
    norm = np.linalg.norm(branch)
    if norm <= WEIGHT_TOL:
        raise EmptyBranchError(f"tag {tag} has zero probability")
    variants = result.meta.get("variants")
    if variants and tag < len(variants):
        v = variants[tag]
        layout = RegisterLayout(v["local_dims"], v["labels"])
        meta = dict(v.get("layout", {}))
    else:
        layout = RegisterLayout(result.layout.local_dims[n_tag:], labels[n_tag:])
        meta = {}
    if np.linalg.norm(branch[layout.dim:]) > 1e-9 * norm:
        raise FormatError("branch has amplitude outside the variant's space")
    return EncodingResult(StateVector(layout, branch[: layout.dim] / norm), None, meta)
