import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import kron_loop
from qencode.errors import DegenerateInputError, RangeError, ShapeError
from qencode.statevec import (
    RegisterLayout,
    StateVector,
    basis_state,
    fidelity,
    inner_product,
    kron,
    normalize,
)


def random_state(rng, dims):
    layout = RegisterLayout(dims, ["data"] * len(dims))
    v = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    return StateVector(layout, v / np.linalg.norm(v))


def test_basis_state_golden_101():
    s = basis_state(RegisterLayout.qubits(3), 5)
    assert s.amplitudes.tolist() == [0, 0, 0, 0, 0, 1, 0, 0]


def test_basis_state_trivial():
    assert basis_state(RegisterLayout.qubits(1), 0).amplitudes.tolist() == [1, 0]
    s = basis_state(RegisterLayout.qutrits(2), 4)
    assert s.dim == 9 and np.flatnonzero(s.amplitudes).tolist() == [4]


def test_basis_state_out_of_range():
    with pytest.raises(RangeError):
        basis_state(RegisterLayout.qubits(2), 4)


def test_layout_rejects_other_radices():
    with pytest.raises(ShapeError):
        RegisterLayout((2, 4), ("a", "b"))
    with pytest.raises(ShapeError):
        RegisterLayout((2, 2), ("a",))


def test_kron_golden():
    one, zero = (basis_state(RegisterLayout.qubits(1), i) for i in (1, 0))
    s = kron(kron(one, zero), one)
    assert s.amplitudes.tolist() == [0, 0, 0, 0, 0, 1, 0, 0]
    assert s.layout.local_dims == (2, 2, 2)


def test_kron_zero_prefix_block():
    rng = np.random.default_rng(1)
    psi = random_state(rng, (2, 3))
    s = kron(basis_state(RegisterLayout.qubits(1), 0), psi)
    np.testing.assert_array_equal(s.amplitudes[:6], psi.amplitudes)
    assert not np.any(s.amplitudes[6:])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([2, 3]), min_size=1, max_size=3),
       st.lists(st.sampled_from([2, 3]), min_size=1, max_size=3),
       st.integers(0, 2**32 - 1))
def test_kron_matches_loop_and_preserves_norm(da, db, seed):
    rng = np.random.default_rng(seed)
    a, b = random_state(rng, da), random_state(rng, db)
    s = kron(a, b)
    np.testing.assert_allclose(s.amplitudes, kron_loop(a.amplitudes, b.amplitudes), atol=1e-15)
    assert abs(s.norm() - a.norm() * b.norm()) < 1e-12


def test_kron_associative():
    rng = np.random.default_rng(2)
    a, b, c = (random_state(rng, d) for d in [(2,), (3, 2), (2, 3)])
    np.testing.assert_allclose(kron(kron(a, b), c).amplitudes, kron(a, kron(b, c)).amplitudes,
                               rtol=0, atol=1e-15)


@pytest.mark.parametrize("dims", [(2, 2, 2), (3, 2), (2, 3, 3)])
def test_basis_state_equals_digitwise_kron(dims):
    layout = RegisterLayout(dims, ["d"] * len(dims))
    for idx in range(layout.dim):
        parts = [basis_state(RegisterLayout((d,), ("d",)), dig)
                 for d, dig in zip(dims, layout.digits(idx))]
        s = parts[0]
        for p in parts[1:]:
            s = kron(s, p)
        np.testing.assert_array_equal(s.amplitudes, basis_state(layout, idx).amplitudes)
        assert layout.index(layout.digits(idx)) == idx


def test_inner_product():
    rng = np.random.default_rng(3)
    psi = random_state(rng, (2, 2))
    assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)
    l1 = RegisterLayout.qubits(1)
    assert inner_product(basis_state(l1, 0), basis_state(l1, 1)) == 0
    # conjugation on the left argument
    a = StateVector(l1, [1j, 0])
    b = StateVector(l1, [1, 0])
    assert inner_product(a, b) == -1j
    with pytest.raises(ShapeError):
        inner_product(psi, random_state(rng, (2,)))


def test_normalize_reference_values():
    np.testing.assert_allclose(normalize([1, 3, 0, 1]), np.array([1, 3, 0, 1]) / np.sqrt(11))
    np.testing.assert_allclose(normalize([0, 85, 170, 255]), [0, 0.267, 0.534, 0.801], atol=5e-3)
    e = np.array([0.6, 0.8])
    np.testing.assert_allclose(normalize(e), e)
    with pytest.raises(DegenerateInputError):
        normalize([0, 0])


def test_state_is_immutable():
    s = basis_state(RegisterLayout.qubits(1), 0)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2


def test_json_round_trip_format():
    rng = np.random.default_rng(4)
    s = random_state(rng, (3, 2))
    d = json.loads(s.to_json())
    assert set(d) == {"local_dims", "labels", "amplitudes"}
    assert d["local_dims"] == [3, 2]
    assert len(d["amplitudes"]) == 6 and len(d["amplitudes"][0]) == 2
    back = StateVector.from_json(s.to_json())
    assert fidelity(back, s) == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_array_equal(back.amplitudes, s.amplitudes)
