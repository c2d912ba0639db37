"""Encode classical data as qubit/qutrit state vectors and preparation circuits."""
from .circuit import Circuit, Gate, ShotRecord, apply_mcry, sample, simulate
from .composite import product_encode, sum_encode, sum_select
from .graph import Graph, edge_unitary, graph_state
from .image import (
    Image,
    bitplanes,
    brqi_encode,
    frqi_decode_exact,
    frqi_encode,
    frqi_prep_circuit,
    gneqr_encode,
    neqr_decode_exact,
    neqr_decode_sampled,
    neqr_encode,
    qpie_encode,
    qpie_qft2d,
    qutrit_frqi_encode,
    qutrit_neqr_encode,
)
from .preprocess import bag_of_words, one_hot, ordinal_encode
from .result import EncodingResult
from .scalar import encode_angle, encode_basis_integer, encode_complex, encode_fixed_point
from .statevec import (
    RegisterLayout,
    StateVector,
    basis_state,
    fidelity,
    inner_product,
    kron,
    normalize,
)
from .vector import (
    build_prep_tree,
    encode_amplitude,
    encode_angle_vector,
    encode_timeseries,
    pad_to_power_of_two,
    prep_circuit_from_tree,
    vectorize_matrix,
)

__version__ = "0.1.0"
