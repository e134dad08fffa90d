"""Tests for layering, canonical encoding, and circuit files."""

import math
import random

import numpy as np
import pytest

from aqce.circuit import (
    CanonicalEncoding,
    Circuit,
    GateApplication,
    canonical_encode,
    circuits_equal,
    decode,
    encodings_equal,
    format_circuit_file,
    layer,
    parse_circuit_file,
    render,
)
from aqce.errors import FileFormatError
from aqce.gates import CX, H, X, controlled_phase_gate, phase_gate

from conftest import oracle_unitary, random_circuit


def _app(gate, *args):
    return GateApplication(gate, args)


def test_disjoint_single_qubit_gates_share_a_layer():
    c = Circuit(2, (_app(H, 0), _app(H, 1)))
    layers = layer(c)
    assert len(layers) == 1 and len(layers[0]) == 2


def test_shared_control_shares_a_layer():
    c = Circuit(3, (_app(CX, 0, 1), _app(CX, 0, 2)))
    layers = layer(c)
    assert len(layers) == 1 and len(layers[0]) == 2


def test_same_qubit_non_control_splits_layers():
    c = Circuit(1, (_app(H, 0), _app(X, 0)))
    assert len(layer(c)) == 2


def test_control_then_target_splits_layers():
    # Qubit 0 is the control of the first gate but the target of the second.
    c = Circuit(3, (_app(CX, 0, 1), _app(CX, 2, 0)))
    assert len(layer(c)) == 2


def test_target_then_control_splits_layers():
    c = Circuit(3, (_app(CX, 2, 0), _app(CX, 0, 1)))
    assert len(layer(c)) == 2


def test_every_op_lands_in_exactly_one_layer():
    rng = random.Random(7)
    for _ in range(50):
        c = random_circuit(rng)
        layers = layer(c)
        flattened = [op for group in layers for op in group]
        assert len(flattened) == len(c.ops)


def test_encode_hadamard_then_cnot():
    c = Circuit(2, (_app(H, 0), _app(CX, 0, 1)))
    assert render(canonical_encode(c)) == "2 H[0] cX[0,1]"


def test_encode_orders_shared_control_by_second_argument():
    c = Circuit(3, (_app(CX, 0, 2), _app(CX, 0, 1)))
    enc = canonical_encode(c)
    assert [op.args for op in enc.tokens] == [(0, 1), (0, 2)]


def test_encode_empty_circuit():
    assert render(canonical_encode(Circuit(1))) == "1"


def test_encode_sorts_by_smallest_argument():
    c = Circuit(3, (_app(X, 2), _app(H, 0)))
    enc = canonical_encode(c)
    assert [op.args for op in enc.tokens] == [(0,), (2,)]


def test_decode_preserves_token_order():
    c = Circuit(3, (_app(X, 2), _app(H, 0)))
    enc = canonical_encode(c)
    decoded = decode(enc)
    assert decoded.n == 3
    assert tuple(op.args for op in decoded.ops) == ((0,), (2,))


def test_render_precision():
    c = Circuit(1, (_app(phase_gate(math.pi), 0),))
    assert render(canonical_encode(c), 5) == "1 P(3.1416)[0]"


def test_render_empty_four_qubits():
    assert render(CanonicalEncoding(4, ())) == "4"


def test_encoding_idempotent_over_random_circuits():
    rng = random.Random(11)
    for _ in range(500):
        c = random_circuit(rng)
        enc = canonical_encode(c)
        again = canonical_encode(decode(enc))
        assert encodings_equal(enc, again)


def test_layering_preserves_circuit_unitary():
    rng = random.Random(13)
    for _ in range(60):
        c = random_circuit(rng, max_n=4, max_gates=12)
        u_before = oracle_unitary(c)
        u_after = oracle_unitary(decode(canonical_encode(c)))
        assert np.max(np.abs(u_before - u_after)) <= 1e-10


def test_within_layer_permutation_invariance():
    rng = random.Random(17)
    checked = 0
    while checked < 40:
        c = random_circuit(rng)
        enc = canonical_encode(c)
        layers = layer(decode(enc))
        wide = [idx for idx, group in enumerate(layers) if len(group) >= 2]
        if not wide:
            continue
        target = rng.choice(wide)
        shuffled = []
        for idx, group in enumerate(layers):
            group = list(group)
            if idx == target:
                rng.shuffle(group)
            shuffled.extend(group)
        permuted = Circuit(c.n, tuple(shuffled))
        assert encodings_equal(canonical_encode(permuted), enc)
        checked += 1


def test_sort_keys_distinct_within_layers():
    rng = random.Random(19)
    for _ in range(200):
        c = random_circuit(rng)
        for group in layer(c):
            keys = [(min(op.args), max(op.args)) for op in group]
            assert len(keys) == len(set(keys))


def test_application_validates_arity_and_indices():
    with pytest.raises(ValueError):
        GateApplication(H, (0, 1))
    with pytest.raises(ValueError):
        GateApplication(CX, (1, 1))
    with pytest.raises(ValueError):
        GateApplication(X, (-1,))


def test_circuit_validates_bounds():
    with pytest.raises(ValueError):
        Circuit(0)
    with pytest.raises(ValueError):
        Circuit(1, (_app(H, 1),))


# -- circuit files -----------------------------------------------------------


def test_circuit_file_round_trip():
    rng = random.Random(23)
    for _ in range(25):
        c = random_circuit(rng)
        restored = parse_circuit_file(format_circuit_file(c))
        assert circuits_equal(c, restored)


def test_circuit_file_comments_and_blanks():
    text = "# a comment\n\nn=2\nH 0\n# another\ncX 0 1\n"
    c = parse_circuit_file(text)
    assert c.n == 2 and len(c.ops) == 2
    assert c.ops[1].args == (0, 1)


def test_circuit_file_pi_angles():
    c = parse_circuit_file("n=3\ncP(pi/4) 0 2\n")
    expected = Circuit(3, (_app(controlled_phase_gate(math.pi / 4), 0, 2),))
    assert circuits_equal(c, expected)


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("H 0\n", 1),
        ("n=x\n", 1),
        ("n=2\nH\n", 2),
        ("n=2\nQ 0\n", 2),
        ("n=2\nH 0 1\n", 2),
        ("n=2\nH 5\n", 1),
    ],
)
def test_circuit_file_errors(text, line):
    with pytest.raises(FileFormatError) as err:
        parse_circuit_file(text)
    assert err.value.line == line
