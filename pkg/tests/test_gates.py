"""Tests for gate construction, comparison, and W classification."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aqce.gates import (
    CH,
    CX,
    H,
    WClass,
    X,
    classify_w,
    controlled_phase_gate,
    format_gate_text,
    gates_equal,
    parse_angle,
    parse_gate_text,
    phase_gate,
)

SQRT2_INV = 1 / math.sqrt(2)


def test_phase_gate_zero_is_identity():
    np.testing.assert_allclose(phase_gate(0).matrix, np.eye(2), atol=1e-15)


def test_phase_gate_pi_is_z():
    np.testing.assert_allclose(phase_gate(math.pi).matrix, np.diag([1, -1]), atol=1e-12)


def test_phase_gate_quarter_pi():
    # e^{i*pi/4} = (1+i)/sqrt(2)
    expected = np.diag([1, (1 + 1j) * SQRT2_INV])
    np.testing.assert_allclose(phase_gate(math.pi / 4).matrix, expected, atol=1e-15)


def test_controlled_phase_gate_pi_is_cz():
    np.testing.assert_allclose(
        controlled_phase_gate(math.pi).matrix, np.diag([1, 1, 1, -1]), atol=1e-12
    )


def test_controlled_phase_gate_quarter_pi():
    # diag(1, 1, 1, e^{i*pi/2^k}) with k = 2
    expected = np.diag([1, 1, 1, np.exp(1j * math.pi / 4)])
    np.testing.assert_allclose(controlled_phase_gate(math.pi / 4).matrix, expected, atol=1e-15)


def test_controlled_phase_gate_zero_is_identity():
    np.testing.assert_allclose(controlled_phase_gate(0).matrix, np.eye(4), atol=1e-15)


@pytest.mark.parametrize("theta", [math.nan, math.inf, -math.inf])
def test_non_finite_angles_rejected(theta):
    with pytest.raises(ValueError):
        phase_gate(theta)
    with pytest.raises(ValueError):
        controlled_phase_gate(theta)


@given(st.floats(min_value=-100, max_value=100, allow_nan=False))
def test_phase_gates_unitary(theta):
    for gate in (phase_gate(theta), controlled_phase_gate(theta)):
        dim = 2**gate.arity
        defect = np.max(np.abs(gate.matrix.conj().T @ gate.matrix - np.eye(dim)))
        assert defect <= 1e-12


@pytest.mark.parametrize("gate,dim", [(H, 2), (X, 2), (CX, 4), (CH, 4)])
def test_named_gates_unitary(gate, dim):
    np.testing.assert_allclose(gate.matrix.conj().T @ gate.matrix, np.eye(dim), atol=1e-12)


def test_non_unitary_matrix_rejected():
    from aqce.gates import Gate

    with pytest.raises(ValueError, match="unitary"):
        Gate(1, np.array([[1, 0], [0, 2]]))


def test_classify_w_controlled_quarter_pi():
    w = classify_w(controlled_phase_gate(math.pi / 4), 8)
    assert w == WClass(controlled=True, sign=1, k=2)


def test_classify_w_rejects_hadamard():
    assert classify_w(H, 8) is None


def test_classify_w_range_bound():
    assert classify_w(phase_gate(math.pi / 2**9), 8) is None


def test_classify_w_negative_sign():
    w = classify_w(phase_gate(-math.pi / 8), 5)
    assert w == WClass(controlled=False, sign=-1, k=3)


@pytest.mark.parametrize("n", range(2, 14))
@pytest.mark.parametrize("k", range(1, 13))
def test_classify_w_exactly_in_range(n, k):
    w = classify_w(phase_gate(math.pi / 2**k), n)
    if 1 <= k <= n - 1:
        assert w is not None and w.k == k and w.sign == 1 and not w.controlled
    else:
        assert w is None


@pytest.mark.parametrize("controlled", [False, True])
@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("k", [1, 2, 5, 11])
def test_classify_w_round_trip(controlled, sign, k):
    original = WClass(controlled=controlled, sign=sign, k=k)
    w = classify_w(original.to_gate(), 13)
    assert w == original
    assert gates_equal(w.to_gate(), original.to_gate())


def test_gates_equal_reflexive():
    assert gates_equal(H, H)


def test_gates_equal_within_tolerance():
    assert gates_equal(phase_gate(1.0), phase_gate(1.0 + 1e-15))


def test_gates_equal_no_global_phase_quotient():
    from aqce.gates import Gate

    minus_x = Gate(1, -X.matrix)
    assert not gates_equal(X, minus_x)


def test_gates_equal_distinguishes_arity():
    assert not gates_equal(H, CH)


@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_gates_equal_symmetric(theta):
    a, b = phase_gate(theta), phase_gate(theta + 1e-14)
    assert gates_equal(a, b) == gates_equal(b, a)


def test_gates_equal_transitive_on_tight_triples():
    # Pairwise distances <= 1e-13 keep the tolerance relation transitive.
    triples = [(0.0, 4e-14, 8e-14), (1.5, 1.5 + 5e-14, 1.5 + 1e-13)]
    for t0, t1, t2 in triples:
        a, b, c = phase_gate(t0), phase_gate(t1), phase_gate(t2)
        assert gates_equal(a, b) and gates_equal(b, c) and gates_equal(a, c)


# -- gate text forms --------------------------------------------------------


@pytest.mark.parametrize("text,gate", [("H", H), ("X", X), ("cX", CX), ("cH", CH)])
def test_named_gate_text_round_trip(text, gate):
    parsed = parse_gate_text(text)
    assert gates_equal(parsed, gate)
    assert format_gate_text(parsed) == text


@pytest.mark.parametrize(
    "text,value",
    [
        ("pi/4", math.pi / 4),
        ("3pi/8", 3 * math.pi / 8),
        ("-pi/4", -math.pi / 4),
        ("2pi", 2 * math.pi),
        ("pi", math.pi),
        ("0.5", 0.5),
        ("-1.25e-3", -1.25e-3),
    ],
)
def test_parse_angle_forms(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=0)


@pytest.mark.parametrize("text", ["", "pie", "pi/0", "inf", "nan", "1/2"])
def test_parse_angle_rejects(text):
    with pytest.raises(ValueError):
        parse_angle(text)


@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_phase_gate_text_round_trip(theta):
    for gate in (phase_gate(theta), controlled_phase_gate(theta)):
        assert gates_equal(parse_gate_text(format_gate_text(gate)), gate)


def test_format_gate_text_precision():
    assert format_gate_text(phase_gate(math.pi), 5) == "P(3.1416)"


def test_parse_gate_text_rejects_garbage():
    for text in ["Q", "P()", "P(x)", "cP", "h"]:
        with pytest.raises(ValueError):
            parse_gate_text(text)
