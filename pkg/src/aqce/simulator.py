"""Exact dense statevector simulation and the accept/reject promise decision.

Basis convention: qubit 0 is the most significant bit of the amplitude
index, so the "first qubit" of a register is the leading bit of every
basis label. All probabilities are computed analytically from amplitudes;
nothing here samples.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .codec import AqceInstance, GateDictionary, dealias
from .errors import ResourceLimitError

# Dense simulation cap: 2^24 complex doubles is ~256 MiB.
MAX_QUBITS = 24

ACCEPT_THRESHOLD = 2 / 3
REJECT_THRESHOLD = 1 / 3
# Probabilities landing within this band of a threshold never flip outcomes.
PROMISE_GUARD = 1e-9


@dataclass(frozen=True)
class Statevector:
    """Final amplitudes over the 2^n computational basis states."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got shape {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"statevector norm drifted: sum |amp|^2 = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)


class Outcome(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    PROMISE_VIOLATION = "PromiseViolation"


@dataclass(frozen=True)
class Decision:
    """Outcome of the promise question together with the exact probability."""

    outcome: Outcome
    p: float


def run(c: Circuit) -> Statevector:
    """Apply the circuit's gates in order to |0...0> and return the final state."""
    if c.n > MAX_QUBITS:
        raise ResourceLimitError(f"{c.n} qubits exceeds the {MAX_QUBITS}-qubit simulation cap")
    state = np.zeros([2] * c.n, dtype=complex)
    state[(0,) * c.n] = 1.0
    for op in c.ops:
        if op.gate.arity == 1:
            q = op.args[0]
            state = np.moveaxis(np.tensordot(op.gate.matrix, state, axes=([1], [q])), 0, q)
        else:
            i, j = op.args
            m = op.gate.matrix.reshape(2, 2, 2, 2)
            state = np.moveaxis(np.tensordot(m, state, axes=([2, 3], [i, j])), [0, 1], [i, j])
    return Statevector(c.n, state.reshape(-1))


def first_qubit_one_probability(sv: Statevector) -> float:
    """Probability of measuring |1> on qubit 0."""
    upper = sv.amps.reshape(2, -1)[1]
    return float(np.sum(np.abs(upper) ** 2))


def measurement_distribution(sv: Statevector, qubits: list[int]) -> dict[str, float]:
    """Marginal distribution over the listed qubits, bitstrings ordered as listed."""
    qubits = [int(q) for q in qubits]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit index in {qubits}")
    for q in qubits:
        if not 0 <= q < sv.n:
            raise ValueError(f"qubit index {q} out of range for n={sv.n}")
    if not qubits:
        return {"": 1.0}
    probs = (np.abs(sv.amps) ** 2).reshape([2] * sv.n)
    drop = tuple(ax for ax in range(sv.n) if ax not in qubits)
    if drop:
        probs = probs.sum(axis=drop)
    kept = sorted(qubits)
    probs = np.transpose(probs, [kept.index(q) for q in qubits]).reshape(-1)
    width = len(qubits)
    return {format(idx, f"0{width}b"): float(p) for idx, p in enumerate(probs)}


def decide(inst: AqceInstance, d: GateDictionary) -> Decision:
    """De-alias, simulate, and answer the promise question about qubit 0."""
    p = first_qubit_one_probability(run(dealias(inst, d)))
    if p >= ACCEPT_THRESHOLD - PROMISE_GUARD:
        outcome = Outcome.ACCEPT
    elif p <= REJECT_THRESHOLD + PROMISE_GUARD:
        outcome = Outcome.REJECT
    else:
        outcome = Outcome.PROMISE_VIOLATION
    return Decision(outcome, p)
