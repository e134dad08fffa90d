"""Phase-estimation circuits built from H, X, cX, a controlled phase gate, and W gates.

Layout: a main register on qubits 0..t-1 (qubit 0 carries the most
significant estimate bit) plus a single phase qubit t. The phase qubit is
flipped to |1>, the eigenstate of every phase gate, so eigenstate
preparation costs one X. Controlled powers are realized as literal
repetitions of one cP(θ) gate, which keeps the aliased form down to a
single dictionary entry for the phase gate. The inverse QFT uses signed
W gates and spells its bit-reversal swaps as trios of cX gates.

The estimated quantity is φ = θ/(2π); "bit k" of a phase means the k-th
binary digit of φ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, GateApplication
from .errors import IndistinguishablePhasesError, ResourceLimitError
from .gates import CX, H, X, controlled_phase_gate

# Repetition-based controlled powers cost 2^t - 1 gates; cap the register.
MAX_MAIN_REGISTER = 12

TWO_PI = 2 * math.pi


def required_register_size(k: int, epsilon: float) -> int:
    """Main-register size giving the first k bits with failure probability <= ε.

    Standard boosting bound: k estimate bits plus ceil(log2(2 + 1/(2ε)))
    extra qubits.
    """
    if k < 1:
        raise ValueError(f"bit count must be >= 1, got {k}")
    if not 0 < epsilon < 0.5:
        raise ValueError(f"failure bound must lie in (0, 1/2), got {epsilon}")
    return k + math.ceil(math.log2(2 + 1 / (2 * epsilon)))


@dataclass(frozen=True)
class QpeSpec:
    """Derived parameters of one phase-estimation build."""

    theta: float
    phi: float
    k: int
    epsilon: float
    t: int
    total_qubits: int

    @classmethod
    def for_phase(cls, theta: float, k: int, epsilon: float) -> "QpeSpec":
        if not 0 < theta < TWO_PI:
            raise ValueError(f"phase must lie in (0, 2π), got {theta}")
        t = required_register_size(k, epsilon)
        return cls(theta=theta, phi=theta / TWO_PI, k=k, epsilon=epsilon, t=t, total_qubits=t + 1)


def build_qpe(theta: float, t: int) -> Circuit:
    """Phase-estimation circuit for cP(theta) with a t-qubit main register."""
    if not 1 <= t <= MAX_MAIN_REGISTER:
        raise ResourceLimitError(f"main register size {t} outside [1, {MAX_MAIN_REGISTER}]")
    if not math.isfinite(theta):
        raise ValueError(f"phase must be finite, got {theta}")
    phase_qubit = t
    cp = controlled_phase_gate(theta)
    ops: list[GateApplication] = [GateApplication(X, (phase_qubit,))]
    ops.extend(GateApplication(H, (q,)) for q in range(t))
    for j in range(t):
        ops.extend(GateApplication(cp, (j, phase_qubit)) for _ in range(2 ** (t - 1 - j)))
    ops.extend(_inverse_qft(t))
    return Circuit(t + 1, tuple(ops))


def _swap_trio(a: int, b: int) -> list[GateApplication]:
    return [
        GateApplication(CX, (a, b)),
        GateApplication(CX, (b, a)),
        GateApplication(CX, (a, b)),
    ]


def _inverse_qft(t: int) -> list[GateApplication]:
    """Inverse QFT on qubits 0..t-1, MSB at qubit 0; only H, cX, and W gates."""
    ops: list[GateApplication] = []
    for a in range(t // 2):
        ops.extend(_swap_trio(a, t - 1 - a))
    for i in range(t - 1, -1, -1):
        for j in range(t - 1, i, -1):
            w = controlled_phase_gate(-math.pi / 2 ** (j - i))
            ops.append(GateApplication(w, (j, i)))
        ops.append(GateApplication(H, (i,)))
    return ops


def build_separation_circuit(theta: float, k: int, epsilon: float) -> Circuit:
    """QPE sized by required_register_size, then bit k swapped onto qubit 0.

    The swap is a trio of cX gates between qubits 0 and k-1; for k = 1 the
    swap is with itself and nothing is appended.
    """
    t = required_register_size(k, epsilon)
    base = build_qpe(theta, t)
    if k == 1:
        return base
    return Circuit(base.n, base.ops + tuple(_swap_trio(0, k - 1)))


def phase_bit(phi: float, k: int) -> int:
    """The k-th binary digit of φ in (0, 1): floor(φ·2^k) mod 2, exactly."""
    num, den = phi.as_integer_ratio()
    return ((num << k) // den) & 1


def first_differing_bit(phi_x: float, phi_y: float) -> int:
    """Smallest k >= 1 at which the binary expansions of the two fractions differ."""
    for value in (phi_x, phi_y):
        if not 0 < value < 1:
            raise ValueError(f"fraction must lie in (0, 1), got {value}")
    for k in range(1, 65):
        if phase_bit(phi_x, k) != phase_bit(phi_y, k):
            return k
    raise IndistinguishablePhasesError(
        f"{phi_x!r} and {phi_y!r} agree in their first 64 bits"
    )
