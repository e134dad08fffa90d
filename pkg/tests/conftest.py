"""Shared helpers: seeded random circuits and a brute-force unitary oracle.

The oracle builds each gate's full 2^n x 2^n matrix by explicit projector
embedding and multiplies them out; it shares no code with the simulator's
tensor contraction path.
"""

from __future__ import annotations

import math
import random

import numpy as np

from aqce.circuit import Circuit, GateApplication
from aqce.gates import CH, CX, H, X, controlled_phase_gate, phase_gate


def embed_gate(matrix: np.ndarray, args: tuple[int, ...], n: int) -> np.ndarray:
    """Full-register matrix of a gate on the given qubits (qubit 0 = MSB)."""
    dim = 2**n
    sub = len(args)
    full = np.zeros((dim, dim), dtype=complex)
    shifts = [n - 1 - q for q in args]
    for row in range(dim):
        rbits = 0
        base = row
        for s in shifts:
            rbits = (rbits << 1) | ((row >> s) & 1)
            base &= ~(1 << s)
        for cbits in range(2**sub):
            col = base
            for b, s in enumerate(shifts):
                if (cbits >> (sub - 1 - b)) & 1:
                    col |= 1 << s
            full[row, col] = matrix[rbits, cbits]
    return full


def oracle_unitary(c: Circuit) -> np.ndarray:
    u = np.eye(2**c.n, dtype=complex)
    for op in c.ops:
        u = embed_gate(op.gate.matrix, op.args, c.n) @ u
    return u


def oracle_state(c: Circuit) -> np.ndarray:
    return oracle_unitary(c)[:, 0]


def random_circuit(rng: random.Random, max_n: int = 6, max_gates: int = 30) -> Circuit:
    """Random circuit over {H, X, cX, cH, P(θ), cP(θ), W gates}."""
    n = rng.randint(1, max_n)
    ops = []
    for _ in range(rng.randint(0, max_gates)):
        choice = rng.randrange(7)
        if choice == 0:
            gate = H
        elif choice == 1:
            gate = X
        elif choice == 2:
            gate = CX if n >= 2 else X
        elif choice == 3:
            gate = CH if n >= 2 else H
        elif choice == 4:
            gate = phase_gate(rng.uniform(-2 * math.pi, 2 * math.pi))
        elif choice == 5:
            gate = controlled_phase_gate(rng.uniform(-2 * math.pi, 2 * math.pi)) if n >= 2 else phase_gate(rng.uniform(0, math.pi))
        else:
            k = rng.randint(1, max(1, n - 1))
            sign = rng.choice([1, -1])
            theta = sign * math.pi / 2**k
            if n >= 2 and rng.random() < 0.5:
                gate = controlled_phase_gate(theta)
            else:
                gate = phase_gate(theta)
        if gate.arity == 1:
            ops.append(GateApplication(gate, (rng.randrange(n),)))
        else:
            i, j = rng.sample(range(n), 2)
            ops.append(GateApplication(gate, (i, j)))
    return Circuit(n, tuple(ops))
