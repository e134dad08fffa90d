"""Gate values as unitary matrices, named constructors, and phase-power classification.

Gates are compared entrywise at a fixed tolerance, with no global-phase
quotient: two gates whose matrices differ by an overall phase factor are
distinct. Phase gates of the special form P(±π/2^k) / cP(±π/2^k) are the
"W" gates; they are never stored in gate dictionaries and get their own
intrinsic alias syntax in instance strings.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

# Entrywise matrix comparison tolerance: far above double-precision noise on
# 4x4 products, far below any gate distinction this package cares about.
MATRIX_TOL = 1e-12

_SQRT2_INV = 1 / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class Gate:
    """A 1- or 2-qubit unitary.

    ``name`` is a symbolic label ("H", "X", "cX", "cH", "P", "cP") used for
    text rendering; phase gates additionally carry ``theta`` so their text
    form round-trips without extracting the angle from the matrix.
    """

    arity: int
    matrix: np.ndarray
    name: str | None = None
    theta: float | None = None

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"gate arity must be 1 or 2, got {self.arity}")
        m = np.array(self.matrix, dtype=complex)
        dim = 2 ** self.arity
        if m.shape != (dim, dim):
            raise ValueError(f"arity-{self.arity} gate needs a {dim}x{dim} matrix, got {m.shape}")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(dim)))
        if defect > MATRIX_TOL:
            raise ValueError(f"matrix is not unitary (max |U†U - I| = {defect:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        return gates_equal(self, other)

    # Tolerance-based equality cannot honor the hash contract.
    __hash__ = None

    def __repr__(self):
        if self.name in ("P", "cP"):
            return f"Gate({self.name}({self.theta!r}))"
        return f"Gate({self.name or f'<{self.arity}q>'})"


def gates_equal(a: Gate, b: Gate) -> bool:
    """True iff same arity and matrices agree entrywise within MATRIX_TOL."""
    if a.arity != b.arity:
        return False
    return float(np.max(np.abs(a.matrix - b.matrix))) <= MATRIX_TOL


def phase_gate(theta: float) -> Gate:
    """diag(1, e^{iθ}), the 1-qubit phase gate P(θ)."""
    if not math.isfinite(theta):
        raise ValueError(f"phase angle must be finite, got {theta}")
    m = np.diag([1.0, np.exp(1j * theta)])
    return Gate(1, m, name="P", theta=float(theta))


def controlled_phase_gate(theta: float) -> Gate:
    """diag(1, 1, 1, e^{iθ}), the 2-qubit controlled phase gate cP(θ)."""
    if not math.isfinite(theta):
        raise ValueError(f"phase angle must be finite, got {theta}")
    m = np.diag([1.0, 1.0, 1.0, np.exp(1j * theta)])
    return Gate(2, m, name="cP", theta=float(theta))


H = Gate(1, np.array([[1, 1], [1, -1]]) * _SQRT2_INV, name="H")
X = Gate(1, np.array([[0, 1], [1, 0]]), name="X")
CX = Gate(2, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), name="cX")
CH = Gate(
    2,
    np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, _SQRT2_INV, _SQRT2_INV],
            [0, 0, _SQRT2_INV, -_SQRT2_INV],
        ]
    ),
    name="cH",
)


@dataclass(frozen=True)
class WClass:
    """Identifies a gate as P(sign·π/2^k) (or cP when controlled)."""

    controlled: bool
    sign: int
    k: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.k < 1:
            raise ValueError(f"exponent k must be >= 1, got {self.k}")

    @property
    def theta(self) -> float:
        return self.sign * math.pi / 2**self.k

    def to_gate(self) -> Gate:
        if self.controlled:
            return controlled_phase_gate(self.theta)
        return phase_gate(self.theta)


def classify_w(g: Gate, n: int) -> WClass | None:
    """Return the W classification of ``g`` for an n-qubit circuit, or None.

    A gate is a W gate when its matrix equals P(±π/2^k) / cP(±π/2^k) for
    some integer k in [1, n-1]. The smallest matching k wins (matches are
    unique well beyond MATRIX_TOL for the k range in play, so this is a
    tie-break formality).
    """
    if n < 2:
        raise ValueError(f"qubit count must be >= 2, got {n}")
    controlled = g.arity == 2
    # Off-diagonal entries disqualify immediately; saves building candidates.
    if np.max(np.abs(g.matrix - np.diag(np.diag(g.matrix)))) > MATRIX_TOL:
        return None
    for k in range(1, n):
        for sign in (1, -1):
            candidate = WClass(controlled=controlled, sign=sign, k=k)
            if gates_equal(g, candidate.to_gate()):
                return candidate
    return None


# --------------------------------------------------------------------------
# Gate text forms, as used in circuit and dictionary files:
#   H | X | cX | cH | P(<angle>) | cP(<angle>)
# where <angle> is a decimal of up to 17 significant digits, or the token
# "pi" scaled by a rational, e.g. pi/4, 3pi/8, -pi/4, 2pi.
# --------------------------------------------------------------------------

_NAMED_GATES = {"H": H, "X": X, "cX": CX, "cH": CH}
_PI_FORM = re.compile(r"^(-?)(\d*)pi(?:/(\d+))?$")
_PHASE_FORM = re.compile(r"^(c?P)\((.+)\)$")


def parse_angle(text: str) -> float:
    """Parse a decimal or pi-rational angle literal to radians."""
    m = _PI_FORM.match(text)
    if m:
        sign = -1.0 if m.group(1) else 1.0
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return sign * num * math.pi / den
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"unparseable angle {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {text!r}")
    return value


def parse_gate_text(text: str) -> Gate:
    """Parse a gate text form to a Gate."""
    named = _NAMED_GATES.get(text)
    if named is not None:
        return named
    m = _PHASE_FORM.match(text)
    if m:
        theta = parse_angle(m.group(2))
        if m.group(1) == "P":
            return phase_gate(theta)
        return controlled_phase_gate(theta)
    raise ValueError(f"unrecognized gate text {text!r}")


def format_gate_text(g: Gate, precision: int = 17) -> str:
    """Render a gate's text form; angles at ``precision`` significant digits.

    At the default precision the decimal is ``repr``-exact and the form
    round-trips through parse_gate_text; lower precisions are display-only.
    """
    if not 1 <= precision <= 17:
        raise ValueError(f"precision must be in [1, 17], got {precision}")
    if g.name in _NAMED_GATES:
        return g.name
    if g.name in ("P", "cP") and g.theta is not None:
        angle = repr(g.theta) if precision == 17 else f"{g.theta:.{precision}g}"
        return f"{g.name}({angle})"
    raise ValueError(f"gate {g!r} has no text form")
