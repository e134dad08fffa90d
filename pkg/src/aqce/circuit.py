"""Circuit representation, structural layering, and the canonical encoding.

The canonical encoding orders a circuit's gates layer by layer. A layer is
a group of gates that can act simultaneously: supports pairwise disjoint,
except that two 2-qubit gates may share one qubit when it is the first
argument (the control) of both. Within a layer, gates sort by (smallest
argument index, other argument index). Layer admission is purely
structural; no matrix commutation tests are attempted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FileFormatError
from .gates import Gate, format_gate_text, parse_gate_text


@dataclass(frozen=True)
class GateApplication:
    """A gate applied to specific qubits; for 2-qubit gates args = (control/first, second)."""

    gate: Gate
    args: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(int(q) for q in self.args))
        if len(self.args) != self.gate.arity:
            raise ValueError(
                f"arity-{self.gate.arity} gate applied to {len(self.args)} qubit(s)"
            )
        if any(q < 0 for q in self.args):
            raise ValueError(f"negative qubit index in {self.args}")
        if self.gate.arity == 2 and self.args[0] == self.args[1]:
            raise ValueError(f"2-qubit gate needs distinct qubits, got {self.args}")


@dataclass(frozen=True)
class Circuit:
    """A qubit count plus gate applications in time order."""

    n: int
    ops: tuple[GateApplication, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if any(q >= self.n for q in op.args):
                raise ValueError(f"qubit index {max(op.args)} out of range for n={self.n}")


@dataclass(frozen=True)
class CanonicalEncoding:
    """A circuit's gate applications in canonical (layer-then-position) order."""

    n: int
    tokens: tuple[GateApplication, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))


def _compatible_control(a: GateApplication, b: GateApplication) -> bool:
    """True iff a and b may share a layer despite overlapping on one qubit."""
    if a.gate.arity != 2 or b.gate.arity != 2:
        return False
    shared = set(a.args) & set(b.args)
    return shared == {a.args[0]} and a.args[0] == b.args[0]


def layer(c: Circuit) -> list[list[GateApplication]]:
    """Greedy earliest-possible layering preserving time order.

    Tracks, per qubit, the latest layer using it and whether that use was a
    sharable control; a new control use may join that layer, anything else
    must start after it.
    """
    layers: list[list[GateApplication]] = []
    last_use: dict[int, int] = {}
    ctrl_ok: dict[int, bool] = {}

    for op in c.ops:
        if op.gate.arity == 1:
            lvl = last_use.get(op.args[0], -1) + 1
        else:
            i, j = op.args
            via_control = last_use.get(i, -1) + (0 if ctrl_ok.get(i, False) else 1)
            lvl = max(0, via_control, last_use.get(j, -1) + 1)
        while len(layers) <= lvl:
            layers.append([])
        layers[lvl].append(op)
        if op.gate.arity == 1:
            last_use[op.args[0]] = lvl
            ctrl_ok[op.args[0]] = False
        else:
            i, j = op.args
            last_use[i] = lvl
            ctrl_ok[i] = True
            last_use[j] = lvl
            ctrl_ok[j] = False
    return layers


def _sort_key(op: GateApplication) -> tuple[int, int]:
    return (min(op.args), max(op.args))


def canonical_encode(c: Circuit) -> CanonicalEncoding:
    """Layer the circuit and concatenate the sorted layers."""
    tokens: list[GateApplication] = []
    for group in layer(c):
        tokens.extend(sorted(group, key=_sort_key))
    return CanonicalEncoding(c.n, tuple(tokens))


def decode(e: CanonicalEncoding) -> Circuit:
    """Circuit with ops in token order; canonical_encode(decode(e)) == e."""
    return Circuit(e.n, e.tokens)


def render(e: CanonicalEncoding, precision: int = 17) -> str:
    """One-line display form, e.g. ``2 H[0] cX[0,1]``.

    Display only: angles are rounded to ``precision`` significant digits,
    so the result is lossy for irrational phases.
    """
    if not 1 <= precision <= 17:
        raise ValueError(f"precision must be in [1, 17], got {precision}")
    parts = [str(e.n)]
    for op in e.tokens:
        args = ",".join(str(q) for q in op.args)
        parts.append(f"{format_gate_text(op.gate, precision)}[{args}]")
    return " ".join(parts)


# --------------------------------------------------------------------------
# Circuit file format: line 1 is ``n=<int>``; each following line is
# ``<gate-text> <arg0>[ <arg1>]``; ``#`` starts a comment line.
# --------------------------------------------------------------------------


def format_circuit_file(c: Circuit) -> str:
    lines = [f"n={c.n}"]
    for op in c.ops:
        args = " ".join(str(q) for q in op.args)
        lines.append(f"{format_gate_text(op.gate)} {args}")
    return "\n".join(lines) + "\n"


def parse_circuit_file(text: str) -> Circuit:
    n: int | None = None
    ops: list[GateApplication] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise FileFormatError("circuit file must start with 'n=<integer>'", lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise FileFormatError(f"bad qubit count {line[2:]!r}", lineno) from None
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise FileFormatError(f"expected '<gate> <qubit> [<qubit>]', got {line!r}", lineno)
        try:
            gate = parse_gate_text(fields[0])
            args = tuple(int(f) for f in fields[1:])
            ops.append(GateApplication(gate, args))
        except ValueError as exc:
            raise FileFormatError(str(exc), lineno) from None
    if n is None:
        raise FileFormatError("circuit file is empty", 1)
    try:
        return Circuit(n, tuple(ops))
    except ValueError as exc:
        raise FileFormatError(str(exc), 1) from None


# --------------------------------------------------------------------------
# Equality helpers (Gate equality is tolerance-based, so these are the
# sanctioned way to compare structures containing gates).
# --------------------------------------------------------------------------


def applications_equal(a: GateApplication, b: GateApplication) -> bool:
    return a.args == b.args and a.gate == b.gate


def encodings_equal(a: CanonicalEncoding, b: CanonicalEncoding) -> bool:
    return (
        a.n == b.n
        and len(a.tokens) == len(b.tokens)
        and all(applications_equal(x, y) for x, y in zip(a.tokens, b.tokens))
    )


def circuits_equal(a: Circuit, b: Circuit) -> bool:
    return (
        a.n == b.n
        and len(a.ops) == len(b.ops)
        and all(applications_equal(x, y) for x, y in zip(a.ops, b.ops))
    )
