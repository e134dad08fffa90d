"""Instance-string grammar, de-aliasing against dictionaries, and aliasing.

An instance string is a decimal qubit count followed by substrings, each of
one of four shapes:

    (k)[j]       1-qubit dictionary gate u_k on qubit j
    (k)[i,j]     2-qubit dictionary gate u_k on qubits (i, j)
    (*r)[j]      phase gate P(sign(r)·π/2^|r|) on qubit j
    (c*r)[i,j]   controlled phase gate cP(sign(r)·π/2^|r|) on (i, j)

No whitespace is permitted anywhere; all integers are decimal with no
leading zeros. The r fields may carry a leading minus so that inverse-QFT
phases stay representable without dictionary entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import CanonicalEncoding, Circuit, GateApplication, canonical_encode, decode
from .errors import (
    ArityError,
    FileFormatError,
    MalformedHeaderError,
    ParseError,
    RangeError,
    UnknownAliasError,
)
from .gates import Gate, classify_w, controlled_phase_gate, format_gate_text, gates_equal, parse_gate_text, phase_gate


@dataclass(frozen=True)
class GateDictionary:
    """The ordered gate list (u_1, ..., u_m) that defines an instance's class.

    Substring indices are 1-based into this list. An empty dictionary is
    legal: circuits made purely of W gates alias without any entries.
    """

    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for a in range(len(self.gates)):
            for b in range(a + 1, len(self.gates)):
                if gates_equal(self.gates[a], self.gates[b]):
                    raise ValueError(f"dictionary entries {a + 1} and {b + 1} are equal")

    @property
    def m(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Substring:
    """One parsed substring; ``kind`` is the shape number 1..4."""

    kind: int
    k: int | None = None
    r: int | None = None
    i: int | None = None
    j: int = 0

    def __post_init__(self):
        if self.kind not in (1, 2, 3, 4):
            raise ValueError(f"substring kind must be 1..4, got {self.kind}")
        if self.kind in (1, 2) and (self.k is None or self.r is not None):
            raise ValueError(f"kind-{self.kind} substring needs k and no r")
        if self.kind in (3, 4) and (self.r is None or self.k is not None):
            raise ValueError(f"kind-{self.kind} substring needs r and no k")
        if self.kind in (2, 4) and self.i is None:
            raise ValueError(f"kind-{self.kind} substring needs two qubit indices")
        if self.kind in (1, 3) and self.i is not None:
            raise ValueError(f"kind-{self.kind} substring takes one qubit index")


def _format_substring(s: Substring) -> str:
    if s.kind == 1:
        return f"({s.k})[{s.j}]"
    if s.kind == 2:
        return f"({s.k})[{s.i},{s.j}]"
    if s.kind == 3:
        return f"(*{s.r})[{s.j}]"
    return f"(c*{s.r})[{s.i},{s.j}]"


def serialize_instance(n: int, substrings: tuple[Substring, ...]) -> str:
    return str(n) + "".join(_format_substring(s) for s in substrings)


@dataclass(frozen=True)
class AqceInstance:
    """A validated instance string together with its parsed structure.

    ``source`` is always the exact serialization of (n, substrings);
    parsing and re-serialization are byte-identical.
    """

    n: int
    substrings: tuple[Substring, ...]
    source: str

    def __post_init__(self):
        object.__setattr__(self, "substrings", tuple(self.substrings))
        expected = serialize_instance(self.n, self.substrings)
        if self.source != expected:
            raise ValueError(
                f"source text {self.source!r} does not serialize from its parts ({expected!r})"
            )

    @classmethod
    def from_parts(cls, n: int, substrings: tuple[Substring, ...]) -> "AqceInstance":
        subs = tuple(substrings)
        return cls(n, subs, serialize_instance(n, subs))

    @property
    def max_k(self) -> int:
        """Largest dictionary index referenced; 0 when none are."""
        return max((s.k for s in self.substrings if s.k is not None), default=0)


class _Scanner:
    """Character scanner over instance text with byte-offset error reporting."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def read_uint(self, what: str) -> tuple[int, int]:
        """Read a decimal integer with no leading zeros; returns (value, start offset)."""
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        digits = self.text[start : self.pos]
        if not digits:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {what}, found {found}", self.pos)
        if len(digits) > 1 and digits[0] == "0":
            raise ParseError(f"leading zero in {what}", start)
        return int(digits), start

    def read_int(self, what: str) -> tuple[int, int]:
        start = self.pos
        negative = self.peek() == "-"
        if negative:
            self.pos += 1
        value, _ = self.read_uint(what)
        return (-value if negative else value), start


def parse_instance(text: str, m: int | None = None) -> AqceInstance:
    """Parse and validate instance text.

    Qubit indices and W exponents are range-checked against the parsed n.
    Dictionary indices are checked against ``m`` when given; otherwise that
    check is deferred to dealias (the text alone does not determine m).
    """
    sc = _Scanner(text)
    if not sc.peek().isdigit():
        raise MalformedHeaderError("instance must begin with a decimal qubit count", 0)
    n, _ = sc.read_uint("qubit count")
    if n < 1:
        raise RangeError("qubit count must be at least 1", 0)

    substrings: list[Substring] = []
    while sc.pos < len(text):
        substrings.append(_parse_substring(sc, n, m))
    return AqceInstance(n, tuple(substrings), text)


def _parse_substring(sc: _Scanner, n: int, m: int | None) -> Substring:
    sc.expect("(")
    k = r = None
    if sc.peek() == "c":
        sc.pos += 1
        sc.expect("*")
        r, r_off = sc.read_int("W exponent")
        two_args = True
    elif sc.peek() == "*":
        sc.pos += 1
        r, r_off = sc.read_int("W exponent")
        two_args = False
    else:
        k, k_off = sc.read_uint("dictionary index")
        two_args = None  # either shape; decided by the argument list
    sc.expect(")")
    sc.expect("[")
    first, first_off = sc.read_uint("qubit index")
    second = second_off = None
    if sc.peek() == "," and two_args is not False:
        sc.pos += 1
        second, second_off = sc.read_uint("qubit index")
    elif two_args is True:
        sc.expect(",")  # (c*r) always takes two indices
    sc.expect("]")

    if r is not None:
        if not 1 <= abs(r) <= n - 1:
            raise RangeError(f"W exponent {r} outside [1, {n - 1}]", r_off)
    else:
        if k < 1:
            raise RangeError("dictionary index must be at least 1", k_off)
        if m is not None and k > m:
            raise RangeError(f"dictionary index {k} exceeds dictionary size {m}", k_off)

    for value, off in ((first, first_off), (second, second_off)):
        if off is not None and value > n - 1:
            raise RangeError(f"qubit index {value} outside [0, {n - 1}]", off)
    if second is not None:
        if first == second:
            raise RangeError(f"qubit indices must be distinct, got [{first},{second}]", second_off)
        i, j = first, second
    else:
        i, j = None, first

    if r is not None:
        kind = 4 if two_args else 3
    else:
        kind = 2 if second is not None else 1
    return Substring(kind=kind, k=k, r=r, i=i, j=j)


def dealias(inst: AqceInstance, d: GateDictionary) -> Circuit:
    """Resolve an instance against a dictionary to its circuit.

    Substring order is taken as the canonical token order and decoded
    directly; the same (instance, dictionary) pair always yields the
    identical circuit.
    """
    tokens: list[GateApplication] = []
    for s in inst.substrings:
        if s.kind in (1, 2):
            if s.k > d.m:
                raise UnknownAliasError(
                    f"substring references u_{s.k} but the dictionary has {d.m} gate(s)"
                )
            gate = d.gates[s.k - 1]
            want = 1 if s.kind == 1 else 2
            if gate.arity != want:
                raise ArityError(
                    f"substring shape needs an arity-{want} gate but u_{s.k} has arity {gate.arity}"
                )
        elif s.kind == 3:
            gate = phase_gate(math.copysign(math.pi / 2 ** abs(s.r), s.r))
        else:
            gate = controlled_phase_gate(math.copysign(math.pi / 2 ** abs(s.r), s.r))
        args = (s.j,) if s.kind in (1, 3) else (s.i, s.j)
        tokens.append(GateApplication(gate, args))
    return decode(CanonicalEncoding(inst.n, tuple(tokens)))


def alias(c: Circuit) -> tuple[AqceInstance, GateDictionary]:
    """Encode a circuit as (instance string, dictionary).

    The circuit is canonically encoded; W gates become intrinsic (*r)/(c*r)
    substrings, every other gate is enumerated by first occurrence
    (deduplicated by gates_equal) and referenced by its 1-based index.
    """
    enc = canonical_encode(c)
    entries: list[Gate] = []
    substrings: list[Substring] = []
    for app in enc.tokens:
        w = classify_w(app.gate, c.n) if c.n >= 2 else None
        if w is not None:
            r = w.sign * w.k
            if w.controlled:
                substrings.append(Substring(kind=4, r=r, i=app.args[0], j=app.args[1]))
            else:
                substrings.append(Substring(kind=3, r=r, j=app.args[0]))
            continue
        for idx, known in enumerate(entries):
            if gates_equal(app.gate, known):
                k = idx + 1
                break
        else:
            entries.append(app.gate)
            k = len(entries)
        if app.gate.arity == 1:
            substrings.append(Substring(kind=1, k=k, j=app.args[0]))
        else:
            substrings.append(Substring(kind=2, k=k, i=app.args[0], j=app.args[1]))
    return AqceInstance.from_parts(c.n, tuple(substrings)), GateDictionary(tuple(entries))


# --------------------------------------------------------------------------
# Dictionary file format: one line per entry, ``<index>: <gate-text>``,
# indices 1..m in order.
# --------------------------------------------------------------------------


def format_dictionary_file(d: GateDictionary) -> str:
    lines = [f"{idx}: {format_gate_text(g)}" for idx, g in enumerate(d.gates, start=1)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_dictionary_file(text: str) -> GateDictionary:
    entries: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        head, sep, gate_text = line.partition(":")
        if not sep:
            raise FileFormatError(f"expected '<index>: <gate-text>', got {line!r}", lineno)
        try:
            idx = int(head)
        except ValueError:
            raise FileFormatError(f"bad entry index {head!r}", lineno) from None
        if idx != len(entries) + 1:
            raise FileFormatError(f"entry index {idx} out of order (expected {len(entries) + 1})", lineno)
        try:
            entries.append(parse_gate_text(gate_text.strip()))
        except ValueError as exc:
            raise FileFormatError(str(exc), lineno) from None
    try:
        return GateDictionary(tuple(entries))
    except ValueError as exc:
        raise FileFormatError(str(exc), 1) from None
