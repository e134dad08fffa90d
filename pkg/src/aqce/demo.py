"""One instance string, two dictionaries, opposite answers.

Builds the pair of phase-estimation circuits whose only difference is the
controlled phase gate, aliases both, and reports that the aliased instance
texts coincide byte for byte while the decisions disagree.

Phase safety is stricter than bare distinctness: both phases must keep a
guard distance from every multiple of 2^-k (so the first k estimate bits
are reliable, not just the estimate's value) and from every π/2^j (so the
controlled phase gate never classifies as a W gate and stays in the
dictionary) as well as every 1/2^j.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .codec import GateDictionary, alias, format_dictionary_file, parse_dictionary_file
from .errors import FileFormatError, UnsafePhasesError
from .gates import gates_equal
from .qpe import TWO_PI, build_separation_circuit, first_differing_bit, phase_bit
from .simulator import Decision, Outcome, decide, first_qubit_one_probability, run

# Radian-space exclusion radius around every pi/2^j and 1/2^j.
PHASE_EXCLUSION = 1e-9
_EXCLUDED_POINTS = [math.pi / 2**j for j in range(1, 65)] + [1 / 2**j for j in range(1, 65)]


@dataclass(frozen=True)
class SeparationReport:
    """Everything the demonstration measures about one circuit pair."""

    instance_text: str
    k: int
    dict_x: GateDictionary
    dict_y: GateDictionary
    p_x: float
    p_y: float
    decision_x: Decision
    decision_y: Decision
    strings_identical: bool
    dict_diff_positions: tuple[int, ...]


def _cell_offset(phi: float, k: int) -> float:
    """Position of φ inside its 2^-k grid cell, as a fraction of the cell."""
    scaled = phi * 2**k
    return scaled - math.floor(scaled)


def _check_phase_pair(x: float, y: float, k: int):
    """Raise UnsafePhasesError naming the first violated safety condition."""
    for label, value in (("x", x), ("y", y)):
        if not 0 < value < TWO_PI:
            raise UnsafePhasesError(f"phase {label}={value!r} outside (0, 2*pi)")
    for label, value in (("x", x), ("y", y)):
        phi = value / TWO_PI
        offset = _cell_offset(phi, k)
        if min(offset, 1 - offset) < 0.25:
            raise UnsafePhasesError(
                f"phase {label}={value!r} within 2^-(k+2) of a multiple of 2^-{k}"
            )
        for point in _EXCLUDED_POINTS:
            if abs(value - point) < PHASE_EXCLUSION:
                raise UnsafePhasesError(
                    f"phase {label}={value!r} within {PHASE_EXCLUSION} of {point!r}"
                )


def pick_safe_phases(seed: int, k: int) -> tuple[float, float]:
    """Deterministically draw (x, y) whose fractions first differ at bit k.

    Both fractions sit in the middle half of their 2^-k grid cell and both
    radian values avoid the excluded points; rejection-samples until every
    condition holds (failures have tiny measure, so this ends immediately
    in practice). bit k of x's fraction is 0 and of y's is 1.
    """
    if not 1 <= k <= 6:
        raise ValueError(f"bit index must lie in [1, 6], got {k}")
    rng = random.Random(seed)
    while True:
        prefix = rng.randrange(2 ** (k - 1))
        phi_x = (2 * prefix + 0.25 + 0.5 * rng.random()) / 2**k
        phi_y = (2 * prefix + 1.25 + 0.5 * rng.random()) / 2**k
        x, y = TWO_PI * phi_x, TWO_PI * phi_y
        try:
            _check_phase_pair(x, y, k)
        except UnsafePhasesError:
            continue
        if first_differing_bit(phi_x, phi_y) != k:
            continue
        return x, y


def run_demo(x: float, y: float, epsilon: float = 0.2) -> SeparationReport:
    """Build, alias, simulate, and decide the circuit pair for phases x and y.

    The inputs are validated against the pick_safe_phases conditions, not
    assumed to come from it.
    """
    phi_x, phi_y = x / TWO_PI, y / TWO_PI
    k = first_differing_bit(phi_x, phi_y)
    _check_phase_pair(x, y, k)

    circuit_x = build_separation_circuit(x, k, epsilon)
    circuit_y = build_separation_circuit(y, k, epsilon)
    inst_x, dict_x = alias(circuit_x)
    inst_y, dict_y = alias(circuit_y)

    positions = [
        idx + 1
        for idx in range(max(dict_x.m, dict_y.m))
        if idx >= dict_x.m or idx >= dict_y.m or not gates_equal(dict_x.gates[idx], dict_y.gates[idx])
    ]
    return SeparationReport(
        instance_text=inst_x.source,
        k=k,
        dict_x=dict_x,
        dict_y=dict_y,
        p_x=first_qubit_one_probability(run(circuit_x)),
        p_y=first_qubit_one_probability(run(circuit_y)),
        decision_x=decide(inst_x, dict_x),
        decision_y=decide(inst_y, dict_y),
        strings_identical=inst_x.source == inst_y.source,
        dict_diff_positions=tuple(positions),
    )


# --------------------------------------------------------------------------
# Report text form: one "field: value" line per field, in declaration order.
# --------------------------------------------------------------------------

_REPORT_FIELDS = (
    "instance_text",
    "k",
    "dict_x",
    "dict_y",
    "p_x",
    "p_y",
    "decision_x",
    "decision_y",
    "strings_identical",
    "dict_diff_positions",
)


def _gates_csv(d: GateDictionary) -> str:
    return format_dictionary_file(d).rstrip("\n").replace("\n", ",")


def format_report(report: SeparationReport) -> str:
    values = {
        "instance_text": report.instance_text,
        "k": str(report.k),
        "dict_x": _gates_csv(report.dict_x),
        "dict_y": _gates_csv(report.dict_y),
        "p_x": repr(report.p_x),
        "p_y": repr(report.p_y),
        "decision_x": report.decision_x.outcome.value,
        "decision_y": report.decision_y.outcome.value,
        "strings_identical": "true" if report.strings_identical else "false",
        "dict_diff_positions": ",".join(str(p) for p in report.dict_diff_positions),
    }
    return "".join(f"{field}: {values[field]}\n" for field in _REPORT_FIELDS)


def parse_report(text: str) -> SeparationReport:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        field, sep, value = raw.partition(": ")
        if not sep or field not in _REPORT_FIELDS:
            raise FileFormatError(f"unexpected report line {raw!r}", lineno)
        values[field] = value
    missing = [f for f in _REPORT_FIELDS if f not in values]
    if missing:
        raise FileFormatError(f"report is missing fields {missing}", 1)
    p_x = float(values["p_x"])
    p_y = float(values["p_y"])
    positions = values["dict_diff_positions"]
    return SeparationReport(
        instance_text=values["instance_text"],
        k=int(values["k"]),
        dict_x=parse_dictionary_file(values["dict_x"].replace(",", "\n")),
        dict_y=parse_dictionary_file(values["dict_y"].replace(",", "\n")),
        p_x=p_x,
        p_y=p_y,
        decision_x=Decision(Outcome(values["decision_x"]), p_x),
        decision_y=Decision(Outcome(values["decision_y"]), p_y),
        strings_identical=values["strings_identical"] == "true",
        dict_diff_positions=tuple(int(p) for p in positions.split(",") if p),
    )
