"""Aliased quantum circuit evaluation: codec, exact simulator, and circuit builders."""

from .circuit import (
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
from .codec import (
    AqceInstance,
    GateDictionary,
    Substring,
    alias,
    dealias,
    format_dictionary_file,
    parse_dictionary_file,
    parse_instance,
    serialize_instance,
)
from .demo import (
    SeparationReport,
    format_report,
    parse_report,
    pick_safe_phases,
    run_demo,
)
from .errors import (
    AqceError,
    ArityError,
    DealiasError,
    FileFormatError,
    IndistinguishablePhasesError,
    MalformedHeaderError,
    ParseError,
    RangeError,
    ResourceLimitError,
    UnknownAliasError,
    UnsafePhasesError,
)
from .gates import (
    CH,
    CX,
    Gate,
    H,
    WClass,
    X,
    classify_w,
    controlled_phase_gate,
    format_gate_text,
    gates_equal,
    parse_gate_text,
    phase_gate,
)
from .qpe import (
    QpeSpec,
    build_qpe,
    build_separation_circuit,
    first_differing_bit,
    phase_bit,
    required_register_size,
)
from .simulator import (
    Decision,
    Outcome,
    Statevector,
    decide,
    first_qubit_one_probability,
    measurement_distribution,
    run,
)

__version__ = "0.1.0"
