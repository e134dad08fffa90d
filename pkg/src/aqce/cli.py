"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse/validation error,
3 promise violation (decide only), 4 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .circuit import canonical_encode, format_circuit_file, parse_circuit_file, render
from .codec import alias, dealias, format_dictionary_file, parse_dictionary_file, parse_instance
from .demo import format_report, pick_safe_phases, run_demo
from .errors import AqceError, ResourceLimitError
from .qpe import TWO_PI, build_qpe, build_separation_circuit
from .simulator import Outcome, decide, first_qubit_one_probability, measurement_distribution, run

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_PROMISE = 3
EXIT_RESOURCE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_instance_text(args) -> str:
    if args.instance is not None:
        return args.instance
    return Path(args.instance_file).read_text().strip()


def cmd_parse(args) -> int:
    inst = parse_instance(_load_instance_text(args))
    lines = [f"n: {inst.n}", f"substrings: {len(inst.substrings)}"]
    for pos, s in enumerate(inst.substrings, start=1):
        fields = [f"type {s.kind}"]
        if s.k is not None:
            fields.append(f"k={s.k}")
        if s.r is not None:
            fields.append(f"r={s.r}")
        if s.i is not None:
            fields.append(f"i={s.i}")
        fields.append(f"j={s.j}")
        lines.append(f"[{pos}] " + " ".join(fields))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    circuit = parse_circuit_file(Path(args.circuit).read_text())
    _emit(render(canonical_encode(circuit), args.precision) + "\n", args.out)
    return EXIT_OK


def cmd_alias(args) -> int:
    circuit = parse_circuit_file(Path(args.circuit).read_text())
    inst, dictionary = alias(circuit)
    if args.out_instance:
        Path(args.out_instance).write_text(inst.source + "\n")
    if args.out_dict:
        Path(args.out_dict).write_text(format_dictionary_file(dictionary))
    if not args.out_instance and not args.out_dict:
        sys.stdout.write(inst.source + "\n")
        sys.stdout.write(format_dictionary_file(dictionary))
    return EXIT_OK


def cmd_dealias(args) -> int:
    inst = parse_instance(_load_instance_text(args))
    dictionary = parse_dictionary_file(Path(args.dict).read_text())
    circuit = dealias(inst, dictionary)
    if args.out:
        Path(args.out).write_text(format_circuit_file(circuit))
    else:
        sys.stdout.write(render(canonical_encode(circuit), args.precision) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    circuit = parse_circuit_file(Path(args.circuit).read_text())
    sv = run(circuit)
    lines = []
    if args.measure is not None:
        qubits = [int(q) for q in args.measure.split(",") if q]
        dist = measurement_distribution(sv, qubits)
        lines.extend(f"{bits}: {p:.12f}" for bits, p in dist.items())
    elif args.sample is not None:
        rng = np.random.default_rng(args.seed)
        probs = np.abs(sv.amps) ** 2
        probs /= probs.sum()
        for idx in rng.choice(len(probs), size=args.sample, p=probs):
            lines.append(format(int(idx), f"0{sv.n}b"))
    else:
        lines.append(f"p_first_qubit_one: {first_qubit_one_probability(sv):.12f}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_decide(args) -> int:
    inst = parse_instance(_load_instance_text(args))
    dictionary = parse_dictionary_file(Path(args.dict).read_text())
    decision = decide(inst, dictionary)
    _emit(f"{decision.outcome.value} p={decision.p:.12f}\n", args.out)
    if decision.outcome is Outcome.PROMISE_VIOLATION:
        return EXIT_PROMISE
    return EXIT_OK


def cmd_qpe_build(args) -> int:
    theta = args.phase if args.phase is not None else args.phi * TWO_PI
    if args.t is not None:
        circuit = build_qpe(theta, args.t)
    else:
        circuit = build_separation_circuit(theta, args.k, args.epsilon)
    _emit(format_circuit_file(circuit), args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    x, y = pick_safe_phases(args.seed, args.k)
    report = run_demo(x, y, args.epsilon)
    _emit(format_report(report), args.out)
    return EXIT_OK


def _add_instance_arguments(p: _Parser):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--instance", help="instance text")
    group.add_argument("--instance-file", help="file containing instance text")


def build_parser() -> _Parser:
    parser = _Parser(prog="aqce", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and dump an instance string")
    p.add_argument("instance", nargs="?", default=None, help="instance text")
    p.add_argument("--instance-file", help="file containing instance text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("encode", help="canonically encode a circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--precision", type=int, default=17, choices=range(1, 18), metavar="1..17")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("alias", help="alias a circuit file to (instance, dictionary)")
    p.add_argument("--circuit", required=True)
    p.add_argument("--out-instance")
    p.add_argument("--out-dict")
    p.set_defaults(func=cmd_alias)

    p = sub.add_parser("dealias", help="resolve an instance against a dictionary file")
    _add_instance_arguments(p)
    p.add_argument("--dict", required=True)
    p.add_argument("--precision", type=int, default=17, choices=range(1, 18), metavar="1..17")
    p.add_argument("--out", help="write a circuit file instead of printing the encoding")
    p.set_defaults(func=cmd_dealias)

    p = sub.add_parser("simulate", help="run a circuit file on |0...0>")
    p.add_argument("circuit")
    p.add_argument("--measure", help="comma-separated qubit list for a marginal distribution")
    p.add_argument("--sample", type=int, help="print N sampled bitstrings (demonstration only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decide", help="answer the promise question for (instance, dictionary)")
    _add_instance_arguments(p)
    p.add_argument("--dict", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("qpe-build", help="emit a phase-estimation circuit file")
    phase = p.add_mutually_exclusive_group(required=True)
    phase.add_argument("--phase", type=float, help="eigenphase in radians")
    phase.add_argument("--phi", type=float, help="eigenphase as a fraction of 2*pi")
    p.add_argument("--t", type=int, help="main register size (plain build)")
    p.add_argument("--k", type=int, help="estimate bit to surface (separation build)")
    p.add_argument("--epsilon", type=float, default=0.2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_qpe_build)

    p = sub.add_parser("demo", help="run the identical-string, opposite-answer demonstration")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.func is cmd_parse and args.instance is None and args.instance_file is None:
        parser.print_usage(sys.stderr)
        print("aqce parse: error: an instance string or --instance-file is required", file=sys.stderr)
        return EXIT_USAGE
    if args.func is cmd_qpe_build and (args.t is None) == (args.k is None):
        parser.print_usage(sys.stderr)
        print("aqce qpe-build: error: exactly one of --t or --k is required", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (AqceError, ValueError, OSError) as exc:
        offset = getattr(exc, "offset", None)
        print(f"error: {exc}", file=sys.stderr)
        if offset is not None:
            print(f"offset: {offset}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
