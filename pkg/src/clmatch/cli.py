"""Command-line interface: ``clmatch <subcommand> ...``.

Exit codes: 0 success, 1 invalid input, 2 property violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .driver import DriverConfig, run_clp_match
from .errors import ClmatchError, InputError, PromiseViolation
from .extensions import min_weight_max_matching
from .generators import FAMILIES, WEIGHT_MODES, GeneratorSpec, generate
from .graph import read_graph, validate_matching, write_graph
from .isolation import BACKENDS, extract_isolated_size_k
from .lossy import LossyInstance, lossy_solve
from .oracles import brute_force_matchings
from .residual import build_residual
from .tape import init_tape

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _read_ints(path: str) -> list[int]:
    try:
        return [int(tok) for tok in Path(path).read_text().split()]
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _graph(args):
    return read_graph(Path(args.graph).read_text())


def _weights(args, G):
    if args.weights is None:
        return [0] * G.num_edges
    W = _read_ints(args.weights)
    if len(W) != G.num_edges:
        raise InputError(f"{args.weights}: expected {G.num_edges} weights, got {len(W)}")
    return W


def _emit(obj, text: bool):
    if text:
        for key, value in obj.items():
            print(f"{key}: {value}")
    else:
        print(json.dumps(obj, indent=2))


def cmd_solve(args) -> int:
    G = _graph(args)
    config = DriverConfig(args.weight_bits, args.reserves, args.fallback_threshold,
                          args.force_fallback, args.trace, args.backend)
    layout = config.layout(G)
    if args.tape is not None:
        tape = init_tape(layout, args.tape)
    else:
        if args.len is not None and args.len != layout.total_bits:
            raise InputError(f"--len {args.len} does not match the layout's {layout.total_bits} bits")
        tape = init_tape(layout, seed=args.seed)
    if args.input_weights:
        matching, total, report = min_weight_max_matching(G, _read_ints(args.input_weights), tape, config)
        out = report.to_dict()
        out["input_weight"] = total
    else:
        report = run_clp_match(G, tape, config)
        out = report.to_dict()
    out["tape_bits"] = layout.total_bits
    _emit(out, args.text)
    ok = report.tape_restored and validate_matching(G, report.matching)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_lossy(args) -> int:
    G = _graph(args)
    inst = LossyInstance(G, args.backend)
    res = lossy_solve(inst, args.mode, args.samples, args.seed)
    width = -(-len(res.witness) // 4)
    _emit({
        "witness_hex": format(int(res.witness, 2) << (4 * width - len(res.witness)), f"0{width}x"),
        "witness_bits": res.witness,
        "input_bits": inst.input_bits,
        "output_bits": inst.output_bits,
        "matching": G.pairs(res.matching),
        "roundtrip_failures_found": res.roundtrip_failures_found,
        "samples_tried": res.samples_tried,
    }, args.text)
    return EXIT_OK


def cmd_extract(args) -> int:
    G = _graph(args)
    W = _weights(args, G)
    try:
        M = extract_isolated_size_k(G, args.k, W, args.backend)
    except PromiseViolation as exc:
        _emit({"isolated": False, "reason": str(exc)}, args.text)
        return EXIT_VIOLATION
    _emit({"isolated": True, "k": args.k, "matching": G.pairs(M), "weight": G.weight(M, W)}, args.text)
    return EXIT_OK


def cmd_residual(args) -> int:
    G = _graph(args)
    W = _weights(args, G)
    M = extract_isolated_size_k(G, args.k, W, args.backend)
    R = build_residual(G, M, W)
    if args.dump or args.text:
        print(R.dump())
    else:
        print(json.dumps([{"tail": R.vertex_name(a.tail), "head": R.vertex_name(a.head),
                           "weight": a.weight, "edge": a.edge} for a in R.arcs], indent=2))
    return EXIT_OK


def cmd_oracle(args) -> int:
    G = _graph(args)
    _emit(brute_force_matchings(G, _weights(args, G)).to_dict(), args.text)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GeneratorSpec(args.family, args.n, args.p, args.weight_mode, args.seed, args.weight_bits)
    G, tape = generate(spec)
    if args.text:
        print(write_graph(G), end="")
    else:
        print(json.dumps({"graph": write_graph(G), "tape_hex": tape.to_hex(),
                          "tape_bits": tape.layout.total_bits, "weights": list(tape.read_weights())}, indent=2))
    return EXIT_OK


def cmd_testsuite(args) -> int:
    from .battery import run_battery

    results = run_battery(quick=args.quick)
    for _, _, line in results:
        print(line, flush=True)
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clmatch", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", required=True, help="graph file: 'n m' then m lines 'u v'")
        sp.add_argument("--backend", choices=BACKENDS, default="combinatorial")
        sp.add_argument("--text", action="store_true", help="plain text instead of JSON")

    sp = sub.add_parser("solve", help="catalytic maximum matching")
    common(sp)
    tape = sp.add_mutually_exclusive_group()
    tape.add_argument("--tape", help="tape contents as hex (or a 0/1 string of exact length)")
    tape.add_argument("--seed", type=int, default=0, help="seed for a pseudo-random tape")
    sp.add_argument("--len", type=int, help="expected tape length in bits (with --seed)")
    sp.add_argument("--weight-bits", type=int)
    sp.add_argument("--reserves", type=int)
    sp.add_argument("--fallback-threshold", type=int)
    sp.add_argument("--force-fallback", action="store_true")
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--input-weights", help="one non-negative integer per edge, canonical order")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("lossy", help="find a lossy-coding witness and its matching")
    common(sp)
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="random")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lossy)

    sp = sub.add_parser("extract", help="isolated minimum matching of size k")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--weights", help="one integer per edge")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("residual", help="residual graph of the isolated size-k matching")
    common(sp)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--weights")
    sp.add_argument("--dump", action="store_true", help="one arc per line: 'u v weight origin'")
    sp.set_defaults(func=cmd_residual)

    sp = sub.add_parser("oracle", help="brute-force matching statistics")
    common(sp)
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("--family", choices=FAMILIES, default="random-gnp")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--weight-mode", choices=WEIGHT_MODES, default="tape-random")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--weight-bits", type=int)
    sp.add_argument("--text", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("testsuite", help="run the built-in property battery")
    sp.add_argument("--quick", action="store_true")
    sp.set_defaults(func=cmd_testsuite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ClmatchError, OSError) as exc:
        print(f"clmatch: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
