"""Command-line front end.

Subcommands: decide, build, trace, oracle, selftest.  Exit codes are part
of the contract: 0 realizable / success, 1 unrealizable, 2 invalid input,
3 resource limit hit, 4 I/O failure, 5 selftest disagreement.

Stdout for identical inputs is byte-identical; the only non-deterministic
quantity (wall time) goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import InputError, LimitError
from .signature import validate_k
from .oracle import (
    ENUMERATE_DEFAULT_LIMIT,
    RECURSIVE_DEFAULT_LIMIT,
    OracleConfig,
    kraft_check,
    run_oracle,
)
from .solver import Decision, MergeRecord, SolverConfig, decide, trace_levels
from .treebuild import export_tree, reconstruct, validate

EXIT_REALIZABLE = 0
EXIT_UNREALIZABLE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_IO = 4
EXIT_DISAGREE = 5


@dataclass
class InstanceSpec:
    k: int
    depths: list[int]
    source: str  # "flags" or the file path

    def __post_init__(self) -> None:
        validate_k(self.k)
        if not self.depths:
            raise InputError("an instance needs at least one depth bound")
        if any(v < 0 for v in self.depths):
            raise InputError("depth bounds must be >= 0")


def _parse_depths(text: str) -> list[int]:
    parts = text.replace(",", " ").split()
    if not parts:
        raise InputError("no depth bounds given")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise InputError(f"depth bounds must be integers: {exc}") from None


def _load_instance(args: argparse.Namespace) -> InstanceSpec:
    if getattr(args, "file", None):
        if args.k is not None or args.depths is not None:
            raise InputError("give either --file or --k/--depths, not both")
        with open(args.file, "r", encoding="utf-8") as handle:
            lines = [line.strip() for line in handle if line.strip()]
        if len(lines) < 2:
            raise InputError(f"{args.file}: expected k on line 1 and depths on line 2")
        try:
            k = int(lines[0])
        except ValueError:
            raise InputError(f"{args.file}: first line must be the integer k") from None
        return InstanceSpec(k=k, depths=_parse_depths(lines[1]), source=args.file)
    if args.k is None or args.depths is None:
        raise InputError("an instance needs --k and --depths (or --file)")
    return InstanceSpec(k=args.k, depths=_parse_depths(args.depths), source="flags")


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        prune_level_domination=not getattr(args, "no_prune", False),
        use_fast_generator=not getattr(args, "naive_generator", False),
        max_level_size=getattr(args, "max_level_size", None),
        max_seconds=getattr(args, "max_seconds", None),
    )


def _record_dict(rec: MergeRecord) -> dict:
    return {
        "parent": list(rec.parent),
        "merged_lo": rec.merged_lo,
        "merged_hi": rec.merged_hi,
        "omega": rec.omega,
        "cap": rec.cap,
        "child": list(rec.child),
        "l_value": rec.l_value if rec.l_value != float("inf") else None,
    }


def _stats_dict(decision: Decision) -> dict:
    out = decision.stats.as_dict()
    del out["wall_time_s"]  # stdout must be reproducible byte for byte
    return out


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_decide(args: argparse.Namespace) -> int:
    spec = _load_instance(args)
    decision = decide(spec.k, spec.depths, _solver_config(args))
    if args.format == "json":
        payload = {
            "realizable": decision.realizable,
            "stats": _stats_dict(decision),
            "witness": [_record_dict(r) for r in decision.witness_chain],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("realizable" if decision.realizable else "unrealizable")
        for name, value in _stats_dict(decision).items():
            print(f"  {name}: {value}")
        print(f"  wall_time_s: {decision.stats.wall_time_s:.4f}", file=sys.stderr)
    return EXIT_REALIZABLE if decision.realizable else EXIT_UNREALIZABLE


def cmd_build(args: argparse.Namespace) -> int:
    spec = _load_instance(args)
    decision = decide(spec.k, spec.depths, _solver_config(args))
    if not decision.realizable:
        print("unrealizable", file=sys.stderr)
        return EXIT_UNREALIZABLE
    tree = reconstruct(spec.k, spec.depths, decision.witness_chain)
    report = validate(spec.k, tree, spec.depths)
    assert report.valid, report.violations
    _emit(export_tree(tree, args.format) + ("\n" if args.format == "json" else ""), args.out)
    return EXIT_REALIZABLE


def _trace_text(levels) -> str:
    lines = []
    for level in levels:
        sigs = ["".join(map(str, s)) if all(0 <= v <= 9 for v in s) else str(list(s))
                for s in level.sorted_signatures()]
        lines.append(f"M_{level.z}: {{{', '.join(sigs)}}}")
    return "\n".join(lines) + "\n"


def _trace_json(k: int, levels) -> str:
    payload = {
        "k": k,
        "levels": [
            {
                "z": level.z,
                "signatures": [list(s) for s in level.sorted_signatures()],
                "arrows": [
                    _record_dict(level.record_of[s])
                    for s in level.sorted_signatures()
                    if s in level.record_of
                ],
            }
            for level in levels
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _trace_dot(levels) -> str:
    def node_id(z, sig):
        return "s{}_{}".format(z, "_".join(str(v) for v in sig))

    lines = ["digraph levels {", "  rankdir=TB;"]
    for level in levels:
        names = []
        for sig in level.sorted_signatures():
            name = node_id(level.z, sig)
            names.append(name)
            lines.append(f'  {name} [label="{",".join(map(str, sig))}"];')
        if names:
            lines.append(f'  {{ rank=same; {" ".join(names)} }}')
    for level in levels:
        for sig in level.sorted_signatures():
            rec = level.record_of.get(sig)
            if rec is not None:
                lines.append(
                    f'  {node_id(level.z + 1, rec.parent)} -> {node_id(level.z, sig)}'
                    f' [label="{rec.merged_lo},{rec.merged_hi}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_trace(args: argparse.Namespace) -> int:
    spec = _load_instance(args)
    levels = trace_levels(spec.k, spec.depths, _solver_config(args))
    if args.format == "json":
        text = _trace_json(spec.k, levels)
    elif args.format == "dot":
        text = _trace_dot(levels)
    else:
        text = _trace_text(levels)
    _emit(text, args.out)
    realizable = levels[-1].z == 1 and bool(levels[-1].signatures)
    return EXIT_REALIZABLE if realizable else EXIT_UNREALIZABLE


def cmd_oracle(args: argparse.Namespace) -> int:
    spec = _load_instance(args)
    config = OracleConfig(method=args.method, max_n=args.max_n)
    verdict = run_oracle(spec.k, spec.depths, config)
    print("realizable" if verdict else "unrealizable")
    return EXIT_REALIZABLE if verdict else EXIT_UNREALIZABLE


def cmd_selftest(args: argparse.Namespace) -> int:
    from .oracle import oracle_enumerate_trees, oracle_recursive

    ks = [int(p) for p in args.ks.split(",")]
    checked = 0
    for k in ks:
        for n in range(1, args.max_n + 1):
            for depths in combinations_with_replacement(range(args.max_value + 1), n):
                verdicts: dict[str, bool] = {}
                try:
                    verdicts["solver"] = decide(k, depths).realizable
                    verdicts["solver_noprune"] = decide(
                        k, depths, SolverConfig(prune_level_domination=False)
                    ).realizable
                    if n <= RECURSIVE_DEFAULT_LIMIT:
                        verdicts["recursive"] = oracle_recursive(k, depths)
                    if n <= ENUMERATE_DEFAULT_LIMIT:
                        verdicts["enumerate"] = oracle_enumerate_trees(k, depths)
                    if k == 2:
                        verdicts["kraft"] = kraft_check(depths)
                except AssertionError as exc:
                    print(f"FAIL: internal bound violated on k={k} depths={list(depths)}: {exc}")
                    return EXIT_DISAGREE
                if len(set(verdicts.values())) > 1:
                    print(f"FAIL: disagreement on k={k} depths={list(depths)}: {verdicts}")
                    return EXIT_DISAGREE
                checked += 1
    print(f"selftest passed: {checked} instances, ks={ks}, "
          f"n<={args.max_n}, values<={args.max_value}")
    return EXIT_REALIZABLE


def _add_instance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--k", type=int, default=None, help="sibling edge-length sum (>= 2)")
    sub.add_argument("--depths", type=str, default=None,
                     help="depth bounds, comma or space separated")
    sub.add_argument("--file", type=str, default=None,
                     help="instance file: k on line 1, depths on line 2")


def _add_solver_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--no-prune", action="store_true",
                     help="keep dominated signatures in every level")
    sub.add_argument("--naive-generator", action="store_true",
                     help="enumerate all merge pairs instead of merge-value classes")
    sub.add_argument("--max-level-size", type=int, default=None)
    sub.add_argument("--max-seconds", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splittree",
        description="Decide and build binary trees whose sibling edge lengths sum to k "
                    "while respecting per-leaf depth bounds.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("decide", help="report whether the bounds are realizable")
    _add_instance_flags(p)
    _add_solver_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decide)

    p = subs.add_parser("build", help="construct a witness tree")
    _add_instance_flags(p)
    _add_solver_flags(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", type=str, default=None, help="write to file instead of stdout")
    p.set_defaults(func=cmd_build)

    p = subs.add_parser("trace", help="dump every level of surviving signatures")
    _add_instance_flags(p)
    _add_solver_flags(p)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_trace)

    p = subs.add_parser("oracle", help="run an independent desk-scale ground truth")
    _add_instance_flags(p)
    p.add_argument("--method", choices=("recursive", "enumerate", "kraft"),
                   default="recursive")
    p.add_argument("--max-n", type=int, default=None,
                   help="override the method's instance-size limit")
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("selftest", help="sweep all small instances against the oracles")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-value", type=int, required=True)
    p.add_argument("--ks", type=str, required=True, help="comma-separated k values")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
