"""Command-line entry point: ``ontic-toy <subcommand> ...``.

Exit codes: 0 success, 1 ill-formed input or syntax error, 2 consistency
violations reported by ``check`` (the frustrated three-domain model is
expected to fail, so ``check --variant 3d`` exits 0).
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .errors import ToyModelError
from .joint import canonicalize_joint
from .measurement import default_seed, measure, parse_test, trial_rng
from .model import ModelConfig, Variant, config_for
from .oracle import DEFAULT_BUDGET, confluence_check
from .parser import parse
from .protocols import derive_correction_table, dense_coding, emit_outcome_table, teleport
from .published import TEXT_NOTES, completion_search, published_diffs
from .tables import WHICH, build, to_text
from .transform import apply, named
from .values import Signed


def _config(args) -> ModelConfig:
    if getattr(args, "model", None):
        return ModelConfig.from_json(Path(args.model).read_text())
    return config_for(args.variant)


def _emit(data, fmt: str = "json") -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        print(data)


def _state(text: str, config: ModelConfig) -> Signed:
    return canonicalize_joint(parse(text, config), config)


def cmd_normalize(args) -> int:
    config = _config(args)
    value = _state(args.expr, config)
    if args.format == "json":
        _emit({"schema": 1, "input": args.expr, "canonical": value.render()})
    else:
        print(value.render())
    return 0


def cmd_apply(args) -> int:
    config = _config(args)
    value = _state(args.state, config)
    result = apply(named(args.transform, config), value, config, system=args.system)
    if args.format == "json":
        _emit({"schema": 1, "transform": args.transform, "state": value.render(), "result": result.render()})
    else:
        print(result.render())
    return 0


def cmd_measure(args) -> int:
    config = _config(args)
    value = _state(args.state, config)
    spec = parse_test(args.test, config, args.system)
    seed = default_seed() if args.seed is None else args.seed
    counts: Counter = Counter()
    posts: Counter = Counter()
    conclusive = True
    for i in range(args.trials):
        record = measure(value, spec, trial_rng(seed, i), config)
        counts[record.outcome_label] += 1
        posts[record.post_state.render()] += 1
        conclusive = conclusive and record.conclusive
    labels = [o.render() for o in spec.outcomes]
    _emit({"schema": 1, "state": value.render(), "test": spec.label, "outcomes": labels,
           "trials": args.trials, "seed": seed, "conclusive": conclusive,
           "counts": {label: counts[label] for label in labels},
           "frequencies": {label: counts[label] / args.trials for label in labels},
           "postStates": dict(sorted(posts.items()))})
    return 0


def cmd_protocol(args) -> int:
    config = _config(args)
    seed = default_seed() if args.seed is None else args.seed
    if args.protocol == "densecode":
        inputs = [args.input] if args.input else ["00", "01", "10", "11"]
    else:
        inputs = [args.input] if args.input else [k.render() for k in config.basis_states()]
    transcripts = []
    trial = 0
    for item in inputs:
        for _ in range(args.trials):
            rng = trial_rng(seed, trial)
            trial += 1
            if args.protocol == "densecode":
                t = dense_coding(item, None, config, rng)
            else:
                t = teleport(_state(item, config), None, config, rng)
            transcripts.append(t.to_dict())
    out = {"schema": 1, "protocol": args.protocol, "variant": config.variant.value, "seed": seed,
           "runs": len(transcripts), "successes": sum(t["success"] for t in transcripts),
           "transcripts": transcripts}
    if args.emit_table and args.protocol == "teleport":
        out["outcomeTable"] = emit_outcome_table(config)
        out["corrections"] = derive_correction_table(config)
    _emit(out)
    return 0 if out["successes"] == out["runs"] else 2


def cmd_tables(args) -> int:
    config = _config(args)
    tables = build(config, args.which)
    if args.format == "text":
        sys.stdout.write(to_text(tables))
    else:
        _emit(tables)
    return 0


def cmd_check(args) -> int:
    config = _config(args)
    report = confluence_check(config, args.depth, budget=args.budget)
    data = report.to_dict()
    if config.variant in (Variant.TWO_DOMAIN, Variant.FOUR_DOMAIN):
        search = completion_search() if config.variant is Variant.FOUR_DOMAIN else None
        data["publishedDiffs"] = published_diffs(config.variant.value, search)
        if search is not None:
            data["mapCompletions"] = search
            data["textNotes"] = list(TEXT_NOTES)
    if args.report:
        Path(args.report).write_text(json.dumps(data, indent=2) + "\n")
    _emit(data)
    if config.variant is Variant.THREE_DOMAIN_FRUSTRATED:
        return 0
    return 0 if report.ok else 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", default="2d", choices=[v.value for v in Variant if v is not Variant.RAW])
    common.add_argument("--model", help="JSON model config (overrides --variant)")
    common.add_argument("--format", choices=("json", "text"), help="default: text (json for tables)")

    p = argparse.ArgumentParser(prog="ontic-toy", description="Ontic toy-model engine.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="canonical form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("apply", parents=[common], help="apply a local transformation")
    s.add_argument("--transform", required=True)
    s.add_argument("--state", required=True)
    s.add_argument("--system", type=int, default=1)
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("measure", parents=[common], help="outcome histogram of a test")
    s.add_argument("--state", required=True)
    s.add_argument("--test", required=True, help="Mx, My, Mz, Mt, Mc-ii:ab or Mc-ij")
    s.add_argument("--system", type=int, default=1)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("protocol", parents=[common], help="run dense coding or teleportation")
    s.add_argument("--protocol", required=True, choices=("teleport", "densecode"))
    s.add_argument("--input", help="two bits or a state; all inputs when omitted")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.add_argument("--emit-table", action="store_true")
    s.set_defaults(func=cmd_protocol)

    s = sub.add_parser("tables", parents=[common], help="emit generated tables")
    s.add_argument("--which", choices=WHICH)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("check", parents=[common], help="bounded confluence and consistency check")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--report", help="also write the JSON report here")
    s.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "tables" else "text"
    try:
        return args.func(args)
    except ToyModelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
