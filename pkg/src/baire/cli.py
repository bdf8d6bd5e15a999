"""Command-line driver: evaluation, transformations, loops, and check suites.

Everything is deterministic: identical flags and files give byte-identical
output.  Exit codes: 0 all consistent, 1 refutation, 2 usage or parse
error, 3 undetermined-only outcomes under --strict.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .machine import eval_stream, parse_machine_text
from .operators import (
    LoopInstance,
    classify_run,
    countdown_loop,
    diamond,
    inverse_limit,
    limnat_loop,
    omega,
    power_n,
    problem_loop,
    star,
    validate_run,
)
from .problems import CONSISTENT, REFUTED
from .reductions import simulate_limit_machine, witness_library
from .streams import Fuel, NeedMoreFuel, PlanStream, pair_stream, project
from .transform import const_transformer_name, injective_recursion, injection, quine, recursion_T, smn


@dataclass(frozen=True)
class Config:
    depth: int = 32
    fuel: int = 10**6
    seed: int = 0
    steps: int = 8
    seeds: int | None = None
    strict: bool = False
    fmt: str = "text"
    verify: bool = False
    validate: bool = False


class CliError(Exception):
    pass


def parse_input_spec(tokens) -> PlanStream:
    """Literal prefix plus a tail rule: `zeros` or `cycle w`."""
    head = []
    i = 0
    while i < len(tokens) and tokens[i] not in ("zeros", "cycle"):
        if tokens[i] != "eps":
            try:
                head.append(int(tokens[i]))
            except ValueError:
                raise CliError(f"input spec: not a natural: {tokens[i]!r}")
        i += 1
    if i >= len(tokens):
        raise CliError("input spec needs a tail rule: `zeros` or `cycle w`")
    if tokens[i] == "zeros":
        return PlanStream(tuple(head), ("zeros",))
    cyc = tuple(int(t) for t in tokens[i + 1 :])
    if not cyc:
        raise CliError("cycle tail needs at least one symbol")
    return PlanStream(tuple(head), ("cycle", cyc))


def seeded_input(seed: int) -> PlanStream:
    import random

    rng = random.Random(f"cli:{seed}")
    return PlanStream(tuple(rng.randrange(4) for _ in range(24)), ("zeros",))


def determined_report(stream, depth: int, fuel_per_index: int):
    """Per-index reads with a fresh budget each; fuel shortfalls are noted."""
    symbols = []
    spent = 0
    note = ""
    for i in range(depth):
        tank = Fuel(fuel_per_index)
        try:
            symbols.append(stream.at(i, tank))
        except NeedMoreFuel:
            spent += tank.spent
            note = f"index {i} undetermined at fuel {fuel_per_index}"
            break
        spent += tank.spent
    return symbols, spent, note


def emit(out, line=""):
    out.write(line + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args, cfg: Config, out) -> int:
    try:
        with open(args.machine) as fh:
            name = parse_machine_text(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read machine file: {exc}")
    except ValueError as exc:
        raise CliError(f"{args.machine}: {exc}")
    source = parse_input_spec(args.input)
    stream = eval_stream(name, source)
    symbols, spent, note = determined_report(stream, cfg.depth, cfg.fuel)
    emit(out, " ".join(map(str, symbols)) if symbols else "(nothing determined)")
    if note:
        emit(out, note)
    emit(out, f"fuel {spent}")
    return 0


def _agreement_lines(out, left, right, depth, fuel, label):
    disagreements = 0
    compared = 0
    tank = Fuel(fuel)
    for i in range(depth):
        try:
            a = left.at(i, tank)
            b = right.at(i, tank)
        except NeedMoreFuel:
            emit(out, f"{label} index {i} undetermined; stopping")
            break
        compared += 1
        if a == b:
            emit(out, f"{label} index {i} agree {a}")
        else:
            emit(out, f"{label} index {i} DISAGREE {a} vs {b}")
            disagreements += 1
    emit(out, f"{label} compared {compared} disagreements {disagreements}")
    return disagreements


def cmd_transform(args, cfg: Config, out) -> int:
    kind = args.kind
    disagreements = 0
    if kind == "quine":
        q = quine()
        symbols, spent, note = determined_report(q, cfg.depth, cfg.fuel)
        emit(out, " ".join(map(str, symbols)))
        if cfg.verify:
            p = seeded_input(cfg.seed)
            lhs = eval_stream(q, p)
            rhs = pair_stream(q, seeded_input(cfg.seed))
            disagreements = _agreement_lines(out, lhs, rhs, cfg.depth, cfg.fuel, "quine")
    elif kind in ("smn", "fix", "inject", "extract"):
        if not args.machine:
            raise CliError(f"transform {kind} needs --machine FILE")
        try:
            with open(args.machine) as fh:
                file_name = parse_machine_text(fh.read())
        except ValueError as exc:
            raise CliError(f"{args.machine}: {exc}")
        argument = (
            parse_input_spec(args.input) if args.input else seeded_input(cfg.seed)
        )
        if kind == "smn":
            S = smn(file_name.machine)
            specialized = S.apply(argument)
            symbols, _, _ = determined_report(specialized, cfg.depth, cfg.fuel)
            emit(out, " ".join(map(str, symbols)))
            if cfg.verify:
                p = seeded_input(cfg.seed + 1)
                lhs = eval_stream(specialized, p)
                rhs = eval_stream(
                    file_name,
                    pair_stream(argument, seeded_input(cfg.seed + 1)),
                )
                disagreements = _agreement_lines(out, lhs, rhs, cfg.depth, cfg.fuel, "smn")
        elif kind == "fix":
            p_name = const_transformer_name(file_name)
            fixed = recursion_T().apply(p_name)
            symbols, _, _ = determined_report(fixed, cfg.depth, cfg.fuel)
            emit(out, " ".join(map(str, symbols)))
            if cfg.verify:
                z = argument
                lhs = eval_stream(fixed, z)
                rhs = eval_stream(eval_stream(p_name, fixed), z)
                disagreements = _agreement_lines(out, lhs, rhs, cfg.depth, cfg.fuel, "fix")
        else:
            inj = injection()
            injected = eval_stream(inj.apply(file_name), argument)
            if kind == "inject":
                symbols, _, note = determined_report(injected, cfg.depth, cfg.fuel)
                emit(out, " ".join(map(str, symbols)))
                if note:
                    emit(out, note)
            else:  # extract
                recovered = inj.extract(injected)
                symbols, _, _ = determined_report(recovered, cfg.depth, cfg.fuel)
                emit(out, " ".join(map(str, symbols)))
                if cfg.verify:
                    disagreements = _agreement_lines(
                        out, recovered, argument, min(cfg.depth, 16), cfg.fuel, "extract"
                    )
    elif kind == "injrec":
        from .streams import odd_part

        R = injective_recursion(lambda rn, x, fuel: odd_part(x), "cli")
        argument = (
            parse_input_spec(args.input) if args.input else seeded_input(cfg.seed)
        )
        name = R.apply(argument)
        symbols, _, _ = determined_report(name, cfg.depth, cfg.fuel)
        emit(out, " ".join(map(str, symbols)))
        if cfg.verify:
            p = seeded_input(cfg.seed + 2)
            lhs = eval_stream(name, p)
            rhs = seeded_input(cfg.seed + 2)
            disagreements = _agreement_lines(
                out, lhs, rhs, min(cfg.depth, 16), cfg.fuel * 4, "injrec"
            )
    else:
        raise CliError(f"unknown transform kind: {kind}")
    return 1 if disagreements else 0


def parse_loop_file(text: str) -> LoopInstance:
    kind = None
    seed = 0
    params = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "problem":
            kind, seed = tokens[1], int(tokens[3])
        elif tokens[0] == "public:":
            it = iter(tokens[1:])
            for key in it:
                params[key] = int(next(it))
        elif tokens[0] == "witness:":
            continue
        else:
            raise CliError(f"loop file line {lineno}: unrecognized record {tokens[0]}")
    if kind is None:
        raise CliError("loop file needs a `problem <kind> seed <n>` line")
    steps = params.get("steps", 5)
    if kind == "countdown":
        return countdown_loop(params.get("n", 3), seed)
    if kind == "llpo-loop":
        return problem_loop("llpo", seed, steps)
    if kind == "cn-loop":
        return problem_loop("cn", seed, steps)
    if kind == "id-loop":
        return problem_loop("id", seed, steps)
    if kind == "limnat-loop":
        return limnat_loop(seed, steps)
    raise CliError(f"unknown loop kind: {kind}")


def cmd_loop(args, cfg: Config, out) -> int:
    try:
        with open(args.instance) as fh:
            loop = parse_loop_file(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read instance file: {exc}")
    op = args.op
    status = 0
    if op == "power":
        n = args.n if args.n is not None else 1
        result, records = power_n(loop.oracle, n, loop.q0)
        symbols, _, _ = determined_report(result, cfg.depth, cfg.fuel)
        emit(out, " ".join(map(str, symbols)))
        emit(out, f"calls {len(records)}")
    elif op == "star":
        from .operators import TaggedStream

        n = args.n if args.n is not None else 1
        tagged = TaggedStream(n, loop.q0)
        result, records = star(loop.oracle, tagged)
        symbols, _, _ = determined_report(result, cfg.depth, cfg.fuel)
        emit(out, " ".join(map(str, symbols)))
        emit(out, f"calls {len(records)}")
    elif op == "omega":
        result = omega(loop.oracle, loop.q0)
        for i in range(min(cfg.steps, 6)):
            symbols, _, _ = determined_report(project(result, i), min(cfg.depth, 12), cfg.fuel)
            emit(out, f"component {i}: " + " ".join(map(str, symbols)))
    elif op == "diamond":
        answer, run, cls = diamond(loop.oracle, loop.q0, cfg.steps, cfg.fuel)
        for line in run.trace_lines(cfg.fuel, min(cfg.depth, 10)):
            emit(out, line)
        emit(out, f"class {cls}")
        if cls.kind == "undetermined":
            status = 3 if cfg.strict else 0
    elif op == "infty":
        _, handle = inverse_limit(loop.oracle, loop.q0)
        run = handle.run(cfg.steps)
        for line in run.trace_lines(cfg.fuel, min(cfg.depth, 10)):
            emit(out, line)
        emit(out, f"class {classify_run(run, cfg.fuel)}")
        if cfg.validate:
            verdicts = validate_run(run, loop.oracle, depth=min(cfg.depth, 8))
            for i, v in enumerate(verdicts):
                emit(out, f"validate step {i} {v}")
            if REFUTED in verdicts:
                status = 1
            elif cfg.strict and CONSISTENT not in verdicts:
                status = 3
    else:
        raise CliError(f"unknown loop operation: {op}")
    return status


def cmd_check(args, cfg: Config, out) -> int:
    library = witness_library()
    if args.witness not in library:
        raise CliError(f"unknown witness: {args.witness}")
    entry = library[args.witness]
    kwargs = {}
    if cfg.seeds is not None:
        kwargs["seeds"] = cfg.seeds
    report = entry.run_check(**kwargs)
    for line in report.lines():
        emit(out, line)
    if report.refutations:
        return 1
    if cfg.strict and report.count(CONSISTENT) == 0:
        return 3
    return 0


def cmd_limsim(args, cfg: Config, out) -> int:
    try:
        with open(args.instance) as fh:
            loop = parse_loop_file(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read instance file: {exc}")
    result = simulate_limit_machine(loop, min(cfg.steps, loop.steps), scan_depth=cfg.depth)
    for line in result.trace_lines():
        emit(out, line)
    head, _, _ = determined_report(result.run.states[-1], min(cfg.depth, 12), cfg.fuel)
    emit(out, "final " + " ".join(map(str, head)))
    if result.verdict == REFUTED:
        return 1
    if not result.stabilized:
        emit(out, "undetermined: budget exhausted before stabilization")
        return 3 if cfg.strict else 0
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser() -> argparse.ArgumentParser:
    # the common flags may come before or after the subcommand; SUPPRESS
    # keeps an unset subcommand-level flag from shadowing a set global one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--depth", type=int, default=argparse.SUPPRESS, help="output indices to determine"
    )
    common.add_argument(
        "--fuel", type=int, default=argparse.SUPPRESS, help="step ceiling per query"
    )
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument(
        "--steps", type=int, default=argparse.SUPPRESS, help="loop step ceiling"
    )
    common.add_argument(
        "--seeds", type=int, default=argparse.SUPPRESS, help="suite size for check"
    )
    common.add_argument("--strict", action="store_true", default=argparse.SUPPRESS)
    common.add_argument(
        "--format", choices=("text", "records"), default=argparse.SUPPRESS
    )

    parser = argparse.ArgumentParser(
        prog="baire",
        description="workbench for continuous operations on Baire space",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="run a machine file on an input", parents=[common])
    p_eval.add_argument("machine")
    p_eval.add_argument("input", nargs="+", help="literal prefix then `zeros` or `cycle w`")

    p_tr = sub.add_parser("transform", help="apply a program transformation", parents=[common])
    p_tr.add_argument("kind", choices=("smn", "fix", "inject", "extract", "injrec", "quine"))
    p_tr.add_argument("--machine", default=None)
    p_tr.add_argument("--input", nargs="+", default=None)
    p_tr.add_argument("--verify", action="store_true")

    p_loop = sub.add_parser("loop", help="run a loop operator on an instance file", parents=[common])
    p_loop.add_argument("op", choices=("power", "star", "omega", "diamond", "infty"))
    p_loop.add_argument("instance")
    p_loop.add_argument("--n", type=int, default=None)
    p_loop.add_argument("--validate", action="store_true")

    p_check = sub.add_parser("check", help="verify a registered witness", parents=[common])
    p_check.add_argument("witness")

    p_sim = sub.add_parser("limsim", help="guess-and-restart simulation of a loop", parents=[common])
    p_sim.add_argument("instance")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = Config(
        depth=getattr(args, "depth", 32),
        fuel=getattr(args, "fuel", 10**6),
        seed=getattr(args, "seed", 0),
        steps=getattr(args, "steps", 8),
        seeds=getattr(args, "seeds", None),
        strict=getattr(args, "strict", False),
        fmt=getattr(args, "format", "text"),
        verify=getattr(args, "verify", False),
        validate=getattr(args, "validate", False),
    )
    handlers = {
        "eval": cmd_eval,
        "transform": cmd_transform,
        "loop": cmd_loop,
        "check": cmd_check,
        "limsim": cmd_limsim,
    }
    try:
        return handlers[args.command](args, cfg, out)
    except CliError as exc:
        emit(out, f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
