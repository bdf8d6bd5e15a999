"""Reduction witnesses and their finite-precision verification.

A reduction witness is a pair of machines (K, H): K translates an instance
name for the target problem's solver, H translates the answer back (the
weak form also sees the original input).  Verification is one-sided by
construction: a refutation is conclusive, while zero refutations at finite
depth is monotone evidence only, and every report says so.

The same harness drives loop-level witnesses (where the target is run as
an infinite loop), nondeterministic computations with advice (a guessing
solver plus a Sierpinski-valued advice checker), their lift from one step
to whole loops, and the mind-change simulation that computes eventual-value
loops on a guess-and-restart machine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional

from .machine import MachineStream, WordMachine, pure_machine
from .operators import (
    LoopInstance,
    LoopStates,
    Run,
    StepOracle,
    StepRecord,
    generic_universal,
    inverse_limit,
    lift_reduction_to_inverse_limit,
    limnat_loop,
    problem_loop,
    run_lifted_loop,
    run_loop,
)
from .problems import (
    CONSISTENT,
    Instance,
    REFUTED,
    UNDETERMINED,
    get_problem,
    get_realizer,
    value_stream,
)
from .streams import (
    Fuel,
    FuelLike,
    NeedMoreFuel,
    Stream,
    Word,
    as_fuel,
    even_part,
    pair_stream,
    project,
    tuple_countable,
    unpair_stream,
)

DISCLAIMER = (
    "zero refutations at finite depth is monotone evidence, never a proof; "
    "a refutation is conclusive"
)


@dataclass
class CheckReport:
    """Outcome of a seeded verification suite, diff-stable and one-sided."""

    witness: str
    depth: int
    records: List[tuple] = field(default_factory=list)  # (seed, verdict, detail)
    fuel_spent: int = 0
    disclaimer: str = DISCLAIMER

    def add(self, seed: int, verdict: str, detail: str = ""):
        self.records.append((seed, verdict, detail))

    def count(self, verdict: str) -> int:
        return sum(1 for _, v, _ in self.records if v == verdict)

    @property
    def refutations(self) -> int:
        return self.count(REFUTED)

    @property
    def undetermined(self) -> int:
        return self.count(UNDETERMINED)

    def ok(self) -> bool:
        return self.refutations == 0

    def lines(self) -> List[str]:
        out = []
        for seed, verdict, detail in sorted(self.records):
            line = f"check {self.witness} seed {seed} depth {self.depth} verdict {verdict}"
            if detail:
                line += f" {detail}"
            out.append(line)
        out.append(
            f"summary {self.witness} seeds {len(self.records)}"
            f" consistent {self.count(CONSISTENT)}"
            f" refuted {self.refutations}"
            f" undetermined {self.undetermined}"
            f" fuel {self.fuel_spent}"
        )
        out.append(f"note {self.disclaimer}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines())


# ---------------------------------------------------------------------------
# one-step reduction witnesses


@dataclass
class ReductionWitness:
    """Machines (K, H) reducing problem `f_name` to problem `g_name`.

    `translate(f_instance, k_output)` builds the target-side instance an
    oracle realizer can answer; checkers never see it.  The weak form
    feeds H the pair <original input, answer>, the strong form only the
    answer.
    """

    label: str
    f_name: str
    g_name: str
    K: WordMachine
    H: WordMachine
    strong: bool = False
    translate: Optional[Callable[[Instance, Stream], Instance]] = None


def check_reduction(
    witness: ReductionWitness,
    seeds: int = 50,
    depth: int = 32,
    fuel: FuelLike = None,
    prefix_len: int = 8,
) -> CheckReport:
    """Run a witness over seeded instances and judge with the f-checker."""
    if witness.translate is None:
        raise ValueError(f"witness {witness.label} has no instance translation")
    f_problem = get_problem(witness.f_name)
    g_realizer = get_realizer(witness.g_name)
    report = CheckReport(witness.label, depth)
    for seed in range(seeds):
        tank = Fuel(10**6) if fuel is None else as_fuel(fuel)
        inst = f_problem.generate(seed)
        k_out = MachineStream(witness.K, inst.public_name)
        g_inst = witness.translate(inst, k_out)
        answer = g_realizer.solve(g_inst)
        if witness.strong:
            h_in = answer
        else:
            h_in = pair_stream(inst.public_name, answer)
        out = MachineStream(witness.H, h_in)
        got = out.determined_prefix(prefix_len, tank)
        verdict = f_problem.check_solution(inst, got, depth)
        detail = "" if verdict != REFUTED else f"output {list(got)}"
        report.add(seed, verdict, detail)
        report.fuel_spent += tank.spent
    return report


# ---------------------------------------------------------------------------
# loop-level checking


def check_loop_run(
    run: Run,
    instances: Callable[[int], Instance],
    base_problem,
    depth: int,
    budget: int = 600_000,
) -> str:
    """Membership test for a run: answers pass the base checker and every
    state follows from its predecessor through the generic universal face."""
    any_checked = False
    for i, record in enumerate(run.records):
        if record.answer is None:
            return UNDETERMINED
        answer = record.answer.determined_prefix(4, Fuel(budget))
        verdict = base_problem.check_solution(instances(i), answer, depth)
        if verdict == REFUTED:
            return REFUTED
        program, _ = unpair_stream(run.states[i])
        expected = generic_universal(program, record.answer)
        got = run.states[i + 1].determined_prefix(depth, Fuel(budget))
        want = expected.determined_prefix(depth, Fuel(budget))
        short = min(len(got), len(want))
        if got[:short] != want[:short]:
            return REFUTED
        if short:
            any_checked = True
    return CONSISTENT if any_checked else UNDETERMINED


def check_lifted_reduction(
    lift,
    make_loop: Callable[[int], LoopInstance],
    translate_step: Callable[[Instance, Stream], Instance],
    g_name: str,
    seeds: int = 50,
    depth: int = 5,
    steps: int = 5,
) -> CheckReport:
    """Verify a loop-to-loop witness: run the translated loop, extract the
    original run from the program parts, and validate it step by step."""
    g_realizer = get_realizer(g_name)
    base_problem = get_problem(make_loop(0).base_problem)
    report = CheckReport(lift.label, depth)
    for seed in range(seeds):
        loop = make_loop(seed)

        def g_answer(data, i):
            return g_realizer.solve(translate_step(loop.step_instance(i), data))

        translated, originals = run_lifted_loop(lift, loop, g_answer, steps)
        reference = run_loop(make_loop(seed).q0, make_loop(seed).oracle, steps)
        verdict = CONSISTENT
        compared = 0
        budget = Fuel(4_000_000)
        try:
            for i in range(steps + 1):
                extracted = lift.h_components([translated.states[i]])[0]
                got = extracted.determined_prefix(depth, budget)
                want = reference.states[i].determined_prefix(depth, budget)
                short = min(len(got), len(want))
                if got[:short] != want[:short]:
                    verdict = REFUTED
                    break
                compared += short
        except NeedMoreFuel:
            verdict = UNDETERMINED
        if verdict == CONSISTENT and compared == 0:
            verdict = UNDETERMINED
        report.add(seed, verdict)
        report.fuel_spent += budget.spent
    return report


# ---------------------------------------------------------------------------
# nondeterministic computation with advice


@dataclass
class AdviceSpace:
    """Sampler plus oracle-side helpful advice for a guessing solver."""

    label: str
    helpful: Callable[[object], Stream]
    sample: Callable[[int], Stream]


@dataclass
class NonDetWitness:
    """Guessing solver F1 with Sierpinski-valued advice checker F2.

    F2's output stays zero exactly while the advice keeps looking helpful;
    whenever it stays zero through the whole depth, F1's output must pass
    the problem's checker.  The unique variant has one helpful advice.
    """

    label: str
    F1: Callable[[Stream, Stream], Stream]
    F2: Callable[[Stream, Stream], Stream]
    advice: AdviceSpace
    unique: bool = False


def nonzero_within(stream: Stream, depth: int, fuel: Fuel) -> Optional[int]:
    for k in range(depth):
        try:
            if stream.at(k, fuel) != 0:
                return k
        except NeedMoreFuel:
            return None
    return None


def check_nondet(
    witness: NonDetWitness,
    problem_name: str,
    seeds: int = 200,
    depth: int = 32,
    adversarial: int = 3,
) -> CheckReport:
    """One-sided verification of the two advice conditions.

    Helpful advice must keep F2 at zero through the depth and make F1's
    output pass the checker; sampled advice only obligates F1 when F2
    shows no nonzero within the depth, and a nonzero F2 is recorded, not
    failed.  Condition one is checked on the supplied witness advice only
    and condition two only up to the depth.
    """
    problem = get_problem(problem_name)
    report = CheckReport(witness.label, depth)
    report.disclaimer = (
        DISCLAIMER + "; helpfulness checked on supplied advice, rejection up to depth"
    )
    for seed in range(seeds):
        tank = Fuel(2_000_000)
        inst = problem.generate(seed)
        r = witness.advice.helpful(inst)
        flagged = nonzero_within(witness.F2(inst.public_name, r), depth, tank)
        if flagged is not None:
            report.add(seed, REFUTED, f"helpful advice flagged at {flagged}")
            continue
        got = witness.F1(inst.public_name, r).determined_prefix(6, tank)
        verdict = problem.check_solution(inst, got, depth)
        if verdict == REFUTED:
            report.add(seed, REFUTED, "helpful advice, refuted output")
            continue
        detail = ""
        for j in range(adversarial):
            r_bad = witness.advice.sample(seed * 31 + j)
            flagged = nonzero_within(witness.F2(inst.public_name, r_bad), depth, tank)
            if flagged is not None:
                detail = f"sample flagged at {flagged}"
                continue  # recorded, not a failure
            got_bad = witness.F1(inst.public_name, r_bad).determined_prefix(6, tank)
            if problem.check_solution(inst, got_bad, depth) == REFUTED:
                verdict = REFUTED
                detail = "unflagged sample gave refuted output"
                break
        report.add(seed, verdict, detail)
        report.fuel_spent += tank.spent
    return report


def c2_nondet_witness() -> NonDetWitness:
    """Binary choice by guessing: advice carries the chosen bit."""

    first_of_advice = pure_machine(
        lambda w: (w[1],) + (0,) * (len(w) // 2 - 1) if len(w) >= 2 else (),
        "advice-bit",
    )

    def F1(p, r):
        return MachineStream(first_of_advice, pair_stream(p, r))

    flagger = pure_machine(_flag_excluded_bit, "flag-excluded")

    def F2(p, r):
        return MachineStream(flagger, pair_stream(p, r))

    advice = AdviceSpace(
        "bits",
        helpful=lambda inst: value_stream(inst.hidden[1]),
        sample=lambda seed: value_stream(random.Random(f"adv:{seed}").randrange(2)),
    )
    return NonDetWitness("c2-nondet", F1, F2, advice)


def _flag_excluded_bit(w: Word) -> Word:
    if len(w) < 2:
        return ()
    bit = w[1]
    scanned = even_part(w)
    return tuple(1 if s == bit + 1 else 0 for s in scanned)


def broken_c2_nondet_witness() -> NonDetWitness:
    """Negative control: F1 names the excluded point whenever one exists."""
    good = c2_nondet_witness()

    def F1(p, r):
        def value(n):
            if n > 0:
                return 0
            for k in range(16):
                s = p.at(k)
                if s > 0:
                    return s - 1  # the excluded point
            return 0

        from .streams import FunctionStream

        return FunctionStream(value)

    return NonDetWitness("broken-c2-nondet", F1, good.F2, good.advice)


# ---------------------------------------------------------------------------
# lifting nondeterminism to loops


@dataclass
class LoopAdviceSpace:
    label: str
    helpful: Callable[[LoopInstance], Stream]
    sample: Callable[[LoopInstance, int], Stream]


@dataclass
class LoopNonDetWitness:
    """Advice-driven loop runner G1 with the staged advice checker G2."""

    label: str
    base: NonDetWitness
    unique: bool = False

    def advice_oracle(self, advice: Stream) -> StepOracle:
        consulted = []

        def answer(data, i):
            consulted.append(i)
            return self.base.F1(data, project(advice, i))

        oracle = StepOracle(f"{self.label}-advice", answer)
        oracle.consulted = consulted
        return oracle

    def g1(self, q0: Stream, advice: Stream):
        oracle = self.advice_oracle(advice)
        out, loop = inverse_limit(oracle, q0)
        return out, loop, oracle

    def g2(self, q0: Stream, advice: Stream) -> Stream:
        return _StagedAdviceCheck(self, q0, advice)


class _StagedAdviceCheck(Stream):
    """Sierpinski output for a whole loop: zero while every per-step check
    stays zero, nonzero from the first stage where one fails.

    Stage t inspects checks 0..t at diagonal depths, so a failing step is
    found at a finite stage, and the all-zero limit means every per-step
    check stayed clean forever.
    """

    def __init__(self, witness: LoopNonDetWitness, q0: Stream, advice: Stream):
        self.witness = witness
        self.advice = advice
        self.loop = LoopStates(q0, witness.advice_oracle(advice))
        self._checks = {}
        self._scanned = 0
        self.fail_stage = None
        self.fail_step = None

    def _check_stream(self, i: int) -> Stream:
        if i not in self._checks:
            _, data = unpair_stream(self.loop.state(i))
            self._checks[i] = self.witness.base.F2(data, project(self.advice, i))
        return self._checks[i]

    def at(self, n: int, fuel: FuelLike = None) -> int:
        fuel = as_fuel(fuel)
        while self.fail_stage is None and self._scanned <= n:
            t = self._scanned
            for i in range(t + 1):
                if self._check_stream(i).at(t - i, fuel) != 0:
                    self.fail_stage = t
                    self.fail_step = i
                    break
            else:
                self._scanned = t + 1
        if self.fail_stage is not None and n >= self.fail_stage:
            return 1
        return 0


def nondet_lift_inverse_limit(
    base: NonDetWitness, label: str = "", unique: bool = False
) -> LoopNonDetWitness:
    """Advice space goes from A to A-sequences: component i of the advice
    answers step i, consulted exactly once, and the lifted checker fails
    exactly when the first per-step check does."""
    return LoopNonDetWitness(label or f"{base.label}-loop", base, unique)


def loop_advice_space(base: NonDetWitness) -> LoopAdviceSpace:
    def helpful(loop: LoopInstance) -> Stream:
        return tuple_countable(lambda i: base.advice.helpful(loop.step_instance(i)))

    def sample(loop: LoopInstance, seed: int) -> Stream:
        rng = random.Random(f"loop-adv:{seed}")
        poison = rng.randrange(loop.steps)

        def component(i):
            if i == poison:
                return base.advice.sample(seed * 97 + i)
            return base.advice.helpful(loop.step_instance(i))

        return tuple_countable(component)

    return LoopAdviceSpace(f"{base.advice.label}^w", helpful, sample)


def check_loop_nondet(
    lifted: LoopNonDetWitness,
    make_loop: Callable[[int], LoopInstance],
    seeds: int = 200,
    depth: int = 32,
    steps: int = 5,
    adversarial: int = 2,
) -> CheckReport:
    """Verify the lifted witness over seeded loops.

    Helpful advice must keep the staged checker at zero and produce a run
    every step of which passes the base checker and the generic universal
    face; flagged samples are recorded; unflagged samples must also yield
    valid runs.
    """
    space = loop_advice_space(lifted.base)
    base_problem = get_problem(make_loop(0).base_problem)
    report = CheckReport(lifted.label, depth)
    report.disclaimer = (
        DISCLAIMER + "; helpfulness checked on supplied advice, rejection up to depth"
    )
    for seed in range(seeds):
        loop = make_loop(seed)
        advice = space.helpful(loop)
        g2 = lifted.g2(loop.q0, advice)
        tank = Fuel(6_000_000)
        flagged = nonzero_within(g2, depth, tank)
        if flagged is not None:
            report.add(seed, REFUTED, f"helpful advice flagged at {flagged}")
            continue
        _, run_handle, oracle = lifted.g1(loop.q0, advice)
        run = run_handle.run(steps)
        verdict = check_loop_run(run, loop.step_instance, base_problem, 5)
        if sorted(set(oracle.consulted)) != list(range(steps)):
            verdict = REFUTED
        detail = ""
        if verdict != REFUTED:
            for j in range(adversarial):
                bad = space.sample(loop, seed * 13 + j)
                flagged = nonzero_within(lifted.g2(loop.q0, bad), depth, tank)
                if flagged is not None:
                    detail = f"sample flagged at {flagged}"
                    continue
                _, bad_handle, _ = lifted.g1(loop.q0, bad)
                bad_run = bad_handle.run(steps)
                if check_loop_run(bad_run, loop.step_instance, base_problem, 5) == REFUTED:
                    verdict = REFUTED
                    detail = "unflagged advice gave an invalid run"
                    break
        report.add(seed, verdict, detail)
        report.fuel_spent += tank.spent
    return report


# ---------------------------------------------------------------------------
# the mind-change simulation


@dataclass
class SimulationResult:
    run: Run
    trace: List[tuple]  # (level, old value, new value, position)
    restarts: int
    stabilized: bool
    verdict: str
    fuel_spent: int = 0

    def trace_lines(self) -> List[str]:
        out = [
            f"revise level {lvl} {old}->{new} at {pos}" for lvl, old, new, pos in self.trace
        ]
        out.append(f"restarts {self.restarts} stabilized {self.stabilized} verdict {self.verdict}")
        return out


def simulate_limit_machine(
    loop: LoopInstance,
    steps: Optional[int] = None,
    scan_depth: int = 24,
    budget: int = 4_000_000,
) -> SimulationResult:
    """Run an eventual-value loop by guessing each level's limit.

    Every level is assumed constant at its latest seen value; downstream
    states are computed from the guesses and thrown away whenever an
    upstream level changes its mind.  With finitely many changes the
    guesses stabilize and the final run validates like an oracle run.
    """
    from .machine import eval_stream

    steps = loop.steps if steps is None else steps
    fuel = Fuel(budget)
    problem = get_problem(loop.base_problem)
    states = [loop.q0]
    guesses: List[list] = []  # per level: [value, scanned-upto]
    answers: List[Stream] = []
    trace = []
    restarts = 0

    def data_at(i):
        return unpair_stream(states[i])[1]

    def rebuild_from(i):
        # downstream states depend on the revised answer; the guesses and
        # scan positions stay, because the data parts a loop hands out are
        # the same streams regardless of the answers fed to its programs
        del states[i + 1 :]
        for j in range(i, len(guesses)):
            program, _ = unpair_stream(states[j])
            states.append(eval_stream(program, answers[j]))

    try:
        while True:
            while len(guesses) < steps:
                i = len(guesses)
                v = data_at(i).at(0, fuel)
                guesses.append([v, 1])
                answers.append(value_stream(v))
                program, _ = unpair_stream(states[i])
                states.append(eval_stream(program, answers[i]))
            progressed = False
            for i in range(steps):
                pos = guesses[i][1]
                if pos >= scan_depth:
                    continue
                progressed = True
                v = data_at(i).at(pos, fuel)
                guesses[i][1] = pos + 1
                if v != guesses[i][0]:
                    trace.append((i, guesses[i][0], v, pos))
                    restarts += 1
                    guesses[i][0] = v
                    answers[i] = value_stream(v)
                    rebuild_from(i)
                    break
            if not progressed:
                break
    except NeedMoreFuel:
        run = Run(states, [StepRecord(i, "guess", answers[i]) for i in range(len(answers))])
        return SimulationResult(run, trace, restarts, False, UNDETERMINED, fuel.spent)
    records = [StepRecord(i, "guess", answers[i]) for i in range(steps)]
    run = Run(states, records)
    verdict = check_loop_run(run, loop.step_instance, problem, scan_depth)
    return SimulationResult(run, trace, restarts, True, verdict, fuel.spent)


# ---------------------------------------------------------------------------
# shipped witnesses


def _answer_back(w: Word) -> Word:
    """Value convention for weak witnesses: pass the answer's first symbol."""
    if len(w) < 2:
        return ()
    return (w[1],) + (0,) * (len(w) // 2 - 1)


def identity_llpo_witness() -> ReductionWitness:
    K = pure_machine(lambda w: w, "K-id")
    H = pure_machine(_answer_back, "H-back")
    return ReductionWitness(
        "llpo-id", "llpo", "llpo", K, H, False, lambda inst, k_out: inst
    )


def embed_llpo_in_cn_machine() -> WordMachine:
    """Exclusions of 0 and 1 carry over; every natural above 1 is excluded."""

    def apply(w):
        out = []
        for t, s in enumerate(w):
            out.append(s if s <= 2 else 0)
            out.append(t + 3)  # symbol t+3 excludes the point t+2
        return tuple(out)

    return pure_machine(apply, "K-embed")


def c2_to_cn_witness() -> ReductionWitness:
    K = embed_llpo_in_cn_machine()
    H = pure_machine(_answer_back, "H-back")

    def translate(inst, k_out):
        return Instance("cn", inst.seed, k_out, inst.hidden, {"from": "llpo"})

    return ReductionWitness("c2-to-cn", "llpo", "cn", K, H, False, translate)


def llpo_to_cantor_witness() -> ReductionWitness:
    """Exclusion of a point becomes exclusion of the length-one cylinder."""
    K = pure_machine(lambda w: tuple(0 if s == 0 else s + 1 for s in w), "K-cyl")
    H = pure_machine(_answer_back, "H-bit")

    def translate(inst, k_out):
        bit = inst.hidden[1]
        return Instance("wkl", inst.seed, k_out, ("path", (bit,), (0, 0)), {})

    return ReductionWitness("llpo-to-cantor", "llpo", "wkl", K, H, False, translate)


def limnat_to_lim_witness() -> ReductionWitness:
    """A finitely-changing sequence of naturals as a convergent stream tuple."""

    def k_apply(w):
        from .streams import cantor_unpair

        out = []
        j = 0
        while True:
            n, _ = cantor_unpair(j)
            if n >= len(w):
                break
            out.append(w[n])
            j += 1
        return tuple(out)

    K = pure_machine(k_apply, "K-tuple")
    H = pure_machine(lambda w: (w[0],) + (0,) * (len(w) - 1) if w else (), "H-value")

    def translate(inst, k_out):
        v, s = inst.hidden[1], inst.hidden[2]
        commits = [(k, v, s) for k in range(40)]
        return Instance("lim", inst.seed, k_out, ("limit", (v,) * 40), {"commits": commits})

    return ReductionWitness("limn-to-lim", "limnat", "lim", K, H, True, translate)


def broken_lpo_witness() -> ReductionWitness:
    """Negative control: claims "all zero" on every input."""
    K = pure_machine(lambda w: w, "K-id")
    H = pure_machine(lambda w: (1,) + (0,) * (len(w) - 1) if w else (), "H-always-1")
    return ReductionWitness(
        "broken-lpo", "lpo", "lpo", K, H, False, lambda inst, k_out: inst
    )


def c2_cn_lift():
    return lift_reduction_to_inverse_limit(
        embed_llpo_in_cn_machine(), pure_machine(_answer_back, "H-back"), "c2-cn-loop-lift"
    )


def _translate_llpo_step_to_cn(inst: Instance, data: Stream) -> Instance:
    k_out = MachineStream(embed_llpo_in_cn_machine(), inst.public_name)
    return Instance("cn", inst.seed, k_out, inst.hidden, {"from": "llpo"})


def simulation_report(seeds: int = 100, depth: int = 24, steps: int = 5) -> CheckReport:
    """Suite driver for the mind-change simulation over seeded loops."""
    report = CheckReport("cn-loop-limsim", depth)
    for seed in range(seeds):
        loop = limnat_loop(seed, steps)
        result = simulate_limit_machine(loop, steps, scan_depth=depth)
        budget_ok = result.restarts <= loop.meta["total_changes"]
        if not result.stabilized:
            report.add(seed, UNDETERMINED, "budget exhausted")
        elif result.verdict == REFUTED or not budget_ok:
            report.add(seed, REFUTED, f"restarts {result.restarts}")
        else:
            report.add(seed, result.verdict, f"restarts {result.restarts}")
        report.fuel_spent += result.fuel_spent
    return report


# ---------------------------------------------------------------------------
# the registry


@dataclass
class WitnessEntry:
    name: str
    kind: str
    run_check: Callable[..., CheckReport]
    describe: str = ""


@lru_cache(maxsize=1)
def witness_library() -> dict:
    """Executable witnesses by name; lookups always return the same objects."""
    entries = {}

    def add(name, kind, run_check, describe):
        entries[name] = WitnessEntry(name, kind, run_check, describe)

    add(
        "llpo-id",
        "reduction",
        lambda seeds=500, depth=32: check_reduction(identity_llpo_witness(), seeds, depth),
        "binary choice reduced to itself by the identity witness",
    )
    add(
        "c2-to-cn",
        "reduction",
        lambda seeds=500, depth=32: check_reduction(c2_to_cn_witness(), seeds, depth),
        "binary choice embedded into choice on the naturals",
    )
    add(
        "llpo-to-cantor",
        "reduction",
        lambda seeds=200, depth=32: check_reduction(llpo_to_cantor_witness(), seeds, depth),
        "binary choice as a path choice through length-one cylinders",
    )
    add(
        "limn-to-lim",
        "reduction",
        lambda seeds=200, depth=32: check_reduction(limnat_to_lim_witness(), seeds, depth),
        "eventual values embedded into stream limits (strong witness)",
    )
    add(
        "c2-loop-lift",
        "nondet-loop",
        lambda seeds=200, depth=32: check_loop_nondet(
            nondet_lift_inverse_limit(c2_nondet_witness(), "c2-loop-lift"),
            lambda s: problem_loop("llpo", s, 5),
            seeds,
            depth,
            steps=5,
        ),
        "advice-guessing binary-choice loops: independent choice, lifted",
    )
    add(
        "c2-loop-lift-unique",
        "nondet-loop",
        lambda seeds=200, depth=32: check_loop_nondet(
            nondet_lift_inverse_limit(c2_nondet_witness(), "c2-loop-lift-unique", unique=True),
            lambda s: problem_loop("llpo", s, 5),
            seeds,
            depth,
            steps=5,
            adversarial=0,
        ),
        "the unique-advice variant: only the witness advice is consulted",
    )
    add(
        "c2-cn-loop-lift",
        "loop-reduction",
        lambda seeds=50, depth=5: check_lifted_reduction(
            c2_cn_lift(),
            lambda s: problem_loop("llpo", s, 5),
            _translate_llpo_step_to_cn,
            "cn",
            seeds,
            depth,
            steps=5,
        ),
        "one-step embedding lifted to whole loops by the injective fixed point",
    )
    add(
        "cn-loop-limsim",
        "simulation",
        simulation_report,
        "eventual-value loops computed by guess-and-restart",
    )
    add(
        "broken-lpo",
        "negative-control",
        lambda seeds=100, depth=32: check_reduction(broken_lpo_witness(), seeds, depth),
        "claims every input is zero; refuted on the nonzero instances",
    )
    add(
        "broken-c2-nondet",
        "negative-control",
        lambda seeds=100, depth=32: check_nondet(
            broken_c2_nondet_witness(), "llpo", seeds, depth
        ),
        "guesses the excluded point; refuted under helpful advice",
    )
    return entries
