"""Trace a few loops end to end: countdown, binary-choice, eventual-value.

Run from the repository root:

    python scripts/loop_trace_demo.py
"""

from baire.operators import (
    classify_run,
    countdown_loop,
    diamond,
    inverse_limit,
    limnat_loop,
    problem_loop,
    validate_run,
)
from baire.reductions import simulate_limit_machine


def show(title, lines):
    print(f"== {title} ==")
    for line in lines:
        print("  " + line)
    print()


def main():
    loop = countdown_loop(3)
    answer, run, cls = diamond(loop.oracle, loop.q0, step_ceiling=6)
    show("while loop, counting down from 3", run.trace_lines() + [f"class {cls}"])

    llpo = problem_loop("llpo", seed=7, steps=6)
    _, handle = inverse_limit(llpo.oracle, llpo.q0)
    run = handle.run(6)
    verdicts = validate_run(run, llpo.oracle, depth=6)
    show(
        "infinite loop over binary choice (seed 7)",
        run.trace_lines()
        + [f"class {classify_run(run)}"]
        + [f"validate step {i} {v}" for i, v in enumerate(verdicts)],
    )

    lim = limnat_loop(seed=11, steps=5)
    result = simulate_limit_machine(lim, 5)
    show(
        f"guess-and-restart over eventual values (seed 11, "
        f"{lim.meta['total_changes']} planned changes)",
        result.trace_lines(),
    )


if __name__ == "__main__":
    main()
