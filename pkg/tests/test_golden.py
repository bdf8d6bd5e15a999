"""Golden-file checks: frozen byte-exact outputs of representative runs.

These catch accidental behavior drift that run-to-run determinism tests
cannot; regenerate deliberately when output is meant to change.
"""

import io
import pathlib

import pytest

from baire.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_golden_check_report():
    code, text = run("check", "llpo-id", "--seeds", "5")
    assert code == 0
    assert text == (GOLDEN / "check_llpo_id_5.txt").read_text()


def test_golden_diamond_trace():
    code, text = run("loop", "diamond", str(GOLDEN / "count3.loop"))
    assert code == 0
    assert text == (GOLDEN / "diamond_count3.txt").read_text()


def test_golden_quine_verification():
    code, text = run("--depth", "32", "transform", "quine", "--verify")
    assert code == 0
    assert text == (GOLDEN / "quine_verify_32.txt").read_text()
