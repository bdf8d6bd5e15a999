import io

import pytest

from baire.cli import main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def identity_machine_file(tmp_path):
    lines = []
    word = []
    for sym in [1, 2, 3, 0, 0, 0, 0]:
        word.append(sym)
        lines.append(" ".join(map(str, word)) + " -> " + " ".join(map(str, word)))
    path = tmp_path / "identity.machine"
    path.write_text("eps -> eps\n" + "\n".join(lines))
    return str(path)


@pytest.fixture
def countdown_file(tmp_path):
    path = tmp_path / "count3.loop"
    path.write_text("problem countdown seed 0\npublic: n 3\nwitness: none\n")
    return str(path)


@pytest.fixture
def llpo_loop_file(tmp_path):
    path = tmp_path / "llpo.loop"
    path.write_text("problem llpo-loop seed 7\npublic: steps 5\nwitness: generator\n")
    return str(path)


@pytest.fixture
def limnat_loop_file(tmp_path):
    path = tmp_path / "limnat.loop"
    path.write_text("problem limnat-loop seed 3\npublic: steps 4\nwitness: generator\n")
    return str(path)


# --- eval ------------------------------------------------------------------------


def test_eval_identity_machine(identity_machine_file):
    code, text = run_cli("--depth", "5", "eval", identity_machine_file, "1", "2", "3", "zeros")
    assert code == 0
    assert text.splitlines()[0] == "1 2 3 0 0"
    assert text.splitlines()[-1].startswith("fuel ")


def test_eval_empty_machine(tmp_path):
    path = tmp_path / "empty.machine"
    path.write_text("")
    code, text = run_cli("--depth", "4", "--fuel", "2000", "eval", str(path), "zeros")
    assert code == 0
    assert "(nothing determined)" in text
    assert "index 0 undetermined" in text


def test_eval_malformed_machine_names_line(tmp_path):
    path = tmp_path / "bad.machine"
    path.write_text("eps -> 1\nnot a machine line")
    code, text = run_cli("eval", str(path), "zeros")
    assert code == 2
    assert "line 2" in text


def test_eval_is_byte_deterministic(identity_machine_file):
    runs = {
        run_cli("--depth", "7", "--fuel", "40000", "eval", identity_machine_file, "1", "2", "zeros")
        for _ in range(3)
    }
    assert len(runs) == 1


# --- transform --------------------------------------------------------------------


def test_transform_quine_verify_agrees():
    code, text = run_cli("--depth", "128", "transform", "quine", "--verify")
    assert code == 0
    assert "DISAGREE" not in text
    assert "compared 128 disagreements 0" in text


def test_transform_inject_then_extract(tmp_path, identity_machine_file):
    code, text = run_cli(
        "--depth",
        "3",
        "transform",
        "extract",
        "--machine",
        identity_machine_file,
        "--input",
        "4",
        "0",
        "2",
        "zeros",
    )
    assert code == 0
    assert text.splitlines()[0] == "4 0 2"


def test_transform_inject_shows_marker_blocks(identity_machine_file):
    code, text = run_cli(
        "--depth",
        "10",
        "transform",
        "inject",
        "--machine",
        identity_machine_file,
        "--input",
        "4",
        "0",
        "2",
        "zeros",
    )
    assert code == 0
    first = text.splitlines()[0].split()
    assert first[:6] == ["1", "0", "0", "0", "0", "1"]


def test_transform_fix_verifies(tmp_path):
    path = tmp_path / "const.machine"
    entries = []
    word = []
    for sym in [5, 9, 7, 7]:
        word.append(sym)
        entries.append(" ".join(map(str, [1, 2, 3][: min(len(word), 3)])) if False else None)
    # a small chain: outputs grow along inputs 0, 00, 000
    path.write_text("eps -> 5\n0 -> 5 9\n0 0 -> 5 9 7\n0 0 0 -> 5 9 7 7")
    code, text = run_cli(
        "--depth", "4", "transform", "fix", "--machine", str(path), "--input", "zeros", "--verify"
    )
    assert code == 0
    assert "DISAGREE" not in text


def test_transform_smn_verify(identity_machine_file):
    code, text = run_cli(
        "--depth", "16", "--fuel", "60000",
        "transform", "smn", "--machine", identity_machine_file,
        "--input", "1", "2", "3", "zeros", "--verify",
    )
    assert code == 0
    assert "DISAGREE" not in text


def test_transform_needs_machine_file():
    code, text = run_cli("transform", "smn")
    assert code == 2
    assert "needs --machine" in text


# --- loop -------------------------------------------------------------------------


def test_loop_diamond_countdown(countdown_file):
    code, text = run_cli("loop", "diamond", countdown_file)
    assert code == 0
    assert "class successful(3)" in text
    heads = [line.split()[3] for line in text.splitlines() if line.startswith("step ")]
    assert heads[:4] == ["3", "2", "1", "0"]


def test_loop_power_zero_echoes(countdown_file):
    code, text = run_cli("--depth", "6", "loop", "power", countdown_file, "--n", "0")
    assert code == 0
    assert "calls 0" in text


def test_loop_infty_validates(llpo_loop_file):
    code, text = run_cli("--steps", "5", "loop", "infty", llpo_loop_file, "--validate")
    assert code == 0
    assert text.count("validate step") == 5
    assert "refuted" not in text


def test_loop_star_counts_calls(llpo_loop_file):
    code, text = run_cli("loop", "star", llpo_loop_file, "--n", "4")
    assert code == 0
    assert "calls 4" in text


def test_loop_unknown_kind(tmp_path):
    path = tmp_path / "bogus.loop"
    path.write_text("problem mystery seed 0\n")
    code, text = run_cli("loop", "diamond", str(path))
    assert code == 2
    assert "unknown loop kind" in text


# --- check ------------------------------------------------------------------------


def test_check_identity_witness_exits_zero():
    code, text = run_cli("--seeds", "12", "check", "llpo-id")
    assert code == 0
    assert "summary llpo-id seeds 12 consistent" in text
    assert "refuted 0" in text


def test_check_broken_control_exits_one():
    code, text = run_cli("--seeds", "25", "check", "broken-lpo")
    assert code == 1
    assert "verdict refuted" in text


def test_flags_accepted_after_subcommand():
    code, text = run_cli("check", "c2-loop-lift", "--seeds", "3")
    assert code == 0
    assert "summary c2-loop-lift seeds 3" in text


def test_check_unknown_witness_exits_two():
    code, text = run_cli("check", "nonesuch")
    assert code == 2
    assert "unknown witness" in text


def test_check_output_sorted_and_deterministic():
    a = run_cli("--seeds", "8", "check", "c2-to-cn")
    b = run_cli("--seeds", "8", "check", "c2-to-cn")
    assert a == b
    seeds = [int(line.split()[3]) for line in a[1].splitlines() if line.startswith("check ")]
    assert seeds == sorted(seeds)


# --- limsim ------------------------------------------------------------------------


def test_limsim_runs_and_reports(limnat_loop_file):
    code, text = run_cli("limsim", limnat_loop_file)
    assert code == 0
    assert "restarts " in text
    assert "final " in text


def test_limsim_deterministic(limnat_loop_file):
    assert run_cli("limsim", limnat_loop_file) == run_cli("limsim", limnat_loop_file)


# --- exit code plumbing ---------------------------------------------------------------


def test_usage_error_exits_two():
    code, _ = run_cli("loop", "diamond", "/nonexistent/file.loop")
    assert code == 2
