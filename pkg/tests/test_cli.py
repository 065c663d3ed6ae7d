import subprocess
import sys

import pytest

from wfrefine import corpus
from wfrefine.cli import main
from wfrefine.formats import load_net
from wfrefine.marking import Marking
from wfrefine.pnml import parse_pnml
from wfrefine.reach import fire_sequence
from wfrefine.refine import structurally_equal, substitute_place
from wfrefine.soundness import check_sub_sound_bounded, initial_marking
from wfrefine.textio import parse_net_text, write_net_text


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_k1_fig7(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "fig7_N.net", "--k", 1)
    assert code == 0
    assert out == ("net: fig7_N (pWF, 3 places, 2 transitions)\n"
                   "check: 1-soundness\n"
                   "verdict: sound\n"
                   "states explored: 3\n")


def test_check_sub1_fig7(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "fig7_N.net", "--sub", 1)
    assert code == 1
    assert out == ("net: fig7_N (pWF, 3 places, 2 transitions)\n"
                   "check: substitution soundness, k=1..1\n"
                   "verdict: unsound\n"
                   "witness k: 1\n"
                   "witness k': 1\n"
                   "witness marking: [b, c]\n"
                   "stranded remainder: [b]\n"
                   "trace: A\n"
                   "states explored: 4\n")


def test_check_star_default_bound(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "one_not_two.net")
    assert code == 1
    assert "k=1: sound\n  k=2: unsound\n  k=3: unsound\n" in out
    assert "witness marking: [o]\ntrace: a b\n" in out


def test_check_sound_up_to(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "mk_family" / "M_2.net", "--sub", 2)
    assert code == 0 and "verdict: sound up to K=2" in out


def test_check_unknown_exit_code(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "mk_family" / "M_3.net", "--k", 1, "--cap", 3)
    assert code == 2 and "verdict: unknown" in out and "cap of 3" in out


def test_check_twf_note(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "transition_self_loop.net", "--k", 1)
    assert code == 1 and "place completion (added p_i, p_o)" in out


@pytest.mark.parametrize("name, k", [("fig7_N.net", 1), ("one_not_two.net", 2), ("output_feeds_input.net", 1)])
def test_printed_traces_replay(capsys, fixtures_dir, name, k):
    code, out, _ = run(capsys, "check", fixtures_dir / name, "--k", k)
    wf = load_net(fixtures_dir / name)
    lines = dict(line.split(": ", 1) for line in out.splitlines() if ": " in line)
    if code == 1:
        trace = [] if lines["trace"] == "(empty)" else lines["trace"].split()
        reached = fire_sequence(wf.net, initial_marking(wf, k), trace)
        assert str(reached) == lines["witness marking"]


def test_cli_agrees_with_library(capsys, fixtures_dir):
    for path in sorted(fixtures_dir.rglob("*.net")):
        code, _, _ = run(capsys, "check", path, "--sub", 2, "--cap", 20000)
        assert code == check_sub_sound_bounded(load_net(path), 2, 20000).outcome.exit_code, path


def test_classify_single_place(capsys, fixtures_dir):
    code, out, _ = run(capsys, "classify", fixtures_dir / "single_place.net")
    assert code == 0
    assert "pAND: true" in out and "11pOR: true" in out and "free-choice: true" in out


def test_substitute_writes_file(capsys, tmp_path, fixtures_dir):
    out_path = tmp_path / "out.net"
    code, _, _ = run(capsys, "substitute", fixtures_dir / "sequential3.net", "p",
                     fixtures_dir / "fig7_N.net", "-o", out_path)
    assert code == 0
    expected = substitute_place(corpus.sequential3(), "p", corpus.fig7_N())
    assert structurally_equal(load_net(out_path), expected)
    assert not list(tmp_path.glob(".*.tmp"))


def test_substitute_degenerate_note(capsys, fixtures_dir):
    code, out, err = run(capsys, "substitute", fixtures_dir / "single_place.net", "p",
                         fixtures_dir / "fig7_N.net")
    assert code == 0 and "both an input and an output" in err
    assert parse_net_text(out).inputs == {"p/a"}


def test_substitute_kind_error(capsys, fixtures_dir):
    code, _, err = run(capsys, "substitute", fixtures_dir / "sequential3.net", "p",
                       fixtures_dir / "transition_self_loop.net")
    assert code == 3 and "error:" in err


def test_complete(capsys, fixtures_dir):
    code, out, _ = run(capsys, "complete", fixtures_dir / "single_place.net", "--transition")
    assert code == 0
    wf = parse_net_text(out)
    assert wf.transitions == {"t_i", "t_o"}
    code, _, _ = run(capsys, "complete", fixtures_dir / "single_place.net", "--place")
    assert code == 3


def test_reduce(capsys, tmp_path, fixtures_dir):
    code, out, _ = run(capsys, "reduce", fixtures_dir / "sequential3.net", "--tp", "t1,p")
    assert code == 0
    assert parse_net_text(out).arcs == {("i", "t2"), ("t2", "o")}
    code, _, err = run(capsys, "reduce", fixtures_dir / "sequential3.net", "--tp", "t2,o")
    assert code == 3 and "neither an input nor an output" in err


def test_expand_thm2_script(capsys, fixtures_dir):
    code, out, _ = run(capsys, "expand", fixtures_dir / "thm2_roundtrip" / "tor_plus_pand.ref")
    assert code == 0
    assert structurally_equal(parse_net_text(out), corpus.thm2_target())


def test_generate_is_deterministic(capsys, tmp_path):
    code, first, _ = run(capsys, "generate", "--class", "11pOR", "--size", 8, "--seed", 4)
    _, second, _ = run(capsys, "generate", "--class", "11pOR", "--size", 8, "--seed", 4)
    assert code == 0 and first == second
    script = tmp_path / "tree.ref"
    code, out, _ = run(capsys, "generate", "--and-or", "--depth", 2, "--size", 4, "--seed", 9,
                       "--script", script)
    assert code == 0
    code, again, _ = run(capsys, "expand", script)
    assert structurally_equal(parse_net_text(out), parse_net_text(again))


def test_export_formats(capsys, tmp_path, fixtures_dir):
    code, out, _ = run(capsys, "export", fixtures_dir / "fig7_N.net", "--pnml")
    assert code == 0 and structurally_equal(parse_pnml(out), corpus.fig7_N())
    code, out, _ = run(capsys, "export", fixtures_dir / "fig7_N.net", "--dot", "--marking", "b:1,c:2")
    assert code == 0 and '"c" [shape=circle, label="2"' in out
    code, _, err = run(capsys, "export", fixtures_dir / "fig7_N.net", "--dot", "--marking", "zz")
    assert code == 3 and "zz" in err
    pnml_path = tmp_path / "fig7.pnml"
    code, _, _ = run(capsys, "export", fixtures_dir / "fig7_N.net", "--pnml", "-o", pnml_path)
    code, out, _ = run(capsys, "export", pnml_path, "--text")
    assert out == write_net_text(corpus.fig7_N())


@pytest.mark.parametrize("argv", [
    [], ["check"], ["check", "x.net", "--k", "0"], ["check", "x.net", "--k", "1", "--sub", "2"],
    ["reduce", "x.net", "--tp", "t"], ["export", "x.net"], ["nonsense"],
])
def test_usage_errors_exit_3(capsys, argv):
    assert main(argv) == 3
    assert capsys.readouterr().err


def test_missing_file_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.net")
    assert code == 3 and "nope.net" in err


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.net"
    bad.write_text("place p\narc p x\ninput p\noutput p\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 3 and "bad.net:2:" in err and "'x'" in err


def test_console_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "wfrefine.cli", "check", str(fixtures_dir / "fig7_N.net"),
                           "--sub", "1"], capture_output=True, text=True)
    assert proc.returncode == 1 and "stranded remainder: [b]" in proc.stdout


def test_marking_option_parses():
    assert Marking.parse("b:1,c:2") == Marking({"b": 1, "c": 2})
