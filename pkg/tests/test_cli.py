"""Command line driver: exit codes, report rendering, determinism."""

import subprocess
import sys
from pathlib import Path

import pytest

from valtwist.cli import main

SETUPS = Path(__file__).resolve().parents[1] / "setups"


def run(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def setup_path(name):
    return str(SETUPS / name)


class TestRingAxioms:
    def test_free_setup_passes(self, capsys):
        rc, out, err = run(capsys, "ring-axioms", "--setup", setup_path("free_lex.vt"))
        assert rc == 0
        assert "ring-axioms[free]: PASS" in out
        assert "cocycle[free]: PASS" in out
        assert "trivial=true" in out

    def test_twisted_table_is_reported_nontrivial(self, capsys):
        rc, out, _ = run(
            capsys, "ring-axioms", "--setup", setup_path("twisted_2x.vt")
        )
        assert rc == 0
        assert "trivial=false first_failing_pair=(1, 1)" in out

    def test_machine_mode(self, capsys):
        rc, out, _ = run(
            capsys,
            "ring-axioms", "--setup", setup_path("twisted_2x.vt"), "--machine",
        )
        assert rc == 0
        first = out.splitlines()[0]
        assert first.startswith("suite name=ring-axioms[doubled] status=PASS")


class TestIsoVerify:
    def test_free_and_twisted(self, capsys):
        for name in ("free_lex.vt", "twisted_2x.vt"):
            rc, out, _ = run(capsys, "iso-verify", "--setup", setup_path(name))
            assert rc == 0
            assert "psi-well-defined-injective" in out
            assert "FAIL" not in out
            assert "cancelling-branch trials:" in out

    def test_roundtrip_runs_with_constant_lifting(self, capsys):
        rc, out, _ = run(capsys, "iso-verify", "--setup", setup_path("free_lex.vt"))
        assert rc == 0
        assert "psi-roundtrip[free]: PASS" in out


class TestBuild:
    def test_radical_chain(self, capsys):
        rc, out, _ = run(capsys, "build", "--setup", setup_path("chain_radical.vt"))
        assert rc == 0
        assert "step 0: extend by 1/2" in out
        assert "radical instance: 2-th root of class 64" in out
        assert "root witness a = 8" in out
        assert "step 1: extend by 1/6" in out
        assert "certified trivial by construction: True" in out
        assert "epsilon(1/6) = 2*z" in out

    def test_radical_chain_machine(self, capsys):
        rc, out, _ = run(
            capsys, "build", "--setup", setup_path("chain_radical.vt"), "--machine"
        )
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "step index=0 gamma=1/2 n0=2 root=8 factor=8*z^3"
        assert lines[1] == "step index=1 gamma=1/6 n0=3 root=2 factor=2*z"
        assert (
            lines[2]
            == "construction certified=true trivial_checked=true hom_checked=true bound=6"
        )
        assert 'epsilon degree=1/6 value=2*z' in lines

    def test_free_build_describes_generators(self, capsys):
        rc, out, _ = run(capsys, "build", "--setup", setup_path("free_lex.vt"))
        assert rc == 0
        assert "kind = free (2 generators)" in out
        assert "generator (1, 0) -> x" in out

    def test_rootless_chain_exits_3(self, capsys):
        rc, out, err = run(capsys, "build", "--setup", setup_path("chain_rootless.vt"))
        assert rc == 3
        assert err.startswith("construction failed: no 2-th root of the class x / y^2")


class TestCounterexample:
    def test_conflict_exits_1(self, capsys):
        rc, out, _ = run(
            capsys, "counterexample", "--setup", setup_path("counterexample_conflict.vt")
        )
        assert rc == 1
        assert "verdict: CONFLICT" in out
        assert "forced identity p=3: INCONSISTENT: x3^3 vs x2^2" in out
        assert "narrative, not machine-checked" in out

    def test_enumeration_divisibility(self, capsys):
        rc, out, _ = run(
            capsys, "counterexample", "--setup", setup_path("counterexample_pool.vt")
        )
        assert rc == 0
        assert "verdict: DIVISIBILITY" in out
        assert "consistent joint tables: 1" in out

    def test_enumeration_machine_lines(self, capsys):
        rc, out, _ = run(
            capsys,
            "counterexample", "--setup", setup_path("counterexample_pool.vt"),
            "--machine",
        )
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "analyzer mode=enumerate primes=2,3 degree_bound=8"
        assert (
            'consistent_table index=0 entries="1/2:x2^3 / x3^3|1/3:x2^2 / x3^2'
            '|1:x2^6 / x3^6" unit_degree=6 divisible=true recheck=true' in lines
        )
        assert "verdict kind=DIVISIBILITY detail=-" in lines


class TestErrorPaths:
    def test_missing_file_exits_2(self, capsys):
        rc, _, err = run(capsys, "ring-axioms", "--setup", setup_path("missing.vt"))
        assert rc == 2
        assert err.startswith("error: cannot read setup file")

    def test_malformed_setup_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.vt"
        bad.write_text("[valuation]\nx == 1\n")
        rc, _, err = run(capsys, "ring-axioms", "--setup", str(bad))
        assert rc == 2
        assert err.startswith("error:")

    def test_setup_without_choices_exits_2(self, capsys, tmp_path):
        f = tmp_path / "empty.vt"
        f.write_text("[valuation]\nx = 1\n")
        rc, _, err = run(capsys, "ring-axioms", "--setup", str(f))
        assert rc == 2

    def test_unknown_command_is_an_argparse_error(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate", "--setup", "x"])


class TestDeterminism:
    def test_same_seed_same_bytes(self, capsys):
        a = run(capsys, "ring-axioms", "--setup", setup_path("twisted_2x.vt"),
                "--seed", "5")
        b = run(capsys, "ring-axioms", "--setup", setup_path("twisted_2x.vt"),
                "--seed", "5")
        assert a == b

    def test_seed_changes_sampling_not_verdicts(self, capsys):
        rc1, out1, _ = run(capsys, "iso-verify", "--setup",
                           setup_path("twisted_2x.vt"), "--seed", "1")
        rc2, out2, _ = run(capsys, "iso-verify", "--setup",
                           setup_path("twisted_2x.vt"), "--seed", "2")
        assert rc1 == rc2 == 0
        assert "FAIL" not in out1 and "FAIL" not in out2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "valtwist", "counterexample",
         "--setup", setup_path("counterexample_conflict.vt")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "verdict: CONFLICT" in proc.stdout
