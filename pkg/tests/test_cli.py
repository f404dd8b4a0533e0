import random
import subprocess
import sys

import pytest

from maxandeven import cli
from maxandeven.formats import (
    ParseError,
    parse_digraph,
    parse_instance,
    render_digraph,
    render_instance,
    sniff_format,
)
from maxandeven.generate import random_digraph, random_instance
from maxandeven.graphs import Digraph
from maxandeven.model import BoolAssignment, Clause
from maxandeven.rounding import Solution


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestFormats:
    def test_parse_instance_examples(self):
        inst = parse_instance("p mae 2 1\n-1 2 0\n")
        assert inst.clauses == (Clause.of(-1, 2),)
        inst = parse_instance("c comment\np mae 1 2\n1 0\n-1 0\n")
        assert inst.clauses == (Clause.of(1), Clause.of(-1))
        assert parse_instance("p mae 1 2\n1 1 0\n0\n").clauses == (Clause.of(1, 1), Clause())

    @pytest.mark.parametrize(
        "text, message, line",
        [
            ("p mae 1 1\n2 0\n", "out of range", 2),
            ("p cnf 1 1\n1 0\n", "malformed header", 1),
            ("p mae 2 1\n1 0 2 0\n", "literal 0 inside", 2),
            ("p mae 2 1\n1 2\n", "terminating 0", 2),
            ("p mae 2 2\n1 0\n", "declares 2 clauses", 2),
            ("p mae 2 1\n1 0\n2 0\n", "more than the 1", 3),
            ("p mae 2 1\nx 0\n", "expected integers", 2),
            ("1 0\n", "malformed header", 1),
            ("", "missing", None),
        ],
    )
    def test_instance_errors(self, text, message, line):
        with pytest.raises(ParseError, match=message) as err:
            parse_instance(text)
        assert err.value.line == line

    def test_parse_digraph_examples(self):
        assert parse_digraph("p dg 3 3\na 1 2\na 2 3\na 3 1\n") == Digraph(
            3, ((1, 2), (2, 3), (3, 1))
        )
        assert parse_digraph("p dg 1 1\na 1 1\n").arcs == ((1, 1),)
        assert parse_digraph("p dg 2 2\na 1 2\na 1 2\n").arcs == ((1, 2), (1, 2))

    @pytest.mark.parametrize(
        "text, message",
        [
            ("p dg 2 1\na 1 3\n", "out of range"),
            ("p dg 2 1\ne 1 2\n", "arc lines"),
            ("p dg 2 1\na 1\n", "arc lines"),
            ("p dg 2 2\na 1 2\n", "declares 2 arcs"),
            ("p mae 2 1\n", "malformed header"),
        ],
    )
    def test_digraph_errors(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_digraph(text)

    def test_sniff(self):
        assert sniff_format("c hi\np dg 1 0\n") == "dg"
        assert sniff_format("p mae 1 0\n") == "mae"
        with pytest.raises(ParseError):
            sniff_format("p cnf 1 1\n")

    @pytest.mark.parametrize("seed", range(50))
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        inst = random_instance(rng.randint(1, 9), rng.randint(0, 15), 0, 5, rng)
        assert parse_instance(render_instance(inst, ["note"])) == inst
        g = random_digraph(rng.randint(1, 9), rng.randint(0, 15), rng)
        assert parse_digraph(render_digraph(g)) == g


class TestCommands:
    def test_solve(self, capsys, tmp_path):
        path = write(tmp_path, "a.mae", "p mae 1 2\n1 0\n-1 0\n")
        code, out, _ = run(capsys, "solve", path, "--fraction")
        assert code == 0
        assert "lp_value: 1/1\n" in out and "weak_count: 1\n" in out
        assert "weak_fraction: 1/2\n" in out

    def test_solve_randomized_records_seed(self, capsys, tmp_path):
        path = write(tmp_path, "a.mae", "p mae 2 1\n1 2 0\n")
        code, out, _ = run(capsys, "solve", path, "--seed", "9", "--no-time")
        assert code == 0 and "seed: 9\n" in out and "prng: " in out

    def test_solve_dump_lp(self, capsys, tmp_path):
        path = write(tmp_path, "a.mae", "p mae 1 1\n1 0\n")
        dump = tmp_path / "lp.txt"
        assert run(capsys, "solve", path, "--dump-lp", str(dump))[0] == 0
        assert "-1/1 1/1 <= 0/1" in dump.read_text()

    def test_cut_and_acyclic(self, capsys, tmp_path):
        path = write(tmp_path, "c3.dg", "p dg 3 3\na 1 2\na 2 3\na 3 1\n")
        code, out, _ = run(capsys, "cut", path)
        assert code == 0 and "lp_value: 3/2\n" in out
        code, out, _ = run(capsys, "acyclic", path, "--json")
        assert code == 0 and '"acyclic_value": 2' in out

    def test_verify_cycle(self, capsys, tmp_path):
        path = write(tmp_path, "c3.dg", "p dg 3 3\na 1 2\na 2 3\na 3 1\n")
        code, out, _ = run(capsys, "verify", path)
        assert code == 0
        assert "max_dicut: 1\n" in out and "status: ok\n" in out

    def test_verify_trials(self, capsys):
        code, out, _ = run(capsys, "verify", "--trials", "6", "--kind", "dg", "--seed", "2")
        assert code == 0 and "failed: 0" in out
        again = run(capsys, "verify", "--trials", "6", "--kind", "dg", "--seed", "2")[1]
        assert again == out

    def test_verify_trials_parallel_keeps_order(self, capsys):
        serial = run(capsys, "verify", "--trials", "4", "--seed", "5")[1]
        parallel = run(capsys, "verify", "--trials", "4", "--seed", "5", "--jobs", "2")[1]
        assert serial == parallel

    def test_generators_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.mae", tmp_path / "b.mae"
        for p in (a, b):
            run(capsys, "gen-instance", "--n", "5", "--m", "9", "--seed", "3", "-o", str(p))
        assert a.read_bytes() == b.read_bytes()
        code, out, _ = run(capsys, "gen-digraph", "--n", "6", "--m", "12", "--density", "0.7")
        assert code == 0 and "c planted-dicut " in out
        g = parse_digraph(out)
        planted = int(out.split("planted-dicut ")[1].split()[0])
        from maxandeven.oracle import brute_max_dicut

        assert brute_max_dicut(g) >= planted

    def test_report_determinism(self, capsys, tmp_path):
        path = write(tmp_path, "i.mae", render_instance(random_instance(6, 10, 1, 3, 1)))
        first = run(capsys, "solve", path, "--no-time")[1]
        assert run(capsys, "solve", path, "--no-time")[1] == first


class TestExitCodes:
    def test_parse_error(self, capsys, tmp_path):
        path = write(tmp_path, "bad.mae", "p mae 1 1\n2 0\n")
        code, _, err = run(capsys, "solve", path)
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "cut", str(tmp_path / "nope.dg"))[0] == 2

    def test_wrong_format_for_command(self, capsys, tmp_path):
        path = write(tmp_path, "x.mae", "p mae 1 0\n")
        assert run(capsys, "acyclic", path)[0] == 2

    def test_oracle_cap(self, capsys, tmp_path):
        path = write(tmp_path, "big.mae", render_instance(random_instance(6, 4, 1, 2, 0)))
        assert run(capsys, "verify", path, "--oracle-cap", "5")[0] == 3

    def test_violation(self, capsys, tmp_path, monkeypatch):
        def broken(inst, promise=None):
            a = BoolAssignment((1,) * inst.n)
            return Solution(a, 0, inst.m)

        monkeypatch.setattr(cli, "solve_max_and_even", broken)
        path = write(tmp_path, "a.mae", "p mae 1 1\n-1 0\n")
        code, _, err = run(capsys, "verify", path)
        assert code == 4 and "VIOLATION" in err


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "c3.dg", "p dg 3 3\na 1 2\na 2 3\na 3 1\n")
    proc = subprocess.run(
        [sys.executable, "-m", "maxandeven", "verify", path], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "status: ok" in proc.stdout
