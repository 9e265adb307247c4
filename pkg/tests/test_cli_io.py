import json

import pytest

from twistcheck.cli_io import cli_main, parse_curve_table


def run_cli(capsys, argv):
    rc = cli_main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestParseCurveTable:
    def test_good_row(self):
        rows, diags = parse_curve_table(["15 A 1 [1,1,1,-10,-10] 0 8"])
        assert not diags
        (row,) = rows
        assert row.conductor == 15
        assert row.ainvs == (1, 1, 1, -10, -10)
        assert row.rank == 0 and row.torsion_order == 8

    def test_blank_and_comment_skipped(self):
        rows, diags = parse_curve_table(["", "   ", "# comment", "15 A 1 [1,1,1,-10,-10]"])
        assert len(rows) == 1 and not diags

    def test_arity_diagnostic(self):
        rows, diags = parse_curve_table(["15 A 1 [1,1,1,-10]"])
        assert not rows
        assert diags == [(1, "expected 5 a-invariants, got 4")]

    def test_spaced_bracket_list(self):
        rows, diags = parse_curve_table(["21 A 1 [1, 0, 0, -4, -1]"])
        assert not diags and rows[0].ainvs == (1, 0, 0, -4, -1)

    def test_bad_numbers_positioned(self):
        rows, diags = parse_curve_table(["x A 1 [1,1,1,-10,-10]", "15 A 1 [1,1,1,-10,-10]"])
        assert len(rows) == 1
        assert diags[0][0] == 1

    def test_stream_never_aborts(self):
        lines = ["garbage", "15 A 1 [1,1,1,-10,-10]", "[", "21 A 1 [1,0,0,-4,-1] zz"]
        rows, diags = parse_curve_table(lines)
        assert [r.conductor for r in rows] == [15]
        assert [line for line, _ in diags] == [1, 3, 4]


class TestCli:
    def test_certify_applies(self, capsys):
        rc, out, _ = run_cli(capsys, ["certify", "--family", "15", "--d", "2", "--p", "7"])
        assert rc == 0
        assert "verdict: Applies" in out

    def test_certify_strict_failure(self, capsys):
        rc, out, _ = run_cli(capsys, ["certify", "--family", "15", "--d", "5", "--p", "11", "--strict"])
        assert rc == 1
        assert "DoesNotApply" in out

    def test_lratio_zero(self, capsys):
        rc, out, _ = run_cli(capsys, ["lratio", "--family", "21", "--twist", "10"])
        assert rc == 0
        assert "L/omega     0" in out

    def test_lratio_json_keys(self, capsys):
        rc, out, _ = run_cli(capsys, ["lratio", "--family", "15", "--twist", "2", "--json"])
        assert rc == 0
        obj = json.loads(out)
        assert list(obj) == ["l1", "omega", "root_number", "ratio", "n_max"]
        assert obj["ratio"] == "2"

    def test_invariants_json(self, capsys):
        rc, out, _ = run_cli(capsys, ["invariants", "--family", "15", "--json"])
        assert rc == 0
        obj = json.loads(out)
        assert obj["conductor"] == 15
        assert obj["torsion_structure"] == [2, 4]

    def test_explicit_curve_input(self, capsys):
        rc, out, _ = run_cli(capsys, ["invariants", "--curve", "1,1,1,-10,-10", "--json"])
        assert rc == 0
        assert json.loads(out)["conductor"] == 15

    def test_table_json_all_match(self, capsys):
        rc, out, _ = run_cli(capsys, ["table", "--which", "1", "--json"])
        assert rc == 0
        lines = out.strip().splitlines()
        rows = [json.loads(line) for line in lines[:-1]]
        summary = json.loads(lines[-1])
        assert len(rows) == 23
        assert all(r["match"] for r in rows)
        assert summary == {"table": 1, "all_match": True}

    def test_table_json_key_order_stable(self, capsys):
        rc1, out1, _ = run_cli(capsys, ["table", "--which", "2", "--json"])
        rc2, out2, _ = run_cli(capsys, ["table", "--which", "2", "--json"])
        assert rc1 == rc2 == 0
        assert out1 == out2
        first = json.loads(out1.splitlines()[0])
        assert list(first) == [
            "table",
            "d",
            "label",
            "expected_conductor",
            "computed_conductor",
            "conductor_match",
            "expected_lratio",
            "computed_lratio",
            "lratio_match",
            "expected_admissible",
            "computed_admissible",
            "admissible_match",
            "erratum",
            "match",
        ]

    def test_admissible(self, capsys):
        rc, out, _ = run_cli(capsys, ["admissible", "--family", "21", "--d", "22", "--json"])
        assert rc == 0
        assert json.loads(out)["excluded"] == [2, 3, 7, 11]

    def test_deep_certify(self, capsys):
        rc, out, _ = run_cli(capsys, ["deep-certify", "--family", "21", "--d", "5", "--p", "11", "--json"])
        assert rc == 0
        obj = json.loads(out)
        assert obj["verdict"] == "Applies"
        assert obj["path"] in ("ordinary", "supersingular")

    def test_usage_error_exit_2(self, capsys):
        assert run_cli(capsys, ["bogus"])[0] == 2
        assert run_cli(capsys, [])[0] == 2
        assert run_cli(capsys, ["certify", "--family", "15"])[0] == 2

    def test_value_error_exit_1(self, capsys):
        rc, _, err = run_cli(capsys, ["admissible", "--family", "15", "--d", "5"])
        assert rc == 1
        assert "error:" in err

    def test_crosscheck(self, capsys, tmp_path):
        good = tmp_path / "ref.txt"
        good.write_text(
            "# reference rows\n"
            "15 A 1 [1,1,1,-10,-10] 0 8\n"
            "21 A 1 [1,0,0,-4,-1] 0 8\n"
        )
        rc, out, _ = run_cli(capsys, ["crosscheck", "--file", str(good)])
        assert rc == 0
        assert out.count(": ok") == 2

        bad = tmp_path / "bad.txt"
        bad.write_text("15 A 1 [1,1,1,-10,-10] 0 4\n960 Z 9 [0,1,0,-641,-3105]\n")
        rc, out, _ = run_cli(capsys, ["crosscheck", "--file", str(bad), "--json"])
        assert rc == 1
        rows = [json.loads(line) for line in out.strip().splitlines()]
        assert rows[0]["ok"] is False  # torsion order 4 recomputes to 8
        assert rows[1]["ok"] is True  # conductor 960 confirms
