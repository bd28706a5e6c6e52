import json

import pytest

from kkweyl.cli import main


class TestKK:
    def test_example_word(self, capsys):
        assert main(["kk", "--type", "A2", "--word", "1 2 1"]) == 0
        out = capsys.readouterr().out
        assert "d_w = 1" in out
        assert "c_w = (-1)" in out

    def test_empty_word_gives_root_product(self, capsys):
        assert main(["kk", "--type", "A2", "--word", ""]) == 0
        out = capsys.readouterr().out
        assert "l(w) = 0" in out
        assert "d_w = a1^2*a2 + a1*a2^2" in out

    def test_nonreduced_exit_65(self, capsys):
        assert main(["kk", "--type", "A2", "--word", "2 1 1"]) == 65
        err = capsys.readouterr().err
        assert "not reduced" in err
        assert "'2 1 1'" in err

    def test_budget_exit_69(self, capsys):
        assert main(["kk", "--type", "E6", "--word", "1 3 4 2 5 6",
                     "--term-budget", "5"]) == 69
        assert "term budget exceeded" in capsys.readouterr().err

    def test_bad_letter_usage_error(self, capsys):
        assert main(["kk", "--type", "A2", "--word", "1 9"]) == 64


class TestGenTables:
    def test_e6_natural_json(self, tmp_path, capsys):
        code = main(["gen-tables", "--type", "E6", "--order", "natural",
                     "--output-dir", str(tmp_path)])
        assert code == 0
        rows = json.loads((tmp_path / "table_E6_natural.json").read_text())
        assert len(rows) == 16
        first = rows[0]
        assert first["b"] == [1, 0, 0, 0, 0, 0]
        assert first["u_word"] == [1]
        assert first["u_len"] == 1
        assert first["premise_ok"] is True
        assert len(first["eps"]) == 8

    def test_csv_mirror(self, tmp_path, capsys):
        main(["gen-tables", "--type", "E6", "--order", "natural",
              "--format", "csv", "--output-dir", str(tmp_path)])
        lines = (tmp_path / "table_E6_natural.csv").read_text().splitlines()
        assert lines[0] == "b,eps,u_word,u_len,premise_ok"
        assert lines[1].startswith("100000,")
        assert lines[-1].startswith("122321,")

    def test_all_orders_without_flag(self, tmp_path, capsys):
        main(["gen-tables", "--type", "E6", "--output-dir", str(tmp_path)])
        assert (tmp_path / "table_E6_natural.json").exists()
        assert (tmp_path / "table_E6_alternate.json").exists()

    def test_e8_premise_failure_exit_2(self, tmp_path, capsys):
        # the E8 first column contains one root whose factorization premises
        # fail; the row is still written and the exit code flags it
        code = main(["gen-tables", "--type", "E8",
                     "--output-dir", str(tmp_path)])
        assert code == 2
        rows = json.loads((tmp_path / "table_E8_standard.json").read_text())
        assert len(rows) == 57
        bad = [r for r in rows if not r["premise_ok"]]
        assert len(bad) == 1
        assert bad[0]["b"] == [2, 3, 4, 6, 5, 4, 3, 2]

    def test_invalid_order_exit_64(self, capsys):
        assert main(["gen-tables", "--type", "E6", "--order", "bogus"]) == 64

    def test_a_type_rejected(self, capsys):
        assert main(["gen-tables", "--type", "A3"]) == 64

    def test_io_failure_exit_1(self, tmp_path, capsys):
        target = tmp_path / "not-a-dir"
        target.write_text("file, not dir")
        assert main(["gen-tables", "--type", "E6", "--order", "natural",
                     "--output-dir", str(target)]) == 1

    def test_worker_count_does_not_change_output(self, tmp_path, capsys):
        d1, d2 = tmp_path / "w1", tmp_path / "w4"
        d1.mkdir(), d2.mkdir()
        main(["gen-tables", "--type", "E6", "--order", "natural",
              "--output-dir", str(d1)])
        main(["gen-tables", "--type", "E6", "--order", "natural",
              "--workers", "4", "--output-dir", str(d2)])
        assert (d1 / "table_E6_natural.json").read_bytes() == \
            (d2 / "table_E6_natural.json").read_bytes()


class TestGoodPairs:
    def test_scan_and_recheck(self, tmp_path, capsys):
        out = tmp_path / "certs.jsonl"
        code = main(["good-pairs", "--type", "E6", "--max-len", "3",
                     "--no-certify", "--output", str(out)])
        assert code == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert lines
        for rec in lines:
            assert rec["side1"] or rec["side2"]
            assert rec["computed"] is False
        code = main(["good-pairs", "--type", "E6", "--recheck", str(out)])
        assert code == 0
        assert "0 failures" in capsys.readouterr().out

    def test_recheck_detects_tampering(self, tmp_path, capsys):
        out = tmp_path / "certs.jsonl"
        main(["good-pairs", "--type", "E6", "--max-len", "3",
              "--no-certify", "--output", str(out)])
        lines = out.read_text().splitlines()
        rec = json.loads(lines[0])
        rec["side1"], rec["side2"] = not rec["side1"], not rec["side2"]
        tampered = tmp_path / "bad.jsonl"
        tampered.write_text(json.dumps(rec) + "\n")
        assert main(["good-pairs", "--type", "E6",
                     "--recheck", str(tampered)]) == 3

    def test_missing_recheck_file_exit_1(self, capsys):
        assert main(["good-pairs", "--type", "E6",
                     "--recheck", "/nonexistent/x.jsonl"]) == 1


class TestVerify:
    def test_a2_passes(self, capsys):
        assert main(["verify", "--type", "A2"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 7
        assert "FAIL" not in out

    def test_deterministic_across_workers(self, capsys):
        main(["verify", "--type", "A2"])
        out1 = capsys.readouterr().out
        main(["verify", "--type", "A2", "--workers", "3"])
        out2 = capsys.readouterr().out
        assert out1 == out2


class TestUsage:
    def test_unknown_type(self, capsys):
        assert main(["kk", "--type", "Z9", "--word", ""]) == 64

    def test_missing_subcommand(self, capsys):
        assert main([]) == 64

    def test_a_type_order_rejected(self, capsys):
        assert main(["verify", "--type", "A2", "--order", "natural"]) == 64
