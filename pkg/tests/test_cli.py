"""CLI contracts: output shapes, exit codes, cache behavior."""

import json
import os

from oneexpr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_postfix_27(self, capsys):
        code, out, err = run(capsys, "eval", "--postfix", "111++11+1+^")
        assert code == 0
        assert out == "27\t3\n"
        assert err == ""

    def test_infix(self, capsys):
        code, out, _ = run(capsys, "eval", "--infix", "((1+1)^((1+1)^(1+1)))+1")
        assert code == 0
        assert out.split() == ["17", "4"]

    def test_ambiguous_infix_is_data_error(self, capsys):
        code, out, err = run(capsys, "eval", "--infix", "(1+1)^((1+1)^(1+1)) + 1")
        assert code == 2
        assert out == ""  # nothing partial on the data stream
        assert "bad-infix" in err

    def test_bad_postfix(self, capsys):
        code, out, err = run(capsys, "eval", "--postfix", "11++")
        assert code == 2
        assert out == ""
        assert "stack-underflow" in err

    def test_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--postfix", "111++11+1+^", "--json")
        assert code == 0
        document = json.loads(out)
        assert document["value"] == "27"
        assert document["depth"] == 3

    def test_needs_exactly_one_notation(self, capsys):
        code, _, _ = run(capsys, "eval", "--postfix", "1", "--infix", "1")
        assert code == 1
        code, _, _ = run(capsys, "eval")
        assert code == 1


class TestValidate:
    def test_valid(self, capsys):
        code, out, err = run(capsys, "validate", "--postfix", "11+11+*")
        assert (code, out, err) == (0, "", "")

    def test_invalid_names_error_class(self, capsys):
        code, out, err = run(capsys, "validate", "--postfix", "11+1*")
        assert code == 2
        assert "one-as-operand" in err

    def test_json_document(self, capsys):
        code, out, _ = run(capsys, "validate", "--postfix", "11+1*", "--json")
        assert code == 2
        assert json.loads(out) == {
            "command": "validate",
            "input": "11+1*",
            "valid": False,
            "error": "one-as-operand",
        }
        code, out, _ = run(capsys, "validate", "--postfix", "11+", "--json")
        assert code == 0
        assert json.loads(out)["valid"] is True


class TestCount:
    def test_catalan_prefix(self, capsys):
        code, out, _ = run(capsys, "count", "--ops", "a", "--upto", "5")
        assert code == 0
        assert [line.split() for line in out.splitlines()] == [
            ["1", "1"], ["2", "1"], ["3", "2"], ["4", "5"], ["5", "14"],
        ]

    def test_per_root(self, capsys):
        code, out, _ = run(capsys, "count", "--ops", "ame", "--upto", "4", "--per-root")
        rows = [line.split("\t") for line in out.splitlines()]
        assert rows[3] == ["4", "5", "1", "1", "7"]

    def test_json_counts_are_strings(self, capsys):
        code, out, _ = run(capsys, "count", "--ops", "am", "--upto", "8", "--json")
        document = json.loads(out)
        assert document["rows"][7] == {"n": 8, "total": "536"}

    def test_default_ops_is_ame(self, capsys):
        _, out, _ = run(capsys, "count", "--upto", "4")
        assert out.splitlines()[3].split("\t") == ["4", "7"]


class TestSample:
    def test_reproducible(self, capsys):
        args = ("sample", "--ops", "am", "--value", "6", "--draws", "5", "--seed", "9")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second
        assert len(first.splitlines()) == 5

    def test_json_matches_plain(self, capsys):
        args = ("sample", "--ops", "ame", "--value", "9", "--draws", "4", "--seed", "1")
        _, plain, _ = run(capsys, *args)
        _, doc_text, _ = run(capsys, *args, "--json")
        assert json.loads(doc_text)["formulas"] == plain.splitlines()

    def test_infix_format(self, capsys):
        _, out, _ = run(capsys, "sample", "--ops", "a", "--value", "3",
                        "--draws", "3", "--seed", "0", "--format", "infix")
        assert set(out.splitlines()) <= {"(1+1)+1", "1+(1+1)"}

    def test_seed_validation(self, capsys):
        code, _, _ = run(capsys, "sample", "--value", "4", "--seed", "-1")
        assert code == 1
        code, _, _ = run(capsys, "sample", "--value", "4", "--seed", str(1 << 64))
        assert code == 1


class TestShortest:
    def test_value(self, capsys):
        code, out, _ = run(capsys, "shortest", "--ops", "ame", "--value", "27")
        assert code == 0
        n, text, tokens = out.strip().split("\t")
        assert (n, tokens) == ("27", "11")
        assert len(text) == 11

    def test_range_with_minmemory(self, capsys):
        code, out, _ = run(capsys, "shortest", "--ops", "ame", "--range", "25..28",
                           "--minmemory")
        rows = [line.split("\t") for line in out.splitlines()]
        assert [r[0] for r in rows] == ["25", "26", "27", "28"]
        assert all(len(r) == 4 for r in rows)
        assert rows[2][1:] == ["11+1+11+1+^", "11", "3"]

    def test_infix_format(self, capsys):
        _, out, _ = run(capsys, "shortest", "--ops", "am", "--value", "6",
                        "--format", "infix")
        assert out.strip() == "6\t(1+1)*(1+(1+1))\t9"

    def test_minmemory_rejects_infix(self, capsys):
        code, out, err = run(capsys, "shortest", "--value", "5", "--minmemory",
                             "--format", "infix")
        assert code == 1
        assert out == ""

    def test_range_validation(self, capsys):
        code, _, _ = run(capsys, "shortest", "--range", "9..2")
        assert code == 1
        code, _, _ = run(capsys, "shortest", "--range", "0..4")
        assert code == 1
        code, _, _ = run(capsys, "shortest")
        assert code == 1


class TestAsymptotics:
    def test_plain_shape(self, capsys):
        code, out, _ = run(capsys, "asymptotics", "--ops", "a", "--upto", "60",
                           "--window", "5")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 7
        assert lines[-2].startswith("mu_hat\t")
        assert lines[-1].startswith("g_hat\t")
        assert abs(float(lines[-2].split("\t")[1]) - 4.0) < 0.1

    def test_too_short_is_data_error(self, capsys):
        code, _, err = run(capsys, "asymptotics", "--upto", "5")
        assert code == 2
        assert "too short" in err

    def test_json(self, capsys):
        _, out, _ = run(capsys, "asymptotics", "--ops", "am", "--upto", "80", "--json")
        document = json.loads(out)
        assert len(document["tail"]) == 20
        assert document["tail"][-1]["n"] == 80
        assert abs(document["mu_hat"] - 4.077) < 0.05

    def test_plot_written(self, capsys, tmp_path):
        target = tmp_path / "fig.png"
        code, out, _ = run(capsys, "asymptotics", "--ops", "a", "--upto", "40",
                           "--plot", str(target), "--json")
        assert code == 0
        assert json.loads(out)["plot"] == str(target)
        assert target.stat().st_size > 1000

    def test_plot_io_failure(self, capsys, tmp_path):
        code, out, err = run(capsys, "asymptotics", "--upto", "30",
                             "--plot", str(tmp_path / "no" / "fig.png"))
        assert code == 3


class TestBook:
    def test_book_written(self, capsys, tmp_path):
        target = tmp_path / "am.book"
        code, out, _ = run(capsys, "book", "--ops", "am", "--count-upto", "6",
                           "--shortest-upto", "12", "--out", str(target))
        assert code == 0
        assert out == f"{target}\t17\n"
        assert target.exists()

    def test_json(self, capsys, tmp_path):
        target = tmp_path / "x.book"
        _, out, _ = run(capsys, "book", "--ops", "ae", "--count-upto", "4",
                        "--shortest-upto", "8", "--out", str(target), "--json")
        document = json.loads(out)
        assert document["content_lines"] == 11
        assert document["ops"] == "ae"

    def test_unwritable_out_is_io_error(self, capsys, tmp_path):
        code, out, err = run(capsys, "book", "--count-upto", "2",
                             "--shortest-upto", "3",
                             "--out", str(tmp_path / "no" / "x.book"))
        assert code == 3
        assert out == ""


class TestCache:
    def test_cache_file_created_and_reused(self, capsys, tmp_path):
        cache = str(tmp_path / "cache")
        args = ("count", "--ops", "am", "--upto", "30", "--cache-dir", cache)
        _, first, _ = run(capsys, *args)
        assert os.path.exists(os.path.join(cache, "counts-am-30.tbl"))
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_cache_extends_monotonically(self, capsys, tmp_path):
        cache = str(tmp_path / "cache")
        run(capsys, "count", "--ops", "ame", "--upto", "20", "--cache-dir", cache)
        _, out, _ = run(capsys, "count", "--ops", "ame", "--upto", "40",
                        "--cache-dir", cache)
        assert os.path.exists(os.path.join(cache, "counts-ame-40.tbl"))
        _, fresh, _ = run(capsys, "count", "--ops", "ame", "--upto", "40", "--no-cache")
        assert out == fresh

    def test_corrupt_cache_recovered(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        run(capsys, "count", "--ops", "am", "--upto", "25", "--cache-dir", str(cache))
        victim = cache / "counts-am-25.tbl"
        victim.write_text("oneexpr-table 1\nkind counts\nops am\nmax 25\ngarbage\n")
        code, out, err = run(capsys, "count", "--ops", "am", "--upto", "25",
                             "--cache-dir", str(cache))
        assert code == 0
        assert "warning" in err
        _, fresh, _ = run(capsys, "count", "--ops", "am", "--upto", "25", "--no-cache")
        assert out == fresh

    def test_env_var_cache(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "envcache"
        monkeypatch.setenv("ONEEXPR_CACHE_DIR", str(cache))
        run(capsys, "shortest", "--ops", "ame", "--value", "50")
        assert (cache / "shortest-ame-50.tbl").exists()
        monkeypatch.setenv("ONEEXPR_CACHE_DIR", "")
        run(capsys, "shortest", "--ops", "ame", "--value", "50")

    def test_kind_separation(self, capsys, tmp_path):
        # a shortest snapshot must never seed a counts build
        cache = str(tmp_path / "cache")
        run(capsys, "shortest", "--ops", "am", "--value", "30", "--cache-dir", cache)
        code, out, _ = run(capsys, "count", "--ops", "am", "--upto", "8",
                           "--cache-dir", cache)
        assert code == 0
        assert out.splitlines()[7].split("\t") == ["8", "536"]


class TestUsage:
    def test_no_command(self, capsys):
        assert run(capsys, )[0] == 1

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 1

    def test_bad_ops_choice(self, capsys):
        assert run(capsys, "count", "--upto", "4", "--ops", "xyz")[0] == 1

    def test_nonpositive_upto(self, capsys):
        assert run(capsys, "count", "--upto", "0")[0] == 1

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
