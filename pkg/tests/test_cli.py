import io
import json

import pytest

from liedual.cli import main
from liedual.dual import decomposition_from_json, dual_to_json
from liedual.dual_bracket import table_from_json
from liedual import DualElement, Domain
from liedual.tensors import tensor_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


class TestCybe:
    def test_witt_n(self, capsys):
        code, out, err = run(capsys, "cybe", "--family", "witt-n", "--n", "2", "--algebra", "witt")
        assert code == 0 and "PASS" in err
        report = json.loads(out)
        assert report["status"] == "PASS" and report["residual"]["terms"] == []

    def test_xy(self, capsys):
        code, _, err = run(capsys, "cybe", "--family", "xy", "--n", "2", "--ell", "1", "--k", "1")
        assert code == 0 and "PASS" in err

    def test_xy_virasoro_fractions(self, capsys):
        code, _, _ = run(capsys, "cybe", "--family", "xy", "--algebra", "virasoro",
                         "--n", "-3", "--ell", "1/2", "--k", "-3")
        assert code == 0

    def test_raw_symmetric_fails(self, capsys, tmp_path):
        path = write_json(tmp_path, "r.json", {"kind": "witt", "terms": [
            {"labels": ["1", "3"], "coeff": "1"}, {"labels": ["3", "1"], "coeff": "1"}]})
        code, out, err = run(capsys, "cybe", "--family", "raw", "--r", path)
        assert code == 1 and "FAIL" in err
        assert tensor_from_json(json.loads(out)["residual"])

    @pytest.mark.parametrize("argv", [
        ["cybe", "--n", "1"],
        ["cybe"],
        ["cybe", "--family", "xy", "--n", "2", "--ell", "0", "--k", "1"],
        ["cybe", "--family", "xy", "--n", "2"],
        ["cybe", "--family", "raw"],
        ["cybe", "--family", "raw", "--r", "/nonexistent.json"],
        ["cybe", "--algebra", "one-sided-witt", "--n", "-2"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_bad_flag_value(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cybe", "--n", "2", "--ell", "half"])
        assert exc.value.code == 2


class TestDualTable:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "dual-table", "--algebra", "witt", "--n", "2",
                           "--window", "-3", "3", "--format", "csv")
        assert code == 0
        assert len(out.splitlines()) == 1 + 49

    def test_cross_check(self, capsys):
        code, _, err = run(capsys, "dual-table", "--algebra", "witt", "--n", "2",
                           "--window", "-3", "3", "--format", "csv", "--cross-check")
        assert code == 0 and "0 mismatches" in err

    def test_cross_check_mutated(self, capsys):
        code, _, err = run(capsys, "dual-table", "--n", "2", "--cross-check", "--mutate", "case1-sign")
        assert code == 1 and err.splitlines()[0] == "10 mismatches"

    def test_one_sided(self, capsys):
        code, out, _ = run(capsys, "dual-table", "--algebra", "one-sided-witt", "--n", "2",
                           "--window", "0", "3", "--format", "csv")
        assert code == 0 and "1,0,0" in out.splitlines()

    def test_json_out(self, capsys, tmp_path):
        path = tmp_path / "t.json"
        code, out, _ = run(capsys, "dual-table", "--family", "xy", "--n", "3", "--ell", "1/2",
                           "--k", "2", "--out", str(path))
        assert code == 0 and out == ""
        table = table_from_json(json.loads(path.read_text()))
        assert len(table.entries) == 49

    def test_latex(self, capsys):
        code, out, _ = run(capsys, "dual-table", "--n", "3", "--format", "latex")
        assert code == 0 and out.rstrip().endswith(r"\end{tabular}")

    @pytest.mark.parametrize("argv", [
        ["dual-table", "--n", "2", "--window", "3", "-3"],
        ["dual-table", "--n", "1"],
        ["dual-table", "--family", "raw", "--n", "2"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestVerify:
    def test_jacobi_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--window", "-4", "4")
        assert code == 0 and out.splitlines()[-1] == "ALL PASS"

    def test_mutation(self, capsys):
        code, out, _ = run(capsys, "verify", "--mutate", "case1-sign", "--suite", "witt-table")
        assert code == 1 and "FAIL witt-table" in out

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2


class TestDecompose:
    def decompose(self, capsys, tmp_path, f):
        path = write_json(tmp_path, "f.json", dual_to_json(f))
        code, out, _ = run(capsys, "decompose", path)
        return code, (decomposition_from_json(json.loads(out)) if code == 0 else None)

    def test_two_components(self, capsys, tmp_path):
        f = DualElement.recursive([7, -10], [4, 17], domain=Domain.LAURENT)
        code, comps = self.decompose(capsys, tmp_path, f)
        assert code == 0 and [(c.root, c.poly) for c in comps] == [(2, (1,)), (5, (3,))]

    def test_fibonacci(self, capsys, tmp_path):
        f = DualElement.recursive([1, 1], [0, 1], domain=Domain.POLY)
        code, rep = self.decompose(capsys, tmp_path, f)
        assert code == 0 and rep.factors == (((1, -1, -1), 1),)

    def test_zero(self, capsys, tmp_path):
        assert self.decompose(capsys, tmp_path, DualElement.zero(Domain.LAURENT)) == (0, [])

    def test_not_member(self, capsys, tmp_path):
        f = DualElement.finite({3: 1}, Domain.LAURENT)
        assert self.decompose(capsys, tmp_path, f)[0] == 1

    def test_stdin(self, capsys, monkeypatch):
        f = DualElement.recursive([2], [1], domain=Domain.LAURENT)
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(dual_to_json(f))))
        code, out, _ = run(capsys, "decompose", "-")
        assert code == 0 and json.loads(out)["components"][0]["root"] == "2"

    def test_malformed(self, capsys, tmp_path):
        path = write_json(tmp_path, "bad.json", {"domain": "laurent"})
        assert run(capsys, "decompose", path)[0] == 2
