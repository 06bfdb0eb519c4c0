"""End-to-end tests for the command-line interface: golden outputs,
exit codes, JSONL round-trips, file input, and byte determinism."""

import json
import subprocess
import sys

import pytest

from hypermod.cli import (from_record, main, parse_class_expression,
                          to_record)
from hypermod.cohomology import betti_table
from hypermod.grca import Q
from hypermod.haefliger import build_section_cdga
from hypermod.hrr import hilbert_polynomial
from hypermod.ranges import curve_report
from hypermod.stable import grw_series
from hypermod.variety import builtin_from_spec, with_alpha

from test_variety import torus_file_dict


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestGoldenOutputs:
    def test_cdga_torus(self, capsys):
        code, out, _ = run_cli(capsys, "cdga", "--builtin", "torus",
                               "--alpha", "3u")
        assert code == 0
        assert "generator z  degree 2" in out
        assert "d(y1) = 6 z - 2 a' b'" in out
        assert "d(y2) = 2 a' z" in out
        assert "d(y2') = 2 b' z" in out
        assert "d(y3) = z^2" in out

    def test_betti_line(self, capsys):
        code, out, _ = run_cli(capsys, "betti", "--builtin", "p1",
                               "--alpha", "9h", "--max-degree", "6")
        assert code == 0
        assert out == "1 0 0 1 0 0 0\n"

    def test_range_curve(self, capsys):
        code, out, _ = run_cli(capsys, "range", "--curve-genus", "1",
                               "--degree", "20")
        assert code == 0
        assert out == "d = 18 (curve_RR, exact), max homology degree 7\n"

    def test_range_toric(self, capsys):
        code, out, _ = run_cli(capsys, "range", "--toric", "3,5,7")
        assert code == 0
        assert out.splitlines() == [
            "d = 3 (toric, bound), max homology degree -1",
            "assumes: intersection numbers cover all torus-invariant curves",
        ]

    def test_range_user_bound(self, capsys):
        code, out, _ = run_cli(capsys, "range", "--jet-bound", "11")
        assert code == 0
        assert out.splitlines() == [
            "d = 11 (user_supplied, bound), max homology degree 3",
            "assumes: jet bound supplied by the user",
        ]

    def test_stable_series_grw(self, capsys):
        code, out, _ = run_cli(capsys, "stable-series", "--builtin", "torus",
                               "--max-degree", "5", "--grw")
        assert code == 0
        assert out == "1 2 3 5 7 9\n"

    def test_compare_p1(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--builtin", "p1",
                               "--alpha", "9h")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "jet bound d = 9, certified through degree 2"
        assert lines[1] == "degree 0: model 1, stable 1, ok"
        assert lines[-1] == "verdict: all equal in the certified range"

    def test_compare_empty_range(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--builtin", "p3",
                               "--alpha", "0")
        assert code == 0
        assert out.splitlines() == [
            "jet bound d = 0, certified through degree -1",
            "verdict: no certified degrees",
        ]

    def test_hilbert_plane(self, capsys):
        code, out, _ = run_cli(capsys, "hilbert", "--builtin", "p2",
                               "--c1", "4h")
        assert code == 0
        assert out.splitlines() == [
            "P(m) = 15 + 11/2 m + 1/2 m^2",
            "integer valued: yes",
        ]

    def test_validate_clean(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--builtin",
                               "product:p1,torus")
        assert code == 0
        assert out == "valid\n"


class TestClassExpressions:
    def setup_method(self):
        self.torus = builtin_from_spec("torus")
        self.curve2 = builtin_from_spec("curve2")

    def test_plain_and_signed(self):
        u = self.torus.ring.basis_element("u")
        ring = self.torus.ring
        assert parse_class_expression(ring, "3u") == 3 * u
        assert parse_class_expression(ring, "-2*u") == -2 * u
        assert parse_class_expression(ring, "+5u") == 5 * u
        assert parse_class_expression(ring, "u") == u
        assert parse_class_expression(ring, "3/2*u") == Q(3, 2) * u
        assert parse_class_expression(ring, "0").is_zero

    def test_product_variety_label(self):
        v = builtin_from_spec("product:torus,p1")
        cls = parse_class_expression(v.ring, "2*1*h")
        assert cls == 2 * v.ring.basis_element("1*h")

    def test_rejections(self):
        ring = self.torus.ring
        with pytest.raises(ValueError, match="cannot parse"):
            parse_class_expression(ring, "3")
        with pytest.raises(ValueError, match="unknown basis label"):
            parse_class_expression(ring, "3h")
        with pytest.raises(ValueError, match="need degree 2"):
            parse_class_expression(ring, "a")


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 1
        assert "invalid choice" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = run_cli(capsys, "betti", "--builtin", "p1",
                               "--alpha", "2h")
        assert code == 1
        assert "--max-degree" in err

    def test_builtin_and_input_conflict(self, capsys, tmp_path):
        f = tmp_path / "v.json"
        f.write_text("{}")
        code, _, err = run_cli(capsys, "validate", "--builtin", "p1",
                               "--input", str(f))
        assert code == 1
        assert "not allowed with" in err

    def test_bad_alpha_label(self, capsys):
        code, _, err = run_cli(capsys, "betti", "--builtin", "p1",
                               "--alpha", "9q", "--max-degree", "3")
        assert code == 1
        assert "unknown basis label" in err

    def test_resource_cutoff_exits_two(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPERMOD_MAX_MONOMIALS", "3")
        code, _, err = run_cli(capsys, "betti", "--builtin", "torus",
                               "--alpha", "1u", "--max-degree", "4")
        assert code == 2
        assert "over the limit" in err

    def test_compare_refuses_nonzero_h1(self, capsys):
        code, _, err = run_cli(capsys, "compare", "--builtin", "torus",
                               "--alpha", "3u")
        assert code == 1
        assert "H^1 != 0" in err

    def test_compare_needs_bound_for_products(self, capsys):
        code, _, err = run_cli(capsys, "compare", "--builtin",
                               "product:p1,p1", "--alpha", "0")
        assert code == 1
        assert "pass --jet-bound" in err

    def test_range_mode_conflict(self, capsys):
        code, _, err = run_cli(capsys, "range", "--toric", "1,2",
                               "--jet-bound", "5")
        assert code == 1
        assert "exactly one" in err

    def test_help_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        assert "usage:" in out


class TestJsonlRecords:
    def test_betti_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "betti", "--builtin", "p1",
                               "--alpha", "9h", "--max-degree", "4",
                               "--format", "jsonl")
        assert code == 0
        record = json.loads(out)
        v = builtin_from_spec("p1")
        v = with_alpha(v, 9 * v.ring.basis_element("h"))
        table = betti_table(build_section_cdga(v), 4)
        assert record == to_record(table)
        assert from_record(record) == table

    def test_range_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "range", "--curve-genus", "1",
                               "--degree", "20", "--format", "jsonl")
        assert code == 0
        record = json.loads(out)
        assert from_record(record) == curve_report(1, 20)

    def test_series_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "stable-series", "--builtin", "torus",
                               "--max-degree", "5", "--grw",
                               "--format", "jsonl")
        assert code == 0
        record = json.loads(out)
        assert from_record(record) == grw_series(builtin_from_spec("torus"), 5)

    def test_hilbert_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "hilbert", "--builtin", "p2",
                               "--c1", "4h", "--format", "jsonl")
        assert code == 0
        record = json.loads(out)
        assert record["coefficients"] == ["15", "11/2", "1/2"]
        v = builtin_from_spec("p2")
        p = hilbert_polynomial(v, 4 * v.ring.basis_element("h"))
        assert from_record(record) == p

    def test_compare_record(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--builtin", "p2",
                               "--alpha", "5h", "--format", "jsonl")
        assert code == 0
        record = json.loads(out)
        assert record["type"] == "stable_comparison"
        assert record["jet_bound"] == 5
        assert record["all_equal"] is True

    def test_validation_record(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--builtin", "torus",
                               "--format", "jsonl")
        assert code == 0
        assert json.loads(out) == {"type": "validation", "name": "torus",
                                   "valid": True, "errors": []}

    def test_unknown_record_type(self):
        with pytest.raises(ValueError, match="unknown record type"):
            from_record({"type": "mystery"})


class TestFileInput:
    def write(self, tmp_path, doc):
        f = tmp_path / "variety.json"
        f.write_text(doc if isinstance(doc, str) else json.dumps(doc),
                     encoding="utf-8")
        return str(f)

    def test_betti_from_file(self, capsys, tmp_path):
        path = self.write(tmp_path, torus_file_dict())
        code, out, _ = run_cli(capsys, "betti", "--input", path,
                               "--max-degree", "2")
        assert code == 0
        assert out == "1 2 3\n"

    def test_alpha_override(self, capsys, tmp_path):
        path = self.write(tmp_path, torus_file_dict())
        code, out, _ = run_cli(capsys, "cdga", "--input", path,
                               "--alpha=-2u")
        assert code == 0
        assert "d(y1) = -4 z - 2 a' b'" in out

    def test_syntax_error_coefficient(self, capsys, tmp_path):
        doc = torus_file_dict()
        doc["alpha"] = [{"basis": "u", "coeff": "1/0"}]
        code, _, err = run_cli(capsys, "validate", "--input",
                               self.write(tmp_path, doc))
        assert code == 1
        assert err.startswith("error:")

    def test_malformed_json_reports_line(self, capsys, tmp_path):
        path = self.write(tmp_path, '{"name": "x",\n  "dim": }')
        code, _, err = run_cli(capsys, "validate", "--input", path)
        assert code == 1
        assert "line" in err

    def test_validate_reports_violations(self, capsys, tmp_path):
        doc = torus_file_dict()
        doc["products"].append(
            {"left": "b", "right": "a",
             "result": [{"basis": "u", "coeff": "1"}]})
        code, out, _ = run_cli(capsys, "validate", "--input",
                               self.write(tmp_path, doc))
        assert code == 1
        assert "invalid:" in out
        assert "commutativity" in out

    def test_model_commands_check_first(self, capsys, tmp_path):
        doc = torus_file_dict()
        doc["products"].append(
            {"left": "b", "right": "a",
             "result": [{"basis": "u", "coeff": "1"}]})
        code, _, err = run_cli(capsys, "betti", "--input",
                               self.write(tmp_path, doc),
                               "--max-degree", "2")
        assert code == 1
        assert "invalid variety data" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "validate", "--input",
                               str(tmp_path / "absent.json"))
        assert code == 1
        assert "error:" in err


class TestDeterminism:
    def run_twice(self, *argv):
        cmd = [sys.executable, "-m", "hypermod.cli", *argv]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == 0 and second.returncode == 0
        assert first.stdout == second.stdout
        return first.stdout

    def test_cdga_bytes_stable(self):
        out = self.run_twice("cdga", "--builtin", "torus", "--alpha", "3u")
        assert b"d(y1) = 6 z - 2 a' b'" in out

    def test_compare_jsonl_bytes_stable(self):
        out = self.run_twice("compare", "--builtin", "p2", "--alpha", "5h",
                             "--format", "jsonl")
        assert json.loads(out)["all_equal"] is True
