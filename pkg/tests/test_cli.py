import json
import xml.etree.ElementTree as ET

import pytest

from immcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stable_cohomology_json_roundtrip(capsys):
    code, out, _ = run(capsys, "stable-cohomology", "--dim", "7", "--max-degree", "8", "--json")
    assert code == 0
    doc = json.loads(out)
    assert [g["name"] for g in doc["generators"]] == ["kappa_1", "kappa_2", "kappa_3", "kappa_4"]
    assert doc["hilbert"]["coeffs"] == [1, 0, 1, 0, 2, 0, 3, 0, 5]


@pytest.mark.parametrize("argv", [
    ["stable-cohomology", "--dim", "2"],
    ["specseq", "--n", "1"],
    ["grassmannian"],
    ["qseries", "--order-q", "5", "--order-x", "2", "--perturb", "9,9"],
    ["qseries", "--order-q", "5", "--order-x", "2", "--perturb", "x"],
    ["stabilizers", "--genus", "1"],
    ["pi0", "--dim", "4", "--h2", "Z/3", "--w2", "1"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_qseries_exit_codes(capsys):
    code, out, _ = run(capsys, "qseries", "--order-q", "20", "--order-x", "6")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out, _ = run(capsys, "qseries", "--order-q", "20", "--order-x", "6", "--perturb", "9,3")
    assert code == 1 and json.loads(out)["first_mismatch"] == [9, 3]
    code, _, _ = run(capsys, "looijenga", "--order-t", "20", "--order-u", "5")
    assert code == 0


def test_ranges_and_stabilizers(capsys):
    assert run(capsys, "ranges", "--dim", "3", "--genus", "13") == (0, "4\n", "")
    code, out, _ = run(capsys, "ranges", "--dim", "5", "--genus", "3", "--map", "alpha", "--mode", "iso", "--json")
    assert json.loads(out) == {"bound": 1}
    code, out, _ = run(capsys, "stabilizers", "--genus", "5", "--json")
    assert json.loads(out)["orders"][-1] == {"k": 4, "h": 2}


def test_pi0_json(capsys):
    code, out, _ = run(capsys, "pi0", "--dim", "3", "--genus", "2", "--json")
    assert code == 0
    assert len(json.loads(out)["spin_orbits"]) == 2
    code, out, _ = run(capsys, "pi0", "--dim", "6", "--h2", "Z + Z/2", "--json")
    assert json.loads(out)["components"] == "Z + Z/2"


def test_imm(capsys):
    code, out, _ = run(capsys, "imm", "--genus", "2", "--n", "2", "--max-degree", "12", "--json")
    assert code == 0
    assert json.loads(out)["dims"] == {"0": 1, "5": 1, "6": 4, "7": 1, "11": 4, "12": 11}


def test_specseq_outputs(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("IMMCALC_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "specseq", "--n", "2", "--max-total", "20", "--svg", "c.svg", "--tsv", "p.tsv",
                       "--json", "--genus", "10")
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True and doc["T_safe"] == 12
    assert doc["stable_degrees"] == list(range(6))
    root = ET.parse(tmp_path / "c.svg").getroot()
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    lines = (tmp_path / "p.tsv").read_text().splitlines()
    assert lines[0] == "r\tp\tq\tdim"
    assert all(len(line.split("\t")) == 4 for line in lines[1:])


def test_specseq_byte_deterministic(capsys, tmp_path):
    outs = []
    for name in ("a", "b"):
        code, out, _ = run(capsys, "specseq", "--n", "3", "--max-total", "20", "--json",
                           "--svg", str(tmp_path / f"{name}.svg"))
        assert code == 0
        outs.append((out, (tmp_path / f"{name}.svg").read_bytes()))
    assert outs[0] == outs[1]


def test_verify_all(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("IMMCALC_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "verify-all")
    assert code == 0, out
    ET.parse(tmp_path / "sseq_n2.svg")
    code, out, _ = run(capsys, "verify-all", "--out-dir", str(tmp_path / "x"), "--inject-failure")
    assert code == 1 and "FAIL" in out
