import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from tilewave.cli import main
from tilewave.serialize import load_schema

from golden_cases import GOLDEN, produce

SCHEMAS = ["region", "tile", "report", "bounds", "descriptor"]


def run(argv):
    try:
        return main(argv)
    except SystemExit as exc:  # argparse usage errors
        return exc.code


def load(path):
    return json.loads(Path(path).read_text())


@pytest.mark.parametrize("name", SCHEMAS)
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_tile_commands(tmp_path):
    out = tmp_path / "w.json"
    assert run(["tile", "shearlet", "--a", "5/2", "--b", "3/2", "-o", str(out)]) == 0
    doc = load(out)
    assert doc["area"] == [63, 8]
    jsonschema.validate(doc, load_schema("tile"))
    poly = tmp_path / "p.json"
    assert run(["tile", "polygon", "--vertices", "0,0;1,0;1,1;0,1", "-o", str(poly)]) == 0
    jsonschema.validate(load(poly), load_schema("region"))


def test_float_vertices_rejected(tmp_path):
    assert run(["tile", "polygon", "--vertices", "0,0;0.5,0;0,1", "-o", str(tmp_path / "x.json")]) == 2
    assert run(["tile", "shearlet", "--a", "1.5", "-o", str(tmp_path / "y.json")]) == 2


def test_invalid_parameters_are_usage_errors(tmp_path):
    assert run(["tile", "shearlet", "--a", "1", "-o", str(tmp_path / "a.json")]) == 2
    assert run(["tile", "similitude", "--a", "2", "--n", "5", "-o", str(tmp_path / "b.json")]) == 2
    assert run(["verify", "translational", "--lattice", "1,0,0", "-o", str(tmp_path / "c.json")]) == 2
    assert run(["verify", "translational", "--tile", str(tmp_path / "missing.json")]) == 2
    assert run(["render"]) == 2


def test_verify_translational_exit_codes(tmp_path):
    ok = tmp_path / "ok.json"
    assert run(["verify", "translational", "--lattice", "1,0,0,3/2", "--k", "2", "-o", str(ok)]) == 0
    bad = tmp_path / "bad.json"
    assert run(["verify", "translational", "--lattice", "1,0,0,1/2", "--k", "8", "-o", str(bad)]) == 1
    rep = load(bad)
    jsonschema.validate(rep, load_schema("report"))
    assert rep["verdict"] == "fail" and rep["witness_cells"][0]["multiplicity"] == 6
    assert rep["details"]["necessary_condition"] is False


def test_verify_from_tile_file(tmp_path):
    tile = tmp_path / "v.json"
    run(["tile", "similitude", "--a", "3", "--n", "6", "-o", str(tile)])
    out = tmp_path / "r.json"
    assert run(["verify", "translational", "--tile", str(tile), "-o", str(out)]) == 0
    assert load(out)["k"] == 4
    assert run(["verify", "multiplicative", "--tile", str(tile), "--samples", "1000", "-o", str(out)]) == 0
    assert load(out)["params"]["group"] == "similitude"


def test_verify_multiplicative_quasi_lattice(tmp_path):
    out = tmp_path / "m.json"
    assert run(["verify", "multiplicative", "--samples", "2000", "--quasi-lattice", "-o", str(out)]) == 0
    rep = load(out)
    jsonschema.validate(rep, load_schema("report"))
    assert rep["details"]["quasi_lattice"]["verdict"] == "pass"


def test_certify_outputs(tmp_path):
    out, gb = tmp_path / "cert.json", tmp_path / "g.bin"
    code = run(["certify", "--radius", "2", "--det-samples", "1000", "-o", str(out), "--gram-out", str(gb)])
    assert code == 0
    rep = load(out)
    jsonschema.validate(rep, load_schema("report"))
    jsonschema.validate(rep["bounds"], load_schema("bounds"))
    for key in ("shifts", "min_det", "lambda_min", "lambda_max", "caveat"):
        assert key in rep
    assert rep["symbol_bounds"]["lower"] <= rep["lambda_min"] <= rep["lambda_max"] <= rep["symbol_bounds"]["upper"]
    assert gb.read_bytes()[:8] == b"TWGRAM01"


def test_certify_refusals(tmp_path):
    out = tmp_path / "c.json"
    assert run(["certify", "--lattice", "1,0,0,1/2", "--k", "8", "-o", str(out)]) == 1
    assert load(out)["verdict"] == "fail"
    assert run(["certify", "--shifts", "0.1,0.2;0.1,0.2", "--det-samples", "500", "-o", str(out)]) == 1
    assert "inadmissible" in load(out)["reason"]


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lattice": "1,0,0,1/2", "k": 8}))
    out = tmp_path / "r.json"
    assert run(["--config", str(cfg), "verify", "translational", "-o", str(out)]) == 1
    assert run(["--config", str(cfg), "verify", "translational", "--lattice", "1,0,0,3/2", "--k", "2",
                "-o", str(out)]) == 0
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["--config", str(cfg), "verify", "translational", "-o", str(out)]) == 2


def test_render_default_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["render", "--figure", "3"]) == 0
    assert (tmp_path / "figure3.svg").read_text().startswith("<?xml")


def test_figure_contents(tmp_path):
    f1 = (GOLDEN / "figure1.svg").read_text()
    assert f1.count('class="piece"') == 6 and f1.count('class="image"') == 2
    f2 = (GOLDEN / "figure2.svg").read_text()
    assert "printed: [-1,1]x[-1/2,3/2]" in f2 and "computed rectangle: [-1,1]x[-1/2,1]" in f2
    out = tmp_path / "f2.svg"
    run(["render", "--figure", "2", "--a", "3", "-o", str(out)])
    assert "3 overlap cell(s)" in out.read_text()


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "w.json"
    res = subprocess.run([sys.executable, "-m", "tilewave.cli", "tile", "shearlet", "--a", "2", "-o", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and out.exists()


def test_golden_outputs(tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    first.mkdir()
    second.mkdir()
    names = produce(first)
    produce(second)
    for name in names:
        a = (first / name).read_bytes()
        assert a == (second / name).read_bytes(), name
        assert a == (GOLDEN / name).read_bytes(), name
