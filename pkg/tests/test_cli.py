import json
import subprocess
import sys

import pytest

from crosscap import cli
from crosscap.fixtures import fixture_text
from crosscap.milp.export import parse_lp, parse_mps
from crosscap.milp import build_ip, EXACT, BOUNDED
from crosscap.tri_format import loads


@pytest.fixture
def files(tmp_path):
    def make(name, text=None):
        path = tmp_path / f"{name}.tri"
        path.write_text(fixture_text(name) if text is None else text)
        return str(path)
    return make


def test_skeleton_free_tetrahedron(files, capsys):
    assert cli.main(["skeleton", files("free_tet")]) == 0
    assert capsys.readouterr().out.strip() == \
        "vertices=4 edges=6 faces=4 boundaryFaces=4 suitable=false"


def test_skeleton_solid_torus(files, capsys):
    assert cli.main(["skeleton", files("unknot")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("vertices=1 ") and out.strip().endswith("suitable=true")


def test_skeleton_json(files, capsys):
    assert cli.main(["skeleton", "--json", files("trefoil")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vertices"] == 1 and doc["suitable"] is True


def test_self_gluing_names_line(files, capsys):
    path = files("bad", "tets 1\n0:0:0123 b b b\n")
    assert cli.main(["skeleton", path]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert cli.main(["skeleton", str(tmp_path / "nope.tri")]) == 5
    assert "error" in capsys.readouterr().err


def test_crosscap_hilbert_unknot(files, capsys):
    assert cli.main(["crosscap", files("unknot"), "--method", "hilbert"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "Exact" and doc["values"] == [0]
    assert "timing" in doc


def test_crosscap_bounded_trefoil(files, capsys):
    assert cli.main(["crosscap", files("trefoil"), "--method", "ip-bounded"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "UpperBound" and doc["values"] == [1]


def test_refined_mode(files, capsys):
    assert cli.main(["crosscap", files("unknot"), "--method", "ip-exact", "--mode",
                     "refined"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "Exact"


@pytest.mark.parametrize("method", ["hilbert", "ip-exact", "ip-bounded"])
def test_missing_meridian_is_unsuitable(files, method):
    text = "".join(l for l in fixture_text("unknot").splitlines(True)
                   if not l.startswith("meridian"))
    assert cli.main(["crosscap", files("plain", text), "--method", method]) == 3


def test_unsuitable_triangulation(files):
    assert cli.main(["crosscap", files("x", "tets 1\nb b b b\nmeridian 0\n")]) == 3


def test_internal_meridian(files):
    m = loads(fixture_text("trefoil"))
    internal = next(c.index for c in m.tri.skeleton.edge_classes if not c.boundary)
    text = fixture_text("trefoil").replace(f"meridian {m.meridian}", f"meridian {internal}")
    assert cli.main(["crosscap", files("t", text)]) == 3


def test_budget_exhaustion(files):
    assert cli.main(["crosscap", files("trefoil"), "--method", "ip-exact",
                     "--node-budget", "2"]) == 4
    assert cli.main(["crosscap", files("trefoil"), "--max-candidates", "20"]) == 4


def test_bad_budget_rejected(files):
    assert cli.main(["crosscap", files("unknot"), "--node-budget", "0"]) == 2


def test_output_file(files, tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["crosscap", files("unknot"), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["values"] == [0]
    assert cli.main(["crosscap", files("unknot"), "-o", str(tmp_path / "no" / "r.json")]) == 5


def test_deterministic_json(files, capsys):
    path = files("trefoil")
    outs = []
    for _ in range(2):
        assert cli.main(["crosscap", path, "--method", "ip-exact", "--no-timing"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert "timing" not in json.loads(outs[0])


def test_several_inputs_with_jobs(files, capsys):
    paths = [files("unknot"), files("unknot_layered"), files("trefoil")]
    assert cli.main(["crosscap", *paths, "--jobs", "2", "--no-timing"]) == 0
    docs = json.loads(capsys.readouterr().out)
    assert [d["input"] for d in docs] == paths
    assert [d["values"] for d in docs] == [[0], [0], [1]]
    assert cli.main(["crosscap", *paths, "--no-timing"]) == 0
    assert json.loads(capsys.readouterr().out) == docs


def test_mixed_inputs_report_worst_code(files, capsys):
    paths = [files("unknot"), files("free_tet")]
    assert cli.main(["crosscap", *paths]) == 3
    docs = json.loads(capsys.readouterr().out)
    assert "error" in docs[1] and docs[0]["kind"] == "Exact"


@pytest.mark.parametrize("fmt,reader", [("lp", parse_lp), ("mps", parse_mps)])
@pytest.mark.parametrize("bigm,mode,token", [("exact", EXACT, "131072"),
                                             ("10000", BOUNDED, "10000")])
def test_export(files, tmp_path, fmt, reader, bigm, mode, token):
    out = tmp_path / f"m.{fmt}"
    assert cli.main(["export", files("unknot_layered"), "--bigm", bigm, "--format", fmt,
                     "-o", str(out)]) == 0
    text = out.read_text()
    assert token in text
    assert reader(text) == build_ip(loads(fixture_text("unknot_layered")), mode)


def test_export_io_error(files, tmp_path):
    assert cli.main(["export", files("unknot"), "-o", str(tmp_path / "no" / "m.lp")]) == 5


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "crosscap.cli", "skeleton", files("unknot")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "suitable=true" in proc.stdout
