import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def run(*argv, expect=0):
    proc = subprocess.run([sys.executable, "-m", "hocube.cli", *argv],
                          capture_output=True, text=True, cwd=ROOT)
    assert proc.returncode == expect, \
        f"exit {proc.returncode} != {expect}: {proc.stderr}"
    return proc


def lat(name):
    return str(ROOT / "lattices" / name)


def test_w_counts_oracle():
    proc = run("w", lat("gamma3.json"), "--from", "v3", "--to", "v0",
               "--counts")
    assert proc.stdout == '{"counts":[4,4,1]}\n'


def test_jgamma_oracle():
    proc = run("jgamma", lat("gamma3.json"))
    assert proc.stdout == '{"J":[["phi1","phi2","phi3"]]}\n'


def test_boundary_cube_homology_example():
    proc = run("cube", "--op", "boundary", "--args", "3")
    data = json.loads(proc.stdout)
    assert data["homology"] == {"0": "Z", "1": "0", "2": "Z"}
    assert data["counts"] == [8, 12, 6]


def test_homset_listing():
    proc = run("homset", lat("gamma3.json"), "--from", "v1", "--to", "v0")
    assert json.loads(proc.stdout)["hom"] == ["phi1", "zero"]


def test_validate_summary():
    proc = run("validate", lat("square_free.json"))
    data = json.loads(proc.stdout)
    assert data["ok"] and not data["pointed"] and data["lattice"]
    assert data["objects"] == 4


def test_homology_both_models_are_points_for_gamma3():
    plain = run("homology", lat("gamma3.json"), "--from", "v3", "--to", "v0")
    pointed = run("homology", lat("gamma3.json"), "--from", "v3", "--to",
                  "v0", "--pointed")
    for proc in (plain, pointed):
        h = json.loads(proc.stdout)["homology"]
        assert h["0"] == "Z"
        assert all(v == "0" for k, v in h.items() if k != "0")


def test_domain_circle():
    proc = run("domain", lat("gamma3.json"))
    data = json.loads(proc.stdout)
    assert data["counts"] == [2, 2]
    assert data["homology"] == {"0": "Z", "1": "Z"}


def test_triangulate_census_and_dot():
    proc = run("triangulate", lat("gamma3.json"), "--from", "v3", "--to",
               "v0", "--format", "json")
    assert json.loads(proc.stdout)["counts"] == [4, 5, 2]
    dot = run("triangulate", lat("gamma3.json"), "--from", "v3", "--to",
              "v0", "--format", "dot")
    assert dot.stdout.startswith("digraph")


def test_w_cells_byte_stable():
    a = run("w", lat("gamma4.json"), "--from", "v4", "--to", "v0", "--cells")
    b = run("w", lat("gamma4.json"), "--from", "v4", "--to", "v0", "--cells")
    assert a.stdout == b.stdout
    data = json.loads(a.stdout)
    assert len(data["cells"]) == 27


def test_check_corpus_file():
    proc = run("check", lat("gamma4_seminull.json"))
    data = json.loads(proc.stdout)
    assert data["ok"] and data["checks"] > 0


def test_tensor_and_product_ops():
    t = json.loads(run("cube", "--op", "tensor", "--args", "I1",
                       "bI2").stdout)
    assert t["counts"] == [8, 12, 4]
    assert t["homology"]["1"] == "Z"
    p = json.loads(run("cube", "--op", "product", "--args", "I1",
                       "I1").stdout)
    assert p["homology"]["1"] == "Z"     # diagonal-free levelwise square


def test_toda_subcommand():
    gold = json.loads(run("toda", str(ROOT / "diagrams" /
                                      "golden.json")).stdout)
    assert gold["vanishes"] is False
    assert gold["class"] == [1]
    triv = json.loads(run("toda", str(ROOT / "diagrams" /
                                      "trivial.json")).stdout)
    assert triv["vanishes"] is True
    m2 = json.loads(run("toda", str(ROOT / "diagrams" /
                                    "mod2_nullbracket.json")).stdout)
    assert m2["vanishes"] is True and m2["coefficients"] == "mod2"


def test_missing_file_exits_2():
    proc = run("validate", lat("missing.json"), expect=2)
    assert "cannot read" in proc.stderr


def test_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    proc = run("validate", str(bad), expect=2)
    assert "invalid JSON" in proc.stderr


def test_unknown_object_exits_2():
    proc = run("homset", lat("gamma3.json"), "--from", "vX", "--to", "v0",
               expect=2)
    assert "unknown object" in proc.stderr


def test_axiom_violation_exits_3(tmp_path):
    proc = run("jgamma", lat("square_free.json"), expect=3)
    assert "not pointed" in proc.stderr
    looped = {
        "objects": ["a", "b"],
        "morphisms": [{"id": "f", "src": "a", "dst": "b"},
                      {"id": "g", "src": "b", "dst": "a"}],
        "compose": [],
        "pointed": False,
    }
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(looped))
    run("validate", str(path), expect=3)


def test_bad_cube_spec_exits_2():
    proc = run("cube", "--op", "horn", "--args", "3", "9", "0", expect=2)
    assert "--args" in proc.stderr
    run("cube", "--op", "tensor", "--args", "Ix", "I1", expect=2)
    run("cube", "--op", "standard", "--args", "2", "3", expect=2)


def test_toda_format_error_exits_2(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"complexes": {}, "maps": {},
                                "homotopies": {}}))
    proc = run("toda", str(path), expect=2)
    assert "complexes.C3" in proc.stderr


def test_toda_axiom_error_exits_3(tmp_path):
    data = json.loads((Path(ROOT) / "diagrams" / "golden.json").read_text())
    data["homotopies"]["H"] = {"0": [[5]]}
    path = tmp_path / "d.json"
    path.write_text(json.dumps(data))
    proc = run("toda", str(path), expect=3)
    assert "homotopy identity" in proc.stderr
