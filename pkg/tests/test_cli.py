import json

from cdcmip.cli import main
from conftest import triangle_strip

SOS2_5 = '{"sets": [[1, 2], [2, 3], [3, 4], [4, 5]]}'
TRIANGLE = '{"sets": [[1, 2], [2, 3], [1, 3]]}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def family_file(tmp_path, text, name="family.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def strip_file(tmp_path, d):
    polys = [[[str(x), str(y)] for x, y in poly] for poly in triangle_strip(d).polygons]
    path = tmp_path / f"strip{d}.json"
    path.write_text(json.dumps({"polygons": polys}))
    return str(path)


def test_analyze_sos2(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", family_file(tmp_path, SOS2_5))
    assert code == 0
    report = json.loads(out)
    assert report["admits_junction_tree"] is True
    assert report["mst_weight"] == 3
    assert report["conflict_edges"] == 6
    assert report["pairwise_ib"] is True


def test_analyze_triangle(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", family_file(tmp_path, TRIANGLE))
    assert code == 0
    report = json.loads(out)
    assert report["admits_junction_tree"] is False
    assert report["pairwise_ib"] is False


def test_analyze_deterministic(tmp_path, capsys):
    path = family_file(tmp_path, SOS2_5)
    _, first, _ = run(capsys, "analyze", path)
    _, second, _ = run(capsys, "analyze", path)
    assert first == second


def test_analyze_pretty(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--pretty", family_file(tmp_path, SOS2_5))
    assert code == 0 and "mst_weight" in out and "{" not in out


def test_malformed_input_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", family_file(tmp_path, '{"sets": []}'))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "analyze", family_file(tmp_path, "not json"))
    assert code == 2
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_size_guard_exits_3(tmp_path, capsys):
    code, _, err = run(
        capsys, "analyze", "--max-ground", "3", family_file(tmp_path, SOS2_5)
    )
    assert code == 3 and "exceed" in err


def test_cover_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "cover", "--verify", family_file(tmp_path, SOS2_5))
    assert code == 0
    payload = json.loads(out)
    assert len(payload["bicliques"]) == 2
    assert payload["verified"] is True
    assert payload["min_exact"] == 2


def test_cover_without_junction_tree_hints(tmp_path, capsys):
    code, _, err = run(capsys, "cover", family_file(tmp_path, TRIANGLE))
    assert code == 2 and "ext-jtree" in err


def test_formulate_lp(tmp_path, capsys):
    out_path = tmp_path / "out.lp"
    code, _, _ = run(
        capsys,
        "formulate",
        "--formulation",
        "ib",
        "--out",
        str(out_path),
        family_file(tmp_path, SOS2_5),
    )
    assert code == 0
    text = out_path.read_text()
    assert "Binaries" in text and text.count("\n z_") == 2


def test_formulate_json_format(tmp_path, capsys):
    code, out, _ = run(
        capsys,
        "formulate",
        "--formulation",
        "naive",
        "--format",
        "json",
        family_file(tmp_path, SOS2_5),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["metadata"]["builder"] == "naive"
    assert len(payload["variables"]) == 9
    assert any(c["name"] == "mass" for c in payload["constraints"])


def test_formulate_triangle_ib_fails_with_hint(tmp_path, capsys):
    code, _, err = run(
        capsys, "formulate", "--formulation", "ib", family_file(tmp_path, TRIANGLE)
    )
    assert code == 2 and "ext-jtree" in err
    code, out, _ = run(
        capsys,
        "formulate",
        "--formulation",
        "ext-jtree",
        family_file(tmp_path, TRIANGLE),
    )
    assert code == 0 and "Binaries" in out


def test_sosk_subcommand(tmp_path, capsys):
    code, out, err = run(capsys, "sosk", "--n", "5", "--k", "2", "--bounds")
    assert code == 0
    assert out.count("\n z_") == 2
    assert "ours=2" in err and "kis_horvath=5" in err


def test_verify_subcommand(tmp_path, capsys):
    code, out, _ = run(
        capsys, "verify", "--formulation", "ib", family_file(tmp_path, SOS2_5)
    )
    assert code == 0
    assert "support_validity: pass" in out
    assert "ideal: pass" in out


def test_verify_random(capsys):
    code, out, _ = run(capsys, "verify", "--random", "15", "--seed", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["agreements"] == 15


def test_transform_subcommand(tmp_path, capsys):
    code, out, _ = run(capsys, "transform", family_file(tmp_path, TRIANGLE))
    assert code == 0
    assert json.loads(out)["extra_continuous"] == 1
    code, out, _ = run(capsys, "transform", "--disjoint", family_file(tmp_path, TRIANGLE))
    assert code == 0
    assert json.loads(out)["extra_continuous"] == 3


def test_geom_savings(tmp_path, capsys):
    code, out, _ = run(capsys, "geom", "savings", strip_file(tmp_path, 5))
    assert code == 0
    report = json.loads(out)
    assert report["cont_saved"] == 8
    assert report["jtree_cont"] == 7 and report["disjoint_cont"] == 15


def test_geom_analyze(tmp_path, capsys):
    code, out, _ = run(capsys, "geom", "analyze", strip_file(tmp_path, 2))
    assert code == 0
    payload = json.loads(out)
    assert payload["dual_edges"] == [[0, 1]]
    assert len(payload["sets"]) == 2
