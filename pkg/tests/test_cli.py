"""End-to-end command-line runs: argument wiring, output shapes, the exit
code map, and report files written through -o."""

import json

import pytest

from obstructa.cli import main
from obstructa.plgeom import moment_curve_map
from obstructa.reports import chain_to_json

from conftest import massey_u


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_complex_census(capsys):
    code, out, err = run(capsys, "complex", "builtin:g7")
    assert code == 0 and err == ""
    assert out.strip() == "valid complex: dimension 2, 62 simplices"


def test_json_output_parses(capsys):
    code, out, _ = run(capsys, "complex", "builtin:g7", "--json")
    rep = json.loads(out)
    assert rep["census"] == {"0": 7, "1": 21, "2": 34}
    assert rep["verdict"].startswith("valid complex")
    assert "timings" in rep


def test_dp_stats(capsys):
    code, out, _ = run(capsys, "dp", "stats", "builtin:k5", "-n", "2")
    assert code == 0
    assert out.strip() == ("2-fold deleted product: 110 cells, "
                           "30 in top degree 2")


def test_vk_prints_certificate_line(capsys):
    code, out, _ = run(capsys, "vk", "builtin:g7")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("double-point class in dimension 4: class zero")
    assert lines[1] == "certificate: zero_with_primitive (degree 4, character sign_d)"


def test_unknown_builtin_exits_2(capsys):
    code, out, err = run(capsys, "complex", "builtin:nope")
    assert code == 2 and out == ""
    obj = json.loads(err)
    assert obj["error"]["code"] == "InvalidComplexError"
    assert obj["error"]["exit"] == 2


def test_size_guard_exits_3_with_stage(capsys):
    code, _, err = run(capsys, "dp", "stats",
                       "builtin:disjoint_sphere_sphere_torus", "-n", "3",
                       "--size-guard", "1000")
    assert code == 3
    obj = json.loads(err)
    assert obj["error"]["code"] == "SizeGuardError"
    assert obj["error"]["stage"] == "build"


def test_geom_flat_map_exits_4(capsys, tmp_path, k5):
    mp = tmp_path / "k5_plane.json"
    mp.write_text(json.dumps(moment_curve_map(k5, 2).to_json()))
    code, _, err = run(capsys, "geom", "builtin:k5", "--map", str(mp))
    assert code == 4
    obj = json.loads(err)
    assert obj["error"]["code"] == "DegenerateGeometryError"
    assert obj["error"]["stage"] == "validate"


def test_geom_accepts_an_almost_embedding(capsys):
    code, out, _ = run(capsys, "geom", "builtin:disjoint_sphere_sphere_torus",
                       "--map", "builtin:dsst_stock")
    assert code == 0
    assert out.strip().startswith("almost-embedding validated")


def test_o3_kunneth_route(capsys):
    code, out, _ = run(capsys, "o3", "kunneth", "builtin:k_fkt",
                       "--linking", "builtin:fkt_prop_link", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["mode"] == "linking_data"
    (cj,) = rep["certificates"]
    assert cj["payload"]["value"] == -1


def test_o3_kunneth_requires_linking(capsys):
    code, _, err = run(capsys, "o3", "kunneth", "builtin:k_fkt")
    assert code == 1
    assert "needs --linking" in json.loads(err)["error"]["message"]


def test_trees_rank(capsys):
    code, out, _ = run(capsys, "trees", "rank", "-m", "3")
    assert code == 0
    assert out.strip() == ("order-3 tree group: free abelian of rank 6 "
                           "(15 generators, 45 relations)")


def test_w3_certify(capsys):
    code, out, _ = run(capsys, "w3", "builtin:disjoint_sphere_sphere_torus",
                       "builtin:dsst_datum", "--certify")
    assert code == 0
    lines = out.strip().splitlines()
    assert "pairs to 1" in lines[0]
    assert lines[1] == "certificate: nonzero_by_pairing (degree 6, character sign)"


def test_wn_tree_cochain(capsys, tmp_path):
    tw = tmp_path / "towers.json"
    tw.write_text(json.dumps(
        {"towers": [{"cells": [0, 1, 2, 3],
                     "points": [{"sign": 1, "tree": [[0, 1], [2, 3]]}]}]}))
    code, out, _ = run(capsys, "wn", "builtin:four_triangles", str(tw),
                       "-n", "4")
    assert code == 0
    assert out.strip() == ("tree-valued cochain on 24 cells, 24 nonzero, "
                           "values in rank 2")


def test_massey_pipeline(capsys, tmp_path, four_triangles):
    uc = tmp_path / "u.json"
    uc.write_text(json.dumps({"cells": chain_to_json(massey_u(four_triangles))}))
    code, out, _ = run(capsys, "massey", "builtin:four_triangles",
                       "--cochain", str(uc))
    assert code == 0
    assert out.strip() == ("three triple-product cocycles with supports "
                           "24/24/24; sum vanishes entrywise")


def test_out_appends_and_verify_round_trips(capsys, tmp_path):
    out_path = tmp_path / "runs.jsonl"
    for _ in range(2):
        code, _, _ = run(capsys, "vk", "builtin:g7", "-o", str(out_path))
        assert code == 0
    assert len(out_path.read_text().splitlines()) == 2
    code, out, _ = run(capsys, "verify", str(out_path))
    assert code == 0
    assert out.strip() == "all stored certificates re-verified"


def test_verify_tampered_report_exits_5(capsys, tmp_path):
    out_path = tmp_path / "runs.jsonl"
    run(capsys, "vk", "builtin:g7", "-o", str(out_path))
    obj = json.loads(out_path.read_text())
    obj["certificates"][0]["payload"]["primitive"][0][1] += 1
    out_path.write_text(json.dumps(obj) + "\n")
    code, _, err = run(capsys, "verify", str(out_path))
    assert code == 5
    assert json.loads(err)["error"]["code"] == "CertificateError"


def test_verify_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "absent.jsonl"))
    assert code == 2
    assert json.loads(err)["error"]["exit"] == 2


def test_reports_ignore_the_seed(capsys):
    outs = []
    for seed in ("1", "999"):
        code, out, _ = run(capsys, "vk", "builtin:g7", "--json", "--seed", seed)
        assert code == 0
        rep = json.loads(out)
        rep.pop("timings")
        outs.append(rep)
    assert outs[0] == outs[1]
