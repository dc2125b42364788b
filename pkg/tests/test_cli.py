import json
import subprocess
import sys

import pytest

from reciprocity.cli import corpus_names, corpus_path, main

EXPECTED_EXIT = {
    "pyramid_opposite_triangles": 1,
    "cone_square_opposite_facets": 1,
    # statement 2 of relative Brion, as written, is refuted on every instance
    "brion_square_edge": 1, "brion_square_two_edges": 1, "brion_square_classical": 1,
    "brion_triangle_classical": 1, "brion_random3_classical": 1, "interval_endpoint": 1,
}


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_exit_codes(name, capsys):
    code, out, err = run(["check", f"corpus:{name}"], capsys)
    assert code == EXPECTED_EXIT.get(name, 0), err
    json.loads(out)


def test_cube_report(capsys):
    code, out, _ = run(["check", "corpus:cube4_s1"], capsys)
    rep = json.loads(out)
    assert code == 0
    eh = next(c for c in rep["checks"] if c["check"] == "ehrhart")["result"]
    assert eh["coefficients"] == ["1", "0", "-2", "0", "1"]
    vals = [int(r["E(n)"]) for r in eh["values"]]
    assert vals == [int(r["reciprocal"]) for r in eh["values"]]
    hom = next(c for c in rep["checks"] if c["check"] == "homology")["result"]
    t = hom["relative_boundary"]["reduced_homology"]
    assert [t[k]["rank"] for k in ("0", "1", "2")] == [0, 2, 1]


def test_pyramid_witness(capsys):
    code, out, _ = run(["check", "corpus:pyramid_opposite_triangles"], capsys)
    assert code == 1
    rep = json.loads(out)
    cm = next(c for c in rep["checks"] if c["check"] == "cm")["result"]
    assert cm["value"] == "NotWeaklyCM" and cm["witness"]["face"] == [[0, 0, 1]]


def test_ehrhart_command(capsys):
    code, out, _ = run(["ehrhart", "corpus:cube4_closed", "--n-max", "3"], capsys)
    rep = json.loads(out)
    vals = rep["checks"][0]["result"]["values"]
    assert [int(v["E(n)"]) for v in vals] == [(n + 1) ** 4 for n in range(4)]
    code, out, _ = run(["ehrhart", "corpus:interval_endpoint", "--format", "text"], capsys)
    assert code == 0 and "1*n" in out


def test_bright_side_command(capsys):
    code, out, _ = run(["bright-side", "corpus:square_bright_corner"], capsys)
    rep = json.loads(out)["checks"][0]["result"]
    assert code == 0 and rep["bright_facets"] == [2, 3] and rep["cm_status"]["value"] == "CM"
    code, out, _ = run(["bright-side", "corpus:square_bright_interior"], capsys)
    rep = json.loads(out)["checks"][0]["result"]
    assert rep["bright_facets"] == [] and rep["verdict"] == "VERIFIED"
    code, out, _ = run(["bright-side", "corpus:cube3_bright_corner"], capsys)
    rep = json.loads(out)["checks"][0]["result"]
    assert len(rep["bright_facets"]) == 3 and rep["verdict"] == "VERIFIED"


@pytest.mark.parametrize("body", [
    '{"ambient_dim": 1, "polytope": {"vertices": [[0], [1.5]]}}',
    '{"ambient_dim": 1, "polytope": {"vertices": [[0], [1]]}, "subcomplex": {"light_source": [0.5]}}',
    '{"ambient_dim": 1, "polytope": {"vertices": [[0], [1]]}, "checks": ["nope"]}',
    '{"ambient_dim": 2, "polytope": {"vertices": [[0], [1]]}}',
    '{"ambient_dim": 1}',
    '{not json',
    '{"ambient_dim": 2, "polytope": {"vertices": [[0,0],[1,0],[0,1]]}, "subcomplex": {"facets": [9]}}',
    '{"ambient_dim": 2, "polytope": {"vertices": [[0,0],[1,0],[0,1]]}, "checks": ["mr1"]}',
])
def test_input_errors_exit_2(tmp_path, capsys, body):
    f = tmp_path / "bad.json"
    f.write_text(body)
    code, out, err = run(["check", str(f)], capsys)
    assert code == 2 and err.startswith("error:") and out == ""


def test_flags_override_and_determinism(tmp_path):
    cmd = [sys.executable, "-m", "reciprocity", "check", str(corpus_path("cone_square_one_facet")),
           "--seed", "7", "--trials", "5"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0 and a.stdout == b.stdout
    rep = json.loads(a.stdout)
    assert rep["parameters"]["seed"] == 7 and rep["parameters"]["trials"] == 5
