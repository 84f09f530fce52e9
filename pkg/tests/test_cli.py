import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from tvarkit import serialize as io
from tvarkit.cli import main
from tvarkit.polyhedral import Cone, SigmaPolyhedron

FIXTURES = Path(__file__).parent / "fixtures"


def run(tmp_path, task, problem, *flags):
    path = tmp_path / "problem.json"
    path.write_text(problem if isinstance(problem, str) else json.dumps(problem))
    out = tmp_path / "out.json"
    code = main([task, "-i", str(path), "--out", str(out), *flags])
    return code, json.loads(out.read_text()) if "text" not in flags else out.read_text()


def fixture(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


def test_normalize_example(tmp_path):
    code, res = run(tmp_path, "normalize", fixture("ex25_normalize"), "--verify")
    assert code == 0 and res["status"] == "ok"
    coeffs = {c["point"]: c["polyhedron"]["vertices"] for c in res["payload"]["divisor"]["coefficients"]}
    assert coeffs == {"0": [["-1/2", "0"]], "1": [["1/2", "0"]], "inf": [["0", "1/2"], ["1/2", "0"]]}
    assert all(v["ok"] for v in res["payload"]["verification"].values())


def test_sections_empty(tmp_path):
    code, res = run(tmp_path, "sections", fixture("rem114_sections_1"))
    assert code == 0
    assert res["payload"]["sections"] == {"dimension": 0, "basis": []}


def test_float_rejected(tmp_path):
    prob = fixture("rem114_sections_1")
    text = json.dumps(prob).replace('"1/2"', "0.5")
    code, res = run(tmp_path, "sections", text)
    assert code == 2 and res["error"]["code"] == "parse-error"


def test_decimal_string_rejected(tmp_path):
    prob = fixture("rem114_sections_1")
    prob["divisor"][0]["polyhedron"]["vertices"] = [["0.5", 0]]
    code, res = run(tmp_path, "sections", prob)
    assert code == 2 and "divisor[0].polyhedron.vertices[0][0]" in res["error"]["message"]


def test_task_mismatch_is_parse_error(tmp_path):
    code, res = run(tmp_path, "closure", fixture("ex25_normalize"))
    assert code == 2


def test_missing_rank(tmp_path):
    prob = fixture("ex25_normalize")
    del prob["rank"]
    code, res = run(tmp_path, "normalize", prob)
    assert code == 2 and "rank" in res["error"]["message"]


def test_domain_error_exit_code(tmp_path):
    prob = {
        "version": 1,
        "rank": 2,
        "curve": "affine-line",
        "task": "normalize",
        "generators": [{"unit": 1, "factors": [], "weight": [1, 1]}, {"unit": 1, "factors": [[0, 1]], "weight": [2, 2]}],
    }
    code, res = run(tmp_path, "normalize", prob)
    assert code == 1 and res["error"]["code"] == "rank-deficient"


def test_improper_divisor_reported(tmp_path):
    prob = {
        "version": 1,
        "rank": 2,
        "curve": "projective-line",
        "task": "check-proper",
        "sigma": [[1, 0], [0, 1]],
        "divisor": [{"point": 0, "polyhedron": {"vertices": [[-1, 0]]}}],
    }
    code, res = run(tmp_path, "check-proper", prob)
    assert code == 0 and res["payload"]["proper"] is False
    assert res["payload"]["failing_weight"] == [1, 0]


def test_infinity_needs_projective_line(tmp_path):
    prob = fixture("rem114_check_proper")
    prob["curve"] = "affine-line"
    code, res = run(tmp_path, "check-proper", prob)
    assert code == 1 and res["error"]["code"] == "point-not-on-curve"


def test_inequality_coefficients(tmp_path):
    prob = fixture("rem114_check_proper")
    prob["divisor"][2]["polyhedron"] = {
        "inequalities": [{"normal": [1, 0], "bound": 0}, {"normal": [0, 1], "bound": 0}, {"normal": [1, 1], "bound": 1}]
    }
    code, res = run(tmp_path, "check-proper", prob)
    assert code == 0 and res["payload"]["proper"] is True


def test_text_format(tmp_path):
    code, text = run(tmp_path, "sections", fixture("rem114_sections_3"), "--format", "text")
    assert code == 0
    assert "dimension: 0" in text and "status: ok" in text


def test_oracle_task(tmp_path):
    code, res = run(tmp_path, "oracle", fixture("ex25_oracle"), "--seed", "3")
    assert code == 0 and res["payload"]["seed"] == 3
    assert all(res["payload"]["checks"].values())


def test_normality_oracle_confirms_witness(tmp_path):
    code, res = run(tmp_path, "normality", fixture("cor55_n2_normality"), "--oracle")
    assert code == 0
    assert res["payload"]["status"] == "unknown"
    assert res["payload"]["rrv"]["normal"] is False
    assert all(res["payload"]["oracle"].values())


def test_closure_oracle(tmp_path):
    code, res = run(tmp_path, "closure", fixture("ex43_closure"), "--oracle")
    assert code == 0 and res["payload"]["oracle"]["rees-normalization-agrees"]


def test_payload_polyhedra_reparse(tmp_path):
    code, res = run(tmp_path, "normalize", fixture("ex26_normalize"))
    payload = res["payload"]
    sigma = Cone.from_rays([tuple(r) for r in payload["sigma"]["rays"]], dim=2)
    for c in payload["divisor"]["coefficients"]:
        p = c["polyhedron"]
        by_vertices = io.parse_polyhedron({"vertices": p["vertices"]}, sigma, "v")
        by_inequalities = io.parse_polyhedron({"inequalities": p["inequalities"]}, sigma, "h")
        assert by_vertices == by_inequalities


def test_parse_rational():
    assert io.parse_rational("-3/6", "x") == F(-1, 2)
    assert io.parse_rational(4, "x") == 4
    for bad in ("1/0", "0.5", "abc", True, 1.5):
        with pytest.raises(io.ParseError):
            io.parse_rational(bad, "x")


def test_dumps_is_canonical():
    p = SigmaPolyhedron.from_vertices([(F(1, 2), 0)], Cone.orthant(2))
    text = io.dumps({"b": p, "a": [F(1, 3), None, True]})
    assert text == io.dumps({"a": [F(1, 3), None, True], "b": p})
    assert text.endswith("\n") and '"1/3"' in text
