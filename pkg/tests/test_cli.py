import io
import json
from pathlib import Path

import pytest

from topocontrol.cli import run

GOLDEN = Path(__file__).parent / "golden"

# (argv, golden report, expected exit status)
DOCUMENTED = [
    (["verify-closure", "--input", '{"rule":"mu","F":[0,1]}', "--n", "3"], "verify_closure_mu.json", 0),
    (["check-separation", "--n", "3", "--F", "0,1"], "check_separation_mu.json", 0),
    (["build-topology", "--input", str(GOLDEN / "table_all_empty.json")], "build_topology_rejected.json", 1),
]


def invoke(argv):
    buf = io.StringIO()
    status = run(argv, stdout=buf)
    return status, buf.getvalue()


def report(argv):
    status, text = invoke(argv + ["--json-only"])
    return status, json.loads(text)


@pytest.mark.parametrize("argv, golden, status", DOCUMENTED)
def test_golden_bytes(tmp_path, argv, golden, status):
    out = tmp_path / "report.json"
    assert invoke(argv + ["--output", str(out)])[0] == status
    assert out.read_bytes() == (GOLDEN / golden).read_bytes()


@pytest.mark.parametrize("argv, golden, status", DOCUMENTED)
def test_repeat_is_identical(argv, golden, status):
    assert invoke(argv + ["--json-only"]) == invoke(argv + ["--json-only"])


def test_documented_contents():
    _, rep = report(DOCUMENTED[0][0])
    assert rep["pass"] and all(a["pass"] for a in rep["axioms"].values())
    _, rep = report(DOCUMENTED[1][0])
    assert rep["separation"]["hausdorff"] is False
    _, rep = report(DOCUMENTED[2][0])
    assert rep["axioms"]["extensive"] == {"pass": False, "witnessA": [0], "witnessB": None}
    assert rep["error"]["code"] == "not_a_closure_operator"


def test_summary_goes_to_stdout(tmp_path):
    out = tmp_path / "r.json"
    status, text = invoke(["check-separation", "--n", "3", "--F", "0,1", "--output", str(out)])
    assert status == 0 and text.strip() == "t0=True t1=False hausdorff=False"


def test_build_topology_success():
    status, rep = report(["build-topology", "--n", "3", "--F", "0,1"])
    assert status == 0
    assert rep["topology"]["opens"] == [[], [0], [1], [0, 1], [0, 1, 2]]


def test_inspect_with_mu_image():
    topo = json.dumps({"universe": {"size": 3, "labels": ["a", "b", "c"]}, "opens": [[], [0], [0, 1, 2]]})
    status, rep = report(["inspect", "--input", topo, "--F", "0,1"])
    assert status == 0
    assert rep["opens_labelled"] == [[], ["a"], ["a", "b", "c"]]
    # mu({0})^c = ({0} | {2})^c = {1}
    assert rep["mu_image"] == [[], [1], [0, 1, 2]]
    assert rep["singleton_closures"]["a"] == ["a", "b", "c"]
    assert rep["dense_points"] == ["a"]


def test_check_nets_with_final_lemma():
    topo = json.dumps({"universe": {"size": 3}, "opens": [[], [0], [0, 1, 2]]})
    status, rep = report(["check-nets", "--input", topo, "--F", "1,2", "--K", "50", "--seed", "4"])
    assert status == 0 and rep["closure_net_theorem"] and rep["final_lemma"]["pass"]
    status, rep = report(["check-nets", "--input", topo, "--F", "0,1"])
    assert status == 2 and rep["error"]["code"] == "f_not_closed"


def test_enumerate():
    status, rep = report(["enumerate", "--n", "3"])
    assert status == 0 and rep["count"] == 29


def test_demo_trivial():
    status, rep = report(["demo-trivial", "--K", "20", "--seed", "3"])
    assert status == 0
    assert rep["x1_pinned"] is True
    assert rep["eps_density"]["dense"] is False
    assert rep["mu_controllability"]["dense"] is True
    assert rep["mu_controllability"]["hausdorff"] is False
    assert rep["cloud"]["K"] == 20


def test_demo_schrodinger_zero():
    status, rep = report(["demo-schrodinger", "--input", '{"phi0": "zero", "N": 15}', "--K", "3", "--dt", "0.005"])
    assert status == 0
    assert rep["max_amplitude"] == 0.0
    assert rep["mu_controllability"] == {
        "F": [0],
        "F_size": 1,
        "dense": True,
        "hausdorff": False,
        "topology": "mu",
        "universe_size": 10,
    }


@pytest.mark.parametrize(
    "argv, code",
    [
        (["nope"], "parse_error"),
        (["verify-closure"], "parse_error"),
        (["verify-closure", "--input", "{not json"], "parse_error"),
        (["verify-closure", "--input", "/nonexistent/file.json"], "parse_error"),
        (["verify-closure", "--n", "3", "--F", "0,1,2"], "full_f"),
        (["verify-closure", "--n", "3", "--F", ""], "empty_f"),
        (["verify-closure", "--n", "3", "--F", "a,b"], "parse_error"),
        (["enumerate", "--n", "5"], "bound_exceeded"),
        (["demo-schrodinger", "--segments", "3"], "misaligned_segments"),
        (["inspect", "--input", '{"universe": {"size": 2}, "opens": [[0]]}'], "not_a_topology"),
    ],
)
def test_errors_have_codes(argv, code):
    status, rep = report(argv)
    assert status in (1, 2)
    assert rep["error"]["code"] == code


def test_invalid_topology_is_a_verification_failure():
    status, _ = report(["inspect", "--input", '{"universe": {"size": 2}, "opens": [[0]]}'])
    assert status == 1
