import pytest
from fastapi.testclient import TestClient

from treeshift.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_info(client):
    r = client.get("/")
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "treeshift"
    assert "/norm" in body["endpoints"]


def test_describe(client):
    r = client.post("/describe", json={"tree": "gallery:k_tree?k=3", "depth": 4})
    assert r.status_code == 200
    body = r.json()
    assert body["level_sizes"] == [1, 3, 5, 7, 9]
    assert body["total_vertices"] == 25
    assert body["leafless_up_to_depth"] is True
    assert body["first_leaf"] is None
    assert body["degree_histograms"]["0"] == {"3": 1}


def test_describe_reports_leaf(client):
    tree = {"kind": "degree_table", "params": {"rows": [[2], [0, 2]], "default_degree": 2}}
    r = client.post("/describe", json={"tree": tree, "depth": 5})
    assert r.json()["first_leaf"] == [1, 0]


def test_norm_uses_certificates_at_depth_64(client):
    r = client.post(
        "/norm",
        json={"tree": "gallery:homogeneous?q=3", "depth": 64, "op": "B", "power": 2, "p": 2},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["value_p_power"] == "81"
    assert body["truncated"] is False
    assert body["bounded_verdict"] == "bounded"


def test_norm_unbounded_verdict(client):
    r = client.post(
        "/norm",
        json={"tree": "gallery:quadratic_growth", "depth": 32, "op": "S", "power": 1, "p": 2},
    )
    body = r.json()
    assert body["bounded_verdict"] == "unbounded"
    assert body["divergence"]


def test_radius(client):
    r = client.post(
        "/radius",
        json={"tree": "gallery:periodic?q=2,3", "depth": 64, "op": "B", "p": 1, "max_power": 12},
    )
    body = r.json()
    assert body["radius_estimate"] == pytest.approx(6 ** 0.5)
    assert len(body["radius_sequence"]) == 12


def test_witness_eigenfunction(client):
    r = client.post(
        "/witness",
        json={"tree": "gallery:periodic?q=2,1", "depth": 8, "kind": "eigenfunction_B", "lam": "1/2"},
    )
    body = r.json()
    assert body["verdict"] == "verified"
    assert body["residual"] == "0"
    assert body["witness"]["omitted"] is False
    assert body["witness"]["entries"][0] == {"level": 0, "index": 0, "num": 1, "den": 1}


def test_witness_summary_omits_function(client):
    r = client.post(
        "/witness",
        json={
            "tree": "gallery:periodic?q=2,1",
            "depth": 8,
            "kind": "eigenfunction_B",
            "lam": "1/2",
            "include_function": False,
        },
    )
    w = r.json()["witness"]
    assert w["omitted"] is True
    assert w["entries"] is None
    assert w["entry_count"] > 0


def test_witness_needs_lambda(client):
    r = client.post(
        "/witness",
        json={"tree": "gallery:k_tree?k=2", "depth": 6, "kind": "resolvent_S"},
    )
    assert r.status_code == 400
    assert "lambda" in r.json()["error"]["message"]


def test_witness_point_spectrum(client):
    r = client.post(
        "/witness", json={"tree": "gallery:k_tree?k=2", "depth": 6, "kind": "point_spectrum_S"}
    )
    body = r.json()
    assert body["verdict"] == "empty"
    assert body["identity"] == "S f = lambda f"


def test_witness_resolvent_with_vertex(client):
    r = client.post(
        "/witness",
        json={
            "tree": "gallery:periodic?q=2,1",
            "depth": 8,
            "kind": "resolvent_S",
            "lam": "2",
            "vertex": [1, 0],
        },
    )
    body = r.json()
    assert body["verdict"] == "verified"
    assert body["profile"]["vertex"] == [1, 0]


def test_hypercyclic_with_suite(client):
    r = client.post(
        "/hypercyclic",
        json={"tree": "gallery:homogeneous?q=2", "depth": 12, "op": "B", "samples": 5, "seed": 4},
    )
    body = r.json()
    assert body["verdict"] == "yes"
    assert body["suite"]["inversion_failures"] == 0


def test_hypercyclic_without_suite(client):
    r = client.post(
        "/hypercyclic",
        json={"tree": "gallery:homogeneous?q=2", "depth": 12, "op": "S", "suite": False},
    )
    body = r.json()
    assert body["verdict"] == "no"
    assert "suite" not in body


def test_gallery_list(client):
    r = client.get("/gallery/list")
    names = [e["name"] for e in r.json()["entries"]]
    assert names == sorted(names)
    assert "ceil_three_halves" in names


def test_gallery_self_test(client):
    r = client.post("/gallery/self_test", json={"name": "periodic", "params": {"q": [2, 3]}, "depth": 8})
    body = r.json()
    assert body["passed"] is True
    assert body["entry"] == "periodic"


def test_verify_deterministic(client):
    req = {
        "tree": "gallery:two_three_blocks",
        "depth": 10,
        "op": "B",
        "power": 2,
        "p": 1,
        "trials": 40,
        "seed": 99,
    }
    a = client.post("/verify", json=req).json()
    b = client.post("/verify", json=req).json()
    assert a == b
    assert a["lower_bound"]["never_exceeded"] is True
    assert a["extremal"]["all_equal"] is True


def test_verify_extremal_opt_out(client):
    req = {
        "tree": "gallery:homogeneous?q=2",
        "depth": 8,
        "op": "B",
        "power": 1,
        "p": 1,
        "trials": 10,
        "seed": 1,
        "extremal": False,
    }
    body = client.post("/verify", json=req).json()
    assert body["extremal"] is None
    assert body["lower_bound"]["never_exceeded"] is True

    # randomized verification runs in exact arithmetic: fractional p is rejected
    req["p"] = 1.5
    assert client.post("/verify", json=req).status_code == 422


def test_apply(client):
    r = client.post(
        "/apply",
        json={
            "tree": "gallery:homogeneous?q=2",
            "depth": 6,
            "op": "B",
            "power": 1,
            "function": [
                {"level": 1, "index": 0, "num": 1, "den": 2},
                {"level": 1, "index": 1, "num": 1, "den": 3},
            ],
        },
    )
    assert r.json() == {
        "mode": "exact",
        "entries": [{"level": 0, "index": 0, "num": 5, "den": 6}],
    }


def test_validation_errors_are_422(client):
    r = client.post("/norm", json={"tree": "gallery:k_tree?k=2", "depth": 0, "op": "S"})
    assert r.status_code == 422
    r = client.post("/norm", json={"tree": "gallery:k_tree?k=2", "depth": 8})
    assert r.status_code == 422
    r = client.post("/witness", json={"tree": "gallery:k_tree?k=2", "depth": 8, "kind": "nope"})
    assert r.status_code == 422


def test_domain_errors_are_400(client):
    r = client.post("/norm", json={"tree": "gallery:nope", "depth": 8, "op": "S", "power": 1, "p": 1})
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "ParameterError"

    r = client.post(
        "/apply",
        json={
            "tree": "gallery:k_tree?k=2",
            "depth": 4,
            "op": "S",
            "power": 1,
            "function": [{"level": 4, "index": 0, "num": 1, "den": 1}],
        },
    )
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "OutOfDepthError"

    # a tree whose materialization dies at level 1
    r = client.post(
        "/describe",
        json={"tree": {"kind": "degree_table", "params": {"rows": [[0]], "default_degree": 1}}, "depth": 3},
    )
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "DeadTreeError"
