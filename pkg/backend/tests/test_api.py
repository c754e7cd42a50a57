import math

import pytest
from fastapi.testclient import TestClient

from algebra.annulus import casimir
from algebra.laurent import parse
from main import app

A11 = {"B": [[0, 2], [-2, 0]]}
A2 = {"B": [[0, 1], [-1, 0]]}


def fibonacci_step(m):
    return [
        {"from": [m, 0], "to": [m + 1, 0], "mult": 1},
        {"from": [m, 1], "to": [m + 1, 0], "mult": 1},
        {"from": [m, 0], "to": [m + 1, 1], "mult": 1},
    ]


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


class TestCluster:
    def test_mutate(self, client):
        response = client.post("/api/v1/cluster/mutate", json={"seed": A11, "directions": [1]})
        assert response.status_code == 200
        data = response.json()
        assert data["B"] == [[0, -2], [2, 0]]
        assert parse(data["cluster"][0], nvars=2) == parse("x1^-1 + x1^-1*x2^2", nvars=2)

    def test_variables(self, client):
        response = client.post("/api/v1/cluster/variables", json={"seed": A2, "depth": 6})
        assert response.json()["count"] == 5
        assert response.json()["positive"] is True

    def test_finite_type(self, client):
        response = client.post("/api/v1/cluster/finite-type", json={"seed": A2, "budget": 10000})
        assert response.json()["status"] == "finite"
        assert response.json()["count"] == 5

    def test_bad_direction_is_400(self, client):
        response = client.post("/api/v1/cluster/mutate", json={"seed": A11, "directions": [3]})
        assert response.status_code == 400
        assert response.json()["code"] == "IndexOutOfRange"

    def test_non_square_is_422(self, client):
        response = client.post("/api/v1/cluster/mutate", json={"seed": {"B": [[0, 1]]}, "directions": [1]})
        assert response.status_code == 422


class TestBratteli:
    def test_diagram(self, client):
        response = client.post("/api/v1/bratteli/diagram", json={"seed": A11, "depth": 2})
        data = response.json()
        assert data["levels"] == [1, 2, 3]
        assert data["matrices"][1] == [[1, 0], [1, 1], [0, 1]]
        assert '"levels":[1,2,3]' in data["export"]
        assert data["mode"] == "literal"

    def test_dot(self, client):
        response = client.post("/api/v1/bratteli/diagram", json={"seed": {"B": [[0]]}, "depth": 1, "format": "dot"})
        assert response.json()["export"].startswith("digraph")


class TestK0:
    def test_push(self, client):
        response = client.post("/api/v1/k0/push", json={
            "diagram": {"pascal_depth": 2},
            "element": {"level": 1, "vector": [0, 1]},
            "target_level": 2,
        })
        assert response.json() == {"level": 2, "vector": [0, 1, 1]}

    def test_equal_on_edge_list(self, client):
        diagram = {
            "levels": [2, 1],
            "edges": [{"from": [0, 0], "to": [1, 0], "mult": 1}, {"from": [0, 1], "to": [1, 0], "mult": 1}],
        }
        response = client.post("/api/v1/k0/equal", json={
            "diagram": diagram,
            "a": {"level": 0, "vector": [1, 0]},
            "b": {"level": 0, "vector": [0, 1]},
        })
        assert response.json()["status"] == "equal"

    @pytest.mark.parametrize("edge", [
        {"from": [0], "to": [1, 0], "mult": 1},
        {"from": [0, 0, 0], "to": [1, 0], "mult": 1},
        {"from": [0, 0], "to": [1, 0, 1], "mult": 1},
    ])
    def test_malformed_edge_endpoint_is_422(self, client, edge):
        response = client.post("/api/v1/k0/push", json={
            "diagram": {"levels": [1, 1], "edges": [edge]},
            "element": {"level": 0, "vector": [1]},
            "target_level": 1,
        })
        assert response.status_code == 422

    def test_duplicate_edges_add_up(self, client):
        edge = {"from": [0, 0], "to": [1, 0], "mult": 2}
        response = client.post("/api/v1/k0/push", json={
            "diagram": {"levels": [1, 1], "edges": [edge, edge]},
            "element": {"level": 0, "vector": [1]},
            "target_level": 1,
        })
        assert response.json() == {"level": 1, "vector": [4]}

    def test_positive(self, client):
        response = client.post("/api/v1/k0/positive", json={
            "diagram": {"matrix": [[1, 1], [1, 0]], "repetitions": 8},
            "element": {"level": 0, "vector": [-1, 0]},
        })
        assert response.json()["status"] == "not_positive"

    def test_trace(self, client):
        response = client.post("/api/v1/k0/trace", json={
            "diagram": {"matrix": [[2]], "repetitions": 5},
            "element": {"level": 3, "vector": [1]},
        })
        assert response.json()["value"] == pytest.approx(0.125)

    def test_trace_eventually_stationary(self, client):
        diagram = {
            "levels": [1, 2, 2, 2, 2],
            "edges": [{"from": [0, 0], "to": [1, 0], "mult": 1}, {"from": [0, 0], "to": [1, 1], "mult": 1}]
            + fibonacci_step(1) + fibonacci_step(2) + fibonacci_step(3),
        }
        response = client.post("/api/v1/k0/trace", json={"diagram": diagram, "element": {"level": 0, "vector": [1]}})
        assert response.status_code == 200
        data = response.json()
        assert len(data["weights"]) == 1
        assert data["value"] == pytest.approx((math.sqrt(5) - 1) / 2, rel=1e-12)

        wrong = client.post("/api/v1/k0/trace", json={"diagram": diagram, "element": {"level": 0, "vector": [1, 0]}})
        assert wrong.status_code == 400
        assert wrong.json()["code"] == "LevelOutOfRange"

    def test_trace_not_primitive(self, client):
        response = client.post("/api/v1/k0/trace", json={"diagram": {"matrix": [[1, 0], [0, 1]]}})
        assert response.status_code == 400
        assert response.json()["code"] == "NotPrimitive"

    def test_supernatural(self, client):
        response = client.post("/api/v1/k0/supernatural", json={"block": [6], "rationals": ["5/36", "1/7"]})
        assert response.json() == {"exponents": {"2": "inf", "3": "inf"}, "contains": {"5/36": True, "1/7": False}}

    def test_gicar(self, client):
        response = client.post("/api/v1/k0/gicar", json={"coefficients": [-1, 2]})
        data = response.json()
        assert data["status"] == "not_positive"
        assert (data["point"], data["value"]) == ("1/4", "-1/2")


class TestAnnulus:
    def test_moduli(self, client):
        data = client.get("/api/v1/annulus/moduli", params={"t": 5}).json()
        assert data["x1"] == pytest.approx(2 * 5 ** 0.5)
        assert data["x2"] == pytest.approx(5 ** 0.5)

    def test_discriminant_negative(self, client):
        response = client.get("/api/v1/annulus/moduli", params={"t": 3.9})
        assert response.status_code == 400
        assert response.json()["code"] == "DiscriminantNegative"

    def test_admissible(self, client):
        data = client.get("/api/v1/annulus/admissible", params={"n_max": 4}).json()
        assert data["continuous_from"] == 4
        assert [m["n"] for m in data["discrete"]] == [3, 4]

    def test_casimir(self, client):
        data = client.get("/api/v1/annulus/casimir").json()
        assert parse(data["casimir"], nvars=2) == casimir()
        assert data["element"] == "1"

    def test_chebyshev_needs_n(self, client):
        response = client.get("/api/v1/annulus/casimir", params={"family": "chebyshev", "n": 2})
        assert response.json()["code"] == "InvalidParameters"


class TestJones:
    def test_trefoil(self, client):
        data = client.post("/api/v1/jones/polynomial", json={"strands": 2, "braid": "1 1 1"}).json()
        assert data["polynomial"] == "-t^-4 + t^-3 + t^-1"
        assert data["mirror"] == "t + t^3 - t^4"
        assert data["writhe"] == 3

    def test_relations(self, client):
        data = client.post("/api/v1/jones/relations", json={"n": 3, "t": "1"}).json()
        assert data["tau"] == "1/4"

    def test_wrong_tau(self, client):
        response = client.post("/api/v1/jones/relations", json={"n": 3, "t": "1", "tau": "1/3"})
        assert response.status_code == 400
        assert response.json()["code"] == "RelationViolated"

    def test_n_out_of_range(self, client):
        assert client.post("/api/v1/jones/relations", json={"n": 7, "t": "1"}).status_code == 422
