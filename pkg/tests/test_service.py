"""HTTP service endpoints: payload shapes, numeric agreement, error mapping."""

from __future__ import annotations

import math

import pytest
from fastapi.testclient import TestClient

import qwentropy as qw
from qwentropy.service import create_app

HADAMARD = {"name": "hadamard"}
SYMMETRIC = {"name": "symmetric"}
TWO_STATE_ENSEMBLE = [
    {"alpha": "1", "beta": "0", "weight": 0.5},
    {"alpha": "0", "beta": "1", "weight": 0.5},
]


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


class TestHealth:
    def test_health_reports_version(self, client):
        resp = client.get("/v1/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["version"] == qw.__version__


class TestSimulate:
    def test_two_step_hadamard(self, client):
        resp = client.post(
            "/v1/simulate",
            json={"coin": HADAMARD, "state": {"name": "left"}, "schedule": [2]},
        )
        assert resp.status_code == 200
        dist = resp.json()["distributions"][0]
        assert dist["n"] == 2
        assert dist["support"] == [-2, 0, 2]
        assert dist["probs"] == [0.25, 0.5, 0.25]

    def test_methods_agree(self, client):
        payloads = []
        for method in ("evolve", "closedform"):
            resp = client.post(
                "/v1/simulate",
                json={
                    "coin": HADAMARD,
                    "state": SYMMETRIC,
                    "schedule": [50],
                    "method": method,
                },
            )
            assert resp.status_code == 200
            payloads.append(resp.json()["distributions"][0])
        assert payloads[0]["support"] == payloads[1]["support"]
        for p, q in zip(payloads[0]["probs"], payloads[1]["probs"]):
            assert abs(p - q) < 1e-9

    def test_multiple_step_counts_in_order(self, client):
        resp = client.post(
            "/v1/simulate",
            json={"coin": HADAMARD, "state": {"name": "left"}, "schedule": [1, 3, 2]},
        )
        assert [d["n"] for d in resp.json()["distributions"]] == [1, 3, 2]

    def test_explicit_coin_entries(self, client):
        resp = client.post(
            "/v1/simulate",
            json={
                "coin": {"a": "0.6", "b": "0.8j", "delta": "1"},
                "state": {"alpha": "1", "beta": "0"},
                "schedule": [4],
            },
        )
        assert resp.status_code == 200
        assert abs(sum(resp.json()["distributions"][0]["probs"]) - 1.0) < 1e-12

    def test_unknown_coin_name_maps_to_422(self, client):
        resp = client.post(
            "/v1/simulate",
            json={"coin": {"name": "fourier"}, "state": SYMMETRIC, "schedule": [2]},
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "UnknownName"

    def test_random_state_requires_seed(self, client):
        resp = client.post(
            "/v1/simulate",
            json={"coin": HADAMARD, "state": {"name": "random"}, "schedule": [2]},
        )
        assert resp.status_code == 422
        assert "seed" in resp.json()["detail"]

    def test_seeded_random_state_is_reproducible(self, client):
        results = [
            client.post(
                "/v1/simulate",
                json={
                    "coin": HADAMARD,
                    "state": {"name": "random"},
                    "schedule": [8],
                    "seed": 11,
                },
            ).json()
            for _ in range(2)
        ]
        assert results[0] == results[1]


class TestEntropy:
    def test_two_step_order_two(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "state": {"name": "left"},
                "orders": [2.0],
                "schedule": [2],
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["variants"] == []
        row = body["rows"][0]
        assert row["n"] == 2 and row["alpha"] == 2.0
        assert row["tsallis"] == pytest.approx(0.625, abs=1e-12)
        assert row["renyi"] == pytest.approx(math.log2(8 / 3), abs=1e-12)
        assert row["conditional"] == {}

    def test_excluded_order_maps_to_422(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [1.0],
                "schedule": [4],
            },
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "BadOrder"
        assert "1.0" in resp.json()["detail"]

    def test_singleton_ensemble_conditional_equals_unconditional(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "ensemble": [{"alpha": "0.70710678118654752", "beta": "0.70710678118654752j", "weight": 1.0}],
                "orders": [0.5],
                "schedule": [16],
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["variants"] == list(qw.VARIANTS)
        row = body["rows"][0]
        for variant in qw.VARIANTS:
            assert row["conditional"][variant] == pytest.approx(row["renyi"], abs=1e-9)

    def test_two_state_ensemble_averaged_variant(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "ensemble": TWO_STATE_ENSEMBLE,
                "orders": [0.5],
                "schedule": [10],
                "variants": ["C"],
            },
        )
        assert resp.status_code == 200
        row = resp.json()["rows"][0]
        h = qw.named_coin("hadamard")
        expected = 0.5 * qw.renyi(qw.run(h, qw.make_state(1, 0), 10), 0.5) + 0.5 * qw.renyi(
            qw.run(h, qw.make_state(0, 1), 10), 0.5
        )
        assert row["conditional"]["C"] == pytest.approx(expected, abs=1e-12)

    def test_state_and_ensemble_are_mutually_exclusive(self, client):
        for extra in (
            {"state": SYMMETRIC, "ensemble": TWO_STATE_ENSEMBLE},
            {},
        ):
            resp = client.post(
                "/v1/entropy",
                json={"coin": HADAMARD, "orders": [0.5], "schedule": [4], **extra},
            )
            assert resp.status_code == 422

    def test_variants_without_ensemble_rejected(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [0.5],
                "schedule": [4],
                "variants": ["C"],
            },
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "BadParameter"

    def test_unknown_variant_rejected(self, client):
        resp = client.post(
            "/v1/entropy",
            json={
                "coin": HADAMARD,
                "ensemble": TWO_STATE_ENSEMBLE,
                "orders": [0.5],
                "schedule": [4],
                "variants": ["Z"],
            },
        )
        assert resp.status_code == 422


class TestLimit:
    def test_order_zero_constants(self, client):
        resp = client.post(
            "/v1/limit",
            json={"coin": HADAMARD, "state": SYMMETRIC, "orders": [0.0]},
        )
        assert resp.status_code == 200
        row = resp.json()["rows"][0]
        assert row["integral"] == pytest.approx(math.sqrt(2), abs=1e-10)
        assert row["renyi_limit"] == pytest.approx(0.5, abs=1e-12)
        assert row["tsallis_limit"] == pytest.approx(math.sqrt(2) - 1, abs=1e-12)

    def test_golden_constants(self, client, golden):
        resp = client.post(
            "/v1/limit",
            json={"coin": HADAMARD, "state": SYMMETRIC, "orders": [0.5, 1.5]},
        )
        rows = {row["alpha"]: row for row in resp.json()["rows"]}
        for alpha_text, entry in golden["limits"]["sym"].items():
            row = rows[float(alpha_text)]
            assert row["integral"] == pytest.approx(entry["integral"], abs=1e-9)
            assert row["renyi_limit"] == pytest.approx(entry["renyi"], abs=1e-9)
            assert row["tsallis_limit"] == pytest.approx(entry["tsallis"], abs=1e-9)

    def test_divergent_order_maps_to_400(self, client):
        resp = client.post(
            "/v1/limit",
            json={"coin": HADAMARD, "state": SYMMETRIC, "orders": [2.0]},
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "DivergentIntegral"

    def test_ensemble_mixture_and_conditionals(self, client):
        resp = client.post(
            "/v1/limit",
            json={"coin": HADAMARD, "ensemble": TWO_STATE_ENSEMBLE, "orders": [0.5]},
        )
        assert resp.status_code == 200
        row = resp.json()["rows"][0]
        h = qw.named_coin("hadamard")
        prior = qw.make_prior([(qw.make_state(1, 0), 0.5), (qw.make_state(0, 1), 0.5)])
        for variant in qw.VARIANTS:
            expected = qw.conditional_renyi_limit(variant, h, prior, 0.5)
            assert row["conditional"][variant] == pytest.approx(expected, abs=1e-12)
        md = qw.mixture_density(h, prior)
        assert row["renyi_limit"] == pytest.approx(qw.renyi_limit(md, 0.5), abs=1e-12)


class TestConverge:
    def test_report_payload_shape(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [0.5],
                "schedule": [16, 32, 64],
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["threshold"] == qw.DEFAULT_THRESHOLD
        assert "no rate of convergence" in body["note"]
        labels = [s["label"] for s in body["series"]]
        assert labels == ["renyi[alpha=0.5]", "tsallis[alpha=0.5]"]
        assert [v["label"] for v in body["verdicts"]] == labels
        for series in body["series"]:
            assert series["schedule"] == [16, 32, 64]
            assert len(series["finite_values"]) == 3
            assert series["smoothed_values"] is not None

    def test_order_zero_is_informational(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [0.0],
                "schedule": [16, 32],
                "statistics": ["renyi"],
            },
        )
        assert resp.status_code == 200
        assert resp.json()["verdicts"][0]["verdict"] == "INFORMATIONAL"

    def test_ensemble_runs_conditional_series(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "ensemble": TWO_STATE_ENSEMBLE,
                "orders": [0.5],
                "schedule": [16, 32],
                "variants": ["C", "RW"],
            },
        )
        assert resp.status_code == 200
        labels = [s["label"] for s in resp.json()["series"]]
        assert labels == ["cond-C[alpha=0.5]", "cond-RW[alpha=0.5]"]

    def test_parity_average_can_be_disabled(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [0.5],
                "schedule": [16, 32],
                "statistics": ["renyi"],
                "parity_average": False,
            },
        )
        assert resp.json()["series"][0]["smoothed_values"] is None

    def test_missing_schedule_uses_default(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [1.5],
                "schedule": [128, 256],
                "statistics": ["tsallis"],
            },
        )
        assert resp.json()["series"][0]["label"] == "tsallis[alpha=1.5]"

    def test_bad_statistic_rejected_by_validation(self, client):
        resp = client.post(
            "/v1/converge",
            json={
                "coin": HADAMARD,
                "state": SYMMETRIC,
                "orders": [0.5],
                "schedule": [16, 32],
                "statistics": ["entropy"],
            },
        )
        assert resp.status_code == 422
