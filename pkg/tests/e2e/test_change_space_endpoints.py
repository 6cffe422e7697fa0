from fastapi.testclient import TestClient
import numpy as np


def two_level_values(seed: int = 0) -> list[float]:
    rng = np.random.default_rng(seed)
    return np.concatenate([rng.normal(0, 1, 200), rng.normal(3, 1, 200)]).tolist()


def test_curve(client: TestClient):
    values = np.random.default_rng(1).standard_normal(100).tolist()
    response = client.post("/change-space/curve", json={"values": values})
    assert response.status_code == 200
    curve = response.json()
    assert len(curve["scores"]) == 100
    assert curve["support"] == [10, 90]
    assert max(curve["scale_count"]) == 5


def test_curve_too_short_for_every_scale(client: TestClient):
    response = client.post("/change-space/curve", json={"values": [0.0] * 15})
    assert response.status_code == 422


def test_segment_with_fixed_count(client: TestClient):
    response = client.post(
        "/change-space/segment",
        json={"values": two_level_values(), "k": 2, "config": {"scale_max": 50, "penalty_weight": 0.0, "saliency_window": 150}},
    )
    assert response.status_code == 200
    result = response.json()
    assert len(result["cuts"]) == 1
    assert abs(result["cuts"][0] - 200) <= 10
    assert result["segments"][0][0] == 0 and result["segments"][-1][1] == 400


def test_segment_rejects_non_finite_values(client: TestClient):
    response = client.post("/change-space/segment", content=b'{"values": [1.0, NaN, 2.0], "k": 2}',
                           headers={"Content-Type": "application/json"})
    assert response.status_code == 422


def test_segment_file_upload(client: TestClient):
    lines = ["\t".join(["1", *(repr(v) for v in two_level_values(seed))]) for seed in range(2)]
    response = client.post(
        "/change-space/segment-file",
        files={"file": ("two.tsv", "\n".join(lines).encode(), "text/tab-separated-values")},
        data={"k": "2"},
    )
    assert response.status_code == 200
    result = response.json()
    assert result["label_map"] == {"1": 0}
    assert [len(series["cuts"]) for series in result["series"]] == [1, 1]


def test_segment_file_parse_error(client: TestClient):
    response = client.post("/change-space/segment-file", files={"file": ("bad.tsv", b"x\t1.0\n", "text/plain")})
    assert response.status_code == 422
    assert "Line 1, column 1" in response.json()["detail"]
