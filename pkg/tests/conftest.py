from pathlib import Path

import numpy as np
import pytest

from src.config.core import load_config
from src.encoder.checkpoint import Checkpoint
from src.encoder.service import init_params
from src.entities.config import ChangeSpaceConfig, EncoderConfig, LossSchedule, TrainConfig
from src.entities.enums import SegmentationMode
from src.entities.timeSeries import TimeSeries
from src.rate_limiter import limiter
from src.synthetic.models import SegmentSpec, SyntheticSpec

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture(scope="session")
def synthetic_config():
    return load_config(CONFIG_DIR / "synthetic.cfg")


@pytest.fixture(scope="session")
def synthetic_change_space(synthetic_config) -> ChangeSpaceConfig:
    return synthetic_config.change_space


@pytest.fixture
def two_segment_spec():
    def make(seed: int = 0, jump: float = 3.0) -> SyntheticSpec:
        return SyntheticSpec(
            segments=[SegmentSpec(length=200, mean=0.0, std=1.0), SegmentSpec(length=200, mean=jump, std=1.0)],
            seed=seed,
        )

    return make


@pytest.fixture
def random_series():
    def make(length: int = 100, seed: int = 0, label: int | None = None) -> TimeSeries:
        rng = np.random.default_rng(seed)
        return TimeSeries(values=rng.standard_normal(length), label=label, id=f"random:{seed}")

    return make


@pytest.fixture
def tiny_checkpoint() -> Checkpoint:
    """Untrained two-class model that splits every series into two uniform halves."""
    params = init_params(4, 2, EncoderConfig(hidden_size=3, dense_size=4), seed=7)
    return Checkpoint(
        params=params,
        train_config=TrainConfig(max_epochs=2, patience=1),
        schedule=LossSchedule(),
        change_space=ChangeSpaceConfig(),
        segment_count=2,
        padded_length=4,
        label_map={3: 0, 7: 1},
        segmentation=SegmentationMode.UNIFORM,
    )


@pytest.fixture(scope="function")
def client(tiny_checkpoint):
    from src.main import app
    from src.encoder.controller import get_checkpoint

    # Disable rate limiting for tests
    limiter.reset()

    app.dependency_overrides[get_checkpoint] = lambda: tiny_checkpoint

    from fastapi.testclient import TestClient
    with TestClient(app) as test_client:
        yield test_client
    app.dependency_overrides.clear()
