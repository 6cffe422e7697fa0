import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..entities.config import ChangeSpaceConfig, LossSchedule, TrainConfig
from ..entities.encoderParams import EncoderParams
from ..entities.enums import CellType, Normalization, SegmentationMode
from ..exceptions import CheckpointError

FORMAT_VERSION = 1


@dataclass
class Checkpoint:
    """Trained encoder plus everything needed to tokenize new series the same way."""

    params: EncoderParams
    train_config: TrainConfig
    schedule: LossSchedule
    change_space: ChangeSpaceConfig
    segment_count: int
    padded_length: int
    label_map: dict[int, int] = field(default_factory=dict)
    normalize: Normalization = Normalization.ZSCORE
    segmentation: SegmentationMode = SegmentationMode.CHANGE_SPACE

    @property
    def seed(self) -> int:
        return self.train_config.seed

    def raw_label(self, label: int) -> int:
        inverse = {value: key for key, value in self.label_map.items()}
        return inverse.get(label, label)


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _payload(checkpoint: Checkpoint) -> dict:
    params = checkpoint.params
    return {
        "format_version": FORMAT_VERSION,
        "architecture": {
            "input_size": params.input_size,
            "hidden_size": params.hidden_size,
            "dense_size": params.dense_size,
            "n_classes": params.n_classes,
            "cell": params.cell.value,
            "bidirectional": params.bidirectional,
        },
        "parameters": {
            name: {"shape": list(array.shape), "values": [float(v) for v in array.ravel(order="C")]}
            for name, array in params.weights.items()
        },
        "train_config": checkpoint.train_config.model_dump(mode="json"),
        "schedule": checkpoint.schedule.model_dump(mode="json"),
        "change_space": checkpoint.change_space.model_dump(mode="json"),
        "seed": checkpoint.seed,
        "segment_count": checkpoint.segment_count,
        "padded_length": checkpoint.padded_length,
        "label_map": sorted([int(raw), int(label)] for raw, label in checkpoint.label_map.items()),
        "normalize": Normalization(checkpoint.normalize).value,
        "segmentation": SegmentationMode(checkpoint.segmentation).value,
    }


def dumps_checkpoint(checkpoint: Checkpoint) -> str:
    payload = _payload(checkpoint)
    checksum = hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()
    return _canonical({"checksum": checksum, "payload": payload}) + "\n"


def save_checkpoint(checkpoint: Checkpoint, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps_checkpoint(checkpoint))
    logging.info(f"Saved checkpoint with {checkpoint.params.parameter_count} parameters to {path}")
    return path


def loads_checkpoint(text: str, source: str = "<string>") -> Checkpoint:
    try:
        document = json.loads(text)
        payload, checksum = document["payload"], document["checksum"]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise CheckpointError(source, f"malformed container ({e})")

    if hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest() != checksum:
        logging.error(f"Checksum mismatch in checkpoint {source}")
        raise CheckpointError(source, "checksum mismatch")
    if payload.get("format_version") != FORMAT_VERSION:
        raise CheckpointError(source, f"unsupported format version {payload.get('format_version')}")

    try:
        arch = payload["architecture"]
        params = EncoderParams(
            input_size=arch["input_size"],
            hidden_size=arch["hidden_size"],
            dense_size=arch["dense_size"],
            n_classes=arch["n_classes"],
            cell=CellType(arch["cell"]),
            bidirectional=arch["bidirectional"],
        )
        expected = params.expected_shapes()
        for name, entry in payload["parameters"].items():
            shape = tuple(entry["shape"])
            if expected.get(name) != shape:
                raise CheckpointError(source, f"parameter '{name}' has shape {shape}, expected {expected.get(name)}")
            params.weights[name] = np.array(entry["values"], dtype=np.float64).reshape(shape)
        missing = set(expected) - set(params.weights)
        if missing:
            raise CheckpointError(source, f"missing parameters {sorted(missing)}")

        return Checkpoint(
            params=params,
            train_config=TrainConfig(**payload["train_config"]),
            schedule=LossSchedule(**payload["schedule"]),
            change_space=ChangeSpaceConfig(**payload["change_space"]),
            segment_count=payload["segment_count"],
            padded_length=payload["padded_length"],
            label_map={raw: label for raw, label in payload["label_map"]},
            normalize=Normalization(payload["normalize"]),
            segmentation=SegmentationMode(payload["segmentation"]),
        )
    except CheckpointError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(source, f"invalid field ({e})")


def load_checkpoint(path: str | Path) -> Checkpoint:
    path = Path(path)
    if not path.is_file():
        raise CheckpointError(path, "file not found")
    return loads_checkpoint(path.read_text(), str(path))
