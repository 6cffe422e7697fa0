import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..entities.componentSequence import ComponentSequence
from ..entities.config import EncoderConfig, LossSchedule, TrainConfig
from ..entities.encoderParams import EncoderParams, LossReport
from ..exceptions import EmptyTrainingSetError
from ..tokenizer.service import plan_mask
from .service import backward, evaluate, init_params, make_batch

# Validation masks use epoch slot 0; training epochs start at 1.
VALIDATION_EPOCH = 0


@dataclass(frozen=True)
class LabeledSequences:
    sequences: Sequence[ComponentSequence]
    labels: Sequence[int]

    def __len__(self) -> int:
        return len(self.sequences)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    mae_loss: float
    ce_loss: float
    total: float
    val_loss: float
    lambda1: float
    lambda2: float


@dataclass
class TrainingLog:
    records: list[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_val_loss: float = math.inf
    stopped_early: bool = False


class Adam:
    def __init__(self, params: EncoderParams, cfg: TrainConfig):
        self.cfg = cfg
        self.m = params.zeros_like()
        self.v = params.zeros_like()
        self.t = 0

    def step(self, params: EncoderParams, grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        b1, b2 = self.cfg.beta1, self.cfg.beta2
        for name, g in grads.items():
            self.m[name] = b1 * self.m[name] + (1 - b1) * g
            self.v[name] = b2 * self.v[name] + (1 - b2) * g * g
            m_hat = self.m[name] / (1 - b1**self.t)
            v_hat = self.v[name] / (1 - b2**self.t)
            params.weights[name] -= self.cfg.learning_rate * m_hat / (np.sqrt(v_hat) + self.cfg.epsilon)


def _plans(data: LabeledSequences, indices, ratio: float, seed: int, epoch: int, lambda1: float):
    if lambda1 <= 0:
        return None
    return [plan_mask(data.sequences[i].K, ratio, [seed, epoch, int(i)]) for i in indices]


def validation_loss(
    params: EncoderParams, data: LabeledSequences, lambda1: float, lambda2: float, mask_ratio: float, seed: int
) -> LossReport:
    indices = range(len(data))
    batch = make_batch(data.sequences, data.labels, _plans(data, indices, mask_ratio, seed, VALIDATION_EPOCH, lambda1))
    return evaluate(params, batch, lambda1, lambda2)


def train(
    train_set: LabeledSequences,
    val_set: LabeledSequences,
    n_classes: int,
    encoder_cfg: EncoderConfig,
    cfg: TrainConfig,
    schedule: LossSchedule,
    mask_ratio: float = 0.15,
) -> tuple[EncoderParams, TrainingLog]:
    """Masked auto-encoding plus classification with the phased loss weights.

    Best-parameter tracking restarts at the phase boundary because losses under
    different weights are not comparable; early stopping only applies in the
    final phase, and the returned parameters are the best ones seen there.
    """
    if len(train_set) == 0:
        raise EmptyTrainingSetError()
    if len(val_set) == 0:
        val_set = train_set
        logging.warning("Validation set is empty, monitoring the training set instead")

    params = init_params(train_set.sequences[0].L, n_classes, encoder_cfg, cfg.seed)
    optimizer = Adam(params, cfg)
    log = TrainingLog()
    final_phase = schedule.phase(cfg.max_epochs)
    best_params = params.copy()
    phase = None
    wait = 0

    for epoch in range(1, cfg.max_epochs + 1):
        lambda1, lambda2 = schedule.weights(epoch)
        if schedule.phase(epoch) != phase:
            phase = schedule.phase(epoch)
            log.best_val_loss, wait = math.inf, 0

        order = np.random.default_rng([cfg.seed, epoch]).permutation(len(train_set))
        sums = np.zeros(3)
        for start in range(0, len(order), cfg.batch_size):
            indices = order[start : start + cfg.batch_size]
            batch = make_batch(
                [train_set.sequences[i] for i in indices],
                [train_set.labels[i] for i in indices],
                _plans(train_set, indices, mask_ratio, cfg.seed, epoch, lambda1),
            )
            report, grads = backward(params, batch, lambda1, lambda2, clip_norm=cfg.clip_norm, epoch=epoch)
            optimizer.step(params, grads)
            sums += len(indices) * np.array([report.mae_loss, report.ce_loss, report.total])

        mae, ce, total = sums / len(train_set)
        val = validation_loss(params, val_set, lambda1, lambda2, mask_ratio, cfg.seed)
        log.records.append(EpochRecord(epoch, mae, ce, total, val.total, lambda1, lambda2))
        logging.info(
            f"Epoch {epoch}: mae {mae:.6f} ce {ce:.6f} total {total:.6f} val {val.total:.6f} "
            f"lambda ({lambda1}, {lambda2})"
        )

        if val.total < log.best_val_loss:
            log.best_val_loss, log.best_epoch, wait = val.total, epoch, 0
            best_params = params.copy()
        else:
            wait += 1
        if phase == final_phase and wait >= cfg.patience:
            log.stopped_early = True
            logging.info(f"Stopping at epoch {epoch}, best validation loss {log.best_val_loss:.6f} at epoch {log.best_epoch}")
            break

    return best_params, log
