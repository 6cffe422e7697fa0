import logging
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from ..entities.componentSequence import ComponentSequence, MaskPlan
from ..entities.config import EncoderConfig
from ..entities.encoderParams import EncoderParams, LossReport
from ..entities.enums import CellType
from ..exceptions import DimensionMismatchError, LabelOutOfRangeError, NonFiniteGradientError
from ..tokenizer.service import apply_mask
from .cells import LSTMCell, RNNCell

CELLS = {CellType.LSTM: LSTMCell, CellType.RNN: RNNCell}


class Batch(NamedTuple):
    inputs: np.ndarray  # (K, B, L) tokens fed to the encoder, masked where planned
    targets: np.ndarray  # (K, B, L) unmasked tokens
    weights: np.ndarray  # (K, B, L) reconstruction weights, zero outside masked samples
    labels: np.ndarray  # (B,)


class ForwardPass(NamedTuple):
    features: np.ndarray  # (B, dense)
    positions: np.ndarray  # (K, B, F)
    logits: np.ndarray  # (B, C)
    reconstruction: np.ndarray  # (K, B, L)
    cache: dict


def init_params(input_size: int, n_classes: int, cfg: EncoderConfig, seed: int = 0) -> EncoderParams:
    params = EncoderParams(
        input_size=input_size,
        hidden_size=cfg.hidden_size,
        dense_size=cfg.dense_size,
        n_classes=n_classes,
        cell=CellType(cfg.cell),
        bidirectional=cfg.bidirectional,
    )
    rng = np.random.default_rng(seed)
    hidden = cfg.hidden_size
    for name, shape in params.expected_shapes().items():
        if name in ("Wf", "Wb"):
            W = rng.standard_normal(shape) / np.sqrt(input_size + hidden)
            W[0, :] = 0.0
            if params.cell == CellType.LSTM:
                W[0, hidden : 2 * hidden] = cfg.forget_bias
        elif name == "Wd":
            W = rng.standard_normal(shape) * np.sqrt(2.0 / shape[0])
        elif name.startswith("W"):
            W = rng.standard_normal(shape) / np.sqrt(shape[0])
        else:
            W = np.zeros(shape)
        params.weights[name] = W
    logging.info(f"Initialized encoder with {params.parameter_count} parameters")
    return params


def _check_length(params: EncoderParams, length: int) -> None:
    if length != params.input_size:
        raise DimensionMismatchError(params.input_size, length)


def stack_tokens(sequences: Sequence[ComponentSequence]) -> np.ndarray:
    """(K, B, L) time-major tensor; every sequence must share K and L."""
    first = sequences[0]
    for sequence in sequences:
        if sequence.K != first.K:
            raise DimensionMismatchError(first.K, sequence.K, "component count")
        if sequence.L != first.L:
            raise DimensionMismatchError(first.L, sequence.L)
    return np.stack([sequence.tokens for sequence in sequences], axis=1)


def reconstruction_weights(sequences: Sequence[ComponentSequence], plans: Sequence[MaskPlan] | None) -> np.ndarray:
    K, L = sequences[0].K, sequences[0].L
    weights = np.zeros((K, len(sequences), L))
    if plans is None:
        return weights
    for item, (sequence, plan) in enumerate(zip(sequences, plans)):
        for m in plan.masked_indices:
            length = sequence.true_lengths[m]
            weights[m, item, :length] = 1.0 / (len(plan) * length * len(sequences))
    return weights


def make_batch(
    sequences: Sequence[ComponentSequence],
    labels: Sequence[int] | None = None,
    plans: Sequence[MaskPlan] | None = None,
) -> Batch:
    targets = stack_tokens(sequences)
    if plans is not None:
        inputs = stack_tokens([apply_mask(s, p) for s, p in zip(sequences, plans)])
    else:
        inputs = targets
    labels = np.zeros(len(sequences), dtype=np.int64) if labels is None else np.asarray(labels, dtype=np.int64)
    return Batch(inputs=inputs, targets=targets, weights=reconstruction_weights(sequences, plans), labels=labels)


def forward(params: EncoderParams, X: np.ndarray) -> ForwardPass:
    K, B, L = X.shape
    _check_length(params, L)
    cell = CELLS[params.cell]
    H = params.hidden_size

    Hf, cache_f = cell.forward(X, params["Wf"])
    cache = {"X": X, "cache_f": cache_f}
    if params.bidirectional:
        Hb_reversed, cache_b = cell.forward(X[::-1], params["Wb"])
        Hb = Hb_reversed[::-1]
        positions = np.concatenate((Hf, Hb), axis=-1)
        z = np.concatenate((Hf[K - 1], Hb[0]), axis=-1)
        cache["cache_b"] = cache_b
    else:
        positions = Hf
        z = Hf[K - 1]

    a = z.dot(params["Wd"]) + params["bd"]
    features = np.maximum(a, 0.0)
    logits = features.dot(params["Wc"]) + params["bc"]
    reconstruction = positions.dot(params["Wr"]) + params["br"]
    cache.update(z=z, a=a, hidden=H)
    return ForwardPass(features, positions, logits, reconstruction, cache)


def forward_features(params: EncoderParams, sequence: ComponentSequence) -> tuple[np.ndarray, np.ndarray]:
    """Dense-layer feature and per-position hidden states of one sequence."""
    result = forward(params, sequence.tokens[:, None, :])
    return result.features[0], result.positions[:, 0, :]


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def _cross_entropy(logits: np.ndarray, labels: np.ndarray) -> float:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=-1))
    return float(np.mean(log_norm - shifted[np.arange(len(labels)), labels]))


def _check_labels(labels: np.ndarray, n_classes: int) -> None:
    for label in labels:
        if not 0 <= int(label) < n_classes:
            raise LabelOutOfRangeError(int(label), n_classes)


def ce_loss(params: EncoderParams, feature: np.ndarray, label: int) -> float:
    _check_labels(np.array([label]), params.n_classes)
    logits = np.atleast_2d(feature).dot(params["Wc"]) + params["bc"]
    return _cross_entropy(logits, np.array([label]))


def _mae(result: ForwardPass, batch: Batch) -> float:
    return float(np.sum(batch.weights * (result.reconstruction - batch.targets) ** 2))


def mae_loss(
    params: EncoderParams, masked: ComponentSequence, targets: np.ndarray, plan: MaskPlan
) -> float:
    """Mean over masked components of the squared error over their unpadded samples."""
    result = forward(params, masked.tokens[:, None, :])
    errors = []
    for m, target in zip(plan.masked_indices, np.atleast_2d(targets)):
        length = masked.true_lengths[m]
        errors.append(np.mean((result.reconstruction[m, 0, :length] - target[:length]) ** 2))
    return float(np.mean(errors))


def evaluate(params: EncoderParams, batch: Batch, lambda1: float, lambda2: float) -> LossReport:
    _check_labels(batch.labels, params.n_classes)
    result = forward(params, batch.inputs)
    mae = _mae(result, batch)
    ce = _cross_entropy(result.logits, batch.labels)
    return LossReport(mae_loss=mae, ce_loss=ce, total=lambda1 * mae + lambda2 * ce, lambda1=lambda1, lambda2=lambda2)


def global_norm(grads: dict[str, np.ndarray]) -> float:
    return float(np.sqrt(sum(np.sum(g * g) for g in grads.values())))


def clip_gradients(grads: dict[str, np.ndarray], max_norm: float) -> tuple[dict[str, np.ndarray], float]:
    norm = global_norm(grads)
    if norm > max_norm:
        scale = max_norm / norm
        grads = {name: g * scale for name, g in grads.items()}
    return grads, norm


def backward(
    params: EncoderParams,
    batch: Batch,
    lambda1: float,
    lambda2: float,
    clip_norm: float | None = None,
    epoch: int = 0,
) -> tuple[LossReport, dict[str, np.ndarray]]:
    """Loss report and exact gradients of lambda1 * mae + lambda2 * ce for every parameter."""
    _check_labels(batch.labels, params.n_classes)
    result = forward(params, batch.inputs)
    cache = result.cache
    K, B, _ = batch.inputs.shape
    H = params.hidden_size
    mae = _mae(result, batch)
    ce = _cross_entropy(result.logits, batch.labels)

    dlogits = softmax(result.logits)
    dlogits[np.arange(B), batch.labels] -= 1.0
    dlogits *= lambda2 / B
    grads = {
        "Wc": result.features.T.dot(dlogits),
        "bc": dlogits.sum(axis=0),
    }
    da = dlogits.dot(params["Wc"].T) * (cache["a"] > 0)
    grads["Wd"] = cache["z"].T.dot(da)
    grads["bd"] = da.sum(axis=0)
    dz = da.dot(params["Wd"].T)

    dR = lambda1 * 2.0 * batch.weights * (result.reconstruction - batch.targets)
    grads["Wr"] = np.tensordot(result.positions, dR, axes=([0, 1], [0, 1]))
    grads["br"] = dR.sum(axis=(0, 1))
    dP = dR.dot(params["Wr"].T)

    cell = CELLS[params.cell]
    dHf = dP[:, :, :H].copy()
    dHf[K - 1] += dz[:, :H]
    grads["Wf"] = cell.backward(dHf, cache["cache_f"])
    if params.bidirectional:
        dHb = dP[:, :, H:].copy()
        dHb[0] += dz[:, H:]
        grads["Wb"] = cell.backward(dHb[::-1], cache["cache_b"])

    for name in params.names:
        if not np.isfinite(grads[name]).all():
            logging.error(f"Non-finite gradient for {name} at epoch {epoch}")
            raise NonFiniteGradientError(epoch, name)

    if clip_norm is not None:
        grads, norm = clip_gradients(grads, clip_norm)
        if norm > clip_norm:
            logging.debug(f"Clipped gradient norm {norm:.4f} to {clip_norm} at epoch {epoch}")

    report = LossReport(mae_loss=mae, ce_loss=ce, total=lambda1 * mae + lambda2 * ce, lambda1=lambda1, lambda2=lambda2)
    return report, {name: grads[name] for name in params.names}


def classify(params: EncoderParams, sequence: ComponentSequence) -> tuple[int, np.ndarray]:
    """Predicted class (lowest index on ties) and the class-probability vector."""
    _check_length(params, sequence.L)
    probabilities = softmax(forward(params, sequence.tokens[:, None, :]).logits)[0]
    return int(np.argmax(probabilities)), probabilities


def predict(params: EncoderParams, sequences: Sequence[ComponentSequence], batch_size: int = 64) -> np.ndarray:
    predictions = []
    for start in range(0, len(sequences), batch_size):
        logits = forward(params, stack_tokens(sequences[start : start + batch_size])).logits
        predictions.append(np.argmax(logits, axis=1))
    return np.concatenate(predictions) if predictions else np.zeros(0, dtype=np.int64)


def extract_features(params: EncoderParams, sequences: Sequence[ComponentSequence], batch_size: int = 64) -> np.ndarray:
    features = []
    for start in range(0, len(sequences), batch_size):
        features.append(forward(params, stack_tokens(sequences[start : start + batch_size])).features)
    return np.concatenate(features) if features else np.zeros((0, params.dense_size))


def nearest_centroid_probe(
    train_features: np.ndarray, train_labels: Sequence[int], test_features: np.ndarray
) -> np.ndarray:
    """Assign each test feature to the class with the closest mean training feature."""
    train_labels = np.asarray(train_labels)
    classes = np.unique(train_labels)
    centroids = np.stack([train_features[train_labels == c].mean(axis=0) for c in classes])
    distances = ((test_features[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=-1)
    return classes[np.argmin(distances, axis=1)]
