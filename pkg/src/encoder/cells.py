"""Batched recurrent cells.

Inputs are time-major, X of shape (n, b, input_size). Each weight matrix
stacks the bias row first, then the input rows, then the recurrent rows, so
one dot product of [1, x_t, h_{t-1}] against W gives every gate at once.
"""

import numpy as np


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _stack_inputs(X, t, prev_h, width):
    n, b, input_size = X.shape
    Hin = np.empty((b, width))
    Hin[:, 0] = 1.0
    Hin[:, 1 : input_size + 1] = X[t]
    Hin[:, input_size + 1 :] = prev_h
    return Hin


class LSTMCell:
    gate_count = 4

    @staticmethod
    def forward(X, W):
        n, b, input_size = X.shape
        d = W.shape[1] // 4
        Hin = np.zeros((n, b, W.shape[0]))
        Hout = np.zeros((n, b, d))
        IFOG = np.zeros((n, b, 4 * d))
        C = np.zeros((n, b, d))
        Ct = np.zeros((n, b, d))
        for t in range(n):
            prev_h = Hout[t - 1] if t > 0 else np.zeros((b, d))
            Hin[t] = _stack_inputs(X, t, prev_h, W.shape[0])
            z = Hin[t].dot(W)
            IFOG[t, :, : 3 * d] = sigmoid(z[:, : 3 * d])
            IFOG[t, :, 3 * d :] = np.tanh(z[:, 3 * d :])
            I, F, O, G = np.split(IFOG[t], 4, axis=-1)
            prev_c = C[t - 1] if t > 0 else 0.0
            C[t] = I * G + F * prev_c
            Ct[t] = np.tanh(C[t])
            Hout[t] = O * Ct[t]
        cache = {"W": W, "Hin": Hin, "IFOG": IFOG, "C": C, "Ct": Ct}
        return Hout, cache

    @staticmethod
    def backward(dHout, cache):
        """Gradient of W given dL/dH at every position."""
        W, Hin, IFOG, C, Ct = cache["W"], cache["Hin"], cache["IFOG"], cache["C"], cache["Ct"]
        n, b, d = Ct.shape
        input_size = W.shape[0] - d - 1
        dH = dHout.copy()
        dC = np.zeros_like(C)
        dW = np.zeros_like(W)
        for t in reversed(range(n)):
            I, F, O, G = np.split(IFOG[t], 4, axis=-1)
            dO = Ct[t] * dH[t]
            dC[t] += (1.0 - Ct[t] ** 2) * (O * dH[t])
            if t > 0:
                dF = C[t - 1] * dC[t]
                dC[t - 1] += F * dC[t]
            else:
                dF = np.zeros_like(dC[t])
            dI = G * dC[t]
            dG = I * dC[t]
            dz = np.concatenate(
                (dI * I * (1.0 - I), dF * F * (1.0 - F), dO * O * (1.0 - O), dG * (1.0 - G**2)), axis=-1
            )
            dW += Hin[t].T.dot(dz)
            if t > 0:
                dH[t - 1] += dz.dot(W.T)[:, input_size + 1 :]
        return dW


class RNNCell:
    gate_count = 1

    @staticmethod
    def forward(X, W):
        n, b, input_size = X.shape
        d = W.shape[1]
        Hin = np.zeros((n, b, W.shape[0]))
        Hout = np.zeros((n, b, d))
        for t in range(n):
            prev_h = Hout[t - 1] if t > 0 else np.zeros((b, d))
            Hin[t] = _stack_inputs(X, t, prev_h, W.shape[0])
            Hout[t] = np.tanh(Hin[t].dot(W))
        return Hout, {"W": W, "Hin": Hin, "Hout": Hout}

    @staticmethod
    def backward(dHout, cache):
        W, Hin, Hout = cache["W"], cache["Hin"], cache["Hout"]
        n, b, d = Hout.shape
        input_size = W.shape[0] - d - 1
        dH = dHout.copy()
        dW = np.zeros_like(W)
        for t in reversed(range(n)):
            dz = (1.0 - Hout[t] ** 2) * dH[t]
            dW += Hin[t].T.dot(dz)
            if t > 0:
                dH[t - 1] += dz.dot(W.T)[:, input_size + 1 :]
        return dW
