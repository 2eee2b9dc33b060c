"""
connecte.training.adagrad

Per-coordinate Adagrad applied to individual embedding rows
"""

import numpy as np


def adagrad_update(param_row, accum_row, grad, alpha, epsilon):
    """
    In place:
        accum += grad ** 2
        param -= alpha * grad / (sqrt(accum) + epsilon)

    ``param_row`` and ``accum_row`` must be writable views into the parameter and accumulator
    matrices (a row, or a whole matrix for M).
    """
    accum_row += grad * grad
    param_row -= alpha * grad / (np.sqrt(accum_row) + epsilon)


class AdagradState:
    """
    Accumulated squared gradients, one zero-initialized matrix per parameter group

    Accumulators only ever grow.
    """

    def __init__(self, params, epsilon=1e-8):
        self.epsilon = epsilon
        self.accumulators = {group: np.zeros_like(m) for group, m in params.groups().items()}

    def __getitem__(self, group):
        return self.accumulators[group]

    def apply(self, params, group, row, grad, alpha):
        """Update ``row`` of ``group`` (the whole matrix when row is None)"""
        matrix, accum = getattr(params, group), self.accumulators[group]
        if row is None:
            adagrad_update(matrix, accum, grad, alpha, self.epsilon)
        else:
            adagrad_update(matrix[row], accum[row], grad, alpha, self.epsilon)
