"""Symmetric payoff tensors and the response matrices they induce.

A player's payoff against an opponent playing ``u`` is ``v . P(u) . v`` with
``P(u)[i, j] = sum_kl T[i, j, k, l] u[k] u[l]``. The same tensor serves both
players because the game is symmetric under exchanging them.

Entries are written with 1-based indices to match the usual (w, x, y, z)
labelling; storage is a dense 0-based ``(d, d, d, d)`` array.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .game import PayoffPair, PayoffTable, check_gamma
from .strategy import as_unit_vector


@dataclass(frozen=True, eq=False)
class PayoffTensor:
    values: np.ndarray
    table: PayoffTable
    gamma: float

    @property
    def dim(self):
        return self.values.shape[0]

    def nonzero_entries(self, tol=0.0):
        """Yield ``(i, j, k, l, value)`` with 1-based indices in lexicographic order."""
        for idx in zip(*np.nonzero(np.abs(self.values) > tol)):
            i, j, k, l = (int(n) + 1 for n in idx)
            yield i, j, k, l, float(self.values[idx])


def _full_representatives(table, gamma):
    r, p, t, s = table.as_tuple()
    eps = math.sin(gamma) ** 2
    sg = math.sin(gamma)
    return {
        (1, 1, 1, 1): r, (4, 4, 4, 4): r,
        (1, 1, 3, 3): s, (4, 4, 2, 2): s,
        (2, 2, 2, 2): p, (3, 3, 3, 3): p,
        (2, 2, 4, 4): t, (3, 3, 1, 1): t,
        (1, 1, 2, 2): s + (t - s) * eps, (4, 4, 3, 3): s + (t - s) * eps,
        (1, 1, 4, 4): r + (p - r) * eps, (4, 4, 1, 1): r + (p - r) * eps,
        (2, 2, 1, 1): t + (s - t) * eps, (3, 3, 4, 4): t + (s - t) * eps,
        (2, 2, 3, 3): p + (r - p) * eps, (3, 3, 2, 2): p + (r - p) * eps,
        (1, 2, 1, 3): 0.5 * (s - r) * sg, (3, 4, 2, 4): -0.5 * (s - r) * sg,
        (1, 2, 2, 4): 0.5 * (t - p) * sg, (3, 4, 1, 3): -0.5 * (t - p) * sg,
        (1, 3, 1, 2): 0.5 * (t - r) * sg, (2, 4, 3, 4): -0.5 * (t - r) * sg,
        (1, 3, 3, 4): 0.5 * (p - s) * sg, (2, 4, 1, 2): -0.5 * (p - s) * sg,
        (1, 4, 1, 4): 0.5 * (p - r) * eps, (2, 3, 2, 3): -0.5 * (p - r) * eps,
        (1, 4, 2, 3): 0.5 * (s - t) * eps, (2, 3, 1, 4): -0.5 * (s - t) * eps,
    }


def _twoparam_representatives(table, gamma):
    r, p, t, s = table.as_tuple()
    eps = math.sin(gamma) ** 2
    sg = math.sin(gamma)
    return {
        (1, 1, 1, 1): r, (3, 3, 3, 3): r,
        (1, 1, 2, 2): s,
        (2, 2, 2, 2): p,
        (2, 2, 1, 1): t,
        (3, 3, 2, 2): s + (t - s) * eps,
        (1, 1, 3, 3): r + (p - r) * eps, (3, 3, 1, 1): r + (p - r) * eps,
        (2, 2, 3, 3): t + (s - t) * eps,
        (1, 3, 1, 3): 0.5 * (p - r) * eps,
        (2, 3, 1, 2): 0.5 * (p - t) * sg,
        (1, 2, 2, 3): 0.5 * (p - s) * sg,
    }


def _expand(reps, dim):
    values = np.zeros((dim,) * 4)
    written = np.zeros((dim,) * 4, dtype=bool)
    for (i, j, k, l), value in reps.items():
        for a, b in {(i, j), (j, i)}:
            for c, d in {(k, l), (l, k)}:
                idx = (a - 1, b - 1, c - 1, d - 1)
                if written[idx] and values[idx] != value:
                    raise ValidationError(f"conflicting tensor entries at {(a, b, c, d)}")
                values[idx] = value
                written[idx] = True
    return values


def build_tensor_full(table, gamma):
    gamma = check_gamma(gamma)
    return PayoffTensor(_expand(_full_representatives(table, gamma), 4), table, gamma)


def build_tensor_twoparam(table, gamma):
    gamma = check_gamma(gamma)
    return PayoffTensor(_expand(_twoparam_representatives(table, gamma), 3), table, gamma)


def build_tensor(table, gamma, space):
    if space == "full":
        return build_tensor_full(table, gamma)
    if space == "two-param":
        return build_tensor_twoparam(table, gamma)
    raise ValidationError(f"unknown strategy space {space!r}")


def response_matrix(tensor, u):
    u = as_unit_vector(u)
    if u.shape[0] != tensor.dim:
        raise ValidationError(f"strategy has {u.shape[0]} components, tensor expects {tensor.dim}")
    m = np.einsum("ijkl,k,l->ij", tensor.values, u, u)
    return 0.5 * (m + m.T)


def response_matrices(tensor, points):
    """Stack of ``P(u)`` for every row of ``points`` (no unit check)."""
    m = np.einsum("ijkl,nk,nl->nij", tensor.values, points, points)
    return 0.5 * (m + np.swapaxes(m, 1, 2))


def payoff_via_tensor(tensor, u_a, u_b):
    u_a = as_unit_vector(u_a, tensor.dim)
    u_b = as_unit_vector(u_b, tensor.dim)
    pay_a = u_a @ response_matrix(tensor, u_b) @ u_a
    pay_b = u_b @ response_matrix(tensor, u_a) @ u_b
    return PayoffPair(float(pay_a), float(pay_b))
