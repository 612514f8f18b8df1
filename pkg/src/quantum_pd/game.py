"""Two-qubit simulation of the entangled Prisoners' Dilemma.

Basis order is (CC, CD, DC, DD) with Alice's qubit first. Strategies enter
either as 2x2 special unitaries (:func:`final_state`) or as unit 4-vectors
(:func:`closed_form_final_state`).
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ValidationError
from .strategy import as_unit_vector, embed_vec3, unitary_from_vec4

UNITARY_TOL = 1e-12
STATE_TOL = 1e-9

BASIS = ("CC", "CD", "DC", "DD")
DEFECT = unitary_from_vec4([0.0, 0.0, 1.0, 0.0])
_DD = np.kron(DEFECT, DEFECT)
_CC_KET = np.array([1, 0, 0, 0], dtype=complex)


@dataclass(frozen=True)
class PayoffTable:
    """Classical payoffs: reward, punishment, temptation, sucker."""

    r: float
    p: float
    t: float
    s: float

    def __post_init__(self):
        for name in ("r", "p", "t", "s"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"payoff {name} must be finite")
            object.__setattr__(self, name, value)
        for (hi, lo) in (("t", "r"), ("r", "p"), ("p", "s")):
            if not getattr(self, hi) > getattr(self, lo):
                raise ValidationError(
                    f"payoff table violates t>r>p>s: need {hi} > {lo}, got "
                    f"{hi}={getattr(self, hi):g}, {lo}={getattr(self, lo):g}"
                )

    @classmethod
    def parse(cls, text):
        """Build from an ``"r,p,t,s"`` string."""
        parts = [tok.strip() for tok in text.split(",")]
        if len(parts) != 4:
            raise ValidationError(f"expected four payoffs r,p,t,s, got {text!r}")
        try:
            r, p, t, s = (float(tok) for tok in parts)
        except ValueError as exc:
            raise ValidationError(f"non-numeric payoff in {text!r}") from exc
        return cls(r, p, t, s)

    def as_tuple(self):
        return (self.r, self.p, self.t, self.s)


class PayoffPair(NamedTuple):
    payoff_a: float
    payoff_b: float


@dataclass(frozen=True, eq=False)
class GameState:
    """Final two-qubit state; ``amplitudes`` follows the (CC, CD, DC, DD) order."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(4)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, label):
        amps = np.zeros(4, dtype=complex)
        amps[BASIS.index(label)] = 1.0
        return cls(amps)

    @property
    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    @property
    def norm(self):
        return float(np.sqrt(self.probabilities.sum()))

    def __getitem__(self, label):
        return self.amplitudes[BASIS.index(label)]


def check_gamma(gamma):
    gamma = float(gamma)
    if not 0.0 <= gamma <= math.pi / 2:
        raise DomainError(f"gamma={gamma!r} outside [0, pi/2]")
    return gamma


def check_special_unitary(u, tol=UNITARY_TOL):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValidationError(f"strategy matrix must be 2x2, got {u.shape}")
    if np.max(np.abs(u @ u.conj().T - np.eye(2))) > tol:
        raise ValidationError("strategy matrix is not unitary")
    if abs(np.linalg.det(u) - 1.0) > tol:
        raise ValidationError("strategy matrix does not have unit determinant")
    return u


def entangling_gate(gamma):
    """J = cos(g/2) C(x)C + i sin(g/2) D(x)D."""
    gamma = check_gamma(gamma)
    return math.cos(gamma / 2) * np.eye(4, dtype=complex) + 1j * math.sin(gamma / 2) * _DD


def final_state(u_a, u_b, gamma):
    u_a = check_special_unitary(u_a)
    u_b = check_special_unitary(u_b)
    j = entangling_gate(gamma)
    psi = j.conj().T @ np.kron(u_a, u_b) @ j @ _CC_KET
    return GameState(psi)


def closed_form_final_state(u_a, u_b, gamma):
    """Final state from the polynomial expansion in the vector components."""
    a1, a2, a3, a4 = as_unit_vector(u_a, 4)
    b1, b2, b3, b4 = as_unit_vector(u_b, 4)
    gamma = check_gamma(gamma)
    c, s = math.cos(gamma), math.sin(gamma)
    return GameState(np.array([
        (a1 * b1 - a4 * b4) + 1j * (a4 * b1 + a1 * b4) * c - (a3 * b2 + a2 * b3) * s,
        -(a1 * b3 + a4 * b2) + 1j * (a1 * b2 - a4 * b3) * c + (a3 * b4 - a2 * b1) * s,
        -(a3 * b1 + a2 * b4) + 1j * (a2 * b1 - a3 * b4) * c + (a4 * b3 - a1 * b2) * s,
        (a3 * b3 - a2 * b2) - 1j * (a3 * b2 + a2 * b3) * c + (a4 * b1 + a1 * b4) * s,
    ]))


def expected_payoffs(state, table):
    if not isinstance(state, GameState):
        state = GameState(state)
    probs = state.probabilities
    total = float(probs.sum())
    if abs(total - 1.0) > STATE_TOL:
        raise ValidationError(f"state is not normalised (total probability {total!r})")
    p_cc, p_cd, p_dc, p_dd = probs
    pay_a = table.r * p_cc + table.p * p_dd + table.t * p_dc + table.s * p_cd
    pay_b = table.r * p_cc + table.p * p_dd + table.s * p_dc + table.t * p_cd
    return PayoffPair(float(pay_a), float(pay_b))


def simulate_payoffs(u_a, u_b, gamma, table):
    """Payoffs for two strategy vectors (3- or 4-dim) via the matrix route."""
    u_a = as_unit_vector(u_a)
    u_b = as_unit_vector(u_b)
    if u_a.shape[0] == 3:
        u_a = embed_vec3(u_a)
    if u_b.shape[0] == 3:
        u_b = embed_vec3(u_b)
    state = final_state(unitary_from_vec4(u_a), unitary_from_vec4(u_b), gamma)
    return expected_payoffs(state, table)
