"""Best responses, Nash checks, entanglement thresholds and region labels.

The best reply to a fixed opponent strategy ``u`` maximises the quadratic
form ``v . P(u) . v`` over unit ``v``, so it is the top eigenvector of
``P(u)`` and the attained payoff is the top eigenvalue.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, DomainError, ValidationError
from .game import check_gamma
from .kernels import MAX_SWEEPS, OFF_TOL, jacobi_eigh
from .strategy import as_unit_vector, canonicalize, same_strategy
from .tensor import build_tensor_full, build_tensor_twoparam, payoff_via_tensor, response_matrix

NASH_EPS = 1e-9
DEGENERACY_TOL = 1e-9
BOUNDARY_TOL = 1e-12
SYMMETRY_TOL = 1e-12

C3 = np.array([1.0, 0.0, 0.0])
D3 = np.array([0.0, 1.0, 0.0])
Q3 = np.array([0.0, 0.0, 1.0])

FAMILY_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)
FAMILY = "{(0,a,b,0),(0,b,a,0)} for a^2+b^2=1"


class Region(str, enum.Enum):
    CLASSICAL = "Classical"
    TRANSITIONAL = "Transitional"
    COEXISTENT = "Coexistent"
    QUANTUM = "Quantum"
    INFINITE_FAMILY = "InfiniteFamily"
    NO_PURE_NE = "NoPureNE"


@dataclass(frozen=True, eq=False)
class EigenPair:
    eigenvalue: float
    eigenvector: np.ndarray
    # orthonormal basis of the eigenspace when the eigenvalue is repeated
    eigenspace: tuple = ()


@dataclass(frozen=True)
class Thresholds:
    gamma_th1: float
    gamma_th2: float
    gamma_b: float
    regime: str

    def to_dict(self):
        return {
            "gamma_th1": self.gamma_th1,
            "gamma_th2": self.gamma_th2,
            "gamma_b": self.gamma_b,
            "regime": self.regime,
        }


@dataclass(eq=False)
class Equilibrium:
    strategy_a: np.ndarray
    strategy_b: np.ndarray
    payoff_a: float
    payoff_b: float
    verified: bool = False

    def to_dict(self):
        return {
            "strategy_a": [float(c) for c in self.strategy_a],
            "strategy_b": [float(c) for c in self.strategy_b],
            "payoff_a": self.payoff_a,
            "payoff_b": self.payoff_b,
            "verified": self.verified,
        }


@dataclass(eq=False)
class RegionReport:
    gamma: float
    region: Region
    equilibria: list
    thresholds: Thresholds
    space: str
    boundary: bool = False
    family: str = None
    extra_regions: list = field(default_factory=list)

    def to_dict(self):
        return {
            "gamma": self.gamma,
            "space": self.space,
            "region": self.region.value,
            "boundary": self.boundary,
            "adjacent_regions": [r.value for r in self.extra_regions],
            "family": self.family,
            "equilibria": [eq.to_dict() for eq in self.equilibria],
            "thresholds": self.thresholds.to_dict(),
        }


def eigen_symmetric(m):
    """Full spectrum of a small symmetric matrix, ascending, vectors canonicalized."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (3, 4):
        raise ValidationError(f"expected a 3x3 or 4x4 matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValidationError("matrix is not symmetric")
    scale = max(1.0, float(np.linalg.norm(m)))
    w, v, off, _ = jacobi_eigh(np.ascontiguousarray(m), OFF_TOL * scale, MAX_SWEEPS)
    if off >= OFF_TOL * scale:
        raise ConsistencyError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off={off:g})")
    order = np.argsort(w, kind="stable")
    return [EigenPair(float(w[i]), canonicalize(v[:, i])) for i in order]


def best_response(tensor, u):
    pairs = eigen_symmetric(response_matrix(tensor, u))
    top = pairs[-1]
    space = tuple(p.eigenvector for p in pairs if top.eigenvalue - p.eigenvalue <= DEGENERACY_TOL)
    return EigenPair(top.eigenvalue, top.eigenvector, space)


def max_payoff_against(tensor, u):
    return eigen_symmetric(response_matrix(tensor, u))[-1].eigenvalue


def is_nash(tensor, u_a, u_b, eps=NASH_EPS):
    if not eps > 0:
        raise DomainError("eps must be positive")
    pay_a, pay_b = payoff_via_tensor(tensor, u_a, u_b)
    return (pay_a >= max_payoff_against(tensor, u_b) - eps
            and pay_b >= max_payoff_against(tensor, u_a) - eps)


def _regime(table):
    lhs, rhs = table.r + table.p, table.t + table.s
    if math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12):
        return "r+p=t+s"
    return "r+p<t+s" if lhs < rhs else "r+p>t+s"


def thresholds(table):
    r, p, t, s = table.as_tuple()
    return Thresholds(
        gamma_th1=math.asin(math.sqrt((p - s) / (t - s))),
        gamma_th2=math.asin(math.sqrt((t - r) / (t - s))),
        gamma_b=math.asin(math.sqrt((p - s) / (p + t - r - s))),
        regime=_regime(table),
    )


def _verified(tensor, profiles, eps):
    out = []
    for u_a, u_b in profiles:
        if not is_nash(tensor, u_a, u_b, eps):
            raise ConsistencyError(
                f"profile {u_a}, {u_b} failed the Nash check at gamma={tensor.gamma!r}")
        pay_a, pay_b = payoff_via_tensor(tensor, u_a, u_b)
        out.append(Equilibrium(u_a, u_b, pay_a, pay_b, verified=True))
    return out


def _twoparam_regions(th, gamma):
    """Regions containing ``gamma``; two of them exactly on a threshold."""
    lo, hi = sorted((th.gamma_th1, th.gamma_th2))
    if th.regime == "r+p=t+s" or abs(th.gamma_th1 - th.gamma_th2) <= BOUNDARY_TOL:
        middle = None
        lo = hi = 0.5 * (lo + hi)
    elif th.gamma_th1 < th.gamma_th2:
        middle = Region.TRANSITIONAL
    else:
        middle = Region.COEXISTENT
    if gamma < lo - BOUNDARY_TOL:
        return [Region.CLASSICAL]
    if gamma > hi + BOUNDARY_TOL:
        return [Region.QUANTUM]
    if middle is None:
        # single threshold: classical and quantum meet at one point
        return [Region.COEXISTENT, Region.CLASSICAL, Region.QUANTUM]
    regions = [middle]
    if abs(gamma - lo) <= BOUNDARY_TOL:
        regions.append(Region.CLASSICAL)
    if abs(gamma - hi) <= BOUNDARY_TOL:
        regions.append(Region.QUANTUM)
    return regions


_TWOPARAM_PROFILES = {
    Region.CLASSICAL: [(D3, D3)],
    Region.QUANTUM: [(Q3, Q3)],
    Region.TRANSITIONAL: [(D3, Q3), (Q3, D3)],
    Region.COEXISTENT: [(D3, D3), (Q3, Q3)],
}


def classify_region_twoparam(table, gamma, eps=NASH_EPS):
    gamma = check_gamma(gamma)
    th = thresholds(table)
    regions = _twoparam_regions(th, gamma)
    profiles = []
    for region in regions:
        for prof in _TWOPARAM_PROFILES[region]:
            if not any(same_strategy(prof[0], a) and same_strategy(prof[1], b) for a, b in profiles):
                profiles.append(prof)
    tensor = build_tensor_twoparam(table, gamma)
    return RegionReport(
        gamma=gamma,
        region=regions[0],
        equilibria=_verified(tensor, profiles, eps),
        thresholds=th,
        space="two-param",
        boundary=len(regions) > 1,
        extra_regions=regions[1:],
    )


def family_profile(alpha):
    beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
    return np.array([0.0, alpha, beta, 0.0]), np.array([0.0, beta, alpha, 0.0])


def classify_region_full(table, gamma, eps=NASH_EPS):
    gamma = check_gamma(gamma)
    th = thresholds(table)
    if gamma > th.gamma_b + BOUNDARY_TOL:
        return RegionReport(gamma, Region.NO_PURE_NE, [], th, "full")
    tensor = build_tensor_full(table, gamma)
    profiles = [family_profile(a) for a in FAMILY_ALPHAS]
    boundary = abs(gamma - th.gamma_b) <= BOUNDARY_TOL
    return RegionReport(
        gamma=gamma,
        region=Region.INFINITE_FAMILY,
        equilibria=_verified(tensor, profiles, eps),
        thresholds=th,
        space="full",
        boundary=boundary,
        family=FAMILY,
        extra_regions=[Region.NO_PURE_NE] if boundary else [],
    )


def classify_region(table, gamma, space, eps=NASH_EPS):
    if space == "two-param":
        return classify_region_twoparam(table, gamma, eps)
    if space == "full":
        return classify_region_full(table, gamma, eps)
    raise ValidationError(f"unknown strategy space {space!r}")


def dominance_cycle(tensor, alpha, gamma=None, tol=1e-9):
    """The four-step best-response cycle that rules out pure equilibria.

    Starting from ``(0, a, b, 0)`` the best replies run through
    ``(a, 0, 0, -b)``, ``(0, b, -a, 0)`` and ``(b, 0, 0, a)`` before returning
    to the start. Each step is recomputed from the response matrix and
    compared with the expected vector; returns the canonicalized cycle.
    """
    if tensor.dim != 4:
        raise ValidationError("dominance cycle needs the full-space tensor")
    gamma = tensor.gamma if gamma is None else check_gamma(gamma)
    if not math.isclose(gamma, tensor.gamma, abs_tol=1e-15):
        raise ValidationError("gamma does not match the tensor")
    if gamma <= thresholds(tensor.table).gamma_b:
        raise DomainError("dominance cycle requires gamma above the boundary gamma_b")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha={alpha!r} outside [0, 1]")
    beta = math.sqrt(1.0 - alpha * alpha)
    cycle = [
        np.array([0.0, alpha, beta, 0.0]),
        np.array([alpha, 0.0, 0.0, -beta]),
        np.array([0.0, beta, -alpha, 0.0]),
        np.array([beta, 0.0, 0.0, alpha]),
    ]
    for k, u in enumerate(cycle):
        expected = cycle[(k + 1) % 4]
        reply = best_response(tensor, u)
        if len(reply.eigenspace) > 1 or not same_strategy(reply.eigenvector, expected, tol):
            raise ConsistencyError(
                f"best response to {u} is {reply.eigenvector}, expected {expected}")
    return [canonicalize(u) for u in cycle]


def best_response_value(tensor, u):
    """Convenience: (canonical best reply, payoff) for a strategy vector."""
    u = as_unit_vector(u, tensor.dim)
    pair = best_response(tensor, u)
    return pair.eigenvector, pair.eigenvalue
