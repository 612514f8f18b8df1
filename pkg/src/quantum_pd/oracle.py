"""Brute-force checks on a deterministic grid over the strategy sphere.

Nothing here uses eigenvectors for the search itself, so the results are an
independent check on :mod:`quantum_pd.equilibrium`.

Grid on S^(d-1): the first d-2 polar angles take the interior values
k*pi/n (k = 1..n-1), the last azimuth takes m*pi/n (m = 0..2n-1), and the
poles of each nested sphere are added once. Antipodal points are merged by
keeping the canonical representative, leaving ``grid_size(d, n)`` points.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .equilibrium import max_payoff_against
from .errors import DomainError, ValidationError
from .strategy import as_unit_vector
from .tensor import response_matrices, response_matrix

SNAP = 1e-14
# Slack eps = EPS_SCALE / n**2. On odd grids, where the equilibrium family
# of the (3,1,5,0) game at gamma=0.3 is not hit exactly, the closest grid
# profile has exact regret about 3.6 / n**2; the scale doubles that.
EPS_SCALE = 8.0


def sphere_point_count(dim, n):
    """Distinct points on the full sphere before antipodal merging."""
    if dim == 2:
        return 2 * n
    return (n - 1) * sphere_point_count(dim - 1, n) + 2


def grid_size(dim, n):
    return sphere_point_count(dim, n) // 2


def _sphere(dim, n):
    if dim == 2:
        phi = np.arange(2 * n) * math.pi / n
        return np.column_stack([np.cos(phi), np.sin(phi)])
    inner = _sphere(dim - 1, n)
    blocks = [np.eye(dim)[:1], -np.eye(dim)[:1]]
    for k in range(1, n):
        psi = k * math.pi / n
        head = np.full((inner.shape[0], 1), math.cos(psi))
        blocks.append(np.hstack([head, math.sin(psi) * inner]))
    return np.vstack(blocks)


@dataclass(frozen=True, eq=False)
class SphereGrid:
    dim: int
    n: int
    points: np.ndarray

    def __len__(self):
        return self.points.shape[0]


def sphere_grid(dim, n):
    if dim not in (3, 4):
        raise ValidationError("grid dimension must be 3 or 4")
    if n < 2:
        raise DomainError("grid resolution must be at least 2")
    pts = _sphere(dim, n)
    pts[np.abs(pts) < SNAP] = 0.0
    # keep the half whose first nonzero component is positive
    first = np.argmax(pts != 0.0, axis=1)
    keep = pts[np.arange(pts.shape[0]), first] > 0
    pts = pts[keep]
    order = np.lexsort(pts.T[::-1])
    pts = np.ascontiguousarray(pts[order])
    pts.setflags(write=False)
    return SphereGrid(dim, n, pts)


def scan_eps(n, scale=EPS_SCALE):
    """Slack for grid scans; tracks the squared spacing of the grid."""
    return scale / n ** 2


def _check_n(n):
    if n < 8:
        raise DomainError(f"grid resolution n={n} is below the minimum of 8")


def grid_best_response(tensor, u, n):
    """Best grid reply to ``u``; ties go to the lexicographically smallest vector."""
    _check_n(n)
    u = as_unit_vector(u, tensor.dim)
    grid = sphere_grid(tensor.dim, n)
    values = kernels.quad_forms(grid.points, response_matrix(tensor, u))
    top = values.max()
    # points are stored in lexicographic order, so the first tie wins
    idx = int(np.flatnonzero(values >= top - 1e-12)[0])
    return grid.points[idx].copy(), float(values[idx])


@dataclass(eq=False)
class ScanProfile:
    strategy_a: np.ndarray
    strategy_b: np.ndarray
    payoff_a: float
    payoff_b: float
    regret_a: float
    regret_b: float


def grid_nash_scan(tensor, n, eps=None):
    """Grid profiles where neither player can gain more than ``eps``.

    Candidates are found against the grid optimum, then re-checked against the
    exact best-reply payoff so that every reported profile is a true
    ``eps``-equilibrium.
    """
    _check_n(n)
    if eps is None:
        eps = scan_eps(n)
    if not eps > 0:
        raise DomainError("eps must be positive")
    grid = sphere_grid(tensor.dim, n)
    pts = grid.points
    resp = response_matrices(tensor, pts)
    best = kernels.best_payoffs(pts, resp)
    pairs = kernels.scan_pairs(pts, resp, best, eps)
    exact = {}
    found = []
    for a, b in pairs:
        for idx in (a, b):
            if idx not in exact:
                exact[idx] = max_payoff_against(tensor, pts[idx])
        pay_a = float(pts[a] @ resp[b] @ pts[a])
        pay_b = float(pts[b] @ resp[a] @ pts[b])
        regret_a = exact[b] - pay_a
        regret_b = exact[a] - pay_b
        if regret_a <= eps and regret_b <= eps:
            found.append(ScanProfile(pts[a].copy(), pts[b].copy(), pay_a, pay_b, regret_a, regret_b))
    return found
