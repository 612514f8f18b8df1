"""Numeric inner loops.

Each kernel exists as a loop form (compiled by numba when it is available)
and, where a loop in plain Python would be too slow, a vectorised numpy form.
``HAS_NUMBA`` picks which one the public wrappers dispatch to.
"""
import numpy as np

from ._accel import HAS_NUMBA, jit

MAX_SWEEPS = 30
OFF_TOL = 1e-12
SCAN_CHUNK = 512


def _jacobi_eigh(a, tol, max_sweeps):
    # Cyclic Jacobi on a small symmetric matrix. Returns unsorted eigenvalues,
    # eigenvectors as columns, final off-diagonal norm and sweeps used.
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    off = 0.0
    sweeps = 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        off = np.sqrt(off)
        sweeps = sweep
        if off < tol or sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta  # theta**2 would overflow
                elif theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    return w, v, off, sweeps


jacobi_eigh_py = _jacobi_eigh
jacobi_eigh = jit(_jacobi_eigh)


def packed_outer(points):
    """Rows ``v_i v_j`` (i <= j), off-diagonal terms doubled.

    With :func:`packed_upper` this turns ``v . m . v`` for symmetric ``m``
    into a dot product of length d(d+1)/2.
    """
    n, d = points.shape
    iu, ju = np.triu_indices(d)
    weight = np.where(iu == ju, 1.0, 2.0)
    return np.ascontiguousarray(points[:, iu] * points[:, ju] * weight)


def packed_upper(mats):
    d = mats.shape[-1]
    iu, ju = np.triu_indices(d)
    return np.ascontiguousarray(mats[..., iu, ju])


def _best_payoffs_loop(feat, pmat):
    # best[b] = max over grid points a of a . P(b) . a
    n, f = feat.shape
    best = np.empty(n)
    for b in range(n):
        top = -np.inf
        for a in range(n):
            val = 0.0
            for k in range(f):
                val += feat[a, k] * pmat[b, k]
            if val > top:
                top = val
        best[b] = top
    return best


def _scan_pairs_loop(feat, pmat, best, eps):
    n, f = feat.shape
    rows = [0]
    cols = [0]
    for a in range(n):
        for b in range(n):
            pay_a = 0.0
            for k in range(f):
                pay_a += feat[a, k] * pmat[b, k]
            if pay_a < best[b] - eps:
                continue
            pay_b = 0.0
            for k in range(f):
                pay_b += feat[b, k] * pmat[a, k]
            if pay_b >= best[a] - eps:
                rows.append(a)
                cols.append(b)
    out = np.empty((len(rows) - 1, 2), dtype=np.int64)
    for k in range(1, len(rows)):
        out[k - 1, 0] = rows[k]
        out[k - 1, 1] = cols[k]
    return out


best_payoffs_loop = jit(_best_payoffs_loop)
scan_pairs_loop = jit(_scan_pairs_loop)


def best_payoffs_numpy(feat, pmat, chunk=SCAN_CHUNK):
    n = feat.shape[0]
    best = np.empty(n)
    for lo in range(0, n, chunk):
        best[lo:lo + chunk] = (feat @ pmat[lo:lo + chunk].T).max(axis=0)
    return best


def scan_pairs_numpy(feat, pmat, best, eps, chunk=SCAN_CHUNK):
    n = feat.shape[0]
    found = []
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        # pay_a[i, b]: row player lo+i against column player b
        pay_a = feat[lo:hi] @ pmat.T
        ok = pay_a >= best[None, :] - eps
        rows, cols = np.nonzero(ok)
        if rows.size == 0:
            continue
        # column player b against row player lo+i, only where needed
        pay_b = np.einsum("kf,kf->k", feat[cols], pmat[rows + lo])
        keep = pay_b >= best[rows + lo] - eps
        found.append(np.column_stack([rows[keep] + lo, cols[keep]]))
    if not found:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(found).astype(np.int64)


def quad_forms(points, mat):
    """Values of ``v . mat . v`` for every row ``v`` of ``points``."""
    points = np.asarray(points, dtype=np.float64)
    mat = np.asarray(mat, dtype=np.float64)
    return packed_outer(points) @ packed_upper(mat)


def best_payoffs(points, resp):
    """Grid optimum against each grid point given the stacked ``P`` matrices."""
    feat = packed_outer(np.asarray(points, dtype=np.float64))
    pmat = packed_upper(np.asarray(resp, dtype=np.float64))
    if HAS_NUMBA:
        return best_payoffs_loop(feat, pmat)
    return best_payoffs_numpy(feat, pmat)


def scan_pairs(points, resp, best, eps):
    """Index pairs ``(a, b)`` where neither side gains more than ``eps`` on the grid."""
    feat = packed_outer(np.asarray(points, dtype=np.float64))
    pmat = packed_upper(np.asarray(resp, dtype=np.float64))
    best = np.ascontiguousarray(best, dtype=np.float64)
    if HAS_NUMBA:
        return scan_pairs_loop(feat, pmat, best, float(eps))
    return scan_pairs_numpy(feat, pmat, best, float(eps))
