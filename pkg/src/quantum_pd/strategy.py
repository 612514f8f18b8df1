"""Strategies as real unit vectors.

A full SU(2) strategy is ``w*I + x*i*sx + y*i*sy + z*i*sz`` with
``(w, x, y, z)`` on the unit 3-sphere. The two-parameter subset fixes
``x = 0`` and is stored as ``(w, y, z)``.
"""
import math

import numpy as np

from .errors import DomainError, ValidationError

UNIT_TOL = 1e-12
ZERO_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

NAMED3 = {
    "C": (1.0, 0.0, 0.0),
    "D": (0.0, 1.0, 0.0),
    "Q": (0.0, 0.0, 1.0),
}
NAMED4 = {
    "C": (1.0, 0.0, 0.0, 0.0),
    "D": (0.0, 0.0, 1.0, 0.0),
    "Q": (0.0, 0.0, 0.0, 1.0),
}


def as_unit_vector(u, dim=None, tol=UNIT_TOL):
    """Return ``u`` as a float array after checking its length and norm."""
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.shape[0] not in (3, 4):
        raise ValidationError(f"strategy must be a 3- or 4-vector, got shape {u.shape}")
    if dim is not None and u.shape[0] != dim:
        raise ValidationError(f"expected a {dim}-vector, got {u.shape[0]} components")
    norm2 = float(u @ u)
    if abs(norm2 - 1.0) > tol:
        raise ValidationError(f"strategy vector is not unit length (|u|^2 = {norm2!r})")
    return u


def unitary_from_vec4(u):
    w, x, y, z = as_unit_vector(u, 4)
    return w * IDENTITY + 1j * (x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def vec4_from_unitary(m):
    """Inverse of :func:`unitary_from_vec4`; the result is canonicalized."""
    m = np.asarray(m, dtype=complex)
    # w*I + i(x sx + y sy + z sz) = [[w + iz, y + ix], [-y + ix, w - iz]]
    w = 0.5 * (m[0, 0] + m[1, 1]).real
    z = 0.5 * (m[0, 0] - m[1, 1]).imag
    x = 0.5 * (m[0, 1] + m[1, 0]).imag
    y = 0.5 * (m[0, 1] - m[1, 0]).real
    return canonicalize(np.array([w, x, y, z]))


def unitary_from_angles(theta, phi):
    """The two-parameter matrix written directly in (theta, phi)."""
    _check_angles(theta, phi)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[np.exp(1j * phi) * c, s], [-s, np.exp(-1j * phi) * c]])


def _check_angles(theta, phi):
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    if not 0.0 <= phi <= math.pi / 2:
        raise DomainError(f"phi={phi!r} outside [0, pi/2]")


def vec3_from_angles(theta, phi):
    _check_angles(theta, phi)
    half = theta / 2
    return np.array([
        math.cos(half) * math.cos(phi),
        math.sin(half),
        math.cos(half) * math.sin(phi),
    ])


def embed_vec3(u):
    w, y, z = as_unit_vector(u, 3)
    return np.array([w, 0.0, y, z])


def project_vec4(u):
    """Drop the x slot of a 4-vector whose x component is zero."""
    u = as_unit_vector(u, 4)
    if abs(u[1]) > ZERO_TOL:
        raise ValidationError("x component must vanish to project into the two-parameter space")
    return np.array([u[0], u[2], u[3]])


def canonicalize(u):
    """Pick the sign of ``u`` whose first nonzero component is positive.

    ``u`` and ``-u`` give the same strategy up to a global phase. Components
    with magnitude at or below ``ZERO_TOL`` count as zero.
    """
    u = np.asarray(u, dtype=float)
    nonzero = np.flatnonzero(np.abs(u) > ZERO_TOL)
    if nonzero.size == 0:
        raise ValidationError("cannot canonicalize the zero vector")
    if u[nonzero[0]] < 0:
        return -u
    return u.copy()


def same_strategy(u, v, tol=1e-9):
    """True when ``u`` and ``v`` agree up to the sign identification."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u.shape == v.shape and min(np.max(np.abs(u - v)), np.max(np.abs(u + v))) <= tol


def parse_strategy(text, dim, degrees=False):
    """Parse a strategy literal into a ``dim``-vector.

    Accepted forms: ``C``, ``D``, ``Q``, ``vec3:w,y,z``, ``vec4:w,x,y,z`` and
    ``angles:theta,phi``. A 3-vector literal is embedded when ``dim`` is 4;
    a 4-vector literal with zero x slot is projected when ``dim`` is 3.
    """
    text = text.strip()
    key = text.upper()
    if key in NAMED3:
        return np.array(NAMED3[key] if dim == 3 else NAMED4[key])
    kind, sep, body = text.partition(":")
    if not sep:
        raise ValidationError(f"unrecognised strategy literal {text!r}")
    try:
        values = [float(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad number in strategy literal {text!r}") from exc
    kind = kind.strip().lower()
    if kind == "angles":
        if len(values) != 2:
            raise ValidationError("angles literal needs theta,phi")
        theta, phi = values
        if degrees:
            theta, phi = math.radians(theta), math.radians(phi)
        u = vec3_from_angles(theta, phi)
    elif kind == "vec3":
        if len(values) != 3:
            raise ValidationError("vec3 literal needs three components")
        u = as_unit_vector(values, 3, tol=1e-9)
    elif kind == "vec4":
        if len(values) != 4:
            raise ValidationError("vec4 literal needs four components")
        u = as_unit_vector(values, 4, tol=1e-9)
    else:
        raise ValidationError(f"unknown strategy kind {kind!r}")
    # literals are typed by hand, so renormalise after the loose check
    u = u / np.linalg.norm(u)
    if u.shape[0] == dim:
        return u
    if dim == 4:
        return embed_vec3(u)
    return project_vec4(u)


def format_strategy(u, digits=12):
    """Inverse of :func:`parse_strategy` for output; named when exact."""
    u = canonicalize(u)
    table = NAMED3 if u.shape[0] == 3 else NAMED4
    for name, vec in table.items():
        if np.max(np.abs(u - np.asarray(vec))) <= 1e-12:
            return name
    body = ",".join(format(float(c) + 0.0, f".{digits}g") for c in u)
    return f"vec{u.shape[0]}:{body}"
