"""Plücker coordinates on P(Λ²C⁴) and the PGL(2,H) orbit classifier.

Points of CP^5 (and hyperplane covectors) are plain complex numpy arrays of
length 6, in the basis

    E1 = e3^e4, E2 = -e2^e4, E3 = e2^e3, E4 = e1^e4, E5 = -e1^e3, E6 = e1^e2.

Scale-dependent quantities (``klein_q``, ``klein_B``, ``gram``) act on the given
representative; everything else is projective.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
import math
from typing import Optional

import numpy as np

from .errors import (IsotropicPoint, MalformedInput, NotProjectivelyReal,
                     SingularMatrix, UnclassifiablePoint)
from .quat_core import EPS


class OrbitTag(str, Enum):
    REAL_NULL = "RealNull"
    NON_REAL_ISOTROPIC = "NonRealIsotropic"
    REAL_TIMELIKE = "RealTimelike"
    REAL_SPACELIKE = "RealSpacelike"
    NON_REAL_DEGENERATE = "NonRealDegenerate"
    NON_REAL_LORENTZIAN = "NonRealLorentzian"
    NON_REAL_NEGATIVE_DEFINITE = "NonRealNegativeDefinite"


_PARAM_TAGS = (OrbitTag.NON_REAL_LORENTZIAN, OrbitTag.NON_REAL_NEGATIVE_DEFINITE)


@dataclass(frozen=True)
class OrbitType:
    tag: OrbitTag
    param: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "tag", OrbitTag(self.tag))
        if (self.param is not None) != (self.tag in _PARAM_TAGS):
            raise ValueError(f"param must be given exactly for {_PARAM_TAGS}")

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "param": self.param}


@dataclass(frozen=True)
class GramData:
    M11: float
    M12: float
    M22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.M11, self.M12], [self.M12, self.M22]])

    @property
    def trace(self) -> float:
        return self.M11 + self.M22

    @property
    def det(self) -> float:
        return self.M11 * self.M22 - self.M12 ** 2

    @property
    def discriminant(self) -> float:
        """(M11 - M22)^2 + 4 M12^2, i.e. |B(p, p)|^2."""
        return (self.M11 - self.M22) ** 2 + 4 * self.M12 ** 2


# Standard pole representatives, one per orbit.
P_N = np.array([0, 0, 0, 0, 0, 1], dtype=complex)
P_Q_MINUS_N = np.array([-1, 0, -1j, 1j, 0, 1], dtype=complex)
P_PLUS = np.array([1, 0, 0, 0, 0, 1], dtype=complex)
P_MINUS = np.array([1, 0, 0, 0, 0, -1], dtype=complex)
P_DEG = np.array([0, 0, -1j, 1j, 0, 1], dtype=complex)


def p_theta(theta: float) -> np.ndarray:
    return np.array([np.exp(1j * theta), 0, 0, 0, 0, 1], dtype=complex)


def p_lambda(lam: float) -> np.ndarray:
    return np.array([1, 0, -1j * lam, 1j * lam, 0, -1], dtype=complex)


def as_plucker(p) -> np.ndarray:
    try:
        arr = np.asarray(p, dtype=complex).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"not a complex 6-vector: {p!r}") from exc
    if arr.shape != (6,):
        raise MalformedInput(f"Plücker vector needs 6 coordinates, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedInput("Plücker vector has non-finite entries")
    return arr


def _scale(p: np.ndarray) -> float:
    return float(np.abs(p).max())


def _require_nonzero(p: np.ndarray, tol: float) -> None:
    if _scale(p) <= tol:
        raise MalformedInput("zero vector does not define a projective point")


def normalize(p, tol: float = EPS) -> np.ndarray:
    """Divide by the coordinate of largest modulus."""
    p = as_plucker(p)
    _require_nonzero(p, tol)
    return p / p[np.argmax(np.abs(p))]


def proj_equal(p, r, tol: float = EPS) -> bool:
    p, r = as_plucker(p), as_plucker(r)
    if _scale(p) <= tol or _scale(r) <= tol:
        return False
    # compare on both pivots: the max-modulus index can differ by rounding
    ip, ir = np.argmax(np.abs(p)), np.argmax(np.abs(r))
    for idx in {ip, ir}:
        if abs(p[idx]) > tol * _scale(p) and abs(r[idx]) > tol * _scale(r):
            a, b = p / p[idx], r / r[idx]
            scale = max(1.0, float(np.abs(a).max()))
            if np.abs(a - b).max() <= tol * scale:
                return True
    return False


def klein_q(p) -> complex:
    p = as_plucker(p)
    return complex(p[0] * p[5] - p[1] * p[4] + p[2] * p[3])


def klein_B(p, r) -> complex:
    p, r = as_plucker(p), as_plucker(r)
    return complex(p[0] * r[5] + p[5] * r[0] - p[1] * r[4] - p[4] * r[1]
                   + p[2] * r[3] + p[3] * r[2])


def sigma(p) -> np.ndarray:
    p = as_plucker(p)
    c = p.conj()
    return np.array([c[0], c[4], -c[3], -c[2], c[1], c[5]])


def kappa(z) -> np.ndarray:
    z = as_plucker(z)
    return np.array([z[5], -z[4], z[3], z[2], -z[1], z[0]])


def is_projectively_real(p, tol: float = EPS) -> bool:
    p = as_plucker(p)
    _require_nonzero(p, tol)
    s = sigma(p)
    bound = tol * np.linalg.norm(p) * np.linalg.norm(s)
    for a, b in combinations(range(6), 2):
        if abs(p[a] * s[b] - p[b] * s[a]) > bound:
            return False
    return True


def real_representative(p, tol: float = EPS) -> np.ndarray:
    p = as_plucker(p)
    if not is_projectively_real(p, tol):
        raise NotProjectivelyReal("[sigma p] != [p]")
    norm = np.linalg.norm(p)
    u = p + sigma(p)
    if np.linalg.norm(u) <= tol * norm:
        u = 1j * (p - sigma(p))
    if np.linalg.norm(u) <= tol * norm:
        raise NotProjectivelyReal("both real-part candidates vanish")
    # kill rounding noise so that sigma(u) == u holds entrywise
    return (u + sigma(u)) / 2


def real_imag_parts(p) -> tuple[np.ndarray, np.ndarray]:
    """The vectors x, y in V_R with p = x + iy."""
    p = as_plucker(p)
    s = sigma(p)
    return (p + s) / 2, (p - s) / 2j


def gram(p, tol: float = EPS) -> GramData:
    p = as_plucker(p)
    _require_nonzero(p, tol)
    x, y = real_imag_parts(p)
    vals = [klein_B(x, x), klein_B(x, y), klein_B(y, y)]
    scale = max(1.0, _scale(p) ** 2)
    for v in vals:
        # B restricted to V_R is real; a large imaginary part means a bug
        assert abs(v.imag) <= 1e3 * tol * scale, v
    return GramData(vals[0].real, vals[1].real, vals[2].real)


def _is_isotropic(p: np.ndarray, tol: float) -> bool:
    return abs(klein_q(p)) <= tol * _scale(p) ** 2


def tau(p, tol: float = EPS) -> float:
    p = as_plucker(p)
    _require_nonzero(p, tol)
    if _is_isotropic(p, tol):
        raise IsotropicPoint("tau is undefined on the Klein quadric")
    return klein_B(p, sigma(p)).real / abs(klein_B(p, p))


def classify_point(p, tol: float = EPS) -> OrbitType:
    p = as_plucker(p)
    _require_nonzero(p, tol)
    real = is_projectively_real(p, tol)
    if _is_isotropic(p, tol):
        return OrbitType(OrbitTag.REAL_NULL if real else OrbitTag.NON_REAL_ISOTROPIC)
    if real:
        u = real_representative(p, tol)
        if klein_q(u).real > 0:
            return OrbitType(OrbitTag.REAL_TIMELIKE)
        return OrbitType(OrbitTag.REAL_SPACELIKE)
    t = tau(p, tol)
    if abs(t + 1) <= tol:
        return OrbitType(OrbitTag.NON_REAL_DEGENERATE)
    if t < -1:
        lam = math.sqrt((-t - 1) / (-t + 1))
        return OrbitType(OrbitTag.NON_REAL_NEGATIVE_DEFINITE, lam)
    if t < 1 - tol:
        return OrbitType(OrbitTag.NON_REAL_LORENTZIAN, math.acos(t))
    raise UnclassifiablePoint(
        f"non-real anisotropic point with tau = {t!r} >= 1 - tol")


def classify_hyperplane(z, tol: float = EPS) -> OrbitType:
    return classify_point(kappa(z), tol)


# index pairs (0-based) and signs of E1..E6
_E_BASIS = ((2, 3, 1), (1, 3, -1), (1, 2, 1), (0, 3, 1), (0, 2, -1), (0, 1, 1))


def wedge_coords(u, w) -> np.ndarray:
    """Plücker coordinates of u ^ w for u, w in C^4."""
    u = np.asarray(u, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.array([s * (u[a] * w[b] - u[b] * w[a]) for a, b, s in _E_BASIS])


def wedge_matrix(T4, tol: float = EPS) -> np.ndarray:
    """The 6x6 matrix of Λ²T4 in the E basis."""
    T4 = np.asarray(T4, dtype=complex)
    if T4.shape != (4, 4):
        raise MalformedInput(f"expected a 4x4 matrix, got {T4.shape}")
    scale = max(1.0, float(np.abs(T4).max()))
    if abs(np.linalg.det(T4)) <= tol * scale ** 4:
        raise SingularMatrix("Λ² of a singular matrix is not an action")
    cols = []
    for a, b, s in _E_BASIS:
        cols.append(s * wedge_coords(T4[:, a], T4[:, b]))
    return np.column_stack(cols)


def wedge_action(T4, p, tol: float = EPS) -> np.ndarray:
    return wedge_matrix(T4, tol) @ as_plucker(p)


def plucker_of_graph(Phi) -> np.ndarray:
    (a, b), (c, d) = np.asarray(Phi, dtype=complex)
    return np.array([a * d - b * c, c, -a, d, -b, 1], dtype=complex)


def graph_of_plucker(p, tol: float = EPS) -> np.ndarray:
    """Inverse of ``plucker_of_graph`` on the chart zeta_6 != 0."""
    p = as_plucker(p)
    if abs(p[5]) <= tol * _scale(p):
        raise MalformedInput("point is outside the chart zeta_6 != 0")
    p = p / p[5]
    return np.array([[-p[2], -p[4]], [p[1], p[3]]])
