"""Quaternions with their complex 2x2 and 4x4 realizations.

Basis convention: k = ij, so ji = -k. A quaternion q = w + xi + yj + zk is
split as q = z1 + z2 j with z1 = w + xi and z2 = y + zi (note (zi)j = zk).

The embedding ``rho_quat`` sends left multiplication by q to a complex 2x2
matrix and is an R-algebra homomorphism: rho(ab) = rho(a) rho(b).
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import ZeroQuaternion, MalformedInput

EPS = 1e-9

J2 = np.array([[0, -1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        w, x, y, z = (float(c) for c in arr)
        return cls(w, x, y, z)

    @classmethod
    def real(cls, r: float) -> "Quaternion":
        return cls(r, 0.0, 0.0, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return quat_mul(self, _coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return quat_mul(_coerce(other), self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return self * quat_inv(other)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)

    @property
    def imag(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def isclose(self, other, tol: float = EPS) -> bool:
        return (self - _coerce(other)).norm() <= tol * max(1.0, self.norm())

    def to_json(self) -> list:
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_json(cls, data) -> "Quaternion":
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise MalformedInput(f"quaternion must be [w, x, y, z], got {data!r}")
        try:
            return cls(*(float(c) for c in data))
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"non-numeric quaternion {data!r}") from exc

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ZERO = Quaternion()


def _coerce(q) -> Quaternion:
    if isinstance(q, Quaternion):
        return q
    if isinstance(q, (int, float)):
        return Quaternion.real(q)
    raise TypeError(f"cannot interpret {type(q).__name__} as a quaternion")


def hamilton(a, b) -> tuple:
    """Hamilton product of (w, x, y, z) tuples over any numeric field."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with i^2 = j^2 = k^2 = ijk = -1."""
    return Quaternion(*hamilton(a, b))


def quat_inv(q: Quaternion, tol: float = EPS) -> Quaternion:
    n2 = q.w ** 2 + q.x ** 2 + q.y ** 2 + q.z ** 2
    if math.sqrt(n2) <= tol:
        raise ZeroQuaternion(f"cannot invert {q!r}")
    return q.conj() / n2


def split_complex_pair(q: Quaternion) -> tuple[complex, complex]:
    """Return (z1, z2) with q = z1 + z2 j."""
    return complex(q.w, q.x), complex(q.y, q.z)


def reassemble(z1: complex, z2: complex) -> Quaternion:
    z1, z2 = complex(z1), complex(z2)
    return Quaternion(z1.real, z1.imag, z2.real, z2.imag)


def rho_quat(q: Quaternion) -> np.ndarray:
    z1, z2 = split_complex_pair(q)
    return np.array([[z1, -z2], [z2.conjugate(), z1.conjugate()]])


def quat_from_rho(M) -> Quaternion:
    """Read the quaternion off the first column of a matrix in rho(H)."""
    M = np.asarray(M, dtype=complex)
    return reassemble(M[0, 0], M[1, 0].conjugate())


def theta(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    # J^-1 = -J
    return J2 @ M.conj() @ (-J2)


def theta_fix_check(M, tol: float = EPS) -> bool:
    M = np.asarray(M, dtype=complex)
    scale = max(1.0, np.abs(M).max())
    return bool(np.abs(theta(M) - M).max() <= tol * scale)


@dataclass(frozen=True)
class GL2HElement:
    """2x2 quaternionic matrix (alpha, beta; gamma, delta)."""

    alpha: Quaternion = ONE
    beta: Quaternion = ZERO
    gamma: Quaternion = ZERO
    delta: Quaternion = ONE

    @classmethod
    def identity(cls) -> "GL2HElement":
        return cls()

    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return self.alpha, self.beta, self.gamma, self.delta

    def __matmul__(self, other: "GL2HElement") -> "GL2HElement":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return GL2HElement(a * e + b * g, a * f + b * h,
                           c * e + d * g, c * f + d * h)

    def scaled(self, r: float) -> "GL2HElement":
        return GL2HElement(*(q * float(r) for q in self.entries()))

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "gamma": self.gamma.to_json(), "delta": self.delta.to_json()}

    @classmethod
    def from_json(cls, data) -> "GL2HElement":
        if not isinstance(data, dict):
            raise MalformedInput("GL2H element must be an object")
        try:
            return cls(*(Quaternion.from_json(data[k])
                         for k in ("alpha", "beta", "gamma", "delta")))
        except KeyError as exc:
            raise MalformedInput(f"GL2H element missing {exc.args[0]!r}") from exc


def rho_mat(T: GL2HElement) -> np.ndarray:
    return np.block([[rho_quat(T.alpha), rho_quat(T.beta)],
                     [rho_quat(T.gamma), rho_quat(T.delta)]])


def blocks(T4) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a 4x4 matrix into its 2x2 blocks (A, B, C, D)."""
    T4 = np.asarray(T4)
    return T4[:2, :2], T4[:2, 2:], T4[2:, :2], T4[2:, 2:]
