"""Slice-regular polynomials f(q) = sum_m q^m a_m and their twistor lifts.

On the slice C = R + Ri the polynomial splits as f(v) = g(v) + h(v) j with
complex polynomials g, h; the reflections g^, h^ have conjugated
coefficients. The graph matrix is

    Phi_f(v) = sum_m v^m rho(a_m) = [[g, -h], [h^, g^]]

and the lift G_f(v) = L(Phi_f(v)) has Plücker coordinates
[g g^ + h h^ : h^ : -g : g^ : h : 1].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MalformedInput, RealBasePoint
from .klein import plucker_of_graph, proj_equal, sigma
from .quat_core import EPS, Quaternion, reassemble, split_complex_pair


@dataclass(frozen=True)
class SliceRegPoly:
    """Polynomial with right quaternionic coefficients, a_0 first.

    Trailing coefficients with modulus <= ``tol`` are trimmed at construction;
    the zero polynomial is stored as a single zero coefficient.
    """

    coeffs: tuple[Quaternion, ...]
    tol: float = EPS

    def __init__(self, coeffs: Sequence, tol: float = EPS):
        qs = [c if isinstance(c, Quaternion) else Quaternion.from_array(c)
              for c in coeffs]
        while len(qs) > 1 and qs[-1].norm() <= tol:
            qs.pop()
        if not qs:
            qs = [Quaternion()]
        object.__setattr__(self, "coeffs", tuple(qs))
        object.__setattr__(self, "tol", tol)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Quaternion:
        return self.coeffs[-1]

    def __call__(self, q) -> Quaternion:
        """Horner evaluation a_0 + q(a_1 + q(a_2 + ...))."""
        if not isinstance(q, Quaternion):
            q = Quaternion.real(q)
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = a + q * acc
        return acc

    def coeff_array(self) -> np.ndarray:
        """(n+1) x 4 real array of coefficients."""
        return np.array([c.as_array() for c in self.coeffs])

    def isclose(self, other: "SliceRegPoly", tol: float = EPS) -> bool:
        if self.degree != other.degree:
            return False
        diff = np.abs(self.coeff_array() - other.coeff_array()).max()
        scale = max(1.0, np.abs(self.coeff_array()).max())
        return bool(diff <= tol * scale)

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, tol: float = EPS) -> "SliceRegPoly":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise MalformedInput('polynomial must be {"coeffs": [[w,x,y,z], ...]}')
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise MalformedInput("coeffs must be a non-empty list")
        return cls([Quaternion.from_json(c) for c in coeffs], tol=tol)

    def __repr__(self):
        return f"SliceRegPoly({[c.to_json() for c in self.coeffs]})"


@dataclass(frozen=True)
class SplittingData:
    g_coeffs: np.ndarray
    h_coeffs: np.ndarray

    @property
    def g_hat(self) -> np.ndarray:
        return self.g_coeffs.conj()

    @property
    def h_hat(self) -> np.ndarray:
        return self.h_coeffs.conj()

    def reassemble(self) -> list[Quaternion]:
        return [reassemble(b, c) for b, c in zip(self.g_coeffs, self.h_coeffs)]


def splitting(f: SliceRegPoly) -> SplittingData:
    pairs = [split_complex_pair(a) for a in f.coeffs]
    g = np.array([p[0] for p in pairs], dtype=complex)
    h = np.array([p[1] for p in pairs], dtype=complex)
    return SplittingData(g, h)


def _horner(coeffs: np.ndarray, v: complex) -> complex:
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * v + c
    return acc


def graph_matrix_at(f: SliceRegPoly, v: complex) -> np.ndarray:
    s = splitting(f)
    v = complex(v)
    g, h = _horner(s.g_coeffs, v), _horner(s.h_coeffs, v)
    gh, hh = _horner(s.g_hat, v), _horner(s.h_hat, v)
    return np.array([[g, -h], [hh, gh]])


def twistor_plucker_at(f: SliceRegPoly, v: complex) -> np.ndarray:
    return plucker_of_graph(graph_matrix_at(f, v))


def lift_coefficients(f: SliceRegPoly) -> np.ndarray:
    """6 x (2n+1) array: row k holds the ascending coefficients of zeta_{k+1}(v).

    zeta_1 = g g^ + h h^ is formed by exact convolution.
    """
    s = splitting(f)
    n = f.degree
    out = np.zeros((6, 2 * n + 1), dtype=complex)
    out[0] = np.convolve(s.g_coeffs, s.g_hat) + np.convolve(s.h_coeffs, s.h_hat)
    out[1, :n + 1] = s.h_hat
    out[2, :n + 1] = -s.g_coeffs
    out[3, :n + 1] = s.g_hat
    out[4, :n + 1] = s.h_coeffs
    out[5, 0] = 1
    return out


def reality_check(f: SliceRegPoly, v: complex, tol: float = EPS) -> bool:
    v = complex(v)
    return proj_equal(twistor_plucker_at(f, v.conjugate()),
                      sigma(twistor_plucker_at(f, v)), tol)


def realize_point(v0: complex, Phi0, tol: float = EPS) -> SliceRegPoly:
    """A polynomial of degree <= 1 whose graph matrix at v0 equals Phi0.

    With Phi0 = (a, b; c, d) we need g(v0) = a, g^(v0) = d, h(v0) = -b and
    h^(v0) = c; g and h are the affine interpolants through v0 and conj(v0).
    """
    v0 = complex(v0)
    if abs(v0.imag) <= tol:
        raise RealBasePoint(f"base point {v0} must be non-real")
    (a, b), (c, d) = np.asarray(Phi0, dtype=complex)
    vb = v0.conjugate()
    # l1(v) = (v - vb)/(v0 - vb) is 1 at v0 and 0 at vb; l2 = 1 - l1
    span = v0 - vb
    l1 = np.array([-vb / span, 1 / span])
    l2 = np.array([v0 / span, -1 / span])
    g = a * l1 + d.conjugate() * l2
    h = -b * l1 + c.conjugate() * l2
    return SliceRegPoly([reassemble(g[m], h[m]) for m in range(2)], tol=tol)
