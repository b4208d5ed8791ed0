"""Planarity of polynomial twistor lifts and the family of containing hyperplanes.

A lift G_f lies in a hyperplane section iff the non-constant coefficients
a_1..a_n span a proper real subspace S_f of H. The containing hyperplanes are
in bijection with P(A_f), A_f being the complex space of R-linear maps
H -> C vanishing on S_f. Each such map Lambda is stored by the four middle
covector coordinates (z2, z3, z4, z5) with

    Lambda(b + cj) = z2 conj(c) - z3 b + z4 conj(b) + z5 c.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ConstantPolynomial, WitnessSearchExhausted, ZeroMap
from .klein import (OrbitTag, OrbitType, as_plucker, classify_hyperplane,
                    kappa)
from .quat_core import EPS, Quaternion, split_complex_pair
from .sliceregpoly import SliceRegPoly, lift_coefficients


class PlanarType(str, Enum):
    A_MINUS = "A_minus"
    A_Q_MINUS_N = "A_QminusN"
    A_ND = "A_nd"


# pole orbit forced by each planar type
POLE_TAG = {
    PlanarType.A_MINUS: OrbitTag.REAL_SPACELIKE,
    PlanarType.A_Q_MINUS_N: OrbitTag.NON_REAL_ISOTROPIC,
    PlanarType.A_ND: OrbitTag.NON_REAL_NEGATIVE_DEFINITE,
}


@dataclass(frozen=True)
class RLinearMap:
    z2: complex
    z3: complex
    z4: complex
    z5: complex

    def __post_init__(self):
        for name in ("z2", "z3", "z4", "z5"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_array(cls, arr) -> "RLinearMap":
        return cls(*np.asarray(arr, dtype=complex))

    def as_array(self) -> np.ndarray:
        return np.array([self.z2, self.z3, self.z4, self.z5])

    def __call__(self, q: Quaternion) -> complex:
        b, c = split_complex_pair(q)
        return (self.z2 * c.conjugate() - self.z3 * b
                + self.z4 * b.conjugate() + self.z5 * c)

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        """(A, B, C, D) with Lambda(x + yi + uj + vk) = Ax + By + Cu + Dv."""
        return (self.z4 - self.z3, -1j * (self.z3 + self.z4),
                self.z2 + self.z5, 1j * (self.z5 - self.z2))

    def evaluate_xyuv(self, q: Quaternion) -> complex:
        A, B, C, D = self.coefficients()
        return A * q.w + B * q.x + C * q.y + D * q.z

    def real_matrix(self) -> np.ndarray:
        """The real 2x4 matrix L_Lambda of H = R^4 -> C = R^2."""
        coeffs = np.array(self.coefficients())
        return np.vstack([coeffs.real, coeffs.imag])

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def to_json(self) -> list:
        return [[z.real, z.imag] for z in self.as_array()]


def span_singular_values(coeffs) -> np.ndarray:
    arr = np.array([c.as_array() if isinstance(c, Quaternion) else c
                    for c in coeffs], dtype=float).reshape(-1, 4)
    if arr.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.svd(arr, compute_uv=False)


def _rank_from_singular_values(s: np.ndarray, tol: float) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def span_rank(coeffs, tol: float = EPS) -> int:
    return _rank_from_singular_values(span_singular_values(coeffs), tol)


def _require_nonconstant(f: SliceRegPoly) -> None:
    if f.degree < 1:
        raise ConstantPolynomial("planarity concerns non-constant polynomials")


def is_planar(f: SliceRegPoly, tol: float = EPS) -> bool:
    _require_nonconstant(f)
    return span_rank(f.coeffs[1:], tol) <= 3


def lambda_from_z(z) -> RLinearMap:
    z = as_plucker(z)
    return RLinearMap(z[1], z[2], z[3], z[4])


def z_from_linear_functional(A, B, C, D) -> RLinearMap:
    A, B, C, D = (complex(t) for t in (A, B, C, D))
    return RLinearMap(z2=(C + 1j * D) / 2, z3=(-A + 1j * B) / 2,
                      z4=(A + 1j * B) / 2, z5=(C - 1j * D) / 2)


def _evaluation_rows(coeffs) -> np.ndarray:
    """Row m maps (z2, z3, z4, z5) to Lambda(a_m)."""
    rows = []
    for a in coeffs:
        b, c = split_complex_pair(a)
        rows.append([c.conjugate(), -b, b.conjugate(), c])
    return np.array(rows, dtype=complex).reshape(-1, 4)


def annihilator_basis(f: SliceRegPoly, tol: float = EPS) -> list[RLinearMap]:
    _require_nonconstant(f)
    r = span_rank(f.coeffs[1:], tol)
    rows = _evaluation_rows(f.coeffs[1:])
    _, _, vh = np.linalg.svd(rows)
    null = vh[r:].conj()
    return [RLinearMap.from_array(v) for v in null]


def covector_and_pole(lam: RLinearMap, f: SliceRegPoly,
                      tol: float = EPS) -> tuple[np.ndarray, np.ndarray]:
    if lam.norm() <= tol:
        raise ZeroMap("Lambda must be non-zero")
    z = np.array([0, lam.z2, lam.z3, lam.z4, lam.z5, -lam(f.coeffs[0])],
                 dtype=complex)
    return z, kappa(z)


def hyperplane_residuals(f: SliceRegPoly, z) -> np.ndarray:
    """Coefficients (in v) of sum_k z_k zeta_k(v) along the lift of f."""
    return as_plucker(z) @ lift_coefficients(f)


def hyperplane_contains(f: SliceRegPoly, z, tol: float = EPS) -> bool:
    z = as_plucker(z)
    coeffs = lift_coefficients(f)
    scale = np.linalg.norm(z) * max(1.0, float(np.abs(coeffs).max()))
    return bool(np.abs(z @ coeffs).max() <= tol * scale)


def delta_nu_rank(lam: RLinearMap, tol: float = EPS) -> tuple[complex, float, int]:
    if lam.norm() <= tol:
        raise ZeroMap("Lambda must be non-zero")
    delta = lam.z3 * lam.z4 - lam.z2 * lam.z5
    nu = float(np.sum(np.abs(lam.as_array()) ** 2))
    rank = 1 if abs(nu ** 2 - 4 * abs(delta) ** 2) <= tol * nu ** 2 else 2
    return delta, nu, rank


def lambda_type(lam: RLinearMap, tol: float = EPS) -> PlanarType:
    delta, nu, rank = delta_nu_rank(lam, tol)
    if rank == 1:
        return PlanarType.A_MINUS
    if abs(delta) <= tol * nu:
        return PlanarType.A_Q_MINUS_N
    return PlanarType.A_ND


@dataclass(frozen=True)
class Witness:
    type: PlanarType
    lam: RLinearMap
    covector: np.ndarray
    pole: np.ndarray
    orbit: OrbitType

    def to_json(self) -> dict:
        return {
            "type": self.type.value,
            "lambda": self.lam.to_json(),
            "covector": [[z.real, z.imag] for z in self.covector],
            "pole": [[z.real, z.imag] for z in self.pole],
            "pole_orbit": self.orbit.to_json(),
        }


@dataclass
class PlanarityReport:
    r: int
    planar: bool
    annihilator_basis: list[RLinearMap]
    achievable_types: list[PlanarType]
    witnesses: list[Witness]
    singular_values: list[float] = field(default_factory=list)
    smallest_retained: Optional[float] = None
    largest_discarded: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "planar": self.planar,
            "annihilator_basis": [lam.to_json() for lam in self.annihilator_basis],
            "types": [t.value for t in self.achievable_types],
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    def diagnostics(self) -> dict:
        return {
            "singular_values": self.singular_values,
            "smallest_retained": self.smallest_retained,
            "largest_discarded": self.largest_discarded,
        }


def _delta_form(u: np.ndarray, w: np.ndarray) -> complex:
    """Symmetric bilinear form polarizing Delta = z3 z4 - z2 z5."""
    return (u[1] * w[2] + u[2] * w[1] - u[0] * w[3] - u[3] * w[0]) / 2


def _isotropic_in_plane(u: np.ndarray, w: np.ndarray) -> list[np.ndarray]:
    """Zeros of Delta on span_C{u, w}; empty if Delta vanishes identically there."""
    quu, quw, qww = _delta_form(u, u), _delta_form(u, w), _delta_form(w, w)
    scale = max(abs(quu), abs(quw), abs(qww))
    if scale == 0:
        return []
    out = []
    if abs(qww) <= 1e-12 * scale:
        out.append(w)
    # Delta(u + s w) = quu + 2 quw s + qww s^2
    out.extend(u + s * w for s in np.roots([qww, 2 * quw, quu]))
    return out


def _make_witness(kind: PlanarType, arr: np.ndarray, f: SliceRegPoly,
                  tol: float) -> Optional[Witness]:
    lam = RLinearMap.from_array(arr / np.linalg.norm(arr))
    if lambda_type(lam, tol) is not kind:
        return None
    z, pole = covector_and_pole(lam, f, tol)
    if not hyperplane_contains(f, z, tol):
        return None
    orbit = classify_hyperplane(z, tol)
    if orbit.tag is not POLE_TAG[kind]:
        return None
    return Witness(kind, lam, z, pole, orbit)


def planarity_report(f: SliceRegPoly, rng: Optional[np.random.Generator] = None,
                     tol: float = EPS, max_draws: int = 1000) -> PlanarityReport:
    """Rank of S_f, the containing-hyperplane family, one witness per achievable type.

    ``rng`` drives the searches for the Delta = 0 and generic witnesses; pass a
    seeded generator for reproducible output.
    """
    _require_nonconstant(f)
    if rng is None:
        rng = np.random.default_rng(0)
    coeffs = f.coeffs[1:]
    s = span_singular_values(coeffs)
    r = _rank_from_singular_values(s, tol)
    padded = np.concatenate([s, np.zeros(4 - s.size)]) if s.size < 4 else s
    report = PlanarityReport(
        r=r, planar=r <= 3, annihilator_basis=[], achievable_types=[],
        witnesses=[], singular_values=[float(x) for x in padded],
        smallest_retained=float(padded[r - 1]) if r > 0 else None,
        largest_discarded=float(padded[r]) if r < 4 else None)
    if not report.planar:
        return report

    basis = annihilator_basis(f, tol)
    report.annihilator_basis = basis
    B = np.array([lam.as_array() for lam in basis])

    # A_minus: a real functional vanishing on S_f
    real_coeffs = np.array([c.as_array() for c in coeffs])
    ell = np.linalg.svd(real_coeffs)[2][-1]
    minus = _make_witness(PlanarType.A_MINUS,
                          z_from_linear_functional(*ell).as_array(), f, tol)
    if minus is None:
        raise WitnessSearchExhausted("real functional failed verification")
    report.witnesses.append(minus)
    report.achievable_types.append(PlanarType.A_MINUS)
    if r == 3:
        return report

    found = {}
    for _ in range(max_draws):
        if PlanarType.A_Q_MINUS_N not in found:
            if len(basis) == 2:
                u, w = B[0], B[1]
            else:
                t = (rng.standard_normal((2, len(basis)))
                     + 1j * rng.standard_normal((2, len(basis))))
                u, w = t @ B
            for cand in _isotropic_in_plane(u, w):
                wit = _make_witness(PlanarType.A_Q_MINUS_N, cand, f, tol)
                if wit is not None:
                    found[PlanarType.A_Q_MINUS_N] = wit
                    break
        if PlanarType.A_ND not in found:
            t = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
            wit = _make_witness(PlanarType.A_ND, t @ B, f, tol)
            if wit is not None:
                found[PlanarType.A_ND] = wit
        if len(found) == 2:
            break
    else:
        missing = {PlanarType.A_Q_MINUS_N, PlanarType.A_ND} - set(found)
        raise WitnessSearchExhausted(
            f"no witness for {sorted(m.value for m in missing)} in {max_draws} draws")
    for kind in (PlanarType.A_Q_MINUS_N, PlanarType.A_ND):
        report.witnesses.append(found[kind])
        report.achievable_types.append(kind)
    return report
