"""GL(2,H) acting on polynomials through their twistor lifts.

T = (alpha, beta; gamma, delta) acts on graph matrices by
Phi -> (C + D Phi)(A + B Phi)^-1 with A = rho(alpha) etc. The action is
defined for f exactly when det(A + B Phi_f(v)) has no zero in the upper
half-plane. Lower-triangular elements (beta = 0) act on every polynomial,
coefficient-wise:

    u_0 = (gamma + delta a_0) alpha^-1,    u_m = delta a_m alpha^-1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy
from scipy.spatial.transform import Rotation

from .errors import (ConstantPolynomial, NotAdmissibleForConstant,
                     NotLowerTriangular, SingularElement)
from .quat_core import (EPS, GL2HElement, I, J, K, ONE, ZERO, Quaternion,
                        hamilton, quat_inv, rho_mat, rho_quat)
from .sliceregpoly import SliceRegPoly, graph_matrix_at

__all__ = [
    "GL2HElement", "NormalForm", "is_invertible", "is_globally_admissible",
    "admissibility_polynomial", "exact_admissibility_polynomial", "admissibility_roots", "is_admissible_for",
    "transform_constant", "transformed_graph_matrix", "act_gamma",
    "group_law_check", "normalize", "orbit_equal", "orbit_invariants",
    "is_transitive_degree", "faithfulness_probe", "scalar_distance",
]


def _scale(T: GL2HElement) -> float:
    return max(1.0, max(q.norm() for q in T.entries()))


def is_invertible(T: GL2HElement, tol: float = EPS) -> bool:
    # det rho_mat(T) is real and >= 0 for quaternionic matrices
    return np.linalg.det(rho_mat(T)).real > tol * _scale(T) ** 4


def _require_invertible(T: GL2HElement, tol: float) -> None:
    if not is_invertible(T, tol):
        raise SingularElement(f"{T!r} is not invertible")


def is_globally_admissible(T: GL2HElement, tol: float = EPS) -> bool:
    _require_invertible(T, tol)
    return T.beta.norm() <= tol


def admissibility_polynomial(T: GL2HElement, f: SliceRegPoly) -> np.ndarray:
    """Ascending coefficients of D(v) = det(rho(alpha) + rho(beta) Phi_f(v))."""
    A, B = rho_quat(T.alpha), rho_quat(T.beta)
    n = f.degree
    mats = np.zeros((n + 1, 2, 2), dtype=complex)
    for m, a in enumerate(f.coeffs):
        mats[m] = B @ rho_quat(a)
    mats[0] += A
    return (np.convolve(mats[:, 0, 0], mats[:, 1, 1])
            - np.convolve(mats[:, 0, 1], mats[:, 1, 0]))


def _trim(coeffs: np.ndarray, tol: float) -> np.ndarray:
    scale = np.abs(coeffs).max() if coeffs.size else 0.0
    end = coeffs.size
    while end > 0 and abs(coeffs[end - 1]) <= tol * scale:
        end -= 1
    return coeffs[:end]


def admissibility_roots(T: GL2HElement, f: SliceRegPoly,
                        tol: float = EPS) -> np.ndarray:
    D = _trim(admissibility_polynomial(T, f), tol)
    if D.size <= 1:
        return np.zeros(0, dtype=complex)
    return np.roots(D[::-1])


def exact_admissibility_polynomial(T: GL2HElement, f: SliceRegPoly) -> list[Fraction]:
    """Exact ascending coefficients of D(v), which are real.

    A + B Phi_f(v) = sum_m v^m rho(c_m) with c_0 = alpha + beta a_0 and
    c_m = beta a_m, and det sum_m v^m rho(c_m) has coefficients
    D_k = sum_{a+b=k} <c_a, c_b> (Euclidean inner product on R^4).
    """
    beta = _exact(T.beta)
    c = [hamilton(beta, _exact(a)) for a in f.coeffs]
    c[0] = tuple(x + y for x, y in zip(c[0], _exact(T.alpha)))
    n = len(c) - 1
    out = [Fraction(0)] * (2 * n + 1)
    for a in range(n + 1):
        for b in range(n + 1):
            out[a + b] += sum(x * y for x, y in zip(c[a], c[b]))
    return out


def _all_roots_real(coeffs: list[Fraction]) -> bool:
    """Exact test: every root of the rational polynomial is real (with multiplicity)."""
    v = sympy.Symbol("v")
    P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                   v, domain="QQ")
    if P.is_zero:
        return False
    _, factors = P.sqf_list()
    real = sum(mult * factor.count_roots() for factor, mult in factors)
    return real == P.degree()


def is_admissible_for(T: GL2HElement, f: SliceRegPoly, tol: float = EPS) -> bool:
    """No root of D(v) lies in the open upper half-plane.

    Roots with |Im| <= tol count as real. Because companion eigenvalues split
    a k-fold real root by about eps^(1/k), an exact real-root count on the
    rational coefficients is consulted before the floating-point test.
    """
    _require_invertible(T, tol)
    D = _trim(admissibility_polynomial(T, f), tol)
    if D.size == 0:
        # det vanishes identically
        return False
    if D.size == 1:
        return True
    if _all_roots_real(exact_admissibility_polynomial(T, f)):
        return True
    roots = np.roots(D[::-1])
    return not bool(np.any(roots.imag > tol))


def transform_constant(T: GL2HElement, a: Quaternion, tol: float = EPS) -> Quaternion:
    den = T.alpha + T.beta * a
    if den.norm() <= tol:
        raise NotAdmissibleForConstant(f"alpha + beta a vanishes for a = {a!r}")
    return (T.gamma + T.delta * a) * quat_inv(den)


def transformed_graph_matrix(T: GL2HElement, f: SliceRegPoly, v: complex,
                             tol: float = EPS) -> np.ndarray:
    """Phi_{T*f}(v) = (C + D Phi_f(v))(A + B Phi_f(v))^-1 for any admissible T."""
    Phi = graph_matrix_at(f, v)
    A, B = rho_quat(T.alpha), rho_quat(T.beta)
    C, D = rho_quat(T.gamma), rho_quat(T.delta)
    den = A + B @ Phi
    if abs(np.linalg.det(den)) <= tol * max(1.0, np.abs(den).max()) ** 2:
        raise SingularElement(f"T moves G_f({v}) out of the affine chart")
    return (C + D @ Phi) @ np.linalg.inv(den)


def _exact(q: Quaternion) -> tuple:
    return tuple(Fraction(c) for c in q)


def _exact_inv(q: Quaternion) -> tuple:
    w, x, y, z = _exact(q)
    n2 = w * w + x * x + y * y + z * z
    return (w / n2, -x / n2, -y / n2, -z / n2)


def act_gamma(T: GL2HElement, f: SliceRegPoly, tol: float = EPS) -> SliceRegPoly:
    """Coefficients are evaluated in exact rational arithmetic and rounded once.

    Exactness makes the real-scalar quotient hold bit for bit: any rT whose
    entries are representable gives the same floats as T.
    """
    _require_invertible(T, tol)
    if T.beta.norm() > tol:
        raise NotLowerTriangular("coefficient action needs beta = 0")
    ainv = _exact_inv(T.alpha)
    gamma, delta = _exact(T.gamma), _exact(T.delta)
    a0, rest = f.coeffs[0], f.coeffs[1:]
    head = tuple(g + da for g, da in zip(gamma, hamilton(delta, _exact(a0))))
    u = [hamilton(head, ainv)]
    u += [hamilton(hamilton(delta, _exact(a)), ainv) for a in rest]
    return SliceRegPoly([Quaternion(*(float(c) for c in q)) for q in u], tol=f.tol)


def group_law_check(S: GL2HElement, T: GL2HElement, f: SliceRegPoly,
                    tol: float = EPS) -> bool:
    for elem in (S, T):
        if elem.beta.norm() > tol:
            raise NotLowerTriangular("group law is checked on lower-triangular elements")
    lhs = act_gamma(S @ T, f, tol)
    rhs = act_gamma(S, act_gamma(T, f, tol), tol)
    return lhs.isclose(rhs, tol)


@dataclass(frozen=True)
class NormalForm:
    """q^n + sum_{m=1}^{n-1} q^m b_m, stored as b_1..b_{n-1}."""

    degree: int
    monic_coeffs: tuple[Quaternion, ...]

    @property
    def real_parts(self) -> np.ndarray:
        return np.array([b.w for b in self.monic_coeffs])

    @property
    def imag_vectors(self) -> np.ndarray:
        """(n-1) x 3 array of imaginary parts."""
        return np.array([b.imag for b in self.monic_coeffs]).reshape(-1, 3)

    def to_poly(self) -> SliceRegPoly:
        return SliceRegPoly([ZERO, *self.monic_coeffs, ONE])

    def canonical(self, tol: float = EPS) -> "NormalForm":
        """Representative of the SO(3) class in a fixed frame.

        The first non-zero v goes to the positive x-axis, the first v
        independent of it into the upper xy half-plane.
        """
        V = self.imag_vectors
        scale = max(1.0, np.abs(V).max(initial=0.0))
        basis = []
        for v in V:
            for e in basis:
                v = v - (v @ e) * e
            if np.linalg.norm(v) > tol * scale:
                basis.append(v / np.linalg.norm(v))
            if len(basis) == 2:
                break
        if not basis:
            return self
        if len(basis) == 1:
            e1 = basis[0]
            helper = np.eye(3)[np.argmin(np.abs(e1))]
            e2 = helper - (helper @ e1) * e1
            basis.append(e2 / np.linalg.norm(e2))
        R = np.array([basis[0], basis[1], np.cross(basis[0], basis[1])])
        coeffs = tuple(Quaternion(b.w, *(R @ b.imag)) for b in self.monic_coeffs)
        return NormalForm(self.degree, coeffs)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "monic_coeffs": [b.to_json() for b in self.monic_coeffs],
            "x": self.real_parts.tolist(),
            "v": self.imag_vectors.tolist(),
        }


def normalize(f: SliceRegPoly, tol: float = EPS) -> tuple[NormalForm, GL2HElement]:
    if f.degree < 1:
        raise ConstantPolynomial("normal forms are defined for degree >= 1")
    an = f.leading
    Tf = GL2HElement(an, ZERO, -f.coeffs[0], ONE)
    ainv = quat_inv(an, tol)
    nf = NormalForm(f.degree, tuple(a * ainv for a in f.coeffs[1:-1]))
    return nf, Tf


def _quat_from_rotation(R: np.ndarray) -> Quaternion:
    x, y, z, w = Rotation.from_matrix(R).as_quat()
    if w < 0:
        w, x, y, z = -w, -x, -y, -z
    return Quaternion(w, x, y, z)


def _aligning_rotation(src: np.ndarray, dst: np.ndarray, tol: float) -> np.ndarray:
    """Rotation R in SO(3) minimizing ||R src - dst|| for 3 x m stacks."""
    U, s, Vt = np.linalg.svd(dst @ src.T)
    R = U @ Vt
    if np.linalg.det(R) < 0:
        span = int(np.sum(np.linalg.svd(src, compute_uv=False)
                          > tol * max(1.0, np.abs(src).max())))
        if span == 3:
            # best orthogonal aligner is a reflection; caller's residual check rejects it
            R = U @ np.diag([1.0, 1.0, -1.0]) @ Vt
        else:
            # precompose with the reflection across the span of the sources
            n = np.linalg.svd(src)[0][:, 2]
            R = R @ (np.eye(3) - 2 * np.outer(n, n))
    return R


def orbit_equal(f: SliceRegPoly, h: SliceRegPoly,
                tol: float = EPS) -> tuple[bool, Optional[Quaternion]]:
    """Decide f ~ h under the lower-triangular action; return a conjugator eta.

    On success eta satisfies eta N(f)_m eta^-1 = N(h)_m for every intermediate
    normalized coefficient.
    """
    if f.degree < 1 or h.degree < 1:
        raise ConstantPolynomial("orbit equivalence is decided for degree >= 1")
    if f.degree != h.degree:
        return False, None
    nf, _ = normalize(f, tol)
    nh, _ = normalize(h, tol)
    if f.degree == 1:
        return True, ONE
    scale = max(1.0, np.abs(nf.imag_vectors).max(initial=0.0),
                np.abs(nh.imag_vectors).max(initial=0.0),
                np.abs(nf.real_parts).max(), np.abs(nh.real_parts).max())
    if np.abs(nf.real_parts - nh.real_parts).max() > tol * scale:
        return False, None
    src, dst = nf.imag_vectors.T, nh.imag_vectors.T
    if np.abs(src).max() <= tol * scale and np.abs(dst).max() <= tol * scale:
        return True, ONE
    R = _aligning_rotation(src, dst, tol)
    if np.abs(R @ src - dst).max() > tol * scale:
        return False, None
    eta = _quat_from_rotation(R)
    eta_inv = quat_inv(eta)
    for b, c in zip(nf.monic_coeffs, nh.monic_coeffs):
        if (eta * b * eta_inv - c).norm() > tol * scale:
            return False, None
    return True, eta


def orbit_invariants(f: SliceRegPoly, tol: float = EPS) -> tuple[list, list, float]:
    """(real parts, flattened Gram matrix of imaginary parts, orientation)."""
    nf, _ = normalize(f, tol)
    V = nf.imag_vectors
    gram = V @ V.T
    chosen = []
    scale = max(1.0, np.abs(V).max(initial=0.0))
    for row in V:
        trial = np.array(chosen + [row])
        if np.linalg.matrix_rank(trial, tol * scale) == len(trial):
            chosen.append(row)
        if len(chosen) == 3:
            break
    orientation = float(np.linalg.det(np.array(chosen))) if len(chosen) == 3 else 0.0
    return nf.real_parts.tolist(), gram.reshape(-1).tolist(), orientation


def is_transitive_degree(n: int) -> bool:
    if n < 1:
        raise ValueError("degree must be >= 1")
    return n == 1


DEFAULT_PROBES = (ZERO, ONE, I, J, K, Quaternion(0.3, -1.1, 0.7, 0.2))


def _probe_residual(T: GL2HElement, a: Quaternion) -> Quaternion:
    # T*a = a  <=>  gamma + delta a - a alpha = 0, linear in the entries of T
    return T.gamma + T.delta * a - a * T.alpha


def _probe_matrix(probes: Sequence[Quaternion]) -> np.ndarray:
    """Real matrix of (alpha, gamma, delta) -> stacked probe residuals."""
    cols = []
    for slot in range(3):
        for e in np.eye(4):
            entries = [ZERO, ZERO, ZERO]
            entries[slot] = Quaternion(*e)
            T = GL2HElement(entries[0], ZERO, entries[1], entries[2])
            cols.append(np.concatenate([_probe_residual(T, a).as_array() for a in probes]))
    return np.column_stack(cols)


def scalar_distance(T: GL2HElement) -> float:
    """Distance from T (beta ignored) to the nearest real multiple of the identity."""
    r = (T.alpha.w + T.delta.w) / 2
    return float(np.sqrt((T.alpha - r).norm() ** 2 + (T.delta - r).norm() ** 2
                         + T.gamma.norm() ** 2))


def faithfulness_probe(T: GL2HElement, probes: Sequence[Quaternion] = DEFAULT_PROBES,
                       tol: float = EPS) -> tuple[bool, bool]:
    """(fixes every probe constant, lies within tol of a real scalar matrix).

    The residual map has kernel exactly the real scalars once the probes
    contain 0, 1 and two non-commuting imaginaries. With s its smallest
    non-zero singular value and N probes, ||residuals|| >= s * distance, so
    the fixing threshold tol * s / sqrt(N) makes "fixes" imply "scalar".
    """
    if T.beta.norm() > tol:
        raise NotLowerTriangular("probe is defined on lower-triangular elements")
    probes = list(probes)
    sv = np.linalg.svd(_probe_matrix(probes), compute_uv=False)
    if sv.size < 12 or sv[-2] <= EPS * sv[0]:
        raise ValueError("probe set does not separate non-scalar elements")
    threshold = tol * sv[-2] / np.sqrt(len(probes))
    fixes = all(_probe_residual(T, a).norm() <= threshold for a in probes)
    return fixes, scalar_distance(T) <= tol
