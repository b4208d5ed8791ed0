import numpy as np
import pytest

from twistorpoly.quat_core import GL2HElement, Quaternion, ZERO
from twistorpoly.sliceregpoly import SliceRegPoly


def random_quat(rng, lo=-2.0, hi=2.0) -> Quaternion:
    return Quaternion(*rng.uniform(lo, hi, 4))


def random_poly(rng, degree, lo=-2.0, hi=2.0) -> SliceRegPoly:
    coeffs = [random_quat(rng, lo, hi) for _ in range(degree + 1)]
    while coeffs[-1].norm() < 0.1:
        coeffs[-1] = random_quat(rng, lo, hi)
    return SliceRegPoly(coeffs)


def random_lower(rng) -> GL2HElement:
    """Random element of the lower-triangular subgroup with alpha, delta away from 0."""
    def unit_ish():
        q = random_quat(rng, -1, 1)
        return q + Quaternion(2.0 if q.w >= 0 else -2.0)
    return GL2HElement(unit_ish(), ZERO, random_quat(rng), unit_ish())


def upper_half_plane(rng, k):
    return rng.uniform(-2, 2, k) + 1j * rng.uniform(0.2, 2, k)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
