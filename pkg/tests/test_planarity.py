import numpy as np
import pytest

from twistorpoly.errors import ConstantPolynomial, ZeroMap
from twistorpoly.klein import classify_point, klein_B, klein_q, sigma
from twistorpoly.planarity import (POLE_TAG, PlanarType, RLinearMap, annihilator_basis,
                                   covector_and_pole, delta_nu_rank, hyperplane_contains,
                                   hyperplane_residuals, is_planar, lambda_from_z,
                                   lambda_type, planarity_report, span_rank,
                                   z_from_linear_functional)
from twistorpoly.quat_core import I, J, K, ONE, ZERO, Quaternion
from twistorpoly.sliceregpoly import SliceRegPoly

from conftest import random_poly, random_quat

X_MAP = RLinearMap(0, -0.5, 0.5, 0)
X_PLUS_IY = RLinearMap(0, -1, 0, 0)
X_PLUS_2IY = RLinearMap(0, -1.5, -0.5, 0)
BASIS = (ONE, I, J, K)


def planar_poly(rng, degree, rank):
    """Random f whose non-constant coefficients span a real subspace of dimension rank."""
    frame = np.linalg.qr(rng.standard_normal((4, 4)))[0][:, :rank]
    coeffs = [random_quat(rng)]
    for _ in range(degree):
        coeffs.append(Quaternion(*(frame @ rng.uniform(-2, 2, rank))))
    return SliceRegPoly(coeffs)


def test_span_rank_examples():
    assert span_rank([ONE, I, J, K]) == 4
    assert span_rank([ONE, ONE * 2, ONE * 3]) == 1
    assert span_rank([I + J, I - J]) == 2
    assert span_rank([]) == 0


def test_span_rank_matches_gaussian_elimination(rng):
    import sympy
    for _ in range(20):
        ints = rng.integers(-3, 4, size=(int(rng.integers(1, 6)), 4))
        ints[rng.random(ints.shape[0]) < 0.3] = 0
        expected = sympy.Matrix(ints.tolist()).rank()
        assert span_rank([Quaternion(*row) for row in ints]) == expected


def test_is_planar_examples(rng):
    for n in range(1, 4):
        assert is_planar(random_poly(rng, n))
    for a0 in (ZERO, random_quat(rng)):
        assert not is_planar(SliceRegPoly([a0, ONE, I, J, K]))
    assert is_planar(SliceRegPoly([ZERO, ONE, ZERO, ZERO, ONE]))
    with pytest.raises(ConstantPolynomial):
        is_planar(SliceRegPoly([ONE]))


def test_planarity_ignores_constant_term(rng):
    for _ in range(30):
        f = random_poly(rng, int(rng.integers(1, 7)))
        shifted = SliceRegPoly([ZERO, *f.coeffs[1:]])
        assert is_planar(f) == is_planar(shifted)


def test_lambda_examples(rng):
    lam = lambda_from_z([9, 0, -0.5, 0.5, 0, 9])
    for _ in range(5):
        q = random_quat(rng)
        assert abs(lam(q) - q.w) < 1e-15
    zero = lambda_from_z([1, 0, 0, 0, 0, 1])
    assert zero(random_quat(rng)) == 0


def test_lambda_two_forms_agree(rng):
    for _ in range(20):
        lam = RLinearMap.from_array(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        q = random_quat(rng)
        assert abs(lam(q) - lam.evaluate_xyuv(q)) < 1e-12
        L = lam.real_matrix()
        value = L @ q.as_array()
        assert abs(complex(*value) - lam(q)) < 1e-12


def test_z_from_linear_functional_examples(rng):
    assert z_from_linear_functional(1, 0, 0, 0) == X_MAP
    assert z_from_linear_functional(0, 0, 0, 0).norm() == 0
    for _ in range(20):
        coeffs = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        lam = z_from_linear_functional(*coeffs)
        np.testing.assert_allclose([lam(e) for e in BASIS], coeffs, atol=1e-14)


def test_real_matrix_determinant_identity(rng):
    for _ in range(20):
        lam = RLinearMap.from_array(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        delta, nu, _ = delta_nu_rank(lam)
        L = lam.real_matrix()
        assert abs(np.linalg.det(L @ L.T) - (nu ** 2 - 4 * abs(delta) ** 2)) < 1e-10


def test_delta_nu_rank_examples():
    assert np.allclose(delta_nu_rank(X_MAP), (-0.25, 0.5, 1))
    assert np.allclose(delta_nu_rank(X_PLUS_IY), (0, 1, 2))
    assert np.allclose(delta_nu_rank(X_PLUS_2IY), (0.75, 2.5, 2))
    assert lambda_type(X_MAP) is PlanarType.A_MINUS
    assert lambda_type(X_PLUS_IY) is PlanarType.A_Q_MINUS_N
    assert lambda_type(X_PLUS_2IY) is PlanarType.A_ND
    with pytest.raises(ZeroMap):
        delta_nu_rank(RLinearMap(0, 0, 0, 0))


def test_annihilator_examples(rng):
    assert len(annihilator_basis(SliceRegPoly([ZERO, ZERO, ZERO, ONE]))) == 3
    assert annihilator_basis(SliceRegPoly([ZERO, ONE, I, J, K])) == []
    for _ in range(20):
        f = planar_poly(rng, 5, int(rng.integers(1, 4)))
        for lam in annihilator_basis(f):
            for a in f.coeffs[1:]:
                assert abs(lam(a)) < 1e-10


def test_covector_and_pole_examples():
    f = SliceRegPoly([ZERO, ONE * 2, I])
    z, pole = covector_and_pole(X_MAP, SliceRegPoly([ZERO, I, J]))
    np.testing.assert_allclose(z, [0, 0, -0.5, 0.5, 0, 0])
    np.testing.assert_allclose(pole, [0, 0, 0.5, -0.5, 0, 0])
    with pytest.raises(ZeroMap):
        covector_and_pole(RLinearMap(0, 0, 0, 0), f)


def test_hyperplane_contains_examples(rng):
    assert hyperplane_contains(SliceRegPoly([ZERO, I]), [0, 0, 1, -1, 0, 0])
    full = SliceRegPoly([ZERO, I, J, K, ONE])
    for _ in range(10):
        z = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        z[0] = 0
        assert not hyperplane_contains(full, z)
    for _ in range(10):
        assert not hyperplane_contains(random_poly(rng, 3), [1, 0, 0, 0, 0, 0])


def test_pole_invariants(rng):
    for _ in range(50):
        f = planar_poly(rng, int(rng.integers(1, 7)), int(rng.integers(1, 4)))
        basis = annihilator_basis(f)
        B = np.array([lam.as_array() for lam in basis])
        lam = RLinearMap.from_array((rng.standard_normal(len(basis))
                                     + 1j * rng.standard_normal(len(basis))) @ B)
        z, pole = covector_and_pole(lam, f)
        assert hyperplane_contains(f, z)
        assert np.abs(hyperplane_residuals(f, z)).max() < 1e-9 * max(1, np.abs(z).max()) * 20
        delta, nu, _ = delta_nu_rank(lam)
        assert abs(klein_q(pole) - delta) < 1e-9
        assert abs(klein_B(pole, sigma(pole)) + nu) < 1e-9
        assert classify_point(pole).tag is POLE_TAG[lambda_type(lam)]


def test_report_cubic_monomial(rng):
    rep = planarity_report(SliceRegPoly([ZERO, ZERO, ZERO, ONE]), rng)
    assert rep.r == 1 and rep.planar
    assert set(rep.achievable_types) == set(PlanarType)
    for w in rep.witnesses:
        assert w.orbit.tag is POLE_TAG[w.type]


def test_report_rank_three_is_unique(rng):
    rep = planarity_report(SliceRegPoly([random_quat(rng), ONE, I, J]), rng)
    assert rep.r == 3
    assert len(rep.annihilator_basis) == 1
    assert rep.achievable_types == [PlanarType.A_MINUS]


def test_report_rank_four():
    rep = planarity_report(SliceRegPoly([ZERO, ONE, I, J, K]))
    assert rep.r == 4 and not rep.planar
    assert rep.annihilator_basis == [] and rep.witnesses == []
    assert rep.largest_discarded is None and rep.smallest_retained > 0


def test_report_invariants(rng):
    for _ in range(30):
        r = int(rng.integers(1, 4))
        f = planar_poly(rng, int(rng.integers(r, 7)), r)
        rep = planarity_report(f, rng)
        assert rep.r == r and rep.planar
        assert len(rep.annihilator_basis) == 4 - r
        expected = {PlanarType.A_MINUS} if r == 3 else set(PlanarType)
        assert set(rep.achievable_types) == expected
        for w in rep.witnesses:
            assert lambda_type(w.lam) is w.type
            assert hyperplane_contains(f, w.covector)
        assert rep.to_json()["types"] == [t.value for t in rep.achievable_types]


def test_report_is_deterministic_for_seed():
    f = SliceRegPoly([ONE, ONE, I])
    a = planarity_report(f, np.random.default_rng(5)).to_json()
    b = planarity_report(f, np.random.default_rng(5)).to_json()
    assert a == b
