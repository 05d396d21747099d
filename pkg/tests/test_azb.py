import cmath

import numpy as np
import pytest

from qgframe.azb import (
    AzbDiscrete,
    azb_commutation_report,
    build_j2,
    build_j2hat,
    j2_coefficient,
    j2hat_coefficient,
    proof_step_residual,
    shift_invariance_residual,
)


def basis(n, k, l):
    m = 2 * n
    v = np.zeros(m * m, dtype=complex)
    v[(k % m) * m + l % m] = 1
    return v


def test_j2_examples():
    j = build_j2(1)
    assert np.allclose(j.apply(basis(1, 0, 1)), basis(1, 0, 1))
    for n in range(1, 7):
        assert np.allclose(build_j2(n).apply(basis(n, 0, 0)), basis(n, 0, 0))


def test_j2hat_examples():
    for n in range(1, 7):
        jh = build_j2hat(n)
        for l in range(2 * n):
            assert np.allclose(jh.apply(basis(n, 0, l)), basis(n, 0, l))
    assert abs(j2hat_coefficient(2, 1) + cmath.exp(-1j * cmath.pi / 4)) < 1e-15
    jh = build_j2hat(2)
    assert np.allclose(jh.apply(basis(2, 1, 0)), -cmath.exp(-1j * cmath.pi / 4) * basis(2, -1, 1))


def test_involutions_and_symmetry():
    for n in range(1, 7):
        for j in (build_j2(n), build_j2hat(n)):
            assert j.self_adjoint_defect() < 1e-12
            assert j.involution_defect() < 1e-12


def test_commute():
    for n in range(1, 7):
        j, jh = build_j2(n), build_j2hat(n)
        assert np.linalg.norm(j.compose(jh) - jh.compose(j)) < 1e-12


def test_commutation_scalar_is_one():
    for n in (1, 3):
        az = AzbDiscrete.build(n)
        ab = az.j2.compose(az.j2hat)
        ba = az.j2hat.compose(az.j2)
        lam = np.trace(ab @ np.linalg.inv(ba)) / ab.shape[0]
        assert abs(lam - 1) < 1e-12


def test_proof_steps_and_shift():
    for n in range(1, 7):
        assert proof_step_residual(n) < 1e-12
        assert shift_invariance_residual(n) < 1e-12


def test_q():
    for n in range(1, 7):
        q = AzbDiscrete.build(n).q
        assert abs(abs(q) - 1) < 1e-15 and abs(q ** (2 * n) - 1) < 1e-12
        assert abs(j2_coefficient(n, 1, 1) - q) < 1e-15


def test_report():
    assert all(r.passed for r in azb_commutation_report(1, 1e-14))
    assert all(r.passed for r in azb_commutation_report(3))


def test_bad_n():
    for bad in (0, -1, 1.5):
        with pytest.raises(ValueError):
            build_j2(bad)
        with pytest.raises(ValueError):
            build_j2hat(bad)
