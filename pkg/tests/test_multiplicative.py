import numpy as np
import pytest

from qgframe.fixtures import haar_unitary, padded_frame
from qgframe.groups import (
    catalog,
    cyclic,
    dual_group_frame,
    group_unitary,
    group_unitary_matrix,
    point_mass_pairing,
    regular_rep,
    symmetric,
)
from qgframe.multiplicative import (
    MultiplicativeUnitary,
    NotMultiplicativeError,
    coassociativity_residual,
    comultiply,
    density_span_bruteforce,
    dual_unitary,
    pairing,
    pentagon_residual,
)
from qgframe.spaces import space_eq, span_of
from qgframe.tensor import (
    Functional,
    LayoutError,
    matrix_unit_functional,
    random_functional,
    slice_left,
    slice_right,
)


def test_pentagon_examples():
    assert pentagon_residual(np.eye(4)) == 0.0
    assert pentagon_residual(group_unitary_matrix(cyclic(3))) < 1e-12
    rng = np.random.default_rng(0)
    assert pentagon_residual(haar_unitary(4, rng)) > 0.1
    with pytest.raises(LayoutError):
        pentagon_residual(np.eye(6))
    with pytest.raises(LayoutError):
        pentagon_residual(np.eye(4)[:3])


def test_constructor_rejects_bad_input():
    with pytest.raises(NotMultiplicativeError):
        MultiplicativeUnitary(2 * np.eye(4))
    rng = np.random.default_rng(1)
    with pytest.raises(NotMultiplicativeError):
        MultiplicativeUnitary(haar_unitary(9, rng))


def test_slice_spaces_for_groups():
    mu = group_unitary(cyclic(3))
    assert mu.S.dim == 3
    assert space_eq(mu.S, span_of([np.diag(v) for v in np.eye(3)], 3))
    s3 = symmetric(3)
    mu6 = group_unitary(s3)
    assert mu6.Shat.dim == 6 and not mu6.Shat.is_commutative()
    assert space_eq(mu6.Shat, span_of([regular_rep(s3, p) for p in range(6)], 6))
    ident = MultiplicativeUnitary(np.eye(4))
    assert ident.S.dim == 1 and ident.Shat.dim == 1


def test_dual_unitary():
    for g in catalog().values():
        w = group_unitary_matrix(g)
        assert np.array_equal(dual_unitary(dual_unitary(w)), w)
        assert np.array_equal(dual_unitary(w), dual_group_frame(g).w.w)
    mu = group_unitary(symmetric(3))
    assert space_eq(mu.dual().S, mu.Shat.adjoint())


def test_dual_group_unitary_explicit_z3():
    g = cyclic(3)
    w0 = dual_group_frame(g).w.w
    for a in range(3):
        for b in range(3):
            col = np.zeros(9)
            col[g.mul(g.inv[b], a) * 3 + b] = 1
            assert np.array_equal(w0[:, a * 3 + b], col)


def test_comultiplication_examples():
    g = cyclic(3)
    w = group_unitary_matrix(g)
    assert np.allclose(comultiply(w, np.eye(3)), np.eye(9))
    f = np.array([1.0, 2.0, 5.0])
    phi = comultiply(w, np.diag(f))
    expect = [f[g.mul(p, q)] for p in range(3) for q in range(3)]
    assert np.allclose(phi, np.diag(expect))
    what = dual_unitary(w)
    for p in range(3):
        lam = regular_rep(g, p)
        assert np.allclose(comultiply(what, lam), np.kron(lam, lam))
    with pytest.raises(LayoutError):
        comultiply(w, np.eye(2))


def test_coassociativity():
    rng = np.random.default_rng(2)
    assert coassociativity_residual(np.eye(4), rng.normal(size=(2, 2))) == 0.0
    mu = group_unitary(symmetric(3))
    for _ in range(20):
        assert coassociativity_residual(mu.w, mu.M.random_element(rng)) < 1e-10
    mu4 = group_unitary(cyclic(4)).dual()
    for x in mu4.M.basis:
        assert coassociativity_residual(mu4.w, x) < 1e-10


def test_pairing_point_masses():
    for n in (2, 3):
        g = cyclic(n)
        for r in range(n):
            for s in range(n):
                assert point_mass_pairing(g, r, s) == (1.0 if r == s else 0.0)
    rng = np.random.default_rng(3)
    psi, om = random_functional(2, rng), random_functional(2, rng)
    assert abs(pairing(psi, om, np.eye(4)) - psi(np.eye(2)) * om(np.eye(2))) < 1e-12


def test_duality_residuals():
    ident = MultiplicativeUnitary(np.eye(4))
    rng = np.random.default_rng(4)
    assert max(ident.duality_residuals(*(random_functional(2, rng) for _ in range(3)))) < 1e-15
    mu = group_unitary(cyclic(2))
    units = [matrix_unit_functional(2, i, j) for i in range(2) for j in range(2)]
    for a in units:
        for b in units:
            for c in units:
                first, second = mu.duality_residuals(a, b, c)
                assert first < 1e-12 and second < 1e-12
    mu6 = group_unitary(symmetric(3))
    for _ in range(50):
        r = mu6.duality_residuals(*(random_functional(6, rng) for _ in range(3)))
        assert max(r) < 1e-10


def test_duality_residuals_detect_unflipped_coproduct():
    """Without the flip the second identity fails once M is noncommutative."""
    mu = group_unitary(symmetric(3)).dual()
    rng = np.random.default_rng(5)
    w = mu.w
    worst = 0.0
    for _ in range(5):
        p1, p2, om = (random_functional(6, rng) for _ in range(3))
        m1, m2 = slice_right(w, p1), slice_right(w, p2)
        unflipped = comultiply(dual_unitary(w), slice_left(w, om))
        worst = max(worst, abs(p1.tensor(p2)(unflipped) - om(m1 @ m2)))
    assert worst > 1e-3


def test_trim_examples():
    for name in ("Z2", "Z3", "Z4", "Z6", "S3"):
        g = catalog()[name]
        t = group_unitary(g).trim_check()
        assert t.trim and t.dim == g.order ** 2
    t = MultiplicativeUnitary(np.eye(4)).trim_check()
    assert (t.trim, t.dim) == (False, 1)
    assert not padded_frame().w.trim_check().trim


def test_c_and_d_spaces():
    mu = group_unitary(cyclic(3))
    assert mu.C.dim == 9 and mu.D.dim == 9
    assert MultiplicativeUnitary(np.eye(4)).C.dim == 4


def test_membership_and_algebra():
    for name in ("Z3", "S3"):
        mu = group_unitary(catalog()[name])
        assert mu.membership_residual() < 1e-10
        assert mu.algebra_residual() < 1e-10
        assert mu.algebra_residual(hat=True) < 1e-10


def test_nondegeneracy():
    mu = group_unitary(symmetric(3))
    xi = np.ones(6) / np.sqrt(6)
    assert mu.nondegeneracy_rank(xi) == 6
    assert mu.nondegeneracy_rank(xi, hat=True) == 1  # λ_p fixes the constant vector
    assert mu.nondegeneracy_rank(np.eye(6)[0], hat=True) == 6


def test_density_rank_matches_bruteforce():
    cases = [group_unitary_matrix(cyclic(2)), group_unitary_matrix(cyclic(3)), np.eye(4),
             dual_unitary(group_unitary_matrix(cyclic(3)))]
    for w in cases:
        mu = MultiplicativeUnitary(w)
        assert mu.density_rank() == density_span_bruteforce(w)
    assert group_unitary(symmetric(3)).density_rank() == 36 ** 2


def test_functional_size_mismatch():
    mu = group_unitary(cyclic(2))
    with pytest.raises(LayoutError):
        mu.duality_residuals(Functional(np.eye(3)), Functional(np.eye(2)), Functional(np.eye(2)))
