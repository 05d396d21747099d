import json
from pathlib import Path

import numpy as np
import pytest

from qgframe.frame import validate_frame
from qgframe.groups import (
    GroupError,
    FiniteGroup,
    catalog,
    cyclic,
    dihedral,
    dual_group_frame,
    fourier_check,
    group_frame,
    group_to_spec,
    group_unitary,
    group_unitary_matrix,
    lambda_of,
    load_group,
    parse_group,
    product,
    quaternion8,
    regular_rep,
    semidirect,
    structure_report,
    symmetric,
)
from qgframe.multiplicative import pentagon_residual
from qgframe.spaces import space_eq, span_of

ROOT = Path(__file__).resolve().parents[1]


def test_constructors():
    assert cyclic(1).order == 1
    s3 = symmetric(3)
    assert s3.order == 6 and not s3.is_abelian()
    z6, z2z3 = cyclic(6), product(cyclic(2), cyclic(3))
    assert z6.order_profile() == z2z3.order_profile()
    assert dihedral(4).order_profile() != quaternion8().order_profile()
    assert quaternion8().order_profile()[4] == 6


def test_catalog_orders():
    orders = {k: g.order for k, g in catalog().items()}
    assert orders == {"Z1": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Z6": 6, "Z2xZ3": 6, "S3": 6, "D4": 8, "Q8": 8}


def test_validation_errors():
    bad_row = [[0, 1, 2], [1, 2, 0], [2, 0, 0]]
    with pytest.raises(GroupError, match="row 2 not a permutation"):
        FiniteGroup("x", np.array(bad_row))
    with pytest.raises(GroupError, match="column 0 not a permutation"):
        FiniteGroup("x", np.array([[0, 1, 2], [1, 2, 0], [1, 2, 0]]))
    # Latin square that is not associative (loop of order 5)
    loop = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(GroupError, match="associative"):
        FiniteGroup("loop", loop)
    with pytest.raises(GroupError):
        FiniteGroup("noid", np.array([[1, 0], [0, 1]]))


def test_parse_formats():
    assert parse_group({"cyclic": [2, 3]}).order == 6
    assert parse_group({"cyclic": 4}).order == 4
    s3 = symmetric(3)
    assert np.array_equal(parse_group(group_to_spec(s3)).cayley, s3.cayley)
    with pytest.raises(GroupError, match="order"):
        parse_group({"order": 3, "cayley": [[0, 1], [1, 0]]})
    with pytest.raises(GroupError):
        parse_group({"cayley": [[0, 1], [1]]})
    with pytest.raises(GroupError):
        parse_group([1, 2])


def test_group_files():
    for name in ("trivial", "z2", "z3", "z4", "s3", "d4", "q8"):
        g = load_group(ROOT / "groups" / f"{name}.json")
        spec = json.loads((ROOT / "groups" / f"{name}.json").read_text())
        assert g.order == spec["order"]
    with pytest.raises(GroupError, match="row 2 not a permutation"):
        load_group(ROOT / "groups" / "malformed.json")


def test_w_g_examples():
    assert np.array_equal(group_unitary_matrix(cyclic(1)), np.eye(1))
    w = group_unitary_matrix(cyclic(2))
    expect = np.eye(4)[:, [0, 1, 3, 2]]
    assert np.array_equal(w, expect)
    assert pentagon_residual(group_unitary_matrix(symmetric(3))) == 0.0


def test_regular_rep():
    s3 = symmetric(3)
    assert np.array_equal(regular_rep(s3, 0), np.eye(6))
    for p in range(6):
        for q in range(6):
            assert np.array_equal(regular_rep(s3, p) @ regular_rep(s3, q), regular_rep(s3, s3.mul(p, q)))
    with pytest.raises(IndexError):
        regular_rep(s3, 6)
    f = np.arange(6.0)
    assert np.allclose(lambda_of(s3, f), sum(f[p] * regular_rep(s3, p) for p in range(6)))


def test_group_frames_validate():
    for name in ("Z1", "Z6", "S3"):
        g = catalog()[name]
        res = validate_frame(group_frame(g))
        assert all(r.passed for r in res), name
    assert next(r for r in validate_frame(group_frame(cyclic(6))) if r.check_id == "frame.axiom2_trim").value == 36


def test_dual_group_frame():
    s3 = symmetric(3)
    d = dual_group_frame(s3)
    assert space_eq(d.w.M, span_of([regular_rep(s3, p) for p in range(6)], 6))
    f = group_frame(s3).dual()
    assert np.array_equal(f.w.w, d.w.w)
    assert np.array_equal(f.j.matrix, d.j.matrix) and np.array_equal(f.jhat.matrix, d.jhat.matrix)
    assert np.array_equal(dual_group_frame(cyclic(1)).w.w, np.eye(1))


def test_mhat_commutative_iff_abelian():
    for name, g in catalog().items():
        mu = group_unitary(g)
        assert mu.M.is_commutative()
        assert mu.S.dim == mu.M.dim == g.order
        assert mu.Shat.dim == mu.Mhat.dim == g.order
        assert mu.Mhat.is_commutative() == g.is_abelian(), name


def test_fourier():
    assert fourier_check([1]) == 0.0
    for factors in ([2], [3], [4], [2, 3], [2, 2]):
        assert fourier_check(factors) < 1e-10


def test_structure_report():
    r = structure_report(cyclic(3))
    assert (r["dim_M"], r["dim_Mhat"], r["trim_dim"]) == (3, 3, 9)
    assert r["M_commutative"] and r["Mhat_commutative"] and r["lambda"] == 1
    r = structure_report(symmetric(3))
    assert (r["dim_M"], r["dim_Mhat"]) == (6, 6)
    assert r["M_commutative"] and not r["Mhat_commutative"]
    assert structure_report(cyclic(1))["dim_M"] == 1


def test_semidirect_product():
    z3, z2 = cyclic(3), cyclic(2)
    g = semidirect(z3, z2, [[0, 1, 2], [0, 2, 1]])
    assert g.order == 6 and not g.is_abelian()
    assert g.order_profile() == symmetric(3).order_profile()
    d = semidirect(cyclic(4), z2, [[0, 1, 2, 3], [0, 3, 2, 1]])
    assert d.order_profile() == dihedral(4).order_profile()
