"""Acceptance suite: one PASS/FAIL line per criterion, printed even under capture."""

from pathlib import Path

import numpy as np
import pytest

from qgframe.azb import azb_commutation_report
from qgframe.cli import main
from qgframe.crossed import (
    commutation_residuals,
    crossed_coproduct_checks,
    crossed_frame,
    crossed_structure_checks,
    inversion_automorphisms,
    semidirect_compare,
    validate_action,
)
from qgframe.fixtures import catalog_actions, haar_unitary, padded_frame, phased_frame, tampered_j, tampered_jhat
from qgframe.frame import (
    antipode_flip_residual,
    commutation_scalar,
    equivalence_report,
    irreducibility_scalar,
    rescale_J,
    selfadjointness_check,
    validate_frame,
    wbar_wtilde_checks,
)
from qgframe.groups import catalog, cyclic, fourier_check, group_frame, group_unitary, group_unitary_matrix
from qgframe.multiplicative import pentagon_residual
from qgframe.report import by_id
from qgframe.spaces import commutant, generated_algebra, space_eq, span_of
from qgframe.tensor import random_functional

ROOT = Path(__file__).resolve().parents[1]
NONABELIAN = {"S3", "D4", "Q8"}


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def frames():
    for name, g in catalog().items():
        f = group_frame(g)
        yield name, f
        yield name + "^", f.dual()


def test_criterion_01_pentagon(verdict):
    worst = max(pentagon_residual(group_unitary_matrix(g)) for g in catalog().values())
    rng = np.random.default_rng(20240601)
    residuals = [pentagon_residual(haar_unitary(4, rng)) for _ in range(100)]
    rejected = sum(r > 1e-3 for r in residuals)
    verdict(1, worst < 1e-10 and rejected >= 99,
            f"catalog max residual {worst:.2e}; Haar 4x4 rejected {rejected}/100 (min {min(residuals):.3f})")


def test_criterion_02_frame_axioms(verdict):
    failed = [name for name, f in frames() if not all(r.passed for r in validate_frame(f))]
    tampered = []
    for g in catalog().values():
        if g.order < 3:
            continue  # inversion is trivial here, so J_G = Ĵ_G and swapping them changes nothing
        for f in (tampered_jhat(g), tampered_j(g)):
            tampered.append(by_id(validate_frame(f))["frame.axiom3_conjugations"].residual)
    verdict(2, not failed and min(tampered) > 0.1,
            f"frames failing: {failed or 'none'}; tampered min residual {min(tampered):.3f} over {len(tampered)}")


def test_criterion_03_slice_structure(verdict):
    bad = []
    for name, g in catalog().items():
        mu = group_unitary(g)
        ok = (mu.S.dim == mu.Shat.dim == g.order and mu.M.is_commutative()
              and mu.Mhat.is_commutative() == (name not in NONABELIAN)
              and mu.trim_check().dim == g.order ** 2)
        if not ok:
            bad.append(name)
    verdict(3, not bad, f"groups with wrong structure: {bad or 'none'}")


def test_criterion_04_duality(verdict):
    rng = np.random.default_rng(4)
    worst = 0.0
    for g in catalog().values():
        mu = group_unitary(g)
        for _ in range(50):
            worst = max(worst, *mu.duality_residuals(*(random_functional(g.order, rng) for _ in range(3))))
    verdict(4, worst < 1e-10, f"max duality residual {worst:.2e} over 50 triples x {len(catalog())} groups")


def test_criterion_05_selfadjoint_spans(verdict):
    failed = []
    for name, f in frames():
        res = by_id(selfadjointness_check(f, 1e-8))
        if not (res["selfadjoint.S_star"].passed and res["selfadjoint.S_is_M"].passed):
            failed.append(name)
    verdict(5, not failed, f"frames failing S* ⊆ span S or span S = M: {failed or 'none'}")


def test_criterion_06_antipode_flip(verdict):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _, f in frames():
        for _ in range(20):
            worst = max(worst, antipode_flip_residual(f, f.w.M.random_element(rng)))
    verdict(6, worst < 1e-10, f"max flip residual {worst:.2e} over 20 elements per frame, both sides")


def test_criterion_07_equivalence(verdict):
    catalog_ok = []
    pent = 0.0
    kmod = 0.0
    kdual = 0.0
    for name, g in catalog().items():
        f = group_frame(g)
        for h in (f, f.dual()):
            res = by_id(equivalence_report(h))
            catalog_ok.append(all(res[f"equiv.{c}"].passed for c in
                                  ("c1_trim", "c2_commutants", "c1p_C_dense", "c2p_scalar")))
            pent = max(pent, *(r.residual for r in wbar_wtilde_checks(h) if "pentagon" in r.check_id))
        k, kd = irreducibility_scalar(f), irreducibility_scalar(f.dual())
        kmod = max(kmod, k.modulus_defect, kd.modulus_defect)
        kdual = max(kdual, abs(kd.value - np.conj(k.value)))
    pad = by_id(equivalence_report(padded_frame()))
    c1, c1p = pad["equiv.c1_trim"].passed, pad["equiv.c1p_C_dense"].passed
    padded_ok = not c1 and not c1p
    ok = all(catalog_ok) and padded_ok and pent < 1e-10 and kmod < 1e-10 and kdual < 1e-10
    verdict(7, ok,
            f"catalog all conditions: {all(catalog_ok)}; padded (1)={c1} (1')={c1p} "
            f"[C dense, dim {pad['equiv.c1p_C_dense'].value}]; W̄/W̃ pentagon {pent:.2e}; "
            f"||k|-1| {kmod:.2e}; |k^ - conj k| {kdual:.2e}")


def test_criterion_08_commutation_scalar(verdict):
    defect = modulus = one = 0.0
    for _, f in frames():
        lam = commutation_scalar(f)
        defect, modulus = max(defect, lam.defect), max(modulus, lam.modulus_defect)
        one = max(one, abs(lam.value - 1))
    f = phased_frame(cyclic(3), np.exp(1j * np.pi / 4))
    lam = commutation_scalar(f).value
    fixed = abs(commutation_scalar(rescale_J(f, lam ** -0.5)).value - 1)
    verdict(8, max(defect, modulus, one, fixed) < 1e-10,
            f"defect {defect:.2e}; ||λ|-1| {modulus:.2e}; |λ-1| {one:.2e}; "
            f"synthetic λ={lam:.3f} rescaled to within {fixed:.2e} of 1")


def test_criterion_09_azb(verdict):
    worst = {}
    for n in range(1, 7):
        for r in azb_commutation_report(n, 1e-12):
            if r.residual is not None:
                worst[r.check_id] = max(worst.get(r.check_id, 0.0), r.residual)
            elif not r.passed:
                worst[r.check_id] = float("inf")
    top = max(worst, key=worst.get)
    verdict(9, max(worst.values()) < 1e-12, f"n = 1..6; largest residual {worst[top]:.2e} ({top})")


def test_criterion_10_crossed(verdict):
    failed = []
    comm = 0.0
    for name, a in catalog_actions().items():
        checks = validate_action(a) + crossed_structure_checks(a) + crossed_coproduct_checks(a)
        bad = [r.check_id for r in checks if not r.passed]
        if pentagon_residual(crossed_frame(a).w.w) >= 1e-10:
            bad.append("W1_pentagon")
        comm = max(comm, *commutation_residuals(a).values())
        if bad:
            failed.append((name, bad))
    verdict(10, not failed and comm < 1e-10,
            f"{len(catalog_actions())} actions; failures: {failed or 'none'}; max comm residual {comm:.2e}")


def test_criterion_11_semidirect(verdict):
    z2 = cyclic(2)
    cases = {
        "Z3⋊Z2 vs S3": (cyclic(3), inversion_automorphisms(cyclic(3))),
        "Z4⋊Z2 vs D4": (cyclic(4), inversion_automorphisms(cyclic(4))),
        "Z3×Z2": (cyclic(3), [[0, 1, 2], [0, 1, 2]]),
    }
    parts, ok = [], True
    for label, (h, alpha) in cases.items():
        m = semidirect_compare(h, z2, alpha)
        good = m.residual < 1e-10 and m.candidate == "left/identity" and m.perm == tuple(range(h.order * 2))
        ok &= good
        parts.append(f"{label} {m.residual:.1e}")
    verdict(11, ok, "frozen left/identity identification: " + ", ".join(parts))


def test_criterion_12_pontryagin(verdict):
    res = {str(f): fourier_check(f) for f in ([2], [3], [4], [2, 3])}
    verdict(12, max(res.values()) < 1e-10, "fourier residuals " + ", ".join(f"{k}:{v:.1e}" for k, v in res.items()))


def _random_star_gens(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    if rng.random() < 0.5:
        k = int(rng.integers(1, d))
        x[:k, k:] = 0
        x[k:, :k] = 0
    return [x, x.conj().T]


def test_criterion_13_operator_spaces(verdict):
    rng = np.random.default_rng(13)
    mismatches = 0
    for d in (2, 3, 4):
        for _ in range(25):
            gens = _random_star_gens(rng, d)
            cc = commutant(list(commutant(gens, d).basis), d)
            mismatches += not space_eq(generated_algebra(gens, d), cc, 1e-8)
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    pauli_dim = generated_algebra(paulis, 2).dim
    diag = [np.diag(v) for v in np.eye(4)]
    diag_ok = space_eq(commutant(diag, 4), span_of(diag, 4), 1e-8)
    verdict(13, mismatches == 0 and pauli_dim == 4 and diag_ok,
            f"double commutant mismatches {mismatches}/75; Pauli algebra dim {pauli_dim}; diagonal commutant ok {diag_ok}")


def test_criterion_14_determinism(verdict, tmp_path, capsys):
    argvs = [["frame-check", "S3", "--seed", "11"], ["crossed", str(ROOT / "actions" / "z2_on_z3.json")], ["azb", "4"]]
    same = []
    for i, argv in enumerate(argvs):
        outs = []
        for run in range(2):
            path = tmp_path / f"r{i}_{run}.json"
            main(argv + ["--report", str(path)])
            outs.append(path.read_bytes())
        capsys.readouterr()
        same.append(outs[0] == outs[1])
    verdict(14, all(same), f"byte-identical reports for {sum(same)}/{len(argvs)} commands")
