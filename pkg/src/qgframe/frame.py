"""Quantum group frames (W, J, Ĵ) and their derived structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .multiplicative import MultiplicativeUnitary, dual_unitary, legs3, pentagon_residual
from .report import CheckResult, check, predicate
from .spaces import containment_residual, is_dense, space_eq
from .tensor import DEFAULT_TOL, Antilinear, LayoutError, flip, unitarity_defect


class FrameHypothesisError(ValueError):
    """J, Ĵ fail the shared hypotheses (involutive, self-adjoint, W* identity)."""


@dataclass(frozen=True)
class Frame:
    w: MultiplicativeUnitary
    j: Antilinear
    jhat: Antilinear

    def __post_init__(self):
        if self.j.dim != self.w.n or self.jhat.dim != self.w.n:
            raise LayoutError("J and Ĵ must act on the leg space of W")

    @property
    def n(self) -> int:
        return self.w.n

    def dual(self) -> "Frame":
        return dual_frame(self)


def dual_frame(f: Frame) -> Frame:
    """(Ŵ, Ĵ, J)."""
    return Frame(f.w.dual(), f.jhat, f.j)


def conjugation_residual(f: Frame) -> float:
    """‖(Ĵ⊗J) W (Ĵ⊗J) − W*‖."""
    jj = f.jhat.tensor(f.j)
    return float(np.linalg.norm(jj.conjugate(f.w.w) - f.w.w.conj().T))


def commutant_residual(space, j: Antilinear) -> float:
    """max ‖[J a J, b]‖ over basis elements a, b; zero iff J·span·J ⊆ span′."""
    jb = np.array([j.conjugate(a) for a in space.basis])
    b = space.basis
    comm = np.einsum("iab,jbc->ijac", jb, b) - np.einsum("jab,ibc->ijac", b, jb)
    return float(np.sqrt((np.abs(comm) ** 2).sum(axis=(2, 3))).max(initial=0.0))


def validate_frame(f: Frame, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    mu = f.w
    trim = mu.trim_check()
    ax3 = max(
        f.j.self_adjoint_defect(),
        f.j.involution_defect(),
        f.jhat.self_adjoint_defect(),
        f.jhat.involution_defect(),
        conjugation_residual(f),
    )
    ax4 = max(commutant_residual(mu.M, f.j), commutant_residual(mu.Mhat, f.jhat))
    return [
        check("frame.axiom1_multiplicative", "W unitary and satisfies the Pentagon equation",
              max(unitarity_defect(mu.w), pentagon_residual(mu.w)), tol),
        check("frame.axiom2_trim", "span S·Ŝ* is all of B(H) (residual = missing dimensions)",
              mu.n ** 2 - trim.dim, tol, value=trim.dim),
        check("frame.axiom3_conjugations", "J, Ĵ self-adjoint involutions and W* = (Ĵ⊗J)W(Ĵ⊗J)", ax3, tol),
        check("frame.axiom4_commutants", "J M J ⊆ M′ and Ĵ M̂ Ĵ ⊆ M̂′", ax4, tol),
    ]


def is_frame(f: Frame, tol: float = DEFAULT_TOL) -> bool:
    return all(r.passed for r in validate_frame(f, tol))


def antipode_R(f: Frame, m: np.ndarray) -> np.ndarray:
    """R(m) = Ĵ m* Ĵ."""
    return f.jhat.conjugate(m.conj().T)


def antipode_Rhat(f: Frame, mh: np.ndarray) -> np.ndarray:
    """R̂(m̂) = J m̂* J."""
    return f.j.conjugate(mh.conj().T)


def antipode_space_check(f: Frame, tol: float = 1e-8) -> list[CheckResult]:
    mu = f.w
    s_conj, s_adj = mu.S.conjugated(f.jhat), mu.S.adjoint()
    sh_conj, sh_adj = mu.Shat.conjugated(f.j), mu.Shat.adjoint()
    m_conj = mu.M.conjugated(f.jhat)
    return [
        check("antipode_spaces.S", "Ĵ S Ĵ = S*", _eq_residual(s_conj, s_adj), tol),
        check("antipode_spaces.Shat", "J Ŝ J = Ŝ*", _eq_residual(sh_conj, sh_adj), tol),
        check("antipode_spaces.M", "Ĵ M Ĵ = M", _eq_residual(m_conj, mu.M), tol),
    ]


def _eq_residual(a, b) -> float:
    if a.dim != b.dim:
        return float("inf")
    return max(containment_residual(a, b), containment_residual(b, a))


def selfadjointness_check(f: Frame, tol: float = 1e-8) -> list[CheckResult]:
    mu = f.w
    return [
        check("selfadjoint.S_star", "S* ⊆ span S", containment_residual(mu.S, mu.S.adjoint()), tol),
        check("selfadjoint.Shat_star", "Ŝ* ⊆ span Ŝ", containment_residual(mu.Shat, mu.Shat.adjoint()), tol),
        check("selfadjoint.S_is_M", "span S = M", _eq_residual(mu.S, mu.M), tol),
        check("selfadjoint.Shat_is_Mhat", "span Ŝ = M̂", _eq_residual(mu.Shat, mu.Mhat), tol),
    ]


def antipode_flip_residual(f: Frame, m: np.ndarray) -> float:
    """‖Φ(R(m)) − σ((R⊗R)Φ(m))‖ for m projected onto M."""
    mu = f.w
    m = mu.M.project(m)
    n = mu.n
    jj = f.jhat.tensor(f.jhat)
    s = flip((n, n))
    lhs = mu.comultiply(antipode_R(f, m))
    phi = mu.comultiply(m)
    rhs = s @ jj.conjugate(phi.conj().T) @ s
    return float(np.linalg.norm(lhs - rhs))


def wbar_wtilde(f: Frame) -> tuple[np.ndarray, np.ndarray]:
    """W̄ = (J⊗J)ΣW*Σ(J⊗J) and W̃ = (Ĵ⊗Ĵ)ΣW*Σ(Ĵ⊗Ĵ)."""
    what = dual_unitary(f.w.w)
    return f.j.tensor(f.j).conjugate(what), f.jhat.tensor(f.jhat).conjugate(what)


class ScalarResult(NamedTuple):
    value: complex
    defect: float
    modulus_defect: float
    ok: bool


def irreducibility_operator(f: Frame) -> np.ndarray:
    """(1⊗ĴJ) Σ W̄ W W̃."""
    n = f.n
    wbar, wtilde = wbar_wtilde(f)
    u = f.jhat.compose(f.j)
    return np.kron(np.eye(n), u) @ flip((n, n)) @ wbar @ f.w.w @ wtilde


def irreducibility_scalar(f: Frame, tol: float = DEFAULT_TOL) -> ScalarResult:
    t = irreducibility_operator(f)
    d = t.shape[0]
    k = complex(np.trace(t) / d)
    defect = float(np.linalg.norm(t - k * np.eye(d)))
    mod = abs(abs(k) - 1.0)
    return ScalarResult(k, defect, mod, defect < tol)


def commutation_scalar(f: Frame, tol: float = DEFAULT_TOL) -> ScalarResult:
    """λ with J Ĵ = λ Ĵ J."""
    jjh = f.j.compose(f.jhat)
    jhj = f.jhat.compose(f.j)
    ell = jjh @ np.linalg.inv(jhj)
    lam = complex(np.trace(ell) / f.n)
    defect = float(np.linalg.norm(jjh - lam * jhj))
    mod = abs(abs(lam) - 1.0)
    return ScalarResult(lam, defect, mod, defect < tol and mod < tol)


def rescale_J(f: Frame, gamma: complex, tol: float = DEFAULT_TOL) -> Frame:
    """(W, γJ, Ĵ); with γ⁻² = λ the new pair commutes."""
    if abs(abs(gamma) - 1.0) > tol:
        raise ValueError(f"|γ| must be 1, got {abs(gamma)!r}")
    return Frame(f.w, f.j.scaled(gamma), f.jhat)


def commuting_rescale(f: Frame, tol: float = DEFAULT_TOL) -> Frame:
    lam = commutation_scalar(f, tol).value
    return rescale_J(f, lam ** -0.5, tol)


def c_slice_check(f: Frame, tol: float = 1e-8) -> list[CheckResult]:
    mu = f.w
    c_star = mu.C.adjoint()
    jdj = mu.D.conjugated(f.j, f.jhat)
    return [
        check("cslices.C_dense", "C dense in B(H) (residual = missing dimensions)", mu.n ** 2 - mu.C.dim, 0.5),
        check("cslices.D_dense", "D dense in B(H) (residual = missing dimensions)", mu.n ** 2 - mu.D.dim, 0.5),
        check("cslices.C_star_JDJhat", "C* = J D Ĵ", _eq_residual(c_star, jdj), tol),
    ]


def equivalence_report(f: Frame, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Evaluate (1), (2), (1'), (2') and whether (1)∧(2) ⇔ (1')∧(2')."""
    hyp = max(f.j.self_adjoint_defect(), f.j.involution_defect(),
              f.jhat.self_adjoint_defect(), f.jhat.involution_defect(), conjugation_residual(f))
    if hyp >= tol:
        raise FrameHypothesisError(f"J, Ĵ violate the shared hypotheses (defect {hyp:.3e})")
    mu = f.w
    trim = mu.trim_check()
    c1 = trim.trim
    ax4 = max(commutant_residual(mu.M, f.j), commutant_residual(mu.Mhat, f.jhat))
    c2 = ax4 < tol
    c1p = is_dense(mu.C)
    k = irreducibility_scalar(f, tol)
    c2p = k.ok
    return [
        predicate("equiv.c1_trim", "(1) W is trim", c1, value=trim.dim),
        predicate("equiv.c2_commutants", "(2) JMJ ⊆ M′ and ĴM̂Ĵ ⊆ M̂′", c2),
        predicate("equiv.c1p_C_dense", "(1') C dense in B(H)", c1p, value=mu.C.dim),
        predicate("equiv.c2p_scalar", "(2') (1⊗ĴJ)ΣW̄WW̃ is scalar", c2p, value=k.value),
        predicate("equiv.equivalence", "(1)∧(2) ⇔ (1')∧(2')", (c1 and c2) == (c1p and c2p)),
    ]


def wbar_wtilde_checks(f: Frame, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    wbar, wtilde = wbar_wtilde(f)
    n = f.n
    wb12, _, _ = legs3(wbar)
    _, _, w23 = legs3(f.w.w)
    return [
        check("equiv.wbar_pentagon", "W̄ is multiplicative", pentagon_residual(wbar), tol),
        check("equiv.wtilde_pentagon", "W̃ is multiplicative", pentagon_residual(wtilde), tol),
        check("equiv.wbar12_w23_commute", "W̄12 commutes with W23",
              float(np.linalg.norm(wb12 @ w23 - w23 @ wb12)), tol),
    ]
