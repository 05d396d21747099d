"""Discrete legs of the quantum az+b group: J₂ and Ĵ₂ on ℂ^{2n}⊗ℂ^{2n}.

Indices k, ℓ live in ℤ_{2n} with representatives 0…2n−1, q = e^{iπ/n}.
The half power q^{−k²/2} is read as e^{−iπk²/(2n)}; shifting k by 2n
multiplies it by e^{−2πi(k+n)} = 1, so the choice of representative is
immaterial.  Only the discrete legs are modelled: the full pair satisfies
ĴJ = e^{−πi/n}JĴ, with the scalar coming from the continuous legs.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from .report import CheckResult, check
from .tensor import DEFAULT_TOL, Antilinear


def _check_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def q_of(n: int) -> complex:
    return cmath.exp(1j * cmath.pi / n)


def j2_coefficient(n: int, k: int, l: int) -> complex:
    """q^{kℓ} for any integer representatives k, ℓ."""
    return cmath.exp(1j * cmath.pi * k * l / n)


def j2hat_coefficient(n: int, k: int) -> complex:
    """(−1)^k q^{−k²/2} = (−1)^k e^{−iπk²/(2n)} for any integer representative k."""
    return (-1) ** (k % 2) * cmath.exp(-1j * cmath.pi * k * k / (2 * n))


def build_j2(n: int) -> Antilinear:
    """J₂(e_k⊗e_ℓ) = q^{kℓ} e_{−k}⊗e_{−ℓ}."""
    _check_n(n)
    m = 2 * n
    a = np.zeros((m * m, m * m), dtype=complex)
    for k, l in itertools.product(range(m), repeat=2):
        a[(-k % m) * m + (-l % m), k * m + l] = j2_coefficient(n, k, l)
    return Antilinear(a)


def build_j2hat(n: int) -> Antilinear:
    """Ĵ₂(e_k⊗e_ℓ) = (−1)^k q^{−k²/2} e_{−k}⊗e_{k+ℓ}."""
    _check_n(n)
    m = 2 * n
    a = np.zeros((m * m, m * m), dtype=complex)
    for k, l in itertools.product(range(m), repeat=2):
        a[(-k % m) * m + (k + l) % m, k * m + l] = j2hat_coefficient(n, k)
    return Antilinear(a)


@dataclass(frozen=True)
class AzbDiscrete:
    n: int
    q: complex
    j2: Antilinear
    j2hat: Antilinear

    @classmethod
    def build(cls, n: int) -> "AzbDiscrete":
        _check_n(n)
        return cls(n, q_of(n), build_j2(n), build_j2hat(n))


def shift_invariance_residual(n: int, shifts: range = range(-2, 3)) -> float:
    """max change of either coefficient when k or ℓ moves by a multiple of 2n."""
    m = 2 * n
    worst = 0.0
    for k, l in itertools.product(range(m), repeat=2):
        base_j, base_h = j2_coefficient(n, k, l), j2hat_coefficient(n, k)
        for s, t in itertools.product(shifts, repeat=2):
            worst = max(worst, abs(j2_coefficient(n, k + s * m, l + t * m) - base_j))
            worst = max(worst, abs(j2hat_coefficient(n, k + s * m) - base_h))
    return worst


def proof_step_residual(n: int) -> float:
    """Compare J₂Ĵ₂ and Ĵ₂J₂ on each e_k⊗e_ℓ with the closed forms.

    J₂Ĵ₂(e_k⊗e_ℓ) = (−1)^k q^{−k²/2} q^{−kℓ} e_k⊗e_{−k−ℓ}, and Ĵ₂J₂ gives
    q^{−kℓ} (−1)^k q^{−(−k)²/2} on the same vector, with −k read on its
    representative in 0…2n−1.
    """
    m = 2 * n
    j, jh = build_j2(n), build_j2hat(n)
    ab, ba = j.compose(jh), jh.compose(j)
    worst = 0.0
    for k, l in itertools.product(range(m), repeat=2):
        col = k * m + l
        row = k * m + (-k - l) % m
        pred_ab = j2hat_coefficient(n, k) * j2_coefficient(n, -k, l)
        pred_ba = j2_coefficient(n, -k, l) * j2hat_coefficient(n, -k % m)
        for mat, pred in ((ab, pred_ab), (ba, pred_ba)):
            expect = np.zeros(m * m, dtype=complex)
            expect[row] = pred
            worst = max(worst, float(np.abs(mat[:, col] - expect).max()))
    return worst


def azb_commutation_report(n: int, tol: float = 1e-12) -> list[CheckResult]:
    az = AzbDiscrete.build(n)
    j, jh = az.j2, az.j2hat
    comm = float(np.linalg.norm(j.compose(jh) - jh.compose(j)))
    q_def = max(abs(abs(az.q) - 1.0), abs(az.q ** (2 * n) - 1.0))
    return [
        check("azb.commute", "J₂Ĵ₂ = Ĵ₂J₂ (full pair: ĴJ = e^{−πi/n}JĴ, continuous legs not modelled)",
              comm, tol),
        check("azb.j2_involution", "J₂² = 1", j.involution_defect(), tol),
        check("azb.j2_self_adjoint", "J₂* = J₂ (symmetric matrix)", j.self_adjoint_defect(), tol),
        check("azb.j2hat_involution", "Ĵ₂² = 1", jh.involution_defect(), tol),
        check("azb.j2hat_self_adjoint", "Ĵ₂* = Ĵ₂ (symmetric matrix)", jh.self_adjoint_defect(), tol),
        check("azb.proof_steps", "entrywise closed forms of J₂Ĵ₂ and Ĵ₂J₂", proof_step_residual(n), tol),
        check("azb.q_root_of_unity", "|q| = 1 and q^{2n} = 1", q_def, tol, value=az.q),
        check("azb.representative_shift", "coefficients unchanged under k, ℓ ↦ k + 2ns, ℓ + 2nt",
              shift_invariance_residual(n), tol),
    ]
