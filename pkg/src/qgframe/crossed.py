"""Actions of a finite group on a frame, and the crossed-product frame.

Layouts: U acts on H⊗ℂ^G; W¹ acts on the four legs (H, ℂ^G, H, ℂ^G).
Actions are given element by element; the homomorphism property is
checked rather than assumed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .frame import Frame, validate_frame
from .groups import (
    FiniteGroup,
    GroupError,
    dual_group_frame,
    group_frame,
    parse_group,
    regular_rep,
    semidirect,
)
from .multiplicative import MultiplicativeUnitary, dual_unitary, pentagon_residual
from .report import CheckResult, check
from .spaces import containment_residual, generated_algebra, span_of
from .tensor import DEFAULT_TOL, Antilinear, LayoutError, embed_legs


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class GroupAction:
    group: FiniteGroup
    target: Frame
    u: np.ndarray  # shape (|G|, n, n); u[p] is u_p

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        n = self.target.n
        if u.shape != (self.group.order, n, n):
            raise LayoutError(
                f"action needs {self.group.order} unitaries of size {n}x{n}, got shape {u.shape}"
            )
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        return self.target.n

    @property
    def m(self) -> int:
        return self.group.order


def perm_matrix(perm: Sequence[int]) -> np.ndarray:
    """δ_i ↦ δ_{perm[i]}."""
    perm = list(perm)
    p = np.zeros((len(perm), len(perm)))
    p[perm, np.arange(len(perm))] = 1.0
    return p


def _antilinear_commutes(j: Antilinear, u: np.ndarray) -> float:
    """‖J u − u J‖ at matrix level: A·conj(u) − u·A."""
    return float(np.linalg.norm(j.matrix @ u.conj() - u @ j.matrix))


def validate_action(a: GroupAction, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    g, u, w = a.group, a.u, a.target.w.w
    n = a.n
    hom = 0.0
    for p, q in itertools.product(range(g.order), repeat=2):
        hom = max(hom, float(np.linalg.norm(u[p] @ u[q] - u[g.mul(p, q)])))
    hom = max(hom, float(np.linalg.norm(u[0] - np.eye(n))))
    unit = max(float(np.linalg.norm(x.conj().T @ x - np.eye(n))) for x in u)
    cond1 = max(float(np.linalg.norm(w @ np.kron(x, x) - np.kron(x, x) @ w)) for x in u)
    cond2 = max(max(_antilinear_commutes(a.target.j, x), _antilinear_commutes(a.target.jhat, x)) for x in u)
    return [
        check("action.cond1_W_commutes", "W(u_p⊗u_p) = (u_p⊗u_p)W", cond1, tol),
        check("action.cond2_J_commutes", "J u_p = u_p J and Ĵ u_p = u_p Ĵ", cond2, tol),
        check("action.homomorphism", "u_p u_q = u_pq and u_e = 1", hom, tol),
        check("action.unitary", "every u_p unitary", unit, tol),
    ]


def action_unitary(a: GroupAction) -> np.ndarray:
    """(Uξ)(p) = u_{p⁻¹} ξ(p): block u_{p⁻¹} at G-index p."""
    g = a.group
    u = np.zeros((a.n * a.m, a.n * a.m), dtype=complex)
    for p in range(g.order):
        e = np.zeros((g.order, g.order))
        e[p, p] = 1.0
        u += np.kron(a.u[g.inv[p]], e)
    return u


def _g_frame(a: GroupAction) -> Frame:
    return dual_group_frame(a.group)


class CrossedParts(NamedTuple):
    w1: np.ndarray
    j1: Antilinear
    jhat1: Antilinear
    u: np.ndarray
    w0: np.ndarray


def crossed_parts(a: GroupAction) -> CrossedParts:
    n, m = a.n, a.m
    lay = (n, m, n, m)
    f0 = _g_frame(a)
    u = action_unitary(a)
    w0 = f0.w.w
    w1 = embed_legs(w0, lay, (1, 3)) @ embed_legs(u, lay, (0, 3)) @ embed_legs(a.target.w.w, lay, (0, 2))
    j1 = Antilinear(np.kron(a.target.j.matrix, f0.j.matrix) @ u.conj())
    jhat1 = Antilinear(np.kron(a.target.jhat.matrix, f0.jhat.matrix))
    return CrossedParts(w1, j1, jhat1, u, w0)


def crossed_frame(a: GroupAction, tol: float = DEFAULT_TOL) -> Frame:
    """(W¹, J¹, Ĵ¹) with W¹ = W⁰₂₄U₁₄W₁₃, J¹ = (J⊗J⁰)U, Ĵ¹ = Ĵ⊗Ĵ⁰."""
    bad = [r for r in validate_action(a, tol) if not r.passed]
    if bad:
        raise ActionError("invalid action: " + ", ".join(f"{r.check_id} ({r.residual:.3e})" for r in bad))
    parts = crossed_parts(a)
    return Frame(MultiplicativeUnitary(parts.w1, tol), parts.j1, parts.jhat1)


def alternative_order_residual(a: GroupAction) -> float:
    """‖W⁰₂₄U₁₄W₁₃ − U₁₄W⁰₂₄W₁₃‖."""
    n, m = a.n, a.m
    lay = (n, m, n, m)
    parts = crossed_parts(a)
    other = embed_legs(parts.u, lay, (0, 3)) @ embed_legs(parts.w0, lay, (1, 3)) @ embed_legs(
        a.target.w.w, lay, (0, 2)
    )
    return float(np.linalg.norm(parts.w1 - other))


def commutation_residuals(a: GroupAction) -> dict[str, float]:
    """The six commutation relations used to build the crossed frame."""
    n, m = a.n, a.m
    u = action_unitary(a)
    f0 = _g_frame(a)
    w0, w = f0.w.w, a.target.w.w
    hgg, hhg = (n, m, m), (n, n, m)
    w0_23 = embed_legs(w0, hgg, (1, 2))
    u12_g = embed_legs(u, hgg, (0, 1))
    u13_g = embed_legs(u, hgg, (0, 2))
    u13_h = embed_legs(u, hhg, (0, 2))
    u23_h = embed_legs(u, hhg, (1, 2))
    w12 = embed_legs(w, hhg, (0, 1))
    jj0 = np.kron(a.target.j.matrix, f0.j.matrix)
    jh0 = np.kron(a.target.jhat.matrix, f0.j.matrix)
    nrm = np.linalg.norm
    return {
        "comm1": float(nrm(w0_23 @ u13_g - u13_g @ w0_23)),
        "comm2": float(nrm(w0_23 @ u12_g - u12_g @ u13_g @ w0_23)),
        "comm3": float(nrm(u13_h @ u23_h - u23_h @ u13_h)),
        "comm4": float(nrm(u13_h @ u23_h @ w12 - w12 @ u13_h @ u23_h)),
        "comm5": float(nrm(jj0 @ u.conj() - u.conj().T @ jj0)),
        "comm6": float(nrm(jh0 @ u.conj() - u.conj().T @ jh0)),
    }


_COMM_TEXT = {
    "comm1": "W⁰₂₃U₁₃ = U₁₃W⁰₂₃",
    "comm2": "W⁰₂₃U₁₂ = U₁₂U₁₃W⁰₂₃",
    "comm3": "U₁₃U₂₃ = U₂₃U₁₃",
    "comm4": "U₁₃U₂₃W₁₂ = W₁₂U₁₃U₂₃",
    "comm5": "(J⊗J⁰)U = U*(J⊗J⁰)",
    "comm6": "(Ĵ⊗J⁰)U = U*(Ĵ⊗J⁰)",
}


def _diag_unit(m: int, p: int) -> np.ndarray:
    e = np.zeros((m, m))
    e[p, p] = 1.0
    return e


def _eq_residual(a, b) -> float:
    if a.dim != b.dim:
        return float("inf")
    return max(containment_residual(a, b), containment_residual(b, a))


def crossed_structure_checks(a: GroupAction, tol: float = DEFAULT_TOL, space_tol: float = 1e-8) -> list[CheckResult]:
    """M¹ is the crossed product, M̂¹ is M̂ ⊗ ℓ∞(G), plus the commutation relations."""
    f1 = crossed_frame(a, tol)
    g, n, m = a.group, a.n, a.m
    u = action_unitary(a)
    mu = a.target.w
    lams = [regular_rep(g, p) for p in range(m)]
    gens = [np.kron(x, np.eye(m)) for x in mu.M.basis] + [np.kron(a.u[p], lams[p]) for p in range(m)]
    crossed = generated_algebra(gens, (n, m))
    tensor_hat = span_of([np.kron(x, _diag_unit(m, p)) for x in mu.Mhat.basis for p in range(m)], (n, m))
    gen_id = max(
        float(np.linalg.norm(u.conj().T @ np.kron(np.eye(n), lams[p]) @ u - np.kron(a.u[p], lams[p])))
        for p in range(m)
    )
    out = [
        check("crossed.M1_crossed_product", "M¹ = algebra generated by m⊗1 and u_p⊗λ_p",
              _eq_residual(f1.w.M, crossed), space_tol, value=f1.w.M.dim),
        check("crossed.Mhat1_tensor", "M̂¹ = span{m̂⊗E_pp}",
              _eq_residual(f1.w.Mhat, tensor_hat), space_tol, value=f1.w.Mhat.dim),
        check("crossed.generator_identity", "U*(1⊗λ_p)U = u_p⊗λ_p", gen_id, tol),
        check("crossed.alternative_order", "W⁰₂₄U₁₄W₁₃ = U₁₄W⁰₂₄W₁₃", alternative_order_residual(a), tol),
        check("crossed.W1_pentagon", "W¹ satisfies the Pentagon equation", pentagon_residual(f1.w.w), tol),
    ]
    for key, res in commutation_residuals(a).items():
        out.append(check(f"crossed.{key}", _COMM_TEXT[key], res, tol))
    for r in validate_frame(f1, tol):
        out.append(CheckResult("crossed." + r.check_id, r.description, r.residual, r.threshold, r.passed, r.value))
    return out


def crossed_coproduct_checks(a: GroupAction, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Φ¹ on the generators m⊗1 and U*(1⊗λ_p)U, and Φ̂¹ on m̂⊗f."""
    f1 = crossed_frame(a, tol)
    g, n, m = a.group, a.n, a.m
    nm = n * m
    lay = (n, m, n, m)
    u = action_unitary(a)
    w1 = f1.w.w
    mu = a.target.w

    def phi1(x):
        return w1.conj().T @ np.kron(np.eye(nm), x) @ w1

    res_m = 0.0
    for x in mu.M.basis:
        lhs = phi1(np.kron(x, np.eye(m)))
        rhs = embed_legs(mu.comultiply(x), lay, (0, 2))
        res_m = max(res_m, float(np.linalg.norm(lhs - rhs)))

    uu = np.kron(u, u)
    res_l = 0.0
    for p in range(m):
        lam = regular_rep(g, p)
        lhs = phi1(u.conj().T @ np.kron(np.eye(n), lam) @ u)
        rhs = uu.conj().T @ embed_legs(np.kron(lam, lam), lay, (1, 3)) @ uu
        res_l = max(res_l, float(np.linalg.norm(lhs - rhs)))

    what1 = dual_unitary(w1)
    what = dual_unitary(mu.w)
    what0 = dual_unitary(_g_frame(a).w.w)
    u32 = embed_legs(u, lay, (2, 1))
    res_h = 0.0
    for x in mu.Mhat.basis:
        phih = what.conj().T @ np.kron(np.eye(n), x) @ what
        for p in range(m):
            f = _diag_unit(m, p)
            lhs = what1.conj().T @ np.kron(np.eye(nm), np.kron(x, f)) @ what1
            phi0 = what0.conj().T @ np.kron(np.eye(m), f) @ what0
            rhs = u32 @ embed_legs(phih, lay, (0, 2)) @ embed_legs(phi0, lay, (1, 3)) @ u32.conj().T
            res_h = max(res_h, float(np.linalg.norm(lhs - rhs)))

    return [
        check("coproduct.M_embedding", "Φ¹(m⊗1) = Φ(m)₁₃", res_m, tol),
        check("coproduct.lambda_embedding", "Φ¹(U*(1⊗λ_p)U) = (U*⊗U*)Φ⁰(λ_p)₂₄(U⊗U)", res_l, tol),
        check("coproduct.dual_twisted", "Φ̂¹(m̂⊗f) = (ι⊗τ⊗ι)(Φ̂⊗Φ̂⁰)(m̂⊗f)", res_h, tol),
    ]


# --- action files ------------------------------------------------------------


def _complex_matrix(rows) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ActionError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ActionError("matrix must be a square list of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _resolve_group(spec, base: Path | None) -> FiniteGroup:
    if isinstance(spec, str) and not spec.startswith("{"):
        path = Path(spec)
        if base is not None and not path.is_absolute():
            path = base / path
        if path.exists():
            return parse_group(json.loads(path.read_text()))
    return parse_group(spec)


def parse_action(spec: dict, base: Path | None = None) -> GroupAction:
    """{"group": ..., "target": {"dual_group_frame"|"group_frame": ...}, "u": [...]}."""
    for key in ("group", "target", "u"):
        if key not in spec:
            raise ActionError(f"action spec missing field '{key}'")
    g = _resolve_group(spec["group"], base)
    target = spec["target"]
    if not isinstance(target, dict) or len(target) != 1:
        raise ActionError("field 'target' must hold exactly one of 'dual_group_frame', 'group_frame'")
    (kind, tspec), = target.items()
    if kind == "dual_group_frame":
        frame = dual_group_frame(_resolve_group(tspec, base))
    elif kind == "group_frame":
        frame = group_frame(_resolve_group(tspec, base))
    else:
        raise ActionError(f"unknown target kind '{kind}'")
    us = spec["u"]
    if not isinstance(us, list) or len(us) != g.order:
        raise ActionError(f"field 'u' must list one unitary per group element ({g.order})")
    mats = []
    for i, entry in enumerate(us):
        if "perm" in entry:
            perm = entry["perm"]
            if sorted(perm) != list(range(frame.n)):
                raise ActionError(f"u[{i}].perm is not a permutation of 0..{frame.n - 1}")
            mats.append(perm_matrix(perm))
        elif "matrix" in entry:
            mats.append(_complex_matrix(entry["matrix"]))
        else:
            raise ActionError(f"u[{i}] needs 'perm' or 'matrix'")
    return GroupAction(g, frame, np.array(mats))


def load_action(path) -> GroupAction:
    path = Path(path)
    return parse_action(json.loads(path.read_text()), path.parent)


# --- semidirect products -----------------------------------------------------


def automorphism_action(h: FiniteGroup, g: FiniteGroup, alpha: Sequence[Sequence[int]]) -> GroupAction:
    """u_p = permutation of α_p on ℂ^H, acting on the dual group frame of H."""
    check_automorphisms(h, g, alpha)
    return GroupAction(g, dual_group_frame(h), np.array([perm_matrix(a) for a in alpha]))


def check_automorphisms(h: FiniteGroup, g: FiniteGroup, alpha: Sequence[Sequence[int]]) -> None:
    alpha = np.asarray(alpha, dtype=np.int64)
    if alpha.shape != (g.order, h.order):
        raise GroupError(f"α must give one permutation of H per element of G, shape {alpha.shape}")
    for p in range(g.order):
        a = alpha[p]
        if sorted(a.tolist()) != list(range(h.order)):
            raise GroupError(f"α_{p} is not a bijection")
        if not np.array_equal(a[h.cayley], h.cayley[a[:, None], a[None, :]]):
            raise GroupError(f"α_{p} is not a homomorphism")
    for p, q in itertools.product(range(g.order), repeat=2):
        if not np.array_equal(alpha[p][alpha[q]], alpha[g.mul(p, q)]):
            raise GroupError(f"α is not a homomorphism at ({p}, {q})")


def _right_semidirect(h: FiniteGroup, g: FiniteGroup, alpha) -> FiniteGroup:
    """(h, g)(h', g') = (α_{g'}⁻¹(h)·h', g g'), same index layout h·|G| + g."""
    alpha = np.asarray(alpha, dtype=np.int64)
    inv_alpha = np.argsort(alpha, axis=1)
    nh, ng = h.order, g.order
    table = np.zeros((nh * ng, nh * ng), dtype=np.int64)
    for h1, g1, h2, g2 in itertools.product(range(nh), range(ng), range(nh), range(ng)):
        table[h1 * ng + g1, h2 * ng + g2] = h.mul(int(inv_alpha[g2, h1]), h2) * ng + g.mul(g1, g2)
    return FiniteGroup(f"{h.name}x|'{g.name}", table)


class SemidirectMatch(NamedTuple):
    candidate: str
    perm: tuple[int, ...]
    residual: float
    all_residuals: dict[str, float]


# identification δ_h ⊗ δ_g ↦ δ_{(h', g)} of ℂ^H⊗ℂ^G with ℂ^{H⋊G}
_IDENTIFICATIONS = ("identity", "twisted")


def _identification(h, g, alpha, kind) -> np.ndarray:
    nh, ng = h.order, g.order
    perm = []
    for hi in range(nh):
        for gi in range(ng):
            target = hi if kind == "identity" else int(alpha[gi][hi])
            perm.append(target * ng + gi)
    return np.array(perm)


def semidirect_compare(h: FiniteGroup, g: FiniteGroup, alpha, tol: float = DEFAULT_TOL) -> SemidirectMatch:
    """Match the crossed frame of α against the dual group frame of H ⋊_α G.

    Candidates are the two multiplication conventions times the identity or
    α-twisted basis identification; the first to match W¹, J¹ and Ĵ¹ within
    ``tol`` is returned.  The frozen convention is the left semidirect
    product with the identity identification δ_h⊗δ_g ↦ δ_(h,g).
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    act = automorphism_action(h, g, alpha)
    parts = crossed_parts(act)
    groups = {"left": semidirect(h, g, alpha), "right": _right_semidirect(h, g, alpha)}
    residuals = {}
    for (gname, k), ident in itertools.product(groups.items(), _IDENTIFICATIONS):
        target = dual_group_frame(k)
        perm = _identification(h, g, alpha, ident)
        p = perm_matrix(perm)
        pp = np.kron(p, p)
        res = max(
            float(np.linalg.norm(pp @ parts.w1 @ pp.T - target.w.w)),
            float(np.linalg.norm(p @ parts.j1.matrix @ p.T - target.j.matrix)),
            float(np.linalg.norm(p @ parts.jhat1.matrix @ p.T - target.jhat.matrix)),
        )
        residuals[f"{gname}/{ident}"] = res
    for name, res in residuals.items():
        if res < tol:
            gname, ident = name.split("/")
            return SemidirectMatch(name, tuple(int(x) for x in _identification(h, g, alpha, ident)), res, residuals)
    raise ActionError(
        "no canonical identification matches: " + ", ".join(f"{k}={v:.3e}" for k, v in residuals.items())
    )


def parse_semidirect(spec: dict, base: Path | None = None):
    """{"h": group, "g": group, "alpha": [perm of H per element of G]}."""
    for key in ("h", "g", "alpha"):
        if key not in spec:
            raise ActionError(f"semidirect spec missing field '{key}'")
    return _resolve_group(spec["h"], base), _resolve_group(spec["g"], base), spec["alpha"]


def inversion_automorphisms(h: FiniteGroup) -> list[list[int]]:
    """α for ℤ₂ acting on an abelian H by inversion."""
    return [list(range(h.order)), [int(x) for x in h.inv]]
