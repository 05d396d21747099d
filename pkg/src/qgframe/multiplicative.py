"""Multiplicative unitaries: Pentagon, slice algebras, coproducts, duality."""

from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

import numpy as np

from .spaces import (
    RANK_TOL,
    OperatorSpace,
    containment_residual,
    generated_algebra,
    product_space,
    span_of,
)
from .tensor import (
    DEFAULT_TOL,
    Functional,
    LayoutError,
    TensorLayout,
    embed_legs,
    flip,
    slice_left,
    slice_right,
    unitarity_defect,
)


class NotMultiplicativeError(ValueError):
    pass


def _leg_dim(w: np.ndarray) -> int:
    w = np.asarray(w)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise LayoutError(f"W must be square, got shape {w.shape}")
    n = int(round(np.sqrt(w.shape[0])))
    if n * n != w.shape[0]:
        raise LayoutError(f"W of size {w.shape[0]} is not on H⊗H with equal factors")
    return n


def legs3(w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """W_12, W_13, W_23 on H⊗H⊗H."""
    n = _leg_dim(w)
    lay = (n, n, n)
    return embed_legs(w, lay, (0, 1)), embed_legs(w, lay, (0, 2)), embed_legs(w, lay, (1, 2))


def pentagon_residual(w: np.ndarray) -> float:
    """‖W12 W13 W23 − W23 W12‖_F."""
    w12, w13, w23 = legs3(w)
    return float(np.linalg.norm(w12 @ w13 @ w23 - w23 @ w12))


def all_slices_right(x: np.ndarray, n: int) -> np.ndarray:
    """(ι⊗ω_{e_a,e_b})(x) for all a, b; shape (n², n, n)."""
    x4 = x.reshape(n, n, n, n)
    return x4.transpose(3, 1, 0, 2).reshape(n * n, n, n)


def all_slices_left(x: np.ndarray, n: int) -> np.ndarray:
    """(ω_{e_a,e_b}⊗ι)(x) for all a, b; shape (n², n, n)."""
    x4 = x.reshape(n, n, n, n)
    return x4.transpose(2, 0, 1, 3).reshape(n * n, n, n)


def comultiply(w: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Φ(m) = W*(1⊗m)W."""
    n = _leg_dim(w)
    if m.shape != (n, n):
        raise LayoutError("m must act on a single leg")
    return w.conj().T @ np.kron(np.eye(n), m) @ w


def coassociativity_residual(w: np.ndarray, m: np.ndarray) -> float:
    """‖(Φ⊗ι)Φ(m) − (ι⊗Φ)Φ(m)‖_F."""
    n = _leg_dim(w)
    w12, _, w23 = legs3(w)
    phi = comultiply(w, m)
    lay = (n, n, n)
    left = w12.conj().T @ embed_legs(phi, lay, (1, 2)) @ w12
    right = w23.conj().T @ embed_legs(phi, lay, (0, 2)) @ w23
    return float(np.linalg.norm(left - right))


def pairing(psi: Functional, omega: Functional, w: np.ndarray) -> complex:
    """⟨(ι⊗ω)(W) | (ψ⊗ι)(W)⟩ = (ψ⊗ω)(W)."""
    return psi.tensor(omega)(w)


def dual_unitary(w: np.ndarray) -> np.ndarray:
    """Ŵ = ΣW*Σ."""
    n = _leg_dim(w)
    s = flip((n, n))
    return s @ w.conj().T @ s


class TrimResult(NamedTuple):
    trim: bool
    dim: int
    subalgebra_residual: float


class MultiplicativeUnitary:
    """A validated multiplicative unitary with lazily cached slice spaces."""

    def __init__(self, w: np.ndarray, tol: float = DEFAULT_TOL, rank_tol: float = RANK_TOL):
        w = np.asarray(w, dtype=complex)
        self.n = _leg_dim(w)
        self.w = w
        self.tol = tol
        self.rank_tol = rank_tol
        udef = unitarity_defect(w)
        if udef >= tol:
            raise NotMultiplicativeError(f"W is not unitary (defect {udef:.3e})")
        pent = pentagon_residual(w)
        if pent >= tol:
            raise NotMultiplicativeError(f"W fails the Pentagon equation (residual {pent:.3e})")

    @property
    def layout(self) -> TensorLayout:
        return TensorLayout((self.n, self.n))

    def __repr__(self):
        return f"MultiplicativeUnitary(n={self.n})"

    @cached_property
    def S(self) -> OperatorSpace:
        return span_of(all_slices_right(self.w, self.n), self.n, self.rank_tol)

    @cached_property
    def Shat(self) -> OperatorSpace:
        return span_of(all_slices_left(self.w, self.n), self.n, self.rank_tol)

    @cached_property
    def M(self) -> OperatorSpace:
        return generated_algebra(list(self.S.basis), self.n, tol=self.rank_tol)

    @cached_property
    def Mhat(self) -> OperatorSpace:
        return generated_algebra(list(self.Shat.basis), self.n, tol=self.rank_tol)

    @cached_property
    def C(self) -> OperatorSpace:
        s = flip((self.n, self.n))
        return span_of(all_slices_right(s @ self.w, self.n), self.n, self.rank_tol)

    @cached_property
    def D(self) -> OperatorSpace:
        s = flip((self.n, self.n))
        return span_of(all_slices_right(self.w @ s, self.n), self.n, self.rank_tol)

    def dual(self) -> "MultiplicativeUnitary":
        return MultiplicativeUnitary(dual_unitary(self.w), self.tol, self.rank_tol)

    def comultiply(self, m: np.ndarray) -> np.ndarray:
        return comultiply(self.w, m)

    def trim_check(self) -> TrimResult:
        prod = product_space(self.S, self.Shat.adjoint())
        reverse = product_space(self.Shat.adjoint(), self.S)
        res = containment_residual(prod, reverse)
        return TrimResult(prod.dim == self.n ** 2, prod.dim, res)

    def membership_residual(self) -> float:
        """Distance from W to span(M ⊗ M̂)."""
        m, mh = self.M.basis, self.Mhat.basis
        d = self.n * self.n
        tensors = np.einsum("iab,jcd->ijacbd", m, mh).reshape(-1, d, d)
        return span_of(tensors, (self.n, self.n), self.rank_tol).residual(self.w)

    def algebra_residual(self, hat: bool = False) -> float:
        """max over basis pairs of the distance from s₁s₂ to S (or Ŝ)."""
        sp = self.Shat if hat else self.S
        prods = np.einsum("iab,jbc->ijac", sp.basis, sp.basis).reshape(-1, self.n, self.n)
        return max((sp.residual(p) for p in prods), default=0.0)

    def nondegeneracy_rank(self, xi: np.ndarray, hat: bool = False) -> int:
        sp = self.Shat if hat else self.S
        vecs = np.array([s @ xi for s in sp.basis])
        return int(np.linalg.matrix_rank(vecs, tol=1e-9 * max(1.0, np.abs(vecs).max())))

    def density_rank(self) -> int:
        """dim span{(x⊗1)W(1⊗y)} over matrix units x, y.

        The element for x = E_ab, y = E_cd is supported on rows with first
        index a and columns with second index d, carrying W[(b,·),(·,c)];
        so the span is n² copies of the span of those n² blocks.
        """
        n = self.n
        w4 = self.w.reshape(n, n, n, n)
        blocks = w4.transpose(0, 3, 1, 2).reshape(n * n, n * n)
        s = np.linalg.svd(blocks, compute_uv=False)
        return n * n * int(np.sum(s > self.rank_tol * s[0]))

    def duality_residuals(self, psi1: Functional, psi2: Functional, omega: Functional) -> tuple[float, float]:
        """Coproduct-vs-product compatibility of the pairing, both directions.

        First:  ⟨Φ(m) | m̂₁⊗m̂₂⟩ = ⟨m | m̂₁m̂₂⟩ with m = (ι⊗ω)(W), m̂ᵢ = (ψᵢ⊗ι)(W),
                also cross-checked against (ψ₁⊗ψ₂⊗ω)(W13 W23).
        Second: ⟨m₁⊗m₂ | Φ̂′(m̂)⟩ = ⟨m₁m₂ | m̂⟩ with mᵢ = (ι⊗ψᵢ)(W), m̂ = (ω⊗ι)(W).
        """
        w = self.w
        pp = psi1.tensor(psi2)
        m = slice_right(w, omega)
        mh1, mh2 = slice_left(w, psi1), slice_left(w, psi2)
        target = omega(mh1 @ mh2)
        _, w13, w23 = legs3(w)
        first = max(abs(pp(comultiply(w, m)) - target), abs(pp.tensor(omega)(w13 @ w23) - target))

        m1, m2 = slice_right(w, psi1), slice_right(w, psi2)
        mh = slice_left(w, omega)
        s = flip((self.n, self.n))
        flipped = s @ comultiply(dual_unitary(w), mh) @ s
        second = abs(pp(flipped) - omega(m1 @ m2))
        return float(first), float(second)


def density_span_bruteforce(w: np.ndarray) -> int:
    """dim span{(E_ab⊗1) W (1⊗E_cd)} by direct enumeration (small n only)."""
    n = _leg_dim(w)
    units = np.eye(n * n).reshape(n * n, n, n)
    eye = np.eye(n)
    ops = [np.kron(x, eye) @ w @ np.kron(eye, y) for x in units for y in units]
    return span_of(ops, (n, n)).dim
