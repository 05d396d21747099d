"""Finite-dimensional operator spaces.

At finite dimension every operator topology coincides, so σ-weak closures
become plain linear spans and "dense in B(H)" becomes "has dimension d²".
An :class:`OperatorSpace` holds a Hilbert–Schmidt orthonormal basis; all
rank decisions use a singular-value cutoff relative to the largest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .tensor import Antilinear, LayoutError, TensorLayout, as_layout

RANK_TOL = 1e-9


def _vecs(ops, d: int) -> np.ndarray:
    arr = np.asarray(ops, dtype=complex)
    if arr.size == 0:
        return np.zeros((0, d * d), dtype=complex)
    if arr.ndim != 3 or arr.shape[1:] != (d, d):
        raise LayoutError(f"operators must all be {d}x{d}")
    return arr.reshape(arr.shape[0], d * d)


def _row_basis(rows: np.ndarray, tol: float) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return rows[:0]
    return vh[: int(np.sum(s > tol * s[0]))]


@dataclass(frozen=True)
class OperatorSpace:
    """Subspace of B(H) with an HS-orthonormal basis of shape (dim, d, d)."""

    layout: TensorLayout
    basis: np.ndarray
    tol: float = RANK_TOL
    _flat: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "layout", as_layout(self.layout))
        d = self.layout.total
        b = np.asarray(self.basis, dtype=complex).reshape(-1, d, d)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "_flat", b.reshape(b.shape[0], d * d))

    @property
    def d(self) -> int:
        return self.layout.total

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def project(self, x: np.ndarray) -> np.ndarray:
        v = np.asarray(x, dtype=complex).reshape(-1)
        coeffs = self._flat.conj() @ v
        return (coeffs @ self._flat).reshape(self.d, self.d)

    def residual(self, x: np.ndarray) -> float:
        """Frobenius distance from ``x`` to the space."""
        return float(np.linalg.norm(x - self.project(x)))

    def adjoint(self) -> "OperatorSpace":
        return OperatorSpace(self.layout, self.basis.conj().transpose(0, 2, 1), self.tol)

    def conjugated(self, j: Antilinear, k: Antilinear | None = None) -> "OperatorSpace":
        """The space {J x K : x in self}; K defaults to J."""
        k = j if k is None else k
        return span_of([j.sandwich(b, k) for b in self.basis], self.layout, self.tol)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        c = rng.normal(size=self.dim) + 1j * rng.normal(size=self.dim)
        return np.einsum("k,kij->ij", c, self.basis)

    def is_commutative(self, tol: float = 1e-10) -> bool:
        b = self.basis
        comm = np.einsum("iab,jbc->ijac", b, b) - np.einsum("jab,ibc->ijac", b, b)
        return float(np.abs(comm).max(initial=0.0)) < tol


def span_of(gens: Iterable[np.ndarray], layout, tol: float = RANK_TOL) -> OperatorSpace:
    layout = as_layout(layout)
    d = layout.total
    gens = list(gens)
    rows = _vecs(gens, d) if gens else np.zeros((0, d * d), dtype=complex)
    return OperatorSpace(layout, _row_basis(rows, tol), tol)


def _products(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a.shape[-1]
    return np.einsum("iab,jbc->ijac", a, b).reshape(-1, d, d)


def product_space(a: OperatorSpace, b: OperatorSpace, tol: float | None = None) -> OperatorSpace:
    """span{x·y : x in a, y in b}."""
    tol = a.tol if tol is None else tol
    return span_of(_products(a.basis, b.basis), a.layout, tol)


def generated_algebra(
    gens: Sequence[np.ndarray],
    layout,
    unital: bool = True,
    star_closed: bool = True,
    tol: float = RANK_TOL,
) -> OperatorSpace:
    """Smallest (unital, *-closed) algebra containing ``gens``.

    Products of the current basis are added breadth-first until the
    dimension stops growing; it is bounded by d², so this terminates.
    """
    layout = as_layout(layout)
    d = layout.total
    start = [np.asarray(g, dtype=complex) for g in gens]
    if star_closed:
        start += [g.conj().T for g in start]
    if unital:
        start.append(np.eye(d, dtype=complex))
    cur = span_of(start, layout, tol)
    while cur.dim:
        rows = np.concatenate([cur._flat, _vecs(_products(cur.basis, cur.basis), d)])
        nxt = OperatorSpace(layout, _row_basis(rows, tol), tol)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
    return cur


def full_space(layout) -> OperatorSpace:
    layout = as_layout(layout)
    d = layout.total
    return OperatorSpace(layout, np.eye(d * d, dtype=complex).reshape(d * d, d, d))


def commutant(gens: Sequence[np.ndarray], layout, tol: float = RANK_TOL) -> OperatorSpace:
    """{x : xg = gx for all g}, as the joint nullspace of x ↦ xg − gx."""
    layout = as_layout(layout)
    d = layout.total
    reduced = span_of(gens, layout, tol).basis if len(gens) else []
    if len(reduced) == 0:
        return full_space(layout)
    eye = np.eye(d)
    # row-major vec: vec(xg) = (1 ⊗ gᵀ) vec(x), vec(gx) = (g ⊗ 1) vec(x)
    big = np.concatenate([np.kron(eye, g.T) - np.kron(g, eye) for g in reduced])
    _, s, vh = np.linalg.svd(big, full_matrices=True)
    # generators are HS-normalised, so an absolute floor separates noise from rank
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    null = vh[rank:].conj()
    return OperatorSpace(layout, null.reshape(-1, d, d), tol)


def space_contains(a: OperatorSpace, b: OperatorSpace, tol: float = 1e-8) -> bool:
    """Is ``b`` a subspace of ``a``?"""
    return containment_residual(a, b) < tol


def containment_residual(a: OperatorSpace, b: OperatorSpace) -> float:
    if a.layout.total != b.layout.total:
        raise LayoutError("spaces live on different layouts")
    if b.dim == 0:
        return 0.0
    return max(a.residual(x) for x in b.basis)


def space_eq(a: OperatorSpace, b: OperatorSpace, tol: float = 1e-8) -> bool:
    return a.dim == b.dim and space_contains(a, b, tol) and space_contains(b, a, tol)


def is_dense(a: OperatorSpace) -> bool:
    return a.dim == a.d * a.d
