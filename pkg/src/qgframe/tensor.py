"""Dense tensor-product linear algebra with explicit leg layouts.

Operators are plain complex ``numpy`` arrays; the tensor layout they act on
is carried alongside as a :class:`TensorLayout` (or a tuple of factor
dimensions).  Flattening is row-major with leg 1 most significant, so
``np.kron(a, b)`` is literally ``a ⊗ b`` and ``W ⊗ 1`` is ``W_12``.

Antilinear maps are stored as a matrix ``A`` acting by ``ξ ↦ A·conj(ξ)``.
Functionals are stored as density matrices ``ρ`` with ``ω(x) = tr(ρ x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-10


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class TensorLayout:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in dims):
            raise LayoutError(f"factor dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return prod(self.dims)

    def __len__(self):
        return len(self.dims)

    def flatten(self, index: Sequence[int]) -> int:
        if len(index) != len(self.dims):
            raise LayoutError("multi-index length does not match layout")
        return int(np.ravel_multi_index(tuple(index), self.dims)) if self.dims else 0

    def unflatten(self, flat: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.unravel_index(flat, self.dims))

    def __add__(self, other: "TensorLayout") -> "TensorLayout":
        return TensorLayout(self.dims + as_layout(other).dims)


def as_layout(layout) -> TensorLayout:
    if isinstance(layout, TensorLayout):
        return layout
    if isinstance(layout, (int, np.integer)):
        return TensorLayout((int(layout),))
    return TensorLayout(tuple(layout))


def tensor_product(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product, leg 1 most significant."""
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def flip(layout) -> np.ndarray:
    """The flip Σ: H₁⊗H₂ → H₂⊗H₁ as a 0/1 matrix of shape (d₂d₁, d₁d₂)."""
    layout = as_layout(layout)
    if len(layout) != 2:
        raise LayoutError(f"flip needs exactly two factors, got {layout.dims}")
    a, b = layout.dims
    out = np.zeros((a * b, a * b))
    for i in range(a):
        for j in range(b):
            out[j * a + i, i * b + j] = 1.0
    return out


def embed_legs(x: np.ndarray, target, legs: Sequence[int]) -> np.ndarray:
    """Place ``x`` on the given (0-based) legs of ``target``, identity elsewhere.

    ``legs`` is ordered: ``x``'s first factor goes to ``legs[0]`` and so on,
    so ``embed_legs(W, (n, n, n), (0, 2))`` is ``W_13``.
    """
    target = as_layout(target)
    k = len(target)
    legs = [int(leg) for leg in legs]
    if len(set(legs)) != len(legs) or any(not 0 <= leg < k for leg in legs):
        raise LayoutError(f"bad legs {legs} for layout {target.dims}")
    sub = prod(target.dims[leg] for leg in legs)
    if x.shape != (sub, sub):
        raise LayoutError(f"operator of shape {x.shape} does not fit legs {legs} of {target.dims}")
    rest = [i for i in range(k) if i not in legs]
    order = legs + rest
    big = np.kron(x, np.eye(prod(target.dims[i] for i in rest)))
    t = big.reshape([target.dims[i] for i in order] * 2)
    inv = list(np.argsort(order))
    t = t.transpose(inv + [k + i for i in inv])
    return t.reshape(target.total, target.total)


def permute_legs(x: np.ndarray, layout, perm: Sequence[int]) -> np.ndarray:
    """Reorder the legs of an operator: new leg ``i`` is old leg ``perm[i]``."""
    layout = as_layout(layout)
    k = len(layout)
    perm = list(perm)
    t = x.reshape(layout.dims * 2).transpose(perm + [k + p for p in perm])
    n = layout.total
    return t.reshape(n, n)


@dataclass(frozen=True)
class Functional:
    """ω(x) = tr(ρ x) on operators of size ``density.shape``."""

    density: np.ndarray

    def __call__(self, x: np.ndarray) -> complex:
        return complex(np.einsum("jk,kj->", self.density, x))

    @property
    def dim(self) -> int:
        return self.density.shape[0]

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.density + other.density)

    def __rmul__(self, c) -> "Functional":
        return Functional(c * self.density)

    def tensor(self, other: "Functional") -> "Functional":
        return Functional(np.kron(self.density, other.density))

    def trace_norm(self) -> float:
        return float(np.linalg.svd(self.density, compute_uv=False).sum())


def vector_functional(xi, eta) -> Functional:
    """ω_{ξ,η}(x) = ⟨xξ, η⟩."""
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    if xi.shape != eta.shape or xi.ndim != 1:
        raise LayoutError("ξ and η must be vectors of the same size")
    return Functional(np.outer(xi, eta.conj()))


def random_functional(n: int, rng: np.random.Generator) -> Functional:
    """ω_{ξ,η} for independent complex Gaussian unit vectors ξ, η."""
    v = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return vector_functional(v[0], v[1])


def matrix_unit_functional(n: int, i: int, j: int) -> Functional:
    """ω_{e_i, e_j}, i.e. x ↦ x[j, i]."""
    rho = np.zeros((n, n), dtype=complex)
    rho[i, j] = 1.0
    return Functional(rho)


def _split(x: np.ndarray, layout) -> tuple[int, int]:
    if layout is None:
        n = int(round(np.sqrt(x.shape[0])))
        if n * n != x.shape[0]:
            raise LayoutError("cannot infer a two-factor layout; pass one explicitly")
        return n, n
    layout = as_layout(layout)
    if len(layout) != 2 or layout.total != x.shape[0]:
        raise LayoutError(f"need a two-factor layout matching {x.shape}, got {layout.dims}")
    return layout.dims


def slice_right(x: np.ndarray, omega: Functional, layout=None) -> np.ndarray:
    """(ι ⊗ ω)(x) for x on H⊗K and ω on K."""
    a, b = _split(x, layout)
    if omega.dim != b:
        raise LayoutError("functional does not live on the second leg")
    return np.einsum("ijkl,lj->ik", x.reshape(a, b, a, b), omega.density)


def slice_left(x: np.ndarray, omega: Functional, layout=None) -> np.ndarray:
    """(ω ⊗ ι)(x) for x on H⊗K and ω on H."""
    a, b = _split(x, layout)
    if omega.dim != a:
        raise LayoutError("functional does not live on the first leg")
    return np.einsum("ijkl,ki->jl", x.reshape(a, b, a, b), omega.density)


@dataclass(frozen=True)
class Antilinear:
    """Antilinear map ξ ↦ A·conj(ξ)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise LayoutError("antilinear matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, xi: np.ndarray) -> np.ndarray:
        return self.matrix @ np.conj(xi)

    def adjoint(self) -> "Antilinear":
        return Antilinear(self.matrix.T)

    def compose(self, other: "Antilinear") -> np.ndarray:
        """The linear operator self∘other."""
        self._match(other.dim)
        return self.matrix @ other.matrix.conj()

    def conjugate(self, x: np.ndarray) -> np.ndarray:
        """The linear operator J x J (J on both sides is this map)."""
        self._match(x.shape[0])
        return self.matrix @ x.conj() @ self.matrix.conj()

    def sandwich(self, x: np.ndarray, other: "Antilinear") -> np.ndarray:
        """The linear operator J x K."""
        self._match(x.shape[0])
        return self.matrix @ x.conj() @ other.matrix.conj()

    def tensor(self, other: "Antilinear") -> "Antilinear":
        return Antilinear(np.kron(self.matrix, other.matrix))

    def left_mul(self, x: np.ndarray) -> "Antilinear":
        """The antilinear map x∘J."""
        return Antilinear(x @ self.matrix)

    def right_mul(self, x: np.ndarray) -> "Antilinear":
        """The antilinear map J∘x."""
        return Antilinear(self.matrix @ np.conj(x))

    def scaled(self, c: complex) -> "Antilinear":
        return Antilinear(c * self.matrix)

    def self_adjoint_defect(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.T))

    def involution_defect(self) -> float:
        return float(np.linalg.norm(self.compose(self) - np.eye(self.dim)))

    def _match(self, n):
        if n != self.dim:
            raise LayoutError(f"dimension mismatch: {n} vs {self.dim}")


def unitarity_defect(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_defect(u) < tol


def is_self_adjoint(x: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return float(np.linalg.norm(x - x.conj().T)) < tol


def is_positive(x: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if not is_self_adjoint(x, tol):
        return False
    return bool(np.linalg.eigvalsh((x + x.conj().T) / 2).min() > -tol)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a @ b - b @ a))
