"""Finite groups from Cayley tables, and the group / dual-group frames.

Haar measure is counting measure and the modular function is 1, so every
integral in the group example becomes a finite sum with unit weights.
Identity is always index 0.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .frame import Frame, commutation_scalar, irreducibility_scalar, validate_frame
from .multiplicative import MultiplicativeUnitary, dual_unitary, pairing
from .tensor import Antilinear, tensor_product, vector_functional


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    cayley: np.ndarray
    labels: tuple[str, ...] = ()
    inv: np.ndarray = field(init=False, repr=False)
    cyclic_factors: tuple[int, ...] | None = None

    def __post_init__(self):
        table = np.asarray(self.cayley)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("cayley table must be a non-empty square matrix")
        if not np.issubdtype(table.dtype, np.integer):
            raise GroupError("cayley table entries must be integers")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError(f"cayley entries must lie in 0..{n - 1}")
        full = np.arange(n)
        for p in range(n):
            if not np.array_equal(np.sort(table[p]), full):
                raise GroupError(f"row {p} not a permutation")
        for q in range(n):
            if not np.array_equal(np.sort(table[:, q]), full):
                raise GroupError(f"column {q} not a permutation")
        if not (np.array_equal(table[0], full) and np.array_equal(table[:, 0], full)):
            raise GroupError("element 0 is not the identity")
        # (pq)r == p(qr) for all triples
        lhs = table[table[:, :, None], np.arange(n)[None, None, :]]
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            p, q, r = bad[0]
            raise GroupError(f"not associative at ({p}, {q}, {r})")
        inv = np.argmax(table == 0, axis=1)
        if not np.all(table[full, inv] == 0):
            raise GroupError("missing inverse")
        labels = tuple(self.labels) if self.labels else tuple(f"g{i}" for i in range(n))
        if len(labels) != n:
            raise GroupError(f"expected {n} labels, got {len(labels)}")
        table = table.astype(np.int64)
        table.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "cayley", table)
        object.__setattr__(self, "inv", inv)
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, p: int, q: int) -> int:
        return int(self.cayley[p, q])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def element_order(self, p: int) -> int:
        k, x = 1, p
        while x != 0:
            x = self.mul(x, p)
            k += 1
        return k

    def order_profile(self) -> Counter:
        return Counter(self.element_order(p) for p in range(self.order))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    i = np.arange(n)
    return FiniteGroup(f"Z{n}", (i[:, None] + i[None, :]) % n, tuple(str(k) for k in range(n)), cyclic_factors=(n,))


def product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product; element (g₁, …, g_k) is flattened row-major."""
    if not groups:
        return cyclic(1)
    sizes = [g.order for g in groups]
    elems = list(itertools.product(*[range(s) for s in sizes]))
    index = {e: i for i, e in enumerate(elems)}
    table = np.array([[index[tuple(g.mul(a, b) for g, a, b in zip(groups, x, y))] for y in elems] for x in elems])
    labels = tuple("(" + ",".join(g.labels[a] for g, a in zip(groups, e)) + ")" for e in elems)
    factors = None
    if all(g.cyclic_factors is not None for g in groups):
        factors = tuple(f for g in groups for f in g.cyclic_factors)
    return FiniteGroup("x".join(g.name for g in groups), table, labels, cyclic_factors=factors)


def cyclic_product(factors: Sequence[int]) -> FiniteGroup:
    factors = [int(f) for f in factors]
    if not factors:
        raise GroupError("need at least one cyclic factor")
    if len(factors) == 1:
        return cyclic(factors[0])
    return product(*[cyclic(f) for f in factors])


def _from_perms(name: str, perms: list[tuple[int, ...]], labels=None) -> FiniteGroup:
    # composition (στ)(x) = σ(τ(x)); perms[0] must be the identity
    index = {p: i for i, p in enumerate(perms)}
    table = np.array([[index[tuple(s[t[x]] for x in range(len(t)))] for t in perms] for s in perms])
    return FiniteGroup(name, table, labels or tuple("".join(map(str, p)) for p in perms))


def symmetric(n: int = 3) -> FiniteGroup:
    return _from_perms(f"S{n}", list(itertools.permutations(range(n))))


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: rᵏ are 0..n−1, s·rᵏ are n..2n−1."""
    table = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            table[i, j] = (i + j) % n
            table[i, j + n] = n + (j - i) % n
            table[i + n, j] = n + (i + j) % n
            table[i + n, j + n] = (j - i) % n
    labels = tuple([f"r{k}" for k in range(n)] + [f"s{k}" for k in range(n)])
    return FiniteGroup(f"D{n}", table, labels)


def quaternion8() -> FiniteGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit quaternions as 2x2 complex matrices
    one = np.eye(2)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]])
    qk = qi @ qj
    mats = [one, -one, qi, -qi, qj, -qj, qk, -qk]

    def find(m):
        return next(i for i, x in enumerate(mats) if np.allclose(x, m))

    table = np.array([[find(a @ b) for b in mats] for a in mats])
    return FiniteGroup("Q8", table, tuple(names))


def semidirect(h: FiniteGroup, g: FiniteGroup, alpha: Sequence[Sequence[int]]) -> FiniteGroup:
    """H ⋊_α G with (h, g)(h', g') = (h·α_g(h'), g g'); element (h, g) has index h·|G| + g."""
    alpha = np.asarray(alpha, dtype=np.int64)
    nh, ng = h.order, g.order
    table = np.zeros((nh * ng, nh * ng), dtype=np.int64)
    for h1, g1, h2, g2 in itertools.product(range(nh), range(ng), range(nh), range(ng)):
        table[h1 * ng + g1, h2 * ng + g2] = h.mul(h1, int(alpha[g1, h2])) * ng + g.mul(g1, g2)
    labels = tuple(f"({a},{b})" for a in h.labels for b in g.labels)
    return FiniteGroup(f"{h.name}x|{g.name}", table, labels)


def parse_group(spec) -> FiniteGroup:
    """Build a group from the JSON file format (already decoded) or a shorthand."""
    if isinstance(spec, FiniteGroup):
        return spec
    if not isinstance(spec, dict):
        raise GroupError("group spec must be a JSON object")
    if "cyclic" in spec:
        factors = spec["cyclic"]
        if isinstance(factors, int):
            factors = [factors]
        if not isinstance(factors, list) or not all(isinstance(f, int) and f >= 1 for f in factors):
            raise GroupError("field 'cyclic' must be a list of positive integers")
        return cyclic_product(factors)
    if "named" in spec:
        return named_group(spec["named"])
    for key in ("cayley",):
        if key not in spec:
            raise GroupError(f"missing field '{key}'")
    table = spec["cayley"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise GroupError("field 'cayley' must be a list of rows")
    for r, row in enumerate(table):
        if len(row) != len(table):
            raise GroupError(f"row {r} has length {len(row)}, expected {len(table)}")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise GroupError(f"row {r} has non-integer entries")
    if "order" in spec and spec["order"] != len(table):
        raise GroupError(f"field 'order' is {spec['order']} but cayley has {len(table)} rows")
    labels = spec.get("labels") or ()
    return FiniteGroup(str(spec.get("name", "G")), np.array(table, dtype=np.int64), tuple(labels))


def load_group(path) -> FiniteGroup:
    with open(path) as fh:
        return parse_group(json.load(fh))


def group_to_spec(g: FiniteGroup) -> dict:
    return {"name": g.name, "order": g.order, "labels": list(g.labels), "cayley": g.cayley.tolist()}


def named_group(name: str) -> FiniteGroup:
    table = {
        "trivial": lambda: cyclic(1),
        "S3": lambda: symmetric(3),
        "D4": lambda: dihedral(4),
        "Q8": quaternion8,
    }
    if name in table:
        return table[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    if name.startswith("D") and name[1:].isdigit():
        return dihedral(int(name[1:]))
    raise GroupError(f"unknown group name {name!r}")


def catalog() -> dict[str, FiniteGroup]:
    return {
        "Z1": cyclic(1),
        "Z2": cyclic(2),
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "Z6": cyclic(6),
        "Z2xZ3": cyclic_product([2, 3]),
        "S3": symmetric(3),
        "D4": dihedral(4),
        "Q8": quaternion8(),
    }


# -- operators ---------------------------------------------------------------

def group_unitary_matrix(g: FiniteGroup) -> np.ndarray:
    """(W_G ξ)(p, q) = ξ(p, p⁻¹q), i.e. δ_(a,b) ↦ δ_(a,ab)."""
    n = g.order
    w = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            w[a * n + g.mul(a, b), a * n + b] = 1.0
    return w


def group_unitary(g: FiniteGroup) -> MultiplicativeUnitary:
    return MultiplicativeUnitary(group_unitary_matrix(g))


def regular_rep(g: FiniteGroup, p: int) -> np.ndarray:
    """(λ_p ξ)(q) = ξ(p⁻¹q), i.e. δ_q ↦ δ_pq."""
    if not 0 <= p < g.order:
        raise IndexError(f"element index {p} out of range")
    lam = np.zeros((g.order, g.order))
    lam[g.cayley[p], np.arange(g.order)] = 1.0
    return lam


def lambda_of(g: FiniteGroup, f) -> np.ndarray:
    """λ(f) = Σ_p f(p) λ_p."""
    f = np.asarray(f, dtype=complex)
    return sum(f[p] * regular_rep(g, p) for p in range(g.order))


def inversion_matrix(g: FiniteGroup) -> np.ndarray:
    """δ_p ↦ δ_{p⁻¹}."""
    m = np.zeros((g.order, g.order))
    m[g.inv, np.arange(g.order)] = 1.0
    return m


def group_frame(g: FiniteGroup) -> Frame:
    """(W_G, J_G, Ĵ_G): J_G is plain conjugation, Ĵ_G is ξ ↦ conj(ξ(p⁻¹))."""
    return Frame(group_unitary(g), Antilinear(np.eye(g.order)), Antilinear(inversion_matrix(g)))


def dual_group_frame(g: FiniteGroup) -> Frame:
    """(W⁰, J⁰, Ĵ⁰) of the group von Neumann algebra: W⁰ξ(p,q) = ξ(qp,q)."""
    n = g.order
    w0 = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            w0[g.mul(g.inv[b], a) * n + b, a * n + b] = 1.0
    return Frame(MultiplicativeUnitary(w0), Antilinear(inversion_matrix(g)), Antilinear(np.eye(n)))


def fourier_matrix(factors: Sequence[int]) -> np.ndarray:
    """Unitary character matrix F_{γp} = conj⟨γ, p⟩ / √|G| for a cyclic product."""
    mats = []
    for m in factors:
        j = np.arange(m)
        mats.append(np.exp(-2j * np.pi * np.outer(j, j) / m) / np.sqrt(m))
    return tensor_product(*mats)


def fourier_check(factors: Sequence[int]) -> float:
    """‖(F⊗F) Ŵ_G (F⊗F)* − W_Ĝ‖_F for G = ℤ_{n₁}×…×ℤ_{n_k}."""
    g = cyclic_product(factors)
    if not g.is_abelian():
        raise GroupError("Pontryagin duality needs an abelian group")
    f = fourier_matrix(factors)
    ff = np.kron(f, f)
    what = dual_unitary(group_unitary_matrix(g))
    # the dual group of a cyclic product is the same cyclic product
    return float(np.linalg.norm(ff @ what @ ff.conj().T - group_unitary_matrix(g)))


def structure_report(g: FiniteGroup, tol: float = 1e-10) -> dict:
    """Measured structure of the group frame; asserts nothing beyond frame validity."""
    fr = group_frame(g)
    mu = fr.w
    n = g.order
    return {
        "group": g.name,
        "order": n,
        "frame_valid": all(r.passed for r in validate_frame(fr, tol)),
        "dim_M": mu.M.dim,
        "dim_Mhat": mu.Mhat.dim,
        "M_commutative": mu.M.is_commutative(),
        "Mhat_commutative": mu.Mhat.is_commutative(),
        "trim_dim": mu.trim_check().dim,
        "k": irreducibility_scalar(fr, tol).value,
        "lambda": commutation_scalar(fr, tol).value,
        "pairing_point_masses": [[point_mass_pairing(g, r, s) for s in range(n)] for r in range(n)],
    }


def point_mass_pairing(g: FiniteGroup, r: int, s: int) -> complex:
    """⟨δ_r | λ(δ_s)⟩ realised through functionals and W_G.

    δ_r is the slice (ι⊗ω)(W_G) for ω = ω_{δ_e, δ_r}, and λ(δ_s) is the
    slice (ψ⊗ι)(W_G) for ψ = ω_{δ_s, δ_s}; the counting-measure integral
    Σ_p δ_r(p) δ_s(p) predicts 1 if r = s and 0 otherwise.
    """
    e = np.eye(g.order)
    return pairing(vector_functional(e[s], e[s]), vector_functional(e[0], e[r]), group_unitary_matrix(g))
