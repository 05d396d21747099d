"""Fixed example objects: negative frames, padded unitaries, catalog actions."""

from __future__ import annotations

import numpy as np

from .crossed import GroupAction, automorphism_action, inversion_automorphisms
from .frame import Frame
from .groups import FiniteGroup, cyclic, group_frame
from .multiplicative import MultiplicativeUnitary
from .tensor import Antilinear, embed_legs


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix, phases fixed."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def tampered_jhat(g: FiniteGroup) -> Frame:
    """Group frame with Ĵ replaced by J_G."""
    f = group_frame(g)
    return Frame(f.w, f.j, f.j)


def tampered_j(g: FiniteGroup) -> Frame:
    """Group frame with J replaced by Ĵ_G."""
    f = group_frame(g)
    return Frame(f.w, f.jhat, f.jhat)


def padded_frame(g: FiniteGroup | None = None, pad: int = 2) -> Frame:
    """(W_G)₁₃ on (ℂ^G⊗ℂ^pad)⊗(ℂ^G⊗ℂ^pad), J and Ĵ extended by plain conjugation.

    Multiplicative but not trim: S = M⊗1 only.
    """
    g = cyclic(2) if g is None else g
    f = group_frame(g)
    n = g.order
    w = embed_legs(f.w.w, (n, pad, n, pad), (0, 2))
    ext = np.eye(pad)
    return Frame(
        MultiplicativeUnitary(w),
        Antilinear(np.kron(f.j.matrix, ext)),
        Antilinear(np.kron(f.jhat.matrix, ext)),
    )


def phased_frame(g: FiniteGroup, phase: complex) -> Frame:
    """Group frame with J multiplied by a unit scalar; λ becomes phase²."""
    f = group_frame(g)
    return Frame(f.w, f.j.scaled(phase), f.jhat)


def catalog_actions() -> dict[str, GroupAction]:
    z2 = cyclic(2)
    z3, z4 = cyclic(3), cyclic(4)
    return {
        "trivial_z2_on_z2": GroupAction(z2, group_frame(z2), np.array([np.eye(2), np.eye(2)])),
        "z2_on_z3": automorphism_action(z3, z2, inversion_automorphisms(z3)),
        "z2_on_z4": automorphism_action(z4, z2, inversion_automorphisms(z4)),
    }


def noncommuting_action() -> GroupAction:
    """ℤ₂ acting on the group frame of ℤ₂ through the Hadamard matrix.

    A representation, but u⊗u does not commute with W_ℤ₂.
    """
    z2 = cyclic(2)
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
    return GroupAction(z2, group_frame(z2), np.array([np.eye(2), h]))

