"""Analytic ground-truth constructions used as independent test oracles.

These are the closed-form states and brute-force searches that the rest of
the package is checked against: the three-qubit-GHZ mixture that simulates
the qutrit GHZ state at visibility one half, the tight dephased mixture
saturating the fidelity bound, projector residuals for witness operators,
and a randomized lower bound on the best rank-limited fidelity.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .registers import (
    Bipartition,
    DensityMatrix,
    HermitianOperator,
    PureState,
    RegisterShape,
    bipartitions,
)
from .states import classical_diagonal, ghz

Array = np.ndarray

__all__ = [
    "intro_tau",
    "qubit_ghz_mixture",
    "tight_dephased_mixture",
    "projector_residual",
    "result1_bruteforce",
]


def intro_tau(p: float) -> DensityMatrix:
    """Qutrit GHZ state at visibility p against the classical diagonal noise.

    Fixed at three qutrits: p |ghz><ghz| + (1-p)/3 sum_i |iii><iii|.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"visibility {p!r} outside [0, 1]")
    shape = RegisterShape(3, 3)
    mat = p * ghz(3, 3).projector() + (1.0 - p) * classical_diagonal(3, 3)
    return DensityMatrix(shape, mat)


def qubit_ghz_mixture() -> DensityMatrix:
    """Uniform mixture of the three two-level GHZ states inside three qutrits.

    Each component is (|aaa> + |bbb>)/sqrt(2) for a level pair {a, b} of
    {0, 1, 2}.  Every component has Schmidt rank two across every cut, so the
    mixture is two-dimensionally entangled at most, yet it matches intro_tau
    at visibility one half elementwise.
    """
    shape = RegisterShape(3, 3)
    step = (shape.dim - 1) // 2  # index of |iii> is i * step
    mat = np.zeros((shape.dim, shape.dim), dtype=complex)
    for a, b in combinations(range(3), 2):
        vec = np.zeros(shape.dim, dtype=complex)
        vec[a * step] = vec[b * step] = 1.0 / np.sqrt(2.0)
        mat += np.outer(vec, vec.conj()) / 3.0
    return DensityMatrix(shape, mat)


def tight_dephased_mixture(d: int, d_gme: int, n: int = 3) -> DensityMatrix:
    """Average of sublevel GHZ projectors over all d_gme-subsets of levels.

    Returns (1/C(d, d_gme)) sum_{|alpha|=d_gme} |Phi_alpha><Phi_alpha| with
    |Phi_alpha> = (1/sqrt(d_gme)) sum_{i in alpha} |i>^{otimes n}.  By
    construction no component exceeds Schmidt rank d_gme across any cut, and
    the average equals the GHZ state dephased to visibility
    (d_gme - 1)/(d - 1), which saturates the fidelity bound d_gme/d.
    """
    if not 1 <= d_gme <= d:
        raise ValueError(f"rank hypothesis {d_gme} outside 1..{d}")
    shape = RegisterShape(n, d)
    step = (shape.dim - 1) // (d - 1) if d > 1 else 1
    mat = np.zeros((shape.dim, shape.dim), dtype=complex)
    weight = 1.0 / comb(d, d_gme)
    for alpha in combinations(range(d), d_gme):
        vec = np.zeros(shape.dim, dtype=complex)
        vec[[i * step for i in alpha]] = 1.0 / np.sqrt(d_gme)
        mat += weight * np.outer(vec, vec.conj())
    return DensityMatrix(shape, mat)


def projector_residual(op: HermitianOperator | Array, psi: PureState | Array) -> float:
    """Frobenius distance of (op - psi psi^dag) from being idempotent."""
    mat = op.mat if isinstance(op, HermitianOperator) else np.asarray(op, dtype=complex)
    amp = psi.amp if isinstance(psi, PureState) else np.asarray(psi, dtype=complex).reshape(-1)
    gap = mat - np.outer(amp, amp.conj())
    return float(np.linalg.norm(gap @ gap - gap))


def _cut_matrix(psi: PureState, bip: Bipartition) -> Array:
    """Amplitudes reshaped to a (block) x (complement) matrix."""
    tensor = psi.amp.reshape(psi.shape.axis_dims)
    moved = np.transpose(tensor, bip.axes + bip.co_axes)
    return moved.reshape(bip.block_dims())


def _random_schmidt_batch(rng: np.random.Generator, count: int, da: int, db: int, k: int) -> Array:
    """Stack of count random unit states with Schmidt rank at most k."""
    left = np.linalg.qr(
        rng.standard_normal((count, da, k)) + 1j * rng.standard_normal((count, da, k))
    )[0]
    right = np.linalg.qr(
        rng.standard_normal((count, db, k)) + 1j * rng.standard_normal((count, db, k))
    )[0]
    weights = np.abs(rng.standard_normal((count, k)))
    weights /= np.linalg.norm(weights, axis=1, keepdims=True)
    return np.einsum("sak,sk,sbk->sab", left, weights, right.conj(), optimize=True)


def _ascent_batch(
    rng: np.random.Generator, mat: Array, k: int, restarts: int, iterations: int
) -> float:
    """Best fidelity from alternating power-iteration ascent on both factors.

    Each restart keeps a pair of k-frame isometries and alternates
    U <- orth(M V), V <- orth(M^dag U); the fidelity of the optimal rank-k
    state supported on those frames is ||U^dag M V||_F^2.
    """
    da, db = mat.shape
    right = np.linalg.qr(
        rng.standard_normal((restarts, db, k)) + 1j * rng.standard_normal((restarts, db, k))
    )[0]
    for _ in range(iterations):
        left = np.linalg.qr(mat[None, :, :] @ right)[0]
        right = np.linalg.qr(mat.conj().T[None, :, :] @ left)[0]
    core = np.einsum("sai,ab,sbj->sij", left.conj(), mat, right, optimize=True)
    return float((np.abs(core) ** 2).sum(axis=(1, 2)).max())


def result1_bruteforce(
    psi: PureState,
    d_gme: int,
    samples: int = 10_000,
    restarts: int = 50,
    iterations: int = 200,
    seed: int = 7,
) -> float:
    """Best fidelity with psi found over sampled Schmidt-rank-limited states.

    For every bipartition this draws `samples` random states of Schmidt rank
    at most d_gme (Haar frames with random spectra), then runs `restarts`
    alternating power-iteration ascents of `iterations` steps each, and
    returns the overall maximum.  The result is a lower bound on the true
    rank-limited maximum and must never exceed fidelity_bound_general by
    more than numerical noise.  Randomness comes from numpy's default
    PCG64 generator seeded with `seed`.
    """
    if d_gme < 1:
        raise ValueError(f"rank hypothesis {d_gme} must be at least 1")
    rng = np.random.default_rng(seed)
    best = 0.0
    for bip in bipartitions(psi.shape):
        mat = _cut_matrix(psi, bip)
        da, db = mat.shape
        k = min(d_gme, da, db)
        drawn = _random_schmidt_batch(rng, samples, da, db, k)
        overlaps = np.einsum("sab,ab->s", drawn.conj(), mat, optimize=True)
        best = max(best, float((np.abs(overlaps) ** 2).max()))
        if restarts > 0 and iterations > 0:
            best = max(best, _ascent_batch(rng, mat, k, restarts, iterations))
    return best
