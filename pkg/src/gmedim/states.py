"""Target states, local Weyl operators, product bases and noise channels.

The generalised Pauli operators act on basis labels 0..d-1 as
``X|k> = |k+1 mod d>`` and ``Z|k> = w**k |k>`` with ``w = exp(2*pi*i/d)``,
so ``Z X = w X Z``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import schur

from .config import DEFAULTS
from .registers import (
    Array,
    DensityMatrix,
    PureState,
    RegisterShape,
    apply_local,
)

__all__ = [
    "BasisFamily",
    "NoiseModel",
    "ghz",
    "cluster",
    "pauli_x",
    "pauli_z",
    "mub_basis",
    "computational_basis",
    "fourier_basis",
    "weyl_eigenbasis",
    "depolarize",
    "dephase_diag",
    "classical_diagonal",
    "state_diagonal_family",
    "ghz_diag_unitary",
    "cluster_diag_unitary",
]


@dataclass(frozen=True)
class BasisFamily:
    """An orthonormal basis of C^d; `vectors` holds the basis states as rows."""

    d: int
    kind: str
    vectors: Array
    index: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("computational", "fourier", "mub"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind == "mub" and self.index is None:
            raise ValueError("mub basis needs an index")
        vecs = np.asarray(self.vectors, dtype=complex)
        if vecs.shape != (self.d, self.d):
            raise ValueError(f"expected {self.d} vectors of length {self.d}")
        gram = vecs @ vecs.conj().T
        if np.abs(gram - np.eye(self.d)).max() > DEFAULTS.gram_atol:
            raise ValueError("basis vectors are not orthonormal within tolerance")
        object.__setattr__(self, "vectors", vecs)

    def projectors(self) -> Array:
        """Stacked rank-1 projectors, shape (d, d, d)."""
        return np.einsum("li,lj->lij", self.vectors, self.vectors.conj())


@dataclass(frozen=True)
class NoiseModel:
    kind: str
    v: float

    def __post_init__(self) -> None:
        if self.kind not in ("depolarizing", "dephasing"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.v <= 1.0:
            raise ValueError(f"visibility must lie in [0, 1], got {self.v}")

    def apply(self, state: PureState) -> DensityMatrix:
        if self.kind == "depolarizing":
            return depolarize(state, self.v)
        return dephase_diag(state, self.v)


def ghz(n: int, d: int) -> PureState:
    """(1/sqrt(d)) sum_i |i..i> on n qudits."""
    shape = RegisterShape(n, d)
    amp = np.zeros(shape.dim, dtype=complex)
    step = (shape.dim - 1) // (d - 1)  # index of |i..i> is i * (d**n - 1)/(d - 1)
    amp[np.arange(d) * step] = 1.0 / np.sqrt(d)
    return PureState(shape, amp)


def cluster(n: int, d: int) -> PureState:
    """Linear cluster state with nearest-neighbour phase pairs.

    Amplitude of |k_1..k_n> is w**(k_1 k_2 + k_2 k_3 + ... + k_{n-1} k_n)
    over the uniform superposition.
    """
    shape = RegisterShape(n, d)
    digits = np.indices(shape.axis_dims).reshape(n, -1)
    phase = np.zeros(shape.dim, dtype=np.int64)
    for a, b in zip(digits, digits[1:]):
        phase += a * b
    amp = np.exp(2j * np.pi * phase / d) / d ** (n / 2)
    return PureState(shape, amp)


def pauli_x(d: int) -> Array:
    x = np.zeros((d, d), dtype=complex)
    x[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return x


def pauli_z(d: int) -> Array:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def computational_basis(d: int) -> BasisFamily:
    return BasisFamily(d, "computational", np.eye(d, dtype=complex))


def mub_basis(d: int, j: int) -> BasisFamily:
    """Basis with vectors e_l[m] = w**(m(l + j m)) / sqrt(d).

    Orthonormal for every d and every j in 0..d-1.  The d families together
    with the computational basis are pairwise mutually unbiased only when d
    is an odd prime; for other d they remain valid orthonormal measurement
    bases and are used as such.
    """
    if not 0 <= j < d:
        raise ValueError(f"basis index must lie in 0..{d - 1}, got {j}")
    m = np.arange(d)
    l, mm = np.meshgrid(m, m, indexing="ij")
    vecs = np.exp(2j * np.pi * mm * (l + j * mm) / d) / np.sqrt(d)
    kind = "fourier" if j == 0 else "mub"
    return BasisFamily(d, kind, vecs, index=j)


def fourier_basis(d: int) -> BasisFamily:
    return mub_basis(d, 0)


def weyl_eigenbasis(d: int, c: int) -> Array:
    """Eigenbasis of X Z^c, stacked as rows.

    The spectrum of X Z^c is nondegenerate for every d and c, so the rank-1
    projectors onto these eigenvectors are unique; only phases and row order
    are convention.  For odd d this reproduces (a relabeling of) the formula
    bases, since the basis with index j diagonalises X Z^(2j); for even d it
    also covers the odd powers of Z, which the formula cannot reach.
    """
    c = c % d
    mat = pauli_x(d) @ np.linalg.matrix_power(pauli_z(d), c)
    upper, vecs = schur(mat, output="complex")
    offdiag = np.abs(upper - np.diag(np.diag(upper))).max()
    if offdiag > 1e-10:
        raise ValueError(f"Schur form of X Z^{c} is not diagonal: {offdiag:.2e}")
    return vecs.T.copy()


def classical_diagonal(n: int, d: int) -> Array:
    """(1/d) sum_i |i..i><i..i| as a dense matrix."""
    shape = RegisterShape(n, d)
    diag = np.zeros(shape.dim)
    step = (shape.dim - 1) // (d - 1)
    diag[np.arange(d) * step] = 1.0 / d
    return np.diag(diag).astype(complex)


def depolarize(state: PureState | DensityMatrix, v: float) -> DensityMatrix:
    """v * rho + (1 - v) * identity / d**n."""
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    shape = state.shape
    rho = state.projector() if isinstance(state, PureState) else state.mat
    mixed = np.eye(shape.dim) / shape.dim
    return DensityMatrix(shape, v * rho + (1.0 - v) * mixed)


def dephase_diag(state: PureState | DensityMatrix, v: float) -> DensityMatrix:
    """v * rho + (1 - v) * (1/d) sum_i |i..i><i..i|."""
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    shape = state.shape
    rho = state.projector() if isinstance(state, PureState) else state.mat
    return DensityMatrix(shape, v * rho + (1.0 - v) * classical_diagonal(shape.n, shape.d))


def _weyl_word(kind: str, labels: Tuple[int, ...], d: int) -> list[Optional[Array]]:
    """Local operator word generating the state-diagonal family member `labels`."""
    n = len(labels)
    x, z = pauli_x(d), pauli_z(d)
    word: list[Optional[Array]] = [None] * n
    if kind == "ghz":
        powers = [z] + [x] * (n - 1)
    elif kind == "cluster":
        powers = [z] * (n - 2) + [x, x]
    else:
        raise ValueError(f"no state-diagonal family for target {kind!r}")
    for site, (a, op) in enumerate(zip(labels, powers)):
        if a:
            word[site] = np.linalg.matrix_power(op, a)
    return word


def state_diagonal_family(kind: str, n: int, d: int) -> Array:
    """Orthonormal family diagonalising the relaxation, stacked as rows.

    Row a (base-d digits a_1..a_n) is the target state hit with one local
    Weyl operator per site; row 0 is the target itself.  Orthonormality is
    checked and a diagnostic error raised if it fails.
    """
    if n < 2:
        raise ValueError("state-diagonal family needs at least two particles")
    target = ghz(n, d) if kind == "ghz" else cluster(n, d)
    shape = target.shape
    fam = np.empty((shape.dim, shape.dim), dtype=complex)
    for row, labels in enumerate(itertools.product(range(d), repeat=n)):
        fam[row] = apply_local(_weyl_word(kind, labels, d), target.amp, shape)
    gram_dev = np.abs(fam @ fam.conj().T - np.eye(shape.dim)).max()
    if gram_dev > 1e-10:
        raise ValueError(
            f"state-diagonal family for {kind}({n},{d}) is not orthonormal: "
            f"max Gram deviation {gram_dev:.2e}"
        )
    return fam


def _diag_unitary(kind: str, n: int, d: int) -> Array:
    fam = state_diagonal_family(kind, n, d)
    u = fam.conj()  # U|psi_a> = |a>, in particular U psi U^dag = |0..0><0..0|
    dev = np.abs(u @ u.conj().T - np.eye(u.shape[0])).max()
    if dev > DEFAULTS.unitary_atol:
        raise ValueError(f"diagonalising map deviates from unitarity by {dev:.2e}")
    return u


def ghz_diag_unitary(n: int, d: int) -> Array:
    """Unitary mapping the GHZ-diagonal family onto the computational basis."""
    return _diag_unitary("ghz", n, d)


def cluster_diag_unitary(n: int, d: int) -> Array:
    """Unitary mapping the cluster-diagonal family onto the computational basis."""
    return _diag_unitary("cluster", n, d)
