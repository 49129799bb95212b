"""Qudit register shapes, typed state wrappers and tensor primitives.

Conventions
-----------
Particle labels are 1-based.  Particle 1 is the most significant base-d digit
of a register index, so ``index = sum_k a_k * d**(n-k)`` and C-order reshapes
of a length-d**n vector recover the per-particle axes in label order.  A
bipartition is identified by the block that contains particle 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULTS, Settings

Array = np.ndarray

__all__ = [
    "RegisterShape",
    "PureState",
    "DensityMatrix",
    "HermitianOperator",
    "Bipartition",
    "kron",
    "partial_trace",
    "eig_desc",
    "bipartitions",
    "apply_local",
]


@dataclass(frozen=True)
class RegisterShape:
    """n qudits of equal local dimension d."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one particle, got n={self.n}")
        if self.d < 2:
            raise ValueError(f"local dimension must be >= 2, got d={self.d}")
        if self.d**self.n > DEFAULTS.max_tensor_dim:
            raise ValueError(
                f"total dimension d**n = {self.d}**{self.n} exceeds the "
                f"tensor budget {DEFAULTS.max_tensor_dim}"
            )

    @property
    def dim(self) -> int:
        return self.d**self.n

    @property
    def axis_dims(self) -> Tuple[int, ...]:
        return (self.d,) * self.n


@dataclass(frozen=True)
class PureState:
    """Unit-norm state vector on a register."""

    shape: RegisterShape
    amp: Array

    def __post_init__(self) -> None:
        amp = np.asarray(self.amp, dtype=complex).reshape(-1)
        if amp.size != self.shape.dim:
            raise ValueError(
                f"amplitude length {amp.size} does not match d**n = {self.shape.dim}"
            )
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > DEFAULTS.norm_atol:
            raise ValueError(f"state norm {nrm!r} deviates from 1 beyond tolerance")
        object.__setattr__(self, "amp", amp)

    def projector(self) -> Array:
        return np.outer(self.amp, self.amp.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.shape, self.projector())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    shape: RegisterShape
    mat: Array

    def __post_init__(self) -> None:
        mat = np.asarray(self.mat, dtype=complex)
        D = self.shape.dim
        if mat.shape != (D, D):
            raise ValueError(f"matrix shape {mat.shape} does not match ({D}, {D})")
        if np.abs(mat - mat.conj().T).max() > DEFAULTS.herm_atol:
            raise ValueError("matrix is not Hermitian within tolerance")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > DEFAULTS.trace_atol:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond tolerance")
        if np.linalg.eigvalsh(mat).min() < -DEFAULTS.psd_atol:
            raise ValueError("matrix has an eigenvalue below the PSD tolerance")
        object.__setattr__(self, "mat", mat)


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian operator on a register, not necessarily normalised."""

    shape: RegisterShape
    mat: Array

    def __post_init__(self) -> None:
        mat = np.asarray(self.mat, dtype=complex)
        D = self.shape.dim
        if mat.shape != (D, D):
            raise ValueError(f"matrix shape {mat.shape} does not match ({D}, {D})")
        if np.abs(mat - mat.conj().T).max() > DEFAULTS.herm_atol:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "mat", mat)

    def expectation(self, state: PureState) -> float:
        return float(np.real(state.amp.conj() @ (self.mat @ state.amp)))


@dataclass(frozen=True)
class Bipartition:
    """Split of the particle labels, identified by the block holding label 1.

    `block` is the strictly increasing tuple of labels on the particle-1 side;
    the complement is implicit.
    """

    shape: RegisterShape
    block: Tuple[int, ...]

    def __post_init__(self) -> None:
        blk = tuple(int(x) for x in self.block)
        n = self.shape.n
        if not blk or blk[0] != 1:
            raise ValueError("bipartition block must contain particle 1 first")
        if any(b >= a for a, b in zip(blk[1:], blk)):
            raise ValueError("bipartition block must be strictly increasing")
        if any(x < 1 or x > n for x in blk):
            raise ValueError(f"labels must lie in 1..{n}, got {blk}")
        if len(blk) == n:
            raise ValueError("bipartition block must be a proper subset")
        object.__setattr__(self, "block", blk)

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(x for x in range(1, self.shape.n + 1) if x not in self.block)

    @property
    def axes(self) -> Tuple[int, ...]:
        """0-based tensor axes of the particle-1 block."""
        return tuple(x - 1 for x in self.block)

    @property
    def co_axes(self) -> Tuple[int, ...]:
        return tuple(x - 1 for x in self.complement)

    def block_dims(self) -> Tuple[int, int]:
        d = self.shape.d
        return d ** len(self.block), d ** len(self.complement)

    def __str__(self) -> str:
        left = "".join(str(x) for x in self.block)
        right = "".join(str(x) for x in self.complement)
        return f"{left}|{right}"


def bipartitions(shape: RegisterShape) -> list[Bipartition]:
    """All canonical bipartitions, lexicographic in the particle-1 block."""
    if shape.n < 2:
        raise ValueError("bipartitions need at least two particles")
    rest = range(2, shape.n + 1)
    found = []
    for k in range(shape.n - 1):
        for tail in itertools.combinations(rest, k):
            found.append(Bipartition(shape, (1,) + tail))
    found.sort(key=lambda b: b.block)
    return found


def kron(factors: Sequence[Array]) -> Array:
    """Kronecker product of the given matrices, with a size guard."""
    if not factors:
        raise ValueError("kron of an empty sequence")
    total = 1
    for f in factors:
        total *= np.asarray(f).shape[0]
        if total > DEFAULTS.max_tensor_dim:
            raise ValueError(
                f"kron result dimension exceeds the tensor budget "
                f"{DEFAULTS.max_tensor_dim}"
            )
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def partial_trace(mat: Array, shape: RegisterShape, keep: Iterable[int]) -> Array:
    """Trace out all particles except `keep` (1-based labels, output in label order)."""
    keep_axes = sorted(int(x) - 1 for x in keep)
    if any(ax < 0 or ax >= shape.n for ax in keep_axes):
        raise ValueError(f"keep labels out of range 1..{shape.n}")
    if len(set(keep_axes)) != len(keep_axes):
        raise ValueError("duplicate labels in keep")
    drop_axes = [ax for ax in range(shape.n) if ax not in keep_axes]
    d = shape.d
    tens = np.asarray(mat, dtype=complex).reshape(shape.axis_dims * 2)
    for ax in reversed(drop_axes):
        tens = np.trace(tens, axis1=ax, axis2=ax + tens.ndim // 2)
    dk = d ** len(keep_axes)
    return tens.reshape(dk, dk)


def eig_desc(mat: Array, atol: float = DEFAULTS.herm_atol) -> Tuple[Array, Array]:
    """Eigendecomposition with non-increasing eigenvalues; Hermitian input only."""
    mat = np.asarray(mat, dtype=complex)
    if np.abs(mat - mat.conj().T).max() > atol:
        raise ValueError("eig_desc expects a Hermitian matrix")
    vals, vecs = np.linalg.eigh(mat)
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def apply_local(
    ops: Sequence[Optional[Array]], amp: Array, shape: RegisterShape
) -> Array:
    """Apply one d x d operator per particle (None = identity) to a state vector.

    Works axis by axis on the reshaped tensor, so the full d**n x d**n matrix
    is never materialised.
    """
    if len(ops) != shape.n:
        raise ValueError(f"expected {shape.n} local operators, got {len(ops)}")
    tens = np.asarray(amp, dtype=complex).reshape(shape.axis_dims)
    for ax, op in enumerate(ops):
        if op is None:
            continue
        op = np.asarray(op, dtype=complex)
        if op.shape != (shape.d, shape.d):
            raise ValueError(f"local operator {ax} has shape {op.shape}")
        tens = np.moveaxis(np.tensordot(op, tens, axes=([1], [ax])), 0, ax)
    return tens.reshape(-1)
