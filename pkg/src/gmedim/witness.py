"""Fidelity bounds, two-basis witnesses and the ten-measurement witness.

Everything in this module certifies a lower bound on the GME-dimension
from scalar data: either a fidelity with a pure target or the value of
a witness operator built from a small number of global product bases.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

from .registers import (
    Array,
    DensityMatrix,
    HermitianOperator,
    PureState,
    RegisterShape,
    bipartitions,
    eig_desc,
)
from .states import cluster, fourier_basis, ghz, mub_basis

__all__ = [
    "GmeHypothesis",
    "WitnessReport",
    "fidelity",
    "fidelity_bound_general",
    "fidelity_bound_closed",
    "ghz_witness_operator",
    "cluster_witness_operator",
    "minimal_witness_bound",
    "certify",
    "vcrit_ghz_depolarizing",
    "vcrit_ghz_dephasing",
    "vcrit_cluster",
    "vcrit_fidelity_depolarizing",
    "tenbasis_witness_operator",
    "tenbasis_linear_operator",
    "tenbasis_extreme_eigenvalues",
    "tenbasis_tuples",
    "tenbasis_vcrit",
    "tenbasis_vcrit_exact",
    "impact_delta",
    "ghz_witness_value",
    "cluster_witness_value",
]


@dataclass(frozen=True)
class GmeHypothesis:
    """Hypothesized upper bound d_gme on the GME-dimension of a state."""

    d_gme: int

    def check(self, d: int) -> int:
        if not 1 <= self.d_gme <= d:
            raise ValueError(f"d_gme must lie in 1..{d}, got {self.d_gme}")
        return self.d_gme


def _as_hypothesis(h: "GmeHypothesis | int") -> GmeHypothesis:
    return h if isinstance(h, GmeHypothesis) else GmeHypothesis(int(h))


@dataclass(frozen=True)
class WitnessReport:
    value: float
    bounds: Dict[int, float]
    certified_lower_bound: int
    fidelity_lower_bound: float


def fidelity(rho: DensityMatrix, psi: PureState) -> float:
    """<psi| rho |psi>."""
    if rho.shape != psi.shape:
        raise ValueError(f"shape mismatch: {rho.shape} vs {psi.shape}")
    val = np.real(psi.amp.conj() @ rho.mat @ psi.amp)
    return float(val)


def fidelity_bound_general(psi: PureState, h: GmeHypothesis | int) -> float:
    """Largest fidelity any state of GME-dimension <= d_gme can reach with psi.

    Per bipartition this is the sum of the d_gme largest squared Schmidt
    coefficients; the bound is the maximum over all bipartitions.
    """
    k = _as_hypothesis(h).check(psi.shape.d)
    best = 0.0
    tensor = psi.amp.reshape(psi.shape.axis_dims)
    for bp in bipartitions(psi.shape):
        axes = bp.axes + bp.co_axes
        mat = tensor.transpose(axes).reshape(bp.block_dims())
        sv = np.linalg.svd(mat, compute_uv=False)
        best = max(best, float(np.sum(np.sort(sv**2)[::-1][:k])))
    return min(best, 1.0)


def fidelity_bound_closed(d: int, h: GmeHypothesis | int) -> float:
    """d_gme/d; valid for GHZ, linear cluster and AME targets."""
    k = _as_hypothesis(h).check(d)
    return k / d


def _zero_sum_rows(bases: list[Array], d: int) -> Array:
    """Stack product vectors over outcome tuples with digit sum 0 mod d."""
    n = len(bases)
    dim = d**n
    rows = np.empty((d ** (n - 1), dim), dtype=complex)
    row = 0
    for partial in itertools.product(range(d), repeat=n - 1):
        last = (-sum(partial)) % d
        vec = bases[0][partial[0]] if n > 1 else bases[0][last]
        for site in range(1, n - 1):
            vec = np.kron(vec, bases[site][partial[site]])
        vec = np.kron(vec, bases[-1][last])
        rows[row] = vec
        row += 1
    return rows


def ghz_witness_operator(n: int, d: int) -> HermitianOperator:
    """Two-basis GHZ witness: computational-diagonal term plus the projector
    onto zero-total-momentum Fourier outcomes."""
    if n < 2:
        raise ValueError("witness needs at least two particles")
    shape = RegisterShape(n, d)
    diag = np.zeros(shape.dim)
    step = (shape.dim - 1) // (d - 1)
    diag[np.arange(d) * step] = 1.0
    term_a = np.diag(diag).astype(complex)
    fou = fourier_basis(d).vectors
    rows = _zero_sum_rows([fou] * n, d)
    term_b = rows.T @ rows.conj()
    return HermitianOperator(shape, term_a + term_b)


def _cluster_term(n: int, d: int, fourier_on_odd: bool) -> Array:
    """One of the two cluster-witness terms as a dense matrix.

    Sites carrying the Fourier basis have their outcome fixed by the sum of
    the two computational neighbours (absent neighbours count as zero), so
    the free labels are exactly the computational outcomes.
    """
    fou = fourier_basis(d).vectors
    eye = np.eye(d, dtype=complex)
    # 1-based site parity: odd sites are 1, 3, ... (axes 0, 2, ...).
    fourier_sites = [s for s in range(n) if (s % 2 == 0) == fourier_on_odd]
    comp_sites = [s for s in range(n) if s not in fourier_sites]
    rows = []
    for free in itertools.product(range(d), repeat=len(comp_sites)):
        p = dict(zip(comp_sites, free))
        vec = np.array([1.0 + 0j])
        for site in range(n):
            if site in p:
                vec = np.kron(vec, eye[p[site]])
            else:
                q = (p.get(site - 1, 0) + p.get(site + 1, 0)) % d
                vec = np.kron(vec, fou[q])
        rows.append(vec)
    rows = np.stack(rows)
    return rows.T @ rows.conj()


def cluster_witness_operator(n: int, d: int) -> HermitianOperator:
    """Two-basis witness for the linear cluster state.

    Term one measures odd sites in the Fourier basis and even sites in the
    computational basis; term two swaps the assignment.
    """
    if n < 2:
        raise ValueError("cluster witness needs at least two particles")
    shape = RegisterShape(n, d)
    mat = _cluster_term(n, d, fourier_on_odd=True) + _cluster_term(n, d, fourier_on_odd=False)
    return HermitianOperator(shape, mat)


def minimal_witness_bound(d: int, h: GmeHypothesis | int) -> float:
    """Largest two-basis witness value compatible with GME-dimension <= d_gme."""
    k = _as_hypothesis(h).check(d)
    return 1.0 + k / d


_FAMILY_BOUNDS: Dict[str, Callable[[int, int], float]] = {
    "ghz": lambda d, k: 1.0 + k / d,
    "cluster": lambda d, k: 1.0 + k / d,
    "tenbasis": lambda d, k: 3.0 + 9.0 * k / d,
}


def certify(report_value: float, d: int, family: str) -> WitnessReport:
    """Turn an observed witness value into a certified GME-dimension bound.

    The certified lower bound is 1 + the largest hypothesis whose threshold
    the value exceeds; a value violating no threshold certifies nothing (1).
    """
    if family not in _FAMILY_BOUNDS:
        raise ValueError(f"unknown witness family {family!r}")
    bound = _FAMILY_BOUNDS[family]
    bounds = {k: bound(d, k) for k in range(1, d + 1)}
    violated = [k for k, b in bounds.items() if report_value > b]
    certified = 1 + max(violated, default=0)
    if family == "tenbasis":
        fid = (report_value - 3.0) / 9.0
    else:
        fid = report_value - 1.0
    return WitnessReport(
        value=float(report_value),
        bounds=bounds,
        certified_lower_bound=certified,
        fidelity_lower_bound=float(fid),
    )


def vcrit_ghz_depolarizing(n: int, d: int, h: GmeHypothesis | int) -> float:
    """Visibility at which the depolarized GHZ witness value meets 1 + d_gme/d."""
    k = _as_hypothesis(h).check(d)
    if k == d:
        raise ValueError("no finite threshold at the full-dimension hypothesis")
    scale = d ** (n - 2)
    return (1 - scale * (k + d - 1)) / (1 - scale * (2 * d - 1))


def vcrit_ghz_dephasing(d: int, h: GmeHypothesis | int) -> float:
    """(d_gme - 1)/(d - 1); exact and tight for the dephased GHZ state."""
    k = _as_hypothesis(h).check(d)
    return (k - 1) / (d - 1)


def vcrit_cluster(n: int, d: int, h: GmeHypothesis | int) -> float:
    """Cluster witness threshold; the same value governs depolarizing and
    dephasing noise."""
    k = _as_hypothesis(h).check(d)
    if k == d:
        raise ValueError("no finite threshold at the full-dimension hypothesis")
    a = (1 + (-1) ** (n + 1)) / 4
    b = 1 + d ** (2 * a)
    top = d ** (n / 2 + a)
    return (b - top - top / d * k) / (b - 2 * top)


def vcrit_fidelity_depolarizing(n: int, d: int, h: GmeHypothesis | int) -> float:
    """Visibility at which the depolarized-target fidelity meets d_gme/d."""
    k = _as_hypothesis(h).check(d)
    return (k * d ** (n - 1) - 1) / (d**n - 1)


def tenbasis_tuples(d: int) -> list[tuple[int, int, int]]:
    """The nine basis-index triples used alongside the computational basis."""
    return [
        (0, 0, 0),
        (1, 1, d - 2),
        (d - 1, d - 1, 2),
        (0, 1, d - 1),
        (1, 0, d - 1),
        (0, d - 1, 1),
        (1, d - 1, 0),
        (d - 1, 0, 1),
        (d - 1, 1, 0),
    ]


def _tenbasis_guard(d: int) -> None:
    if d % 2 == 0:
        raise ValueError("ten-basis witness is defined for odd local dimension")
    if d < 3:
        raise ValueError("ten-basis witness needs d >= 3")


def tenbasis_witness_operator(d: int) -> HermitianOperator:
    """Three-particle witness built from the computational basis plus nine
    global product bases, each contributing its zero-sum outcome projector."""
    _tenbasis_guard(d)
    shape = RegisterShape(3, d)
    diag = np.zeros(shape.dim)
    step = (shape.dim - 1) // (d - 1)
    diag[np.arange(d) * step] = 3.0
    mat = np.diag(diag).astype(complex)
    for js in tenbasis_tuples(d):
        bases = [mub_basis(d, j).vectors for j in js]
        rows = _zero_sum_rows(bases, d)
        mat += rows.T @ rows.conj()
    return HermitianOperator(shape, mat)


def tenbasis_linear_operator(d: int) -> LinearOperator:
    """Matrix-free action of the ten-basis witness, for large d."""
    _tenbasis_guard(d)
    dim = d**3
    step = (dim - 1) // (d - 1)
    diag_idx = np.arange(d) * step
    basis_mats = [mub_basis(d, j).vectors for j in range(d)]
    digit = np.indices((d, d, d)).sum(axis=0) % d
    mask = (digit == 0).astype(float)
    tuples = tenbasis_tuples(d)

    def matvec(v: Array) -> Array:
        v = np.asarray(v, dtype=complex).reshape(-1)
        out = np.zeros(dim, dtype=complex)
        out[diag_idx] = 3.0 * v[diag_idx]
        tensor = v.reshape(d, d, d)
        for js in tuples:
            coeff = tensor
            for axis, j in enumerate(js):
                coeff = np.moveaxis(
                    np.tensordot(basis_mats[j].conj(), coeff, axes=([1], [axis])),
                    0,
                    axis,
                )
            coeff = coeff * mask
            back = coeff
            for axis, j in enumerate(js):
                back = np.moveaxis(
                    np.tensordot(basis_mats[j].T, back, axes=([1], [axis])), 0, axis
                )
            out += back.reshape(-1)
        return out

    return LinearOperator((dim, dim), matvec=matvec, dtype=complex)


def tenbasis_extreme_eigenvalues(d: int, num: int = 2) -> Array:
    """Largest `num` eigenvalues of the ten-basis witness, descending."""
    op = tenbasis_linear_operator(d)
    vals = eigsh(op, k=num, which="LA", return_eigenvectors=False)
    return np.sort(vals.real)[::-1]


def tenbasis_vcrit(d: int, h: GmeHypothesis | int) -> float:
    k = _as_hypothesis(h).check(d)
    return (d**2 - 1 + 3 * d * (k - 1)) / (4 * d**2 - 3 * d - 1)


def tenbasis_vcrit_exact(d: int, h: GmeHypothesis | int) -> float:
    k = _as_hypothesis(h).check(d)
    return (k * d**2 - 1) / (d**3 - 1)


def impact_delta(d: int, h: GmeHypothesis | int) -> float:
    """(1 - v_tenbasis)/(1 - v_exact): cost of using ten bases instead of
    full fidelity measurements."""
    k = _as_hypothesis(h).check(d)
    if k == d:
        raise ValueError("both thresholds equal 1 at the full-dimension hypothesis")
    return (1 - tenbasis_vcrit(d, k)) / (1 - tenbasis_vcrit_exact(d, k))


def ghz_witness_value(rho: DensityMatrix) -> float:
    """Convenience: evaluate the GHZ witness on a state of matching shape."""
    op = ghz_witness_operator(rho.shape.n, rho.shape.d)
    return float(np.real(np.trace(op.mat @ rho.mat)))


def cluster_witness_value(rho: DensityMatrix) -> float:
    op = cluster_witness_operator(rho.shape.n, rho.shape.d)
    return float(np.real(np.trace(op.mat @ rho.mat)))
