"""Convex-programming relaxations bounding the critical visibility.

Every solver in this module answers the same question: how much white noise
can a target state absorb before its statistics become explainable by a
mixture of states whose Schmidt rank across each bipartition stays below a
given cap.  The returned ``v_star`` is the largest visibility still inside
the relaxed set, so dimensionality is certified strictly above it.

Side conventions.  Each bipartition splits the register into two groups.
``sides="both"`` applies the r-positive reduction map on both groups, the
tighter variant.  ``sides="S-only"`` applies it on the smaller group only
(ties resolved to the group holding particle 1), which is the program the
published statistics rows were computed with.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import cvxpy as cp
import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .config import DEFAULTS, Settings
from .registers import (
    Array,
    Bipartition,
    DensityMatrix,
    PureState,
    RegisterShape,
    bipartitions,
)
from .states import fourier_basis, state_diagonal_family, weyl_eigenbasis

__all__ = [
    "ReductionMapSpec",
    "SchmidtVectorHypothesis",
    "MeasurementSet",
    "RelaxationResult",
    "LpVariableGroup",
    "LpProgram",
    "build_lp_program",
    "ghz_symmetry_reduce",
    "solve_lp_program",
    "lp_map_action",
    "lp_gme_dimension",
    "lp_schmidt_vector",
    "sdp_feasibility_probe",
    "sdp_gme_dimension",
    "build_measurement_set",
    "sdp_statistics",
]

SIDES = ("S-only", "both")


@dataclass(frozen=True)
class ReductionMapSpec:
    """Reduction-map cap r (the map is tr(X)*1 - X/r) and side placement."""

    r: int
    sides: str = "both"

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError(f"reduction cap must be a positive integer, got {self.r}")
        if self.sides not in SIDES:
            raise ValueError(f"sides must be one of {SIDES}, got {self.sides!r}")


@dataclass(frozen=True)
class SchmidtVectorHypothesis:
    """One Schmidt-rank cap per canonical bipartition, keyed by its block."""

    per_bipartition: Dict[Tuple[int, ...], int]

    @classmethod
    def triple(cls, d1: int, d2: int, d3: int) -> "SchmidtVectorHypothesis":
        """Three-particle caps across 1|23, 2|13 and 3|12, in that order."""
        return cls({(1,): d1, (1, 3): d2, (1, 2): d3})

    def validate(self, shape: RegisterShape) -> None:
        want = {b.block for b in bipartitions(shape)}
        got = {tuple(k) for k in self.per_bipartition}
        if got != want:
            raise ValueError(
                f"hypothesis must assign every canonical bipartition exactly once; "
                f"missing {sorted(want - got)}, extra {sorted(got - want)}"
            )
        for blk, r in self.per_bipartition.items():
            cap = min(shape.d ** len(blk), shape.d ** (shape.n - len(blk)))
            if not 1 <= int(r) <= cap:
                raise ValueError(f"rank for block {blk} must lie in 1..{cap}, got {r}")

    def rank_for(self, bip: Bipartition) -> int:
        return int(self.per_bipartition[bip.block])


@dataclass(frozen=True)
class RelaxationResult:
    """Optimal visibility with solver diagnostics.

    status is "optimal" for a direct solve (or feasibility at v=1),
    "infeasible-at-1" when bisection localised v* below 1 to the configured
    width, and "tolerance-limited" when the solver stopped early; in the
    last two cases `bracket` holds the certified (feasible, infeasible)
    interval.
    """

    v_star: float
    status: str
    primal_residual: float
    per_bipartition_weights: Dict[str, float]
    bracket: Optional[Tuple[float, float]] = None


def _smaller_side(bip: Bipartition) -> Tuple[int, ...]:
    if 2 * len(bip.block) <= bip.shape.n:
        return bip.block
    return bip.complement


def _active_trace_sites(bip: Bipartition, sides: str) -> List[Tuple[int, ...]]:
    """Groups the reduction map traces out, one entry per constraint."""
    if sides == "both":
        return [bip.block, bip.complement]
    if sides == "S-only":
        return [_smaller_side(bip)]
    raise ValueError(f"sides must be one of {SIDES}, got {sides!r}")


# ---------------------------------------------------------------------------
# Linear program in the state-diagonal frame
# ---------------------------------------------------------------------------


def _reduction_kernel(fam: Array, shape: RegisterShape, trace_sites: Sequence[int]) -> Array:
    """Gram matrix K[a, b] = tr(R_a R_b) of the traced-out family members.

    R_b is the reduction of family member b onto the kept group.  Applying
    the map that traces out `trace_sites` to a mixture sum_b s_b psi_b psi_b*
    and reading the diagonal back in the family frame gives exactly
    (K s)_a - s_a / r.

    Two equivalent contractions are available: the Gram matrix of the
    reduced states themselves, or tr(R_a R_b) = ||M_a* M_b^T||_F^2 on the
    traced factor, which is far cheaper when the traced group is the small
    one.  The cheaper route is picked per call.
    """
    trace_axes = sorted(s - 1 for s in trace_sites)
    keep_axes = [ax for ax in range(shape.n) if ax not in trace_axes]
    dim_tr = shape.d ** len(trace_axes)
    dim_keep = shape.d ** len(keep_axes)
    order = [0] + [1 + ax for ax in trace_axes] + [1 + ax for ax in keep_axes]
    mats = (
        fam.reshape((shape.dim,) + shape.axis_dims)
        .transpose(order)
        .reshape(shape.dim, dim_tr, dim_keep)
    )
    if dim_keep <= dim_tr or shape.dim ** 2 * dim_tr**2 > 2**27:
        reduced = np.einsum("bij,bik->bjk", mats, mats.conj(), optimize=True)
        flat = reduced.reshape(shape.dim, -1)
        return (flat @ flat.conj().T).real
    rows = mats.reshape(shape.dim * dim_tr, dim_keep)
    cross = rows.conj() @ rows.T
    cross = np.abs(cross.reshape(shape.dim, dim_tr, shape.dim, dim_tr)) ** 2
    return cross.sum(axis=(1, 3))


@dataclass(frozen=True)
class LpVariableGroup:
    """One nonnegative vector variable shared by an orbit of bipartitions.

    index_maps[i][b] is the family index that member i's copy of basis entry
    b lands on; the representative always carries the identity map.
    """

    rep: Bipartition
    members: Tuple[Bipartition, ...]
    index_maps: Tuple[Array, ...]
    rank: int


@dataclass(frozen=True)
class LpProgram:
    kind: str
    shape: RegisterShape
    sides: str
    family: Array
    groups: Tuple[LpVariableGroup, ...]


def build_lp_program(
    target: str,
    n: int,
    d: int,
    ranks: Union[int, SchmidtVectorHypothesis],
    sides: str = "both",
    settings: Settings = DEFAULTS,
) -> LpProgram:
    """One variable group per canonical bipartition, no symmetry merging."""
    if target not in ("ghz", "cluster"):
        raise ValueError(f"target must be 'ghz' or 'cluster', got {target!r}")
    if sides not in SIDES:
        raise ValueError(f"sides must be one of {SIDES}, got {sides!r}")
    shape = RegisterShape(n, d)
    if shape.dim > settings.lp_max_dim:
        raise ValueError(
            f"full register dimension {shape.dim} exceeds the LP budget "
            f"{settings.lp_max_dim}"
        )
    fam = state_diagonal_family(target, n, d)
    groups = []
    for bip in bipartitions(shape):
        if isinstance(ranks, SchmidtVectorHypothesis):
            ranks.validate(shape)
            r = ranks.rank_for(bip)
        else:
            r = int(ranks)
        if r < 1:
            raise ValueError(f"reduction cap must be positive, got {r}")
        ident = np.arange(shape.dim)
        groups.append(
            LpVariableGroup(rep=bip, members=(bip,), index_maps=(ident,), rank=r)
        )
    return LpProgram(kind=target, shape=shape, sides=sides, family=fam, groups=tuple(groups))


def _site_permutation(fam: Array, shape: RegisterShape, mapping: Dict[int, int]) -> Array:
    """Index map m with P_pi psi_b = phase * psi_m[b] for a site relabeling.

    mapping sends old site labels to new ones (1-based).  The family must
    permute monomially; anything else raises.
    """
    n, d, dim = shape.n, shape.d, shape.dim
    inv = {v: k for k, v in mapping.items()}
    # axis j of the permuted tensor reads from axis inv[j+1]-1 of the original
    order = [0] + [inv[j + 1] - 1 + 1 for j in range(n)]
    permuted = fam.reshape((dim,) + shape.axis_dims).transpose(order).reshape(dim, dim)
    overlaps = np.abs(fam.conj() @ permuted.T)  # [a, b] = |<psi_a | P psi_b>|
    m = overlaps.argmax(axis=0)
    onehot = np.zeros_like(overlaps)
    onehot[m, np.arange(dim)] = 1.0
    if np.abs(overlaps - onehot).max() > 1e-9 or len(set(m.tolist())) != dim:
        raise ValueError("state family does not permute monomially under this relabeling")
    return m


def ghz_symmetry_reduce(program: LpProgram) -> LpProgram:
    """Merge bipartition variables over particle-permutation orbits.

    Valid for the GHZ family with a uniform rank cap: the program is
    covariant under site permutations, so symmetrising any feasible point
    gives an orbit-shared one with the same visibility.  Orbits are classed
    by the unordered pair of group sizes.
    """
    if program.kind != "ghz":
        raise ValueError("symmetry reduction is only available for the ghz family")
    caps = {g.rank for g in program.groups}
    if len(caps) != 1:
        raise ValueError("symmetry reduction needs a uniform rank cap")
    if any(len(g.members) != 1 for g in program.groups):
        raise ValueError("program is already symmetry-reduced")
    shape = program.shape
    classes: Dict[int, List[Bipartition]] = {}
    for g in program.groups:
        classes.setdefault(len(_smaller_side(g.rep)), []).append(g.rep)
    merged = []
    for size in sorted(classes):
        members = sorted(classes[size], key=lambda b: (len(b.block), b.block))
        rep = members[0]
        rep_small, rep_large = _smaller_side(rep), None
        rep_large = rep.complement if rep_small == rep.block else rep.block
        maps = []
        for member in members:
            mem_small = _smaller_side(member)
            mem_large = member.complement if mem_small == member.block else member.block
            mapping = dict(zip(rep_small, mem_small))
            mapping.update(zip(rep_large, mem_large))
            maps.append(_site_permutation(program.family, shape, mapping))
        merged.append(
            LpVariableGroup(
                rep=rep,
                members=tuple(members),
                index_maps=tuple(maps),
                rank=next(iter(caps)),
            )
        )
    return LpProgram(
        kind=program.kind,
        shape=shape,
        sides=program.sides,
        family=program.family,
        groups=tuple(merged),
    )


def solve_lp_program(program: LpProgram, settings: Settings = DEFAULTS) -> RelaxationResult:
    """Assemble and solve max v subject to the noisy-state decomposition."""
    shape = program.shape
    dim = shape.dim
    groups = program.groups
    ncols = 1 + len(groups) * dim

    e0 = np.zeros(dim)
    e0[0] = 1.0
    vcol = sp.csr_matrix((-(e0 - 1.0 / dim)).reshape(-1, 1))
    eq_blocks = [vcol]
    ones = np.ones(dim)
    cols = np.arange(dim)
    for g in groups:
        block = sum(
            sp.csr_matrix((ones, (m, cols)), shape=(dim, dim)) for m in g.index_maps
        )
        eq_blocks.append(block)
    A_eq = sp.hstack(eq_blocks, format="csr")
    b_eq = np.full(dim, 1.0 / dim)

    ub_rows = []
    for gi, g in enumerate(groups):
        for sites in _active_trace_sites(g.rep, program.sides):
            kern = _reduction_kernel(program.family, shape, sites)
            block = -(kern - np.eye(dim) / g.rank)
            row = [sp.csr_matrix((dim, 1))]
            for gj in range(len(groups)):
                row.append(sp.csr_matrix(block) if gj == gi else sp.csr_matrix((dim, dim)))
            ub_rows.append(sp.hstack(row))
    A_ub = sp.vstack(ub_rows, format="csr")
    b_ub = np.zeros(A_ub.shape[0])

    cost = np.zeros(ncols)
    cost[0] = -1.0
    res = linprog(
        cost,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=[(0.0, 1.0)] + [(0.0, None)] * (ncols - 1),
        method="highs",
        options={
            "primal_feasibility_tolerance": settings.lp_feas_tol,
            "dual_feasibility_tolerance": settings.lp_feas_tol,
        },
    )
    if res.status == 1:
        status = "tolerance-limited"
    elif res.status != 0:
        raise RuntimeError(
            f"LP solve failed unexpectedly (status {res.status}: {res.message}); "
            "the maximally mixed point guarantees feasibility, so this is an "
            "internal error"
        )
    else:
        status = "optimal"

    x = res.x
    v_star = float(min(max(x[0], 0.0), 1.0))
    eq_res = np.abs(A_eq @ x - b_eq).max()
    ub_res = max(0.0, float((A_ub @ x).max()))
    neg_res = max(0.0, float(-(x[1:].min() if ncols > 1 else 0.0)))
    weights: Dict[str, float] = {}
    for gi, g in enumerate(groups):
        total = float(x[1 + gi * dim : 1 + (gi + 1) * dim].sum())
        for member in g.members:
            weights[str(member)] = total
    return RelaxationResult(
        v_star=v_star,
        status=status,
        primal_residual=float(max(eq_res, ub_res, neg_res)),
        per_bipartition_weights=weights,
    )


def lp_map_action(
    s: Array,
    b: Bipartition,
    r: int,
    side: str = "S",
    kind: str = "ghz",
) -> Array:
    """Diagonal action of the reduction map in the state-diagonal frame.

    side "S" traces out the particle-1 block of `b`, side "Sbar" the
    complement, and "both" concatenates the two.  Matches the dense
    computation 1 (x) tr(.) - X/r on the corresponding mixture.
    """
    shape = b.shape
    s = np.asarray(s, dtype=float)
    if s.shape != (shape.dim,):
        raise ValueError(f"coefficient vector must have length {shape.dim}")
    fam = state_diagonal_family(kind, shape.n, shape.d)
    if side == "both":
        parts = [lp_map_action(s, b, r, sd, kind) for sd in ("S", "Sbar")]
        return np.concatenate(parts)
    if side == "S":
        sites = b.block
    elif side == "Sbar":
        sites = b.complement
    else:
        raise ValueError(f"side must be 'S', 'Sbar' or 'both', got {side!r}")
    kern = _reduction_kernel(fam, shape, sites)
    return kern @ s - s / r


def lp_gme_dimension(
    target: str,
    n: int,
    d: int,
    r: int,
    sides: str = "both",
    use_symmetry: Optional[bool] = None,
    settings: Settings = DEFAULTS,
) -> RelaxationResult:
    """Critical visibility against all decompositions with Schmidt caps r.

    use_symmetry=None picks the orbit-merged program automatically for
    large GHZ instances; it is validated against the plain program in the
    test suite before being relied on.
    """
    program = build_lp_program(target, n, d, int(r), sides, settings)
    if use_symmetry is None:
        use_symmetry = target == "ghz" and len(program.groups) * program.shape.dim > 8192
    if use_symmetry:
        program = ghz_symmetry_reduce(program)
    return solve_lp_program(program, settings)


def lp_schmidt_vector(
    target: str,
    n: int,
    d: int,
    hyp: SchmidtVectorHypothesis,
    sides: str = "both",
    settings: Settings = DEFAULTS,
) -> RelaxationResult:
    """Critical visibility for a per-bipartition Schmidt-rank hypothesis."""
    program = build_lp_program(target, n, d, hyp, sides, settings)
    return solve_lp_program(program, settings)


# ---------------------------------------------------------------------------
# Semidefinite programs
# ---------------------------------------------------------------------------


def _coerce_density(rho: Union[DensityMatrix, PureState, Array], shape: Optional[RegisterShape]) -> Tuple[Array, RegisterShape]:
    if isinstance(rho, PureState):
        return rho.projector(), rho.shape
    if isinstance(rho, DensityMatrix):
        return rho.mat, rho.shape
    mat = np.asarray(rho, dtype=complex)
    if shape is None:
        raise ValueError("a raw matrix needs an explicit RegisterShape")
    if mat.shape != (shape.dim, shape.dim):
        raise ValueError(f"matrix shape {mat.shape} does not fit register {shape}")
    return mat, shape


def _site_reorder_matrix(shape: RegisterShape, front_sites: Sequence[int]) -> Array:
    """Permutation matrix moving the given sites to the front digit block."""
    front = [s - 1 for s in front_sites]
    rest = [ax for ax in range(shape.n) if ax not in front]
    digits = np.array(
        np.unravel_index(np.arange(shape.dim), shape.axis_dims)
    )  # (n, dim)
    new_index = np.ravel_multi_index(
        [digits[ax] for ax in front + rest],
        tuple(shape.axis_dims[ax] for ax in front + rest),
    )
    mat = np.zeros((shape.dim, shape.dim))
    mat[new_index, np.arange(shape.dim)] = 1.0
    return mat


def _map_constraint(sig, shape: RegisterShape, trace_sites: Sequence[int], r: int):
    """PSD constraint for (reduction map on trace_sites (x) identity)[sig]."""
    reorder = _site_reorder_matrix(shape, trace_sites)
    dim_tr = shape.d ** len(trace_sites)
    dim_keep = shape.dim // dim_tr
    moved = reorder @ sig @ reorder.T
    reduced = cp.partial_trace(moved, [dim_tr, dim_keep], 0)
    return cp.kron(np.eye(dim_tr), reduced) - moved * (1.0 / r) >> 0


def _map_residual(sig_val: Array, shape: RegisterShape, trace_sites: Sequence[int], r: int) -> float:
    reorder = _site_reorder_matrix(shape, trace_sites)
    dim_tr = shape.d ** len(trace_sites)
    dim_keep = shape.dim // dim_tr
    moved = reorder @ sig_val @ reorder.T
    reduced = np.trace(moved.reshape(dim_tr, dim_keep, dim_tr, dim_keep), axis1=0, axis2=2)
    out = np.kron(np.eye(dim_tr), reduced) - moved / r
    out = (out + out.conj().T) / 2
    return max(0.0, float(-np.linalg.eigvalsh(out).min()))


def _mixed_point_selftest(shape: RegisterShape, r: int, sides: str, settings: Settings) -> None:
    """Verify that the equal split of the maximally mixed state is feasible."""
    dim = shape.dim
    nb = len(bipartitions(shape))
    sig = np.eye(dim) / (nb * dim)
    worst = 0.0
    for bip in bipartitions(shape):
        for sites in _active_trace_sites(bip, sides):
            worst = max(worst, _map_residual(sig, shape, sites, r))
    if worst > settings.sdp_feas_tol:
        raise RuntimeError(
            f"startup self-test failed: maximally mixed split violates the "
            f"map constraints by {worst:.2e}"
        )


def sdp_feasibility_probe(
    rho: Union[DensityMatrix, PureState, Array],
    v: float,
    r: int,
    sides: str = "both",
    shape: Optional[RegisterShape] = None,
    settings: Settings = DEFAULTS,
) -> Tuple[bool, float, Dict[str, float]]:
    """Least-residual decomposition of the noisy state at fixed visibility.

    Returns (feasible, residual, per-bipartition traces); feasible means the
    best Frobenius mismatch stays within the configured tolerance.
    """
    mat, shp = _coerce_density(rho, shape)
    dim = shp.dim
    tau = v * mat + (1 - v) * np.eye(dim) / dim
    real_path = np.abs(mat.imag).max() < 1e-12
    bips = bipartitions(shp)
    if real_path:
        sigs = [cp.Variable((dim, dim), symmetric=True) for _ in bips]
        target = tau.real
    else:
        sigs = [cp.Variable((dim, dim), hermitian=True) for _ in bips]
        target = tau
    cons = []
    for sig, bip in zip(sigs, bips):
        cons.append(sig >> 0)
        for sites in _active_trace_sites(bip, sides):
            cons.append(_map_constraint(sig, shp, sites, r))
    gap = cp.norm(sum(sigs) - target, "fro")
    prob = cp.Problem(cp.Minimize(gap), cons)
    if real_path:
        prob.solve(solver="CLARABEL")
    else:
        prob.solve(solver="SCS", eps=1e-7, max_iters=settings.sdp_stats_max_iters)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"feasibility probe failed with solver status {prob.status}")
    residual = float(prob.value)
    weights = {str(b): float(np.real(np.trace(s.value))) for b, s in zip(bips, sigs)}
    return residual <= settings.sdp_feas_tol, residual, weights


def sdp_gme_dimension(
    rho: Union[DensityMatrix, PureState, Array],
    r: int,
    sides: str = "both",
    shape: Optional[RegisterShape] = None,
    settings: Settings = DEFAULTS,
) -> RelaxationResult:
    """Bisect the visibility against the reduction-map relaxation.

    The returned v_star is the certified-feasible end of the final bracket,
    accurate to settings.sdp_bisect_width.
    """
    mat, shp = _coerce_density(rho, shape)
    if shp.dim > settings.sdp_max_dim:
        raise ValueError(
            f"full register dimension {shp.dim} exceeds the SDP budget "
            f"{settings.sdp_max_dim}"
        )
    if int(r) < 1:
        raise ValueError(f"reduction cap must be positive, got {r}")
    _mixed_point_selftest(shp, int(r), sides, settings)

    feasible_1, res_1, weights_1 = sdp_feasibility_probe(mat, 1.0, int(r), sides, shp, settings)
    if feasible_1:
        return RelaxationResult(
            v_star=1.0,
            status="optimal",
            primal_residual=res_1,
            per_bipartition_weights=weights_1,
            bracket=(1.0, 1.0),
        )
    lo, hi = 0.0, 1.0
    best_res, best_weights = None, None
    while hi - lo > settings.sdp_bisect_width:
        mid = (lo + hi) / 2
        ok, resid, weights = sdp_feasibility_probe(mat, mid, int(r), sides, shp, settings)
        if ok:
            lo, best_res, best_weights = mid, resid, weights
        else:
            hi = mid
    if best_res is None:
        # nothing above 0 was feasible; report the guaranteed mixed point
        ok, best_res, best_weights = sdp_feasibility_probe(mat, 0.0, int(r), sides, shp, settings)
    return RelaxationResult(
        v_star=lo,
        status="infeasible-at-1",
        primal_residual=float(best_res),
        per_bipartition_weights=best_weights,
        bracket=(lo, hi),
    )


# ---------------------------------------------------------------------------
# Statistics-constrained relaxation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasurementSet:
    """Global product measurement outcomes, stored as unit vectors (rows)."""

    label: str
    vectors: Array

    def __post_init__(self) -> None:
        vecs = np.asarray(self.vectors, dtype=complex)
        if vecs.ndim != 2:
            raise ValueError("vectors must be a 2-d stack of outcome vectors")
        norms = np.linalg.norm(vecs, axis=1)
        if np.abs(norms - 1.0).max() > DEFAULTS.norm_atol * vecs.shape[1]:
            raise ValueError("every outcome vector must be normalised")
        object.__setattr__(self, "vectors", vecs)
        if self.label in ("E_C", "E_F"):
            gram = vecs @ vecs.conj().T
            if vecs.shape[0] != vecs.shape[1] or np.abs(gram - np.eye(len(vecs))).max() > 1e-10:
                raise ValueError(f"{self.label} must be a complete orthonormal measurement")

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def projectors(self) -> List[Array]:
        return [np.outer(v, v.conj()) for v in self.vectors]

    def conj_closed(self) -> bool:
        """Whether conjugating every outcome projector lands back in the set."""
        cross = np.abs(self.vectors @ self.vectors.T)
        return bool(np.abs(cross.max(axis=0) - 1.0).max() < 1e-9)


def _kron_rows(mats: Sequence[Array]) -> Array:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def build_measurement_set(label: str, n: int, d: int) -> MeasurementSet:
    """The named global product measurements used by the statistics rows.

    E_C is computational on every site, E_F Fourier on every site.  E_M is
    the single extra product measurement whose local bases diagonalise the
    shift-and-phase words with phase powers (1, ..., 1, 1-n mod d); the
    powers sum to zero mod d, the pattern the witness constructions share.
    """
    shape = RegisterShape(n, d)
    if label == "E_C":
        return MeasurementSet("E_C", np.eye(shape.dim, dtype=complex))
    if label == "E_F":
        f = fourier_basis(d).vectors
        return MeasurementSet("E_F", _kron_rows([f] * n))
    if label == "E_M":
        powers = [1] * (n - 1) + [(1 - n) % d]
        local = [weyl_eigenbasis(d, c) for c in powers]
        return MeasurementSet("E_M", _kron_rows(local))
    raise ValueError(f"unknown measurement set label {label!r}")


def sdp_statistics(
    rho: Union[DensityMatrix, PureState, Array],
    r: int,
    sets: Sequence[MeasurementSet],
    sides: str = "both",
    shape: Optional[RegisterShape] = None,
    settings: Settings = DEFAULTS,
) -> RelaxationResult:
    """Visibility bound from the statistics of a few product measurements.

    Only the outcome probabilities of the given measurement sets are forced
    to match the noisy target; the decomposition itself is free.  Solved as
    a single maximisation (no bisection), so expect first-order accuracy.
    """
    mat, shp = _coerce_density(rho, shape)
    if shp.dim > settings.sdp_max_dim:
        raise ValueError(
            f"full register dimension {shp.dim} exceeds the SDP budget "
            f"{settings.sdp_max_dim}"
        )
    if not sets:
        raise ValueError("at least one measurement set is required")
    if int(r) < 1:
        raise ValueError(f"reduction cap must be positive, got {r}")
    dim = shp.dim
    for ms in sets:
        if ms.vectors.shape[1] != dim:
            raise ValueError(
                f"measurement set {ms.label!r} lives on dimension "
                f"{ms.vectors.shape[1]}, register has {dim}"
            )

    # tr(P X) rows: conj-flattened projectors against the column-major vec
    vecs = np.concatenate([ms.vectors for ms in sets], axis=0)
    A = np.einsum("mi,mj->mij", vecs.conj(), vecs).reshape(len(vecs), -1)

    real_path = np.abs(mat.imag).max() < 1e-12 and all(ms.conj_closed() for ms in sets)
    bips = bipartitions(shp)
    if real_path:
        sigs = [cp.Variable((dim, dim), symmetric=True) for _ in bips]
        target = mat.real
    else:
        sigs = [cp.Variable((dim, dim), hermitian=True) for _ in bips]
        target = mat
    v = cp.Variable()
    noisy = v * target + (1 - v) * np.eye(dim) / dim
    diff = cp.vec(noisy - sum(sigs), order="F")
    cons = [v >= 0, v <= 1, cp.real(A @ diff) == 0, cp.imag(A @ diff) == 0]
    for sig, bip in zip(sigs, bips):
        cons.append(sig >> 0)
        for sites in _active_trace_sites(bip, sides):
            cons.append(_map_constraint(sig, shp, sites, int(r)))
    prob = cp.Problem(cp.Maximize(v), cons)
    prob.solve(
        solver="SCS",
        eps=settings.sdp_stats_eps,
        max_iters=settings.sdp_stats_max_iters,
    )
    if prob.status == "optimal":
        status = "optimal"
    elif prob.status == "optimal_inaccurate":
        status = "tolerance-limited"
    else:
        raise RuntimeError(f"statistics relaxation failed with solver status {prob.status}")

    v_star = float(min(max(float(v.value), 0.0), 1.0))
    total = sum(s.value for s in sigs)
    noisy_val = v_star * mat + (1 - v_star) * np.eye(dim) / dim
    eq_res = float(np.abs(A @ (noisy_val - total).reshape(-1, order="F")).max())
    psd_res = max(
        max(0.0, -float(np.linalg.eigvalsh((s.value + s.value.conj().T) / 2).min()))
        for s in sigs
    )
    map_res = 0.0
    for sig, bip in zip(sigs, bips):
        for sites in _active_trace_sites(bip, sides):
            map_res = max(map_res, _map_residual(sig.value, shp, sites, int(r)))
    weights = {str(b): float(np.real(np.trace(s.value))) for b, s in zip(bips, sigs)}
    return RelaxationResult(
        v_star=v_star,
        status=status,
        primal_residual=max(eq_res, psd_res, map_res),
        per_bipartition_weights=weights,
    )
