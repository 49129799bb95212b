import numpy as np
import pytest

from gmedim.oracles import (
    intro_tau,
    projector_residual,
    qubit_ghz_mixture,
    result1_bruteforce,
    tight_dephased_mixture,
)
from gmedim.registers import (
    PureState,
    RegisterShape,
    bipartitions,
    partial_trace,
)
from gmedim.states import classical_diagonal, dephase_diag, ghz
from gmedim.witness import fidelity_bound_closed, ghz_witness_operator

MIXTURE_FIDELITY = 2.0 / 3.0


def _fidelity(rho, psi):
    return float(np.real(psi.amp.conj() @ rho.mat @ psi.amp))


def test_intro_tau_endpoints():
    target = ghz(3, 3).amp
    proj = np.outer(target, target.conj())
    assert np.max(np.abs(intro_tau(1.0).mat - proj)) < 1e-14
    diag = classical_diagonal(3, 3)
    assert np.max(np.abs(intro_tau(0.0).mat - diag)) < 1e-14


def test_intro_tau_half_is_the_two_level_mixture():
    gap = intro_tau(0.5).mat - qubit_ghz_mixture().mat
    assert np.max(np.abs(gap)) < 1e-14


def test_intro_tau_rejects_bad_weight():
    with pytest.raises(ValueError):
        intro_tau(-0.1)
    with pytest.raises(ValueError):
        intro_tau(1.2)


def test_mixture_fidelity_sits_on_the_two_level_bound():
    # each branch shares two of the three GHZ terms, so the overlap is 2/3,
    # exactly the k=2 fidelity threshold in local dimension 3
    f = _fidelity(qubit_ghz_mixture(), ghz(3, 3))
    assert abs(f - MIXTURE_FIDELITY) < 1e-14
    assert abs(fidelity_bound_closed(3, 2) - MIXTURE_FIDELITY) < 1e-14


TIGHT_CASES = [(3, 3, 2), (3, 4, 2), (3, 4, 3), (4, 3, 2)]


@pytest.mark.parametrize("n,d,k", TIGHT_CASES)
def test_tight_mixture_is_the_dephased_target(n, d, k):
    rho = tight_dephased_mixture(d, k, n=n)
    dephased = dephase_diag(ghz(n, d), (k - 1) / (d - 1))
    assert np.max(np.abs(rho.mat - dephased.mat)) < 1e-12


@pytest.mark.parametrize("n,d,k", TIGHT_CASES)
def test_tight_mixture_saturates_fidelity(n, d, k):
    rho = tight_dephased_mixture(d, k, n=n)
    assert abs(_fidelity(rho, ghz(n, d)) - k / d) < 1e-12


def test_tight_mixture_trivial_ranks():
    diag = classical_diagonal(3, 3)
    assert np.max(np.abs(tight_dephased_mixture(3, 1).mat - diag)) < 1e-12
    target = ghz(3, 3).amp
    proj = np.outer(target, target.conj())
    assert np.max(np.abs(tight_dephased_mixture(3, 3).mat - proj)) < 1e-12


def test_tight_mixture_rejects_bad_rank():
    with pytest.raises(ValueError):
        tight_dephased_mixture(3, 0)
    with pytest.raises(ValueError):
        tight_dephased_mixture(3, 4)


@pytest.mark.parametrize("n,d", [(3, 3), (4, 3), (3, 4)])
def test_witness_gap_from_target_is_projector(n, d):
    op = ghz_witness_operator(n, d)
    psi = ghz(n, d)
    assert projector_residual(op, psi) <= 1e-9


def test_projector_residual_accepts_plain_arrays():
    psi = np.array([1.0, 0.0], dtype=complex)
    assert projector_residual(np.eye(2, dtype=complex), psi) < 1e-15
    inflated = np.diag([3.0, 0.0]).astype(complex)
    assert projector_residual(inflated, psi) > 1.0


def test_bruteforce_recovers_the_ghz_bound():
    # smaller sample budget than the acceptance run, same optimum
    val = result1_bruteforce(ghz(3, 3), 2, samples=2000, restarts=20)
    assert MIXTURE_FIDELITY - 1e-3 <= val <= MIXTURE_FIDELITY + 1e-9


def test_bruteforce_product_state_reaches_one():
    vec = np.zeros(27, dtype=complex)
    vec[0] = 1.0
    psi = PureState(RegisterShape(3, 3), vec)
    val = result1_bruteforce(psi, 1, samples=500, restarts=10)
    assert abs(val - 1.0) < 1e-9


def test_bruteforce_random_instances_respect_bound():
    rng = np.random.default_rng(11)
    shape = RegisterShape(3, 3)
    for trial in range(5):
        vec = rng.normal(size=27) + 1j * rng.normal(size=27)
        psi = PureState(shape, vec / np.linalg.norm(vec))
        val = result1_bruteforce(psi, 2, samples=400, restarts=10, seed=trial)
        bound = max(
            np.sum(np.linalg.eigvalsh(m)[-2:])
            for m in _marginals(psi)
        )
        assert val <= bound + 1e-9


def _marginals(psi):
    shape = psi.shape
    rho = np.outer(psi.amp, psi.amp.conj())
    return [
        partial_trace(rho, shape, sorted(bip.block))
        for bip in bipartitions(shape)
    ]


def test_bruteforce_clamps_oversized_rank():
    # rank requests above the smallest cut dimension act as "no constraint"
    # on that cut, so the ascent recovers the state itself
    val = result1_bruteforce(ghz(3, 3), 5, samples=50, restarts=5)
    assert abs(val - 1.0) < 1e-9


def test_bruteforce_rejects_bad_rank():
    with pytest.raises(ValueError):
        result1_bruteforce(ghz(3, 3), 0, samples=10)
