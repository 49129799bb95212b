import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmedim.registers import (
    Bipartition,
    DensityMatrix,
    PureState,
    RegisterShape,
    apply_local,
    bipartitions,
    eig_desc,
    kron,
    partial_trace,
)


def test_shape_dims():
    shape = RegisterShape(3, 4)
    assert shape.dim == 64
    assert shape.axis_dims == (4, 4, 4)


def test_shape_rejects_bad_args():
    with pytest.raises(ValueError):
        RegisterShape(0, 3)
    with pytest.raises(ValueError):
        RegisterShape(3, 1)
    with pytest.raises(ValueError):
        RegisterShape(40, 2)  # beyond the tensor budget


def test_pure_state_requires_unit_norm():
    shape = RegisterShape(2, 2)
    with pytest.raises(ValueError):
        PureState(shape, np.array([1.0, 1.0, 0.0, 0.0]))
    psi = PureState(shape, np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2))
    proj = psi.projector()
    assert np.allclose(proj, proj.conj().T)
    assert abs(np.trace(proj) - 1.0) < 1e-12


def test_density_matrix_guards():
    shape = RegisterShape(2, 2)
    with pytest.raises(ValueError):
        DensityMatrix(shape, np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        DensityMatrix(shape, np.diag([1.5, -0.5, 0.0, 0.0]))  # negative eigenvalue


def test_bipartition_canonical_form():
    shape = RegisterShape(4, 2)
    bip = Bipartition(shape, (1, 3))
    assert bip.complement == (2, 4)
    assert bip.block_dims() == (4, 4)
    assert str(bip) == "13|24"
    with pytest.raises(ValueError):
        Bipartition(shape, (2, 3))  # particle 1 missing
    with pytest.raises(ValueError):
        Bipartition(shape, (1, 2, 3, 4))  # not a proper subset


def test_bipartition_count():
    # 2**(n-1) - 1 proper splits with particle 1 pinned to the left block
    for n in (2, 3, 4, 5):
        assert len(bipartitions(RegisterShape(n, 2))) == 2 ** (n - 1) - 1


def test_partial_trace_product_state():
    shape = RegisterShape(2, 3)
    a = np.array([1.0, 2.0, 0.0], dtype=complex)
    a /= np.linalg.norm(a)
    b = np.array([0.0, 1.0, 1.0j], dtype=complex)
    b /= np.linalg.norm(b)
    rho = np.outer(np.kron(a, b), np.kron(a, b).conj())
    red = partial_trace(rho, shape, keep=[1])
    assert np.abs(red - np.outer(a, a.conj())).max() < 1e-12


def test_partial_trace_keeps_trace():
    rng = np.random.default_rng(5)
    shape = RegisterShape(3, 2)
    m = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    rho = m @ m.conj().T
    rho /= np.trace(rho)
    for keep in ([1], [2], [1, 3], [2, 3]):
        red = partial_trace(rho, shape, keep)
        assert abs(np.trace(red) - 1.0) < 1e-10


def test_kron_budget_guard():
    with pytest.raises(ValueError):
        kron([np.eye(64)] * 6)


def test_eig_desc_sorted():
    vals, vecs = eig_desc(np.diag([1.0, 3.0, 2.0]))
    assert np.allclose(vals, [3.0, 2.0, 1.0])
    assert np.allclose(vecs.conj().T @ vecs, np.eye(3))


def test_apply_local_matches_dense():
    rng = np.random.default_rng(11)
    shape = RegisterShape(3, 3)
    amp = rng.standard_normal(27) + 1j * rng.standard_normal(27)
    op = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    got = apply_local([None, op, None], amp, shape)
    want = kron([np.eye(3), op, np.eye(3)]) @ amp
    assert np.abs(got - want).max() < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 3), st.integers(0, 10_000))
def test_partial_trace_is_positive(n, d, seed):
    rng = np.random.default_rng(seed)
    shape = RegisterShape(n, d)
    m = rng.standard_normal((shape.dim, shape.dim)) + 1j * rng.standard_normal(
        (shape.dim, shape.dim)
    )
    rho = m @ m.conj().T
    rho /= np.trace(rho)
    red = partial_trace(rho, shape, keep=[1])
    assert np.linalg.eigvalsh(red).min() > -1e-10
