from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmedim.oracles import projector_residual
from gmedim.states import cluster, depolarize, ghz
from gmedim.witness import (
    GmeHypothesis,
    certify,
    cluster_witness_operator,
    cluster_witness_value,
    fidelity,
    fidelity_bound_closed,
    fidelity_bound_general,
    ghz_witness_operator,
    ghz_witness_value,
    impact_delta,
    minimal_witness_bound,
    tenbasis_extreme_eigenvalues,
    tenbasis_tuples,
    tenbasis_vcrit,
    tenbasis_vcrit_exact,
    vcrit_cluster,
    vcrit_fidelity_depolarizing,
    vcrit_ghz_dephasing,
    vcrit_ghz_depolarizing,
)

GRID = [(3, 3), (4, 3), (4, 4), (3, 4)]

# frozen closed-form thresholds
VCRIT_CASES = [
    ("ghz_depol", (4, 3, 2), Fraction(35, 44)),
    ("ghz_depol", (3, 3, 2), Fraction(11, 14)),
    ("cluster_depol", (4, 3, 2), Fraction(13, 16)),
    ("ghz_deph", (3, 2), Fraction(1, 2)),
    ("ghz_deph", (4, 3), Fraction(2, 3)),
    ("fid_depol", (3, 3, 2), Fraction(17, 26)),
    ("fid_depol", (4, 3, 2), Fraction(53, 80)),
]


def test_hypothesis_range_checked():
    with pytest.raises(ValueError):
        GmeHypothesis(0).check(3)
    with pytest.raises(ValueError):
        GmeHypothesis(4).check(3)
    assert GmeHypothesis(2).check(3) == 2


def test_fidelity_bound_closed_matches_general():
    for n, d in GRID:
        for k in range(1, d + 1):
            closed = fidelity_bound_closed(d, k)
            general = fidelity_bound_general(ghz(n, d), k)
            assert abs(closed - k / d) < 1e-12
            assert abs(general - closed) < 1e-10


def test_fidelity_bound_general_cluster():
    # cluster marginals are maximally mixed too, so the same k/d applies
    for n, d in [(4, 2), (4, 3), (4, 4)]:
        for k in range(1, d + 1):
            assert abs(fidelity_bound_general(cluster(n, d), k) - k / d) < 1e-10


@pytest.mark.parametrize("n,d", GRID)
def test_witness_perfect_correlations(n, d):
    assert abs(ghz_witness_value(ghz(n, d).density()) - 2.0) < 1e-10
    assert abs(cluster_witness_value(cluster(n, d).density()) - 2.0) < 1e-10


@pytest.mark.parametrize("n,d", GRID)
def test_witness_projector_identities(n, d):
    assert projector_residual(ghz_witness_operator(n, d), ghz(n, d)) <= 1e-9
    assert projector_residual(cluster_witness_operator(n, d), cluster(n, d)) <= 1e-9


def test_vcrit_closed_forms():
    for kind, args, want in VCRIT_CASES:
        if kind == "ghz_depol":
            got = vcrit_ghz_depolarizing(*args)
        elif kind == "cluster_depol":
            got = vcrit_cluster(*args)
        elif kind == "ghz_deph":
            got = vcrit_ghz_dephasing(*args)
        else:
            got = vcrit_fidelity_depolarizing(*args)
        assert abs(got - float(want)) < 1e-12, (kind, args)


def test_vcrit_crossing_consistency():
    # right at the critical visibility the witness value meets its bound
    n, d, k = 4, 3, 2
    v = vcrit_ghz_depolarizing(n, d, k)
    rho = depolarize(ghz(n, d), v)
    assert abs(ghz_witness_value(rho) - minimal_witness_bound(d, k)) < 1e-10
    v = vcrit_fidelity_depolarizing(n, d, k)
    assert abs(fidelity(depolarize(ghz(n, d), v), ghz(n, d)) - k / d) < 1e-12


def test_certify_levels():
    report = certify(2.0, 3, "ghz")
    assert report.certified_lower_bound == 3
    at_bound = certify(minimal_witness_bound(3, 2), 3, "ghz")
    assert at_bound.certified_lower_bound <= 2


def test_tenbasis_tuple_count():
    # nine triples accompany the computational basis, ten settings in all
    for d in (3, 5, 7):
        tuples = tenbasis_tuples(d)
        assert len(tuples) == 9
        assert all(len(t) == 3 for t in tuples)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_tenbasis_spectrum(d):
    vals = tenbasis_extreme_eigenvalues(d, num=2)
    assert abs(vals[0] - 12.0) < 1e-8
    assert vals[1] <= 3.0 + 1e-10


def test_tenbasis_vcrit_examples():
    v10 = tenbasis_vcrit(3, 2)
    vex = tenbasis_vcrit_exact(3, 2)
    assert abs(v10 - 17.0 / 26.0) < 1e-12
    assert abs(vex - 17.0 / 26.0) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_impact_delta_closed_form(d):
    want = 3.0 * (1 + d + d * d) / (d * (1 + 4 * d))
    assert abs(impact_delta(d, d - 1) - want) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.data())
def test_bounds_monotone_in_hypothesis(d, data):
    k = data.draw(st.integers(1, d - 1))
    assert fidelity_bound_closed(d, k) < fidelity_bound_closed(d, k + 1)
    assert minimal_witness_bound(d, k) < minimal_witness_bound(d, k + 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 4), st.integers(2, 4), st.data())
def test_vcrit_monotone_in_hypothesis(n, d, data):
    k = data.draw(st.integers(1, d - 1))
    assert vcrit_fidelity_depolarizing(n, d, k) < vcrit_fidelity_depolarizing(n, d, k + 1)
    if k + 1 < d:  # the witness threshold is finite only below the full dimension
        assert vcrit_ghz_depolarizing(n, d, k) < vcrit_ghz_depolarizing(n, d, k + 1)
