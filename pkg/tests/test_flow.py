import numpy as np
import pytest
from hypothesis import given, settings
from scipy.linalg import expm

from almost_abelian import InvalidInputError, NonConvergenceError, PreconditionError, StagnationError
from almost_abelian import flow
from almost_abelian.core import AlgebraSpec, decompose, standard_J
from almost_abelian.flow import (
    compatibility_residuals,
    dirichlet_energy,
    energy_difference,
    energy_gradient,
    flow_step,
    initial_state,
    random_compatible_J,
    run_flow,
)
from almost_abelian.harmonicity import is_harmonic_oracle

from .helpers import random_L, seeds

KT = np.array([[0.0, 0, 0], [0, 0, 0], [0, 1, 0]])
ROT = np.array([[0.0, 0, 0], [0, 0, -1], [0, 1, 0]])


def fd_directional(dec, J, B, s=1e-5):
    """Central difference of E along J(s) = exp(sB) J exp(-sB)."""
    Jp = expm(s * B) @ J @ expm(-s * B)
    Jm = expm(-s * B) @ J @ expm(s * B)
    return energy_difference(dec, Jm, Jp) / (2 * s)


def _triple(rng):
    n = int(rng.integers(2, 4))
    dec = decompose(AlgebraSpec(n, random_L(n, rng, unimodular=True)))
    J = random_compatible_J(n, rng)
    B = rng.normal(size=J.shape)
    return dec, J, B - B.T


@given(seeds)
@settings(max_examples=30)
def test_gradient_matches_finite_differences(seed):
    dec, J, B = _triple(np.random.default_rng(seed))
    K = energy_gradient(dec, J)
    exact = np.sum(K * (B @ J - J @ B))
    approx = fd_directional(dec, J, B)
    assert abs(exact - approx) <= 1e-5 * max(1.0, abs(exact))


@given(seeds)
def test_gradient_is_tangent(seed):
    dec, J, _ = _triple(np.random.default_rng(seed))
    K = energy_gradient(dec, J)
    assert np.allclose(K, -K.T, atol=1e-10)
    assert np.allclose(K @ J, -J @ K, atol=1e-10)


def test_energy_difference_is_exact_identity():
    rng = np.random.default_rng(4)
    dec, J, B = _triple(rng)
    Jn = expm(0.3 * B) @ J @ expm(-0.3 * B)
    direct = dirichlet_energy(dec, Jn) - dirichlet_energy(dec, J)
    assert energy_difference(dec, J, Jn) == pytest.approx(direct, abs=1e-10)


@given(seeds)
def test_kodaira_thurston_energy_constant(seed):
    J = random_compatible_J(2, np.random.default_rng(seed))
    dec = decompose(AlgebraSpec(2, KT))
    assert dirichlet_energy(dec, J) == pytest.approx(2.0, abs=1e-12)
    assert np.linalg.norm(energy_gradient(dec, J)) < 1e-12


def test_energy_standard_values():
    assert dirichlet_energy(AlgebraSpec(2, KT)) == 2.0
    assert dirichlet_energy(AlgebraSpec(2, ROT)) == pytest.approx(0.0)
    L0 = np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert dirichlet_energy(AlgebraSpec(2, L0)) == pytest.approx(4.0)


@given(seeds)
@settings(max_examples=20)
def test_step_decreases_energy(seed):
    rng = np.random.default_rng(seed)
    dec, J, _ = _triple(rng)
    s0 = initial_state(dec, J)
    s1 = flow_step(dec, s0)
    assert s1.energy <= s0.energy
    assert s1.step == 1
    assert max(compatibility_residuals(s1.J).values()) < 1e-12
    if s0.grad_norm > 1e-6:
        assert s1.energy < s0.energy


def test_first_step_strictly_decreases_on_rotation_algebra():
    dec = decompose(AlgebraSpec(2, ROT))
    s0 = initial_state(dec, random_compatible_J(2, 0))
    assert s0.grad_norm > 0
    assert flow_step(dec, s0).energy < s0.energy


def test_flow_reaches_kaehler_limit():
    dec = decompose(AlgebraSpec(2, ROT))
    trace = []
    res = run_flow(dec, random_compatible_J(2, 1), tol_grad=1e-9, callback=trace.append)
    assert res.converged and res.state.energy <= 1e-10
    assert res.oracle.harmonic and res.closed_form.harmonic
    assert len(trace) == res.state.step + 1
    energies = [s.energy for s in trace]
    assert all(b <= a for a, b in zip(energies, energies[1:]))


def test_flow_on_kodaira_thurston_is_immediate():
    dec = decompose(AlgebraSpec(2, KT))
    res = run_flow(dec, random_compatible_J(2, 5), tol_grad=1e-6)
    assert res.state.step == 0 and res.oracle.harmonic
    assert is_harmonic_oracle(dec, res.state.J).harmonic


def test_flow_limits_are_harmonic_on_random_algebra():
    rng = np.random.default_rng(11)
    dec = decompose(AlgebraSpec(3, random_L(3, rng, unimodular=True) / 2))
    res = run_flow(dec, random_compatible_J(3, rng), tol_grad=1e-7)
    assert res.oracle.harmonic
    assert res.to_dict()["summary"]["energy"] <= res.summary["initial_energy"]


def test_non_unimodular_rejected():
    with pytest.raises(PreconditionError):
        run_flow(AlgebraSpec(2, np.eye(3)))
    # the energy itself is defined everywhere
    assert dirichlet_energy(AlgebraSpec(2, np.eye(3))) > 0


def test_budget_exhaustion():
    dec = decompose(AlgebraSpec(2, ROT))
    with pytest.raises(NonConvergenceError) as err:
        run_flow(dec, random_compatible_J(2, 1), tol_grad=1e-12, max_steps=2)
    assert err.value.summary["steps"] == 2
    assert err.value.state.step == 2


def test_stagnation(monkeypatch):
    dec = decompose(AlgebraSpec(2, ROT))
    monkeypatch.setattr(flow, "_energy_diff", lambda *a: 1.0)
    with pytest.raises(StagnationError) as err:
        run_flow(dec, random_compatible_J(2, 1))
    assert "initial_energy" in err.value.summary


def test_bad_J_reports_residuals():
    with pytest.raises(InvalidInputError) as err:
        dirichlet_energy(AlgebraSpec(2, KT), np.eye(4))
    assert err.value.residuals["J^2+I"] > 0


def test_bad_step_size():
    dec = decompose(AlgebraSpec(2, ROT))
    with pytest.raises(InvalidInputError):
        flow_step(dec, initial_state(dec), h=-1)


def test_random_J_is_compatible():
    for seed in range(5):
        J = random_compatible_J(3, seed)
        assert max(compatibility_residuals(J).values()) < 1e-12
    assert np.array_equal(random_compatible_J(2, 3), random_compatible_J(2, 3))


def test_standard_J_on_kaehler_algebra_is_fixed_point():
    dec = decompose(AlgebraSpec(2, ROT))
    res = run_flow(dec, standard_J(2).J)
    assert res.state.step == 0
