"""Gradient descent of the Dirichlet energy over compatible complex structures.

The energy of an orthogonal complex structure ``J`` on a metric almost
abelian algebra is ``E(J) = sum_i ||[Lambda_i, J]||^2`` (Frobenius), where
``Lambda_i`` is the matrix of ``nabla_{e_i}``.  On a unimodular algebra the
Euclidean gradient of ``E`` is ``-2 nabla* nabla J`` and its projection to the
tangent space ``{K : K^t = -K, KJ = -JK}`` is ``K = (G + J G J) / 2``; hence
``K = 0`` iff ``[J, nabla* nabla J] = 0``.

Steps conjugate ``J`` by ``exp(h Omega)`` with ``Omega = J K / 2``, which keeps
``J`` orthogonal and anti-involutive and moves it along ``-K``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from ._validation import FLOAT, as_float, norm
from .core import AlgebraSpec, adapt_basis, as_complex_structure, change_basis, decompose, is_unimodular, standard_J
from .exceptions import ConsistencyError, InvalidInputError, NonConvergenceError, PreconditionError, StagnationError
from .harmonicity import is_harmonic_general, is_harmonic_oracle
from .tensors import _dec, levi_civita, rough_laplacian

__all__ = [
    "FlowState",
    "FlowResult",
    "dirichlet_energy",
    "energy_gradient",
    "energy_difference",
    "flow_step",
    "run_flow",
    "random_compatible_J",
    "compatibility_residuals",
]

H_MIN = 1e-14
ARMIJO = 1e-4


def _float_dec(dec):
    dec = _dec(dec)
    if dec.context.exact:
        dec = decompose(AlgebraSpec(dec.n, as_float(dec.L), FLOAT))
    return dec


def compatibility_residuals(J):
    J = np.asarray(J, dtype=float)
    eye = np.eye(J.shape[0])
    return {"J^2+I": norm(J @ J + eye), "J^tJ-I": norm(J.T @ J - eye), "J^t+J": norm(J.T + J)}


def _checked_J(dec, J):
    if J is None:
        return as_float(standard_J(dec.n).J)
    try:
        return as_float(as_complex_structure(J, dec.n).J)
    except InvalidInputError as exc:
        raise InvalidInputError(
            "J is not a compatible complex structure", compatibility_residuals(np.asarray(J, dtype=float))
        ) from exc


def _lambdas(dec):
    return [as_float(m) for m in levi_civita(dec)]


def dirichlet_energy(dec, J=None):
    """``sum_i ||nabla_{e_i} J||^2``; zero exactly for Kähler structures."""
    dec = _float_dec(dec)
    J = _checked_J(dec, J)
    return _energy(_lambdas(dec), J)


def _energy(lams, J):
    return float(sum(np.sum((L @ J - J @ L) ** 2) for L in lams))


def energy_difference(dec, J, J_next):
    """``E(J_next) - E(J)`` as ``sum <[L, J_next - J], [L, J_next + J]>`` (no cancellation)."""
    dec = _float_dec(dec)
    return _energy_diff(_lambdas(dec), np.asarray(J, float), np.asarray(J_next, float))


def _energy_diff(lams, J, Jn):
    d = Jn - J
    s = Jn + J
    return float(sum(np.sum((L @ d - d @ L) * (L @ s - s @ L)) for L in lams))


def _require_unimodular(dec):
    if not is_unimodular(dec.spec):
        raise PreconditionError(
            "the energy gradient is only implemented on unimodular algebras",
            {"trace_L": float(np.trace(dec.L))},
        )


def energy_gradient(dec, J=None):
    """Riemannian gradient ``K = (G + J G J) / 2`` with ``G = -2 nabla* nabla J``."""
    dec = _float_dec(dec)
    _require_unimodular(dec)
    J = _checked_J(dec, J)
    return _gradient(dec, J)


def _gradient(dec, J, table=None):
    G = -2 * as_float(rough_laplacian(dec, J, table))
    return (G + J @ G @ J) / 2


def random_compatible_J(n, rng=None):
    """``Q J_std Q^t`` for a Haar-random orthogonal ``Q``."""
    rng = np.random.default_rng(rng)
    Z = rng.normal(size=(2 * n, 2 * n))
    Q, R = np.linalg.qr(Z)
    Q = Q * np.sign(np.diag(R))
    return Q @ as_float(standard_J(n).J) @ Q.T


@dataclass(frozen=True)
class FlowState:
    J: np.ndarray
    energy: float
    grad_norm: float
    step: int = 0
    h: float = 0.1

    def to_dict(self):
        return {"step": self.step, "energy": self.energy, "grad_norm": self.grad_norm}


def _reorthonormalize(J):
    """Nearest skew orthogonal matrix: polar factor of the skew part."""
    S = (J - J.T) / 2
    w, V = np.linalg.eigh(S.T @ S)
    return S @ (V / np.sqrt(w)) @ V.T


def initial_state(dec, J0=None, h=0.1):
    dec = _float_dec(dec)
    _require_unimodular(dec)
    J = _checked_J(dec, J0)
    lams = _lambdas(dec)
    K = _gradient(dec, J, lams)
    return FlowState(J, _energy(lams, J), float(np.linalg.norm(K)), 0, h)


def flow_step(dec, state, h=None, _cache=None):
    """One accepted descent step with Armijo backtracking (halving ``h``).

    Raises :class:`StagnationError` carrying ``state`` when ``h`` drops below
    ``1e-14`` without a sufficient decrease.
    """
    dec = _float_dec(dec)
    _require_unimodular(dec)
    h = state.h if h is None else float(h)
    if h <= 0:
        raise InvalidInputError(f"step size must be positive, got {h}")
    lams = _cache if _cache is not None else _lambdas(dec)
    J = state.J
    K = _gradient(dec, J, lams)
    g2 = float(np.sum(K * K))
    if g2 == 0.0:
        return FlowState(J, state.energy, 0.0, state.step, h)
    Om = J @ K / 2
    while True:
        Q = expm(h * Om)
        Jn = Q.T @ J @ Q
        dE = _energy_diff(lams, J, Jn)
        if dE <= -ARMIJO * h * g2:
            break
        h /= 2
        if h < H_MIN:
            raise StagnationError("step size underflow in backtracking", state=state,
                                  summary={"step": state.step, "energy": state.energy, "grad_norm": state.grad_norm})
    if max(compatibility_residuals(Jn).values()) > 1e-13:
        Jn = _reorthonormalize(Jn)
    Kn = _gradient(dec, Jn, lams)
    return FlowState(Jn, _energy(lams, Jn), float(np.linalg.norm(Kn)), state.step + 1, h)


@dataclass(frozen=True)
class FlowResult:
    state: FlowState
    converged: bool
    oracle: object
    closed_form: object
    summary: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "converged": self.converged,
            "steps": self.state.step,
            "energy": self.state.energy,
            "grad_norm": self.state.grad_norm,
            "J": self.state.J.tolist(),
            "oracle": self.oracle.to_dict(),
            "closed_form": self.closed_form.to_dict(),
            "summary": dict(self.summary),
        }


def _certify(dec, J, tol):
    """Oracle verdict at tolerance ``tol`` plus the closed form in an adapted basis."""
    from ._validation import ScalarContext

    ctx = ScalarContext("float", max(tol, dec.context.tolerance))
    dd = decompose(AlgebraSpec(dec.n, dec.L, ctx))
    oracle = is_harmonic_oracle(dd, J)
    Q = adapt_basis(J)
    adapted = decompose(change_basis(dd.spec, Q))
    closed = is_harmonic_general(adapted)
    return oracle, closed


def run_flow(dec, J0=None, tol_grad=1e-8, max_steps=100_000, h0=0.1, h_max=10.0, callback=None):
    """Descend from ``J0`` until ``||K|| <= tol_grad``.

    The limit is certified by the commutator oracle and, after moving to a
    basis adapted to the limit ``J``, by the closed-form conditions.  Raises
    :class:`NonConvergenceError` (or :class:`StagnationError`) with the last
    state and a trajectory summary when the budget runs out.
    """
    dec = _float_dec(dec)
    state = initial_state(dec, J0, h0)
    lams = _lambdas(dec)
    first_energy = state.energy
    if callback is not None:
        callback(state)
    while state.grad_norm > tol_grad:
        if state.step >= max_steps:
            raise NonConvergenceError(
                "step budget exhausted",
                state=state,
                summary={"steps": state.step, "initial_energy": first_energy,
                         "energy": state.energy, "grad_norm": state.grad_norm},
            )
        try:
            new = flow_step(dec, state, _cache=lams)
        except StagnationError as exc:
            exc.summary.update(initial_energy=first_energy)
            raise
        state = FlowState(new.J, new.energy, new.grad_norm, new.step, min(2 * new.h, h_max))
        if callback is not None:
            callback(state)
    oracle, closed = _certify(dec, state.J, tol_grad)
    if oracle.harmonic != closed.harmonic:
        raise ConsistencyError("limit J: oracle and closed form disagree",
                               {"oracle": oracle.residuals, "closed": closed.residuals})
    if not oracle.harmonic:
        raise ConsistencyError("gradient vanished but the oracle rejects the limit", oracle.residuals)
    summary = {"steps": state.step, "initial_energy": first_energy, "energy": state.energy,
               "grad_norm": state.grad_norm}
    return FlowResult(state, True, oracle, closed, summary)
