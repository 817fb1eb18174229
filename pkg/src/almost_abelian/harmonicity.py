"""Harmonicity of the standard almost complex structure.

``J`` is harmonic when ``[J, nabla* nabla J] = 0``.  For the adapted ``J`` this
reduces to two block conditions::

    (i)   mu gamma + Ds gamma - (Tr S) rho - J' Da J' rho = 0
    (ii)  Da J' Da J' - J' Da J' Da + (Tr S) [Da, J'] J' = 0

and the commutator satisfies ``||H||^2 = 4 ||(i)||^2 + ||(ii)||^2``, which is
how :func:`check_consistency` ties the closed form to the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import norm
from .core import Decomposition, decompose, is_unimodular, standard_Jprime
from .exceptions import ConsistencyError, PreconditionError
from .tensors import harmonic_commutator

__all__ = [
    "HarmonicVerdict",
    "condition_i",
    "condition_ii",
    "is_harmonic_general",
    "is_harmonic_unimodular",
    "is_harmonic_integrable",
    "is_harmonic_dim4",
    "dim4_parameters",
    "is_harmonic_oracle",
    "check_consistency",
    "harmonicity",
]

METHODS = ("general", "unimodular", "integrable", "dim4", "oracle")

# harmonicity conditions are quadratic in L
_DEGREE = 2


@dataclass(frozen=True)
class HarmonicVerdict:
    harmonic: bool
    method: str
    residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    def __bool__(self):
        return self.harmonic

    def to_dict(self):
        return {"harmonic": self.harmonic, "method": self.method, "residuals": dict(self.residuals)}


def _dec(obj):
    return obj if isinstance(obj, Decomposition) else decompose(obj)


def _verdict(dec, method, residual_arrays, degree=_DEGREE):
    ctx = dec.context
    ok = all(ctx.is_zero(r, dec.scale, degree) for r in residual_arrays.values())
    return HarmonicVerdict(ok, method, {k: norm(v) for k, v in residual_arrays.items()})


def condition_i(dec, unimodular=False):
    """Vector ``mu gamma + Ds gamma - (Tr S) rho - J' Da J' rho`` on ``a``."""
    dec = _dec(dec)
    Jp = standard_Jprime(dec.n, dec.context)
    out = dec.mu * dec.gamma + dec.Ds @ dec.gamma - Jp @ dec.Da @ Jp @ dec.rho
    if not unimodular:
        out = out - dec.trace_S * dec.rho
    return out


def condition_ii(dec, unimodular=False):
    """Matrix ``Da J' Da J' - J' Da J' Da + (Tr S) [Da, J'] J'`` on ``a``."""
    dec = _dec(dec)
    Jp = standard_Jprime(dec.n, dec.context)
    Da = dec.Da
    out = Da @ Jp @ Da @ Jp - Jp @ Da @ Jp @ Da
    if not unimodular:
        out = out + dec.trace_S * (Da @ Jp - Jp @ Da) @ Jp
    return out


def is_harmonic_general(dec, J=None):
    """Both block conditions, valid for every almost abelian algebra."""
    dec = _dec(dec)
    _require_standard(dec, J)
    return _verdict(dec, "general", {"i": condition_i(dec), "ii": condition_ii(dec)})


def is_harmonic_unimodular(dec, J=None):
    """Block conditions with the ``Tr S`` terms dropped; needs ``Tr L = 0``."""
    dec = _dec(dec)
    _require_standard(dec, J)
    if not is_unimodular(dec.spec):
        raise PreconditionError(
            "the unimodular test needs Tr L = 0", {"trace_L": float(dec.trace_S)}
        )
    return _verdict(
        dec,
        "unimodular",
        {"i": condition_i(dec, unimodular=True), "ii": condition_ii(dec, unimodular=True)},
    )


def integrability_residuals(dec):
    dec = _dec(dec)
    Jp = standard_Jprime(dec.n, dec.context)
    return {"w0": dec.w0, "[D,J']": dec.D @ Jp - Jp @ dec.D}


def is_harmonic_integrable(dec, J=None):
    """For integrable ``J``: harmonic iff ``D v0 = (Tr D) v0``.

    On unimodular algebras the equivalent ``L^2 e1 = mu^2 e1`` is evaluated
    as well and the two are required to agree.
    """
    dec = _dec(dec)
    _require_standard(dec, J)
    ctx = dec.context
    integ = integrability_residuals(dec)
    bad = {k: norm(v) for k, v in integ.items() if not ctx.is_zero(v, dec.scale)}
    if bad:
        raise PreconditionError("J is not integrable", bad)
    main = dec.D @ dec.v0 - dec.trace_D * dec.v0
    verdict = _verdict(dec, "integrable", {"Dv0-(TrD)v0": main})
    if is_unimodular(dec.spec):
        L = dec.L
        e1 = ctx.zeros(L.shape[0])
        e1[0] = ctx.scalar(1)
        alt = L @ (L @ e1) - dec.mu * dec.mu * e1
        alt_ok = ctx.is_zero(alt, dec.scale, _DEGREE)
        if alt_ok != verdict.harmonic:
            raise ConsistencyError(
                "integrable harmonicity forms disagree",
                {"Dv0-(TrD)v0": norm(main), "L^2e1-mu^2e1": norm(alt)},
            )
        verdict = HarmonicVerdict(
            verdict.harmonic, "integrable", {**verdict.residuals, "L^2e1-mu^2e1": norm(alt)}
        )
    return verdict


def dim4_parameters(L):
    """Unpack ``[[mu, r, s], [p, a, b], [q, c, d]]``."""
    (mu, r, s), (p, a, b), (q, c, d) = (tuple(row) for row in L)
    return dict(mu=mu, r=r, s=s, p=p, a=a, b=b, q=q, c=c, d=d)


def is_harmonic_dim4(dec, J=None):
    """Two scalar equations for unimodular 4-dimensional algebras.

    ``bq + cs - d(p + r) = 0`` and ``cp + br - a(q + s) = 0``.  For almost
    Kähler inputs the residuals ``cs + ar`` and ``br - as`` are reported too.
    """
    dec = _dec(dec)
    _require_standard(dec, J)
    if dec.n != 2:
        raise PreconditionError(f"dimension-4 test needs n = 2, got n = {dec.n}")
    if not is_unimodular(dec.spec):
        raise PreconditionError(
            "the dimension-4 equations assume Tr L = 0", {"trace_L": float(dec.trace_S)}
        )
    P = dim4_parameters(dec.L)
    p, q, r, s = P["p"], P["q"], P["r"], P["s"]
    a, b, c, d = P["a"], P["b"], P["c"], P["d"]
    ctx = dec.context
    res = {
        "bq+cs-d(p+r)": np.array([b * q + c * s - d * (p + r)]),
        "cp+br-a(q+s)": np.array([c * p + b * r - a * (q + s)]),
    }
    verdict = _verdict(dec, "dim4", res)
    almost_kahler = ctx.is_zero(np.array([p, q, a + d]), dec.scale)
    if almost_kahler:
        extra = {"cs+ar": abs(float(c * s + a * r)), "br-as": abs(float(b * r - a * s))}
        verdict = HarmonicVerdict(verdict.harmonic, "dim4", {**verdict.residuals, **extra})
    return verdict


def is_harmonic_oracle(dec, J=None):
    """Ground truth: ``||[J, nabla* nabla J]|| = 2 ||H||`` vanishes.

    Accepts any compatible ``J``, not only the standard one.
    """
    dec = _dec(dec)
    H = harmonic_commutator(dec, J)
    ok = dec.context.is_zero(H, dec.scale, _DEGREE)
    return HarmonicVerdict(ok, "oracle", {"H": norm(H)})


def check_consistency(dec, rtol=1e-8):
    """Compare ``||H||^2`` with ``4 ||(i)||^2 + ||(ii)||^2``.

    Raises :class:`ConsistencyError` when they differ beyond ``rtol``
    (relative to ``max(1, ||L||)^4``); exact mode demands equality.
    """
    dec = _dec(dec)
    H = harmonic_commutator(dec)
    ci, cii = condition_i(dec), condition_ii(dec)
    if dec.context.exact:
        lhs = sum(x * x for x in np.asarray(H).flat)
        rhs = 4 * sum(x * x for x in ci.flat) + sum(x * x for x in cii.flat)
        if lhs != rhs:
            raise ConsistencyError("commutator and block conditions disagree", {"H2": float(lhs), "blocks": float(rhs)})
        return 0.0
    lhs = norm(H) ** 2
    rhs = 4 * norm(ci) ** 2 + norm(cii) ** 2
    gap = abs(lhs - rhs)
    if gap > rtol * dec.scale ** 4:
        raise ConsistencyError(
            "commutator and block conditions disagree",
            {"H2": lhs, "blocks": rhs, "gap": gap},
        )
    return gap


def harmonicity(dec, J=None):
    """Every applicable verdict, keyed by method, after a consistency check.

    The oracle is authoritative; a disagreement with the general test raises
    :class:`ConsistencyError`.
    """
    dec = _dec(dec)
    _require_standard(dec, J)
    check_consistency(dec)
    out = {"oracle": is_harmonic_oracle(dec), "general": is_harmonic_general(dec)}
    if is_unimodular(dec.spec):
        out["unimodular"] = is_harmonic_unimodular(dec)
        if dec.n == 2:
            out["dim4"] = is_harmonic_dim4(dec)
    try:
        out["integrable"] = is_harmonic_integrable(dec)
    except PreconditionError:
        pass
    for key, v in out.items():
        if v.harmonic != out["oracle"].harmonic and not _near_boundary(v, dec):
            raise ConsistencyError(
                f"{key} test and oracle disagree",
                {"oracle": out["oracle"].residuals, key: v.residuals},
            )
    return out


def _near_boundary(verdict, dec):
    if dec.context.exact:
        return False
    thr = dec.context.threshold(dec.scale, _DEGREE)
    return any(thr / 10 <= r <= 10 * thr for r in verdict.residuals.values())


def _require_standard(dec, J):
    if J is None:
        return
    from .tensors import _standard

    _standard(dec, J)
