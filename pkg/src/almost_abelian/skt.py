"""SKT structures on almost abelian algebras.

The standard Hermitian structure is SKT iff ``w0 = 0``, ``[D, J'] = 0``,
``D`` is normal and every eigenvalue of ``D`` has real part ``0`` or
``-mu/2``.  For normal ``D`` the real parts are the eigenvalues of ``Ds``, so
the spectral clause is tested without an eigensolver as
``Ds (Ds + mu/2) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur

from ._validation import as_float, norm
from .core import is_unimodular, standard_Jprime
from .exceptions import ConsistencyError, DegeneracyError, PreconditionError
from .harmonicity import is_harmonic_oracle
from .tensors import _dec, _standard

__all__ = [
    "SktVerdict",
    "SktBlockBasis",
    "HARMONIC_CASES",
    "is_skt",
    "skt_harmonic",
    "skt_block_basis",
]

HARMONIC_CASES = ("not-applicable", "case-i", "case-ii", "not-harmonic")


@dataclass(frozen=True)
class SktVerdict:
    skt: bool
    reasons: dict
    eigen_real_parts: list
    harmonic_case: str = "not-applicable"
    refinements: dict = field(default_factory=dict)

    @property
    def harmonic(self):
        return self.harmonic_case in ("case-i", "case-ii")

    def to_dict(self):
        return {
            "skt": self.skt,
            "reasons": dict(self.reasons),
            "eigen_real_parts": list(self.eigen_real_parts),
            "harmonic_case": self.harmonic_case,
            "refinements": dict(self.refinements),
        }


def _clauses(dec):
    ctx = dec.context
    Jp = standard_Jprime(dec.n, ctx)
    D, Ds = dec.D, dec.Ds
    half_mu = dec.mu * ctx.ratio(1, 2)
    return {
        "w0": (dec.w0, 1),
        "[D,J']": (D @ Jp - Jp @ D, 1),
        "[D,D^t]": (D @ D.T - D.T @ D, 2),
        "spectrum": (Ds @ (Ds + half_mu * ctx.eye(Ds.shape[0])), 2),
    }


def _complex_form(D):
    """Matrix of a J'-linear ``D`` in the coordinates ``z_k = x_{2k} + i x_{2k+1}``."""
    D = as_float(D)
    return D[0::2, 0::2] + 1j * D[1::2, 0::2]


def _real_parts(dec):
    Dc = _complex_form(dec.D)
    off = Dc - np.diag(np.diag(Dc))
    if np.allclose(off, 0, atol=0):
        return sorted(float(x) for x in np.real(np.diag(Dc)))
    return sorted(float(x) for x in np.linalg.eigvalsh(as_float(dec.Ds))[::2])


def is_skt(dec, J=None):
    dec = _dec(dec)
    _standard(dec, J)
    ctx = dec.context
    reasons = {}
    ok = True
    for name, (value, degree) in _clauses(dec).items():
        reasons[name] = norm(value)
        ok = ok and bool(ctx.is_zero(value, dec.scale, degree))
    parts = _real_parts(dec) if ok else sorted(float(x) for x in np.linalg.eigvals(as_float(dec.D)).real)
    return SktVerdict(ok, reasons, parts)


def skt_harmonic(dec, J=None):
    """Harmonic case of an SKT structure.

    ``case-i``: ``v0 = 0``.  ``case-ii``: ``v0 != 0``, ``Ds = 0`` and
    ``D v0 = 0``.  Otherwise the structure is not harmonic.  The verdict is
    checked against the commutator oracle.
    """
    dec = _dec(dec)
    base = is_skt(dec, J)
    if not base.skt:
        failed = {k: v for k, v in base.reasons.items()
                  if not dec.context.is_zero(np.array([v]), dec.scale, 2)}
        raise PreconditionError("structure is not SKT", failed)
    ctx = dec.context
    zero = lambda x, deg=1: bool(ctx.is_zero(x, dec.scale, deg))
    if zero(dec.v0):
        case = "case-i"
    elif zero(dec.Ds) and zero(dec.D @ dec.v0, 2):
        case = "case-ii"
    else:
        case = "not-harmonic"

    refinements = {}
    if is_unimodular(dec.spec):
        if case == "case-i" and not zero(np.array([dec.mu])):
            # Tr D = -k mu where k counts blocks with real part -mu/2
            k = float(-dec.trace_D / dec.mu)
            refinements["blocks_at_-mu/2"] = k
            if abs(k - 1) > 1e-6:
                raise ConsistencyError("unimodular case-i needs exactly one block at -mu/2", {"k": k})
        if case == "case-ii":
            refinements["mu"] = float(dec.mu)
            if not zero(np.array([dec.mu])):
                raise ConsistencyError("unimodular case-ii forces mu = 0", {"mu": float(dec.mu)})

    oracle = is_harmonic_oracle(dec)
    harmonic = case in ("case-i", "case-ii")
    if oracle.harmonic != harmonic:
        raise ConsistencyError(
            "SKT harmonic case disagrees with the commutator oracle",
            {"case": case, "H": oracle.residuals["H"]},
        )
    return SktVerdict(True, base.reasons, base.eigen_real_parts, case, refinements)


@dataclass(frozen=True)
class SktBlockBasis:
    """Orthogonal ``Q`` on ``a`` with ``Q^t J' Q = J'`` and ``Q^t D Q`` block diagonal.

    ``blocks[i] = (a_i, b_i)`` describes ``[[a_i, -b_i], [b_i, a_i]]``.
    """

    Q: np.ndarray
    blocks: list
    reconstruction_error: float

    def block_matrix(self):
        k = 2 * len(self.blocks)
        out = np.zeros((k, k))
        for i, (a, b) in enumerate(self.blocks):
            out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = [[a, -b], [b, a]]
        return out


def skt_block_basis(dec, J=None):
    """Unitary normal form of ``D`` in a J'-adapted orthonormal basis of ``a``."""
    dec = _dec(dec)
    verdict = is_skt(dec, J)
    if not verdict.skt:
        raise PreconditionError("structure is not SKT", verdict.reasons)
    ctx = dec.context
    Dc = _complex_form(dec.D)
    k = Dc.shape[0]
    off_in = Dc - np.diag(np.diag(Dc))
    if not np.any(off_in):
        Q = ctx.eye(2 * k)
        blocks = [(dec.D[2 * i, 2 * i], dec.D[2 * i + 1, 2 * i]) for i in range(k)]
        return SktBlockBasis(Q, blocks, 0.0)
    T, U = schur(Dc, output="complex")
    off = T - np.diag(np.diag(T))
    thr = ctx.tolerance * dec.scale if not ctx.exact else 1e-9 * dec.scale
    if norm(off) > thr:
        eig = np.diag(T)
        gaps = [abs(a - b) for i, a in enumerate(eig) for b in eig[i + 1:]]
        raise DegeneracyError(
            "Schur form of D is not diagonal within tolerance", gap=min(gaps) if gaps else None
        )
    Jp = as_float(standard_Jprime(dec.n))
    cols = []
    for j in range(k):
        r = np.zeros(2 * k)
        r[0::2] = U[:, j].real
        r[1::2] = U[:, j].imag
        cols.extend([r, Jp @ r])
    Q = np.column_stack(cols)
    blocks = [(float(t.real), float(t.imag)) for t in np.diag(T)]
    basis = SktBlockBasis(Q, blocks, 0.0)
    err = norm(Q @ basis.block_matrix() @ Q.T - as_float(dec.D))
    return SktBlockBasis(Q, blocks, err)
