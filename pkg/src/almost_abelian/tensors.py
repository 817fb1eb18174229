"""Levi-Civita connection and the invariant tensors of an almost Hermitian structure.

Every tensor comes in two flavours:

* a closed form in terms of the block data ``(mu, v0, w0, D)``; these assume
  the standard adapted complex structure (``J e0 = e1``, ``a`` invariant);
* a generic oracle built only from the bracket, the Koszul formula and the
  textbook definition of the tensor, valid for any compatible ``J``.

Dense tensors are numpy arrays indexed by basis positions, e.g.
``W[i, j, k] = (nabla_{e_i} omega)(e_j, e_k)`` and ``N[i, j] = N(e_i, e_j)``.
Both flavours work in exact mode, where arrays hold ``Fraction`` objects.

Conventions
-----------
``omega(x, y) = <J x, y>`` so the Gram matrix of omega is ``J^t``.
``N(x, y) = [x, y] + J([Jx, y] + [x, Jy]) - [Jx, Jy]``.
``(d omega)(x, y, z) = -omega([x, y], z) - omega([y, z], x) - omega([z, x], y)``.
``theta(x) = -delta omega(J x) / (n - 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_float, frozen, norm
from .core import (
    AlgebraSpec,
    Decomposition,
    as_complex_structure, decompose, standard_J,
    standard_Jprime,
)
from .exceptions import PreconditionError

__all__ = [
    "ConnectionTable",
    "TensorReport",
    "levi_civita",
    "koszul_oracle",
    "koszul_table",
    "bracket_tensor",
    "connection_residuals",
    "omega_matrix",
    "nabla_J",
    "nijenhuis",
    "nijenhuis_tensor",
    "nijenhuis_closed",
    "nijenhuis_closed_tensor",
    "d_omega",
    "d_omega_tensor",
    "d_omega_oracle",
    "delta_omega",
    "delta_omega_oracle",
    "lee_form",
    "lee_form_oracle",
    "theta_wedge_omega",
    "nabla_omega",
    "nabla_omega_tensor",
    "nabla_omega_oracle",
    "tensor_T",
    "tensor_T_closed",
    "tensor_T_oracle",
    "tensor_U",
    "tensor_U_closed",
    "tensor_U_oracle",
    "rough_laplacian",
    "harmonic_commutator",
    "harmonic_commutator_explicit",
    "tensor_report",
]


# -- helpers ------------------------------------------------------------------

def _dec(obj):
    return obj if isinstance(obj, Decomposition) else decompose(obj)


def _spec(obj):
    return obj.spec if isinstance(obj, Decomposition) else obj


def _J(obj, J):
    spec = _spec(obj)
    return as_complex_structure(J, spec.n, spec.context).J


def _standard(dec, J):
    """Return the standard J, refusing non-standard input for closed forms."""
    Js = standard_J(dec.n, dec.context).J
    if J is None:
        return Js
    arr = _J(dec, J)
    if not np.array_equal(as_float(arr), as_float(Js)):
        raise PreconditionError(
            "closed-form tensors assume the standard adapted J; "
            "use the oracle variant or change basis with adapt_basis first"
        )
    return Js


def _basis_vec(ctx, d, v):
    if isinstance(v, (int, np.integer)):
        out = ctx.zeros(d)
        out[int(v)] = ctx.scalar(1)
        return out
    return ctx.array(v)


def _contract(T, *vectors):
    out = T
    for v in vectors:
        out = np.tensordot(v, out, axes=([0], [0]))
    return out


def _antisymmetrize_last_two(T):
    return T - np.swapaxes(T, -1, -2)


# -- connection ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConnectionTable:
    """Matrices ``Lambda_i`` of ``nabla_{e_i}`` acting on ``g``.

    ``matrices[i] @ y`` is ``nabla_{e_i} y``.
    """

    matrices: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(frozen(m) for m in self.matrices))

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def nabla(self, x, y):
        """``nabla_x y`` for arbitrary vectors."""
        out = 0 * self.matrices[0][:, 0]
        for xi, Li in zip(x, self.matrices):
            out = out + xi * (Li @ y)
        return out

    def dense(self):
        """``G[i, j, k] = <nabla_{e_i} e_j, e_k>``."""
        return np.stack([m.T for m in self.matrices])


def levi_civita(dec, J=None):
    """Closed-form connection table.

    ``nabla_{e0} e0 = 0``, ``nabla_{e0} u = A u``, ``nabla_u e0 = -S u`` and
    ``nabla_u v = <S u, v> e0``.  The connection does not depend on ``J``,
    which is accepted only for a uniform signature.
    """
    dec = _dec(dec)
    ctx = dec.context
    S = dec.S_full()
    mats = [dec.A_full()]
    for i in range(1, dec.spec.dim):
        Su = S[:, i]
        Li = ctx.zeros((dec.spec.dim, dec.spec.dim))
        Li[0, :] = Su
        Li[:, 0] = -Su
        Li[0, 0] = ctx.scalar(0)
        mats.append(Li)
    return ConnectionTable(tuple(mats))


def bracket_tensor(spec):
    """``C[i, j] = [e_i, e_j]`` as a dense (d, d, d) array."""
    spec = _spec(spec)
    F = spec.ad_e0()
    C = spec.context.zeros((spec.dim,) * 3)
    C[0, :, :] = F.T
    C[:, 0, :] = -F.T
    return C


def koszul_table(spec):
    """Connection from the Koszul formula, ``G[i, j, k] = <nabla_{e_i} e_j, e_k>``."""
    C = bracket_tensor(spec)
    # 2<nabla_x y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>
    return (C - np.transpose(C, (2, 0, 1)) + np.transpose(C, (1, 2, 0))) / 2


def koszul_oracle(spec, x, y):
    """``nabla_x y`` by the Koszul formula, for basis indices or vectors."""
    spec = _spec(spec)
    ctx = spec.context
    d = spec.dim
    return _contract(koszul_table(spec), _basis_vec(ctx, d, x), _basis_vec(ctx, d, y))


def connection_residuals(spec, table=None):
    """Maximum violation of metric compatibility, torsion-freeness and Koszul agreement."""
    spec = _spec(spec)
    table = table if table is not None else levi_civita(spec)
    G = table.dense()
    C = bracket_tensor(spec)
    metric = G + np.swapaxes(G, 1, 2)
    torsion = G - np.swapaxes(G, 0, 1) - C
    koszul = G - koszul_table(spec)
    return {
        "metric": norm(metric),
        "torsion": norm(torsion),
        "koszul": norm(koszul),
    }


def nabla_J(dec, J=None, table=None):
    """``nabla_{e_i} J = [Lambda_i, J]`` for each basis vector."""
    J = _J(dec, J)
    table = table if table is not None else levi_civita(dec)
    return [Li @ J - J @ Li for Li in table]


# -- omega and its derivatives -------------------------------------------------

def omega_matrix(J):
    """Gram matrix of ``omega(x, y) = <J x, y>``."""
    J = J.J if hasattr(J, "J") else np.asarray(J)
    return J.T.copy()


def nabla_omega_oracle(spec, J=None):
    """Dense ``(nabla_{e_i} omega)(e_j, e_k)`` from the Koszul connection."""
    spec = _spec(spec)
    J = _J(spec, J)
    Om = omega_matrix(J)
    G = koszul_table(spec)
    out = []
    for i in range(spec.dim):
        Li = G[i].T
        out.append(-Li.T @ Om - Om @ Li)
    return np.stack(out)


def nabla_omega_tensor(dec, J=None):
    """Dense ``nabla omega`` from the block data (standard J only)."""
    dec = _dec(dec)
    _standard(dec, J)
    ctx, d = dec.context, dec.spec.dim
    Jp = standard_Jprime(dec.n, ctx)
    W = ctx.zeros((d, d, d))
    rho, gamma, Ds, Da = dec.rho, dec.gamma, dec.Ds, dec.Da
    comm = Da @ Jp - Jp @ Da
    W[0, 0, 2:] = rho
    W[0, 1, 2:] = Jp.T @ rho
    W[0, 2:, 2:] = comm.T
    W[1, 1, 2:] = gamma
    W[1, 0, 2:] = -(Jp.T @ gamma)
    W[2:, 1, 2:] = Ds.T
    W[2:, 0, 2:] = -(Jp.T @ Ds).T
    # fill the Y,Z-antisymmetric partners of the rows set above
    for i in range(d):
        for j in (0, 1):
            W[i, 2:, j] = -W[i, j, 2:]
    return W


def nabla_omega(dec, J, x, y, z):
    """``(nabla_x omega)(y, z)`` from the closed form."""
    dec = _dec(dec)
    ctx, d = dec.context, dec.spec.dim
    W = nabla_omega_tensor(dec, J)
    return _contract(W, *(_basis_vec(ctx, d, v) for v in (x, y, z)))


def d_omega_oracle(spec, J=None):
    """Dense ``d omega`` from ``-omega([x,y],z)`` summed cyclically."""
    spec = _spec(spec)
    J = _J(spec, J)
    Om = omega_matrix(J)
    C = bracket_tensor(spec)
    T = np.tensordot(C, Om, axes=([2], [0]))  # T[i,j,k] = omega([e_i,e_j], e_k)
    return -(T + np.transpose(T, (2, 0, 1)) + np.transpose(T, (1, 2, 0)))


def d_omega_tensor(dec, J=None):
    """Dense ``d omega`` from the block data (standard J only)."""
    dec = _dec(dec)
    _standard(dec, J)
    ctx, d = dec.context, dec.spec.dim
    Jp = standard_Jprime(dec.n, ctx)
    M = dec.D.T @ Jp + Jp @ dec.D
    first = Jp.T @ dec.v0
    T = ctx.zeros((d, d, d))
    k = d - 2
    for a in range(k):
        val = first[a]
        for (p, q, r), sgn in _perms(0, 1, 2 + a):
            T[p, q, r] = sgn * val
        for b in range(k):
            val = M[a, b]
            if a == b:
                continue
            T[0, 2 + a, 2 + b] = val
            T[2 + a, 2 + b, 0] = val
            T[2 + b, 0, 2 + a] = val
            T[2 + a, 0, 2 + b] = -val
            T[0, 2 + b, 2 + a] = -val
            T[2 + b, 2 + a, 0] = -val
    return T


def _perms(i, j, k):
    return [((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
            ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)]


def d_omega(dec, J, x, y, z):
    """``d omega(x, y, z)`` from the closed form."""
    dec = _dec(dec)
    ctx, d = dec.context, dec.spec.dim
    return _contract(d_omega_tensor(dec, J), *(_basis_vec(ctx, d, v) for v in (x, y, z)))


def delta_omega(dec):
    """Codifferential of omega as a covector: ``(0, Tr D, -v0)``."""
    dec = _dec(dec)
    out = dec.context.zeros(dec.spec.dim)
    out[1] = dec.trace_D
    out[2:] = -dec.v0
    return out


def delta_omega_oracle(spec, J=None):
    """``delta omega(x) = -sum_i (nabla_{e_i} omega)(e_i, x)``."""
    W = nabla_omega_oracle(spec, J)
    return -np.einsum("iik->k", W)


def lee_form(dec):
    """Lee form ``theta = -(delta omega o J) / (n - 1)`` for the standard J."""
    dec = _dec(dec)
    ctx = dec.context
    Jp = standard_Jprime(dec.n, ctx)
    k = ctx.ratio(1, dec.n - 1)
    out = ctx.zeros(dec.spec.dim)
    out[0] = -dec.trace_D * k
    out[2:] = -(Jp @ dec.v0) * k
    return out


def lee_form_oracle(spec, J=None):
    spec = _spec(spec)
    J = _J(spec, J)
    dw = delta_omega_oracle(spec, J)
    return -(J.T @ dw) * spec.context.ratio(1, spec.n - 1)


def theta_wedge_omega(theta, J):
    """Dense ``theta(x) omega(y,z) + theta(y) omega(z,x) + theta(z) omega(x,y)``."""
    Om = omega_matrix(J)
    T = np.multiply.outer(theta, Om)
    return T + np.transpose(T, (2, 0, 1)) + np.transpose(T, (1, 2, 0))


# -- T and U ------------------------------------------------------------------

def _sign(sign):
    if sign in ("+", 1, +1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def tensor_T_oracle(spec, J=None, sign="+"):
    """``T(X,Y,Z) = (nabla_X omega)(Y,Z) +- (nabla_{JX} omega)(JY,Z)`` from the oracle."""
    s = _sign(sign)
    J = _J(spec, J)
    W = nabla_omega_oracle(spec, J)
    JW = np.einsum("ax,by,abz->xyz", J, J, W)
    return W + JW if s > 0 else W - JW


def tensor_T_closed(dec, J=None, sign="+"):
    """Dense ``T+`` or ``T-`` from the block data (standard J only)."""
    dec = _dec(dec)
    _standard(dec, J)
    s = _sign(sign)
    ctx, d = dec.context, dec.spec.dim
    Jp = standard_Jprime(dec.n, ctx)
    v = dec.rho + dec.gamma if s > 0 else dec.rho - dec.gamma
    comm = dec.Da @ Jp - Jp @ dec.Da
    P = dec.Ds - Jp @ dec.Ds @ Jp if s > 0 else dec.Ds + Jp @ dec.Ds @ Jp
    T = ctx.zeros((d, d, d))
    T[0, 0, 2:] = v
    T[0, 1, 2:] = Jp.T @ v
    T[0, 2:, 2:] = comm.T
    T[1, 0, 2:] = -s * (Jp.T @ v)
    T[1, 1, 2:] = s * v
    T[1, 2:, 2:] = -s * (comm @ Jp).T
    T[2:, 1, 2:] = P.T
    T[2:, 0, 2:] = -(Jp.T @ P).T
    for i in range(d):
        for j in (0, 1):
            T[i, 2:, j] = -T[i, j, 2:]
    return T


def tensor_T(dec, J, x, y, z, sign="+"):
    dec = _dec(dec)
    ctx, d = dec.context, dec.spec.dim
    T = tensor_T_closed(dec, J, sign)
    return _contract(T, *(_basis_vec(ctx, d, v) for v in (x, y, z)))


def _identity_like(J):
    g = np.zeros_like(J)
    for i in range(J.shape[0]):
        g[i, i] = 1
    return g + 0 * J


def _U_from(dw, J):
    g = _identity_like(J)
    dJ = J.T @ dw  # dJ[k] = delta omega(J e_k)
    gJ = g @ J  # gJ[x, y] = g(e_x, J e_y)
    return (
        np.multiply.outer(g, dw)
        - np.transpose(np.multiply.outer(g, dw), (0, 2, 1))
        - np.multiply.outer(gJ, dJ)
        + np.transpose(np.multiply.outer(gJ, dJ), (0, 2, 1))
    )


def tensor_U_closed(dec, J=None):
    """Dense ``U`` built from the closed-form codifferential."""
    dec = _dec(dec)
    Js = _standard(dec, J)
    return _U_from(delta_omega(dec), Js)


def tensor_U_oracle(spec, J=None):
    J = _J(spec, J)
    return _U_from(delta_omega_oracle(spec, J), J)


def tensor_U(dec, J, x, y, z):
    dec = _dec(dec)
    ctx, d = dec.context, dec.spec.dim
    return _contract(tensor_U_closed(dec, J), *(_basis_vec(ctx, d, v) for v in (x, y, z)))


# -- Nijenhuis ------------------------------------------------------------------

def nijenhuis(spec, J, x, y):
    """``N(x, y)`` straight from the bracket."""
    from .core import bracket

    spec = _spec(spec)
    J = _J(spec, J)
    ctx, d = spec.context, spec.dim
    x = _basis_vec(ctx, d, x)
    y = _basis_vec(ctx, d, y)
    Jx, Jy = J @ x, J @ y
    return (bracket(spec, x, y) + J @ (bracket(spec, Jx, y) + bracket(spec, x, Jy))
            - bracket(spec, Jx, Jy))


def nijenhuis_tensor(spec, J=None):
    """Dense ``N[i, j] = N(e_i, e_j)`` from the bracket."""
    spec = _spec(spec)
    J = _J(spec, J)
    C = bracket_tensor(spec)
    # [J e_i, e_j] = sum_a J[a,i] C[a,j]
    CJ1 = np.einsum("ai,ajk->ijk", J, C)
    CJ2 = np.einsum("bj,ibk->ijk", J, C)
    CJJ = np.einsum("ai,bj,abk->ijk", J, J, C)
    return C + np.einsum("ka,ija->ijk", J, CJ1 + CJ2) - CJJ


def nijenhuis_closed(dec, J=None):
    """Pair ``(w0, D + J'DJ')`` determining ``N(e0, x)`` for ``x`` in ``a``.

    The full vector is ``-<w0, J'x> e0 + <w0, x> e1 + (D + J'DJ') x``; the
    ``e0`` component comes from ``J`` applied to the ``e1`` part of ``L J x``.
    """
    dec = _dec(dec)
    _standard(dec, J)
    Jp = standard_Jprime(dec.n, dec.context)
    return dec.w0.copy(), dec.D + Jp @ dec.D @ Jp


def nijenhuis_closed_tensor(dec, J=None):
    dec = _dec(dec)
    Js = _standard(dec, J)
    w0, M = nijenhuis_closed(dec, J)
    Jp = standard_Jprime(dec.n, dec.context)
    ctx, d = dec.context, dec.spec.dim
    N = ctx.zeros((d, d, d))
    for a in range(d - 2):
        col = ctx.zeros(d)
        col[0] = -(w0 @ Jp[:, a])
        col[1] = w0[a]
        col[2:] = M[:, a]
        N[0, 2 + a] = col
        N[2 + a, 0] = -col
        N[1, 2 + a] = -(Js @ col)
        N[2 + a, 1] = Js @ col
    return N


# -- rough Laplacian ----------------------------------------------------------

def rough_laplacian(dec, J=None, table=None):
    """``sum_i (nabla^2_{e_i, e_i} J)`` using ``sum_i nabla_{e_i} e_i = (Tr S) e0``."""
    dec = _dec(dec)
    J = _J(dec, J)
    table = table if table is not None else levi_civita(dec)
    R = dec.context.zeros(J.shape)
    for Li in table:
        C = Li @ J - J @ Li
        R = R + (Li @ C - C @ Li)
    L0 = table[0]
    return R - dec.trace_S * (L0 @ J - J @ L0)


def harmonic_commutator(dec, J=None, table=None):
    """``H = [J, nabla* nabla J] / 2``; ``J`` is harmonic iff ``H = 0``."""
    dec = _dec(dec)
    J = _J(dec, J)
    R = rough_laplacian(dec, J, table)
    return (J @ R - R @ J) / 2


def harmonic_commutator_explicit(dec, J=None, table=None):
    """``H`` from ``sum_i (Lambda_i J Lambda_i J - J Lambda_i J Lambda_i) - Tr S J [Lambda_0, J]``."""
    dec = _dec(dec)
    J = _J(dec, J)
    table = table if table is not None else levi_civita(dec)
    H = dec.context.zeros(J.shape)
    for Li in table:
        H = H + (Li @ J @ Li @ J - J @ Li @ J @ Li)
    L0 = table[0]
    return H - dec.trace_S * (J @ (L0 @ J - J @ L0))


# -- report ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorReport:
    nijenhuis_norm: float
    d_omega_norm: float
    delta_omega: np.ndarray
    lee_form: np.ndarray
    nabla_omega_norm: float
    H: np.ndarray
    metric_flat_hint: bool
    dense: dict | None = None

    def to_dict(self):
        out = {
            "nijenhuis_norm": self.nijenhuis_norm,
            "d_omega_norm": self.d_omega_norm,
            "delta_omega": list(self.delta_omega),
            "lee_form": list(self.lee_form),
            "nabla_omega_norm": self.nabla_omega_norm,
            "H": [list(r) for r in self.H],
            "metric_flat_hint": self.metric_flat_hint,
        }
        if self.dense is not None:
            out["dense"] = {k: v.tolist() for k, v in self.dense.items()}
        return out


def tensor_report(dec, J=None, dense=False):
    """Norms and low-order tensors for the standard structure."""
    dec = _dec(dec)
    Js = _standard(dec, J)
    N = nijenhuis_closed_tensor(dec)
    dW = d_omega_tensor(dec)
    W = nabla_omega_tensor(dec)
    H = harmonic_commutator(dec, Js)
    extra = None
    if dense:
        extra = {"nijenhuis": N, "d_omega": dW, "nabla_omega": W}
    return TensorReport(
        nijenhuis_norm=norm(N),
        d_omega_norm=norm(dW),
        delta_omega=delta_omega(dec),
        lee_form=lee_form(dec),
        nabla_omega_norm=norm(W),
        H=H,
        metric_flat_hint=bool(dec.context.is_zero(dec.S, dec.scale)),
        dense=extra,
    )
