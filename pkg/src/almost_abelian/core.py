"""Almost abelian metric Lie algebras and their block decomposition.

The Lie algebra is ``g = R e0 ⋉_L u`` with ``u = span{e1, ..., e_{2n-1}}``
abelian and ``[e0, x] = L x`` for ``x`` in ``u``.  The basis
``{e0, ..., e_{2n-1}}`` is orthonormal and the standard almost complex
structure sends ``e_{2i} -> e_{2i+1}``.  ``a = span{e2, ..., e_{2n-1}}`` is the
largest J-invariant subspace of ``u``.

Relative to ``u = R e1 ⊕ a`` the matrix ``L`` splits as::

    L = [[mu, w0^t],
         [v0, D   ]]

Vectors ``v0``, ``w0`` and the operator ``D`` live on ``a``; all indices into
them are shifted by two with respect to the ambient basis of ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import (
    FLOAT,
    EXACT,
    ScalarContext,
    check_half_dimension,
    check_square,
    check_vector,
    frozen,
    half_dimension_from_size,
    norm,
)
from .exceptions import InvalidInputError

__all__ = [
    "AlgebraSpec",
    "Decomposition",
    "ComplexStructure",
    "decompose",
    "standard_J",
    "standard_Jprime",
    "is_unimodular",
    "bracket",
    "as_complex_structure",
    "adapt_basis",
    "change_basis",
    "algebra_from_dict",
]


@dataclass(frozen=True)
class AlgebraSpec:
    """An almost abelian Lie algebra of dimension ``2n`` given by ``L``."""

    n: int
    L: np.ndarray
    context: ScalarContext = field(default=FLOAT)

    def __post_init__(self):
        n = check_half_dimension(self.n)
        size = 2 * n - 1
        L = self.context.array(check_square(self.L, size, "L"))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "L", frozen(L))

    @classmethod
    def from_matrix(cls, L, context=None):
        arr = check_square(L, name="L")
        return cls(half_dimension_from_size(arr.shape[0]), arr, context or FLOAT)

    @classmethod
    def from_components(cls, mu, v0, w0, D, context=None):
        ctx = context or FLOAT
        D = check_square(D, name="D")
        k = D.shape[0]
        if k < 2 or k % 2:
            raise InvalidInputError(f"D must be (2n-2)x(2n-2) with n >= 2, got side {k}")
        v0 = check_vector(v0, k, "v0")
        w0 = check_vector(w0, k, "w0")
        L = np.empty((k + 1, k + 1), dtype=object)
        L[0, 0] = mu
        L[0, 1:] = w0
        L[1:, 0] = v0
        L[1:, 1:] = D
        return cls(k // 2 + 1, L, ctx)

    @property
    def dim(self):
        return 2 * self.n

    def with_context(self, context):
        return AlgebraSpec(self.n, self.L, context)

    def ad_e0(self):
        """Matrix of ``ad_{e0}`` on all of ``g`` (zero row and column for e0)."""
        out = self.context.zeros((self.dim, self.dim))
        out[1:, 1:] = self.L
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (
            self.n == other.n
            and self.context == other.context
            and np.array_equal(self.L, other.L)
        )

    def __hash__(self):
        return hash((self.n, self.context, tuple(self.L.flat)))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Block data of ``L`` consumed by every closed-form formula.

    Attributes
    ----------
    mu : scalar
        ``<L e1, e1>``.
    v0, w0 : ndarray, shape (2n-2,)
        First column and first row of ``L`` restricted to ``a``.
    D : ndarray, shape (2n-2, 2n-2)
        ``L`` restricted and projected to ``a``.
    gamma, rho : ndarray
        ``(v0 + w0) / 2`` and ``(v0 - w0) / 2``.
    Ds, Da : ndarray
        Symmetric and skew-symmetric parts of ``D``.
    S, A : ndarray, shape (2n-1, 2n-1)
        Symmetric and skew-symmetric parts of ``L`` on ``u``.
    """

    spec: AlgebraSpec
    mu: object
    v0: np.ndarray
    w0: np.ndarray
    D: np.ndarray
    gamma: np.ndarray
    rho: np.ndarray
    Ds: np.ndarray
    Da: np.ndarray
    S: np.ndarray
    A: np.ndarray

    @property
    def n(self):
        return self.spec.n

    @property
    def context(self):
        return self.spec.context

    @property
    def L(self):
        return self.spec.L

    @property
    def trace_S(self):
        return np.trace(self.spec.L)

    @property
    def trace_D(self):
        return np.trace(self.D)

    @property
    def scale(self):
        """``max(1, ||L||_F)``, the reference size for float thresholds."""
        return max(1.0, norm(self.spec.L))

    def reassemble(self):
        k = self.D.shape[0]
        out = self.context.zeros((k + 1, k + 1))
        out[0, 0] = self.mu
        out[0, 1:] = self.w0
        out[1:, 0] = self.v0
        out[1:, 1:] = self.D
        return out

    def S_full(self):
        """``S`` extended by zero to ``g`` (so ``S e0 = 0``)."""
        out = self.context.zeros((self.spec.dim, self.spec.dim))
        out[1:, 1:] = self.S
        return out

    def A_full(self):
        out = self.context.zeros((self.spec.dim, self.spec.dim))
        out[1:, 1:] = self.A
        return out


def decompose(spec):
    """Split ``L`` into ``(mu, v0, w0, D)`` and the derived blocks."""
    if not isinstance(spec, AlgebraSpec):
        raise InvalidInputError(f"expected an AlgebraSpec, got {type(spec).__name__}")
    L = spec.L
    mu = L[0, 0]
    v0 = L[1:, 0].copy()
    w0 = L[0, 1:].copy()
    D = L[1:, 1:].copy()
    return Decomposition(
        spec=spec,
        mu=mu,
        v0=frozen(v0),
        w0=frozen(w0),
        D=frozen(D),
        gamma=frozen((v0 + w0) / 2),
        rho=frozen((v0 - w0) / 2),
        Ds=frozen((D + D.T) / 2),
        Da=frozen((D - D.T) / 2),
        S=frozen((L + L.T) / 2),
        A=frozen((L - L.T) / 2),
    )


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """An orthogonal almost complex structure on ``R^{2n}``."""

    J: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "J", frozen(self.J))

    @property
    def dim(self):
        return self.J.shape[0]

    @property
    def Jprime(self):
        """Restriction to ``a``; meaningful when the structure is adapted."""
        return self.J[2:, 2:]

    def is_adapted(self):
        """``J e0 = e1`` and ``a`` is J-invariant."""
        J = self.J
        if not (J[1, 0] == 1 and J[0, 1] == -1):
            return False
        rest = [J[0, 2:], J[1, 2:], J[2:, 0], J[2:, 1]]
        return all(all(x == 0 for x in np.asarray(r).flat) for r in rest)

    def is_standard(self):
        return np.array_equal(self.J, standard_J(self.dim // 2, _ctx_of(self.J)).J)


def _ctx_of(arr):
    return EXACT if np.asarray(arr).dtype == object else FLOAT


def standard_J(n, context=None):
    """Block-diagonal ``J`` with ``J e_{2i} = e_{2i+1}``."""
    n = check_half_dimension(n)
    ctx = context or FLOAT
    J = ctx.zeros((2 * n, 2 * n))
    one = ctx.scalar(1)
    for i in range(n):
        J[2 * i + 1, 2 * i] = one
        J[2 * i, 2 * i + 1] = -one
    return ComplexStructure(J)


def standard_Jprime(n, context=None):
    """Restriction of the standard J to ``a`` (size ``2n - 2``)."""
    return standard_J(n, context).J[2:, 2:].copy()


def as_complex_structure(J, n=None, context=None, tol=1e-9):
    """Validate ``J`` (array or ComplexStructure) against ``J^2 = -I``, ``J^t = -J``.

    ``None`` yields the standard structure for ``n``.
    """
    ctx = context or FLOAT
    if J is None:
        if n is None:
            raise InvalidInputError("need n to build the standard complex structure")
        return standard_J(n, ctx)
    if isinstance(J, ComplexStructure):
        arr = J.J
    else:
        arr = ctx.array(check_square(J, name="J"))
    if n is not None and arr.shape[0] != 2 * n:
        raise InvalidInputError(f"J must be {2 * n}x{2 * n}, got {arr.shape[0]}x{arr.shape[0]}")
    if arr.shape[0] % 2:
        raise InvalidInputError("J must act on an even-dimensional space")
    if ctx.exact and arr.dtype != object:
        arr = ctx.array(arr)
    eye = ctx.eye(arr.shape[0])
    sq = arr @ arr + eye
    skew = arr.T + arr
    if ctx.exact:
        ok = all(x == 0 for x in sq.flat) and all(x == 0 for x in skew.flat)
    else:
        ok = norm(sq) <= tol * arr.shape[0] and norm(skew) <= tol * arr.shape[0]
    if not ok:
        raise InvalidInputError(
            "J is not a compatible almost complex structure",
            {"J^2+I": norm(sq), "J^t+J": norm(skew)},
        )
    return J if isinstance(J, ComplexStructure) else ComplexStructure(arr)


def is_unimodular(spec):
    """``Tr L = 0`` (exactly, or within tolerance scaled by ``max(1, ||L||)``)."""
    return spec.context.is_zero(np.trace(spec.L), max(1.0, norm(spec.L)))


def bracket(spec, x, y):
    """Lie bracket of two vectors of ``g`` in the basis ``{e0, ..., e_{2n-1}}``."""
    ctx = spec.context
    x = ctx.array(check_vector(x, spec.dim, "x"))
    y = ctx.array(check_vector(y, spec.dim, "y"))
    out = ctx.zeros(spec.dim)
    out[1:] = x[0] * (spec.L @ y[1:]) - y[0] * (spec.L @ x[1:])
    return out


def adapt_basis(J):
    """Orthogonal ``Q`` with ``Q e0 = e0`` and ``Q^t J Q`` standard.

    Columns are ``e0, J e0, f1, J f1, ...`` where the ``f_k`` are obtained by
    Gram-Schmidt inside ``a = span{e0, J e0}^perp``.  Float only.
    """
    J = np.asarray(J.J if isinstance(J, ComplexStructure) else J, dtype=float)
    d = J.shape[0]
    cols = [np.eye(d)[0], J[:, 0]]
    for k in range(d):
        if len(cols) == d:
            break
        v = np.eye(d)[k]
        for c in cols:
            v = v - (c @ v) * c
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            continue
        v = v / nv
        w = J @ v
        for c in cols:
            w = w - (c @ w) * c
        w = w / np.linalg.norm(w)
        cols.extend([v, w])
    Q = np.column_stack(cols)
    return Q


def change_basis(spec, Q):
    """Express the algebra in the orthonormal basis given by the columns of ``Q``.

    ``Q`` must fix ``e0``; the new ``L`` is ``Q_u^t L Q_u``.
    """
    Q = np.asarray(Q, dtype=float)
    if not np.allclose(Q[:, 0], np.eye(Q.shape[0])[0]) or not np.allclose(Q.T @ Q, np.eye(Q.shape[0])):
        raise InvalidInputError("change of basis must be orthogonal and fix e0")
    Qu = Q[1:, 1:]
    L = Qu.T @ np.asarray(spec.L, dtype=float) @ Qu
    return AlgebraSpec(spec.n, L, FLOAT if spec.context.exact else spec.context)


def algebra_from_dict(data, context=None):
    """Build an :class:`AlgebraSpec` from the JSON input schema.

    Either ``{"n", "L"}`` or ``{"n", "mu", "v0", "w0", "D"}``; optional
    ``"mode"`` and ``"tolerance"`` select the scalar context unless an explicit
    ``context`` overrides them.
    """
    if not isinstance(data, dict):
        raise InvalidInputError("algebra input must be a JSON object")
    if context is None:
        mode = data.get("mode", "float")
        tol = data.get("tolerance", None)
        if mode == "exact":
            context = ScalarContext("exact", 0.0 if tol is None else tol)
        else:
            context = ScalarContext(mode, FLOAT.tolerance if tol is None else tol)
    if "L" in data:
        spec = AlgebraSpec.from_matrix(data["L"], context)
    elif all(k in data for k in ("mu", "v0", "w0", "D")):
        spec = AlgebraSpec.from_components(data["mu"], data["v0"], data["w0"], data["D"], context)
    else:
        raise InvalidInputError("input needs either 'L' or all of 'mu', 'v0', 'w0', 'D'")
    if "n" in data and data["n"] != spec.n:
        raise InvalidInputError(f"declared n={data['n']} does not match L of size {2 * spec.n - 1}")
    return spec
