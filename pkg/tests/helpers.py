"""Random algebra generators shared by the property tests and the acceptance sweep."""
import numpy as np
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from scipy.linalg import block_diag

from almost_abelian.core import AlgebraSpec, standard_Jprime

GH_KINDS = ("u", "sp", "gl", "symu", "hom", "csp", "gen", "zero")


def random_L(n, rng, unimodular=False, low=-2.0, high=2.0):
    k = 2 * n - 1
    L = rng.uniform(low, high, (k, k))
    if unimodular:
        L -= np.trace(L) / k * np.eye(k)
    return L


def structured_D(n, rng, kind):
    """``D`` drawn from one of the Lie subalgebras appearing in the class table."""
    k = 2 * n - 2
    Jp = standard_Jprime(n)
    X = rng.uniform(-2, 2, (k, k))
    S, A = (X + X.T) / 2, (X - X.T) / 2
    Y = rng.uniform(-2, 2, (k, k))
    uA = (A + Jp @ A @ Jp.T) / 2
    spS = Jp @ (S + S.T)
    c = rng.uniform(-1, 1)
    return {
        "u": uA,
        "sp": spS,
        "gl": (Y - Jp @ Y @ Jp) / 2,
        "symu": S + uA,
        "hom": c * np.eye(k) + uA,
        "csp": c * np.eye(k) + (S + Jp @ S @ Jp) / 2 + uA,
        "gen": Y,
        "zero": np.zeros((k, k)),
    }[kind]


def structured_algebra(n, rng, kind=None):
    """Block data with randomly switched-off pieces, so every class gets hit."""
    kind = kind or GH_KINDS[rng.integers(len(GH_KINDS))]
    k = 2 * n - 2
    D = structured_D(n, rng, kind)
    v0 = rng.uniform(-2, 2, k) * (rng.random() < 0.5)
    w0 = rng.uniform(-2, 2, k) * (rng.random() < 0.5)
    mu = rng.uniform(-2, 2) * (rng.random() < 0.5)
    if rng.random() < 0.3:
        mu = np.trace(D)
    if rng.random() < 0.3:
        D = D - np.trace(D) / k * np.eye(k)
    return AlgebraSpec.from_components(mu, v0, w0, D)


def realified_unitary(k, rng):
    Z = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    U, _ = np.linalg.qr(Z)
    R = np.zeros((2 * k, 2 * k))
    R[0::2, 0::2], R[1::2, 0::2] = U.real, U.imag
    R[0::2, 1::2], R[1::2, 1::2] = -U.imag, U.real
    return R


def skt_algebra(rng, n=None, unimodular=False):
    """An SKT structure: ``D`` unitarily block diagonal with real parts in {0, -mu/2}."""
    n = int(n or rng.integers(2, 5))
    k = n - 1
    mu = rng.uniform(-2, 2) * (rng.random() < 0.7)
    a = [rng.choice([0.0, -mu / 2]) for _ in range(k)]
    if unimodular and mu != 0:
        a = [0.0] * k
        a[rng.integers(k)] = -mu / 2
    b = rng.uniform(-2, 2, k) * (rng.random() < 0.8)
    B = block_diag(*[[[ai, -bi], [bi, ai]] for ai, bi in zip(a, b)])
    Q = realified_unitary(k, rng) if rng.random() < 0.7 else np.eye(2 * k)
    D = Q @ B @ Q.T
    r = rng.random()
    if r < 0.3:
        v0 = np.zeros(2 * k)
    elif r < 0.6:
        w, V = np.linalg.eig(D)
        i = int(np.argmin(abs(w)))
        v0 = 2 * np.real(V[:, i]) if abs(w[i]) < 1e-12 else rng.normal(size=2 * k)
    else:
        v0 = rng.normal(size=2 * k)
    return AlgebraSpec.from_components(mu, v0, np.zeros(2 * k), D)


def random_tangent(J, rng):
    """Random ``X`` with ``X^t = -X`` and ``XJ = -JX``."""
    X = rng.normal(size=J.shape)
    X = X - X.T
    return (X + J @ X @ J) / 2


@st.composite
def algebras(draw, ns=(2, 3, 4), unimodular=None):
    n = draw(st.sampled_from(ns))
    k = 2 * n - 1
    L = draw(hnp.arrays(np.float64, (k, k), elements=st.floats(-2, 2, allow_nan=False, width=64)))
    uni = draw(st.booleans()) if unimodular is None else unimodular
    if uni:
        L = L - np.trace(L) / k * np.eye(k)
    return AlgebraSpec(n, L)


@st.composite
def exact_algebras(draw, ns=(2, 3)):
    from fractions import Fraction

    from almost_abelian._validation import EXACT

    n = draw(st.sampled_from(ns))
    k = 2 * n - 1
    entries = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    L = [[draw(entries) for _ in range(k)] for _ in range(k)]
    return AlgebraSpec(n, np.array(L, dtype=object) + Fraction(0), EXACT)


seeds = st.integers(min_value=0, max_value=2**32 - 1)
