"""Integer witnesses for lattices in almost abelian groups.

``G = R ⋉_φ R^m`` with ``φ(t) = exp(t L)`` admits a lattice when some
``exp(t0 L)`` is conjugate to an integer matrix of determinant one.  This
module verifies such witnesses block by block: ``t0 L`` is assumed to be
(real-similar to) a block diagonal matrix whose blocks have known integer
counterparts.

Block kinds
-----------
``hyperbolic``  ``t_m [[0,1],[1,0]]`` (or ``t_m diag(1,-1)``) with
                ``t_m = log((m + sqrt(m^2 - 4)) / 2)``; witness ``[[0,-1],[1,m]]``.
``rotation``    ``θ [[0,-1],[1,0]]`` for ``θ`` in {2π, π, 2π/3, π/2, π/3}.
``unipotent``   a rational nilpotent matrix ``N``; witness ``exp(N)`` when
                integral, else ``I`` plus an integer nilpotent of the same type.
``identity``    zero generator of size ``k``.
``explicit``    a user supplied integer matrix, optionally with a real generator.

The group of the lattice is ``Z ⋉_E Z^m`` and its abelianization is
``Z ⊕ coker(E - I)``, computed with an exact Smith normal form.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy as sp
from scipy.linalg import block_diag, expm

from .exceptions import InvalidInputError, NoWitnessError

__all__ = [
    "ADMISSIBLE_ANGLES",
    "BlockSpec",
    "BlockExp",
    "LatticeWitness",
    "SNFResult",
    "AbelianGroup",
    "hyperbolic_time",
    "exp_block",
    "block_integer_witness",
    "assemble_witness",
    "smith_normal_form",
    "lattice_abelianization",
    "isomorphism_scale_check",
    "companion_matrix",
    "generator",
]

LAMBDA = sp.Symbol("lambda")

# rotation angles as multiples of pi, with integer witnesses of trace 2cos(theta)
ADMISSIBLE_ANGLES = {
    Fraction(2): ((1, 0), (0, 1)),
    Fraction(1): ((-1, 0), (0, -1)),
    Fraction(2, 3): ((0, -1), (1, -1)),
    Fraction(1, 2): ((0, -1), (1, 0)),
    Fraction(1, 3): ((0, -1), (1, 1)),
}

KINDS = ("hyperbolic", "rotation", "unipotent", "identity", "explicit")


def hyperbolic_time(m):
    """``t_m = log((m + sqrt(m^2 - 4)) / 2)``, so ``2 cosh(t_m) = m``."""
    return float(np.log((m + np.sqrt(m * m - 4.0)) / 2))


def _int_matrix(M, name="matrix"):
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        if isinstance(x, (bool, np.bool_)):
            raise InvalidInputError(f"{name} has a boolean entry")
        try:
            fx = Fraction(x) if not isinstance(x, float) else Fraction(x)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"{name} has a non-numeric entry {x!r}") from exc
        if fx.denominator != 1:
            raise InvalidInputError(f"{name} must have integer entries, got {x!r}")
        out[idx] = int(fx)
    return out


def _rational_matrix(M, name="matrix"):
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        try:
            out[idx] = Fraction(x) if not isinstance(x, str) else Fraction(x.strip())
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"{name} has a non-rational entry {x!r}") from exc
    return out


def _angle(value):
    """Angle as a multiple of pi; strings like ``"2/3"`` or ``"2/3pi"`` are accepted."""
    if isinstance(value, str):
        txt = value.replace(" ", "").lower().replace("*pi", "").replace("pi", "")
        value = txt or "1"
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"rotation angle must be a rational multiple of pi, got {value!r}") from exc


@dataclass(frozen=True)
class BlockSpec:
    """One diagonal block of ``t0 L``.

    ``hyperbolic`` takes ``m`` (integer >= 3) and ``form`` ("offdiag" or
    "diag"); ``rotation`` takes ``angle`` as a multiple of π (so ``1/2``
    means π/2); ``unipotent`` takes a rational nilpotent ``N``;
    ``identity`` takes ``size``; ``explicit`` takes an integer ``E`` and
    optionally a real ``generator``.
    """

    kind: str
    m: int | None = None
    form: str = "offdiag"
    angle: Fraction | None = None
    N: tuple | None = None
    size: int | None = None
    E: tuple | None = None
    generator: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"block kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "hyperbolic":
            if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)) or self.m < 3:
                raise InvalidInputError(f"hyperbolic block needs an integer m >= 3, got {self.m!r}")
            if self.form not in ("offdiag", "diag"):
                raise InvalidInputError(f"hyperbolic form must be 'offdiag' or 'diag', got {self.form!r}")
            object.__setattr__(self, "m", int(self.m))
        elif self.kind == "rotation":
            if self.angle is None:
                raise InvalidInputError("rotation block needs an angle (multiple of pi)")
            object.__setattr__(self, "angle", _angle(self.angle))
        elif self.kind == "unipotent":
            N = _rational_matrix(self.N, "N")
            k = N.shape[0]
            P = N.copy()
            for _ in range(k):
                P = P.dot(N)
            if any(x != 0 for x in P.flat):
                raise InvalidInputError("unipotent block needs a nilpotent N")
            object.__setattr__(self, "N", tuple(tuple(r) for r in N))
        elif self.kind == "identity":
            if isinstance(self.size, bool) or not isinstance(self.size, (int, np.integer)) or self.size < 1:
                raise InvalidInputError(f"identity block needs a positive size, got {self.size!r}")
            object.__setattr__(self, "size", int(self.size))
        elif self.kind == "explicit":
            E = _int_matrix(self.E, "E")
            object.__setattr__(self, "E", tuple(tuple(r) for r in E))
            if self.generator is not None:
                G = np.asarray(self.generator, dtype=float)
                if G.shape != E.shape:
                    raise InvalidInputError("explicit generator must match the size of E")
                object.__setattr__(self, "generator", tuple(tuple(float(x) for x in r) for r in G))

    @property
    def dim(self):
        if self.kind in ("hyperbolic", "rotation"):
            return 2
        if self.kind == "unipotent":
            return len(self.N)
        if self.kind == "identity":
            return self.size
        return len(self.E)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "kind" not in data:
            raise InvalidInputError("each block must be an object with a 'kind'")
        data = dict(data)
        kind = data.pop("kind")
        allowed = {"m", "form", "angle", "N", "size", "E", "generator"}
        extra = set(data) - allowed
        if extra:
            raise InvalidInputError(f"unknown block fields {sorted(extra)}")
        return cls(kind, **data)

    def to_dict(self):
        out = {"kind": self.kind}
        if self.kind == "hyperbolic":
            out.update(m=self.m, form=self.form)
        elif self.kind == "rotation":
            out["angle"] = str(self.angle)
        elif self.kind == "unipotent":
            out["N"] = [[str(x) for x in r] for r in self.N]
        elif self.kind == "identity":
            out["size"] = self.size
        else:
            out["E"] = [list(r) for r in self.E]
        return out

    def generator_matrix(self):
        """Real matrix ``G`` whose exponential is this block."""
        if self.kind == "hyperbolic":
            t = hyperbolic_time(self.m)
            base = [[0.0, 1.0], [1.0, 0.0]] if self.form == "offdiag" else [[1.0, 0.0], [0.0, -1.0]]
            return t * np.array(base)
        if self.kind == "rotation":
            th = float(self.angle) * np.pi
            return np.array([[0.0, -th], [th, 0.0]])
        if self.kind == "unipotent":
            return np.array([[float(x) for x in r] for r in self.N])
        if self.kind == "identity":
            return np.zeros((self.size, self.size))
        if self.generator is None:
            raise InvalidInputError("explicit block has no generator")
        return np.array(self.generator, dtype=float)


@dataclass(frozen=True)
class BlockExp:
    """``exp`` of a block: a float matrix plus exact trace/det/char-poly data."""

    matrix: np.ndarray
    trace: object
    det: object
    charpoly: tuple  # integer or rational coefficients, highest degree first


def _exact_exp(spec):
    """Exact sympy matrix of ``exp`` of the block generator (when available)."""
    if spec.kind == "hyperbolic":
        m = spec.m
        t = sp.log((m + sp.sqrt(m * m - 4)) / 2)
        base = sp.Matrix([[0, 1], [1, 0]]) if spec.form == "offdiag" else sp.Matrix([[1, 0], [0, -1]])
        return (t * base).exp()
    if spec.kind == "rotation":
        th = sp.Rational(spec.angle.numerator, spec.angle.denominator) * sp.pi
        return (th * sp.Matrix([[0, -1], [1, 0]])).exp()
    if spec.kind == "unipotent":
        N = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in spec.N])
        out = sp.eye(N.shape[0])
        term = sp.eye(N.shape[0])
        for j in range(1, N.shape[0] + 1):
            term = term * N / j
            out += term
        return out
    if spec.kind == "identity":
        return sp.eye(spec.size)
    return None


def _poly_coeffs(expr):
    poly = sp.Poly(sp.expand(sp.radsimp(sp.simplify(expr))), LAMBDA)
    out = []
    for c in poly.all_coeffs():
        c = sp.nsimplify(c)
        if not c.is_Rational:
            raise NoWitnessError(f"char poly coefficient {c} is not rational")
        out.append(Fraction(int(c.p), int(c.q)))
    return tuple(out)


@functools.lru_cache(maxsize=256)
def _exp_block_cached(spec):
    exact = _exact_exp(spec)
    if exact is None:
        G = spec.generator_matrix()
        M = expm(G)
        coeffs = np.poly(M)
        return BlockExp(M, float(np.trace(M)), float(np.linalg.det(M)), tuple(float(c) for c in coeffs))
    if spec.kind == "hyperbolic":
        G = spec.generator_matrix()
        M = expm(G)
    else:
        M = np.array(exact.evalf(30).tolist(), dtype=float)
    cp = _poly_coeffs(exact.charpoly(LAMBDA).as_expr())
    tr = -cp[1]
    det = cp[-1] * (-1) ** exact.shape[0]
    return BlockExp(M, tr, det, cp)


def exp_block(spec):
    """Exponential of a block generator with exact trace and determinant."""
    out = _exp_block_cached(spec)
    return BlockExp(out.matrix.copy(), out.trace, out.det, out.charpoly)


def companion_matrix(coeffs):
    """Integer companion matrix of a monic polynomial ``[1, c_{k-1}, ..., c_0]``."""
    coeffs = [Fraction(c) for c in coeffs]
    if coeffs[0] != 1:
        raise InvalidInputError("companion matrix needs a monic polynomial")
    k = len(coeffs) - 1
    C = np.zeros((k, k), dtype=object)
    C.fill(0)
    for i in range(1, k):
        C[i, i - 1] = 1
    for i in range(k):
        c = -coeffs[k - i]
        if c.denominator != 1:
            raise NoWitnessError("non-integer char poly has no companion witness")
        C[i, k - 1] = int(c)
    return C


def _nilpotent_type(N):
    """Ranks of ``N^j`` for ``j = 1..k`` (exact)."""
    M = sp.Matrix(N)
    k = M.shape[0]
    ranks = []
    P = sp.eye(k)
    for _ in range(k):
        P = P * M
        ranks.append(P.rank())
    return tuple(ranks)


def _jordan_sizes(ranks, k):
    # number of blocks of size >= j is rank(N^{j-1}) - rank(N^j)
    r = (k,) + tuple(ranks)
    at_least = [r[j - 1] - r[j] for j in range(1, k + 1)]
    sizes = []
    for j in range(1, k + 1):
        exactly = at_least[j - 1] - (at_least[j] if j < k else 0)
        sizes.extend([j] * exactly)
    return sorted(sizes, reverse=True)


def block_integer_witness(spec):
    """Integer matrix conjugate to ``exp`` of the block, with evidence."""
    if spec.kind == "hyperbolic":
        m = spec.m
        E = np.array([[0, -1], [1, m]], dtype=object)
        ev = f"char poly lambda^2 - {m} lambda + 1 shared; distinct real roots, so conjugate"
        return E, ev
    if spec.kind == "rotation":
        if spec.angle not in ADMISSIBLE_ANGLES:
            raise NoWitnessError(
                f"no integer witness known for rotation by {spec.angle} pi; "
                f"admissible angles are {sorted(str(a) + 'pi' for a in ADMISSIBLE_ANGLES)}"
            )
        E = np.array(ADMISSIBLE_ANGLES[spec.angle], dtype=object)
        if spec.angle.denominator == 1:
            ev = "exp of the block is already this integer matrix"
        else:
            ev = "shared char poly with distinct complex roots, so conjugate"
        return E, ev
    if spec.kind == "unipotent":
        ex = _exact_exp(spec)
        k = ex.shape[0]
        if all(x.is_integer for x in ex):
            E = np.array([[int(x) for x in ex.row(i)] for i in range(k)], dtype=object)
            return E, "exp(N) is already integral"
        sizes = _jordan_sizes(_nilpotent_type(spec.N), k)
        E = np.zeros((k, k), dtype=object)
        E.fill(0)
        pos = 0
        for s in sizes:
            for i in range(s):
                E[pos + i, pos + i] = 1
                if i + 1 < s:
                    E[pos + i, pos + i + 1] = 1
            pos += s
        return E, f"unipotent with Jordan blocks {sizes}; same Jordan type as exp(N)"
    if spec.kind == "identity":
        E = np.zeros((spec.size, spec.size), dtype=object)
        E.fill(0)
        for i in range(spec.size):
            E[i, i] = 1
        return E, "identity"
    E = np.array(spec.E, dtype=object)
    ev = "user supplied integer matrix"
    if spec.generator is not None:
        got = np.poly(expm(spec.generator_matrix()))
        want = np.poly(np.array(spec.E, dtype=float))
        if not np.allclose(got, want, atol=1e-9 * max(1.0, np.abs(want).max())):
            raise NoWitnessError("explicit E does not share the char poly of exp(generator)")
        ev += "; char poly of exp(generator) matches numerically"
    return E, ev


@dataclass(frozen=True)
class LatticeWitness:
    t0: str
    E: np.ndarray
    blocks: tuple
    conjugacy_evidence: tuple
    det: int
    charpoly: tuple
    charpoly_agrees: bool
    family: str | None = None

    @property
    def is_lattice(self):
        return self.det == 1 and self.charpoly_agrees

    def to_dict(self):
        return {
            "t0": self.t0,
            "E": [[int(x) for x in r] for r in self.E],
            "blocks": [b.to_dict() for b in self.blocks],
            "conjugacy_evidence": list(self.conjugacy_evidence),
            "det": self.det,
            "charpoly": [str(c) for c in self.charpoly],
            "charpoly_agrees": self.charpoly_agrees,
            "is_lattice": self.is_lattice,
            "family": self.family,
        }


def _block_diag_obj(mats):
    k = sum(m.shape[0] for m in mats)
    out = np.zeros((k, k), dtype=object)
    out.fill(0)
    pos = 0
    for m in mats:
        s = m.shape[0]
        out[pos:pos + s, pos:pos + s] = m
        pos += s
    return out


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += Fraction(a) * Fraction(b)
    return tuple(out)


def assemble_witness(blocks, t0="1"):
    """Direct sum of block witnesses with exact det and char-poly checks.

    The char poly of ``E`` (computed by sympy from ``E`` alone) is compared to
    the product of the block char polys of ``exp`` (computed from the
    generators).  ``det E = -1`` is reported with ``is_lattice = False``.
    """
    blocks = tuple(b if isinstance(b, BlockSpec) else BlockSpec.from_dict(b) for b in blocks)
    if not blocks:
        raise InvalidInputError("need at least one block")
    mats, evidence = [], []
    expected = (Fraction(1),)
    exact = True
    for b in blocks:
        E, ev = block_integer_witness(b)
        mats.append(E)
        evidence.append(f"{b.kind}: {ev}")
        if b.kind == "explicit":
            cp = _poly_coeffs(sp.Matrix(E.tolist()).charpoly(LAMBDA).as_expr())
            exact = exact and b.generator is None
        else:
            cp = exp_block(b).charpoly
        expected = _poly_mul(expected, cp)
    E = _block_diag_obj(mats)
    M = sp.Matrix(E.tolist())
    det = int(M.det())
    cp = _poly_coeffs(M.charpoly(LAMBDA).as_expr())
    family = None
    ms = sorted({b.m for b in blocks if b.kind == "hyperbolic"})
    if ms:
        family = "countable family indexed by m >= 3 (here m = " + ", ".join(map(str, ms)) + ")"
    return LatticeWitness(
        t0=str(t0),
        E=E,
        blocks=blocks,
        conjugacy_evidence=tuple(evidence),
        det=det,
        charpoly=cp,
        charpoly_agrees=cp == expected,
        family=family,
    )


def generator(blocks):
    """Block diagonal real matrix ``G`` with ``exp(G)`` conjugate to the witness."""
    blocks = [b if isinstance(b, BlockSpec) else BlockSpec.from_dict(b) for b in blocks]
    return block_diag(*[b.generator_matrix() for b in blocks])


# -- Smith normal form ----------------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with ``D`` diagonal and ``d1 | d2 | ...``."""

    invariant_factors: tuple
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray


def _eye_obj(k):
    out = np.zeros((k, k), dtype=object)
    out.fill(0)
    for i in range(k):
        out[i, i] = 1
    return out


def smith_normal_form(M):
    """Exact Smith normal form over the integers with unimodular transforms."""
    A = _int_rect(M)
    rows, cols = A.shape
    U = _eye_obj(rows)
    V = _eye_obj(cols)
    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i, j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i, j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        A[[t, i]] = A[[i, t]]
        U[[t, i]] = U[[i, t]]
        A[:, [t, j]] = A[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i, t] != 0:
                    q = A[i, t] // A[t, t]
                    A[i] = A[i] - q * A[t]
                    U[i] = U[i] - q * U[t]
                    if A[i, t] != 0:
                        A[[t, i]] = A[[i, t]]
                        U[[t, i]] = U[[i, t]]
                        done = False
            for j in range(t + 1, cols):
                if A[t, j] != 0:
                    q = A[t, j] // A[t, t]
                    A[:, j] = A[:, j] - q * A[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                    if A[t, j] != 0:
                        A[:, [t, j]] = A[:, [j, t]]
                        V[:, [t, j]] = V[:, [j, t]]
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the submatrix
            bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i, j] % A[t, t] != 0]
            if bad:
                i, _ = bad[0]
                A[t] = A[t] + A[i]
                U[t] = U[t] + U[i]
                continue
            break
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
        t += 1
    factors = tuple(int(A[i, i]) for i in range(min(rows, cols)))
    return SNFResult(factors, A, U, V)


def _int_rect(M):
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        raise InvalidInputError(f"M must be a matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        fx = Fraction(x)
        if fx.denominator != 1:
            raise InvalidInputError(f"M must have integer entries, got {x!r}")
        out[idx] = int(fx)
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank ⊕ Z_{t1} ⊕ ... ⊕ Z_{tk}``."""

    rank: int
    torsion: tuple

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion), "group": str(self)}


def lattice_abelianization(E):
    """Abelianization of ``Z ⋉_E Z^m``: ``Z ⊕ coker(E - I)``."""
    E = _int_matrix(E, "E")
    det = int(sp.Matrix(E.tolist()).det())
    if det not in (1, -1):
        raise InvalidInputError(f"E must be unimodular (det +-1), got det {det}")
    k = E.shape[0]
    snf = smith_normal_form(E - _eye_obj(k))
    zeros = sum(1 for d in snf.invariant_factors if d == 0)
    torsion = tuple(d for d in snf.invariant_factors if d > 1)
    return AbelianGroup(1 + zeros, torsion)


# -- isomorphism of almost abelian algebras ------------------------------------------

def _is_rational_input(*mats):
    for M in mats:
        for x in np.asarray(M, dtype=object).flat:
            if isinstance(x, (Fraction, int, np.integer, str)) and not isinstance(x, bool):
                continue
            if isinstance(x, float) and x.is_integer():
                continue
            return False
    return True


def _exact_similar(A, B):
    A = sp.Matrix(A)
    B = sp.Matrix(B)
    pa = A.charpoly(LAMBDA)
    if pa != B.charpoly(LAMBDA):
        return False
    k = A.shape[0]
    for factor, mult in sp.factor_list(pa.as_expr(), LAMBDA)[1]:
        poly = sp.Poly(factor, LAMBDA)
        pA = _poly_eval(poly, A)
        pB = _poly_eval(poly, B)
        QA, QB = sp.eye(k), sp.eye(k)
        for _ in range(mult):
            QA, QB = QA * pA, QB * pB
            if QA.rank() != QB.rank():
                return False
    return True


def _poly_eval(poly, M):
    out = sp.zeros(*M.shape)
    for c in poly.all_coeffs():
        out = out * M + c * sp.eye(M.shape[0])
    return out


def _float_similar(A, B, tol=1e-6):
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    k = A.shape[0]
    scale = max(1.0, np.linalg.norm(A), np.linalg.norm(B))
    ea = np.linalg.eigvals(A)
    eb = list(np.linalg.eigvals(B))
    cluster_tol = 1e-4 * scale
    for lam in ea:
        dist = [abs(lam - mu) for mu in eb]
        j = int(np.argmin(dist))
        if dist[j] > cluster_tol:
            return False
        eb.pop(j)
    clusters = []
    for lam in ea:
        for c in clusters:
            if abs(c[0] - lam) <= cluster_tol:
                c.append(lam)
                break
        else:
            clusters.append([lam])
    eye = np.eye(k)
    for c in clusters:
        lam = np.mean(c)
        PA, PB = eye.astype(complex), eye.astype(complex)
        for p in range(1, len(c) + 1):
            PA = PA @ (A - lam * eye)
            PB = PB @ (B - lam * eye)
            thr = tol * scale ** p
            ra = int(np.sum(np.linalg.svd(PA, compute_uv=False) > thr))
            rb = int(np.sum(np.linalg.svd(PB, compute_uv=False) > thr))
            if ra != rb:
                return False
    return True


def isomorphism_scale_check(L1, L2, c=1, exact=None):
    """True iff ``c L1`` and ``L2`` are similar (same real Jordan type).

    Rational inputs (and rational ``c``) are compared exactly through the
    ranks of ``p(M)^j`` for every irreducible factor ``p`` of the char poly;
    otherwise eigenvalue clusters and ranks of ``(M - λ)^j`` are compared at
    a tolerance.
    """
    A = np.asarray(L1, dtype=object)
    B = np.asarray(L2, dtype=object)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInputError("matrices must be square of the same size")
    if c == 0:
        raise InvalidInputError("the scale c must be nonzero")
    if exact is None:
        exact = _is_rational_input(A, B) and _is_rational_input(np.array([[c]], dtype=object))
    if exact:
        cf = Fraction(c)
        Ar = [[sp.Rational(*_pq(Fraction(x) * cf)) for x in r] for r in A]
        Br = [[sp.Rational(*_pq(Fraction(x))) for x in r] for r in B]
        return _exact_similar(Ar, Br)
    return _float_similar(float(c) * A.astype(float), B.astype(float))


def _pq(f):
    return f.numerator, f.denominator
