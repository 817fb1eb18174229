"""Gray-Hervella classification of the standard almost Hermitian structure.

A class is a subset ``I`` of ``{1, 2, 3, 4}`` naming ``W_I = ⊕_{i in I} W_i``;
the empty set is the Kähler class and the full set is ``W``.  Since
``W_I ∩ W_K = W_{I ∩ K}``, the minimal class containing a structure is the
intersection of all classes that contain it.

Two routes are provided.  :func:`classify` uses block predicates on
``(mu, v0, w0, D)``; :func:`classify_oracle` evaluates the tensor definitions
on every basis triple.  In dimension at least 6 the class ``W1`` is trivial
on almost abelian algebras, so every class containing ``W1`` except
``W1+W2+W3`` and ``W`` coincides with the class obtained by dropping it.
In dimension 4 only ``W2`` and ``W4`` occur.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import standard_Jprime
from .exceptions import ConsistencyError
from .tensors import (
    _J,
    _dec,
    _spec,
    _standard,
    d_omega_oracle,
    delta_omega_oracle,
    lee_form_oracle,
    nabla_omega_oracle,
    nijenhuis_tensor,
    tensor_T_oracle,
    tensor_U_oracle,
    theta_wedge_omega,
)

__all__ = [
    "CLASSES",
    "CLASSES_DIM4",
    "ClassReport",
    "class_name",
    "class_indices",
    "collapse",
    "atomic_predicates",
    "classify",
    "classify_oracle",
    "cross_validate",
]


def class_name(indices):
    indices = tuple(sorted(indices))
    if not indices:
        return "Kaehler"
    if indices == (1, 2, 3, 4):
        return "W"
    return "+".join(f"W{i}" for i in indices)


def class_indices(name):
    if name == "Kaehler":
        return frozenset()
    if name == "W":
        return frozenset({1, 2, 3, 4})
    try:
        return frozenset(int(part[1:]) for part in name.split("+") if part.startswith("W"))
    except ValueError as exc:
        raise ValueError(f"unknown class {name!r}") from exc


_ALL_SETS = [frozenset(c) for k in range(5) for c in combinations((1, 2, 3, 4), k)]
CLASSES = tuple(class_name(s) for s in _ALL_SETS)
CLASSES_DIM4 = ("Kaehler", "W2", "W4", "W")

_COLLAPSE_KEEP = {frozenset({1, 2, 3}), frozenset({1, 2, 3, 4})}


def collapse(indices, n=3):
    """Class that ``W_I`` equals on almost abelian algebras of half-dimension ``n``."""
    s = frozenset(indices)
    if n == 2:
        t = s - {1, 3}
        return frozenset({1, 2, 3, 4}) if t == {2, 4} else t
    if 1 in s and s not in _COLLAPSE_KEEP:
        return s - {1}
    return s


def _collapse_notes(n):
    if n == 2:
        return ["W1 = W3 = {0} in dimension 4", "W2+W4 = W"]
    notes = []
    for s in _ALL_SETS:
        t = collapse(s, n)
        if t != s:
            notes.append(f"{class_name(s)} = {class_name(t)}")
    return notes


@dataclass(frozen=True)
class ClassReport:
    memberships: dict
    genuine: str
    collapses: list = field(default_factory=list)
    predicates: dict = field(default_factory=dict)

    def member(self, name):
        return self.memberships[name]

    def to_dict(self):
        return {
            "memberships": dict(self.memberships),
            "genuine": self.genuine,
            "collapses": list(self.collapses),
            "predicates": dict(self.predicates),
        }


def _genuine(memberships, n):
    current = frozenset({1, 2, 3, 4})
    for name, ok in memberships.items():
        if ok:
            current = current & class_indices(name)
    return class_name(collapse(current, n))


def _report(memberships, n, predicates=None):
    return ClassReport(
        memberships=dict(memberships),
        genuine=_genuine(memberships, n),
        collapses=_collapse_notes(n),
        predicates=dict(predicates or {}),
    )


# -- block predicates -------------------------------------------------------------

def atomic_predicates(dec, J=None):
    """Named block conditions from which every class row is assembled."""
    dec = _dec(dec)
    _standard(dec, J)
    ctx = dec.context
    Jp = standard_Jprime(dec.n, ctx)
    Ds, Da = dec.Ds, dec.Da
    c = dec.trace_D * ctx.ratio(1, 2 * (dec.n - 1))
    eye = ctx.eye(Ds.shape[0])
    spread = Ds @ Jp + Jp @ Ds
    checks = {
        "v": dec.v0,
        "w": dec.w0,
        "sym0": Ds,
        "au": Da @ Jp - Jp @ Da,
        "su": Ds @ Jp - Jp @ Ds,
        "sp": spread,
        "tr": np.array([dec.trace_D]),
        "homothety": Ds - c * eye,
        "conf_sp": spread - 2 * c * Jp,
    }
    return {k: bool(ctx.is_zero(v, dec.scale)) for k, v in checks.items()}


_ROWS = {
    frozenset(): ("v", "w", "sym0", "au"),
    frozenset({2}): ("v", "au", "sp"),
    frozenset({3}): ("tr", "v", "w", "au", "su"),
    frozenset({4}): ("v", "w", "homothety", "au"),
    frozenset({2, 3}): ("tr", "v", "au"),
    frozenset({1, 2, 3}): ("tr", "v"),
    frozenset({2, 4}): ("v", "au", "conf_sp"),
    frozenset({3, 4}): ("w", "au", "su"),
    frozenset({2, 3, 4}): ("au",),
    frozenset({1, 2, 3, 4}): (),
}


def _dim4_predicates(dec):
    ctx = dec.context
    (mu, r, s), (p, a, b), (q, c, d) = (tuple(row) for row in dec.L)
    z = lambda *xs: bool(ctx.is_zero(np.array(xs), dec.scale))
    return {
        "Kaehler": z(p, q, r, s, a, d, b + c),
        "W2": z(p, q, a + d),
        "W4": z(r, s, a - d, b + c),
        "W": True,
    }


def classify(dec, J=None):
    """Class memberships from block predicates (standard J)."""
    dec = _dec(dec)
    _standard(dec, J)
    if dec.n == 2:
        mem = _dim4_predicates(dec)
        return _report(mem, 2, {})
    preds = atomic_predicates(dec)
    mem = {}
    for s in _ALL_SETS:
        row = _ROWS[collapse(s, dec.n)]
        mem[class_name(s)] = all(preds[p] for p in row)
    return _report(mem, dec.n, preds)


# -- tensor definitions -----------------------------------------------------------

def _zero(ctx, scale):
    return lambda T: bool(ctx.is_zero(T, scale))


def classify_oracle(obj, J=None, full=False):
    """Class memberships from the defining tensors, for any compatible ``J``.

    Quadratic conditions are polarized: ``T-(X,X,Y) = 0`` is tested as
    ``T-(X,Y,Z) + T-(Y,X,Z) = 0`` and ``<N(X,Y),X> = 0`` as
    ``<N(X,Y),Z> + <N(Z,Y),X> = 0``.  In dimension 4 only the four
    surviving classes are reported unless ``full`` asks for all sixteen
    definitions.
    """
    spec = _spec(obj)
    dec = _dec(obj)
    ctx = spec.context
    J = _J(spec, J)
    n = spec.n
    zero = _zero(ctx, dec.scale)
    W = nabla_omega_oracle(spec, J)
    dW = d_omega_oracle(spec, J)
    N = nijenhuis_tensor(spec, J)
    if n == 2 and not full:
        mem = {
            "Kaehler": zero(W),
            "W2": zero(dW),
            "W4": zero(N),
            "W": True,
        }
        return _report(mem, 2)
    dw = delta_omega_oracle(spec, J)
    theta = lee_form_oracle(spec, J)
    Tp = tensor_T_oracle(spec, J, "+")
    Tm = tensor_T_oracle(spec, J, "-")
    U = tensor_U_oracle(spec, J)
    k = ctx.ratio(1, 2 * (n - 1))
    cyc_Tm = Tm + np.transpose(Tm, (1, 2, 0)) + np.transpose(Tm, (2, 0, 1))
    sym = lambda T: T + np.transpose(T, (1, 0, 2))
    defs = {
        frozenset(): zero(W),
        frozenset({1}): zero(3 * W - dW),
        frozenset({2}): zero(dW),
        frozenset({3}): zero(dw) and zero(N),
        frozenset({4}): zero(W + k * U),
        frozenset({1, 2}): zero(Tp),
        frozenset({3, 4}): zero(N),
        frozenset({1, 3}): zero(sym(Tm)) and zero(dw),
        frozenset({2, 4}): zero(dW - theta_wedge_omega(theta, J)),
        frozenset({1, 4}): zero(sym(W + k * U)),
        frozenset({2, 3}): zero(cyc_Tm) and zero(dw),
        frozenset({1, 2, 3}): zero(dw),
        frozenset({1, 2, 4}): zero(Tp + 2 * k * U),
        frozenset({1, 3, 4}): zero(N + np.transpose(N, (2, 1, 0))),
        frozenset({2, 3, 4}): zero(cyc_Tm),
        frozenset({1, 2, 3, 4}): True,
    }
    mem = {class_name(s): defs[s] for s in _ALL_SETS}
    return _report(mem, n)


def cross_validate(dec, J=None):
    """Run both routes and raise :class:`ConsistencyError` on any disagreement."""
    dec = _dec(dec)
    block = classify(dec, J)
    tensor = classify_oracle(dec, J)
    diff = sorted(k for k in block.memberships if block.memberships[k] != tensor.memberships[k])
    if diff:
        raise ConsistencyError(
            "block predicates and tensor definitions disagree",
            {"classes": diff, "block": block.genuine, "tensor": tensor.genuine},
        )
    return block
