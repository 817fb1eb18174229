import numpy as np
import pytest
from hypothesis import given, settings

from almost_abelian import ConsistencyError
from almost_abelian.core import AlgebraSpec, decompose
from almost_abelian.flow import random_compatible_J
from almost_abelian.gray_hervella import (
    CLASSES,
    atomic_predicates,
    class_indices,
    class_name,
    classify,
    classify_oracle,
    collapse,
    cross_validate,
)

from .helpers import GH_KINDS, algebras, exact_algebras, seeds, structured_algebra


def _contained(a, b):
    return class_indices(a) <= class_indices(b)


@given(seeds)
@settings(max_examples=150)
def test_block_route_matches_tensor_route(seed):
    rng = np.random.default_rng(seed)
    spec = structured_algebra(int(rng.integers(2, 5)), rng)
    block, tensor = classify(spec), classify_oracle(spec)
    assert block.memberships == tensor.memberships
    assert block.genuine == tensor.genuine


@pytest.mark.parametrize("kind", GH_KINDS)
@pytest.mark.parametrize("n", [3, 4])
def test_every_generator_kind(kind, n):
    rng = np.random.default_rng(hash((kind, n)) % 2**32)
    for _ in range(10):
        cross_validate(structured_algebra(n, rng, kind))


@given(exact_algebras())
def test_exact_routes_agree(spec):
    assert classify(spec).memberships == classify_oracle(spec).memberships


@given(algebras())
def test_membership_is_monotone(spec):
    mem = classify(spec).memberships
    for a in mem:
        for b in mem:
            if mem[a] and _contained(a, b):
                assert mem[b], (a, b)


@given(algebras())
def test_genuine_class_is_smallest(spec):
    rep = classify(spec)
    g = class_indices(rep.genuine)
    assert rep.memberships[rep.genuine]
    for c, ok in rep.memberships.items():
        if ok:
            assert g <= collapse(class_indices(c), spec.n)


@given(seeds)
def test_collapse_identities_extensional(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    spec = structured_algebra(n, rng)
    full = classify_oracle(spec, full=True).memberships
    reported = classify(spec).memberships
    for c in CLASSES:
        target = class_name(collapse(class_indices(c), n))
        assert full[c] == full[target] == reported[target]


def test_collapse_table():
    assert collapse({1, 2}, 3) == {2}
    assert collapse({1, 2, 3}, 3) == {1, 2, 3}
    assert collapse({1, 4}, 3) == {4}
    assert collapse({1, 3}, 2) == set()
    assert collapse({2, 4}, 2) == {1, 2, 3, 4}
    assert class_name(set()) == "Kaehler" and class_name({1, 2, 3, 4}) == "W"
    assert class_indices("W2+W4") == {2, 4}


@pytest.mark.parametrize("L,name", [
    (np.zeros((5, 5)), "Kaehler"),
    (np.diag([0.0, 1, -1, 2, -2]), "W2"),
    (np.diag([2.0, 1, 1, 1, 1]), "W4"),
])
def test_reference_classes(L, name):
    assert cross_validate(AlgebraSpec(3, L)).genuine == name


def test_dim4_examples():
    assert classify(AlgebraSpec(2, np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 0]]))).genuine == "W"
    assert classify(AlgebraSpec(2, np.array([[0.0, 0, 0], [0, 0, 0], [0, 1, 0]]))).genuine == "W2"


def test_atomic_predicates_trace():
    preds = atomic_predicates(decompose(AlgebraSpec(3, np.diag([5.0, 1, 1, -1, -1]))))
    assert preds["tr"] and preds["v"] and preds["w"]


def test_oracle_with_rotated_J_is_conjugation_invariant():
    # J rotated inside a = span(e2..) preserves memberships of a diagonal L
    rng = np.random.default_rng(0)
    spec = AlgebraSpec(3, np.zeros((5, 5)))
    J = random_compatible_J(3, rng)
    assert classify_oracle(spec, J).genuine == "Kaehler"


def test_cross_validate_raises_on_disagreement(monkeypatch):
    import almost_abelian.gray_hervella as gh

    spec = AlgebraSpec(3, np.diag([0.0, 1, -1, 2, -2]))
    real = gh.classify_oracle

    def broken(obj, J=None):
        rep = real(obj, J)
        mem = dict(rep.memberships, W2=False)
        return gh._report(mem, 3)

    monkeypatch.setattr(gh, "classify_oracle", broken)
    with pytest.raises(ConsistencyError):
        gh.cross_validate(spec)
