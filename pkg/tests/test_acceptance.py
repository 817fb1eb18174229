"""Acceptance gate: criteria 1-9, each at its stated tolerance.

Every criterion prints one ``ACCEPTANCE <k> PASS|FAIL`` line.  Run with
``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""
import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.linalg import expm

from almost_abelian._validation import ScalarContext
from almost_abelian.catalog import (
    ENTRY_NAMES,
    SKT_CUBICS,
    get_entry,
    run_all,
)
from almost_abelian.core import AlgebraSpec, decompose
from almost_abelian.flow import energy_difference, energy_gradient, random_compatible_J, run_flow
from almost_abelian.gray_hervella import CLASSES, class_indices, class_name, classify, classify_oracle, collapse
from almost_abelian.harmonicity import condition_ii, is_harmonic_general, is_harmonic_oracle
from almost_abelian.lattice import assemble_witness, lattice_abelianization
from almost_abelian.skt import is_skt, skt_harmonic
from almost_abelian.tensors import connection_residuals

try:
    from .helpers import random_L, skt_algebra, structured_algebra
except ImportError:  # run as a script
    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from tests.helpers import random_L, skt_algebra, structured_algebra

RESULTS = {}
KT = np.array([[0.0, 0, 0], [0, 0, 0], [0, 1, 0]])
ROT = np.array([[0.0, 0, 0], [0, 0, -1], [0, 1, 0]])


def report(k, ok, detail):
    line = f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_1_block_conditions_match_oracle():
    rng = np.random.default_rng(1)
    ctx = ScalarContext("float", 1e-8)
    t0 = time.perf_counter()
    total, bad, harmonic = 0, [], 0
    for n in (2, 3, 4):
        for i in range(600):
            spec = AlgebraSpec(n, random_L(n, rng, unimodular=i >= 500), ctx)
            dec = decompose(spec)
            g, o = is_harmonic_general(dec), is_harmonic_oracle(dec)
            total += 1
            harmonic += o.harmonic
            if g.harmonic != o.harmonic:
                bad.append((n, i))
    # uniform entries are almost never harmonic; the class subalgebras often are
    extra, extra_harmonic = 0, 0
    for n in (2, 3, 4):
        for _ in range(300):
            dec = decompose(AlgebraSpec(n, structured_algebra(n, rng).L, ctx))
            g, o = is_harmonic_general(dec), is_harmonic_oracle(dec)
            extra += 1
            extra_harmonic += o.harmonic
            if g.harmonic != o.harmonic:
                bad.append(("structured", n))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 30,
           f"{total} random algebras ({harmonic} harmonic) + {extra} structured "
           f"({extra_harmonic} harmonic), {len(bad)} disagreements, {dt:.1f}s")


def test_2_dim4_condition_ii():
    rng = np.random.default_rng(2)
    worst = max(np.linalg.norm(condition_ii(decompose(AlgebraSpec(2, random_L(2, rng)))))
                for _ in range(1000))
    report(2, worst < 1e-12, f"max residual (ii) over 1000 inputs = {worst:.2e}")


def test_3_golden_catalog():
    t0 = time.perf_counter()
    reports = run_all()
    dt = time.perf_counter() - t0
    failed = [r.name for r in reports if not r.passed]
    report(3, len(reports) == 15 and not failed and dt < 10,
           f"{len(reports) - len(failed)}/{len(reports)} entries pass in {dt:.2f}s {failed or ''}")


def test_4_gray_hervella_cross_validation():
    rng = np.random.default_rng(4)
    bad, collapse_bad, seen = 0, 0, set()
    for n in (2, 3, 4):
        for i in range(300):
            # half uniform entries, half drawn from the class subalgebras
            spec = AlgebraSpec(n, random_L(n, rng)) if i % 2 else structured_algebra(n, rng)
            block, tensor = classify(spec), classify_oracle(spec)
            bad += block.memberships != tensor.memberships or block.genuine != tensor.genuine
            seen.add((n, block.genuine))
            full = classify_oracle(spec, full=True).memberships
            for c in CLASSES:
                t = class_name(collapse(class_indices(c), n))
                collapse_bad += not (full[c] == full[t] == block.memberships[t])
    report(4, bad == 0 and collapse_bad == 0,
           f"900 inputs, {bad} route disagreements, {collapse_bad} collapse violations, "
           f"{len(seen)} distinct (n, class) pairs")


def test_5_skt():
    family_ok = True
    for cubic in SKT_CUBICS:
        for n in (2, 3, 4):
            v = skt_harmonic(get_entry("skt-family", n=n, b="1/2", cubic=cubic).spec())
            family_ok &= v.skt and v.harmonic_case == "case-i"
    rng = np.random.default_rng(5)
    bad, cases = 0, {}
    for i in range(200):
        dec = decompose(skt_algebra(rng, unimodular=i % 4 == 0))
        assert is_skt(dec).skt
        v = skt_harmonic(dec)
        cases[v.harmonic_case] = cases.get(v.harmonic_case, 0) + 1
        bad += v.harmonic != is_harmonic_oracle(dec).harmonic
    report(5, family_ok and bad == 0,
           f"family case-i for {len(SKT_CUBICS)} cubics x n=2..4: {family_ok}; "
           f"200 constructions, {bad} disagreements, cases {dict(sorted(cases.items()))}")


def test_6_lattice_invariants():
    bad = []
    for m in range(3, 51):
        g = lattice_abelianization([[1, 0, 0], [0, 0, -1], [0, 1, m]])
        want = (2, (m - 2,) if m > 3 else ())
        if (g.rank, g.torsion) != want:
            bad.append(m)
    witnesses = 0
    for name in ENTRY_NAMES:
        lat = get_entry(name).expected.get("lattice")
        if lat is None:
            continue
        w = assemble_witness(lat["blocks"], lat["t0"])
        witnesses += 1
        if not (w.det == 1 and w.charpoly_agrees):
            bad.append(name)
    report(6, not bad, f"C_m for m=3..50 and {witnesses} catalog witnesses, failures {bad or 'none'}")


def _fd(dec, J, B, s=1e-5):
    Jp = expm(s * B) @ J @ expm(-s * B)
    Jm = expm(-s * B) @ J @ expm(s * B)
    return energy_difference(dec, Jm, Jp) / (2 * s)


def test_7_energy_flow():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 4))
        dec = decompose(AlgebraSpec(n, random_L(n, rng, unimodular=True)))
        J = random_compatible_J(n, rng)
        B = rng.normal(size=J.shape)
        B = B - B.T
        K = energy_gradient(dec, J)
        exact = float(np.sum(K * (B @ J - J @ B)))
        worst = max(worst, abs(exact - _fd(dec, J, B)) / max(1.0, abs(exact)))
    kt = decompose(AlgebraSpec(2, KT))
    kt_ok = True
    for _ in range(20):
        res = run_flow(kt, random_compatible_J(2, rng), tol_grad=1e-6, max_steps=100_000)
        kt_ok &= res.state.grad_norm <= 1e-6 and is_harmonic_oracle(kt, res.state.J).harmonic
    kahler = run_flow(decompose(AlgebraSpec(2, ROT)), random_compatible_J(2, rng), tol_grad=1e-9)
    dt = time.perf_counter() - t0
    report(7, worst <= 1e-5 and kt_ok and kahler.state.energy <= 1e-10 and dt < 120,
           f"fd rel err {worst:.1e}; KT starts certified: {kt_ok}; "
           f"Kahler limit energy {kahler.state.energy:.1e} in {kahler.state.step} steps; {dt:.1f}s")


def test_8_connection():
    rng = np.random.default_rng(8)
    worst = {"metric": 0.0, "torsion": 0.0, "koszul": 0.0}
    for i in range(1000):
        n = 2 + i % 3
        r = connection_residuals(AlgebraSpec(n, random_L(n, rng)))
        worst = {k: max(worst[k], r[k]) for k in worst}
    ok = worst["metric"] < 1e-12 and worst["torsion"] < 1e-12 and worst["koszul"] < 1e-10
    report(8, ok, "max residuals " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_9_determinism():
    cmd = [sys.executable, "-m", "almost_abelian.cli", "catalog", "run", "all", "--json"]
    outs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    same = outs[0].stdout == outs[1].stdout and outs[0].returncode == outs[1].returncode == 0
    if same:
        json.loads(outs[0].stdout)
    report(9, same, f"{len(outs[0].stdout)} bytes, identical: {same}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
