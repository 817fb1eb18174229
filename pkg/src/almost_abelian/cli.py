"""Command line interface: ``almost-abelian <subcommand> ...``.

Exit codes: 0 success, 1 invalid input, 2 internal inconsistency (or a
failed golden check), 3 non-convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import catalog as _catalog
from ._validation import DEFAULT_TOL, ScalarContext
from .core import algebra_from_dict, decompose, is_unimodular
from .exceptions import (
    AlmostAbelianError,
    ConsistencyError,
    NonConvergenceError,
)
from .flow import dirichlet_energy, random_compatible_J, run_flow
from .gray_hervella import cross_validate
from .harmonicity import harmonicity
from .lattice import BlockSpec, assemble_witness, lattice_abelianization
from .skt import is_skt, skt_block_basis, skt_harmonic
from .tensors import tensor_report

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY, EXIT_NONCONVERGENCE = 0, 1, 2, 3


# -- deterministic JSON ---------------------------------------------------------------

def _plain(obj):
    """Recursively convert to JSON-ready values with 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        x = float(f"{x:.12g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    return str(obj)


def dumps(obj):
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False)


# -- helpers --------------------------------------------------------------------------

def _context(args, data=None):
    tol = args.tol
    if tol is None:
        env = os.environ.get("AA_DEFAULT_TOL")
        tol = float(env) if env else (data or {}).get("tolerance", DEFAULT_TOL)
    if args.exact or (data or {}).get("mode") == "exact":
        return ScalarContext("exact", 0.0)
    return ScalarContext("float", float(tol))


def _read_json(path):
    from .exceptions import InvalidInputError

    if path is None:
        raise InvalidInputError("--input is required")
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_algebra(args):
    from .exceptions import InvalidInputError

    data = _read_json(args.input)
    if isinstance(data, dict) and set(data) <= {"n", "mode", "tolerance"} and "n" in data:
        n = data["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
        data = {**data, "L": [[0] * (2 * n - 1) for _ in range(2 * n - 1)]}
    spec = algebra_from_dict(data, _context(args, data if isinstance(data, dict) else None))
    return data, decompose(spec)


def _decomposition_dict(dec):
    return {
        "mu": dec.mu, "v0": dec.v0, "w0": dec.w0, "D": dec.D,
        "gamma": dec.gamma, "rho": dec.rho, "Ds": dec.Ds, "Da": dec.Da,
        "trace_S": dec.trace_S, "trace_D": dec.trace_D,
    }


def _mode(dec):
    ctx = dec.context
    return {"mode": ctx.mode, "tolerance": ctx.tolerance}


def _skt_dict(dec):
    verdict = is_skt(dec)
    out = verdict.to_dict()
    if verdict.skt:
        out = skt_harmonic(dec).to_dict()
        if not dec.context.exact:
            basis = skt_block_basis(dec)
            out["block_basis"] = {"Q": basis.Q, "blocks": basis.blocks,
                                  "reconstruction_error": basis.reconstruction_error}
    return out


# -- subcommands ----------------------------------------------------------------------

def cmd_analyze(args):
    data, dec = _load_algebra(args)
    report = {
        "input": data,
        "unimodular": is_unimodular(dec.spec),
        "decomposition": _decomposition_dict(dec),
        "tensors": tensor_report(dec, dense=args.dense),
        "harmonic": harmonicity(dec),
        "classes": cross_validate(dec),
        "skt": _skt_dict(dec),
        "energy": dirichlet_energy(dec),
        **_mode(dec),
    }
    h = report["harmonic"]["oracle"].harmonic
    text = [f"unimodular: {report['unimodular']}", f"harmonic: {h}",
            f"class: {report['classes'].genuine}", f"skt: {report['skt']['skt']}",
            f"energy: {report['energy']:.12g}"]
    return EXIT_OK, report, text


def cmd_classify(args):
    _, dec = _load_algebra(args)
    rep = cross_validate(dec)
    return EXIT_OK, {"classes": rep, **_mode(dec)}, [f"class: {rep.genuine}"]


def cmd_harmonic(args):
    _, dec = _load_algebra(args)
    verdicts = harmonicity(dec)
    text = [f"{k}: {v.harmonic}" for k, v in sorted(verdicts.items())]
    return EXIT_OK, {"harmonic": verdicts, **_mode(dec)}, text


def cmd_skt(args):
    _, dec = _load_algebra(args)
    out = _skt_dict(dec)
    return EXIT_OK, {"skt": out, **_mode(dec)}, [f"skt: {out['skt']}",
                                                 f"harmonic case: {out['harmonic_case']}"]


def cmd_lattice(args):
    from .exceptions import InvalidInputError

    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise InvalidInputError("lattice input must be a JSON object")
    if "blocks" in data:
        w = assemble_witness([BlockSpec.from_dict(b) for b in data["blocks"]], data.get("t0", "1"))
        out = {"witness": w}
        if w.det in (1, -1):
            out["abelianization"] = lattice_abelianization(w.E)
        code = EXIT_OK
    elif "E" in data:
        out = {"abelianization": lattice_abelianization(data["E"])}
        code = EXIT_OK
    else:
        raise InvalidInputError("lattice input needs 'blocks' or 'E'")
    text = [f"abelianization: {out['abelianization']}"] if "abelianization" in out else []
    if "witness" in out:
        text.insert(0, f"lattice: {out['witness'].is_lattice}")
    return code, out, text


def cmd_flow(args):
    _, dec = _load_algebra(args)
    rng = np.random.default_rng(args.seed)
    results, code = [], EXIT_OK
    trace = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        for k in range(args.starts):
            J0 = random_compatible_J(dec.n, rng)

            def record(state, k=k):
                if trace is not None:
                    trace.write(json.dumps(_plain({"start": k, **state.to_dict()}), sort_keys=True) + "\n")

            try:
                res = run_flow(dec, J0, tol_grad=args.tol_grad, max_steps=args.max_steps, callback=record)
                results.append({"start": k, **res.to_dict()})
            except NonConvergenceError as exc:
                code = EXIT_NONCONVERGENCE
                results.append({"start": k, "converged": False, "error": str(exc), "summary": exc.summary})
    finally:
        if trace is not None:
            trace.close()
    text = [f"start {r['start']}: converged={r['converged']} "
            f"energy={r.get('energy', r['summary'].get('energy', float('nan'))):.12g}" for r in results]
    return code, {"runs": results, "seed": args.seed, **_mode(dec)}, text


def cmd_catalog(args):
    if args.action == "list":
        names = _catalog.list_entries()
        return EXIT_OK, {"entries": names}, names
    target = args.name or "all"
    reports = _catalog.run_all() if target == "all" else [_catalog.run_entry(target)]
    ok = all(r.passed for r in reports)
    out = {"entries": reports, "passed": ok,
           "summary": {"total": len(reports), "passed": sum(r.passed for r in reports)}}
    text = [f"{'PASS' if r.passed else 'FAIL'} {r.name}" for r in reports]
    text.append(f"{out['summary']['passed']}/{len(reports)} entries pass")
    return (EXIT_OK if ok else EXIT_CONSISTENCY), out, text


# -- parser ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file ('-' for stdin)")
    common.add_argument("--json", action="store_true", help="emit JSON on stdout")
    common.add_argument("--tol", type=float, default=None, help="float tolerance (default $AA_DEFAULT_TOL or 1e-9)")
    common.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dense", action="store_true", help="include dense tensors in the report")

    parser = argparse.ArgumentParser(prog="almost-abelian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("analyze", cmd_analyze), ("classify", cmd_classify), ("harmonic", cmd_harmonic),
                     ("skt", cmd_skt), ("lattice", cmd_lattice)):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(func=fn)
    p = sub.add_parser("flow", parents=[common])
    p.add_argument("--starts", type=int, default=1)
    p.add_argument("--tol-grad", type=float, default=1e-8)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--trace", help="write per-step JSONL records here")
    p.set_defaults(func=cmd_flow)
    p = sub.add_parser("catalog", parents=[common])
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("name", nargs="?", help="entry name or 'all'")
    p.set_defaults(func=cmd_catalog)
    return parser


def _error_payload(exc):
    out = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("residuals", "details", "summary"):
        if getattr(exc, attr, None):
            out[attr] = getattr(exc, attr)
    return out


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, payload, text = args.func(args)
    except ConsistencyError as exc:
        code, payload, text = EXIT_CONSISTENCY, _error_payload(exc), None
    except NonConvergenceError as exc:
        code, payload, text = EXIT_NONCONVERGENCE, _error_payload(exc), None
    except (AlmostAbelianError, ValueError, LookupError) as exc:
        code, payload, text = EXIT_INPUT, _error_payload(exc), None
    if text is None:
        print(f"error: {payload['message']}", file=sys.stderr)
    if args.json:
        sys.stdout.write(dumps(payload) + "\n")
    elif text is not None:
        sys.stdout.write("\n".join(text) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
