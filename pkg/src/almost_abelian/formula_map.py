"""Consistency check between the code and ``docs/formula-map.md``.

The document holds a markdown table between two HTML comment markers; its
first column names an operation as ``module.function``.  :func:`verify_map`
requires every registered operation to appear exactly once, and every row to
name a registered operation that actually exists.
"""
from __future__ import annotations

import importlib
import re
from dataclasses import dataclass
from pathlib import Path

__all__ = ["FORMULA_OPERATIONS", "MapReport", "parse_map", "verify_map", "default_map_path"]

FORMULA_OPERATIONS = (
    "core.decompose",
    "core.standard_J",
    "core.is_unimodular",
    "core.bracket",
    "tensors.levi_civita",
    "tensors.koszul_oracle",
    "tensors.nijenhuis",
    "tensors.nijenhuis_closed",
    "tensors.d_omega",
    "tensors.delta_omega",
    "tensors.lee_form",
    "tensors.nabla_omega",
    "tensors.tensor_T",
    "tensors.tensor_U",
    "tensors.rough_laplacian",
    "tensors.harmonic_commutator",
    "harmonicity.is_harmonic_general",
    "harmonicity.is_harmonic_unimodular",
    "harmonicity.is_harmonic_integrable",
    "harmonicity.is_harmonic_dim4",
    "harmonicity.is_harmonic_oracle",
    "gray_hervella.atomic_predicates",
    "gray_hervella.classify",
    "gray_hervella.classify_oracle",
    "skt.is_skt",
    "skt.skt_harmonic",
    "skt.skt_block_basis",
    "lattice.exp_block",
    "lattice.block_integer_witness",
    "lattice.assemble_witness",
    "lattice.lattice_abelianization",
    "lattice.isomorphism_scale_check",
    "flow.dirichlet_energy",
    "flow.energy_gradient",
    "flow.run_flow",
    "catalog.skt_parameters",
    "catalog.run_entry",
)

BEGIN = "<!-- formula-map:begin -->"
END = "<!-- formula-map:end -->"
_ROW = re.compile(r"^\|\s*`([\w.]+)`\s*\|")


def default_map_path():
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "docs" / "formula-map.md"
        if candidate.exists():
            return candidate
    return here.parents[2] / "docs" / "formula-map.md"


@dataclass(frozen=True)
class MapReport:
    missing: tuple
    duplicates: tuple
    phantom: tuple

    @property
    def passed(self):
        return not (self.missing or self.duplicates or self.phantom)

    def to_dict(self):
        return {"passed": self.passed, "missing": list(self.missing),
                "duplicates": list(self.duplicates), "phantom": list(self.phantom)}


def parse_map(text):
    """Operation names from the table rows between the markers."""
    if BEGIN not in text or END not in text:
        raise ValueError("formula map markers not found")
    body = text.split(BEGIN, 1)[1].split(END, 1)[0]
    return [m.group(1) for line in body.splitlines() if (m := _ROW.match(line.strip()))]


def _exists(name):
    module, _, attr = name.rpartition(".")
    try:
        mod = importlib.import_module(f"almost_abelian.{module}")
    except ImportError:
        return False
    return callable(getattr(mod, attr, None))


def verify_map(text=None, operations=FORMULA_OPERATIONS):
    if text is None:
        text = default_map_path().read_text(encoding="utf-8")
    rows = parse_map(text)
    seen, dups = set(), []
    for r in rows:
        if r in seen and r not in dups:
            dups.append(r)
        seen.add(r)
    ops = set(operations)
    missing = tuple(op for op in operations if op not in seen)
    phantom = tuple(sorted(r for r in seen if r not in ops or not _exists(r)))
    return MapReport(missing, tuple(dups), phantom)
