"""Harmonic almost complex structures on almost abelian Lie algebras."""
from .core import (
    AlgebraSpec,
    ComplexStructure,
    Decomposition,
    adapt_basis,
    algebra_from_dict,
    bracket,
    change_basis,
    decompose,
    is_unimodular,
    standard_J,
)
from .exceptions import (
    AlmostAbelianError,
    ConsistencyError,
    DegeneracyError,
    InvalidInputError,
    NonConvergenceError,
    NoWitnessError,
    PreconditionError,
    StagnationError,
)
from .flow import dirichlet_energy, energy_gradient, flow_step, random_compatible_J, run_flow
from .gray_hervella import classify, classify_oracle, cross_validate
from .harmonicity import (
    harmonicity,
    is_harmonic_dim4,
    is_harmonic_general,
    is_harmonic_integrable,
    is_harmonic_oracle,
    is_harmonic_unimodular,
)
from .lattice import assemble_witness, isomorphism_scale_check, lattice_abelianization, smith_normal_form
from .skt import is_skt, skt_block_basis, skt_harmonic
from ._validation import EXACT, FLOAT, ScalarContext

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
