"""Fock states on a beam splitter: output Schmidt spectra and majorization.

The package computes the two-mode output spectra of photon-number states
passing through a beam splitter and analyzes the majorization partial order
over them: the photon-number chain with its doubly stochastic witness, the
angle-parametric ordering regions with their crossovers and accumulation
derivatives, entropy monotones, an explicit deterministic LOCC conversion
protocol, and entanglement catalysis for incomparable spectra.
"""

__version__ = "0.1.0"

from .beamsplitter import (
    photon_chain_check,
    spectrum,
    spectrum_recurrence,
    transmittance,
)
from .birkhoff import (
    BirkhoffDecomposition,
    DoublyStochasticMatrix,
    apply,
    birkhoff_decompose,
    bs_witness_matrix,
)
from .catalysis import (
    CatalysisReport,
    CatalystFamily,
    CatalystSpec,
    TruncationError,
    catalyst_spectrum,
    check_catalysis,
    necessary_conditions,
    search_catalyst,
    search_catalyst_all,
    tmsv_dimension,
)
from .entropy import additivity_check, entropy_curve, min_entropy, renyi, shannon
from .locc import (
    BobCorrection,
    KrausPair,
    LoccOutcomeReport,
    bob_permutation,
    build_kraus,
    run_protocol,
    verify_nielsen,
)
from .majorization import MajorizationVerdict, Relation, compare, random_majorized
from .regions import (
    AccumulationDerivatives,
    AmbiguousOrderingError,
    InfinitesimalStatus,
    InfinitesimalVerdict,
    RegionPartition,
    accumulation_derivatives,
    component_derivatives,
    find_crossovers,
    infinitesimal_verdict,
    positivity_bound,
    region1_closed_form,
)
from .vectors import NORM_TOL, TOL, OscVector, ProbVector, pad_to, sort_desc, tensor

__all__ = [
    "__version__",
    "TOL",
    "NORM_TOL",
    "ProbVector",
    "OscVector",
    "sort_desc",
    "pad_to",
    "tensor",
    "Relation",
    "MajorizationVerdict",
    "compare",
    "random_majorized",
    "DoublyStochasticMatrix",
    "BirkhoffDecomposition",
    "bs_witness_matrix",
    "apply",
    "birkhoff_decompose",
    "spectrum",
    "spectrum_recurrence",
    "photon_chain_check",
    "transmittance",
    "RegionPartition",
    "AccumulationDerivatives",
    "AmbiguousOrderingError",
    "InfinitesimalStatus",
    "InfinitesimalVerdict",
    "find_crossovers",
    "component_derivatives",
    "accumulation_derivatives",
    "region1_closed_form",
    "infinitesimal_verdict",
    "positivity_bound",
    "renyi",
    "shannon",
    "min_entropy",
    "entropy_curve",
    "additivity_check",
    "KrausPair",
    "BobCorrection",
    "LoccOutcomeReport",
    "build_kraus",
    "bob_permutation",
    "run_protocol",
    "verify_nielsen",
    "CatalystFamily",
    "CatalystSpec",
    "CatalysisReport",
    "TruncationError",
    "tmsv_dimension",
    "catalyst_spectrum",
    "check_catalysis",
    "necessary_conditions",
    "search_catalyst",
    "search_catalyst_all",
]
