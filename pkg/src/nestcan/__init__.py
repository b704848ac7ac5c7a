"""Nested canalizing Boolean functions: layered normal form, counting,
sensitivity formulas and Derrida curves of random NCF networks."""

__version__ = "0.1.0"

from .dyadic import DyadicRational
from .errors import (
    BadLayer, BadVariable, DimensionMismatch, InvalidForm, InvalidLength, InvalidProfile,
    InvalidRequest, NCFError, NotNCF, NotReduced, OutOfScope, TooLarge,
)
from .truthtable import (
    AnfPolynomial, TruthTable, activity_bruteforce, anf, average_sensitivity_bruteforce,
    canalizing_pairs, essential_variables, evaluate, hamming_weight, make_truth_table,
    parse_truth_table, restrict,
)
from .ncf import (
    LayeredForm, LayerProfile, NcfPresentation, construct_ncf, decompose, is_ncf,
    is_ncf_oracle, layers_from_outputs, presentation,
)
from .metrics import (
    SensitivityReport, activity_formula, activity_numerators, lemma_profiles, max_sensitivity_scan,
    sensitivity_bounds, sensitivity_formula, weight_formula,
)
from .enumeration import (
    NcfCount, bruteforce_census, count_ncf, count_ncf_recursive, enumerate_all,
)
from .randgen import sample_ncf, sample_network, sample_profile, stream
from .netsim import (
    BooleanNetwork, DerridaCurve, derrida_curve, ensemble_mean_sensitivity, step,
)
