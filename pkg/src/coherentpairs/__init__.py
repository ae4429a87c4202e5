"""Exact computations for discrete coherent pairs and discrete Sobolev orthogonal polynomials.

Everything is rational arithmetic on moment sequences; no floating point is
used anywhere.
"""
from .calculus import (NuParam, Poly, arg_map, dnu, dnu_antiderivative, eta_factor, lattice_binom,
                       q_binom, q_number, q_pochhammer)
from .coherence import (CoherenceData, DistributionalRelation, coherence_fit, coherence_residual,
                        converse_coherence_check, l_matrix, leading_coeff_check, r_polys,
                        relation_at_coherence_degrees, solve_distributional_relation,
                        solve_rational_modification)
from .errors import (CoherentPairsError, ConverseHypothesisError, DegenerateParameterError,
                     IncompleteDataError, InconsistencyError, InsufficientMomentsError, NonRegularError,
                     PositiveDefinitenessError)
from .families import Charlier, Discrete, Hahn, Kravchuk, charlier, discrete, family, finite_lattice, \
    geronimus, hahn, kravchuk, q_lattice
from .functional import (MomentFunctional, apply, dnu_functional, from_moments, hankel_regularity,
                         leibniz_expand, poly_mul)
from .semiclassical import PearsonPair, class_estimate, dual_pair, pearson_residual, pearson_solve, \
    sigma_tilde, structure_window_check
from .smop import DerivedSmop, Smop, derived_polys, derived_smop, expand_in_basis, smop_from_moments
from .sobolev import (CoherenceOrderWarning, LimitBasis, SobolevBasis, SobolevContext, coherent_coeffs,
                      coherent_recursion, limit_basis, sobolev_gram, sobolev_gram_closed_form, sobolev_inner,
                      sobolev_smop_gram, sobolev_to_coherence, verify_limit_link)

__version__ = "0.1.0"
