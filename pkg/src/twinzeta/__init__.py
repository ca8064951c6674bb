"""twinzeta: prime-pair Dirichlet series, constraint series over twin-family
medians, and zeta-zero explicit sums, evaluated and cross-checked at desk
scale."""

from .arith import (GolombReport, TwinConfig, first_a, golomb_sum_fast,
                    golomb_sum_oracle, mangoldt, mobius, twin_coefficient,
                    twin_config, verify_golomb_range)
from .asymptotic import a_coeff, a_series, decomposition_report, twin_series
from .constraint import (ResidueCheck, q_big, q_residue_check, q_sub,
                         q_sub_deriv, subtraction_term)
from .exceptions import (CapacityError, ConditioningError, DomainError,
                         SearchError, TwinZetaError, ZeroTableError)
from .explicit import (CompareReport, QuadratureSpec, ZeroSumTerm,
                       compare_report, contour_zero_expansion, i1_quadrature,
                       product_formula_avg, zero_sum_scaled)
from .sieve import FactorSieve, build_sieve
from .special import (SeriesValue, digamma, log_gamma, trigamma, zeta_derivs,
                      zeta_em, zeta_logderiv, zeta_logderiv_via_zeros)
from .zeros import (ZetaZeros, bundled_zeros, find_critical_zeros, hardy_z,
                    load_zeros, rvm_estimate, sum_rho_reciprocal)
from .zseries import (functional_residual, residue_z_at_1, residue_z_at_rho,
                      residue_z_at_rho_corrected, z_direct, z_formula, z_poles)

__version__ = "0.1.0"
