"""Certified divisibility bounds for torsion orders of complete intersections."""

from .arith import (
    factorial,
    lcm_factorial,
    lcm_factorial_product,
    p_adic_valuation,
    product_lcm_oracle,
)
from .bounds import (
    DivisibilityConstraint,
    MultiDegreeProfile,
    PrimePowerWitness,
    Scenario,
    TorsionCertificate,
    certificate,
    generic_lower_divisor,
    generic_with_point_lower_divisor,
    index_generic,
    normalize,
    prime_power_witness,
    roitman_cone_profile,
    roitman_upper_bound,
    solve_constraints,
    very_general_lower_divisor,
)
from .resolution import blowup_count, resolution_plan, verify_plan
from .schubert import SchubertClass, chern_sym3, embed, fano_lines_degree, integrate, multiply

__version__ = "0.1.0"
