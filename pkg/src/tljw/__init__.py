"""Exact Temperley-Lieb diagram algebra over Q(d) and finite pointed fields:
Jones-Wenzl projectors and their (ell, p)-generalizations."""

from .ring import (GENERIC, INFINITY, DoesNotDescend, FieldElement,
                   IntegerPolynomial, PointedField, RationalFunction,
                   TorsionParams, detect_ell, quantum_binomial, quantum_int,
                   quantum_rf, ratfunc_arith, reduce_scalar)
from .diagram import (Diagram, cap_diagram, catalan, compose_diagrams,
                      cup_diagram, enumerate_diagrams, flip_diagram,
                      generator_u, identity_diagram, involute_diagram,
                      partial_trace_diagram, tensor_diagrams, through_degree,
                      turn_down, turn_up)
from .morphism import (Morphism, annihilated_by_generators, cell_dim,
                       coefficient_of, diagram_morphism, generator_morphism,
                       identity_morphism, left_ideal_rank, max_through_degree,
                       mor_compose, mor_flip, mor_involute, mor_linear,
                       mor_tensor, mor_turn_down, mor_turn_up, partial_trace,
                       reduce_morphism, zero_morphism)
from .jw import (construct_jw_two, descend_jw, first_trace_vanishes, jw,
                 jw_coeff_morrison, jw_exists_adam, jw_exists_binomial,
                 jw_idempotent_check, jw_trace_check, jw_two_trace_check,
                 seed_jw, trace_proper_check)
from .pljw import (LPDigits, PljwDecomposition, build_pljw, descend_pljw,
                   father, identity_coeff_trace, is_adam, lp_digits,
                   multiplicity_induced, p_super, supp, supp_split_check,
                   trace_case_check, trace_pljw, verify_descent_idempotent,
                   verify_pljw)

__version__ = "0.1.0"
