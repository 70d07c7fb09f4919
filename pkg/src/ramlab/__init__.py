"""ramlab: exact prime decomposition in number fields and lcm-law checks
for ramification indices in composita, with two cross-validating pathways
(ideal arithmetic and inertia groups in the normal closure)."""

from .abhyankar import (Instance, PrimeCheck, RamificationReport, RandomBounds,
                        check_instance, check_narkiewicz, composita_for,
                        cross_validate, random_instance)
from .cli import RunConfig, emit_report, main, run_command
from .errors import CapExceeded, PrimitiveSearchExhausted
from .exactpoly import (ModPPoly, Rat, RatPoly, discriminant, factor_mod_p,
                        factor_over_q, hensel_lift, is_prime, parse_poly,
                        poly_gcd, resultant, squarefree_radical,
                        sylvester_resultant)
from .galois import (Automorphism, InertiaChain, SplittingField,
                     StructureReport, SubgroupHandle, automorphism_group,
                     e_via_groups, fixed_subgroup, full_group, inertia_chain,
                     splitting_field, structure_report)
from .maximalorder import (DedekindResult, Order, PrimeIdeal,
                           dedekind_criterion, decompose_prime,
                           order_and_primes, p_maximal_order, restrict_prime,
                           valuation)
from .numberfield import (CompositumField, EmbeddingMap, NFElement, NfPoly,
                          NumberField, adjoin_root, compositum,
                          embed_subfield, factor_over_nf, field_for, min_poly,
                          nf_arith)

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "CapExceeded", "CompositumField", "DedekindResult",
    "EmbeddingMap", "InertiaChain", "Instance", "ModPPoly", "NFElement",
    "NfPoly", "NumberField", "Order", "PrimeCheck", "PrimeIdeal",
    "PrimitiveSearchExhausted", "RamificationReport", "RandomBounds", "Rat",
    "RatPoly", "RunConfig", "SplittingField", "StructureReport",
    "SubgroupHandle", "adjoin_root", "automorphism_group", "check_instance",
    "check_narkiewicz", "composita_for", "compositum", "cross_validate",
    "decompose_prime", "dedekind_criterion", "discriminant", "e_via_groups",
    "embed_subfield", "emit_report", "factor_mod_p", "factor_over_nf",
    "factor_over_q", "field_for", "fixed_subgroup", "full_group",
    "hensel_lift", "inertia_chain", "is_prime", "main", "min_poly",
    "nf_arith", "order_and_primes", "p_maximal_order", "parse_poly",
    "poly_gcd", "random_instance", "restrict_prime", "resultant",
    "run_command", "splitting_field", "squarefree_radical",
    "structure_report", "sylvester_resultant", "valuation",
]
