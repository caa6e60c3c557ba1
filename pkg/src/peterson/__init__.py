"""Equivariant Schubert calculus on Peterson varieties, in exact arithmetic."""
from .closedform import chevalley, emit_tables, klyachko_integral, monk, monk_p_basis, multiplicity
from .cohring import CohClass, expand_in_omega, multiply, omega_class, p_class, q_class
from .errors import DomainError, NotFiniteTypeError, OutsideModelError, ParseError, PetersonError
from .homologymod import HomClass, cap, cap_divisor, integrate, pair_omega
from .localization import billey_restrict, p_restrict, restrict_to_S
from .rootdata import build_diagram, diagram_from_cartan, parse_subset, subset
from .tpoly import TPoly
from .weylcox import WeylWord, coxeter_elements, longest_element, parse_word, reduced_word_count

__version__ = "0.1.0"
