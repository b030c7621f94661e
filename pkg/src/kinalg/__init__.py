"""Kinematical Lie algebras with exact parameter-dependent structure constants."""

from .algebra import (FAMILIES, LABELS, LieAlgebra, bracket, build_algebra, convert_algebra, from_json,
                      jacobi_residual, to_json)
from .coeff import DYNAMICAL, KINEMATICAL, Coefficient, convert_basis, limit_degree
from .contraction import SubspaceSplit, contract_limit, contraction_graph, identify, iw_contract, to_dot
from .dynamics import DynParams, PhaseState, Trajectory, integrate
from .errors import (Divergence, KinalgError, MixedBasis, NonPositiveStep, NotConvertible, NotInSpan,
                     NotSubalgebra, UnknownFamily, UnlikeMonomials, Unrecognized)
from .poisson import PoissonStructure, PolyFunction, hamiltonian_vector_field, motion_equations, poisson_bracket
from .realization import build_matrix_generators, commutator_table, rescale_generators

__version__ = "0.1.0"
