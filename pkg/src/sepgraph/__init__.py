"""Exact invariants of separated graphs and their Leavitt path algebras."""

from .errors import (
    ParseError,
    ResourceLimit,
    SemanticError,
    SepGraphError,
    StepLimitExceeded,
    TooLarge,
)
from .expectation import VertexFunction, center, phi_graph, phi_sep
from .graph import (
    Block,
    DirectedGraph,
    Edge,
    SeparatedGraph,
    block_subgraph,
    build_builtin,
    build_emn,
    build_hbk,
    build_rose,
    quotient,
    trivially_separate,
    validate,
)
from .graphfile import parse_graph, serialize_graph
from .hereditary import closure, enumerate_lattice, is_c_saturated, is_hereditary
from .intlin import IntMatrix, cokernel, kernel, smith_normal_form
from .ktheory import k_theory, k_theory_classical
from .leavitt import LeavittAlgebra, algebra_for, parse_expr
from .monoid import MonoidElement, Verdict, equal_bounded, grothendieck_group
from .scalars import Scalar

__version__ = "0.1.0"
