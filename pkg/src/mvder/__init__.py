"""Derivations on finite MV-algebras: enumeration, classification and lattices."""

from .algebra import (
    FiniteMvAlgebra,
    boolean_algebra,
    check_axioms,
    from_tables,
    leq,
    make_chain,
    make_product,
    odot,
    ovee,
    owedge,
)
from .derivations import (
    Operator,
    chain_count,
    chain_derivations,
    chi,
    classify,
    enumerate_derivations,
    enumerate_operators,
    ider,
    is_derivation,
    modify_at_one,
    principal,
    product_derivation,
    project_derivation,
)
from .errors import (
    InvalidArgumentError,
    InvalidSizeError,
    IsomorphismUnknown,
    MalformedTableError,
    MvError,
    NotMvAlgebraError,
    ParseError,
    ResourceLimitError,
)
from .expr import build, parse_expr
from .lattice import derivation_poset, export_hasse, find_lattice_isomorphism
from .structure import all_algebras_of_size, boolean_center, decompose, ideals, lattice_ideals

__version__ = "0.1.0"
