"""Exact computer algebra for noncommutative formal structures on representation schemes."""
from .errors import (AlphabetMismatch, ContractError, NotStabilized, RegistryTooSmall,
                     ResourceError)
from .hallbasis import HallBasis, LieElement, bracket_normalize, lie_rank
from .ncpoly import CommPoly, LocalizedElement, NCPoly, abelianize, parse_comm, parse_nc
from .pbw import (BracketMonomial, FormalSection, OperatorTable, PBWElement, extract_C_operator,
                  filtration_degree, formal_section_mul, pbw_expand, pbw_normalize, truncated_mul)
from .quiver import Quiver, QuiverRep, euler_form, euler_form_extended, extend_quiver

__version__ = "0.1.0"
