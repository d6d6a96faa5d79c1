"""Girard couples of finite quantales.

Finite lattices and quantales are dense index sets with numpy tables.  The
package builds the quantale Q(S) of join-preserving endomaps, the tensor
product C(S) = S (x) S^op, the couple C(S) -> Q(S), and the Girard quantale
obtained from any Girard couple, and checks the relevant laws exhaustively.
A separate module checks the trace duality on subspaces of matrix algebras
by sampling.
"""

__version__ = "0.1.0"

from .checks import Check
from .construction import GirardQuantale, G_of_S, build_G, rosenthal, verify_G
from .couple import Couple, cs_couple, identity_couple, is_girard, validate_couple, zero_couple
from .endo import EndoQuantale, build_endo_quantale
from .lattice import BudgetExceeded, FiniteLattice, LatticeError, SupMap, lattice_from_covers, op_dual
from .logic import GirardModel, parse, to_text
from .quantale import Quantale, QuantaleError, girard_elements
from .tensor import TensorProduct, tensor_lattice

__all__ = [
    "BudgetExceeded", "Check", "Couple", "EndoQuantale", "FiniteLattice", "GirardModel", "GirardQuantale",
    "G_of_S", "LatticeError", "Quantale", "QuantaleError", "SupMap", "TensorProduct", "build_G",
    "build_endo_quantale", "cs_couple", "girard_elements", "identity_couple", "is_girard", "lattice_from_covers",
    "op_dual", "parse", "rosenthal", "tensor_lattice", "to_text", "validate_couple", "verify_G", "zero_couple",
]
