"""Matrix factorizations of quasi-homogeneous potentials over exact fields.

The most used entry points are re-exported here; see the submodules for the
rest.
"""

__version__ = "0.1.0"

from .core import (MatrixFactorization, MfMorphism, cone, direct_sum, homotopy_solve, identity,
                   koszul_factorization, morphism, pullback, rank_one, shift, trivial_factorization, verify)
from .equivariant import EquivariantMF, GroupData, equivariant_hom_dims, verify_equivariant
from .errors import MatfactError
from .field import QQ, PrimeField
from .hom import HomSpace, stable_hom_dim, stable_hom_table
from .matrix import PolyMatrix
from .poly import Poly, Ring
from .pushforward import FiniteRingMap, restrict_scalars
from .sing import (GradedModulePresentation, check_exactness, coker_functor, cokernel_roundtrip_check,
                   connecting_sequence_check, stabilize, two_periodic_complex)
from .support import fiber_cohomology, fiber_complex, singular_locus_test, support_sample

__all__ = [
    "MatrixFactorization", "MfMorphism", "cone", "direct_sum", "homotopy_solve", "identity",
    "koszul_factorization", "morphism", "pullback", "rank_one", "shift", "trivial_factorization", "verify",
    "EquivariantMF", "GroupData", "equivariant_hom_dims", "verify_equivariant", "MatfactError", "QQ",
    "PrimeField", "HomSpace", "stable_hom_dim", "stable_hom_table", "PolyMatrix", "Poly", "Ring",
    "FiniteRingMap", "restrict_scalars", "GradedModulePresentation", "check_exactness", "coker_functor",
    "cokernel_roundtrip_check", "connecting_sequence_check", "stabilize", "two_periodic_complex",
    "fiber_cohomology", "fiber_complex", "singular_locus_test", "support_sample",
]
