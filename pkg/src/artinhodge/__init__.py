"""Exact computations with mixed Hodge structures over local Artin algebras.

Complex scalars are modeled by the Gaussian rationals and real scalars by the
rationals, so every verdict is decided by exact linear algebra.
"""
from .algebra import (ArtinAlgebra, RingMap, build_algebra, dual_numbers, presentation,
                      presentation_from_json, presentation_to_json, residue_map)
from .complexes import (BoundedComplex, DecreasingFiltration, DoubleComplex, cohomology,
                        column_filtration, degeneration_check, e_infinity, length_inequality,
                        spectral_pages, total_complex)
from .errors import *  # noqa: F401,F403
from .hodge import (ClassicalMHS, HodgeMorphism, HodgeWeilStructure, MixedHodgeStructure,
                    check_pullback_constant_rank, hodge_decomposition, morphism_bigrading,
                    verify_mhs, weil_restrict_structure)
from .modules import (FinModule, ModuleMap, base_change, cokernel, free_module, image, is_free,
                      kernel, map_from_r_matrix)
from .rank import all_minors_ideals, constant_rank, triangle_rank_transfer
from .scalars import QQ, QQI, Gaussian
from .snc import (DEMOS, SNCModel, assemble_mhs, betti_numbers, verify_theorem_free_singular,
                  weight_ss)
from .weil import weil_restrict_algebra, weil_restrict_map, weil_restrict_module

__version__ = "0.1.0"
