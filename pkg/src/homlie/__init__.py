"""Exact computation of Hom-Lie structure spaces of finite-dimensional Lie
algebras: solving the twisted Jacobi condition, deciding anticommutator
closure (plain and conjugation-twisted), extracting idempotent and
square-zero structures, building decomposition witnesses from them, and
analyzing the associated bilinear Jacobi-type equation and R-matrix defects.
All arithmetic is exact, over the rationals or GF(p) with p an odd prime.
"""

from .bilinear import (BilinearMap, RMatrixReport, bilinear_span_contains,
                       f_of_pair, f_of_phi, f_space, lemma1_equivalence_check,
                       r_matrix_check, satisfies_F_equation)
from .decomp import (char_poly, idempotent_polynomial, is_nilpotent,
                     jordan_chevalley, min_poly)
from .fields import Field, Scalar
from .homspaces import (MapSpace, centroid_basis, check_ad_invariance,
                        check_submodule, conjugate, hom_lie_basis, is_hom_lie,
                        module_action)
from .jordan import (ClosureReport, JordanElementFacts, TraceRadicalReport,
                     TwistedClosureReport, anticommutator,
                     anticommutator_closure, derivation_property,
                     element_facts, harvest_idempotents, harvest_square_zero,
                     polynomial_closure_spotcheck, square_closure,
                     trace_form_radical, twisted_closure)
from .liealg import (LieAlgebra, Subspace, ValidationReport, abelian,
                     center_basis, current, direct_sum, heisenberg,
                     image_subspace, is_automorphism, kernel_subspace, sl2,
                     subspace_bracket, validate, witt_mod_p, zassenhaus)
from .matrix import (KernelStream, Matrix, RrefResult, apply_poly,
                     kernel_basis, random_matrix, rref)
from .poly import Poly
from .suits import (Witness, diamond_from_idempotent, diamond_search,
                    heart_from_squarezero, heart_search, verify_diamond,
                    verify_heart)

__version__ = "0.1.0"
