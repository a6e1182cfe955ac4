"""Equations over groups.

Free-group words, finite groups, free-product normal forms, integer linear
algebra, coset enumeration with Reidemeister–Schreier presentations,
covering 2-complexes, hypothesis checkers for the classical solvability
theorems, and a brute-force solution search.
"""

from .complexes import criterion_check, covering_complex, homology, standard_complex
from .cosets import enumerate_low_index, low_index_subgroups, subgroup_presentation, todd_coxeter
from .equations import exponent_matrix, is_nonsingular
from .groups import FactorSpec, FiniteGroup, FreeProductSpec, Presentation, from_permutations, \
    validate_table
from .mixedwords import EquationSystem, MixedWord, content
from .parsing import parse
from .solver import overgroup_catalogue, solve_in, solve_over
from .theorems import check_bhs, check_freiheitssatz, check_gr, check_main, check_nitsche_thom, \
    orbit_system
from .words import Alphabet, Word
from .zlinalg import IntMatrix, snf

__version__ = "0.1.0"
