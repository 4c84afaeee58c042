"""Equational presentations, free-algebra tabulation, truncated Lawvere
theories, and model/algebra enumeration."""

from .fixtures import (PRESENTATIONS, empty_presentation, monoid_presentation, pointed_presentation,
                       semilattice_presentation)
from .models import (EMAlgebra, Model, ModelCategory, check_triangle, em_algebras, em_to_model,
                     enumerate_algebras, enumerate_models, is_homomorphism)
from .tabulate import EGraph, TabMonad, check_kleisli, free_algebra, identity_tabmonad, substitution_sound, tabulate
from .terms import (App, Equation, Presentation, Signature, Term, Var, depth, presentation_from_json,
                    presentation_to_json, size, substitute, term_from_json, term_to_json, variables)
from .theory import (LawTheory, check_law_theory, compare_theories, monad_to_theory, theory_from_json,
                     theory_to_json, theory_to_monad)

__all__ = [name for name in dir() if not name.startswith("_")]
