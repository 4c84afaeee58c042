"""LexProf-enriched categories: axioms, the Gamma / integral adjunction,
absolute tensors, monads and theories, and semantics in finite sets."""

from .completion import (ParflCategory, TensorWitness, check_absolute_tensored, check_eq31, check_parfl,
                         companion_tensor, epsilon, eta, gamma, in_sieve, integrate, is_tensor,
                         parfl_morphisms, sieve_members, transpose_to_parfl, transpose_to_w,
                         wfunctor_report)
from .core import (Underlying, WCategory, WFunctorData, check_wcategory, check_wfunctor,
                   enumerate_wfunctors, global_elements, is_fully_faithful, underlying_category)
from .monads import (LawvereWCat, LexMonad, check_lawvere, enumerate_lattice_monads, find_monad_iso,
                     find_theory_iso, identity_monad, interior_operators, monad_from_theory,
                     monad_to_oneobject, relation_monad, roundtrip_monad, tabmonad_to_lexmonad,
                     theory_from_monad)
from .semantics import (SemObject, Semantics, act_S, check_sem_object, restrict, semantics,
                        transformations, wfunctors_to_S)

__all__ = [name for name in dir() if not name.startswith("_")]
