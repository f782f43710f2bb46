"""Exact verification toolkit for generalized Shalika subgroups over finite fields."""

from .field import (Field, FqElem, UnityRoot, additive_character, field_from_spec,
                    mult_character)
from .matrices import (IndexSet, Mat, all_matrices, embed, gl_list, gl_order,
                       perm_matrix, tau, tau_by, w, weld)
from .groups import (DeltaPContext, ShalikaContext, chi, deltap_contains,
                     deltap_enumerate, deltap_size, h_contains, h_enumerate,
                     h_size, psi, psi_tau, psi_u)
from .cosets import (BudgetError, CosetRecord, OmegaIndex, completeness_check,
                     gamma_rep, invariance_witness, is_admissible,
                     necessary_conditions, omega_enumerate, representatives,
                     same_coset, sigma_matrix)

__version__ = "0.1.0"
