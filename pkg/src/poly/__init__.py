# relipoly/src/poly/__init__.py
from .coefficients import (BASES, CoefficientVector, NklTable, evaluate, evaluate_many,
                           nk_to_rk, parse_x, pk_to_rk, rk_to_nk, rk_to_pk)
from .closed_forms import (closed_form_chain_overlap, closed_form_disjoint,
                           disjoint_motifs_rk, single_motif_rk, sparse_nk_solutions,
                           two_overlapping_rk)
from .constraints import ConstraintCheck, ConstraintReport, check_constraints
from .roots import SignChange, sign_changes
from .perturbative import (EarKmin, StarOfChainsReport, all_terminal_leading_term,
                           ar_alpha_leading_term, ear_alpha_kmin, leading_term,
                           star_of_chains_graph, star_of_chains_report)
