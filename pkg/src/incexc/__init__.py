# relipoly/src/incexc/__init__.py
from .unions import (FULL_MOTIF_CAP, ExactResult, UnionEnumerationPlan, exact_nk,
                     nk_from_table, nkl_full, nkl_truncated)
from .tradeoff import (TradeoffReport, overlapping_as_stated, overlapping_chain,
                       overlapping_shared_core, tradeoff_compare)
