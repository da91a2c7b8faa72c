# relipoly/src/estimate/__init__.py
from .brute_force import BRUTE_FORCE_EDGE_CAP, brute_force_rk
from .factoring import EdgeFactoring, edge_order, factoring_nk
from .monte_carlo import (DEFAULT_BLOCK_SIZE, McEstimate, SpanningTreeEstimate,
                          estimate_spanning_trees, monte_carlo_pk, sample_subsets, write_rows)
from .curves import (LOG_SPACE_ABOVE, grid, reliability_curve, write_curve_csv,
                     write_curves_csv)
