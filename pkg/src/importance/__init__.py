# relipoly/src/importance/__init__.py
from .birnbaum import (DEFAULT_TOL, SCAN_POINTS, EdgeImportance, ImportanceReport,
                       RemovalExperiment, all_importances, edge_importance,
                       edge_removal_experiment, find_crossings, importance_table,
                       rank_edges)
