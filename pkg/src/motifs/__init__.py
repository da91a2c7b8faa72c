# relipoly/src/motifs/__init__.py
from .family import MotifFamily, is_antichain, minimal_size_and_count
from .enumerators import (GENERIC_EDGE_CAP, enumerate_minimal_generic, enumerate_motifs,
                          enumerate_paths, enumerate_spanning_trees)
