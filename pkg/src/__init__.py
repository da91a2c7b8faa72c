from .errors import RelipolyError
from .graph import ReliabilityGraph, read_edge_list
from .rules import RuleSpec
from .incexc import exact_nk
from .pipeline import RunConfig, run
