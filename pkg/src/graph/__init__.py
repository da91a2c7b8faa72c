# relipoly/src/graph/__init__.py
from .multigraph import EXACT_EDGE_CAP, ComponentRecord, EdgeSet, ReliabilityGraph
from .generators import (complete_graph, cycle_graph, grid_graph, parse_edge_list,
                         path_graph, read_edge_list, write_edge_list)
from .kirchhoff import laplacian, spanning_tree_count


def components(graph: ReliabilityGraph, active: EdgeSet) -> list:
    """Composantes connexes des arêtes actives (voir ReliabilityGraph.components)."""
    return graph.components(active)
