"""Cayley graphs of symmetric connection sets and their strongly regular parameters.

A PDS d with 0 not in d and d = -d gives a Cayley graph Cay(G, d) that is strongly regular
with the same (n, k, lambda, mu).
"""

import logging
from typing import Optional, Tuple

import networkx as nx

from tools.errors import ParameterError
from tools.group_core import GroupSet, GroupSpec

logger = logging.getLogger(__name__)


def cayley_graph(g: GroupSpec, d: GroupSet) -> nx.Graph:
    """Undirected graph on ranks 0..n-1 with x ~ x + s for s in d."""
    if 0 in d:
        raise ParameterError("Connection set must not contain the identity")
    negated = set(g.neg_ranks(d.members).tolist())
    if negated != set(d.members):
        raise ParameterError("Connection set must be closed under negation")

    graph = nx.Graph()
    graph.add_nodes_from(range(g.order))
    neighbours = g.add_ranks(range(g.order), d.members)
    for x in range(g.order):
        graph.add_edges_from((x, int(y)) for y in neighbours[x])
    return graph


def _disjoint_cliques(graph: nx.Graph) -> Optional[int]:
    """Common clique size when every component is complete and all have the same size."""
    sizes = set()
    for component in nx.connected_components(graph):
        a = len(component)
        if graph.subgraph(component).number_of_edges() != a * (a - 1) // 2:
            return None
        sizes.add(a)
    return sizes.pop() if len(sizes) == 1 else None


def srg_parameters(graph: nx.Graph) -> Optional[Tuple[int, int, int, int]]:
    """(n, k, lambda, mu) when the graph is strongly regular, otherwise None.

    Disconnected strongly regular graphs are unions of equal cliques (mu = 0). Complete
    graphs count as strongly regular with mu = 0. Vacuous lambda is reported as 0.
    """
    n = graph.number_of_nodes()
    if n == 0:
        return None
    if not nx.is_connected(graph):
        a = _disjoint_cliques(graph)
        if a is None:
            return None
        params = (n, a - 1, max(a - 2, 0), 0)
    elif graph.number_of_edges() == n * (n - 1) // 2:
        params = (n, n - 1, max(n - 2, 0), 0)
    elif nx.is_strongly_regular(graph):
        b, c = nx.intersection_array(graph)
        params = (n, int(b[0]), int(b[0] - b[1] - 1), int(c[1]))
    else:
        return None
    logger.debug(f"Strongly regular graph with parameters {params}")
    return params
