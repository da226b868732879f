import networkx as nx
import pytest

from tools.cayley_graph import cayley_graph, srg_parameters
from tools.edf import verify_pds
from tools.errors import ParameterError
from tools.group_core import GroupSet, GroupSpec


def test_paley_graph_of_order_13():
    g = GroupSpec([13])
    graph = cayley_graph(g, GroupSet(g, [1, 3, 4, 9, 10, 12]))
    assert graph.number_of_nodes() == 13
    assert graph.number_of_edges() == 13 * 6 // 2
    assert srg_parameters(graph) == (13, 6, 2, 3)
    assert nx.is_strongly_regular(graph)


def test_order11_class_gives_strongly_regular_graph(order11_system):
    c0 = order11_system.classes[0]
    graph = cayley_graph(order11_system.group, c0)
    params = verify_pds(order11_system.group, c0)
    assert srg_parameters(graph) == (params.n, params.k, params.lambda_, params.mu) == (243, 22, 1, 2)


def test_non_strongly_regular_graph():
    assert srg_parameters(nx.path_graph(4)) is None
    g = GroupSpec([8])
    assert srg_parameters(cayley_graph(g, GroupSet(g, [1, 7]))) is None


def test_connection_set_checks():
    g = GroupSpec([7])
    with pytest.raises(ParameterError):
        cayley_graph(g, GroupSet(g, [0, 1, 6]))
    with pytest.raises(ParameterError):
        cayley_graph(g, GroupSet(g, [1, 2]))


def test_disconnected_union_of_cliques():
    g = GroupSpec([6])
    graph = cayley_graph(g, GroupSet(g, [3]))
    assert not nx.is_connected(graph)
    assert srg_parameters(graph) == (6, 1, 0, 0)
    params = verify_pds(g, GroupSet(g, [3]))
    assert (params.n, params.k, params.lambda_, params.mu) == (6, 1, 0, 0)

    triangles = nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3))
    assert srg_parameters(triangles) == (6, 2, 1, 0)
    assert srg_parameters(nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(2))) is None
    assert srg_parameters(nx.disjoint_union(nx.path_graph(3), nx.path_graph(3))) is None


def test_complete_and_rook_graphs():
    assert srg_parameters(nx.complete_graph(5)) == (5, 4, 3, 0)
    # K3 x K3 is the 3 x 3 rook graph
    rook = nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3))
    assert srg_parameters(rook) == (9, 4, 1, 2)
