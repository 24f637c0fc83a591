"""Signal-flow graph of the fast algorithm

Each stage output is a node; in an analog current-mode realization a node with
two incoming edges is a current-summing junction.
"""
import networkx as nx

from .factorization import Factorization, build_factorization


def signal_flow_graph(factorization: Factorization | None = None) -> nx.DiGraph:
    """Nodes are (layer, wire); layer 0 holds the inputs, layer s the outputs of stage s"""
    if factorization is None:
        factorization = build_factorization()
    graph = nx.DiGraph()
    width = len(factorization.stages[0].terms)
    graph.add_nodes_from(((0, i) for i in range(width)), kind="input", stage=None)
    for layer, stage in enumerate(factorization.stages, start=1):
        for i, terms in enumerate(stage.terms):
            kind = "adder" if len(terms) == 2 else "wire"
            graph.add_node((layer, i), kind=kind, stage=stage.name)
            for index, coefficient in terms:
                graph.add_edge(
                    (layer - 1, index),
                    (layer, i),
                    coefficient=coefficient.value,
                    adders=int(kind == "adder"),
                )
    return graph


def adder_nodes(graph: nx.DiGraph) -> list:
    return [node for node, degree in graph.in_degree() if degree == 2]


def adder_depth(factorization: Factorization | None = None) -> int:
    """Largest number of summing junctions on any input to output path"""
    graph = signal_flow_graph(factorization)
    return int(nx.dag_longest_path_length(graph, weight="adders", default_weight=0))
