"""Molecular graph enumeration and parsing."""

from collections.abc import Iterable, Sequence
from itertools import combinations

from pydantic import ValidationError

from effbasis.core.errors import GraphError
from effbasis.models.graph import MolecularGraph


def _disjoint(edges: Sequence[tuple[int, int]]) -> bool:
    used = [o for edge in edges for o in edge]
    return len(used) == len(set(used))


def enumerate_graphs(n_spatial: int, n_electrons: int) -> list[MolecularGraph]:
    """All graphs with n_electrons/2 pairwise-disjoint edges.

    Ordered lexicographically on the sorted edge list, so for four orbitals
    and four electrons: 0-1|2-3, 0-2|1-3, 0-3|1-2.

    Raises:
        GraphError: odd or negative electron count, or more pairs than fit.
    """
    if n_electrons < 0 or n_electrons % 2:
        raise GraphError(f"pairing graphs need an even electron count, got {n_electrons}")
    n_pairs = n_electrons // 2
    if n_pairs > n_spatial // 2:
        raise GraphError(
            f"{n_pairs} electron pairs do not fit on {n_spatial} orbitals as disjoint edges"
        )
    all_edges = list(combinations(range(n_spatial), 2))
    return [
        MolecularGraph(n_spatial=n_spatial, edges=chosen)
        for chosen in combinations(all_edges, n_pairs)
        if _disjoint(chosen)
    ]


def parse_graph(edges: Iterable[Sequence[int]], n_spatial: int) -> MolecularGraph:
    """Graph from a config edge list such as [[0, 1], [2, 3]]."""
    edge_list = [tuple(e) for e in edges]
    try:
        return MolecularGraph(n_spatial=n_spatial, edges=edge_list)
    except ValidationError as exc:
        messages = "; ".join(err["msg"] for err in exc.errors())
        raise GraphError(f"invalid graph {edge_list}: {messages}") from exc
