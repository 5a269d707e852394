"""Write the social-network instances shipped with networkx as edge lists.

Node ids follow networkx's node iteration order; the solver is invariant
under relabeling, so any fixed order works.
"""

import pathlib
import networkx as nx

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def dump(name, graph, source):
    ids = {node: i for i, node in enumerate(graph.nodes())}
    lines = [f"# {name}: {source}",
             f"# n={graph.number_of_nodes()} m={graph.number_of_edges()}"]
    for u, v in sorted((min(ids[a], ids[b]), max(ids[a], ids[b])) for a, b in graph.edges()):
        lines.append(f"{u} {v}")
    (OUT / f"{name}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    dump("karate", nx.karate_club_graph(), "Zachary karate club (networkx.karate_club_graph)")
    dump("lesmis", nx.les_miserables_graph(), "Les Miserables co-appearances (networkx.les_miserables_graph)")
