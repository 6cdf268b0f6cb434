"""JSON and DOT formats for graphs, list assignments, choices and witnesses.

Graph files look like ``{"vertices": [0, 1], "edges": [[0, 1]]}``; digraphs
use the key ``"arcs"``.  List assignments and choices are maps from vertex id
(as a JSON string) to a sorted color list.
"""

from __future__ import annotations

import json
from typing import Mapping

from .graphs import Digraph, Graph


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": sorted([u, v] for u, v in g.edges),
    }


def digraph_to_json(d: Digraph) -> dict:
    return {
        "vertices": list(d.vertices),
        "arcs": sorted([u, v] for u, v in d.arcs),
    }


def graph_from_json(obj: dict) -> Graph:
    return Graph(obj["vertices"], [tuple(e) for e in obj["edges"]])


def digraph_from_json(obj: dict) -> Digraph:
    return Digraph(obj["vertices"], [tuple(a) for a in obj["arcs"]])


def load_graph(path: str) -> Graph | Digraph:
    with open(path) as fh:
        obj = json.load(fh)
    if "arcs" in obj:
        return digraph_from_json(obj)
    return graph_from_json(obj)


def save_graph(g: Graph | Digraph, path: str) -> None:
    obj = digraph_to_json(g) if isinstance(g, Digraph) else graph_to_json(g)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def lists_to_json(lists: Mapping[int, frozenset[int]]) -> dict:
    return {str(v): sorted(cs) for v, cs in sorted(lists.items())}


def lists_from_json(obj: Mapping[str, list[int]]) -> dict[int, frozenset[int]]:
    return {int(v): frozenset(cs) for v, cs in obj.items()}


def load_lists(path: str) -> dict[int, frozenset[int]]:
    with open(path) as fh:
        obj = json.load(fh)
    if "lists" in obj:
        obj = obj["lists"]
    return lists_from_json(obj)


def graph_to_dot(g: Graph | Digraph, name: str = "G") -> str:
    if isinstance(g, Digraph):
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in g.vertices]
        lines += [f"  {u} -> {v};" for u, v in sorted(g.arcs)]
    else:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in g.vertices]
        lines += [f"  {u} -- {v};" for u, v in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
