"""
Plain-text edge lists: one ``u v`` pair per line, ``#`` comments, and an optional
``# nodes=N`` header declaring isolated vertices.
"""

import re
from pathlib import Path

import numpy as np
import pandas as pd

from src.conf.constants import ENDPOINT_OUT_OF_RANGE, MALFORMED_EDGE_LINE
from src.conf.errors import GraphConstructionError
from src.graph.core import Graph, build_from_edges

NODES_HEADER = re.compile(r"^#\s*nodes\s*=\s*(\d+)\s*$")


def _declared_nodes(path: Path | str) -> int | None:
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            text = line.strip()
            if not text:
                continue
            if not text.startswith("#"):
                return None
            match = NODES_HEADER.match(text)
            if match:
                return int(match.group(1))
    return None


def _malformed(path: Path | str) -> GraphConstructionError:
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            fields = text.split()
            if len(fields) != 2 or not all(f.isdigit() for f in fields):
                return GraphConstructionError(
                    detail=f"{MALFORMED_EDGE_LINE} {number}: {text!r}"
                )
    return GraphConstructionError(detail=MALFORMED_EDGE_LINE)


def read_edge_list(path: Path | str) -> Graph:
    """
    Read a graph from an edge-list file.

    Pairs are parsed in one pass by pandas; the file is only rescanned line by line to
    report where a malformed line sits. Without a ``# nodes=N`` header before the first
    pair the node count is one more than the largest ID.

    :param path: file to read
    :type path: Path | str
    :return: the graph
    :rtype: Graph
    :raise: GraphConstructionError on malformed lines or invalid edges
    """
    declared = _declared_nodes(path)
    try:
        frame = pd.read_csv(path, sep=r"\s+", comment="#", header=None, dtype=np.int64)
    except pd.errors.EmptyDataError:
        frame = pd.DataFrame(np.zeros((0, 2), dtype=np.int64))
    except (ValueError, OverflowError):
        raise _malformed(path)
    edges = frame.to_numpy(dtype=np.int64)
    if edges.shape[1] != 2 or (edges < 0).any():
        raise _malformed(path)
    inferred = int(edges.max()) + 1 if edges.size else 0
    if declared is not None and inferred > declared:
        raise GraphConstructionError(detail=ENDPOINT_OUT_OF_RANGE)
    return build_from_edges(declared if declared is not None else inferred, edges)


def write_edge_list(
    graph: Graph, path: Path | str, comments: list[str] | None = None
) -> Path:
    """
    Write a graph as an edge list with a ``# nodes=N`` header.

    :param graph: graph to write
    :type graph: Graph
    :param path: destination file
    :type path: Path | str
    :param comments: extra comment lines written after the header
    :type comments: list[str] | None
    :return: the written path
    :rtype: Path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# nodes={graph.node_count}\n")
        for comment in comments or []:
            handle.write(f"# {comment}\n")
        edges = graph.edges()
        if edges.size:
            np.savetxt(handle, edges, fmt="%d", delimiter=" ")
    return path
