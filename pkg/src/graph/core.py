"""
Immutable undirected simple graphs stored as compressed sparse rows.
"""

from collections.abc import Iterable, Iterator

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix

from src.conf.constants import (
    ENDPOINT_OUT_OF_RANGE,
    SELF_LOOP_NOT_ALLOWED,
    NEGATIVE_NODE_COUNT,
    VERTEX_OUT_OF_RANGE,
    VERTEX_SET_GRAPH_MISMATCH,
    ASYMMETRIC_ADJACENCY,
    EDGE_COUNT_MISMATCH,
    NEIGHBOURS_NOT_SORTED,
)
from src.conf.errors import GraphConstructionError, InvalidVertexSetError


def _index_dtype(node_count: int) -> type:
    return np.int32 if node_count < 2**31 - 1 else np.int64


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class Graph:
    """
    Undirected simple graph on the dense vertex IDs ``0..n-1``.

    Neighbour lists are sorted, so iteration order only depends on the graph itself.
    Instances are never mutated after construction and may be shared between readers.
    """

    __slots__ = ("_indptr", "_indices", "_edge_count")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray):
        """
        Constructor. Prefer :func:`build_from_edges`, which guarantees the invariants.

        :param indptr: row pointer array of length ``n + 1``
        :type indptr: np.ndarray
        :param indices: concatenated sorted neighbour lists
        :type indices: np.ndarray
        """
        self._indptr = _frozen(np.asarray(indptr, dtype=np.int64))
        self._indices = _frozen(np.asarray(indices))
        self._edge_count = int(self._indices.shape[0] // 2)

    @property
    def node_count(self) -> int:
        return int(self._indptr.shape[0] - 1)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        """
        Degree of every vertex.

        :return: array of length ``node_count``
        :rtype: np.ndarray
        """
        return np.diff(self._indptr)

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """
        Sorted, read-only neighbour IDs of ``v``.

        :param v: vertex ID
        :type v: int
        :return: neighbour array
        :rtype: np.ndarray
        """
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        position = int(np.searchsorted(row, v))
        return position < row.shape[0] and int(row[position]) == v

    def has_edges(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """
        Vectorised :meth:`has_edge` by simultaneous binary search in each row.

        :param us: first endpoints
        :type us: np.ndarray
        :param vs: second endpoints
        :type vs: np.ndarray
        :return: boolean array, True where ``(us[i], vs[i])`` is an edge
        :rtype: np.ndarray
        """
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size == 0:
            return np.zeros(0, dtype=bool)
        lo = self._indptr[us].copy()
        end = self._indptr[us + 1]
        hi = end.copy()
        while True:
            active = lo < hi
            if not active.any():
                break
            mid = (lo + hi) // 2
            cursor = np.where(active, mid, 0)
            smaller = self._indices[cursor] < vs
            lo = np.where(active & smaller, mid + 1, lo)
            hi = np.where(active & ~smaller, mid, hi)
        found = lo < end
        safe = np.where(found, lo, 0)
        return found & (self._indices[safe] == vs)

    def edges(self) -> np.ndarray:
        """
        Every edge once, as rows ``(u, v)`` with ``u < v`` in lexicographic order.

        :return: array of shape ``(edge_count, 2)``
        :rtype: np.ndarray
        """
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
        dst = self._indices.astype(np.int64)
        keep = src < dst
        return np.column_stack((src[keep], dst[keep]))

    def incident_edges(self, vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        All directed adjacency entries leaving ``vertices``.

        :param vertices: source vertex IDs
        :type vertices: np.ndarray
        :return: parallel arrays of sources and targets
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        vertices = np.asarray(vertices, dtype=np.int64)
        starts = self._indptr[vertices]
        counts = self._indptr[vertices + 1] - starts
        total = int(counts.sum())
        if total == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy()
        offsets = np.repeat(starts - (np.cumsum(counts) - counts), counts)
        positions = np.arange(total, dtype=np.int64) + offsets
        return np.repeat(vertices, counts), self._indices[positions].astype(np.int64)

    def to_scipy(self) -> csr_matrix:
        data = np.ones(self._indices.shape[0], dtype=np.int8)
        n = self.node_count
        return csr_matrix((data, self._indices, self._indptr), shape=(n, n))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.edges().tolist())
        return graph

    def assert_invariants(self) -> None:
        """
        Check symmetry, simplicity and the cached edge count.

        :raise: GraphConstructionError if any invariant is violated
        """
        n = self.node_count
        src = np.repeat(np.arange(n, dtype=np.int64), self.degrees)
        dst = self._indices.astype(np.int64)
        if dst.size and (dst.min() < 0 or dst.max() >= n):
            raise GraphConstructionError(detail=ENDPOINT_OUT_OF_RANGE)
        if np.any(src == dst):
            raise GraphConstructionError(detail=SELF_LOOP_NOT_ALLOWED)
        same_row = src[1:] == src[:-1]
        if np.any(same_row & (dst[1:] <= dst[:-1])):
            raise GraphConstructionError(detail=NEIGHBOURS_NOT_SORTED)
        forward = np.sort(src * n + dst)
        backward = np.sort(dst * n + src)
        if not np.array_equal(forward, backward):
            raise GraphConstructionError(detail=ASYMMETRIC_ADJACENCY)
        if 2 * self._edge_count != int(self.degrees.sum()):
            raise GraphConstructionError(detail=EDGE_COUNT_MISMATCH)

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


class VertexSet:
    """
    A set of vertex IDs of a graph with ``node_count`` vertices.
    """

    __slots__ = ("_node_count", "_members", "_mask")

    def __init__(self, node_count: int, members: Iterable[int] | np.ndarray):
        """
        Constructor.

        :param node_count: number of vertices of the referenced graph
        :type node_count: int
        :param members: vertex IDs, duplicates allowed
        :type members: Iterable[int] | np.ndarray
        :raise: InvalidVertexSetError if a member is outside ``[0, node_count)``
        """
        if not isinstance(members, np.ndarray):
            members = np.fromiter(members, dtype=np.int64)
        members = np.unique(members.astype(np.int64))
        if members.size and (members[0] < 0 or members[-1] >= node_count):
            raise InvalidVertexSetError(detail=VERTEX_OUT_OF_RANGE)
        self._node_count = node_count
        self._members = _frozen(members)
        self._mask = None

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "VertexSet":
        mask = np.asarray(mask, dtype=bool)
        return cls(mask.shape[0], np.flatnonzero(mask))

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def size(self) -> int:
        return int(self._members.shape[0])

    @property
    def members(self) -> np.ndarray:
        return self._members

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            mask = np.zeros(self._node_count, dtype=bool)
            mask[self._members] = True
            self._mask = _frozen(mask)
        return self._mask

    def complement(self) -> "VertexSet":
        return VertexSet.from_mask(~self.mask)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self._node_count and bool(self.mask[v])

    def __iter__(self) -> Iterator[int]:
        return iter(self._members.tolist())

    def __repr__(self) -> str:
        return f"VertexSet(size={self.size}, node_count={self._node_count})"


def build_from_edges(node_count: int, edges) -> Graph:
    """
    Build a simple graph from unordered pairs, merging duplicates.

    :param node_count: number of vertices
    :type node_count: int
    :param edges: sequence of pairs or an array of shape ``(m, 2)``
    :return: the graph
    :rtype: Graph
    :raise: GraphConstructionError on out-of-range endpoints or self-loops
    """
    if node_count < 0:
        raise GraphConstructionError(detail=NEGATIVE_NODE_COUNT)
    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if pairs.size:
        if pairs.min() < 0 or pairs.max() >= node_count:
            raise GraphConstructionError(detail=ENDPOINT_OUT_OF_RANGE)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise GraphConstructionError(detail=SELF_LOOP_NOT_ALLOWED)
    n = np.int64(node_count)
    keys = np.unique(pairs.min(axis=1) * n + pairs.max(axis=1))
    lo, hi = keys // n, keys % n
    src = np.concatenate((lo, hi))
    dst = np.concatenate((hi, lo))
    order = np.lexsort((dst, src))
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=node_count), out=indptr[1:])
    return Graph(indptr, dst[order].astype(_index_dtype(node_count)))


def induced_subgraph(g: Graph, s: VertexSet) -> tuple[Graph, np.ndarray]:
    """
    Restrict ``g`` to the vertices of ``s``.

    Members are renumbered in increasing order of their IDs in ``g``.

    :param g: the graph
    :type g: Graph
    :param s: vertices to keep
    :type s: VertexSet
    :return: the induced subgraph and the remap table (new ID -> ID in ``g``)
    :rtype: tuple[Graph, np.ndarray]
    :raise: InvalidVertexSetError if ``s`` refers to a different graph
    """
    if s.node_count != g.node_count:
        raise InvalidVertexSetError(detail=VERTEX_SET_GRAPH_MISMATCH)
    members = s.members
    lookup = np.full(g.node_count, -1, dtype=np.int64)
    lookup[members] = np.arange(members.shape[0], dtype=np.int64)
    src, dst = g.incident_edges(members)
    keep = lookup[dst] >= 0
    new_src = lookup[src[keep]]
    new_dst = lookup[dst[keep]]
    indptr = np.zeros(members.shape[0] + 1, dtype=np.int64)
    np.cumsum(np.bincount(new_src, minlength=members.shape[0]), out=indptr[1:])
    sub = Graph(indptr, new_dst.astype(_index_dtype(members.shape[0])))
    return sub, members.copy()
