"""
Network community profile: the smallest conductance found for every set size.

Two candidate families are combined, keeping the best set per logarithmic size bin:
whiskers hanging off the 2-edge-connected core by a single bridge (and unions of them),
and sweep cuts over personalized ranking vectors computed by local push.
"""

import math
from collections import deque
from collections.abc import Callable
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import connected_components

from src.conf.constants import EMPTY_GRAPH, NCP_SCOPE_WHOLE
from src.conf.errors import EmptyGraphError
from src.conf.logger import logger
from src.graph.core import Graph, VertexSet
from src.schemas.metrics import NcpBin, NcpConfig, NcpCurve, NcpDip
from src.services.conductance import conductance

Members = Callable[[], np.ndarray]


def size_bins(max_size: int, ratio: float) -> list[tuple[int, int]]:
    """
    Consecutive integer ranges ``[lo, hi]`` covering ``1..max_size`` with ``hi = floor(lo * ratio)``
    (at least ``lo``).

    :param max_size: largest size to cover
    :type max_size: int
    :param ratio: multiplicative bin width
    :type ratio: float
    :return: the bins in increasing order
    :rtype: list[tuple[int, int]]
    """
    bins = []
    lo = 1
    while lo <= max_size:
        hi = min(max_size, max(lo, math.floor(lo * ratio)))
        bins.append((lo, hi))
        lo = hi + 1
    return bins


class _Profile:
    """
    Per-bin best candidate; witnesses are only materialised for the winners.
    """

    def __init__(self, g: Graph, ratio: float):
        self.g = g
        self.n = g.node_count
        self.total_volume = 2 * g.edge_count
        self.bins = size_bins(self.n // 2, ratio)
        self.lows = np.array([lo for lo, _ in self.bins], dtype=np.int64)
        self.best: list[tuple[Fraction, str, Members, bool] | None] = [None] * len(self.bins)

    def offer(self, size: int, cut: int, volume: int, method: str, members: Members) -> None:
        if size <= 0 or size >= self.n:
            return
        denominator = min(volume, self.total_volume - volume)
        if denominator <= 0:
            return
        flipped = size > self.n // 2
        if flipped:
            size = self.n - size
        index = int(np.searchsorted(self.lows, size, side="right")) - 1
        value = Fraction(cut, denominator)
        current = self.best[index]
        if current is None or value < current[0]:
            self.best[index] = (value, method, members, flipped)

    def sweep(self, order: np.ndarray, method: str) -> None:
        """
        Offer the best prefix of ``order`` per size bin.

        :param order: distinct vertices in sweep order
        :type order: np.ndarray
        :param method: candidate family tag
        :type method: str
        """
        length = order.shape[0]
        if length == 0:
            return
        position = np.full(self.n, -1, dtype=np.int64)
        position[order] = np.arange(length)
        src, dst = self.g.incident_edges(order)
        before = position[dst]
        after = position[src]
        earlier = (before >= 0) & (before < after)
        back = np.bincount(after[earlier], minlength=length)
        degrees = self.g.degrees[order]
        cuts = np.cumsum(degrees - 2 * back)
        volumes = np.cumsum(degrees)
        sizes = np.arange(1, length + 1)
        denominators = np.minimum(volumes, self.total_volume - volumes)
        valid = (denominators > 0) & (sizes < self.n)
        if not valid.any():
            return
        candidates = np.flatnonzero(valid)
        phi = cuts[candidates] / denominators[candidates]
        folded = np.where(sizes[candidates] > self.n // 2, self.n - sizes[candidates], sizes[candidates])
        bin_index = np.searchsorted(self.lows, folded, side="right") - 1
        ranked = np.lexsort((phi, bin_index))
        _, first = np.unique(bin_index[ranked], return_index=True)
        for prefix in candidates[ranked[first]].tolist():
            self.offer(
                prefix + 1,
                int(cuts[prefix]),
                int(volumes[prefix]),
                method,
                lambda k=prefix + 1: order[:k],
            )

    def curve(self, disconnected: bool, ratio: float) -> NcpCurve:
        bins = []
        everything = np.arange(self.n)
        for (lo, hi), entry in zip(self.bins, self.best):
            if entry is None:
                continue
            _, method, members, flipped = entry
            chosen = np.asarray(members(), dtype=np.int64)
            if flipped:
                chosen = np.setdiff1d(everything, chosen)
            witness = VertexSet(self.n, chosen)
            bins.append(
                NcpBin(
                    lo=lo,
                    hi=hi,
                    conductance=conductance(self.g, witness),
                    witness=witness.members.tolist(),
                    method=method,
                )
            )
        return NcpCurve(bins=bins, bin_ratio=ratio, node_count=self.n, disconnected=disconnected)


def _component_candidates(profile: _Profile, labels: np.ndarray, count: int) -> None:
    volumes = np.bincount(labels, weights=profile.g.degrees, minlength=count).astype(np.int64)
    sizes = np.bincount(labels, minlength=count)
    for c in range(count):
        profile.offer(
            int(sizes[c]),
            0,
            int(volumes[c]),
            "component",
            lambda c=c: np.flatnonzero(labels == c),
        )


def _whisker_candidates(profile: _Profile, max_unions: int) -> None:
    g = profile.g
    graph = g.to_networkx()
    bridge_edges = list(nx.bridges(graph))
    if not bridge_edges:
        return
    graph.remove_edges_from(bridge_edges)
    label = np.empty(g.node_count, dtype=np.int64)
    for i, block in enumerate(sorted(nx.connected_components(graph), key=min)):
        label[list(block)] = i
    sizes = np.bincount(label)
    volumes = np.bincount(label, weights=g.degrees).astype(np.int64)
    tree = nx.Graph()
    tree.add_nodes_from(range(sizes.shape[0]))
    tree.add_edges_from((int(label[u]), int(label[v])) for u, v in bridge_edges)

    for part in nx.connected_components(tree):
        if len(part) == 1:
            continue
        root = min(part, key=lambda c: (-sizes[c], c))
        rooted = nx.bfs_tree(tree, root)
        order = list(rooted)
        sub_size = {c: int(sizes[c]) for c in order}
        sub_volume = {c: int(volumes[c]) for c in order}
        for c in reversed(order[1:]):
            parent = next(iter(rooted.predecessors(c)))
            sub_size[parent] += sub_size[c]
            sub_volume[parent] += sub_volume[c]

        def members(tops: tuple[int, ...], rooted=rooted) -> np.ndarray:
            blocks = set(tops)
            for top in tops:
                blocks |= nx.descendants(rooted, top)
            return np.flatnonzero(np.isin(label, list(blocks)))

        for c in order[1:]:
            profile.offer(sub_size[c], 1, sub_volume[c], "whisker", lambda c=c, m=members: m((c,)))

        whiskers = sorted(rooted.successors(root), key=lambda c: (sub_size[c], c))
        size = volume = 0
        for j, c in enumerate(whiskers[:max_unions], start=1):
            size += sub_size[c]
            volume += sub_volume[c]
            tops = tuple(whiskers[:j])
            profile.offer(size, j, volume, "whisker_union", lambda t=tops, m=members: m(t))


def personalized_ranking(
    g: Graph, seed: int, teleport: float, tolerance: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Approximate personalized ranking vector of ``seed`` by local push.

    A vertex is pushed while its residual is at least ``tolerance`` times its degree;
    each push keeps ``teleport`` of the residual, spreads half of the rest evenly over
    the neighbours and leaves the other half in place.

    :param g: the graph
    :type g: Graph
    :param seed: seed vertex (degree at least 1)
    :type seed: int
    :param teleport: teleport probability
    :type teleport: float
    :param tolerance: push threshold per unit degree
    :type tolerance: float
    :return: support vertices and their scores
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    degrees = g.degrees.astype(np.float64)
    score = np.zeros(g.node_count)
    residual = np.zeros(g.node_count)
    residual[seed] = 1.0
    queue = deque([seed])
    queued = {seed}
    while queue:
        u = queue.popleft()
        queued.discard(u)
        mass = residual[u]
        if mass < tolerance * degrees[u]:
            continue
        score[u] += teleport * mass
        residual[u] = (1.0 - teleport) * mass / 2.0
        neighbours = g.neighbors(u)
        residual[neighbours] += (1.0 - teleport) * mass / (2.0 * degrees[u])
        ready = neighbours[residual[neighbours] >= tolerance * degrees[neighbours]]
        for v in ready.tolist() + ([u] if residual[u] >= tolerance * degrees[u] else []):
            if v not in queued:
                queued.add(v)
                queue.append(v)
    support = np.flatnonzero(score)
    return support, score[support]


def ncp_heuristic(
    g: Graph, config: NcpConfig | None = None, scope: str = NCP_SCOPE_WHOLE
) -> NcpCurve:
    """
    Upper bound on the network community profile of ``g``.

    Every bin value is ``conductance(g, witness)`` for the recorded witness. For a
    disconnected graph the ``disconnected`` flag is set and every component is a
    zero-conductance candidate.

    :param g: the graph
    :type g: Graph
    :param config: seed count, teleports, bin ratio, tolerance and PRNG seed
    :type config: NcpConfig | None
    :param scope: recorded on the curve; the caller decides what ``g`` is
    :type scope: str
    :return: the profile
    :rtype: NcpCurve
    :raise: EmptyGraphError if ``g`` has no vertices
    """
    if g.node_count == 0:
        raise EmptyGraphError(detail=EMPTY_GRAPH)
    config = config or NcpConfig()
    profile = _Profile(g, config.bin_ratio)

    count, labels = connected_components(g.to_scipy(), directed=False)
    disconnected = count > 1
    if disconnected:
        _component_candidates(profile, labels, count)
    _whisker_candidates(profile, config.max_whisker_unions)

    active = np.flatnonzero(g.degrees > 0)
    if active.size:
        rng = np.random.default_rng(config.seed)
        seeds = rng.choice(active, size=min(config.seed_count, active.size), replace=False)
        degrees = g.degrees
        for seed in np.sort(seeds).tolist():
            for teleport in config.teleports:
                support, score = personalized_ranking(g, seed, teleport, config.tolerance)
                order = support[np.lexsort((support, -score / degrees[support]))]
                profile.sweep(order, f"spectral:{teleport:g}")

    curve = profile.curve(disconnected, config.bin_ratio)
    curve.scope = scope
    logger.debug(
        f"NCP over {len(curve.bins)} bins on {g!r} (disconnected={disconnected})"
    )
    return curve


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0:
        return numerator / denominator
    return 1.0 if numerator == 0 else math.inf


def ncp_dip(curve: NcpCurve, tail_bins: int = 3) -> NcpDip:
    """
    Locate the minimum of a profile and compare it with the size-2 bin and the largest bins.

    :param curve: the profile
    :type curve: NcpCurve
    :param tail_bins: number of largest bins to compare against
    :type tail_bins: int
    :return: the shape summary
    :rtype: NcpDip
    :raise: EmptyGraphError for a profile without bins
    """
    if not curve.bins:
        raise EmptyGraphError(detail=EMPTY_GRAPH)
    values = np.array([b.conductance for b in curve.bins])
    lows = [b.lo for b in curve.bins]
    lowest = int(np.argmin(values))
    minimum = float(values[lowest])
    small = float(values[lows.index(2)]) if 2 in lows else float(values[0])
    large = float(values[-tail_bins:].min())
    return NcpDip(
        min_size=lows[lowest],
        min_value=minimum,
        small_ratio=_ratio(small, minimum),
        large_ratio=_ratio(large, minimum),
        spread=_ratio(float(values.max()), minimum),
    )
