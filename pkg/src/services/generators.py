"""
Potential-network generators: small-world and planted-community models with
independent edge rewiring, the planted clique model, random regular graphs and
the baseline families used as negative controls.
"""

import networkx as nx
import numpy as np

from src.conf.constants import (
    MODEL_WS,
    MODEL_PC,
    MODEL_PCM,
    BASELINE_KINDS,
    RANDOM_REGULAR_MAX_RESTARTS,
    RANDOM_REGULAR_MAX_REPAIRS,
    WS_DEGREE_NOT_EVEN,
    WS_DEGREE_TOO_LARGE,
    PC_DEGREE_NOT_DIVISOR,
    PCM_CLIQUE_NOT_DIVISOR,
    PCM_RK_NOT_INTEGRAL,
    PCM_RK_TOO_LARGE,
    REGULAR_ODD_STUBS,
    REGULAR_DEGREE_TOO_LARGE,
    REGULAR_PAIRING_FAILED,
    BASELINE_INVALID_DEGREE,
    UNKNOWN_GENERATOR,
    PROBABILITY_OUT_OF_RANGE,
)
from src.conf.errors import ParameterError, GenerationError
from src.conf.logger import logger
from src.graph.core import Graph, build_from_edges
from src.schemas.generators import GeneratorParams, rk_is_integral

Seed = int | np.random.Generator | None


def _check_probability(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise ParameterError(detail=PROBABILITY_OUT_OF_RANGE)


def _rewire(
    n: int, us: np.ndarray, vs: np.ndarray, r: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Rewire each edge independently with probability ``r``.

    Edges are visited in the given order; a rewired edge ``(u, v)`` becomes ``(u, w)``
    with ``w`` uniform over the vertices that are neither ``u`` nor adjacent to ``u``.
    A vertex adjacent to everything keeps its edge.

    :param n: number of vertices
    :param us: fixed endpoints
    :param vs: endpoints that may be replaced
    :param r: rewiring probability
    :param rng: random generator
    :return: array of shape ``(len(us), 2)``
    """
    us = us.astype(np.int64)
    vs = vs.astype(np.int64).copy()
    chosen = np.flatnonzero(rng.random(us.shape[0]) < r) if r > 0 else []
    if len(chosen) == 0:
        return np.column_stack((us, vs))
    base = np.sort(np.minimum(us, vs) * n + np.maximum(us, vs))
    removed: set[int] = set()
    added: set[int] = set()
    degree = np.bincount(np.concatenate((us, vs)), minlength=n).tolist()

    def key(a: int, b: int) -> int:
        return a * n + b if a < b else b * n + a

    def adjacent(a: int, b: int) -> bool:
        k = key(a, b)
        if k in added:
            return True
        if k in removed:
            return False
        position = int(np.searchsorted(base, k))
        return position < base.shape[0] and int(base[position]) == k

    for e in chosen.tolist():
        u, v = int(us[e]), int(vs[e])
        if degree[u] >= n - 1:
            continue
        while True:
            w = int(rng.integers(n))
            if w != u and not adjacent(u, w):
                break
        old, new = key(u, v), key(u, w)
        if old in added:
            added.discard(old)
        else:
            removed.add(old)
        if new in removed:
            removed.discard(new)
        else:
            added.add(new)
        degree[v] -= 1
        degree[w] += 1
        vs[e] = w
    logger.debug(f"Rewired {len(chosen)} of {us.shape[0]} edges")
    return np.column_stack((us, vs))


def _clique_edges(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(k, 1)
    offsets = np.arange(0, n, k, dtype=np.int64)[:, None]
    return (offsets + rows).ravel(), (offsets + cols).ravel()


def clique_partition(n: int, k: int) -> np.ndarray:
    """
    Clique label of every vertex of a planted community / planted clique graph.

    :param n: number of vertices
    :type n: int
    :param k: clique size
    :type k: int
    :return: array with ``v // k`` at position ``v``
    :rtype: np.ndarray
    """
    if k < 1 or n % k:
        raise ParameterError(detail=PCM_CLIQUE_NOT_DIVISOR)
    return np.arange(n, dtype=np.int64) // k


def watts_strogatz(n: int, d: int, r: float, seed: Seed = None) -> Graph:
    """
    Ring lattice where every vertex links to its ``d`` closest vertices, then each
    edge ``(k, k + l)`` is rewired independently with probability ``r``.

    :param n: number of vertices
    :type n: int
    :param d: even degree of the lattice
    :type d: int
    :param r: rewiring probability
    :type r: float
    :param seed: PRNG seed or generator
    :return: a simple graph with exactly ``n * d / 2`` edges
    :rtype: Graph
    :raise: ParameterError if ``d`` is odd, smaller than 2 or not below ``n``
    """
    if d < 2 or d % 2:
        raise ParameterError(detail=WS_DEGREE_NOT_EVEN)
    if d >= n:
        raise ParameterError(detail=WS_DEGREE_TOO_LARGE)
    _check_probability(r)
    rng = np.random.default_rng(seed)
    half = d // 2
    us = np.repeat(np.arange(n, dtype=np.int64), half)
    vs = (us + np.tile(np.arange(1, half + 1, dtype=np.int64), n)) % n
    graph = build_from_edges(n, _rewire(n, us, vs, r, rng))
    logger.debug(f"Generated WS({n}, {d}, {r}) with {graph.edge_count} edges")
    return graph


def planted_community(n: int, d: int, r: float, seed: Seed = None) -> Graph:
    """
    ``n / d`` disjoint cliques of size ``d`` with every edge rewired as in
    :func:`watts_strogatz`.

    :param n: number of vertices
    :type n: int
    :param d: clique size
    :type d: int
    :param r: rewiring probability
    :type r: float
    :param seed: PRNG seed or generator
    :return: a simple graph with ``n * (d - 1) / 2`` edges
    :rtype: Graph
    :raise: ParameterError if ``d`` does not divide ``n``
    """
    if d < 2 or n % d:
        raise ParameterError(detail=PC_DEGREE_NOT_DIVISOR)
    _check_probability(r)
    rng = np.random.default_rng(seed)
    us, vs = _clique_edges(n, d)
    graph = build_from_edges(n, _rewire(n, us, vs, r, rng))
    logger.debug(f"Generated PC({n}, {d}, {r}) with {graph.edge_count} edges")
    return graph


def _pair_stubs(n: int, d: int, rng: np.random.Generator) -> np.ndarray | None:
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    accepted = np.zeros(0, dtype=np.int64)
    for _ in range(RANDOM_REGULAR_MAX_REPAIRS):
        rng.shuffle(stubs)
        lo = np.minimum(stubs[0::2], stubs[1::2])
        hi = np.maximum(stubs[0::2], stubs[1::2])
        keys = lo * n + hi
        first = np.zeros(keys.shape[0], dtype=bool)
        first[np.unique(keys, return_index=True)[1]] = True
        ok = (lo != hi) & first & ~np.isin(keys, accepted)
        accepted = np.union1d(accepted, keys[ok])
        stubs = np.concatenate((lo[~ok], hi[~ok]))
        if stubs.size == 0:
            return np.column_stack((accepted // n, accepted % n))
    return None


def random_regular(n: int, d: int, seed: Seed = None) -> Graph:
    """
    Random ``d``-regular graph by stub pairing.

    Stubs of conflicting pairs (self-loops, repeated or existing edges) are shuffled
    and paired again; if that keeps failing the whole pairing restarts.

    :param n: number of vertices
    :type n: int
    :param d: degree of every vertex
    :type d: int
    :param seed: PRNG seed or generator
    :return: a ``d``-regular simple graph
    :rtype: Graph
    :raise: ParameterError if ``n * d`` is odd or ``d >= n``
    :raise: GenerationError if pairing fails after the restart bound
    """
    if d < 0 or (d >= n and n > 0):
        raise ParameterError(detail=REGULAR_DEGREE_TOO_LARGE)
    if (n * d) % 2:
        raise ParameterError(detail=REGULAR_ODD_STUBS)
    if d == 0:
        return build_from_edges(n, [])
    rng = np.random.default_rng(seed)
    for attempt in range(RANDOM_REGULAR_MAX_RESTARTS):
        edges = _pair_stubs(n, d, rng)
        if edges is not None:
            logger.debug(f"Paired {n}x{d} stubs after {attempt} restarts")
            return build_from_edges(n, edges)
    raise GenerationError(detail=REGULAR_PAIRING_FAILED)


def planted_clique_model(n: int, k: int, r: float, seed: Seed = None) -> Graph:
    """
    Union of ``n / k`` disjoint ``k``-cliques and a random ``r * k``-regular graph on
    all vertices; edges present in both are merged.

    :param n: number of vertices
    :type n: int
    :param k: clique size
    :type k: int
    :param r: ratio of random degree to clique size
    :type r: float
    :param seed: PRNG seed or generator
    :return: the superimposed graph
    :rtype: Graph
    :raise: ParameterError if ``k`` does not divide ``n`` or ``r * k`` is not an integer below ``n``
    """
    if k < 1 or n % k:
        raise ParameterError(detail=PCM_CLIQUE_NOT_DIVISOR)
    if not rk_is_integral(r, k):
        raise ParameterError(detail=PCM_RK_NOT_INTEGRAL)
    rk = int(round(r * k))
    if rk >= n:
        raise ParameterError(detail=PCM_RK_TOO_LARGE)
    rng = np.random.default_rng(seed)
    us, vs = _clique_edges(n, k)
    regular = random_regular(n, rk, rng).edges()
    edges = np.concatenate((np.column_stack((us, vs)), regular))
    graph = build_from_edges(n, edges)
    logger.debug(
        f"Generated PCM({n}, {k}, {r}): {us.shape[0]} clique + {regular.shape[0]} "
        f"random edges, {graph.edge_count} after merging"
    )
    return graph


def _from_networkx(n: int, graph: nx.Graph) -> Graph:
    return build_from_edges(n, np.array(list(graph.edges()), dtype=np.int64))


def baseline_graph(kind: str, n: int, d: int = 0, seed: int | None = None) -> Graph:
    """
    Baseline families on which contagious networks do not show the studied properties.

    :param kind: ``erdos_renyi`` / ``er``, ``preferential_attachment`` / ``pa`` or ``complete``
    :type kind: str
    :param n: number of vertices
    :type n: int
    :param d: mean degree (ignored for ``complete``)
    :type d: int
    :param seed: PRNG seed
    :type seed: int | None
    :return: the graph
    :rtype: Graph
    :raise: ParameterError on an unknown kind or an invalid degree
    """
    kind = BASELINE_KINDS.get(kind, kind)
    if kind == "complete":
        rows, cols = np.triu_indices(n, 1)
        return build_from_edges(n, np.column_stack((rows, cols)))
    if kind == "erdos_renyi":
        p = d / (n - 1) if n > 1 else 0.0
        if d < 0 or p > 1.0:
            raise ParameterError(detail=BASELINE_INVALID_DEGREE)
        return _from_networkx(n, nx.fast_gnp_random_graph(n, p, seed=seed))
    if kind == "preferential_attachment":
        attach = d // 2
        if d < 2 or d % 2 or attach + 1 > n:
            raise ParameterError(detail=BASELINE_INVALID_DEGREE)
        seed_clique = nx.complete_graph(attach + 1)
        return _from_networkx(
            n, nx.barabasi_albert_graph(n, attach, seed=seed, initial_graph=seed_clique)
        )
    raise ParameterError(detail=f"{UNKNOWN_GENERATOR}: {kind}")


def generate(params: GeneratorParams) -> Graph:
    """
    Build the potential network described by ``params``.

    :param params: generator parameters
    :type params: GeneratorParams
    :return: the generated graph, invariants checked
    :rtype: Graph
    """
    if params.model == MODEL_WS:
        graph = watts_strogatz(params.n, params.d, params.r, params.seed)
    elif params.model == MODEL_PC:
        graph = planted_community(params.n, params.d, params.r, params.seed)
    elif params.model == MODEL_PCM:
        graph = planted_clique_model(params.n, params.k, params.r, params.seed)
    else:
        graph = baseline_graph(params.model, params.n, params.d, params.seed)
    graph.assert_invariants()
    return graph
