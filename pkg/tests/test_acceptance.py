"""
Desk-scale reproductions of the headline behaviours. Deselected by default; run with
``pytest -m slow``.
"""

import networkx as nx
import numpy as np
import pytest

from src.conf.errors import FitUndefinedError
from src.graph.core import VertexSet, build_from_edges, induced_subgraph
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.schemas.metrics import DegreeHistogram
from src.schemas.oracles import OccupancyHistogram, YuleParams
from src.services.cascades import run_with_snapshots
from src.services.conductance import conductance_fraction
from src.services.degrees import degree_distribution, fit_power_law_slope, log_binned
from src.services.diameter import densification_series, diameter, largest_component
from src.services.generators import baseline_graph, watts_strogatz
from src.services.ncp import ncp_dip, ncp_heuristic
from src.services.oracles import exhaustive_min_conductance, pcm_theorem_check, yule_process

pytestmark = pytest.mark.slow

RET = CascadeParams(model=CascadeModel.RET, m=8000, alpha=0.7, beta=0.01)


def _snapshot(g, params, checkpoints, seed):
    result = run_with_snapshots(g, params, SnapshotSchedule(checkpoints=checkpoints), seed)
    assert not result.stalled
    return result.snapshots


def _fit(hist, fit_range=(3, 80)):
    return fit_power_law_slope(log_binned(hist), fit_range, hist)


def _fails_fit(hist):
    try:
        exponent = _fit(hist).exponent
    except FitUndefinedError:
        return True
    return not -1.45 <= exponent <= -0.85


def _dip(graph):
    component, _ = induced_subgraph(graph, largest_component(graph))
    return ncp_dip(ncp_heuristic(component))


def test_heavy_tail_emerges():
    merged = DegreeHistogram()
    for seed in range(10):
        g = watts_strogatz(100_000, 100, 0.1, seed=seed)
        assert _fails_fit(degree_distribution(g))
        (h,) = _snapshot(g, RET, [8000], seed)
        merged = merged.merge(degree_distribution(h.graph))
    assert -1.45 <= _fit(merged).exponent <= -0.85


def test_clique_occupancy_follows_growth_process():
    report = pcm_theorem_check(250_000, 500, 0.2, 2500, runs=50, fit_range=(1, 500))
    assert report.tv_distance < 0.1
    assert -1.45 <= report.cliquish_fit.exponent <= -0.95


def test_growth_process_tail():
    genera = OccupancyHistogram(runs=0)
    for seed in range(10):
        genera = genera.merge(yule_process(YuleParams(alpha_yule=0.5, steps=1_000_000, seed=seed)))
    hist = genera.as_degree_histogram()
    fit = fit_power_law_slope(log_binned(hist), (5, 200), hist)
    assert fit.exponent == pytest.approx(-3.0, abs=0.2)


def test_shrinking_diameter_and_densification():
    checkpoints = [500, 1000, 2000, 4000, 8000, 16000, 32000]
    params = CascadeParams(model=CascadeModel.RET, m=32000, alpha=0.7, beta=0.01)
    shrinking = densifying = 0
    for seed in range(10):
        g = watts_strogatz(100_000, 100, 0.1, seed=seed)
        snapshots = _snapshot(g, params, checkpoints, seed)
        effective = [diameter(s.graph, "sampled:100", seed).effective_diameter_90 for s in snapshots]
        peak = int(np.argmax(effective))
        shrinking += 0 < peak < len(effective) - 1 and all(
            b < a for a, b in zip(effective[peak:], effective[peak + 1 :])
        )
        averages = [average for _, average in densification_series(snapshots)]
        densifying += all(b > a for a, b in zip(averages[1:], averages[2:]))
    assert shrinking >= 8
    assert densifying >= 8


def test_erdos_renyi_stays_sparse():
    g = baseline_graph("er", 100_000, 10, seed=0)
    params = CascadeParams(model=CascadeModel.RET, m=10_000, alpha=0.7, beta=0.01)
    snapshots = _snapshot(g, params, [1000, 4000, 10_000], 0)
    assert all(average < 2.2 for _, average in densification_series(snapshots))


def test_profile_dip_and_collapse():
    params = CascadeParams(model=CascadeModel.RET, m=8333, alpha=0.7, beta=0.01)
    g = watts_strogatz(100_000, 100, 0.1, seed=0)
    (h,) = _snapshot(g, params, [8333], 0)
    assert _dip(h.graph).has_dip()
    assert _dip(g).is_flat()

    collapsed = watts_strogatz(100_000, 100, 0.35, seed=0)
    (h,) = _snapshot(collapsed, params, [8333], 0)
    assert not _dip(h.graph).has_dip()


def test_heuristic_never_beats_enumeration():
    rng = np.random.default_rng(0)
    for i in range(200):
        n = int(rng.integers(6, 15))
        nxg = nx.gnp_random_graph(n, float(rng.uniform(0.2, 0.6)), seed=i)
        g = build_from_edges(n, list(nxg.edges()))
        if g.edge_count == 0:
            continue
        for b in ncp_heuristic(g).bins:
            exact, witness = exhaustive_min_conductance(g, b.witness_size)
            assert conductance_fraction(g, witness) == exact
            assert conductance_fraction(g, VertexSet(n, b.witness)) >= exact


@pytest.mark.parametrize("kind", ["er", "pa"])
def test_baselines_show_neither_signature(kind):
    merged = DegreeHistogram()
    for seed in range(3):
        g = baseline_graph(kind, 100_000, 10, seed=seed)
        (h,) = _snapshot(g, RET, [8000], seed)
        merged = merged.merge(degree_distribution(h.graph))
    assert _fails_fit(merged)
    assert not _dip(h.graph).has_dip()
