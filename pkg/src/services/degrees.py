"""
Degree distributions, logarithmic binning and power-law slope fits.
"""

import math

import networkx as nx
import numpy as np
from scipy import optimize, special, stats

from src.conf.constants import (
    LOG_BIN_RATIO,
    LOG_BIN_BAD_RATIO,
    FIT_TOO_FEW_POINTS,
    FIT_SINGLE_DEGREE,
    FIT_BAD_RANGE,
)
from src.conf.errors import FitUndefinedError, ParameterError
from src.conf.logger import logger
from src.graph.core import Graph
from src.schemas.metrics import DegreeHistogram, LogBinPoint, SlopeFit


def degree_distribution(g: Graph) -> DegreeHistogram:
    """
    Histogram of the vertex degrees of ``g``.

    :param g: the graph
    :type g: Graph
    :return: histogram with ``sum(counts) == n`` and ``sum(d * count) == 2|E|``
    :rtype: DegreeHistogram
    """
    return DegreeHistogram.from_degrees(g.degrees)


def log_bin_edges(largest: int, ratio: float = LOG_BIN_RATIO) -> np.ndarray:
    """
    Integer bin boundaries ``1 = e0 < e1 < ...`` with ``e_{i+1} = max(e_i + 1, ceil(e_i * ratio))``
    covering ``[1, largest]``.

    :param largest: largest value to cover
    :type largest: int
    :param ratio: multiplicative bin width
    :type ratio: float
    :return: boundaries; bin ``i`` holds ``[e_i, e_{i+1})``
    :rtype: np.ndarray
    """
    if ratio <= 1:
        raise ParameterError(detail=LOG_BIN_BAD_RATIO)
    edges = [1]
    while edges[-1] <= largest:
        edges.append(max(edges[-1] + 1, math.ceil(edges[-1] * ratio)))
    return np.array(edges, dtype=np.int64)


def log_binned(hist: DegreeHistogram, ratio: float = LOG_BIN_RATIO) -> list[LogBinPoint]:
    """
    Logarithmic binning of the positive degrees; empty bins are dropped.

    :param hist: degree histogram
    :type hist: DegreeHistogram
    :param ratio: multiplicative bin width, greater than 1
    :type ratio: float
    :return: points with the geometric bin center and the count per unit degree
    :rtype: list[LogBinPoint]
    :raise: ParameterError if ``ratio <= 1``
    """
    degrees, counts = hist.arrays()
    positive = degrees > 0
    degrees, counts = degrees[positive], counts[positive]
    if degrees.size == 0:
        if ratio <= 1:
            raise ParameterError(detail=LOG_BIN_BAD_RATIO)
        return []
    edges = log_bin_edges(int(degrees[-1]), ratio)
    totals = np.bincount(
        np.searchsorted(edges, degrees, side="right") - 1,
        weights=counts,
        minlength=edges.shape[0] - 1,
    )
    points = []
    for i in np.flatnonzero(totals).tolist():
        lo, hi = int(edges[i]), int(edges[i + 1])
        points.append(
            LogBinPoint(
                lo=lo,
                hi=hi,
                center=math.sqrt(lo * (hi - 1)),
                count=int(totals[i]),
                density=float(totals[i]) / (hi - lo),
            )
        )
    return points


def _discrete_mle(values: np.ndarray, x_min: int) -> float | None:
    tail = values[values >= x_min]
    if tail.size < 2 or np.all(tail == tail[0]):
        return None
    log_sum = float(np.log(tail).sum())
    size = tail.size

    def negative_log_likelihood(a: float) -> float:
        return size * math.log(special.zeta(a, x_min)) + a * log_sum

    result = optimize.minimize_scalar(
        negative_log_likelihood, bounds=(1.0001, 10.0), method="bounded"
    )
    return -float(result.x)


def fit_power_law_slope(
    points: list[LogBinPoint],
    fit_range: tuple[float, float],
    hist: DegreeHistogram | None = None,
) -> SlopeFit:
    """
    Least-squares slope of ``log10(density)`` against ``log10(center)`` over the bins whose
    center lies in ``fit_range``.

    When the raw histogram is given, a discrete maximum-likelihood exponent over the values
    ``>= x_min`` is reported as well.

    :param points: log-binned histogram
    :type points: list[LogBinPoint]
    :param fit_range: ``(x_min, x_max)``
    :type fit_range: tuple[float, float]
    :param hist: raw histogram the points were binned from
    :type hist: DegreeHistogram | None
    :return: the fit
    :rtype: SlopeFit
    :raise: ParameterError on an invalid range
    :raise: FitUndefinedError for a single distinct degree or fewer than 3 usable bins
    """
    x_min, x_max = fit_range
    if not 1 <= x_min < x_max:
        raise ParameterError(detail=FIT_BAD_RANGE)
    if hist is not None and hist.distinct_positive < 2:
        raise FitUndefinedError(detail=FIT_SINGLE_DEGREE)
    selected = [p for p in points if x_min <= p.center <= x_max and p.density > 0]
    if len({p.center for p in points if p.density > 0}) < 2:
        raise FitUndefinedError(detail=FIT_SINGLE_DEGREE)
    if len(selected) < 3:
        raise FitUndefinedError(detail=FIT_TOO_FEW_POINTS)

    x = np.log10([p.center for p in selected])
    y = np.log10([p.density for p in selected])
    line = stats.linregress(x, y)
    residuals = y - (line.intercept + line.slope * x)

    mle = None
    if hist is not None:
        degrees, counts = hist.arrays()
        mle = _discrete_mle(np.repeat(degrees, counts), max(1, math.ceil(x_min)))

    fit = SlopeFit(
        exponent=float(line.slope),
        x_min=x_min,
        x_max=x_max,
        residual=float(np.sqrt(np.mean(residuals**2))),
        r_squared=float(line.rvalue**2),
        points=len(selected),
        intercept=float(line.intercept),
        mle_exponent=mle,
    )
    logger.debug(f"Slope {fit.exponent:.3f} over {fit.points} bins (MLE {mle})")
    return fit


def average_clustering(g: Graph) -> float:
    """
    Mean local clustering coefficient.

    :param g: the graph
    :type g: Graph
    :return: average clustering, 0 for an empty graph
    :rtype: float
    """
    if g.node_count == 0:
        return 0.0
    return float(nx.average_clustering(g.to_networkx()))
