import numpy as np
from pydantic import BaseModel, Field

from src.conf.constants import (
    NCP_BIN_RATIO,
    NCP_SEED_COUNT,
    NCP_TELEPORTS,
    NCP_PUSH_TOLERANCE,
    NCP_MAX_WHISKER_UNIONS,
    NCP_DIP_FACTOR,
    NCP_FLAT_FACTOR,
)


class DegreeHistogram(BaseModel):
    """
    Number of vertices of every degree.

    :param counts: degree -> number of vertices with that degree
    :type counts: dict[int, int]
    :param node_count: number of vertices
    :type node_count: int
    :param total_degree: sum of all degrees, twice the edge count
    :type total_degree: int
    """

    counts: dict[int, int] = Field(default_factory=dict)
    node_count: int = 0
    total_degree: int = 0

    @classmethod
    def from_degrees(cls, degrees: np.ndarray) -> "DegreeHistogram":
        tally = np.bincount(np.asarray(degrees, dtype=np.int64))
        present = np.flatnonzero(tally)
        return cls(
            counts={int(d): int(tally[d]) for d in present},
            node_count=int(tally.sum()),
            total_degree=int(np.dot(present, tally[present])),
        )

    def merge(self, other: "DegreeHistogram") -> "DegreeHistogram":
        counts = dict(self.counts)
        for degree, count in other.counts.items():
            counts[degree] = counts.get(degree, 0) + count
        return DegreeHistogram(
            counts=counts,
            node_count=self.node_count + other.node_count,
            total_degree=self.total_degree + other.total_degree,
        )

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Degrees in increasing order with their counts.

        :return: degrees and counts
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        degrees = np.array(sorted(self.counts), dtype=np.int64)
        counts = np.array([self.counts[d] for d in degrees.tolist()], dtype=np.int64)
        return degrees, counts

    @property
    def distinct_positive(self) -> int:
        return sum(1 for d in self.counts if d > 0)


class LogBinPoint(BaseModel):
    """
    One logarithmic bin ``[lo, hi)`` of a histogram.
    """

    lo: int
    hi: int
    center: float
    count: int
    density: float


class SlopeFit(BaseModel):
    """
    Power-law slope of a log-binned histogram.

    :param exponent: least-squares slope of log-density on log-degree (negative for a decaying tail)
    :type exponent: float
    :param x_min: lower end of the fit range
    :type x_min: float
    :param x_max: upper end of the fit range
    :type x_max: float
    :param residual: root mean square residual in log10 units
    :type residual: float
    :param r_squared: coefficient of determination
    :type r_squared: float
    :param points: number of bins used
    :type points: int
    :param intercept: log10 intercept of the fitted line
    :type intercept: float
    :param method: fitting method tag
    :type method: str
    :param mle_exponent: discrete maximum-likelihood exponent over raw values >= x_min
    :type mle_exponent: float | None
    """

    exponent: float
    x_min: float = Field(..., ge=1)
    x_max: float
    residual: float
    r_squared: float
    points: int = Field(..., ge=3)
    intercept: float
    method: str = "least_squares_log_binned"
    mle_exponent: float | None = None

    def guideline(self, x: np.ndarray) -> np.ndarray:
        """
        Fitted line evaluated at ``x``.

        :param x: abscissae
        :type x: np.ndarray
        :return: ``10**intercept * x**exponent``
        :rtype: np.ndarray
        """
        return np.power(10.0, self.intercept) * np.power(np.asarray(x, float), self.exponent)


class DiameterReport(BaseModel):
    """
    Diameter and 90% effective diameter of the largest connected component.
    """

    exact: bool
    diameter: int
    effective_diameter_90: float
    sample_size: int
    component_size: int


class NcpConfig(BaseModel):
    """
    Parameters of the network community profile heuristic.

    :param seed_count: number of random seed vertices for the local-spectral sweep
    :type seed_count: int
    :param teleports: teleport probabilities of the personalized ranking vectors
    :type teleports: list[float]
    :param bin_ratio: multiplicative width of the size bins
    :type bin_ratio: float
    :param tolerance: push tolerance per unit degree
    :type tolerance: float
    :param max_whisker_unions: number of whisker unions to evaluate
    :type max_whisker_unions: int
    :param seed: PRNG seed used to pick seed vertices
    :type seed: int
    """

    seed_count: int = Field(NCP_SEED_COUNT, ge=0)
    teleports: list[float] = Field(default_factory=lambda: list(NCP_TELEPORTS))
    bin_ratio: float = Field(NCP_BIN_RATIO, gt=1.0)
    tolerance: float = Field(NCP_PUSH_TOLERANCE, gt=0.0)
    max_whisker_unions: int = Field(NCP_MAX_WHISKER_UNIONS, ge=0)
    seed: int = 0


class NcpBin(BaseModel):
    """
    Best set found for the sizes ``[lo, hi]``; ``conductance`` is ``conductance(g, witness)``.
    """

    lo: int
    hi: int
    conductance: float = Field(..., ge=0.0, le=1.0)
    witness: list[int]
    method: str

    @property
    def witness_size(self) -> int:
        return len(self.witness)


class NcpCurve(BaseModel):
    bins: list[NcpBin]
    bin_ratio: float
    node_count: int
    disconnected: bool = False
    scope: str = "whole"


class NcpDip(BaseModel):
    """
    Shape summary of a network community profile.

    :param min_size: lower size of the bin with the smallest conductance
    :type min_size: int
    :param min_value: the smallest conductance
    :type min_value: float
    :param small_ratio: value of the size-2 bin divided by the minimum
    :type small_ratio: float
    :param large_ratio: smallest value among the largest bins divided by the minimum
    :type large_ratio: float
    :param spread: largest over smallest bin value
    :type spread: float
    """

    min_size: int
    min_value: float
    small_ratio: float
    large_ratio: float
    spread: float

    def has_dip(
        self, factor: float = NCP_DIP_FACTOR, size_range: tuple[int, int] = (30, 300)
    ) -> bool:
        return (
            size_range[0] <= self.min_size <= size_range[1]
            and self.small_ratio >= factor
            and self.large_ratio >= factor
        )

    def is_flat(self, factor: float = NCP_FLAT_FACTOR) -> bool:
        return self.spread <= factor
