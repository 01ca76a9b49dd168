from pydantic import BaseModel, Field

from src.schemas.metrics import DegreeHistogram, SlopeFit


class YuleParams(BaseModel):
    """
    Parameters of the species/genus growth process.

    :param alpha_yule: probability that a new species founds a new genus
    :type alpha_yule: float
    :param steps: total number of species created
    :type steps: int
    :param seed: PRNG seed
    :type seed: int
    """

    alpha_yule: float = Field(..., gt=0.0, le=1.0)
    steps: int = Field(..., ge=1)
    seed: int = 0


class OccupancyHistogram(BaseModel):
    """
    Number of groups (cliques or genera) holding each count of members.

    :param counts: members per group -> number of groups
    :type counts: dict[int, int]
    :param runs: number of runs merged into this histogram
    :type runs: int
    """

    counts: dict[int, int] = Field(default_factory=dict)
    runs: int = 1

    @property
    def total_members(self) -> int:
        return sum(size * groups for size, groups in self.counts.items())

    @property
    def groups(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "OccupancyHistogram") -> "OccupancyHistogram":
        counts = dict(self.counts)
        for size, groups in other.counts.items():
            counts[size] = counts.get(size, 0) + groups
        return OccupancyHistogram(counts=counts, runs=self.runs + other.runs)

    def pmf(self) -> dict[int, float]:
        total = self.groups
        if total == 0:
            return {}
        return {size: groups / total for size, groups in sorted(self.counts.items())}

    def as_degree_histogram(self) -> DegreeHistogram:
        """
        View group sizes as a degree histogram so it can be log-binned and fitted.

        :return: histogram of group sizes
        :rtype: DegreeHistogram
        """
        return DegreeHistogram(
            counts=dict(self.counts),
            node_count=self.groups,
            total_degree=self.total_members,
        )


class TheoremRun(BaseModel):
    """
    Outcome of one RETIG run on a planted clique graph.
    """

    occupancy: OccupancyHistogram
    cliquish: DegreeHistogram
    total: DegreeHistogram
    stalled: bool = False


class TheoremReport(BaseModel):
    """
    Aggregated comparison of clique occupancy with the growth-process prediction.

    :param yule_alpha: new-genus probability ``r / (1 + r)``
    :type yule_alpha: float
    :param tv_distance: total-variation distance between occupancy and genus-size laws
    :type tv_distance: float
    :param predicted_exponent: ``-1 - r``
    :type predicted_exponent: float
    :param cliquish_fit: fit of the infected clique-mate counts, if defined
    :type cliquish_fit: SlopeFit | None
    :param total_fit: fit of the full degrees in the contagious network, if defined
    :type total_fit: SlopeFit | None
    """

    n: int
    k: int
    r: float
    m: int
    runs: int
    stalled_runs: int = 0
    yule_alpha: float
    tv_distance: float
    predicted_exponent: float
    occupancy: OccupancyHistogram
    genus_sizes: OccupancyHistogram
    cliquish: DegreeHistogram
    total: DegreeHistogram
    cliquish_fit: SlopeFit | None = None
    total_fit: SlopeFit | None = None
