from typing import Literal

from pydantic import BaseModel, Field, model_validator

from src.conf.constants import (
    MODEL_WS,
    MODEL_PC,
    MODEL_PCM,
    MODEL_ER,
    MODEL_PA,
    MODEL_COMPLETE,
    DEFAULT_REWIRING,
)


def rk_is_integral(r: float, k: int) -> bool:
    """
    Check that ``r * k`` is a non-negative integer up to float noise.

    :param r: rewiring / random-degree ratio
    :param k: clique size
    :return: True if ``r * k`` is integral and non-negative
    """
    product = r * k
    return product >= 0 and abs(product - round(product)) < 1e-9


class GeneratorParams(BaseModel):
    """
    Parameters of a potential-network generator.

    :param model: generator family (ws, pc, pcm, er, pa, complete)
    :type model: str
    :param n: number of vertices
    :type n: int
    :param d: mean degree (clique size for pc)
    :type d: int
    :param r: rewiring probability, or random-degree ratio for pcm
    :type r: float
    :param k: clique size (pcm only)
    :type k: int | None
    :param seed: PRNG seed
    :type seed: int
    """

    model: Literal["ws", "pc", "pcm", "er", "pa", "complete"]
    n: int = Field(..., ge=1)
    d: int = Field(0, ge=0)
    r: float = Field(DEFAULT_REWIRING, ge=0.0, le=1.0)
    k: int | None = Field(None, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def validate_model_constraints(self) -> "GeneratorParams":
        """
        Check the family-specific preconditions, reporting all violations at once.

        :return: the validated parameters
        :raise: ValueError listing every violated precondition
        """
        problems = []
        n, d = self.n, self.d
        if self.model == MODEL_WS:
            if d < 2 or d % 2:
                problems.append("ws requires an even d >= 2")
            if d >= n:
                problems.append("ws requires d < n")
        elif self.model == MODEL_PC:
            if d < 2 or n % d:
                problems.append("pc requires d >= 2 dividing n")
        elif self.model == MODEL_PCM:
            if self.k is None:
                problems.append("pcm requires k")
            else:
                if n % self.k:
                    problems.append("pcm requires k dividing n")
                if not rk_is_integral(self.r, self.k):
                    problems.append("pcm requires r*k to be a non-negative integer")
                elif round(self.r * self.k) >= n:
                    problems.append("pcm requires r*k < n")
                elif (n * round(self.r * self.k)) % 2:
                    problems.append("pcm requires n*r*k to be even")
        elif self.model == MODEL_ER:
            if n > 1 and d > n - 1:
                problems.append("er requires d <= n - 1")
        elif self.model == MODEL_PA:
            if d < 2 or d % 2:
                problems.append("pa requires an even d >= 2")
            elif d // 2 + 1 > n:
                problems.append("pa requires d/2 + 1 <= n")
        if problems:
            raise ValueError("; ".join(problems))
        return self

    @property
    def uses_rewiring(self) -> bool:
        return self.model in (MODEL_WS, MODEL_PC, MODEL_PCM)

    @property
    def is_baseline(self) -> bool:
        return self.model in (MODEL_ER, MODEL_PA, MODEL_COMPLETE)
