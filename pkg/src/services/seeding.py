import numpy as np


def run_seed(base_seed: int, index: int) -> int:
    return base_seed + index


def spawn_seeds(seed: int, count: int = 2) -> list[int]:
    """
    Independent integer seeds derived from ``seed`` through ``numpy.random.SeedSequence``.

    The first child seeds the generator, the second the cascade.

    :param seed: run seed
    :type seed: int
    :param count: number of child seeds
    :type count: int
    :return: child seeds
    :rtype: list[int]
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]
