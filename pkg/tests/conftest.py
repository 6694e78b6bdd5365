import numpy as np
import pytest

from cesaro_copson.weights import ListWeight


def random_list_weight(rng: np.random.Generator, L: int,
                       zero_frac: float = 0.1) -> ListWeight:
    vals = rng.uniform(0.0, 1.0, L)
    vals[rng.uniform(0.0, 1.0, L) < zero_frac] = 0.0
    return ListWeight(tuple(vals))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
