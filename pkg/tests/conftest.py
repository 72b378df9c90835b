import numpy as np
import pytest

from cutofflab import Chain, FamilySpec, generate


def ehrenfest(n: int) -> Chain:
    idx = np.arange(n + 1, dtype=float)
    return Chain.from_rates(1.0 - idx / n, idx / n, np.zeros(n + 1))


def two_state(p: float = 0.5, q: float = 0.5) -> Chain:
    return Chain.from_rates([p, 0.0], [0.0, q], [1.0 - p, 1.0 - q])


def flip() -> Chain:
    # deterministic swap of two states; periodic, reversible, eigenvalue -1
    return Chain.from_rates([1.0, 0.0], [0.0, 1.0], [0.0, 0.0])


def rank_one(pi) -> Chain:
    pi = np.asarray(pi, dtype=float)
    return Chain.from_dense(np.tile(pi, (pi.size, 1)))


def random_bd(seed: int, n: int) -> Chain:
    return generate(FamilySpec("random_bd", (max(n, 2),), seed=seed), n)


@pytest.fixture(scope="session")
def small_corpus():
    """A few birth-death chains of varied size, reused across property tests."""
    chains = [random_bd(seed, 4 + 7 * seed) for seed in range(5)]
    chains.append(ehrenfest(8))
    chains.append(two_state(0.3, 0.6))
    return chains
