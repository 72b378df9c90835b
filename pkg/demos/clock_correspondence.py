#!/usr/bin/env python3
"""Three clocks, one chain: discrete, delta-lazy, continuous.

The lazy kernel is a binomial mixture of the base powers, and running the
lazy chain for time t is the same as running the continuous semigroup of the
base chain for (1 - delta) t.  Both identities are checked numerically here,
along with the contraction factor beta that controls lazy decay.
"""

import math

import numpy as np

from cutofflab import FamilySpec, beta_delta, continuous_distribution, eigen_summary, generate

chain = generate(FamilySpec("random_bd", (10,), seed=4), 10)
n = chain.num_states
delta = 0.3

print(f"random birth-death chain on {n} states, delta = {delta}")

# lazy power as a binomial mixture of base powers
kernel = chain.dense_kernel
lazy_kernel = chain.lazy(delta).dense_kernel
m = 12
direct = np.linalg.matrix_power(lazy_kernel, m)
mixture = np.zeros_like(kernel)
power = np.eye(n)
for i in range(m + 1):
    mixture += math.comb(m, i) * delta ** (m - i) * (1 - delta) ** i * power
    power = power @ kernel
print(f"lazy^{m} vs binomial mixture: max abs gap {np.abs(direct - mixture).max():.3e}")

# lazy semigroup time t == base semigroup time (1-delta) t
start = np.zeros(n)
start[0] = 1.0
for t in (1.0, 5.0, 25.0):
    slow = continuous_distribution(chain.lazy(delta), start, t)
    fast = continuous_distribution(chain, start, (1 - delta) * t)
    print(f"t={t:5.1f}: |lazy-clock - rescaled-base| = {np.abs(slow - fast).max():.3e}")

# beta and the gap sandwich
summary = eigen_summary(chain)
print(f"\ngap = {summary.gap:.6f}")
for d in (0.1, 0.3, 0.5, 0.7, 0.9):
    beta = beta_delta(summary, d)
    low = min(d, 1 - d) * summary.gap
    high = (1 - d) * summary.gap
    print(f"delta={d:.1f}: 1-beta={1 - beta:.6f} in [{low:.6f}, {high:.6f}]")
