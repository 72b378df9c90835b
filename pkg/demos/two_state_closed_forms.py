#!/usr/bin/env python3
"""Everything is explicit for a two-state chain; check the library against it.

With birth rate p at state 0 and death rate q at state 1, the only nonzero
eigenvalue of I - K is p + q.  Worst-case TV decays as
(1 - min pi) exp(-(p+q) t), separation as exp(-(p+q) t), and the TV mixing
time is log((1 - min pi)/eps) / (p + q).
"""

import math

from cutofflab import (
    Chain,
    DistanceQuery,
    distance,
    eigen_summary,
    mixing_time,
    sst_tail,
)

p, q = 0.3, 0.6
chain = Chain.from_rates([p, 0.0], [0.0, q], [1.0 - p, 1.0 - q])
rate = p + q

print(f"two-state chain, p={p}, q={q}")
print(f"stationary law: {chain.stationary}")

summary = eigen_summary(chain)
print(f"nonzero eigenvalue {summary.eigenvalues[0]:.12f}  (expected {rate})")

amp = 1.0 - chain.stationary.min()
query = DistanceQuery("continuous", "tv")
for t in (0.5, 1.0, 3.0):
    measured = distance(chain, query, t)
    exact = amp * math.exp(-rate * t)
    print(f"d({t}) = {measured:.12f}   closed form {exact:.12f}")

for eps in (0.25, 0.05):
    measured = mixing_time(chain, eps, query)
    exact = math.log(amp / eps) / rate
    print(f"T({eps}) = {measured:.8f}   closed form {exact:.8f}")

# the strong stationary time here is a single exponential with rate p+q
for t in (1.0, 2.5):
    print(f"P(S > {t}) = {sst_tail(chain, t):.12f}   exp(-{rate}*{t}) = {math.exp(-rate * t):.12f}")
