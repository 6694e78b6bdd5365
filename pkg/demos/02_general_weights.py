"""Arbitrary weight sequences: envelopes, truncated problems, and scan
statuses.

A ListWeight of length L poses the L-truncated problem (rows and columns run
over 1..L), which is evaluated exactly.  Mixed and unmatched power problems
go through the scanning engine, which reports how much to trust the
truncated supremum.
"""

import numpy as np

from cesaro_copson import (Cone, ListWeight, PowerWeight, TruncConfig,
                           dist_cesaro_identity, envelope_down, envelope_up,
                           norm_cesaro, norm_copson)

print("=== Envelopes: the greatest monotone minorants ===\n")
u = ListWeight((3.0, 1.0, 2.0, 0.5, 4.0))
print("u          =", list(u.values))
print("u_down     =", list(envelope_down(u, 5)), " (running minimum)")
print("u_up       =", list(envelope_up(u, 5)), " (suffix minimum)")

print("\nOn monotone cones only the matching envelope matters:")
for cone in (Cone.ALL, Cone.NONNEG, Cone.NONINCR, Cone.NONDECR):
    r = norm_cesaro(u, ListWeight((1.0,) * 5), cone)
    print(f"  averaging-operator norm on {cone.value:8}: {r.value:.6f}"
          f"  [{r.status.value}]")

print("\n=== Exact truncated problems vs scanned infinite problems ===\n")
rng = np.random.default_rng(5)
w = ListWeight(tuple(rng.uniform(0.2, 1.0, 12)))
r = norm_copson(w, w, Cone.ALL)
print(f"copson norm, random 12-term weights: {r.value:.10f} "
      f"[{r.status.value}, rows scanned = {r.n_used}]")

# unmatched power pair: no closed form, honest truncation statuses
u_pow, v_pow = PowerWeight(0.5), PowerWeight(0.3)
for n_max in (10 ** 3, 10 ** 5):
    r = norm_cesaro(u_pow, v_pow, Cone.ALL, TruncConfig(n_max=n_max))
    print(f"unmatched powers, n_max = {n_max:>7}: value = {r.value:.10f} "
          f"[{r.status.value}, residual ~ {r.residual_estimate:.2e}]")

# matched power pair near the divergence edge: the monotone certificate
# closes the gap a raw scan would leave (convergence is O(n**(alpha-1)))
r = norm_cesaro(PowerWeight(0.99), PowerWeight(0.99), Cone.ALL)
print(f"matched alpha = 0.99: value = {r.value:.6f} [{r.status.value}]")

print("\n=== The open problem is reported, not guessed ===\n")
r = dist_cesaro_identity(w, w, Cone.NONINCR)
print(f"C - I on nonincreasing cone (fine):   {r.value:.10f} [{r.status.value}]")
from cesaro_copson import dist_copson_identity
r = dist_copson_identity(w, w, Cone.NONINCR)
print(f"C* - I on nonincreasing cone (open):  value withheld [{r.status.value}]")
