"""The verification story: every formula is checked against paths that never
consult it.

1. The two matrix identities behind the reductions hold to machine precision
   on random finitely supported sequences.
2. Extremal witnesses reproduce each formula exactly on truncated problems
   and climb to the closed forms on infinite ones.
3. Randomized cone search stays below the formula, as a best constant must.
"""

import numpy as np

from cesaro_copson import (Cone, ListWeight, OpKind, PowerWeight, SeqWindow,
                           check_identity_first, check_identity_second,
                           extremal_lower_bound, norm_cesaro, random_lower_bound,
                           verify)

print("=== The two operator identities ===\n")
rng = np.random.default_rng(3)
worst1 = worst2 = 0.0
for _ in range(500):
    x = SeqWindow(int(rng.integers(1, 6)),
                  tuple(rng.uniform(-1, 1, int(rng.integers(1, 40)))))
    worst1 = max(worst1, check_identity_first(x, 50))
    worst2 = max(worst2, check_identity_second(x, 50))
print(f"(C - S*) C* x = C x    worst deviation over 500 windows: {worst1:.2e}")
print(f"(C* - S) D E x = C* x  worst deviation over 500 windows: {worst2:.2e}")

print("\n=== Witnesses vs formulas on a truncated problem ===\n")
u = ListWeight(tuple(rng.uniform(0.0, 1.0, 15)))
v = ListWeight(tuple(rng.uniform(0.0, 1.0, 15)))
for kind in (OpKind.C, OpKind.CSTAR_MINUS_I, OpKind.CSTARSD):
    for cone in (Cone.ALL, Cone.NONNEG):
        rep = verify(kind, u, v, cone, trials=400, seed=7)
        print(f"  {kind.value:>24} on {cone.value:6}: formula {rep.formula_value:.9f}"
              f" = witness {rep.extremal_value:.9f}"
              f" >= search {rep.random_best:.9f}  -> {'ok' if rep.passed else 'BUG'}")

print("\n=== Climbing to the closed form on the infinite problem ===\n")
u_pow = PowerWeight(0.5)
target = norm_cesaro(u_pow, u_pow, Cone.ALL).value
print(f"averaging operator at alpha = 0.5: closed form = {target}")
for N in (10, 10 ** 3, 10 ** 6):
    e = extremal_lower_bound(OpKind.C, u_pow, u_pow, Cone.ALL, N)
    print(f"  witness window N = {N:>8}: {e:.9f}")
r = random_lower_bound(OpKind.C, u_pow, u_pow, Cone.ALL, 10 ** 4, 1000, 42)
print(f"  randomized search (1000 trials): {r:.9f}  (a sanity bound only)")
