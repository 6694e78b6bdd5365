"""Closed-form branch tables for power weights u_k = k**(-a), v_n = n**a.

Walks the six branch tables and shows the one genuinely delicate case: the
distance of the averaging operator to the identity on the nonincreasing
cone, where the maximising row jumps along the breakpoint sequence s_m as
the exponent crosses each threshold.
"""

import numpy as np

from cesaro_copson import (Cone, breakpoint_s, cesaro_minus_id_power,
                           cesaro_power, copson_minus_id_power, copson_power,
                           two_op_cc_power, two_op_cstarc_power)

print("=== Operator norms, distances, and two-operator constants ===\n")

header = f"{'alpha':>6} | {'cesaro':>10} {'copson':>10} {'C-I':>10} {'C*-I':>10}"
print(header)
print("-" * len(header))
for alpha in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 0.9):
    row = [
        cesaro_power(alpha, Cone.ALL).value,
        copson_power(alpha, Cone.ALL).value,
        cesaro_minus_id_power(alpha, Cone.ALL).value,
        copson_minus_id_power(alpha, Cone.ALL).value,
    ]
    cells = " ".join(f"{v:10.5f}" if np.isfinite(v) else f"{'inf':>10}" for v in row)
    print(f"{alpha:6.2f} | {cells}")

print("\nEach value names its branch:")
r = cesaro_power(0.5, Cone.ALL)
print(f"  cesaro(0.5, all) = {r.value}  [{r.case_label}]")
r = copson_power(1.0, Cone.ALL)
print(f"  copson(1.0, all) = {r.value:.12f}  [{r.case_label}, zeta at {r.zeta_arg}]")
r = two_op_cstarc_power(2.0, Cone.ALL)
print(f"  C* vs C (2.0, all) = {r.value:.12f}  [{r.case_label}, "
      f"M_alpha = {r.m_alpha_value:.12f}]")

print("\n=== Breakpoints: the nonincreasing cone of C - I for alpha < 0 ===\n")
print("s_m = 1 + log(1 - 1/m)/log(1 + 1/m) select which integer maximises")
print("g(n) = n**(alpha-1) (n-1); the norm is g(m+1) on (s_m, s_{m+1}].\n")
for m in range(2, 7):
    print(f"  s_{m} = {breakpoint_s(m):+.6f}")

print()
n = np.arange(1, 10 ** 5 + 1, dtype=float)
for alpha in (-2.0, -0.6, -0.3, -0.1):
    r = cesaro_minus_id_power(alpha, Cone.NONINCR)
    g = n ** (alpha - 1.0) * (n - 1.0)
    print(f"  alpha = {alpha:5.2f}: m = {r.m_breakpoint:2d}, "
          f"value = {r.value:.12f}, brute-force argmax n = {np.argmax(g) + 1}")

print("\n=== Two-operator best constants ===\n")
for alpha in (-1.0, 0.5, 2.0):
    cc = two_op_cc_power(alpha, Cone.ALL)
    cs = two_op_cstarc_power(alpha, Cone.ALL)
    fmt = lambda v: f"{v:.8f}" if np.isfinite(v) else "inf"
    print(f"  alpha = {alpha:5.2f}:  ||Cx|| <= {fmt(cc.value)} ||C*x||,   "
          f"||C*x|| <= {fmt(cs.value)} ||Cx||")
