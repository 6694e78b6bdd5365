"""Certified special sums: every tail comes with an error bound.

The closed forms need zeta values, power tails, and the shifted tails
M_alpha = sum k**(-alpha)/(k+1).  Each evaluation returns a certificate
(value, error_bound) from an Euler-Maclaurin expansion whose remainder is
bounded by the first omitted term.
"""

import math

from cesaro_copson import hurwitz_tail, m_alpha, shifted_tail, zeta

print("=== Riemann zeta with certificates ===\n")
for s in (1.1, 2.0, 4.0):
    cv = zeta(s)
    print(f"  zeta({s}) = {cv.value:.15f}   +- {cv.error_bound:.1e}")
print(f"\n  check: zeta(2) - pi^2/6 = {zeta(2.0).value - math.pi ** 2 / 6:+.1e}")
print(f"  check: zeta(4) - pi^4/90 = {zeta(4.0).value - math.pi ** 4 / 90:+.1e}")

print("\n=== Power tails ===\n")
for (s, n) in ((2.0, 10), (1.01, 1000)):
    cv = hurwitz_tail(s, n)
    lo = n ** (1 - s) / (s - 1)
    hi = (n - 1) ** (1 - s) / (s - 1)
    print(f"  sum_(k>={n}) k^-{s} = {cv.value:.15f} +- {cv.error_bound:.1e}"
          f"   (integral bracket [{lo:.6f}, {hi:.6f}])")

print("\n=== Shifted tails and M_alpha ===\n")
print("  telescoping:      sum 1/(k(k+1))        =",
      f"{shifted_tail(1.0, 1).value:.15f}  (exactly 1)")
print("  partial fractions: M_2 = zeta(2) - 1     =",
      f"{m_alpha(2.0).value:.15f}")
print("  partial fractions: M_3 = z(3) - z(2) + 1 =",
      f"{m_alpha(3.0).value:.15f}")
expected = zeta(3.0).value - zeta(2.0).value + 1.0
print(f"  cross-check gap: {m_alpha(3.0).value - expected:+.1e}")
