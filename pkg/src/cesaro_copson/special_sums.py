"""Certified evaluation of the special sums the closed forms need.

All quantities are tails of completely monotone terms, evaluated by direct
summation up to a cut N plus an Euler-Maclaurin correction whose remainder is
bounded by the first omitted term (valid because x**(-s) is completely
monotone for s > 0, so the E-M remainder alternates).  Every public function
returns a :class:`CertifiedValue` carrying an absolute error bound <= 1e-12.

The two primitives are

    hurwitz_tail(s, n)  = sum_{k>=n} k**(-s)                (s > 1)
    shifted_tail(a, n)  = sum_{k>=n} k**(-a) / (k+1)        (a > 0)

The shifted tail is reduced to Hurwitz tails through the exact geometric
split 1/(k+1) = sum_{j<J} (-1)**j k**(-j-1) + (-1)**J k**(-J) / (k+1), whose
remainder is bounded by hurwitz_tail(a+J+1, n).

Vectorised ``*_scaled`` variants evaluate n**p * tail(n) elementwise for scan
loops; the scaling is folded into the exponents so no huge or tiny
intermediates appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CertifiedValue",
    "zeta",
    "hurwitz_tail",
    "shifted_tail",
    "m_alpha",
    "hurwitz_tail_scaled",
    "shifted_tail_scaled",
]

# Bernoulli correction coefficients B_{2i}/(2i)! for i = 1..4 and the bound
# coefficient B_10/10!.
_EM_COEFFS = (1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0)
_EM_BOUND_COEFF = 5.0 / 66.0 / 3628800.0

_TARGET = 5e-14  # internal target, leaves headroom under the 1e-12 contract
_GEOM_J = 14     # geometric-split depth for shifted tails (cut at n >= 32)


@dataclass(frozen=True)
class CertifiedValue:
    """A float with a certified absolute error bound."""

    value: float
    error_bound: float

    def __float__(self) -> float:
        return self.value


def _rising(s: float, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= s + i
    return out


def _em_tail_at(s: float, N: int) -> tuple[float, float]:
    """Euler-Maclaurin tail sum_{k>=N} k**(-s) and its remainder bound."""
    t = N ** (1.0 - s) / (s - 1.0) + 0.5 * N ** (-s)
    for i, c in enumerate(_EM_COEFFS, start=1):
        t += c * _rising(s, 2 * i - 1) * N ** (-s - 2 * i + 1)
    bound = _EM_BOUND_COEFF * _rising(s, 9) * N ** (-s - 9)
    return t, abs(bound)


def _em_cut(s: float, n: int) -> int:
    N = max(n, 16)
    while _EM_BOUND_COEFF * _rising(s, 9) * N ** (-s - 9) > _TARGET:
        N *= 2
    return N


def hurwitz_tail(s: float, n: int) -> CertifiedValue:
    """sum_{k>=n} k**(-s) for s > 1, certified to 1e-12 absolute."""
    if s <= 1.0:
        raise ValueError("hurwitz_tail requires s > 1 (series diverges)")
    if n < 1:
        raise ValueError("n must be >= 1")
    N = _em_cut(s, n)
    head = math.fsum(k ** (-s) for k in range(n, N))
    tail, bound = _em_tail_at(s, N)
    # fsum is exactly rounded; charge one ulp per addition for the assembly
    slack = 4.0 * np.finfo(float).eps * (abs(head) + abs(tail))
    return CertifiedValue(head + tail, bound + slack)


def zeta(s: float) -> CertifiedValue:
    """Riemann zeta(s) for s > 1, certified to 1e-12 absolute."""
    return hurwitz_tail(s, 1)


def _shifted_tail_from(beta: float, n0: int) -> tuple[float, float]:
    """sum_{k>=n0} k**(-beta)/(k+1) via the geometric split; n0 >= 32."""
    total = 0.0
    err = 0.0
    sign = 1.0
    for j in range(_GEOM_J):
        cv = hurwitz_tail(beta + 1.0 + j, n0)
        total += sign * cv.value
        err += cv.error_bound
        sign = -sign
    rem = hurwitz_tail(beta + _GEOM_J + 1.0, n0)
    err += rem.value + rem.error_bound
    return total, err


def shifted_tail(alpha: float, n: int) -> CertifiedValue:
    """sum_{k>=n} k**(-alpha)/(k+1) for alpha > 0, certified to 1e-12."""
    if alpha <= 0.0:
        raise ValueError("shifted_tail requires alpha > 0 (series diverges)")
    if n < 1:
        raise ValueError("n must be >= 1")
    n0 = max(n, 32)
    head = math.fsum(k ** (-alpha) / (k + 1.0) for k in range(n, n0))
    tail, err = _shifted_tail_from(alpha, n0)
    slack = 4.0 * np.finfo(float).eps * (abs(head) + abs(tail))
    return CertifiedValue(head + tail, err + slack)


def m_alpha(alpha: float) -> CertifiedValue:
    """M_alpha = sum_{k>=1} k**(-alpha)/(k+1), alpha > 0."""
    if alpha <= 0.0:
        raise ValueError("m_alpha requires alpha > 0")
    return shifted_tail(alpha, 1)


# ---------------------------------------------------------------------------
# Vectorised scan helpers: n**p * tail(n) elementwise, stable for large n.
# ---------------------------------------------------------------------------

def _em_tail_scaled_vec(s: float, n: np.ndarray, p: float) -> np.ndarray:
    """n**p * sum_{k>=n} k**(-s) via pure E-M; requires all n >= 16."""
    nf = n.astype(float)
    out = np.power(nf, p + 1.0 - s) / (s - 1.0) + 0.5 * np.power(nf, p - s)
    for i, c in enumerate(_EM_COEFFS, start=1):
        out += c * _rising(s, 2 * i - 1) * np.power(nf, p - s - 2 * i + 1)
    return out


def hurwitz_tail_scaled(s: float, n: np.ndarray, p: float = 0.0) -> np.ndarray:
    """Elementwise n**p * sum_{k>=n} k**(-s) for an integer array n (s > 1)."""
    if s <= 1.0:
        raise ValueError("hurwitz_tail_scaled requires s > 1")
    n = np.asarray(n)
    out = np.empty(n.shape, dtype=float)
    small = n < 16
    if np.any(small):
        for idx in np.nonzero(small)[0]:
            ni = int(n[idx])
            out[idx] = hurwitz_tail(s, ni).value * float(ni) ** p
    big = ~small
    if np.any(big):
        out[big] = _em_tail_scaled_vec(s, n[big], p)
    return out


def shifted_tail_scaled(beta: float, n: np.ndarray, p: float = 0.0) -> np.ndarray:
    """Elementwise n**p * sum_{k>=n} k**(-beta)/(k+1) (beta > 0)."""
    if beta <= 0.0:
        raise ValueError("shifted_tail_scaled requires beta > 0")
    n = np.asarray(n)
    out = np.empty(n.shape, dtype=float)
    small = n < 32
    if np.any(small):
        for idx in np.nonzero(small)[0]:
            ni = int(n[idx])
            out[idx] = shifted_tail(beta, ni).value * float(ni) ** p
    big = ~small
    if np.any(big):
        acc = np.zeros(int(np.count_nonzero(big)), dtype=float)
        sign = 1.0
        for j in range(_GEOM_J):
            acc += sign * _em_tail_scaled_vec(beta + 1.0 + j, n[big], p)
            sign = -sign
        out[big] = acc
    return out
