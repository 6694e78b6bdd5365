"""Structured representations of the averaging/tail matrices.

Matrices are never materialised: entries are generated lazily by (n, k)
formula, and everything other modules need (row sign patterns, row sums,
positive/negative decompositions, last-entry indices for extremal witnesses)
is provided in closed form per operator kind.

Kinds
-----
    C            (Cx)_n = (1/n) sum_{k<=n} x_k          (averaging)
    CSTAR        (C*x)_n = sum_{k>=n} x_k / k           (tail averaging)
    C_MINUS_I    C - I
    CSTAR_MINUS_I C* - I
    C_MINUS_SSTAR C - S*   (S* = left shift)
    CSTARSD      (C* - S) D, entries 1/(k(k+1)) on and above the diagonal
                 and -1/n at k = n-1
    S, SSTAR, D, E, I   helpers: right shift, left shift, diag 1/(n+1),
                 partial sums, identity

A :class:`SignFlip` negates a set of rows (a global toggle plus a finite
exception set), the row-by-row preprocessing that brings a matrix into the
shape required by the monotone-cone norm formulas.  ``cone_plan`` computes
the canonical admissible flip for each kind/cone, or reports that the
hypotheses cannot be satisfied.

A column horizon L (from a ListWeight) means the L-column principal block:
row sums, patterns and witness endpoints are all taken within 1..L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .weights import Cone, SeqWindow

__all__ = [
    "OpKind",
    "row_entries",
    "PRINCIPAL_KINDS",
    "RowPattern",
    "RowClass",
    "SignFlip",
    "ConePlan",
    "entry",
    "classify_row",
    "cone_plan",
    "last_index_of_part",
    "apply",
    "apply_batch",
    "check_identity_first",
    "check_identity_second",
]


class OpKind(Enum):
    C = "cesaro"
    CSTAR = "copson"
    C_MINUS_I = "cesaro-minus-identity"
    CSTAR_MINUS_I = "copson-minus-identity"
    C_MINUS_SSTAR = "cesaro-minus-shift"
    CSTARSD = "copson-minus-shift-diag"
    S = "shift-right"
    SSTAR = "shift-left"
    D = "diag-inv-np1"
    E = "partial-sums"
    I = "identity"  # noqa: E741  (the customary name)


PRINCIPAL_KINDS = (
    OpKind.C,
    OpKind.CSTAR,
    OpKind.C_MINUS_I,
    OpKind.CSTAR_MINUS_I,
    OpKind.C_MINUS_SSTAR,
    OpKind.CSTARSD,
)


class RowPattern(Enum):
    POS_BEFORE_NEG = "pos-before-neg"
    NEG_BEFORE_POS = "neg-before-pos"
    BOTH = "both"          # single-signed row: satisfies either hypothesis
    ALL_ZERO = "all-zero"


@dataclass(frozen=True)
class RowClass:
    pattern: RowPattern
    row_sum: float          # may be +-inf
    finite_sum: bool

    def satisfies(self, pattern: RowPattern) -> bool:
        return self.pattern in (pattern, RowPattern.BOTH, RowPattern.ALL_ZERO)


@dataclass(frozen=True)
class SignFlip:
    """Rows with (flip_all XOR n in flip_rows) are multiplied by -1."""

    flip_all: bool = False
    flip_rows: frozenset[int] = field(default_factory=frozenset)

    def sign(self, n: int) -> float:
        return -1.0 if (self.flip_all != (n in self.flip_rows)) else 1.0


NO_FLIP = SignFlip()


def entry(kind: OpKind, n: int, k: int, flip: SignFlip = NO_FLIP) -> float:
    """Matrix entry b_{n,k} (n, k >= 1), after any row sign flips."""
    if n < 1 or k < 1:
        raise ValueError("indices must be >= 1")
    e = 0.0
    if kind is OpKind.C:
        e = 1.0 / n if k <= n else 0.0
    elif kind is OpKind.CSTAR:
        e = 1.0 / k if k >= n else 0.0
    elif kind is OpKind.C_MINUS_I:
        if k < n:
            e = 1.0 / n
        elif k == n:
            e = -(n - 1.0) / n
    elif kind is OpKind.CSTAR_MINUS_I:
        if k > n:
            e = 1.0 / k
        elif k == n:
            e = -(n - 1.0) / n
    elif kind is OpKind.C_MINUS_SSTAR:
        if k <= n:
            e = 1.0 / n
        elif k == n + 1:
            e = -1.0
    elif kind is OpKind.CSTARSD:
        if k >= n:
            e = 1.0 / (k * (k + 1.0))
        elif k == n - 1:
            e = -1.0 / n
    elif kind is OpKind.S:
        e = 1.0 if k == n - 1 else 0.0
    elif kind is OpKind.SSTAR:
        e = 1.0 if k == n + 1 else 0.0
    elif kind is OpKind.D:
        e = 1.0 / (n + 1.0) if k == n else 0.0
    elif kind is OpKind.E:
        e = 1.0 if k <= n else 0.0
    elif kind is OpKind.I:
        e = 1.0 if k == n else 0.0
    return flip.sign(n) * e


def row_entries(kind: OpKind, n: int, K: int, flip: SignFlip = NO_FLIP) -> np.ndarray:
    """Row n as a dense vector over columns 1..K (vectorised entry())."""
    k = np.arange(1, K + 1, dtype=float)
    e = np.zeros(K)
    if kind is OpKind.C:
        e[: min(n, K)] = 1.0 / n
    elif kind is OpKind.CSTAR:
        if n <= K:
            e[n - 1 :] = 1.0 / k[n - 1 :]
    elif kind is OpKind.C_MINUS_I:
        e[: min(n - 1, K)] = 1.0 / n
        if n <= K:
            e[n - 1] = -(n - 1.0) / n
    elif kind is OpKind.CSTAR_MINUS_I:
        if n < K:
            e[n:] = 1.0 / k[n:]
        if n <= K:
            e[n - 1] = -(n - 1.0) / n
    elif kind is OpKind.C_MINUS_SSTAR:
        e[: min(n, K)] = 1.0 / n
        if n + 1 <= K:
            e[n] = -1.0
    elif kind is OpKind.CSTARSD:
        if n <= K:
            e[n - 1 :] = 1.0 / (k[n - 1 :] * (k[n - 1 :] + 1.0))
        if 2 <= n <= K + 1:
            e[n - 2] = -1.0 / n
    elif kind is OpKind.S:
        if 2 <= n <= K + 1:
            e[n - 2] = 1.0
    elif kind is OpKind.SSTAR:
        if n + 1 <= K:
            e[n] = 1.0
    elif kind is OpKind.D:
        if n <= K:
            e[n - 1] = 1.0 / (n + 1.0)
    elif kind is OpKind.E:
        e[: min(n, K)] = 1.0
    elif kind is OpKind.I:
        if n <= K:
            e[n - 1] = 1.0
    else:
        raise ValueError(f"unknown kind {kind}")
    return flip.sign(n) * e


def _harmonic_range(a: int, b: int) -> float:
    """sum_{k=a}^{b} 1/k (0 when a > b)."""
    if a > b:
        return 0.0
    return float(np.sum(1.0 / np.arange(a, b + 1, dtype=float)))


def _row_structure(kind: OpKind, n: int, L: int | None) -> tuple[bool, bool, float, bool]:
    """(has_pos, has_neg, row_sum, finite) for the unflipped row, within
    columns 1..L (L=None: the infinite row).  Row sums are closed forms."""
    inf_cols = L is None

    def within(k: int) -> bool:
        return k >= 1 and (inf_cols or k <= L)

    if kind is OpKind.C:
        m = n if inf_cols else min(n, L)
        return (m >= 1, False, m / n, True)
    if kind is OpKind.CSTAR:
        if inf_cols:
            return (True, False, math.inf, False)
        return (n <= L, False, _harmonic_range(n, L), True)
    if kind is OpKind.C_MINUS_I:
        has_diag = within(n)
        m = (n - 1) if inf_cols else min(n - 1, L)
        has_pos = m >= 1
        has_neg = has_diag and n >= 2
        s = m / n - ((n - 1.0) / n if has_diag else 0.0)
        if n == 1:
            return (False, False, 0.0, True)
        return (has_pos, has_neg, s, True)
    if kind is OpKind.CSTAR_MINUS_I:
        has_neg = within(n) and n >= 2
        if inf_cols:
            return (True, has_neg, math.inf, False)
        has_pos = n + 1 <= L
        s = _harmonic_range(n + 1, L) - ((n - 1.0) / n if has_neg else 0.0)
        return (has_pos, has_neg, s, True)
    if kind is OpKind.C_MINUS_SSTAR:
        m = n if inf_cols else min(n, L)
        has_neg = within(n + 1)
        s = m / n - (1.0 if has_neg else 0.0)
        return (m >= 1, has_neg, s, True)
    if kind is OpKind.CSTARSD:
        has_neg = n >= 2 and within(n - 1)
        if inf_cols:
            tail = 1.0 / n  # telescoping sum_{k>=n} 1/(k(k+1))
            has_pos = True
        else:
            has_pos = n <= L
            tail = (1.0 / n - 1.0 / (L + 1.0)) if n <= L else 0.0
        s = tail - (1.0 / n if has_neg else 0.0)
        return (has_pos, has_neg, s, True)
    if kind is OpKind.S:
        ok = n >= 2 and within(n - 1)
        return (ok, False, 1.0 if ok else 0.0, True)
    if kind is OpKind.SSTAR:
        ok = within(n + 1)
        return (ok, False, 1.0 if ok else 0.0, True)
    if kind is OpKind.D:
        ok = within(n)
        return (ok, False, 1.0 / (n + 1.0) if ok else 0.0, True)
    if kind is OpKind.E:
        m = n if inf_cols else min(n, L)
        return (m >= 1, False, float(m), True)
    if kind is OpKind.I:
        ok = within(n)
        return (ok, False, 1.0 if ok else 0.0, True)
    raise ValueError(f"unknown kind {kind}")


def classify_row(kind: OpKind, n: int, ncols: int | None = None,
                 flip: SignFlip = NO_FLIP) -> RowClass:
    """Sign pattern and row sum of row n, computed in closed form.

    Every kind here has its positive entries contiguous against its negative
    entries, so a mixed row is POS_BEFORE_NEG or NEG_BEFORE_POS depending on
    which block comes first; single-signed rows satisfy both hypotheses and
    are reported as BOTH.
    """
    has_pos, has_neg, s, finite = _row_structure(kind, n, ncols)
    if flip.sign(n) < 0:
        has_pos, has_neg = has_neg, has_pos
        s = -s
    if not has_pos and not has_neg:
        return RowClass(RowPattern.ALL_ZERO, 0.0, True)
    if has_pos != has_neg:
        return RowClass(RowPattern.BOTH, s, finite)
    # mixed row: position of the negative block is structural per kind
    neg_first = kind in (OpKind.CSTAR_MINUS_I, OpKind.CSTARSD)
    if flip.sign(n) < 0:
        neg_first = not neg_first
    pat = RowPattern.NEG_BEFORE_POS if neg_first else RowPattern.POS_BEFORE_NEG
    return RowClass(pat, s, finite)


@dataclass(frozen=True)
class ConePlan:
    """Preprocessing decision for a monotone-cone norm computation."""

    ok: bool
    flip: SignFlip = NO_FLIP
    trivially_zero: bool = False
    reason: str = ""


def _rows_to_check(L: int | None, max_row: int | None) -> int | None:
    if L is None:
        return max_row
    return L if max_row is None else min(L, max_row)


def cone_plan(kind: OpKind, cone: Cone, L: int | None = None,
              max_row: int | None = None) -> ConePlan:
    """Canonical row flips making the monotone-cone hypotheses hold.

    For cone NONINCR every (flipped) row must be positives-before-negatives
    with nonnegative sum; for NONDECR negatives-before-positives with
    nonnegative sum, and an infinite row sum makes the norm trivially zero.
    ``L`` is the column horizon (None = infinite), ``max_row`` the largest
    row the problem can see (None = all rows).
    """
    if cone in (Cone.ALL, Cone.NONNEG):
        return ConePlan(True)

    nonneg_kinds = (OpKind.C, OpKind.CSTAR, OpKind.S, OpKind.SSTAR,
                    OpKind.D, OpKind.E, OpKind.I)

    if cone is Cone.NONINCR:
        if kind in nonneg_kinds or kind in (OpKind.C_MINUS_I, OpKind.C_MINUS_SSTAR):
            return ConePlan(True)
        if kind is OpKind.CSTARSD:
            # rows >= 2 flipped; flipped sums are 1/(L+1) (or 0), row 1 stays
            return ConePlan(True, SignFlip(flip_all=True, flip_rows=frozenset({1})))
        if kind is OpKind.CSTAR_MINUS_I:
            if L is None:
                return ConePlan(False, reason="flipped rows of C*-I have sum -inf")
            hi = _rows_to_check(L, max_row)
            flip_rows = frozenset(range(2, L + 1))
            fl = SignFlip(flip_rows=flip_rows)
            for n in range(2, hi + 1):
                if classify_row(kind, n, L, fl).row_sum < 0:
                    return ConePlan(False, reason=f"flipped row {n} has negative sum")
            return ConePlan(True, fl)
        raise ValueError(f"unknown kind {kind}")

    # cone NONDECR
    if kind in nonneg_kinds:
        if kind is OpKind.CSTAR and L is None:
            return ConePlan(True, trivially_zero=True)
        return ConePlan(True)
    if kind is OpKind.C_MINUS_I:
        if L is None:
            return ConePlan(True, SignFlip(flip_all=True))
        # rows past the column horizon are all-positive: leave them unflipped
        return ConePlan(True, SignFlip(flip_rows=frozenset(range(1, L + 1))))
    if kind is OpKind.C_MINUS_SSTAR:
        if L is None:
            return ConePlan(True, SignFlip(flip_all=True))
        return ConePlan(True, SignFlip(flip_rows=frozenset(range(1, L))))
    if kind is OpKind.CSTAR_MINUS_I:
        if L is None:
            return ConePlan(True, trivially_zero=True)
        hi = _rows_to_check(L, max_row)
        for n in range(2, hi + 1):
            if classify_row(kind, n, L).row_sum < 0:
                return ConePlan(False, reason=f"row {n} has negative sum")
        return ConePlan(True)
    if kind is OpKind.CSTARSD:
        if L is None:
            return ConePlan(True)
        hi = _rows_to_check(L, max_row)
        if any(classify_row(kind, n, L).row_sum < 0 for n in range(2, hi + 1)):
            return ConePlan(False, reason="truncated rows of (C*-S)D have sum -1/(L+1)")
        return ConePlan(True)
    raise ValueError(f"unknown kind {kind}")


def last_index_of_part(kind: OpKind, n: int, L: int | None, negative: bool,
                       flip: SignFlip = NO_FLIP) -> int:
    """Largest column index of the positive (or negative) part of flipped
    row n within columns 1..L; 0 if the part is empty, L for full tails.
    ``L`` must be finite here (witnesses are built on finite windows)."""
    if L is None:
        raise ValueError("witness construction needs a finite column window")
    want_neg_of_base = negative != (flip.sign(n) < 0)
    idx = 0

    def clamp(k: int) -> int:
        return k if 1 <= k <= L else 0

    if kind is OpKind.C:
        idx = 0 if want_neg_of_base else clamp(min(n, L))
    elif kind is OpKind.E:
        idx = 0 if want_neg_of_base else clamp(min(n, L))
    elif kind is OpKind.CSTAR:
        idx = 0 if want_neg_of_base else (L if n <= L else 0)
    elif kind is OpKind.C_MINUS_I:
        if n == 1:
            idx = 0
        elif want_neg_of_base:
            idx = clamp(n)
        else:
            idx = clamp(min(n - 1, L))
    elif kind is OpKind.CSTAR_MINUS_I:
        if want_neg_of_base:
            idx = clamp(n) if n >= 2 else 0
        else:
            idx = L if n + 1 <= L else 0
    elif kind is OpKind.C_MINUS_SSTAR:
        idx = clamp(n + 1) if want_neg_of_base else clamp(min(n, L))
    elif kind is OpKind.CSTARSD:
        if want_neg_of_base:
            idx = clamp(n - 1) if n >= 2 else 0
        else:
            idx = L if n <= L else 0
    elif kind is OpKind.S:
        idx = 0 if want_neg_of_base else clamp(n - 1)
    elif kind is OpKind.SSTAR:
        idx = 0 if want_neg_of_base else clamp(n + 1)
    elif kind in (OpKind.D, OpKind.I):
        idx = 0 if want_neg_of_base else clamp(n)
    else:
        raise ValueError(f"unknown kind {kind}")
    return idx


# ---------------------------------------------------------------------------
# Application to finitely supported sequences
# ---------------------------------------------------------------------------

def _padded(x: SeqWindow, width: int) -> np.ndarray:
    out = np.zeros(width)
    if x.values:
        lo = x.start - 1
        hi = min(x.end, width)
        if hi > lo:
            out[lo:hi] = np.asarray(x.values)[: hi - lo]
    return out


def apply(kind: OpKind, x: SeqWindow, N: int) -> SeqWindow:
    """(Bx)_1..(Bx)_N for finitely supported x.  The C*-type row sums are
    finite because the support is; no truncation is involved."""
    width = max(N + 1, x.end)
    xf = _padded(x, width)
    k = np.arange(1, width + 1, dtype=float)
    n = np.arange(1, N + 1, dtype=float)

    def prefix_mean() -> np.ndarray:
        return np.cumsum(xf)[:N] / n

    def tail_of(t: np.ndarray) -> np.ndarray:
        return np.cumsum(t[::-1])[::-1][:N]

    if kind is OpKind.C:
        out = prefix_mean()
    elif kind is OpKind.E:
        out = np.cumsum(xf)[:N]
    elif kind is OpKind.CSTAR:
        out = tail_of(xf / k)
    elif kind is OpKind.C_MINUS_I:
        out = prefix_mean() - xf[:N]
    elif kind is OpKind.CSTAR_MINUS_I:
        out = tail_of(xf / k) - xf[:N]
    elif kind is OpKind.C_MINUS_SSTAR:
        out = prefix_mean() - xf[1 : N + 1]
    elif kind is OpKind.CSTARSD:
        shifted = np.concatenate([[0.0], xf[: N - 1]]) if N >= 1 else np.zeros(0)
        out = tail_of(xf / (k * (k + 1.0))) - shifted / n
    elif kind is OpKind.S:
        out = np.concatenate([[0.0], xf[: N - 1]])
    elif kind is OpKind.SSTAR:
        out = xf[1 : N + 1]
    elif kind is OpKind.D:
        out = xf[:N] / (n + 1.0)
    elif kind is OpKind.I:
        out = xf[:N]
    else:
        raise ValueError(f"unknown kind {kind}")
    return SeqWindow(1, tuple(out))


def apply_batch(kind: OpKind, X: np.ndarray, n_rows: int | None = None) -> np.ndarray:
    """Apply the K-column principal block to a batch of vectors.

    ``X`` has shape (T, K): T sequences supported on columns 1..K.  Returns
    (T, R) with R = n_rows or K; rows past K read only the in-window columns
    (the truncated-problem convention)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    T, K = X.shape
    R = K if n_rows is None else n_rows
    k = np.arange(1, K + 1, dtype=float)
    n_in = np.arange(1, min(R, K) + 1, dtype=float)

    def with_extra(core: np.ndarray, extra) -> np.ndarray:
        if R <= K:
            return core[:, :R]
        pad = np.zeros((T, R - K))
        fill = extra()
        if fill is not None:
            pad[:, :] = fill
        return np.hstack([core, pad])

    cs = np.cumsum(X, axis=1)
    if kind is OpKind.C:
        core = cs[:, : min(R, K)] / n_in
        return with_extra(core, lambda: cs[:, -1:] / np.arange(K + 1, R + 1))
    if kind is OpKind.E:
        return with_extra(cs[:, : min(R, K)], lambda: cs[:, -1:])
    if kind is OpKind.C_MINUS_I:
        core = cs[:, : min(R, K)] / n_in - X[:, : min(R, K)]
        return with_extra(core, lambda: cs[:, -1:] / np.arange(K + 1, R + 1))
    if kind is OpKind.C_MINUS_SSTAR:
        nxt = np.hstack([X[:, 1:], np.zeros((T, 1))])
        core = cs[:, : min(R, K)] / n_in - nxt[:, : min(R, K)]
        return with_extra(core, lambda: cs[:, -1:] / np.arange(K + 1, R + 1))
    if kind is OpKind.CSTAR:
        t = X / k
        core = np.cumsum(t[:, ::-1], axis=1)[:, ::-1][:, : min(R, K)]
        return with_extra(core, lambda: None)
    if kind is OpKind.CSTAR_MINUS_I:
        t = X / k
        core = np.cumsum(t[:, ::-1], axis=1)[:, ::-1][:, : min(R, K)] - X[:, : min(R, K)]
        return with_extra(core, lambda: None)
    if kind is OpKind.CSTARSD:
        t = X / (k * (k + 1.0))
        tails = np.cumsum(t[:, ::-1], axis=1)[:, ::-1]
        prev = np.hstack([np.zeros((T, 1)), X[:, :-1]])
        core = tails[:, : min(R, K)] - prev[:, : min(R, K)] / n_in
        if R <= K:
            return core[:, :R]
        pad = np.zeros((T, R - K))
        pad[:, 0] = -X[:, -1] / (K + 1.0)  # row K+1 still sees column K
        return np.hstack([core, pad])
    if kind is OpKind.S:
        prev = np.hstack([np.zeros((T, 1)), X[:, :-1]])
        if R <= K:
            return prev[:, :R]
        pad = np.zeros((T, R - K))
        pad[:, 0] = X[:, -1]
        return np.hstack([prev, pad])
    if kind is OpKind.SSTAR:
        nxt = np.hstack([X[:, 1:], np.zeros((T, 1))])
        return with_extra(nxt[:, : min(R, K)], lambda: None)
    if kind is OpKind.D:
        core = X[:, : min(R, K)] / (n_in + 1.0)
        return with_extra(core, lambda: None)
    if kind is OpKind.I:
        return with_extra(X[:, : min(R, K)], lambda: None)
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------------------
# The two operator identities, checked on finitely supported input
# ---------------------------------------------------------------------------

def check_identity_first(x: SeqWindow, N: int) -> float:
    """max_{n<=N} |((C - S*) C* x)_n - (C x)_n| for finitely supported x."""
    y = apply(OpKind.CSTAR, x, N + 1)
    yv = np.asarray(y.values)
    n = np.arange(1, N + 1, dtype=float)
    lhs = np.cumsum(yv[:N]) / n - yv[1 : N + 1]
    rhs = np.asarray(apply(OpKind.C, x, N).values)
    return float(np.max(np.abs(lhs - rhs))) if N >= 1 else 0.0


def check_identity_second(x: SeqWindow, N: int) -> float:
    """max_{n<=N} |((C* - S) D E x)_n - (C* x)_n| for finitely supported x.

    Beyond the support (Ex)_k is the constant sigma = sum(x), and the tail of
    C*D telescopes exactly: sum_{k>=m} sigma/(k(k+1)) = sigma/m.
    """
    end = x.end
    width = max(end, N + 1)
    z = np.cumsum(_padded(x, width))  # (Ex)_k, constant sigma past end
    sigma = z[end - 1] if end >= 1 else 0.0
    k = np.arange(1, width + 1, dtype=float)
    t = z / (k * (k + 1.0))
    # sum_{k=n}^{width} t_k + analytic tail sigma/(width+1)
    tails = np.cumsum(t[::-1])[::-1] + sigma / (width + 1.0)
    n = np.arange(1, N + 1, dtype=float)
    zprev = np.concatenate([[0.0], z[: N - 1]]) if N >= 1 else np.zeros(0)
    lhs = tails[:N] - zprev / n
    rhs = np.asarray(apply(OpKind.CSTAR, x, N).values)
    return float(np.max(np.abs(lhs - rhs))) if N >= 1 else 0.0
