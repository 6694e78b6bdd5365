import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro_copson.weights import (Cone, ListWeight, PowerWeight, SeqWindow,
                                   codomain_weight_at, envelope_down,
                                   envelope_up, quotient_norm_weighted,
                                   sup_norm_weighted, weight_at,
                                   weight_from_csv, weight_from_json,
                                   weight_to_json, weight_values)


def test_weight_at_examples():
    assert weight_at(PowerWeight(-1.0), 3) == 3.0
    assert weight_at(PowerWeight(0.0), 7) == 1.0
    assert weight_at(ListWeight((3, 1, 2)), 5) == 0.0  # zero padding


def test_weight_at_power_is_k_to_minus_alpha():
    w = PowerWeight(0.5)
    for k in (1, 2, 10, 10**6):
        assert weight_at(w, k) == pytest.approx(k ** -0.5, rel=1e-15)
    assert weight_at(PowerWeight(2.0), 10) == pytest.approx(0.01, rel=1e-15)


def test_codomain_side_is_n_to_plus_alpha():
    # the same PowerWeight plays v_n = n**alpha on the codomain side
    assert codomain_weight_at(PowerWeight(1.0), 5) == 5.0
    assert codomain_weight_at(PowerWeight(-0.5), 4) == pytest.approx(0.5)


def test_validation():
    with pytest.raises(ValueError):
        ListWeight((1.0, -0.5))
    with pytest.raises(ValueError):
        ListWeight(())
    with pytest.raises(ValueError):
        PowerWeight(math.inf)
    with pytest.raises(ValueError):
        weight_at(PowerWeight(1.0), 0)


def test_sup_norm_examples():
    assert sup_norm_weighted(SeqWindow(1, (1, -2, 1)), PowerWeight(0.0)) == 2.0
    assert sup_norm_weighted(SeqWindow(1, (1, 1, 1)), PowerWeight(1.0)) == 3.0
    assert sup_norm_weighted(SeqWindow(1, (0.0, 0.0)), PowerWeight(2.0)) == 0.0


def test_quotient_norm_examples():
    assert quotient_norm_weighted(SeqWindow(1, (0, 5)), ListWeight((0, 1))) == 5.0
    assert quotient_norm_weighted(SeqWindow(1, (1, 5)), ListWeight((0, 1))) == math.inf
    assert quotient_norm_weighted(SeqWindow(1, (2, 2, 2)), PowerWeight(1.0)) == 6.0


def test_envelope_down_examples():
    assert np.allclose(envelope_down(ListWeight((3, 1, 2)), 3), [3, 1, 1])
    assert np.allclose(envelope_down(PowerWeight(2.0), 3), [1, 0.25, 1 / 9])
    assert np.allclose(envelope_down(PowerWeight(-1.0), 3), [1, 1, 1])


def test_envelope_up_examples():
    assert np.allclose(envelope_up(PowerWeight(1.0), 3), [0, 0, 0])
    assert np.allclose(envelope_up(PowerWeight(-1.0), 3), [1, 2, 3])
    assert np.allclose(envelope_up(ListWeight((3, 1, 2)), 3), [1, 1, 2])


@given(st.lists(st.floats(0, 10), min_size=1, max_size=30), st.integers(1, 30))
@settings(max_examples=200, deadline=None)
def test_envelope_shape_properties(vals, K):
    u = ListWeight(tuple(vals))
    down = envelope_down(u, K)
    up = envelope_up(u, K)
    uv = weight_values(u, K)
    assert np.all(np.diff(down) <= 1e-15)
    assert np.all(down <= uv + 1e-15)
    assert np.all(up <= uv + 1e-15)
    m = min(K, u.length)
    assert np.all(np.diff(up[:m]) >= -1e-15)  # nondecreasing on the horizon


@given(st.lists(st.floats(0.0, 10.0), min_size=1, max_size=25))
@settings(max_examples=150, deadline=None)
def test_envelope_idempotence(vals):
    u = ListWeight(tuple(vals))
    K = u.length
    once = envelope_down(u, K)
    twice = envelope_down(ListWeight(tuple(once)), K)
    assert np.array_equal(once, twice)
    up1 = envelope_up(u, K)
    up2 = envelope_up(ListWeight(tuple(up1)), K)
    assert np.array_equal(up1, up2)


@given(st.lists(st.floats(0.01, 5.0), min_size=2, max_size=20),
       st.lists(st.floats(0.0, 3.0), min_size=2, max_size=20))
@settings(max_examples=150, deadline=None)
def test_minorant_norm_lemma(uvals, xraw):
    # for nonincreasing x, the domain norm sees only the nonincreasing
    # minorant of the weight; dually for nondecreasing x
    L = min(len(uvals), len(xraw))
    u = ListWeight(tuple(uvals[:L]))
    x_down = tuple(sorted(xraw[:L], reverse=True))
    lhs = quotient_norm_weighted(SeqWindow(1, x_down), u)
    rhs = quotient_norm_weighted(
        SeqWindow(1, x_down), ListWeight(tuple(envelope_down(u, L))))
    assert lhs == pytest.approx(rhs, rel=1e-14, abs=0)
    x_up = tuple(sorted(xraw[:L]))
    lhs = quotient_norm_weighted(SeqWindow(1, x_up), u)
    rhs = quotient_norm_weighted(
        SeqWindow(1, x_up), ListWeight(tuple(envelope_up(u, L))))
    assert lhs == pytest.approx(rhs, rel=1e-14, abs=0)


def test_quotient_norm_homogeneous_power_of_two():
    x = SeqWindow(1, (0.3, 1.7, 0.0, 2.2))
    u = ListWeight((1.0, 0.5, 0.0, 2.0))
    base = quotient_norm_weighted(x, u)
    for c in (0.5, 2.0, 8.0):
        scaled = SeqWindow(1, tuple(c * t for t in x.values))
        assert quotient_norm_weighted(scaled, u) == c * base


def test_serialization_roundtrip(tmp_path):
    for w in (PowerWeight(0.75), ListWeight((1.0, 0.0, 2.5))):
        assert weight_from_json(weight_to_json(w)) == w
    obj = json.loads(weight_to_json(PowerWeight(0.5)))
    assert obj == {"kind": "power", "alpha": 0.5}
    path = tmp_path / "w.csv"
    path.write_text("1.5\n0\n2\n")
    assert weight_from_csv(str(path)) == ListWeight((1.5, 0.0, 2.0))
    with pytest.raises(ValueError):
        weight_from_json('{"kind": "nope"}')


def test_window_accessors():
    x = SeqWindow(3, (5.0, 6.0))
    assert x.end == 4
    assert x.at(3) == 5.0 and x.at(4) == 6.0
    assert x.at(1) == 0.0 and x.at(10) == 0.0
    assert [c.value for c in Cone] == ["all", "nonneg", "nonincr", "nondecr"]
