import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tsgeom.errors import ClassificationError, EmptyInputError, InvalidInputError
from tsgeom.signal import Sign, Signal, sign_of
from tsgeom.symbolize import (
    CONFIGURATIONS,
    SymbolString,
    classify,
    classify_array,
    difference_triple,
    enumerate_valid_patterns,
    left_product,
    pattern_lookup,
    peaks_troughs,
    right_product,
    symbolize,
)

N, Z, P = Sign.NEG, Sign.ZERO, Sign.POS

# configuration sign rows, transcribed independently of the package table
REFERENCE_TABLE = {
    1: (N, P, N),
    2: (P, N, P),
    3: (P, P, P),
    4: (N, N, N),
    5: (N, P, P),
    6: (P, N, N),
    7: (P, Z, P),
    8: (N, Z, N),
    9: (Z, Z, Z),
    10: (Z, P, P),
    11: (Z, N, N),
    12: (P, N, Z),
    13: (N, P, Z),
}

moderate = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
# products of differences must not underflow for the product-sign properties
normal_range = moderate.filter(lambda v: v == 0 or abs(v) > 1e-100)
small_ints = st.integers(-3, 3).map(float)
samples = st.lists(st.one_of(moderate, small_ints), min_size=3, max_size=60)


def test_configuration_table_matches_reference_table():
    assert {c.id: c.pattern for c in CONFIGURATIONS} == REFERENCE_TABLE
    assert [c.abundance for c in CONFIGURATIONS] == ["abundant"] * 6 + ["sparse"] * 7


@pytest.mark.parametrize(
    "xs, triple",
    [([0, 1, 0], (1, -2, -1)), ([5, 5, 5], (0, 0, 0)), ([0, 2, 3], (2, -1, 1))],
)
def test_difference_triple_examples(xs, triple):
    assert difference_triple(xs, 1).as_tuple() == triple


@pytest.mark.parametrize("n", [0, 2, -1])
def test_difference_triple_rejects_boundary(n):
    with pytest.raises(InvalidInputError):
        difference_triple([0, 1, 0], n)


@pytest.mark.parametrize(
    "xs, left, right",
    [([0, 1, 0], -2, 2), ([5, 5, 5], 0, 0), ([0, 2, 3], -2, -1)],
)
def test_products(xs, left, right):
    t = difference_triple(xs, 1)
    assert (left_product(t), right_product(t)) == (left, right)


def test_pattern_lookup_examples():
    assert pattern_lookup(P, N, P).id == 2
    assert pattern_lookup(Z, Z, Z).id == 9
    assert pattern_lookup(P, P, N) is None


def test_pattern_lookup_exhaustive():
    hits = {}
    for pat in itertools.product(Sign, repeat=3):
        c = pattern_lookup(*pat)
        if c is not None:
            hits[c.id] = pat
    assert hits == REFERENCE_TABLE


@pytest.mark.parametrize("xs, expected", [([0, 1, 0], 6), ([1, 0, 1], 5), ([0, 1, 3], 3)])
def test_classify_examples(xs, expected):
    assert classify(xs, 1).id == expected


def test_classify_with_tolerance_can_be_unrealizable():
    # signs (0, -, 0): both outer differences fall inside the band, d2 does not
    with pytest.raises(ClassificationError) as info:
        classify([0.0, 0.6, 0.0], 1, tau=0.7)
    assert info.value.index == 1
    with pytest.raises(ClassificationError):
        symbolize(np.array([0.0, 0.6, 0.0]), tau=0.7)


@pytest.mark.parametrize(
    "xs, expected",
    [([0, 1, 0, 1, 0], [6, 5, 6]), ([4, 4, 4, 4], [9, 9]), ([0, 1, 2, 3], [7, 7])],
)
def test_symbolize_examples(xs, expected):
    s = symbolize(Signal(xs))
    assert list(s) == expected
    assert len(s) == len(xs) - 2 and s.start_index == 1


def test_symbolize_needs_three_samples():
    with pytest.raises(EmptyInputError):
        symbolize([1.0, 2.0])


def test_symbol_times_attribute_to_middle_sample():
    s = symbolize(Signal([0, 1, 0, 1, 0], sample_rate=4.0))
    np.testing.assert_array_equal(s.times, [0.25, 0.5, 0.75])


def test_enumerate_valid_patterns():
    valid = enumerate_valid_patterns()
    assert len(valid) == 13
    assert (N, Z, N) in valid
    assert (Z, P, N) not in valid
    assert valid == set(REFERENCE_TABLE.values())


def test_realizable_patterns_by_brute_force():
    rng = np.random.default_rng(2024)
    dl = np.concatenate([rng.normal(size=200_000), rng.integers(-2, 3, 200_000)])
    dr = np.concatenate([rng.normal(size=200_000), rng.integers(-2, 3, 200_000)])
    seen = {(sign_of(a), sign_of(c - a), sign_of(c)) for a, c in set(zip(dl[::97], dr[::97]))}
    seen |= {
        tuple(Sign(int(v)) for v in row)
        for row in np.unique(np.stack([np.sign(dl), np.sign(dr - dl), np.sign(dr)], axis=1), axis=0)
    }
    assert (Z, P, N) not in seen
    assert seen == enumerate_valid_patterns()


def test_peaks_troughs_examples():
    peaks, troughs = peaks_troughs(SymbolString([6, 5, 6], source_length=5))
    assert peaks.tolist() == [1, 3] and troughs.tolist() == [2]
    peaks, troughs = peaks_troughs(SymbolString([9, 9], source_length=4))
    assert peaks.size == 0 and troughs.size == 0


def test_peaks_troughs_on_sine_against_direct_comparison():
    x = np.sin(2 * np.pi * np.arange(64) / 32)
    oracle_peaks = [n for n in range(1, 63) if x[n - 1] < x[n] > x[n + 1]]
    oracle_troughs = [n for n in range(1, 63) if x[n - 1] > x[n] < x[n + 1]]
    peaks, troughs = peaks_troughs(symbolize(x))
    assert len(oracle_peaks) == 2 and len(oracle_troughs) == 2
    assert peaks.tolist() == oracle_peaks and troughs.tolist() == oracle_troughs


@given(samples, st.sampled_from([0.0, 0.0, 0.5]))
def test_vectorised_matches_scalar_classify(xs, tau):
    x = np.array(xs)
    try:
        ids = classify_array(x, tau).tolist()
    except ClassificationError as exc:
        with pytest.raises(ClassificationError):
            for n in range(1, len(x) - 1):
                classify(x, n, tau)
        assert 1 <= exc.index <= len(x) - 2
        return
    assert ids == [classify(x, n, tau).id for n in range(1, len(x) - 1)]


@given(samples)
def test_tau_zero_never_unrealizable_and_adjacent(xs):
    s = symbolize(np.array(xs))
    assert s.adjacency_ok()
    for a, b in zip(list(s)[:-1], list(s)[1:]):
        assert REFERENCE_TABLE[a][2] == REFERENCE_TABLE[b][0]


@given(st.one_of(normal_range, small_ints), st.one_of(normal_range, small_ints), st.one_of(normal_range, small_ints))
def test_sign_hierarchy(a, b, c):
    t = difference_triple([a, b, c], 1)
    assert sign_of(left_product(t)) <= sign_of(right_product(t))


@given(st.one_of(normal_range, small_ints), st.one_of(normal_range, small_ints), st.one_of(normal_range, small_ints))
def test_peak_or_trough_iff_products_change_from_negative_to_positive(a, b, c):
    t = difference_triple([a, b, c], 1)
    conf = classify([a, b, c], 1)
    assert (conf.id in (5, 6)) == (left_product(t) < 0 < right_product(t))


def test_both_products_zero_only_for_rows_7_8_9():
    rows = set()
    for a, b, c in itertools.product(range(-2, 3), repeat=3):
        t = difference_triple([a, b, c], 1)
        if left_product(t) == 0 and right_product(t) == 0:
            rows.add(classify([a, b, c], 1).id)
    assert rows == {7, 8, 9}


@given(st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=3, max_size=80, unique=True))
def test_tie_free_signal_uses_abundant_ids_only(xs):
    x = np.array(xs)
    d = np.diff(x)
    if np.any(d == 0) or np.any(np.diff(d) == 0):
        return
    assert set(symbolize(x)) <= {1, 2, 3, 4, 5, 6}


@given(samples)
def test_sign_flip_swaps_configuration_pairs(xs):
    swap = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5, 7: 8, 8: 7, 9: 9, 10: 11, 11: 10, 12: 13, 13: 12}
    x = np.array(xs)
    assert [swap[i] for i in symbolize(x)] == list(symbolize(-x))
