import math
import random
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphlens.unigram import (
    FrequencyTable,
    mattr,
    mtl,
    renyi_efficiency,
    ttr,
    word_metrics,
)


# --- TTR -------------------------------------------------------------------


def test_ttr_all_distinct():
    assert ttr(["a", "b", "c"]) == 1.0


def test_ttr_quarter():
    assert ttr(["a"] * 4) == 0.25


def test_ttr_alphabet_counterexample():
    # every letter exactly once: maximal lexical diversity from a sequence
    # that is trivially predictable
    assert ttr(list(string.ascii_lowercase)) == 1.0


def test_ttr_empty_errors():
    with pytest.raises(ValueError):
        ttr([])


# --- MATTR -----------------------------------------------------------------


def test_mattr_window_one():
    assert mattr(["a", "a", "b"], 1) == 1.0


def test_mattr_cyclic():
    assert mattr(["a", "b", "c"] * 100, 3) == 1.0


def test_mattr_hand_enumeration():
    assert mattr(["a", "a", "b", "b"], 2) == pytest.approx(2 / 3)


def test_mattr_window_equals_length_is_ttr():
    rng = random.Random(0)
    for _ in range(50):
        toks = [rng.choice("abcde") for _ in range(rng.randint(1, 40))]
        assert mattr(toks, len(toks)) == ttr(toks)


def test_mattr_short_sequence_falls_back_to_ttr():
    assert mattr(["a", "b", "a"], 10) == ttr(["a", "b", "a"])


def test_mattr_duplication_stability_vs_ttr_collapse():
    rng = random.Random(1)
    toks = [rng.choice([f"w{i}" for i in range(300)]) for _ in range(10000)]
    w = 500
    assert abs(mattr(toks + toks, w) - mattr(toks, w)) <= 0.02
    assert ttr(toks + toks) < ttr(toks)


def test_mattr_brute_force_oracle():
    rng = random.Random(2)
    toks = [rng.choice("abcd") for _ in range(60)]
    w = 7
    expected = sum(
        ttr(toks[i : i + w]) for i in range(len(toks) - w + 1)
    ) / (len(toks) - w + 1)
    assert mattr(toks, w) == pytest.approx(expected, abs=1e-12)


def test_mattr_bad_window():
    with pytest.raises(ValueError):
        mattr(["a"], 0)


# --- MTL -------------------------------------------------------------------


def test_mtl_plain():
    assert mtl(["ab", "cd"]) == 2.0


def test_mtl_micro_not_macro():
    assert mtl(["a", "abc"]) == 2.0


def test_mtl_strips_marker():
    assert mtl(["▁ab", "cd"]) == 2.0


def test_mtl_equals_ccc_over_ctc_on_marker_free_text():
    rng = random.Random(3)
    for _ in range(30):
        toks = [
            "".join(rng.choice("xyz") for _ in range(rng.randint(1, 6)))
            for _ in range(rng.randint(1, 50))
        ]
        ccc = sum(len(t) for t in toks)
        assert mtl(toks) == pytest.approx(ccc / len(toks))


def test_mtl_empty_errors():
    with pytest.raises(ValueError):
        mtl([])


# --- Renyi efficiency ------------------------------------------------------


def table_of(counts):
    return FrequencyTable(counts=dict(counts), total=sum(counts.values()))


def test_renyi_uniform_is_one():
    freq = table_of({f"t{i}": 7 for i in range(16)})
    for alpha in (0.0, 0.5, 1.0, 2.0, 2.5):
        assert renyi_efficiency(freq, alpha) == pytest.approx(1.0)


def test_renyi_half_half_alpha_two():
    assert renyi_efficiency(table_of({"a": 5, "b": 5}), 2.0) == pytest.approx(1.0)


def test_renyi_nine_one_alpha_two():
    expected = -math.log2(0.81 + 0.01)
    assert renyi_efficiency(table_of({"a": 9, "b": 1}), 2.0) == pytest.approx(
        expected, abs=1e-10
    )


def test_renyi_single_type_zero():
    assert renyi_efficiency(table_of({"a": 100}), 2.5) == 0.0


def test_renyi_negative_alpha_errors():
    with pytest.raises(ValueError):
        renyi_efficiency(table_of({"a": 1, "b": 1}), -0.5)


def test_renyi_alpha_one_is_shannon():
    freq = table_of({"a": 3, "b": 1})
    h = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
    assert renyi_efficiency(freq, 1.0) == pytest.approx(h / 1.0)


@given(
    st.lists(st.integers(min_value=1, max_value=50), min_size=2, max_size=10),
    st.integers(min_value=1, max_value=6),
)
@settings(max_examples=200)
def test_renyi_scale_and_permutation_invariant(counts, k):
    names = [f"t{i}" for i in range(len(counts))]
    base = renyi_efficiency(table_of(dict(zip(names, counts))), 2.5)
    scaled = renyi_efficiency(
        table_of(dict(zip(names, [c * k for c in counts]))), 2.5
    )
    shuffled = renyi_efficiency(
        table_of(dict(zip(reversed(names), counts))), 2.5
    )
    assert scaled == pytest.approx(base, abs=1e-12)
    assert shuffled == pytest.approx(base, abs=1e-12)


def test_renyi_entropy_decreasing_in_alpha():
    freq = table_of({"a": 10, "b": 5, "c": 2, "d": 1})
    h0 = math.log2(4)
    values = [
        renyi_efficiency(freq, alpha) * h0 for alpha in (0.5, 1.0, 2.0, 2.5, 3.0)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- word metrics ----------------------------------------------------------


def test_word_metrics_hand():
    wm = word_metrics([("abcd", 2), ("ab", 1)])
    assert wm.mwl == 3.0
    assert wm.s == pytest.approx(0.5)


def test_word_metrics_single_chars():
    wm = word_metrics([("a", 1), ("b", 1), ("c", 1)])
    assert wm.mwl == 1.0
    assert wm.s == 1.0


def test_word_metrics_empty_errors():
    with pytest.raises(ValueError):
        word_metrics([])
    with pytest.raises(ValueError):
        word_metrics([("", 1)])


def test_frequency_table_from_tokens():
    freq = FrequencyTable.from_tokens(["a", "b", "a"])
    assert freq.counts == {"a": 2, "b": 1}
    assert freq.total == 3
