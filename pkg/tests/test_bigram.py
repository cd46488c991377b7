import math
import random

import pytest

from morphlens.bigram import (
    AccessorState,
    BigramTables,
    MetricsError,
    observe_stream,
)
from morphlens.tokenizer import Token


def state_with(accessors, capacity=1000, stride=1):
    s = AccessorState(capacity, stride)
    for a in accessors:
        s.push(a)
    return s


def spans_to_stream(spans):
    for span in spans:
        n = len(span)
        for i, piece in enumerate(span):
            yield Token(piece, i == 0, i == n - 1)


# --- observation hand traces -----------------------------------------------


def test_span_abc():
    t = BigramTables()
    t.observe_span(["a", "b", "c"])
    a, b, c = (t.type_ids[x] for x in "abc")
    assert t.right[a].ta == 1 and t.left[b].ta == 1
    assert t.right[b].ta == 1 and t.left[c].ta == 1
    assert t.left[a].dummies == 1 and t.right[c].dummies == 1
    assert t.left[a].ta == 0 and t.right[c].ta == 0
    assert t.total_pairs == 2


def test_singleton_span():
    t = BigramTables()
    t.observe_span(["a"])
    a = t.type_ids["a"]
    assert t.left[a].ta == t.right[a].ta == 0
    assert t.left[a].dummies == t.right[a].dummies == 1


def test_span_structure_vs_merged():
    # "a b" x100 as two singleton spans: no pairs, only dummies;
    # the same pieces inside one span: 100 right accessors for a
    split = BigramTables()
    split.observe_stream(spans_to_stream([["a"], ["b"]] * 100))
    a = split.type_ids["a"]
    assert split.right[a].ta == 0
    assert split.left[a].dummies == 100

    merged = BigramTables()
    merged.observe_stream(spans_to_stream([["a", "b"]] * 100))
    a = merged.type_ids["a"]
    assert merged.right[a].ta == 100


def test_stream_splits_on_flags():
    t = BigramTables()
    observe_stream(t, spans_to_stream([["x", "y"], ["y", "x"]]))
    x, y = t.type_ids["x"], t.type_ids["y"]
    assert t.right[x].ta == 1 and t.right[y].ta == 1
    assert t.left[x].dummies == 1 and t.left[y].dummies == 1


# --- windowed metrics ------------------------------------------------------


def test_av_partial_window():
    assert state_with([1, 2, 1, 3]).windowed_av() == 3.0


def test_av_degenerate_full_windows():
    assert state_with([7] * 2000, capacity=1000).windowed_av() == 1.0


def test_av_cycling_small_window():
    # x,y,z cycling with W=2: every full window holds 2 distinct
    s = state_with([1, 2, 3] * 20, capacity=2)
    assert s.windowed_av() == 2.0


def test_av_moving_average_brute_force():
    rng = random.Random(5)
    seq = [rng.randrange(6) for _ in range(200)]
    w = 16
    s = state_with(seq, capacity=w)
    expected = sum(
        len(set(seq[i : i + w])) for i in range(len(seq) - w + 1)
    ) / (len(seq) - w + 1)
    assert s.windowed_av() == pytest.approx(expected, abs=1e-12)


def test_au_all_identical():
    s = state_with([1] * 3000, capacity=1000)
    assert s.windowed_au() == pytest.approx(1 / 1000)


def test_au_all_distinct():
    s = state_with(range(3000), capacity=1000)
    assert s.windowed_au() == 1.0


def test_au_partial_window():
    assert state_with([1, 2, 1, 3]).windowed_au() == pytest.approx(3 / 4)


def test_eta_uniform_is_one():
    s = state_with(list(range(8)) * 125, capacity=1000)
    assert s.windowed_eta(pool=8) == pytest.approx(1.0, abs=1e-9)


def test_eta_uniform_large_pool():
    s = state_with(list(range(8)) * 125, capacity=1000)
    assert s.windowed_eta(pool=4096) == pytest.approx(3 / math.log2(1000))


def test_eta_single_accessor_zero():
    assert state_with([4] * 2000, capacity=1000).windowed_eta(pool=50) == 0.0


def test_eta_hand_example():
    # counts {x:3, y:1}, pool 2, fill 4
    s = state_with([1, 1, 2, 1])
    expected = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
    assert expected == pytest.approx(0.8113, abs=5e-5)
    assert s.windowed_eta(pool=2) == pytest.approx(expected)


def test_eta_pool_one_is_zero():
    assert state_with([1, 2, 3]).windowed_eta(pool=1) == 0.0


def test_eta_bad_pool():
    with pytest.raises(MetricsError):
        state_with([1]).windowed_eta(pool=0)


def test_eta_monotone_in_concentration():
    # 2-type windows: more mass on one type means lower efficiency
    etas = []
    for p in (0.6, 0.7, 0.8, 0.9):
        heavy = int(round(p * 1000))
        s = state_with([1] * heavy + [2] * (1000 - heavy), capacity=1000)
        etas.append(s.windowed_eta(pool=2))
    assert all(a > b for a, b in zip(etas, etas[1:]))


def test_lifetime_eta_matches_partial_window_case():
    s = AccessorState(1000, track_lifetime=True)
    for a in [1, 1, 2, 1]:
        s.push(a)
    assert s.lifetime_eta(pool=2) == pytest.approx(s.windowed_eta(pool=2))


def test_boundary_ratio():
    s = AccessorState()
    s.dummies = 100
    assert s.boundary_ratio() == 1.0
    s2 = state_with([1] * 95)
    s2.dummies = 5
    assert s2.boundary_ratio() == pytest.approx(0.05)
    assert AccessorState().boundary_ratio() == 0.0


# --- incremental vs batch oracle -------------------------------------------


def batch_stats(window):
    """Recompute distinct count and entropy accumulator from raw contents."""
    counts = {}
    for a in window:
        counts[a] = counts.get(a, 0) + 1
    acc = sum(c * math.log2(c) for c in counts.values())
    return len(counts), acc


def test_incremental_equals_batch_every_step():
    rng = random.Random(11)
    for _ in range(50):
        s = AccessorState(capacity=16)
        raw = []
        for _ in range(rng.randrange(1, 80)):
            a = rng.randrange(8)
            s.push(a)
            raw.append(a)
            distinct, acc = batch_stats(raw[-16:])
            assert s.distinct == distinct
            assert s.entropy_acc == pytest.approx(acc, abs=1e-10)
            assert sum(s.counts.values()) == min(s.ta, 16)


def test_au_times_fill_equals_av_per_window():
    rng = random.Random(13)
    for _ in range(200):
        s = AccessorState(capacity=16)
        for _ in range(rng.randrange(1, 60)):
            s.push(rng.randrange(5))
            fill = s.fill
            assert s.distinct / fill * fill == pytest.approx(s.distinct)
            assert 1 <= s.distinct <= min(s.ta, 16)


# --- conservation fuzzing --------------------------------------------------


def random_spans(rng, n_spans, alphabet):
    return [
        [rng.choice(alphabet) for _ in range(rng.randrange(1, 7))]
        for _ in range(n_spans)
    ]


def test_frequency_identity_fuzz():
    rng = random.Random(17)
    alphabet = list("abcdefgh")
    for _ in range(1000):
        t = BigramTables(window=8)
        spans = random_spans(rng, rng.randrange(1, 12), alphabet)
        t.observe_stream(spans_to_stream(spans))
        freq = {}
        for span in spans:
            for piece in span:
                freq[piece] = freq.get(piece, 0) + 1
        for piece, tid in t.type_ids.items():
            ls, rs = t.left[tid], t.right[tid]
            assert ls.ta + ls.dummies == freq[piece]
            assert rs.ta + rs.dummies == freq[piece]
        assert sum(s.ta for s in t.left) == t.total_pairs
        assert sum(s.ta for s in t.right) == t.total_pairs


def test_ta_total_identities():
    # pretokenized: each span of length k contributes k-1 pairs
    rng = random.Random(19)
    spans = random_spans(rng, 50, list("abcd"))
    t = BigramTables()
    t.observe_stream(spans_to_stream(spans))
    n_tokens = sum(len(s) for s in spans)
    assert t.total_pairs == n_tokens - len(spans)


# --- finalize --------------------------------------------------------------


def test_finalize_no_lexical_types():
    t = BigramTables()
    t.observe_span(["...", "!!"])
    with pytest.raises(MetricsError, match="no lexical types"):
        t.finalize()


def test_finalize_all_boundary_only():
    t = BigramTables()
    t.observe_stream(spans_to_stream([["a"], ["b"]] * 50))
    report = t.finalize()
    assert report.degenerate
    assert report.lr == 1.0
    assert report.retained_count == 0
    assert report.macro_av is None


def test_finalize_half_filtered():
    # a,b always bound together (retained); c,d always alone (filtered)
    t = BigramTables()
    t.observe_stream(spans_to_stream([["a", "b"], ["c"], ["d"]] * 50))
    report = t.finalize()
    assert report.lr == pytest.approx(0.5)
    assert report.retained_count == 2
    assert report.filtered_count == 2
    retained = {x.type for x in report.types if x.retained}
    assert retained == {"a", "b"}


def test_finalize_threshold_exactly_095():
    # 19 singleton occurrences and one pair: BR exactly 0.95 on one side
    t = BigramTables()
    for _ in range(19):
        t.observe_span(["q"])
    t.observe_span(["q", "r"])
    q = t.type_ids["q"]
    assert t.right[q].dummies == 19 and t.right[q].ta == 1
    br_r = t.right[q].boundary_ratio()
    assert br_r == pytest.approx(0.95)
    report = t.finalize()
    q_metrics = next(x for x in report.types if x.type == "q")
    # min(BR_L, BR_R) >= 0.95 filters the type
    assert not q_metrics.retained


def test_finalize_marker_insensitive_identity():
    t = BigramTables()
    t.observe_span(["▁kirj", "alle"])
    report = t.finalize()
    names = {x.type for x in report.types}
    assert names == {"▁kirj", "alle"}


def test_finalize_nonlexical_excluded_from_lr():
    t = BigramTables()
    t.observe_stream(spans_to_stream([["a", "."], ["a", "b"]] * 30))
    report = t.finalize()
    assert all(x.type != "." for x in report.types)


def test_full_windows_only_restricts_macro_set():
    t = BigramTables(window=4)
    # "a" sees plenty of accessors; "z" appears in only two pairs
    spans = [["a", "bcdefghij"[i % 9]] for i in range(60)] + [
        ["z", "a"],
        ["a", "z"],
    ]
    t.observe_stream(spans_to_stream(spans))
    loose = t.finalize()
    strict = t.finalize(full_windows_only=True)
    assert strict.retained_count < loose.retained_count


def test_pools_count_accessor_domains():
    t = BigramTables()
    t.observe_stream(spans_to_stream([["a", "b", "c"], ["a", "c"]]))
    pool_left, pool_right = t.pools()
    # left pool: types occurring as someone's left neighbor = {a, b}
    assert pool_left == 2
    # right pool: types occurring as someone's right neighbor = {b, c}
    assert pool_right == 2


def test_window_and_stride_validation():
    with pytest.raises(ValueError):
        BigramTables(window=0)
    with pytest.raises(ValueError):
        BigramTables(stride=0)


def test_tumbling_stride_subsamples_snapshots():
    seq = [random.Random(23).randrange(4) for _ in range(64)]
    moving = state_with(seq, capacity=8, stride=1)
    tumbling = state_with(seq, capacity=8, stride=8)
    assert moving.snapshots == 64 - 8 + 1
    assert tumbling.snapshots == 8
