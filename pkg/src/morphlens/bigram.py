"""Token-bigram gradient proxies of morphology.

For every token type, and separately for its left (predecessor) and right
(successor) neighbors inside a word span, we keep a sliding window of the
last W accessors (default W=1000) and derive:

  AV   accessor variety: distinct accessors per window, moving-averaged
  TA   total (non-dummy) accessors seen over the type's lifetime
  AU   accessor uniqueness: AV / window fill, the bigram analogue of TTR
  eta  entropic efficiency: window entropy over the maximal entropy
       log2(min(accessor pool, fill)), in [0, 1]
  BR   boundary ratio b / (TA + b), b counting span-edge "dummy" accessors
  LR   lexicalization ratio: share of lexical types filtered for
       min(BR_L, BR_R) >= 0.95

Dummies never enter windows or count tables; they are tallied only in b.
Window statistics (distinct count and the entropy accumulator sum c*log2(c))
update in O(1) per element entering or leaving the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .pretokenize import DEFAULT_MARKER, is_lexical
from .tokenizer import Token

DEFAULT_WINDOW = 1000

# cache of c * log2(c) for small counts; index 0 and 1 are 0
_CLOG2: List[float] = [0.0, 0.0]


def _clog2(c: int) -> float:
    try:
        return _CLOG2[c]
    except IndexError:
        while len(_CLOG2) <= c:
            k = len(_CLOG2)
            _CLOG2.append(k * math.log2(k))
        return _CLOG2[c]


class MetricsError(Exception):
    pass


class AccessorState:
    """Sliding-window accessor statistics for one token type on one side."""

    __slots__ = (
        "capacity",
        "stride",
        "window",
        "head",
        "fill",
        "counts",
        "distinct",
        "entropy_acc",
        "ta",
        "dummies",
        "av_sum",
        "h_sum",
        "snapshots",
        "life_counts",
    )

    def __init__(
        self,
        capacity: int = DEFAULT_WINDOW,
        stride: int = 1,
        track_lifetime: bool = False,
    ):
        self.capacity = capacity
        self.stride = stride
        self.window: List[int] = []  # ring buffer once full
        self.head = 0
        self.fill = 0
        self.counts: Dict[int, int] = {}
        self.distinct = 0
        self.entropy_acc = 0.0  # sum of c * log2(c) over window counts
        self.ta = 0
        self.dummies = 0
        self.av_sum = 0  # sum of distinct counts over sampled full windows
        self.h_sum = 0.0  # sum of window entropies over sampled full windows
        self.snapshots = 0
        # lifetime count table, only allocated when eta is to be computed
        # over the whole accessor history instead of windows
        self.life_counts: Optional[Dict[int, int]] = {} if track_lifetime else None

    def push(self, accessor: int) -> None:
        if self.life_counts is not None:
            self.life_counts[accessor] = self.life_counts.get(accessor, 0) + 1
        counts = self.counts
        if self.fill == self.capacity:
            old = self.window[self.head]
            self.window[self.head] = accessor
            self.head = (self.head + 1) % self.capacity
            c = counts[old]
            if c == 1:
                del counts[old]
                self.distinct -= 1
            else:
                counts[old] = c - 1
            self.entropy_acc += _clog2(c - 1) - _clog2(c)
        else:
            self.window.append(accessor)
            self.fill += 1
        c = counts.get(accessor, 0)
        counts[accessor] = c + 1
        if c == 0:
            self.distinct += 1
        self.entropy_acc += _clog2(c + 1) - _clog2(c)
        self.ta += 1
        if self.fill == self.capacity and (self.ta - self.capacity) % self.stride == 0:
            self.av_sum += self.distinct
            w = self.capacity
            # clamp: accumulated rounding can push a zero entropy negative
            self.h_sum += max(0.0, math.log2(w) - self.entropy_acc / w)
            self.snapshots += 1

    # --- windowed metrics -------------------------------------------------

    def windowed_av(self) -> float:
        """Moving average of per-window distinct counts; a single partial
        window for types with fewer than W lifetime accessors."""
        if self.snapshots:
            return self.av_sum / self.snapshots
        return float(self.distinct)

    def windowed_au(self) -> float:
        if self.snapshots:
            return self.av_sum / self.snapshots / self.capacity
        if self.fill == 0:
            return 0.0
        return self.distinct / self.fill

    def windowed_eta(self, pool: int) -> float:
        """Entropy over the maximal entropy log2(min(pool, fill)); windows
        with min(pool, fill) <= 1 define eta = 0."""
        if pool < 1:
            raise MetricsError(f"accessor pool must be >= 1, got {pool}")
        if self.snapshots:
            denom_arg = min(pool, self.capacity)
            if denom_arg <= 1:
                return 0.0
            return min(1.0, self.h_sum / self.snapshots / math.log2(denom_arg))
        if self.fill == 0:
            return 0.0
        denom_arg = min(pool, self.fill)
        if denom_arg <= 1:
            return 0.0
        h = max(0.0, math.log2(self.fill) - self.entropy_acc / self.fill)
        return min(1.0, h / math.log2(denom_arg))

    def lifetime_eta(self, pool: int) -> float:
        """Eta over the whole accessor history instead of windows."""
        if pool < 1:
            raise MetricsError(f"accessor pool must be >= 1, got {pool}")
        if self.life_counts is None:
            raise MetricsError("lifetime counts were not tracked")
        if self.ta == 0:
            return 0.0
        denom_arg = min(pool, self.ta)
        if denom_arg <= 1:
            return 0.0
        acc = sum(_clog2(c) for c in self.life_counts.values())
        h = max(0.0, math.log2(self.ta) - acc / self.ta)
        return min(1.0, h / math.log2(denom_arg))

    def boundary_ratio(self) -> float:
        total = self.ta + self.dummies
        return self.dummies / total if total else 0.0


@dataclass
class TypeMetrics:
    type: str
    f: int
    av_l: float
    av_r: float
    au_l: float
    au_r: float
    eta_l: float
    eta_r: float
    br_l: float
    br_r: float
    retained: bool

    @property
    def av_mean(self) -> float:
        return (self.av_l + self.av_r) / 2

    @property
    def av_min(self) -> float:
        return min(self.av_l, self.av_r)

    @property
    def au_mean(self) -> float:
        return (self.au_l + self.au_r) / 2

    @property
    def eta_mean(self) -> float:
        return (self.eta_l + self.eta_r) / 2


@dataclass
class BigramReport:
    types: List[TypeMetrics]
    lr: float
    retained_count: int
    filtered_count: int
    macro_av: Optional[float]  # macro-averages over retained types
    macro_av_min: Optional[float]
    macro_au: Optional[float]
    macro_eta: Optional[float]
    degenerate: bool = False  # every lexical type was filtered


class BigramTables:
    """Accumulates per-type left/right accessor statistics over token spans.

    One instance is owned by exactly one sequential accumulation pass;
    independent corpora use independent tables.
    """

    def __init__(
        self,
        window: int = DEFAULT_WINDOW,
        stride: int = 1,
        lifetime_eta: bool = False,
    ):
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        if stride < 1:
            raise ValueError(f"stride must be >= 1, got {stride}")
        self.window = window
        self.stride = stride
        self.lifetime_eta = lifetime_eta
        self.type_ids: Dict[str, int] = {}
        self.type_strings: List[str] = []
        self.left: List[AccessorState] = []
        self.right: List[AccessorState] = []
        self.total_pairs = 0

    def _intern(self, piece: str) -> int:
        tid = self.type_ids.get(piece)
        if tid is None:
            tid = len(self.type_strings)
            self.type_ids[piece] = tid
            self.type_strings.append(piece)
            self.left.append(
                AccessorState(self.window, self.stride, self.lifetime_eta)
            )
            self.right.append(
                AccessorState(self.window, self.stride, self.lifetime_eta)
            )
        return tid

    def observe_span(self, pieces: Sequence[str]) -> None:
        """One word span: adjacent pairs feed both sides' windows; the first
        and last token each tally one dummy."""
        if not pieces:
            return
        tids = [self._intern(p) for p in pieces]
        left = self.left
        right = self.right
        left[tids[0]].dummies += 1
        right[tids[-1]].dummies += 1
        prev = tids[0]
        for cur in tids[1:]:
            right[prev].push(cur)
            left[cur].push(prev)
            prev = cur
        self.total_pairs += len(tids) - 1

    def observe_stream(self, stream: Iterable[Token]) -> None:
        """Consume a flagged token stream, splitting it into spans."""
        span: List[str] = []
        for token in stream:
            if token.word_initial and span:
                # tolerate a missing word_final flag on the previous span
                self.observe_span(span)
                span = []
            span.append(token.piece)
            if token.word_final:
                self.observe_span(span)
                span = []
        if span:
            self.observe_span(span)

    def frequency(self, tid: int) -> int:
        left = self.left[tid]
        return left.ta + left.dummies

    def pools(self) -> Tuple[int, int]:
        """(pool_left, pool_right): the left pool is the number of types
        possessing a right accessor (types occurring as someone's left
        neighbor), and symmetrically for the right pool."""
        pool_left = sum(1 for s in self.right if s.ta > 0)
        pool_right = sum(1 for s in self.left if s.ta > 0)
        return pool_left, pool_right

    def finalize(
        self, marker: str = DEFAULT_MARKER, full_windows_only: bool = False
    ) -> BigramReport:
        """Filter to lexical types, apply the boundary-ratio filter, and
        macro-average the windowed metrics over the retained set.

        With full_windows_only, types whose accessor history never filled a
        window on one of the sides are excluded from the macro averages
        (they still appear per-type and still count toward LR)."""
        observed = [tid for tid in range(len(self.type_strings)) if self.frequency(tid) > 0]
        lexical = [tid for tid in observed if is_lexical(self.type_strings[tid], marker)]
        if not lexical:
            raise MetricsError("no lexical types observed")
        pool_left, pool_right = self.pools()

        types: List[TypeMetrics] = []
        retained: List[TypeMetrics] = []
        filtered_count = 0
        for tid in lexical:
            ls, rs = self.left[tid], self.right[tid]
            br_l, br_r = ls.boundary_ratio(), rs.boundary_ratio()
            keep = min(br_l, br_r) < 0.95
            if self.lifetime_eta:
                eta_l = ls.lifetime_eta(pool_left) if pool_left else 0.0
                eta_r = rs.lifetime_eta(pool_right) if pool_right else 0.0
            else:
                eta_l = ls.windowed_eta(pool_left) if pool_left else 0.0
                eta_r = rs.windowed_eta(pool_right) if pool_right else 0.0
            tm = TypeMetrics(
                type=self.type_strings[tid],
                f=self.frequency(tid),
                av_l=ls.windowed_av(),
                av_r=rs.windowed_av(),
                au_l=ls.windowed_au(),
                au_r=rs.windowed_au(),
                eta_l=eta_l,
                eta_r=eta_r,
                br_l=br_l,
                br_r=br_r,
                retained=keep,
            )
            types.append(tm)
            if keep:
                if not full_windows_only or (ls.snapshots and rs.snapshots):
                    retained.append(tm)
            else:
                filtered_count += 1

        lr = filtered_count / len(lexical)
        if retained:
            n = len(retained)
            return BigramReport(
                types=types,
                lr=lr,
                retained_count=n,
                filtered_count=filtered_count,
                macro_av=sum(t.av_mean for t in retained) / n,
                macro_av_min=sum(t.av_min for t in retained) / n,
                macro_au=sum(t.au_mean for t in retained) / n,
                macro_eta=sum(t.eta_mean for t in retained) / n,
            )
        return BigramReport(
            types=types,
            lr=lr,
            retained_count=0,
            filtered_count=filtered_count,
            macro_av=None,
            macro_av_min=None,
            macro_au=None,
            macro_eta=None,
            degenerate=filtered_count == len(lexical),
        )


def observe_stream(tables: BigramTables, stream: Iterable[Token]) -> BigramTables:
    """Functional wrapper over BigramTables.observe_stream."""
    tables.observe_stream(stream)
    return tables
