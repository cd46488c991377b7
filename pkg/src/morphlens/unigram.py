"""Token-unigram metrics (TTR, MATTR, MTL, Rényi efficiency) and word-based
metrics (mean word length, tokens per character)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .pretokenize import DEFAULT_MARKER

DEFAULT_MATTR_WINDOW = 500
DEFAULT_RENYI_ALPHA = 2.5


@dataclass
class FrequencyTable:
    counts: Dict[str, int]
    total: int

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "FrequencyTable":
        counts = Counter(tokens)
        return cls(counts=dict(counts), total=sum(counts.values()))


def ttr(tokens: Sequence[str]) -> float:
    """Type-token ratio: distinct types over total tokens."""
    if not tokens:
        raise ValueError("token sequence must be nonempty")
    return len(set(tokens)) / len(tokens)


def mattr(tokens: Sequence[str], window: int = DEFAULT_MATTR_WINDOW) -> float:
    """Moving-average TTR over fixed-size windows (stride 1), computed
    incrementally. Falls back to plain TTR for sequences shorter than the
    window."""
    if not tokens:
        raise ValueError("token sequence must be nonempty")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    n = len(tokens)
    if n < window:
        return ttr(tokens)
    counts: Dict[str, int] = {}
    distinct = 0
    for tok in tokens[:window]:
        c = counts.get(tok, 0)
        counts[tok] = c + 1
        if c == 0:
            distinct += 1
    total = distinct
    for i in range(window, n):
        out = tokens[i - window]
        c = counts[out]
        if c == 1:
            del counts[out]
            distinct -= 1
        else:
            counts[out] = c - 1
        tok = tokens[i]
        c = counts.get(tok, 0)
        counts[tok] = c + 1
        if c == 0:
            distinct += 1
        total += distinct
    return total / (n - window + 1) / window


def mtl(tokens: Iterable[str], marker: str = DEFAULT_MARKER) -> float:
    """Micro-average characters per token, boundary markers stripped."""
    chars = 0
    count = 0
    for tok in tokens:
        chars += len(tok) - (len(marker) if marker and tok.startswith(marker) else 0)
        count += 1
    if count == 0:
        raise ValueError("token sequence must be nonempty")
    return chars / count


def renyi_efficiency(freq: FrequencyTable, alpha: float = DEFAULT_RENYI_ALPHA) -> float:
    """Rényi entropy H_alpha of the token distribution over its maximal
    entropy H_0 = log2(support size). alpha = 1 is the Shannon limit; a
    single-type support yields 0 by convention."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if not freq.counts or freq.total <= 0:
        raise ValueError("frequency table must be nonempty")
    support = len(freq.counts)
    if support == 1:
        return 0.0
    h0 = math.log2(support)
    total = freq.total
    if alpha == 1.0:
        h = -sum((c / total) * math.log2(c / total) for c in freq.counts.values())
    elif alpha == 0.0:
        h = h0
    else:
        s = sum((c / total) ** alpha for c in freq.counts.values())
        h = math.log2(s) / (1.0 - alpha)
    return h / h0


@dataclass
class WordMetrics:
    mwl: float  # macro-average characters per word
    s: float  # macro-average tokens per character


def word_metrics(words: Sequence[Tuple[str, int]]) -> WordMetrics:
    """Per-word macro averages over (word, token_count) pairs."""
    if not words:
        raise ValueError("word sequence must be nonempty")
    mwl_sum = 0.0
    s_sum = 0.0
    for word, token_count in words:
        length = len(word)
        if length == 0:
            raise ValueError("words must be nonempty")
        mwl_sum += length
        s_sum += token_count / length
    n = len(words)
    return WordMetrics(mwl=mwl_sum / n, s=s_sum / n)
