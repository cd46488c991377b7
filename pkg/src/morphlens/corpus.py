"""Line-oriented UTF-8 corpus handling: streaming reads, reservoir sampling,
size statistics, and byte premiums.

A corpus is one sentence per line. Both "\n" and "\r\n" terminators are
accepted; terminators never count towards any statistic. Invalid UTF-8 is a
hard error (byte premiums and character counts must be exact).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Optional, Union


class CorpusError(Exception):
    """Raised for unreadable files or invalid UTF-8 input."""


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny seeded 64-bit PRNG (splitmix64).

    Used for reservoir sampling so that samples are reproducible across
    implementations: the algorithm is fully specified by Steele et al.'s
    splitmix64 reference (gamma 0x9E3779B97F4A7C15, two xor-shift-multiply
    rounds), independent of any language runtime.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        limit = _MASK64 + 1 - ((_MASK64 + 1) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def _decode_line(raw: bytes, base_offset: int) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(
            f"invalid UTF-8 at byte offset {base_offset + e.start}"
        ) from e


def _iter_path(path: Union[str, os.PathLike]) -> Iterator[str]:
    offset = 0
    try:
        with open(path, "rb") as f:
            for raw in f:
                stripped = raw
                if stripped.endswith(b"\n"):
                    stripped = stripped[:-1]
                if stripped.endswith(b"\r"):
                    stripped = stripped[:-1]
                yield _decode_line(stripped, offset)
                offset += len(raw)
    except OSError as e:
        raise CorpusError(f"cannot read corpus {path!r}: {e}") from e


@dataclass
class Corpus:
    """A deterministic, re-iterable source of text lines.

    Backed either by a file path (streamed, never fully loaded) or by an
    in-memory list of lines (e.g. the result of sampling).
    """

    path: Optional[Union[str, os.PathLike]] = None
    _lines: Optional[List[str]] = field(default=None, repr=False)

    def lines(self) -> Iterator[str]:
        if self._lines is not None:
            return iter(self._lines)
        if self.path is None:
            return iter(())
        return _iter_path(self.path)

    def __iter__(self) -> Iterator[str]:
        return self.lines()

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Corpus":
        return cls(path=None, _lines=list(lines))


@dataclass
class CorpusCounts:
    ccc: int = 0  # characters (Unicode scalar values, terminators excluded)
    cbc: int = 0  # UTF-8 bytes, terminators excluded
    cwc: int = 0  # pretokens, 0 when no pretokenizer given
    csc: int = 0  # lines
    ctc: Optional[int] = None  # tokens, present only after tokenization


def read_lines(path: Union[str, os.PathLike]) -> Corpus:
    """Open a corpus for streaming. I/O and decode errors surface lazily,
    on iteration, except for a missing file which fails fast."""
    if not os.path.exists(path):
        raise CorpusError(f"corpus file not found: {path!r}")
    return Corpus(path=path)


def sample_lines(corpus: Corpus, n: int, seed: int) -> Corpus:
    """Uniform sample of n lines without replacement (reservoir strategy).

    Single pass; deterministic per seed; returns all lines when the corpus
    has at most n. Output order is the reservoir order, which equals corpus
    order whenever no replacement occurred.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = SplitMix64(seed)
    reservoir: List[str] = []
    for i, line in enumerate(corpus.lines()):
        if i < n:
            reservoir.append(line)
        else:
            j = rng.randint_below(i + 1)
            if j < n:
                reservoir[j] = line
    return Corpus.from_lines(reservoir)


def corpus_counts(
    corpus: Corpus, words: Optional[Callable[[str], List[str]]] = None
) -> CorpusCounts:
    """Count characters, UTF-8 bytes, lines, and (optionally) pretokens.

    `words` is a pretokenizer callable; without one, cwc stays 0.
    """
    counts = CorpusCounts()
    for line in corpus.lines():
        counts.csc += 1
        counts.ccc += len(line)
        counts.cbc += len(line.encode("utf-8"))
        if words is not None:
            counts.cwc += len(words(line))
    return counts


def byte_premium(target: Corpus, reference: Corpus) -> float:
    """UTF-8 byte ratio cbc(target) / cbc(reference) for parallel text."""
    ref = corpus_counts(reference).cbc
    if ref == 0:
        raise CorpusError("reference corpus has zero bytes")
    return corpus_counts(target).cbc / ref
