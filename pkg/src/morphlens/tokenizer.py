"""Unigram-LM subword segmentation: vocabulary loading, Viterbi
maximum-likelihood inference, a greedy longest-match baseline, and corpus
streaming with word-boundary flags.

Vocabulary files are UTF-8 TSV `piece<TAB>logprob` (natural log), the
two-column export format of common unigram-LM tokenizer toolkits. Scores are
used as stored; there is no renormalization and no training here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple, Union

from .corpus import Corpus
from .pretokenize import DEFAULT_MARKER, pretokenize

# Each unknown character costs this much; any cover using fewer unknowns
# always beats one using more, regardless of real piece scores.
_UNK_SCORE = -1.0e6

DEFAULT_UNK = "<unk>"


class VocabularyError(Exception):
    """Raised for malformed or inconsistent vocabulary files."""


@dataclass
class Vocabulary:
    """Immutable piece -> natural-log-probability table.

    `boundary_marker` is auto-detected on load: if any piece contains the
    marker character, segmentation prepends it to pretokens so third-party
    vocabularies load unchanged.
    """

    pieces: Dict[str, float]
    unk_piece: str = DEFAULT_UNK
    boundary_marker: Optional[str] = None
    _max_piece_len: int = field(init=False, repr=False)

    def __post_init__(self):
        if not self.pieces:
            raise VocabularyError("vocabulary is empty")
        self._max_piece_len = max(len(p) for p in self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __contains__(self, piece: str) -> bool:
        return piece in self.pieces


class Token(NamedTuple):
    piece: str
    word_initial: bool
    word_final: bool


def load_vocab(
    path: Union[str, os.PathLike],
    unk_piece: str = DEFAULT_UNK,
    marker: str = DEFAULT_MARKER,
) -> Vocabulary:
    """Load a TSV vocabulary. Duplicate pieces and non-numeric scores are
    errors, reported with their line number."""
    pieces: Dict[str, float] = {}
    uses_marker = False
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise VocabularyError(
                    f"{path}:{lineno}: expected 'piece<TAB>logprob', got {line!r}"
                )
            piece, score_str = parts
            if not piece:
                raise VocabularyError(f"{path}:{lineno}: empty piece")
            if piece in pieces:
                raise VocabularyError(f"{path}:{lineno}: duplicate piece {piece!r}")
            try:
                score = float(score_str)
            except ValueError:
                raise VocabularyError(
                    f"{path}:{lineno}: non-numeric score {score_str!r}"
                ) from None
            pieces[piece] = score
            if marker in piece:
                uses_marker = True
    return Vocabulary(
        pieces=pieces,
        unk_piece=unk_piece,
        boundary_marker=marker if uses_marker else None,
    )


def segment_viterbi(pretoken: str, vocab: Vocabulary) -> List[str]:
    """Maximum-likelihood cover of the pretoken by vocabulary pieces.

    Characters no piece covers map to the unknown piece, one per character.
    Ties break deterministically: highest score, then fewest tokens, then
    lexicographically smallest piece sequence.
    """
    if not pretoken:
        raise ValueError("pretoken must be nonempty")
    text = _with_marker(pretoken, vocab)
    n = len(text)
    pieces = vocab.pieces
    max_len = vocab._max_piece_len
    # best[i] covers text[:i]; entries are (score, n_tokens, piece_tuple).
    best: List[Optional[Tuple[float, int, Tuple[str, ...]]]] = [None] * (n + 1)
    best[0] = (0.0, 0, ())
    for i in range(1, n + 1):
        candidate = None
        for j in range(max(0, i - max_len), i):
            prev = best[j]
            if prev is None:
                continue
            piece = text[j:i]
            score = pieces.get(piece)
            if score is None:
                continue
            cand = (prev[0] + score, prev[1] + 1, prev[2] + (piece,))
            if candidate is None or _better(cand, candidate):
                candidate = cand
        if candidate is None:
            # unknown fallback: one unk per uncovered character
            prev = best[i - 1]
            assert prev is not None
            candidate = (prev[0] + _UNK_SCORE, prev[1] + 1, prev[2] + (vocab.unk_piece,))
        else:
            prev = best[i - 1]
            if prev is not None:
                unk_cand = (
                    prev[0] + _UNK_SCORE,
                    prev[1] + 1,
                    prev[2] + (vocab.unk_piece,),
                )
                if _better(unk_cand, candidate):
                    candidate = unk_cand
        best[i] = candidate
    assert best[n] is not None
    return list(best[n][2])


def _better(a: Tuple[float, int, Tuple[str, ...]], b: Tuple[float, int, Tuple[str, ...]]) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def segment_greedy(pretoken: str, vocab: Vocabulary) -> List[str]:
    """Longest-prefix-match left to right; unmatched characters map to the
    unknown piece."""
    if not pretoken:
        raise ValueError("pretoken must be nonempty")
    text = _with_marker(pretoken, vocab)
    pieces = vocab.pieces
    max_len = vocab._max_piece_len
    out: List[str] = []
    i = 0
    n = len(text)
    while i < n:
        match = None
        for length in range(min(max_len, n - i), 0, -1):
            piece = text[i : i + length]
            if piece in pieces:
                match = piece
                break
        if match is None:
            out.append(vocab.unk_piece)
            i += 1
        else:
            out.append(match)
            i += len(match)
    return out


def _with_marker(pretoken: str, vocab: Vocabulary) -> str:
    marker = vocab.boundary_marker
    if marker and not pretoken.startswith(marker):
        return marker + pretoken
    return pretoken


def strip_marker(token: str, marker: Optional[str]) -> str:
    if marker and token.startswith(marker):
        return token[len(marker) :]
    return token


def tokenize_corpus(
    corpus: Corpus,
    vocab: Vocabulary,
    pretokenized: bool = True,
    greedy: bool = False,
) -> Iterator[Token]:
    """Stream tokens with word_initial/word_final flags.

    Pretokenized mode segments each pretoken independently (bigram statistics
    then stay within words). Otherwise each whole line is one span, with
    whitespace rewritten to the boundary marker when the vocabulary uses one.
    """
    segment = segment_greedy if greedy else segment_viterbi
    cache: Dict[str, List[str]] = {}
    for line in corpus.lines():
        if pretokenized:
            for pretoken in pretokenize(line):
                tokens = cache.get(pretoken)
                if tokens is None:
                    tokens = segment(pretoken, vocab)
                    cache[pretoken] = tokens
                last = len(tokens) - 1
                for k, piece in enumerate(tokens):
                    yield Token(piece, k == 0, k == last)
        else:
            if not line:
                continue
            marker = vocab.boundary_marker
            text = line.replace(" ", marker) if marker else line
            tokens = segment(text, vocab)
            last = len(tokens) - 1
            for k, piece in enumerate(tokens):
                yield Token(piece, k == 0, k == last)
