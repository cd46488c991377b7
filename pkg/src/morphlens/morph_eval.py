"""Evaluate subword segmentations against reference morphological
segmentations.

Boundaries are character offsets interior to the word; word edges never
count. Full alignment is micro-averaged boundary precision/recall/F1.
MorphScore-style evaluation checks the single stem-suffix boundary per word,
with two treatments of words that are themselves vocabulary pieces.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from .pretokenize import DEFAULT_MARKER
from .tokenizer import Vocabulary, strip_marker

Segmenter = Callable[[str], Sequence[str]]

EXCLUDE_VOCAB = "exclude_vocab"
CREDIT_VOCAB = "credit_vocab"


class MorphEvalError(Exception):
    pass


@dataclass(frozen=True)
class SegmentationRef:
    word: str
    morphs: Tuple[str, ...]

    def boundaries(self) -> FrozenSet[int]:
        """Cumulative morph-end offsets, excluding 0 and len(word)."""
        out: Set[int] = set()
        pos = 0
        for morph in self.morphs[:-1]:
            pos += len(morph)
            out.add(pos)
        return frozenset(out)


@dataclass
class AlignmentResult:
    tp: int
    pred_total: int
    ref_total: int

    @property
    def precision(self) -> float:
        return self.tp / self.pred_total if self.pred_total else 0.0

    @property
    def recall(self) -> float:
        return self.tp / self.ref_total if self.ref_total else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0


@dataclass
class RefLoadResult:
    refs: List[SegmentationRef]
    rejected: int  # entries whose morph concatenation did not match the word


def load_refs(path: Union[str, os.PathLike]) -> RefLoadResult:
    """Parse a TSV of `word<TAB>morph1|morph2|...`. Entries whose morphs do
    not concatenate to the word are skipped and tallied, not repaired."""
    refs: List[SegmentationRef] = []
    rejected = 0
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                rejected += 1
                continue
            word, morph_field = parts
            morphs = tuple(m for m in morph_field.split("|") if m)
            if not morphs or "".join(morphs) != word:
                rejected += 1
                continue
            refs.append(SegmentationRef(word=word, morphs=morphs))
    return RefLoadResult(refs=refs, rejected=rejected)


def predicted_boundaries(
    tokens: Sequence[str], marker: Optional[str] = DEFAULT_MARKER
) -> FrozenSet[int]:
    """Cumulative token-end offsets (markers stripped), word edges excluded."""
    out: Set[int] = set()
    pos = 0
    stripped = [strip_marker(t, marker) for t in tokens]
    total = sum(len(t) for t in stripped)
    for tok in stripped[:-1]:
        pos += len(tok)
        if 0 < pos < total:
            out.add(pos)
    return frozenset(out)


def _word_counts(pred: FrozenSet[int], ref: FrozenSet[int]) -> AlignmentResult:
    return AlignmentResult(tp=len(pred & ref), pred_total=len(pred), ref_total=len(ref))


def eval_full(
    segmenter: Segmenter,
    refs: Sequence[SegmentationRef],
    marker: Optional[str] = DEFAULT_MARKER,
) -> AlignmentResult:
    """Micro-averaged boundary precision/recall/F1 over all words.

    Words with several references (same surface, different segmentations)
    are scored against their max-F1 reference.
    """
    if not refs:
        raise MorphEvalError("reference list is empty")
    by_word: Dict[str, List[SegmentationRef]] = {}
    for ref in refs:
        by_word.setdefault(ref.word, []).append(ref)
    tp = pred_total = ref_total = 0
    for word, candidates in by_word.items():
        pred = predicted_boundaries(segmenter(word), marker)
        best = max((_word_counts(pred, c.boundaries()) for c in candidates),
                   key=lambda r: r.f1)
        tp += best.tp
        pred_total += best.pred_total
        ref_total += best.ref_total
    return AlignmentResult(tp=tp, pred_total=pred_total, ref_total=ref_total)


@dataclass
class SubsetRefs:
    stem_suffix: List[SegmentationRef]
    suffix_suffix: List[SegmentationRef]


def derive_subsets(refs: Sequence[SegmentationRef]) -> SubsetRefs:
    """From words with at least three morphs, derive one reference set
    keeping only the first (stem-suffix) boundary and one keeping all other
    (suffix-suffix) boundaries."""
    stem_suffix: List[SegmentationRef] = []
    suffix_suffix: List[SegmentationRef] = []
    for ref in refs:
        if len(ref.morphs) < 3:
            continue
        stem, rest = ref.morphs[0], "".join(ref.morphs[1:])
        stem_suffix.append(SegmentationRef(ref.word, (stem, rest)))
        suffix_suffix.append(SegmentationRef(ref.word, (stem + ref.morphs[1],) + ref.morphs[2:]))
    return SubsetRefs(stem_suffix=stem_suffix, suffix_suffix=suffix_suffix)


@dataclass
class MorphScoreResult:
    recall: float
    precision: float
    f1: float
    n_evaluated: int
    n_skipped: int  # words left untested in exclude_vocab mode


def morphscore(
    segmenter: Segmenter,
    refs: Sequence[SegmentationRef],
    vocab: Vocabulary,
    mode: str = EXCLUDE_VOCAB,
    marker: Optional[str] = DEFAULT_MARKER,
) -> MorphScoreResult:
    """Stem-suffix boundary evaluation in the two vocabulary modes: in-vocab
    words are either left untested (exclude_vocab) or always counted as
    recalled (credit_vocab). Each reference must carry exactly one boundary.
    Precision and F1 are scored against the same single-boundary references.
    """
    if mode not in (EXCLUDE_VOCAB, CREDIT_VOCAB):
        raise MorphEvalError(f"unknown mode {mode!r}")
    if not refs:
        raise MorphEvalError("reference list is empty")
    tp = pred_total = ref_total = 0
    evaluated = skipped = 0
    for ref in refs:
        bounds = ref.boundaries()
        if len(bounds) != 1:
            raise MorphEvalError(
                f"morphscore reference {ref.word!r} has {len(bounds)} boundaries, expected 1"
            )
        in_vocab = ref.word in vocab or (
            vocab.boundary_marker and (vocab.boundary_marker + ref.word) in vocab
        )
        if in_vocab:
            if mode == EXCLUDE_VOCAB:
                skipped += 1
                continue
            evaluated += 1
            tp += 1
            pred_total += 1
            ref_total += 1
            continue
        evaluated += 1
        pred = predicted_boundaries(segmenter(ref.word), marker)
        counts = _word_counts(pred, bounds)
        tp += counts.tp
        pred_total += counts.pred_total
        ref_total += counts.ref_total
    totals = AlignmentResult(tp=tp, pred_total=pred_total, ref_total=ref_total)
    return MorphScoreResult(
        recall=totals.recall,
        precision=totals.precision,
        f1=totals.f1,
        n_evaluated=evaluated,
        n_skipped=skipped,
    )
