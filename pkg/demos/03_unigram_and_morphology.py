"""
Unigram diversity metrics and morphological boundary evaluation
===============================================================

First the token-unigram battery: TTR collapses as a corpus grows, MATTR
does not; Renyi efficiency measures how uniformly the vocabulary is used.
Then boundary evaluation: a segmenter's splits are compared against
reference morph boundaries, both over all boundaries (micro F1) and over
just the stem-suffix boundary (recall, with two treatments of words the
tokenizer stores whole).
"""

import random

from morphlens.morph_eval import (
    CREDIT_VOCAB,
    EXCLUDE_VOCAB,
    SegmentationRef,
    derive_subsets,
    eval_full,
    morphscore,
)
from morphlens.tokenizer import Vocabulary
from morphlens.unigram import FrequencyTable, mattr, mtl, renyi_efficiency, ttr

rng = random.Random(0)
vocab_words = [f"w{i}" for i in range(200)]
stream = [rng.choice(vocab_words) for _ in range(20000)]

print("TTR  first 2k tokens: %.4f" % ttr(stream[:2000]))
print("TTR  all 20k tokens:  %.4f   (collapses with size)" % ttr(stream))
print("MATTR first 2k:       %.4f" % mattr(stream[:2000], 500))
print("MATTR all 20k:        %.4f   (stable)" % mattr(stream, 500))
print("MTL: %.3f chars/token" % mtl(stream))

freq = FrequencyTable.from_tokens(stream)
print("Renyi efficiency (alpha=2.5): %.4f" % renyi_efficiency(freq))

# ---------------------------------------------------------------------------
# boundary evaluation against reference segmentations

refs = [
    SegmentationRef("gathered", ("gather", "ed")),
    SegmentationRef("arabaları", ("araba", "lar", "ı")),
]

predictions = {
    "gathered": ["gather", "ed"],  # exact
    "arabaları": ["araba", "ları"],  # recovers the stem boundary only
}
segment = lambda word: predictions[word]

full = eval_full(segment, refs)
print("\nfull alignment: P=%.3f R=%.3f F1=%.3f" % (full.precision, full.recall, full.f1))

# words with 3+ morphs split into stem-suffix and suffix-suffix views
subsets = derive_subsets(refs)
stem_only = eval_full(segment, subsets.stem_suffix)
print("stem-suffix boundary only: F1=%.3f" % stem_only.f1)

# the full word is a vocabulary piece, so the two modes disagree: it is
# either left untested or automatically credited
vocab = Vocabulary(pieces={"arabaları": -7.0, "araba": -8.0, "ları": -8.5})
for mode in (EXCLUDE_VOCAB, CREDIT_VOCAB):
    score = morphscore(segment, subsets.stem_suffix, vocab, mode)
    print(
        "morphscore %-13s recall=%.3f evaluated=%d skipped=%d"
        % (mode, score.recall, score.n_evaluated, score.n_skipped)
    )
