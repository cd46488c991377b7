"""
Segmentation and token-bigram accessor metrics
==============================================

A unigram-LM vocabulary assigns each piece a log-probability; Viterbi
segmentation picks the cover of each word maximizing the summed score. The
bigram tables then watch which types occur next to which, in sliding
windows, and summarize each type's neighborhood:

  AV   how many distinct neighbors a type has per window
  AU   AV over window fill (a bigram analogue of the type-token ratio)
  eta  how uniformly the neighbor slots are used (1 = maximally uniform)
  BR   how often the type touches a word edge instead of a neighbor
  LR   share of word-like types the tokenizer keeps whole

A suffixing toy language makes the numbers interpretable: stems are
followed by many different suffixes, so stems get high right-hand AV,
while each suffix sees many stems on its left.
"""

import random

from morphlens.bigram import BigramTables
from morphlens.tokenizer import Vocabulary, segment_greedy, segment_viterbi

rng = random.Random(0)
stems = ["talo", "auto", "kissa", "koira", "kirja"]
suffixes = ["lla", "ssa", "sta", "lle", "ksi"]

vocab = Vocabulary(
    pieces={**{s: -4.0 for s in stems}, **{s: -5.0 for s in suffixes}}
)

word = "talolla"
print("viterbi:", segment_viterbi(word, vocab))
print("greedy: ", segment_greedy(word, vocab))

# build a corpus of stem+suffix words and accumulate the tables
tables = BigramTables(window=50)
for _ in range(3000):
    w = rng.choice(stems) + rng.choice(suffixes)
    tables.observe_span(segment_viterbi(w, vocab))

report = tables.finalize()
print("\n type      f    AV_L  AV_R   eta    BR_L  BR_R")
for t in sorted(report.types, key=lambda t: -t.f):
    print(
        f" {t.type:<8} {t.f:>5} {t.av_l:>5.1f} {t.av_r:>5.1f}"
        f" {t.eta_mean:>6.3f} {t.br_l:>5.2f} {t.br_r:>5.2f}"
    )
print("\nmacro AV %.2f, macro eta %.3f, LR %.2f"
      % (report.macro_av, report.macro_eta, report.lr))
