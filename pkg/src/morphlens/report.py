"""End-to-end pipelines (corpus -> tokenize -> metrics) and multi-language
comparison reports.

A run is described by an INI-style config file: one `[run]` section with
shared settings and one `[language:NAME]` section per language. Example:

    [run]
    window = 1000
    stride = 1
    mattr_window = 500
    alpha = 2.5
    pretokenized = true
    percent = true
    sort_by = eta

    [language:English]
    corpus = data/en.txt
    vocab = vocabs/en.tsv
    grouping = Fusional

Languages are processed as independent units of work; one failing language
marks its row failed without killing the batch. Worker count can be
overridden with the MORPHLENS_WORKERS environment variable.
"""

from __future__ import annotations

import configparser
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .bigram import DEFAULT_WINDOW, BigramReport, BigramTables
from .corpus import Corpus, CorpusCounts, corpus_counts, read_lines
from .pretokenize import DEFAULT_MARKER, pretokenize
from .tokenizer import Vocabulary, load_vocab, segment_greedy, segment_viterbi, strip_marker
from .unigram import (
    DEFAULT_MATTR_WINDOW,
    DEFAULT_RENYI_ALPHA,
    FrequencyTable,
    mattr,
    mtl,
    renyi_efficiency,
)


class ConfigError(Exception):
    pass


@dataclass
class LanguageSpec:
    name: str
    corpus: str
    vocab: str
    grouping: str = ""


@dataclass
class RunConfig:
    languages: List[LanguageSpec]
    window: int = DEFAULT_WINDOW
    stride: int = 1
    mattr_window: int = DEFAULT_MATTR_WINDOW
    alpha: float = DEFAULT_RENYI_ALPHA
    pretokenized: bool = True
    greedy: bool = False
    percent: bool = False
    format: str = "tsv"
    sort_by: str = "eta"

    def validate(self) -> None:
        if self.window < 1:
            raise ConfigError("window must be >= 1")
        if not self.languages:
            raise ConfigError("no languages configured")
        if self.format not in ("tsv", "csv", "json"):
            raise ConfigError(f"unknown output format {self.format!r}")
        for lang in self.languages:
            if not os.path.exists(lang.corpus):
                raise ConfigError(f"{lang.name}: corpus not found: {lang.corpus}")
            if not os.path.exists(lang.vocab):
                raise ConfigError(f"{lang.name}: vocab not found: {lang.vocab}")


def load_config(path: Union[str, os.PathLike]) -> RunConfig:
    parser = configparser.ConfigParser()
    if not parser.read(path, encoding="utf-8"):
        raise ConfigError(f"cannot read config file {path!r}")
    run = parser["run"] if parser.has_section("run") else {}
    languages = []
    for section in parser.sections():
        if not section.startswith("language:"):
            continue
        entry = parser[section]
        name = section.split(":", 1)[1]
        if "corpus" not in entry or "vocab" not in entry:
            raise ConfigError(f"{section}: needs 'corpus' and 'vocab' keys")
        languages.append(
            LanguageSpec(
                name=name,
                corpus=entry["corpus"],
                vocab=entry["vocab"],
                grouping=entry.get("grouping", ""),
            )
        )

    def _bool(key: str, default: bool) -> bool:
        raw = run.get(key)
        if raw is None:
            return default
        return raw.strip().lower() in ("1", "true", "yes", "on")

    config = RunConfig(
        languages=languages,
        window=int(run.get("window", DEFAULT_WINDOW)),
        stride=int(run.get("stride", 1)),
        mattr_window=int(run.get("mattr_window", DEFAULT_MATTR_WINDOW)),
        alpha=float(run.get("alpha", DEFAULT_RENYI_ALPHA)),
        pretokenized=_bool("pretokenized", True),
        greedy=_bool("greedy", False),
        percent=_bool("percent", False),
        format=run.get("format", "tsv"),
        sort_by=run.get("sort_by", "eta"),
    )
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Single-language pipeline


@dataclass
class LanguageMetrics:
    counts: CorpusCounts
    bigram: BigramReport
    mattr: float
    mtl: float
    renyi: float
    s: float
    mwl: float


def analyze_language(
    corpus: Corpus,
    vocab: Vocabulary,
    window: int = DEFAULT_WINDOW,
    stride: int = 1,
    mattr_window: int = DEFAULT_MATTR_WINDOW,
    alpha: float = DEFAULT_RENYI_ALPHA,
    pretokenized: bool = True,
    greedy: bool = False,
) -> LanguageMetrics:
    """One streaming pass computing corpus counts, bigram tables, and the
    unigram/word metric battery."""
    segment = segment_greedy if greedy else segment_viterbi
    cache: Dict[str, List[str]] = {}
    tables = BigramTables(window=window, stride=stride)
    tokens: List[str] = []
    counts = CorpusCounts()
    mwl_sum = 0.0
    s_sum = 0.0
    word_count = 0
    marker = vocab.boundary_marker

    for line in corpus.lines():
        counts.csc += 1
        counts.ccc += len(line)
        counts.cbc += len(line.encode("utf-8"))
        if pretokenized:
            spans = []
            for pretoken in pretokenize(line):
                segmented = cache.get(pretoken)
                if segmented is None:
                    segmented = segment(pretoken, vocab)
                    cache[pretoken] = segmented
                spans.append(segmented)
                mwl_sum += len(pretoken)
                s_sum += len(segmented) / len(pretoken)
                word_count += 1
            counts.cwc += len(spans)
        else:
            if not line:
                continue
            text = line.replace(" ", marker) if marker else line
            spans = [segment(text, vocab)]
        for span in spans:
            tables.observe_span(span)
            tokens.extend(span)

    counts.ctc = len(tokens)
    if not tokens:
        raise ConfigError("corpus produced no tokens")
    freq = FrequencyTable.from_tokens(tokens)
    return LanguageMetrics(
        counts=counts,
        bigram=tables.finalize(marker=marker or DEFAULT_MARKER),
        mattr=mattr(tokens, mattr_window),
        mtl=mtl(tokens, marker or DEFAULT_MARKER),
        renyi=renyi_efficiency(freq, alpha),
        s=(s_sum / word_count) if word_count else 0.0,
        mwl=(mwl_sum / word_count) if word_count else 0.0,
    )


# ---------------------------------------------------------------------------
# Multi-language report


# ratio-valued columns scaled by 100 in percent mode; AV, MTL, and MWL stay
_PERCENT_COLUMNS = ("eta", "au", "lr", "mattr", "re", "s")

_NUMERIC_COLUMNS = (
    "av",
    "eta",
    "au",
    "lr",
    "mattr",
    "mtl",
    "re",
    "s",
    "mwl",
    "ccc",
    "cbc",
    "cwc",
    "csc",
    "ctc",
)


@dataclass
class ReportRow:
    language: str
    grouping: str = ""
    status: str = "ok"
    error: str = ""
    values: Dict[str, Optional[float]] = field(default_factory=dict)


@dataclass
class ComparisonReport:
    rows: List[ReportRow]
    sort_key: str = "eta"

    def sorted_rows(self) -> List[ReportRow]:
        def key(row: ReportRow):
            v = row.values.get(self.sort_key)
            return (row.status != "ok", v if v is not None else math.inf)

        return sorted(self.rows, key=key)

    @property
    def failed(self) -> bool:
        return any(row.status != "ok" for row in self.rows)


def _row_from_metrics(spec: LanguageSpec, m: LanguageMetrics) -> ReportRow:
    b = m.bigram
    return ReportRow(
        language=spec.name,
        grouping=spec.grouping,
        values={
            "av": b.macro_av,
            "eta": b.macro_eta,
            "au": b.macro_au,
            "lr": b.lr,
            "mattr": m.mattr,
            "mtl": m.mtl,
            "re": m.renyi,
            "s": m.s,
            "mwl": m.mwl,
            "ccc": float(m.counts.ccc),
            "cbc": float(m.counts.cbc),
            "cwc": float(m.counts.cwc),
            "csc": float(m.counts.csc),
            "ctc": float(m.counts.ctc or 0),
        },
    )


def run(config: RunConfig) -> ComparisonReport:
    """Compute the full metric battery for every configured language.

    Languages run concurrently; a failure marks the row failed and the batch
    continues. Deterministic given config (all pipelines are deterministic).
    """
    config.validate()

    def one(spec: LanguageSpec) -> ReportRow:
        try:
            vocab = load_vocab(spec.vocab)
            metrics = analyze_language(
                read_lines(spec.corpus),
                vocab,
                window=config.window,
                stride=config.stride,
                mattr_window=config.mattr_window,
                alpha=config.alpha,
                pretokenized=config.pretokenized,
                greedy=config.greedy,
            )
            return _row_from_metrics(spec, metrics)
        except Exception as e:  # isolate per-language failures
            return ReportRow(
                language=spec.name,
                grouping=spec.grouping,
                status="failed",
                error=str(e),
            )

    workers = int(os.environ.get("MORPHLENS_WORKERS", "0")) or min(
        8, len(config.languages)
    )
    if workers > 1 and len(config.languages) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, config.languages))
    else:
        rows = [one(spec) for spec in config.languages]
    return ComparisonReport(rows=rows, sort_key=config.sort_by)


def emit(report: ComparisonReport, format: str = "tsv", percent: bool = False) -> bytes:
    """Serialize a report: TSV/CSV with 4 decimal places, JSON at full
    precision. Percent mode scales the ratio-valued columns by 100."""

    def scaled(row: ReportRow) -> Dict[str, Optional[float]]:
        out = {}
        for col in _NUMERIC_COLUMNS:
            v = row.values.get(col)
            if v is not None and percent and col in _PERCENT_COLUMNS:
                v = v * 100.0
            out[col] = v
        return out

    rows = report.sorted_rows()
    if format == "json":
        payload = [
            {
                "language": row.language,
                "grouping": row.grouping,
                "status": row.status,
                "error": row.error,
                **scaled(row),
            }
            for row in rows
        ]
        return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    if format not in ("tsv", "csv"):
        raise ConfigError(f"unknown output format {format!r}")
    sep = "\t" if format == "tsv" else ","
    header = ["language", "grouping", "status"] + list(_NUMERIC_COLUMNS)
    lines = [sep.join(header)]
    for row in rows:
        cells = [row.language, row.grouping, row.status]
        values = scaled(row)
        for col in _NUMERIC_COLUMNS:
            v = values[col]
            if v is None:
                cells.append("")
            elif col in ("ccc", "cbc", "cwc", "csc", "ctc"):
                cells.append(str(int(v)))
            else:
                cells.append(f"{v:.4f}")
        lines.append(sep.join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")
