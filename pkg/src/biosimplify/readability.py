"""Corpus readability statistics and before/after reduction reports."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .core import PLACEHOLDER_RE, Stage, is_word, tokenize

_VOWEL_GROUP = re.compile(r"[aeiouy]+")

METRICS = ("sentence_count", "word_count", "words_per_sentence", "flesch_kincaid", "gunning_fog")
METRIC_LABELS = {
    "sentence_count": "Sentences",
    "word_count": "Words",
    "words_per_sentence": "Words/sentence",
    "flesch_kincaid": "Flesch-Kincaid grade",
    "gunning_fog": "Gunning Fog index",
}


class DegenerateCorpus(ValueError):
    """Readability index requested for a corpus without sentences or words."""


def _part_syllables(part: str) -> int:
    p = part.lower()
    n = len(_VOWEL_GROUP.findall(p))
    if p.endswith("e") and not p.endswith("le"):
        n -= 1
    return max(n, 1)


def count_syllables(word: str, placeholder_re=PLACEHOLDER_RE) -> int:
    """Vowel-group syllable estimate.

    Hyphenated words sum their parts; placeholder tokens count as two.
    """
    if placeholder_re.match(word):
        return 2
    parts = [p for p in word.split("-") if any(c.isalpha() for c in p)]
    if not parts:
        return 1
    return sum(_part_syllables(p) for p in parts)


@dataclass
class CorpusStats:
    sentence_count: int = 0
    word_count: int = 0
    syllable_count: int = 0
    complex_word_count: int = 0
    stage_counts: dict[str, int] = field(default_factory=dict)

    @property
    def words_per_sentence(self) -> float | None:
        if not self.sentence_count:
            return None
        return self.word_count / self.sentence_count

    @property
    def flesch_kincaid(self) -> float | None:
        try:
            return flesch_kincaid_grade(self)
        except DegenerateCorpus:
            return None

    @property
    def gunning_fog(self) -> float | None:
        try:
            return gunning_fog_index(self)
        except DegenerateCorpus:
            return None

    def metric(self, name: str):
        return getattr(self, name)

    def to_json(self) -> dict:
        return {
            "sentence_count": self.sentence_count,
            "word_count": self.word_count,
            "syllable_count": self.syllable_count,
            "complex_word_count": self.complex_word_count,
            "words_per_sentence": self.words_per_sentence,
            "flesch_kincaid": self.flesch_kincaid,
            "gunning_fog": self.gunning_fog,
            "stage_counts": dict(self.stage_counts),
        }


def _check(stats: CorpusStats):
    if stats.sentence_count <= 0 or stats.word_count <= 0:
        raise DegenerateCorpus("need at least one sentence and one word")


def flesch_kincaid_grade(stats: CorpusStats) -> float:
    _check(stats)
    return (0.39 * stats.word_count / stats.sentence_count
            + 11.8 * stats.syllable_count / stats.word_count - 15.59)


def gunning_fog_index(stats: CorpusStats) -> float:
    _check(stats)
    return 0.4 * (stats.word_count / stats.sentence_count
                  + 100.0 * stats.complex_word_count / stats.word_count)


def corpus_stats(corpus: Iterable) -> CorpusStats:
    """Aggregate counts over sentences (anything with a ``text`` attribute).

    Punctuation tokens are not words.  Stage tallies come from the records'
    ``transforms`` when present.
    """
    stats = CorpusStats(stage_counts={s.value: 0 for s in Stage})
    stages: Counter = Counter()
    for sent in corpus:
        stats.sentence_count += 1
        for tok in tokenize(sent.text):
            if not is_word(tok.text):
                continue
            n = count_syllables(tok.text)
            stats.word_count += 1
            stats.syllable_count += n
            if n >= 3:
                stats.complex_word_count += 1
        for tag in getattr(sent, "transforms", ()):
            stages[Stage(tag).value] += 1
    stats.stage_counts.update(stages)
    return stats


@dataclass
class ReductionReport:
    before: CorpusStats
    after: CorpusStats
    percent_drop: dict[str, float | None]

    def render(self) -> str:
        rows = [("Metric", "Before", "After", "% drop")]
        for name in METRICS:
            b, a = self.before.metric(name), self.after.metric(name)
            drop = self.percent_drop.get(name)
            rows.append((METRIC_LABELS[name], _fmt(b), _fmt(a),
                         "-" if drop is None else f"{drop:.1f}%"))
        lines = _table(rows)
        lines.append("")
        lines.append("Sentences processed in each stage")
        for stage in Stage:
            lines.append(f"  {stage.value:<12}{self.after.stage_counts.get(stage.value, 0):>8}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "before": self.before.to_json(),
            "after": self.after.to_json(),
            "percent_drop": dict(self.percent_drop),
        }


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, int):
        return str(v)
    return f"{v:.1f}"


def _table(rows) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        out.append("  ".join(cells))
    return out


def percent_drop(before, after) -> float | None:
    if before is None or after is None or before <= 0:
        return None
    return 100.0 * (before - after) / before


def reduction_report(before: CorpusStats, after: CorpusStats) -> ReductionReport:
    drops = {m: percent_drop(before.metric(m), after.metric(m)) for m in METRICS}
    return ReductionReport(before, after, drops)


def render_stats(stats: CorpusStats) -> str:
    rows = [("Metric", "Value")]
    rows += [(METRIC_LABELS[m], _fmt(stats.metric(m))) for m in METRICS]
    rows += [("Syllables", str(stats.syllable_count)),
             ("Complex words", str(stats.complex_word_count))]
    lines = _table(rows)
    lines.append("")
    lines.append("Sentences processed in each stage")
    for stage in Stage:
        lines.append(f"  {stage.value:<12}{stats.stage_counts.get(stage.value, 0):>8}")
    return "\n".join(lines)
