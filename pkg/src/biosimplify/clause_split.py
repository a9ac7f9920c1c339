"""Comma-clause accumulation driven by a clausehood oracle.

A long sentence is cut at its top-level commas.  Clauses are appended to an
accumulator one at a time and the accumulator is emitted as soon as the
oracle accepts it as a sentence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from .core import (
    AlignmentMap,
    OracleConfig,
    Sentence,
    SimplifiedSentence,
    Span,
    Stage,
    Token,
    detokenize,
    is_word,
)
from .external import LinePool, SpawnFailure
from .lexicon import PLACEHOLDER, Lexicon, get_lexicon

logger = logging.getLogger(__name__)

TERMINAL = frozenset(".!?")
NOUN_LIKE = frozenset({"NOUN", PLACEHOLDER, "PRON"})


class Verdict(str, Enum):
    SENTENCE = "SENTENCE"
    NOT_SENTENCE = "NOT_SENTENCE"


class OracleSpawnFailure(SpawnFailure):
    pass


class ClausehoodOracle(Protocol):
    def judge(self, text: str) -> Verdict: ...


class ConstantOracle:
    def __init__(self, verdict: Verdict):
        self.verdict = Verdict(verdict)

    def judge(self, text: str) -> Verdict:
        return self.verdict


class StubOracle:
    """Answers SENTENCE exactly for the given strings (testing aid)."""

    def __init__(self, sentences):
        self.sentences = frozenset(sentences)
        self.queries: list[str] = []

    def judge(self, text: str) -> Verdict:
        self.queries.append(text)
        return Verdict.SENTENCE if text in self.sentences else Verdict.NOT_SENTENCE


class HeuristicOracle:
    """A finite verb with a noun-like token somewhere before it."""

    def __init__(self, lexicon: Lexicon | None = None):
        self.lexicon = lexicon or get_lexicon()

    def judge(self, text: str) -> Verdict:
        words = [t.text for t in Sentence.from_text("", text).tokens]
        seen_noun = False
        for word, tag in zip(words, self.lexicon.tag(words)):
            if seen_noun and self.lexicon.is_finite(tag, word):
                return Verdict.SENTENCE
            if tag in NOUN_LIKE:
                seen_noun = True
        return Verdict.NOT_SENTENCE


class ExternalOracle:
    """Oracle worker answering ``1`` (sentence) or ``0`` per input line."""

    def __init__(self, command, pool_size: int = 1, timeout: float = 10.0):
        try:
            self.pool = LinePool(command, pool_size, timeout)
        except SpawnFailure as exc:
            raise OracleSpawnFailure(str(exc)) from exc

    def judge(self, text: str) -> Verdict:
        try:
            reply = self.pool.ask(text)
        except SpawnFailure as exc:
            raise OracleSpawnFailure(str(exc)) from exc
        if reply is not None:
            reply = reply.strip()
        if reply == "1":
            return Verdict.SENTENCE
        if reply != "0":
            logger.warning("oracle reply %r for %r treated as NOT_SENTENCE", reply, text)
        return Verdict.NOT_SENTENCE

    def close(self):
        self.pool.close()


def make_oracle(cfg: OracleConfig, lexicon: Lexicon | None = None) -> ClausehoodOracle:
    kind = cfg.kind.lower()
    if kind == "heuristic":
        return HeuristicOracle(lexicon)
    if kind == "external":
        if not cfg.command:
            raise OracleSpawnFailure("external oracle selected without a command")
        return ExternalOracle(cfg.command, cfg.pool_size, cfg.timeout)
    if kind in ("sentence", "not_sentence"):
        return ConstantOracle(Verdict(kind.upper()))
    raise ValueError(f"unknown oracle kind {cfg.kind!r}")


@dataclass(frozen=True)
class SplitConfig:
    threshold_words: int = 35
    min_commas: int = 2
    oracle: ClausehoodOracle | None = None
    oracle_timeout: float = 10.0

    def __post_init__(self):
        if self.threshold_words < 1 or self.min_commas < 1:
            raise ValueError("split thresholds must be positive")


@dataclass(frozen=True)
class Clause:
    text: str
    orig_span: Span
    first: int  # token index range in the sentence, end exclusive
    last: int


def _top_level_commas(tokens) -> list[int]:
    depth = 0
    out = []
    for i, tok in enumerate(tokens):
        if tok.text == "," and depth == 0:
            out.append(i)
            continue
        for ch in tok.text:
            if ch in "([{":
                depth += 1
            elif ch in ")]}" and depth:
                depth -= 1
    return out


def split_on_commas(sentence: Sentence) -> list[Clause]:
    toks = sentence.tokens
    bounds = [-1] + _top_level_commas(toks) + [len(toks)]
    clauses = []
    for a, b in zip(bounds, bounds[1:]):
        if b - a <= 1:
            continue
        span = Span(toks[a + 1].span.start, toks[b - 1].span.end)
        clauses.append(Clause(sentence.text[span.start:span.end], span, a + 1, b))
    return clauses


def judge_clausehood(text: str, oracle: ClausehoodOracle | None = None,
                     cfg: SplitConfig | None = None) -> Verdict:
    oracle = oracle or (cfg.oracle if cfg else None) or HeuristicOracle()
    return oracle.judge(text)


def _probe(tokens: list[Token]) -> str:
    text = detokenize(tokens)
    if tokens and tokens[-1].text not in TERMINAL:
        text += "."
    return text


def split_sentence(sentence: Sentence, cfg: SplitConfig | None = None):
    """Split into independent sentences.

    Returns ``(units, alignments)``: each unit is a :class:`Sentence` and each
    alignment maps that unit's tokens to spans of ``sentence.text``.  A
    synthesized final period points at the comma it replaces.
    """
    cfg = cfg or SplitConfig()
    oracle = cfg.oracle or HeuristicOracle()
    toks = list(sentence.tokens)
    commas = _top_level_commas(toks)
    words = sum(1 for t in toks if is_word(t.text))
    whole = [(sentence, AlignmentMap.identity(sentence))]
    if words < cfg.threshold_words or len(commas) < cfg.min_commas:
        return whole

    clauses = split_on_commas(sentence)
    # units are token ranges [start, end); the comma at ``end`` is consumed
    units: list[list] = []
    start = 0
    for clause in clauses:
        if oracle.judge(_probe(toks[start:clause.last])) is Verdict.SENTENCE:
            units.append([start, clause.last])
            start = clause.last + 1
    if not units:
        return whole
    # a residual tail that never became a sentence (or a dangling comma)
    # joins the previous unit
    units[-1][1] = len(toks)
    if len(units) == 1:
        return whole

    out = []
    for a, b in units:
        piece = toks[a:b]
        entries = [(t.span,) for t in piece]
        texts = [t.text for t in piece]
        if texts and texts[-1] not in TERMINAL:
            texts.append(".")
            if b < len(toks):
                entries.append((toks[b].span,))
            else:
                end = toks[b - 1].span.end
                entries.append((Span(end, end),))
        elif b < len(toks):
            # unit already ends in a full stop: it absorbs the consumed comma
            entries[-1] = entries[-1] + (toks[b].span,)
        unit = Sentence.from_tokens(sentence.id, texts)
        out.append((unit, AlignmentMap(tuple(entries))))
    return out


def split_simplified(sentence: Sentence, cfg: SplitConfig | None = None,
                     orig_id: str | None = None) -> list[SimplifiedSentence]:
    """:func:`split_sentence` packaged as :class:`SimplifiedSentence` records."""
    pieces = split_sentence(sentence, cfg)
    tags = frozenset({Stage.SPLIT}) if len(pieces) > 1 else frozenset()
    base = orig_id or sentence.id
    return [
        SimplifiedSentence(f"{base}.{k}", base, unit.text, alignment=align,
                           transforms=tags, orig_text=sentence.text)
        for k, (unit, align) in enumerate(pieces, start=1)
    ]
