"""Entity and noun-phrase substitution with single-token placeholders.

Entities come from a recognizer (a leftmost-longest gazetteer matcher by
default); noun phrases from a lexicon-driven rule chunker.  Both stages
record every substitution so :func:`restore_placeholders` can undo them.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from typing import Protocol, Sequence

from .core import (
    AlignmentMap,
    Number,
    PipelineConfig,
    PlaceholderEntry,
    PlaceholderKind,
    PlaceholderTable,
    Sentence,
    SimplifiedSentence,
    Span,
    detokenize,
    placeholder_pattern,
    tokenize,
)
from .external import LinePool
from .lexicon import ADJ, DET, NOUN, Lexicon, get_lexicon, read_lines

logger = logging.getLogger(__name__)

DETERMINERS = frozenset({"the", "a", "an"})
INDEFINITE = frozenset({"a", "an"})


class GazetteerError(Exception):
    pass


class MissingFile(GazetteerError, FileNotFoundError):
    pass


class EmptyGazetteer(GazetteerError):
    pass


class UnknownPlaceholder(KeyError):
    def __init__(self, token: str, record_id: str | None = None):
        super().__init__(token)
        self.token = token
        self.record_id = record_id

    def __str__(self):
        where = f" in record {self.record_id}" if self.record_id else ""
        return f"unknown placeholder {self.token!r}{where}"


# -- gazetteer ---------------------------------------------------------------


class Gazetteer:
    """Exact token-sequence dictionary of entity names.

    Entries containing an uppercase letter or a digit match case-sensitively;
    all-lowercase entries match case-insensitively.
    """

    def __init__(self, entries: dict[str, str]):
        self.entries = dict(entries)
        self._index: dict[str, list[tuple[tuple[str, ...], bool, str]]] = {}
        for name in self.entries:
            toks = tuple(t.text for t in tokenize(name))
            if not toks:
                continue
            sensitive = any(c.isupper() or c.isdigit() for c in name)
            key = toks if sensitive else tuple(t.lower() for t in toks)
            self._index.setdefault(toks[0].lower(), []).append((key, sensitive, name))
        for cands in self._index.values():
            cands.sort(key=lambda c: -len(c[0]))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name):
        return name in self.entries

    def kind(self, name: str) -> str:
        return self.entries[name]

    def longest_at(self, words: Sequence[str], i: int) -> int:
        """Length of the longest entry matching ``words[i:]`` (0 if none)."""
        for key, sensitive, _ in self._index.get(words[i].lower(), ()):
            n = len(key)
            window = tuple(words[i:i + n])
            if len(window) < n:
                continue
            if not sensitive:
                window = tuple(w.lower() for w in window)
            if window == key:
                return n
        return 0


def load_gazetteer(path) -> Gazetteer:
    """Load a one-name-per-line gazetteer with an optional TAB kind column."""
    if path is None or not os.path.isfile(path):
        raise MissingFile(f"gazetteer not found: {path}")
    entries: dict[str, str] = {}
    for line in read_lines(path):
        name, _, kind = line.partition("\t")
        name = name.strip()
        if name:
            entries.setdefault(name, kind.strip() or "ENTITY")
    if not entries:
        raise EmptyGazetteer(f"gazetteer has no entries: {path}")
    return Gazetteer(entries)


@dataclass(frozen=True)
class EntityMatch:
    span: Span  # token-index range, end exclusive
    surface: str
    absorbed_determiner: bool = False


def _surface(sentence: Sentence, start: int, end: int) -> str:
    toks = sentence.tokens
    return sentence.text[toks[start].span.start:toks[end - 1].span.end]


def _absorb(sentence: Sentence, ranges: list[tuple[int, int]]) -> list[EntityMatch]:
    out = []
    prev_end = 0
    for a, b in ranges:
        absorbed = a > prev_end and sentence.tokens[a - 1].text.lower() in DETERMINERS
        if absorbed:
            a -= 1
        out.append(EntityMatch(Span(a, b), _surface(sentence, a, b), absorbed))
        prev_end = b
    return out


def find_entity_matches(sentence: Sentence, gaz: Gazetteer) -> list[EntityMatch]:
    words = sentence.words
    ranges = []
    i = 0
    while i < len(words):
        n = gaz.longest_at(words, i)
        if n:
            ranges.append((i, i + n))
            i += n
        else:
            i += 1
    return _absorb(sentence, ranges)


class EntityRecognizer(Protocol):
    def find(self, sentence: Sentence) -> list[EntityMatch]: ...


class GazetteerRecognizer:
    def __init__(self, gazetteer: Gazetteer):
        self.gazetteer = gazetteer

    def find(self, sentence: Sentence) -> list[EntityMatch]:
        return find_entity_matches(sentence, self.gazetteer)


def _char_ranges_to_tokens(sentence: Sentence, offsets) -> list[tuple[int, int]]:
    ranges = []
    for start, end in sorted(offsets):
        idx = [i for i, t in enumerate(sentence.tokens)
               if start <= t.span.start and t.span.end <= end]
        if not idx:
            continue
        a, b = idx[0], idx[-1] + 1
        if ranges and a < ranges[-1][1]:
            continue
        ranges.append((a, b))
    return ranges


class ExternalRecognizer:
    """NER behind the line protocol: the worker receives the sentence text and
    replies with a JSON list of ``[start, end]`` character offsets."""

    def __init__(self, command, pool_size: int = 1, timeout: float = 10.0):
        self.pool = LinePool(command, pool_size, timeout)

    def find(self, sentence: Sentence) -> list[EntityMatch]:
        reply = self.pool.ask(sentence.text)
        try:
            offsets = [(int(a), int(b)) for a, b in json.loads(reply or "")]
        except (ValueError, TypeError):
            logger.warning("recognizer gave unusable reply for %s: %r", sentence.id, reply)
            return []
        return _absorb(sentence, _char_ranges_to_tokens(sentence, offsets))

    def close(self):
        self.pool.close()


# -- replacement ---------------------------------------------------------------


def _ordinals(sentence: Sentence, prefix: str):
    """Placeholder numbers 1, 2, ... skipping any already used in the text."""
    used_re = placeholder_pattern(prefix)
    used = {int(t.rstrip("s")[len(prefix):]) for t in sentence.words if used_re.match(t)}
    n = 0
    while True:
        n += 1
        if n not in used:
            yield n


def _replace(sentence: Sentence, ranges, labels):
    toks = sentence.tokens
    out: list[tuple[str, tuple[Span, ...]]] = []
    spans = []
    i = 0
    for (a, b), label in zip(ranges, labels):
        out.extend((t.text, (t.span,)) for t in toks[i:a])
        span = Span(toks[a].span.start, toks[b - 1].span.end)
        out.append((label, (span,)))
        spans.append(span)
        i = b
    out.extend((t.text, (t.span,)) for t in toks[i:])
    new = Sentence.from_tokens(sentence.id, [text for text, _ in out])
    return new, AlignmentMap(tuple(s for _, s in out)), spans


def replace_entities(sentence: Sentence, matches: Sequence[EntityMatch],
                     config: PipelineConfig | None = None):
    """Replace each match by ``GENE<n>``; returns (sentence, table, alignment)."""
    config = config or PipelineConfig()
    table = PlaceholderTable()
    if not matches:
        return sentence, table, AlignmentMap.identity(sentence)
    ranges = [(m.span.start, m.span.end) for m in sorted(matches, key=lambda m: m.span.start)]
    for (_, b), (c, _) in zip(ranges, ranges[1:]):
        if c < b:
            raise ValueError("entity matches overlap")
    numbers = _ordinals(sentence, config.entity_prefix)
    labels = [f"{config.entity_prefix}{next(numbers)}" for _ in ranges]
    new, align, spans = _replace(sentence, ranges, labels)
    for (a, b), label, span in zip(ranges, labels, spans):
        table.add(PlaceholderEntry(label, _surface(sentence, a, b), span, PlaceholderKind.ENTITY))
    return new, table, align


@dataclass(frozen=True)
class NounChunk:
    start: int
    end: int  # exclusive
    head_index: int

    def __post_init__(self):
        if self.end - self.start < 2:
            raise ValueError("noun chunks span at least two tokens")
        if not self.start <= self.head_index < self.end:
            raise ValueError("chunk head outside chunk")

    @property
    def token_range(self) -> tuple[int, int]:
        return self.start, self.end


def chunk_noun_phrases(sentence: Sentence, lexicon: Lexicon | None = None) -> list[NounChunk]:
    """Maximal ``DET? (ADJ|NOUN)* NOUN`` runs of two or more tokens."""
    lexicon = lexicon or get_lexicon()
    tags = lexicon.tag(sentence.words)
    chunks = []
    i, n = 0, len(tags)
    while i < n:
        j = i + 1 if tags[i] == DET else i
        k = j
        last_noun = None
        while k < n and tags[k] in (ADJ, NOUN):
            if tags[k] == NOUN:
                last_noun = k
            k += 1
        if last_noun is not None and last_noun + 1 - i >= 2:
            chunks.append(NounChunk(i, last_noun + 1, last_noun))
            i = last_noun + 1
        else:
            i += 1
    return chunks


def infer_number(sentence: Sentence, chunk: NounChunk, lexicon: Lexicon | None = None) -> Number:
    """Singular when a third-person-singular verb follows the chunk or an
    indefinite article introduces it; plural otherwise."""
    lexicon = lexicon or get_lexicon()
    words = sentence.words
    if chunk.end < len(words) and lexicon.is_third_singular(words[chunk.end]):
        return Number.SINGULAR
    if words[chunk.start].lower() in INDEFINITE:
        return Number.SINGULAR
    if chunk.start > 0 and words[chunk.start - 1].lower() in INDEFINITE:
        return Number.SINGULAR
    return Number.PLURAL


def replace_noun_phrases(sentence: Sentence, chunks: Sequence[NounChunk],
                         config: PipelineConfig | None = None,
                         lexicon: Lexicon | None = None):
    """Replace each chunk by ``NPX<n>`` (``NPX<n>s`` when plural)."""
    config = config or PipelineConfig()
    table = PlaceholderTable()
    if not chunks:
        return sentence, table, AlignmentMap.identity(sentence)
    chunks = sorted(chunks, key=lambda c: c.start)
    for a, b in zip(chunks, chunks[1:]):
        if b.start < a.end:
            raise ValueError("noun chunks overlap")
    numbers = _ordinals(sentence, config.np_prefix)
    labels, classes = [], []
    for c in chunks:
        num = infer_number(sentence, c, lexicon)
        label = f"{config.np_prefix}{next(numbers)}"
        labels.append(label + ("s" if num is Number.PLURAL else ""))
        classes.append(num)
    ranges = [c.token_range for c in chunks]
    new, align, spans = _replace(sentence, ranges, labels)
    for (a, b), label, num, span in zip(ranges, labels, classes, spans):
        table.add(PlaceholderEntry(label, _surface(sentence, a, b), span,
                                   PlaceholderKind.NOUN_PHRASE, num))
    return new, table, align


def restore_placeholders(s: SimplifiedSentence, prefixes: Sequence[str] = ("GENE", "NPX")) -> str:
    """Expand every placeholder token of ``s.text`` back to its surface."""
    pattern = placeholder_pattern(*prefixes)
    parts = []
    for tok in tokenize(s.text):
        if pattern.match(tok.text):
            entry = s.placeholders.lookup(tok.text)
            if entry is None:
                raise UnknownPlaceholder(tok.text, s.id)
            parts.append(entry.surface)
        else:
            parts.append(tok.text)
    return detokenize(parts)
