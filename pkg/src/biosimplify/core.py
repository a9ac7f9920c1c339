"""Shared data model and the deterministic tokenizer.

Every stage of the pipeline consumes and produces :class:`Sentence` values.
Character offsets always index the decoded text (code points, not bytes).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

# characters detached from word edges as single-character tokens
EDGE_PUNCT = frozenset('.,;:!?()[]{}"')
NO_SPACE_BEFORE = frozenset(".,;:!?)]}")
NO_SPACE_AFTER = frozenset("([{")

_CHUNK_RE = re.compile(r"\S+")


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}:{self.end}")

    def __len__(self):
        return self.end - self.start

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: Span) -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class Token:
    text: str
    span: Span


class Stage(str, Enum):
    PREPROCESS = "PREPROCESS"
    ENTITY = "ENTITY"
    NP = "NP"
    SPLIT = "SPLIT"


class PlaceholderKind(str, Enum):
    ENTITY = "ENTITY"
    NOUN_PHRASE = "NOUN_PHRASE"


class Number(str, Enum):
    SINGULAR = "SINGULAR"
    PLURAL = "PLURAL"
    NOT_APPLICABLE = "NOT_APPLICABLE"


def tokenize(text: str) -> list[Token]:
    """Split on whitespace, then peel edge punctuation into separate tokens.

    Hyphens and apostrophes are never detached, so ``"alpha-"`` and
    ``"Huntington's"`` stay single tokens.
    """
    tokens: list[Token] = []
    for m in _CHUNK_RE.finditer(text):
        chunk, base = m.group(), m.start()
        lo, hi = 0, len(chunk)
        while lo < hi and chunk[lo] in EDGE_PUNCT:
            tokens.append(Token(chunk[lo], Span(base + lo, base + lo + 1)))
            lo += 1
        tail: list[Token] = []
        while hi > lo and chunk[hi - 1] in EDGE_PUNCT:
            hi -= 1
            tail.append(Token(chunk[hi], Span(base + hi, base + hi + 1)))
        if lo < hi:
            tokens.append(Token(chunk[lo:hi], Span(base + lo, base + hi)))
        tokens.extend(reversed(tail))
    return tokens


def _texts(tokens: Iterable[Token | str]) -> list[str]:
    return [t.text if isinstance(t, Token) else t for t in tokens]


def layout(tokens: Iterable[Token | str]) -> tuple[str, list[Token]]:
    """Detokenize and return the text together with re-anchored tokens."""
    parts: list[str] = []
    out: list[Token] = []
    pos = 0
    prev = None
    for text in _texts(tokens):
        if prev is not None and not (
            text in NO_SPACE_BEFORE or prev in NO_SPACE_AFTER
        ):
            parts.append(" ")
            pos += 1
        parts.append(text)
        out.append(Token(text, Span(pos, pos + len(text))))
        pos += len(text)
        prev = text
    return "".join(parts), out


def detokenize(tokens: Sequence[Token | str]) -> str:
    """Join tokens with single spaces, honouring punctuation attachment."""
    return layout(tokens)[0]


@dataclass(frozen=True)
class Sentence:
    id: str
    text: str
    tokens: tuple[Token, ...]

    @classmethod
    def from_text(cls, id: str, text: str) -> Sentence:
        return cls(id, text, tuple(tokenize(text)))

    @classmethod
    def from_tokens(cls, id: str, tokens: Iterable[Token | str]) -> Sentence:
        text, toks = layout(tokens)
        return cls(id, text, tuple(toks))

    @property
    def words(self) -> list[str]:
        return [t.text for t in self.tokens]

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class PlaceholderEntry:
    placeholder: str
    surface: str
    orig_span: Span
    kind: PlaceholderKind
    number: Number = Number.NOT_APPLICABLE

    def __post_init__(self):
        if not self.placeholder or any(c.isspace() for c in self.placeholder):
            raise ValueError(f"placeholder must be one token: {self.placeholder!r}")
        if not self.surface:
            raise ValueError("placeholder surface must be non-empty")


class PlaceholderTable(dict):
    """Mapping of placeholder token to :class:`PlaceholderEntry`."""

    def add(self, entry: PlaceholderEntry):
        if entry.placeholder in self:
            raise ValueError(f"duplicate placeholder {entry.placeholder}")
        self[entry.placeholder] = entry

    def lookup(self, token: str) -> PlaceholderEntry | None:
        if token in self:
            return self[token]
        if token.endswith("s") and token[:-1] in self:
            return self[token[:-1]]
        return None


@dataclass(frozen=True)
class AlignmentMap:
    """For each output token, the original character spans it stands for."""

    entries: tuple[tuple[Span, ...], ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @classmethod
    def identity(cls, sentence: Sentence) -> AlignmentMap:
        return cls(tuple((t.span,) for t in sentence.tokens))

    def compose(self, inner: AlignmentMap, inner_tokens: Sequence[Token]) -> AlignmentMap:
        """Map through an earlier stage.

        ``self`` points into the text whose tokens are ``inner_tokens``;
        ``inner`` maps those tokens on to the original text.
        """
        out = []
        for spans in self.entries:
            mapped: list[Span] = []
            for span in spans:
                if not len(span):
                    # zero-width anchor (synthesized punctuation at a text end)
                    for tok, orig in zip(inner_tokens, inner.entries):
                        if tok.span.end == span.start and orig:
                            end = orig[-1].end
                            mapped.append(Span(end, end))
                    continue
                hit = False
                for tok, orig in zip(inner_tokens, inner.entries):
                    if span.contains(tok.span) and len(tok.span):
                        mapped.extend(orig)
                        hit = True
                if not hit:
                    # synthetic material: attach to whatever it overlaps
                    for tok, orig in zip(inner_tokens, inner.entries):
                        if tok.span.overlaps(span):
                            mapped.extend(orig)
            out.append(tuple(_merge_spans(mapped)))
        return AlignmentMap(tuple(out))

    def check(self):
        seen: list[Span] = []
        for spans in self.entries:
            for a, b in zip(spans, spans[1:]):
                if a.end > b.start:
                    raise ValueError("alignment spans must be ascending and disjoint")
            for s in spans:
                if len(s) and any(s.overlaps(o) for o in seen):
                    raise ValueError(f"alignment span {s} claimed twice")
            seen.extend(spans)

    def to_json(self):
        return [[[s.start, s.end] for s in spans] for spans in self.entries]

    @classmethod
    def from_json(cls, data) -> AlignmentMap:
        return cls(tuple(tuple(Span(a, b) for a, b in spans) for spans in data))


def _merge_spans(spans: Iterable[Span]) -> list[Span]:
    out: list[Span] = []
    for s in sorted(set(spans)):
        if out and out[-1].end >= s.start and len(s) and len(out[-1]):
            if s.end > out[-1].end:
                out[-1] = Span(out[-1].start, s.end)
        elif out and s == out[-1]:
            continue
        else:
            out.append(s)
    return out


@dataclass(frozen=True)
class SimplifiedSentence:
    id: str
    orig_id: str
    text: str
    placeholders: PlaceholderTable = field(default_factory=PlaceholderTable)
    alignment: AlignmentMap = field(default_factory=lambda: AlignmentMap(()))
    transforms: frozenset[Stage] = frozenset()
    orig_text: str | None = None

    @property
    def tokens(self) -> list[Token]:
        return tokenize(self.text)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "orig_id": self.orig_id,
            "text": self.text,
            "orig_text": self.orig_text,
            "placeholders": [
                {
                    "placeholder": e.placeholder,
                    "surface": e.surface,
                    "orig_span": [e.orig_span.start, e.orig_span.end],
                    "kind": e.kind.value,
                    "number": e.number.value,
                }
                for e in self.placeholders.values()
            ],
            "alignment": self.alignment.to_json(),
            "transforms": sorted(t.value for t in self.transforms),
        }

    @classmethod
    def from_json(cls, obj: dict) -> SimplifiedSentence:
        table = PlaceholderTable()
        for e in obj.get("placeholders", []):
            table.add(PlaceholderEntry(
                e["placeholder"], e["surface"], Span(*e["orig_span"]),
                PlaceholderKind(e["kind"]), Number(e.get("number", "NOT_APPLICABLE")),
            ))
        return cls(
            id=obj["id"],
            orig_id=obj.get("orig_id", obj["id"].rsplit(".", 1)[0]),
            text=obj["text"],
            placeholders=table,
            alignment=AlignmentMap.from_json(obj.get("alignment", [])),
            transforms=frozenset(Stage(t) for t in obj.get("transforms", [])),
            orig_text=obj.get("orig_text"),
        )


DEFAULT_SECTION_INDICATORS = (
    "RESULTS", "RESULT", "CONCLUSION", "CONCLUSIONS", "METHODS", "METHOD",
    "BACKGROUND", "OBJECTIVE", "OBJECTIVES", "PURPOSE", "AIM", "AIMS",
    "INTRODUCTION",
)


@dataclass(frozen=True)
class OracleConfig:
    kind: str = "heuristic"  # heuristic | external | sentence | not_sentence
    command: str | None = None
    pool_size: int = 1
    timeout: float = 10.0


@dataclass(frozen=True)
class PipelineConfig:
    section_indicator_list: tuple[str, ...] = DEFAULT_SECTION_INDICATORS
    strip_parentheticals: bool = True
    split_threshold_words: int = 35
    split_min_commas: int = 2
    gazetteer_path: str | None = None
    oracle: OracleConfig = OracleConfig()
    entity_prefix: str = "GENE"
    np_prefix: str = "NPX"
    pos_lexicon_path: str | None = None
    verb_lexicon_path: str | None = None
    preprocess: bool = True
    entities: bool = True
    noun_phrases: bool = True
    split: bool = True

    def __post_init__(self):
        if self.split_threshold_words < 1:
            raise ValueError("split_threshold_words must be >= 1")
        if self.split_min_commas < 1:
            raise ValueError("split_min_commas must be >= 1")
        object.__setattr__(
            self, "section_indicator_list",
            tuple(s.strip().upper() for s in self.section_indicator_list),
        )

    @property
    def placeholder_prefixes(self) -> tuple[str, str]:
        return self.entity_prefix, self.np_prefix

    def placeholder_re(self) -> re.Pattern:
        return placeholder_pattern(self.entity_prefix, self.np_prefix)


def placeholder_pattern(*prefixes: str) -> re.Pattern:
    alts = "|".join(re.escape(p) for p in (prefixes or ("GENE", "NPX")))
    return re.compile(rf"^(?:{alts})\d+s?$")


PLACEHOLDER_RE = placeholder_pattern("GENE", "NPX")


def is_word(token: str) -> bool:
    """A word has at least one letter or digit; punctuation tokens are not words."""
    return any(c.isalnum() for c in token)
