"""Removal of spurious phrases and repair of partially hyphenated words.

Each step maps a :class:`Sentence` to a new sentence plus a
:class:`PreprocessRecord`; the record's ``alignment`` maps output tokens to
character spans of the step's *input* text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import AlignmentMap, PipelineConfig, Sentence, Span, Token
from .lexicon import read_lines

SECTION_INDICATOR = "SECTION_INDICATOR"
PARENTHETICAL = "PARENTHETICAL"

OPENERS = {"(": ")", "[": "]"}
CLOSERS = {")": "(", "]": "["}


@dataclass
class PreprocessRecord:
    removed_spans: list[tuple[Span, str]] = field(default_factory=list)
    hyphen_rewrites: list[tuple[str, str, str]] = field(default_factory=list)
    alignment: AlignmentMap | None = None

    @property
    def changed(self) -> bool:
        return bool(self.removed_spans or self.hyphen_rewrites)


def load_section_indicators(path) -> tuple[str, ...]:
    return tuple(line.strip().upper() for line in read_lines(path))


def _rebuild(sentence: Sentence, kept: list[tuple[str, Span]]) -> tuple[Sentence, AlignmentMap]:
    out = Sentence.from_tokens(sentence.id, [text for text, _ in kept])
    return out, AlignmentMap(tuple((span,) for _, span in kept))


def _identity(sentence: Sentence) -> tuple[Sentence, PreprocessRecord]:
    return sentence, PreprocessRecord(alignment=AlignmentMap.identity(sentence))


def strip_section_indicator(sentence: Sentence, config: PipelineConfig | None = None):
    """Drop a leading ``RESULTS:``-style label.

    Labels of one to three alphabetic tokens followed by a colon are removed
    when their upper-cased, space-joined form is in the indicator list.
    Repeated labels ("BACKGROUND: AIMS: ...") are all removed.
    """
    indicators = set((config or PipelineConfig()).section_indicator_list)
    toks = sentence.tokens
    start = 0
    while True:
        for k in (1, 2, 3):
            head = toks[start:start + k]
            if (len(head) == k and start + k < len(toks)
                    and toks[start + k].text == ":"
                    and all(t.text.isalpha() for t in head)
                    and " ".join(t.text.upper() for t in head) in indicators):
                start += k + 1
                break
        else:
            break
    if start == 0 or start >= len(toks):
        return _identity(sentence)
    removed = Span(toks[0].span.start, toks[start - 1].span.end)
    out, align = _rebuild(sentence, [(t.text, t.span) for t in toks[start:]])
    return out, PreprocessRecord([(removed, SECTION_INDICATOR)], alignment=align)


def _bracket_groups(tokens) -> list[tuple[int, int]] | None:
    """Outermost balanced bracket groups as inclusive token index pairs.

    Only stand-alone ``(`` ``)`` ``[`` ``]`` tokens delimit groups.  Returns
    None when the delimiters do not balance.
    """
    stack: list[tuple[str, int]] = []
    groups = []
    for i, tok in enumerate(tokens):
        if tok.text in OPENERS:
            stack.append((tok.text, i))
        elif tok.text in CLOSERS:
            if not stack or stack[-1][0] != CLOSERS[tok.text]:
                return None
            _, j = stack.pop()
            if not stack:
                groups.append((j, i))
    if stack:
        return None
    return groups


def strip_parentheticals(sentence: Sentence):
    toks = sentence.tokens
    groups = _bracket_groups(toks)
    if not groups:
        return _identity(sentence)
    drop = set()
    for a, b in groups:
        drop.update(range(a, b + 1))
    kept = [(t.text, t.span) for i, t in enumerate(toks) if i not in drop]
    if not any(any(c.isalpha() for c in text) for text, _ in kept):
        return _identity(sentence)
    out, align = _rebuild(sentence, kept)
    removed = [(Span(toks[a].span.start, toks[b].span.end), PARENTHETICAL) for a, b in groups]
    return out, PreprocessRecord(removed, alignment=align)


def _is_trailing_fragment(w: str) -> bool:
    return len(w) > 1 and w.endswith("-") and not w.startswith("-")


def _is_leading_fragment(w: str) -> bool:
    return len(w) > 1 and w.startswith("-") and not w.endswith("-")


def _has_interior_hyphen(w: str) -> bool:
    return "-" in w[1:-1] and not w.startswith("-") and not w.endswith("-")


def rejoin_hyphen_fragments(sentence: Sentence):
    """Complete ``alpha-`` / ``-catenin`` fragments from a hyphenated partner.

    A trailing-hyphen fragment borrows the part after the last hyphen of the
    nearest following hyphenated word; a leading-hyphen fragment borrows the
    part before the first hyphen of the nearest preceding one.
    """
    words = [t.text for t in sentence.tokens]
    rewrites = []
    changed = True
    while changed:
        changed = False
        for i, w in enumerate(words):
            if _is_trailing_fragment(w):
                partner = next((p for p in words[i + 1:] if _has_interior_hyphen(p)), None)
                if partner is not None:
                    result = w + partner.rsplit("-", 1)[1]
            elif _is_leading_fragment(w):
                partner = next((p for p in reversed(words[:i]) if _has_interior_hyphen(p)), None)
                if partner is not None:
                    result = partner.split("-", 1)[0] + w
            else:
                continue
            if partner is None:
                continue
            rewrites.append((w, partner, result))
            words[i] = result
            changed = True
    if not rewrites:
        return _identity(sentence)
    out, align = _rebuild(sentence, [(w, t.span) for w, t in zip(words, sentence.tokens)])
    return out, PreprocessRecord(hyphen_rewrites=rewrites, alignment=align)


def _remap(spans: list[tuple[Span, str]], align: AlignmentMap, tokens: tuple[Token, ...]):
    """Express spans of an intermediate text in terms of the earlier text."""
    out = []
    for span, reason in spans:
        covered = [s for tok, ss in zip(tokens, align.entries)
                   if span.contains(tok.span) for s in ss]
        if covered:
            out.append((Span(covered[0].start, covered[-1].end), reason))
    return out


def preprocess_sentence(sentence: Sentence, config: PipelineConfig | None = None):
    """Section-indicator removal, parenthetical removal (unless disabled) and
    hyphen repair, iterated to a fixed point so a second call is a no-op."""
    config = config or PipelineConfig()
    record = PreprocessRecord(alignment=AlignmentMap.identity(sentence))
    current = sentence
    steps = [lambda s: strip_section_indicator(s, config)]
    if config.strip_parentheticals:
        steps.append(strip_parentheticals)
    steps.append(rejoin_hyphen_fragments)
    while True:
        before = current
        for step in steps:
            nxt, rec = step(current)
            if rec.changed:
                record.removed_spans.extend(
                    _remap(rec.removed_spans, record.alignment, current.tokens))
                record.hyphen_rewrites.extend(rec.hyphen_rewrites)
                record.alignment = rec.alignment.compose(record.alignment, current.tokens)
                current = nxt
        if current is before:
            break
    return current, record
