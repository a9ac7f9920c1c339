"""Part-of-speech lexicon and the suffix-heuristic tagger.

The tagger is deliberately shallow: one tag per token, decided from a closed
lexicon, a base-verb list with regular -s/-es inflection, a few suffix rules
and a one-token look-behind for noun/verb ambiguous words.
"""

from __future__ import annotations

import functools
from importlib import resources
from pathlib import Path
from typing import Sequence

from .core import PLACEHOLDER_RE, is_word, placeholder_pattern

# tags that may sit inside a noun chunk
DET, ADJ, NOUN = "DET", "ADJ", "NOUN"
VERB, AUX, PART, GERUND = "VERB", "AUX", "PART", "GERUND"
PLACEHOLDER, PUNCT = "PLACEHOLDER", "PUNCT"

NOUN_SUFFIXES = ("tion", "ity", "ase", "in", "or", "er")
ADJ_SUFFIXES = ("al", "ic", "ous", "ive")
THIRD_SINGULAR_AUX = frozenset({"is", "was", "has", "does"})
NONFINITE_AUX = frozenset({"be", "been", "being"})


def read_lines(path) -> list[str]:
    """Non-empty, non-comment lines of a UTF-8 list file."""
    with open(path, encoding="utf-8") as fh:
        out = []
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            out.append(line)
        return out


def _data_path(name: str) -> Path:
    return Path(str(resources.files("biosimplify") / "data" / name))


class Lexicon:
    """Word-class lookup shared by the chunker, number inference and the
    heuristic clausehood oracle."""

    def __init__(self, pos: dict[str, str], verbs: dict[str, tuple[str, ...]],
                 placeholder_re=PLACEHOLDER_RE):
        self.pos = pos
        self.placeholder_re = placeholder_re
        self.verb_bases = frozenset(verbs)
        self.irregular = frozenset(f for forms in verbs.values() for f in forms)

    @classmethod
    def load(cls, pos_path=None, verb_path=None, prefixes=("GENE", "NPX")) -> Lexicon:
        pos: dict[str, str] = {}
        for line in read_lines(pos_path or _data_path("pos_lexicon.tsv")):
            word, _, tag = line.partition("\t")
            pos.setdefault(word.strip().lower(), tag.strip().upper() or NOUN)
        verbs: dict[str, tuple[str, ...]] = {}
        for line in read_lines(verb_path or _data_path("verbs.txt")):
            base, _, forms = line.partition("\t")
            verbs[base.strip().lower()] = tuple(
                f.strip().lower() for f in forms.split(",") if f.strip()
            )
        return cls(pos, verbs, placeholder_pattern(*prefixes))

    # -- verb morphology -------------------------------------------------

    def _third_singular_stem(self, w: str) -> str | None:
        if len(w) < 3 or not w.endswith("s"):
            return None
        for stem in (w[:-1], w[:-2] if w.endswith("es") else None,
                     w[:-3] + "y" if w.endswith("ies") else None):
            if stem and stem in self.verb_bases:
                return stem
        return None

    def is_third_singular(self, word: str) -> bool:
        """``is``/``was``/``has``/``does`` or an -s/-es form of a base verb."""
        w = word.lower()
        if w in THIRD_SINGULAR_AUX:
            return True
        return w not in self.verb_bases and self._third_singular_stem(w) is not None

    def is_verb_form(self, word: str) -> bool:
        w = word.lower()
        if w in self.pos and self.pos[w] == AUX:
            return w not in NONFINITE_AUX
        return (w in self.verb_bases or w in self.irregular
                or self._third_singular_stem(w) is not None)

    def _is_noun_form(self, w: str) -> bool:
        if self.pos.get(w) == NOUN:
            return True
        if w.endswith("s") and len(w) > 3:
            for stem in (w[:-1], w[:-2] if w.endswith("es") else None,
                         w[:-3] + "y" if w.endswith("ies") else None):
                if stem and self.pos.get(stem) == NOUN:
                    return True
        return False

    # -- tagging -----------------------------------------------------------

    def tag_word(self, token: str, prev_tag: str | None = None) -> str:
        if self.placeholder_re.match(token):
            return PLACEHOLDER
        if not is_word(token):
            return PUNCT
        w = token.lower()
        closed = self.pos.get(w)
        if closed not in (None, NOUN, ADJ):
            return closed
        verbal = self.is_verb_form(w)
        if self._is_noun_form(w):
            # noun/verb ambiguity: a determiner, adjective or preposition
            # (or the sentence start) in front selects the noun reading
            if not verbal or prev_tag in (None, DET, ADJ, "PREP", PUNCT):
                return NOUN
            return VERB
        if closed == ADJ:
            return ADJ
        if verbal:
            return VERB
        if w.isdigit():
            return "NUM"
        if w.endswith("ly") and len(w) > 4:
            return "ADV"
        if w.endswith("ed") and len(w) > 4:
            return PART
        if w.endswith("ing") and len(w) > 5:
            return GERUND
        if w.endswith(NOUN_SUFFIXES):
            return NOUN
        if w.endswith(ADJ_SUFFIXES):
            return ADJ
        return NOUN

    def tag(self, tokens: Sequence[str]) -> list[str]:
        tags: list[str] = []
        prev = None
        for tok in tokens:
            t = self.tag_word(tok, prev)
            tags.append(t)
            prev = t
        return tags

    def is_finite(self, tag: str, token: str) -> bool:
        if tag == VERB:
            return True
        return tag == AUX and token.lower() not in NONFINITE_AUX


@functools.lru_cache(maxsize=8)
def get_lexicon(pos_path=None, verb_path=None, prefixes=("GENE", "NPX")) -> Lexicon:
    return Lexicon.load(pos_path, verb_path, tuple(prefixes))
