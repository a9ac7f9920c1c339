"""Dependency-link scoring across original and simplified tokenizations.

Gold links connect single words of the original sentence.  Predicted links
may connect simplified tokens that stand for several original words (a
placeholder, say).  A predicted link is credited when a gold link of the same
type has each endpoint inside the corresponding predicted endpoint; a gold
link whose two endpoints fall inside one simplified token cannot be recovered
by any parser and is not counted as missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .core import AlignmentMap, Span, Token, tokenize


class AlignmentMismatch(IndexError):
    pass


class EmptyCorpus(ValueError):
    pass


@dataclass(frozen=True)
class LinkToken:
    index: int
    text: str
    # original character spans covered by the token; empty when unknown
    words: tuple[Span, ...] = ()
    # surface words, used when spans are unavailable
    surface: tuple[str, ...] = ()

    def covers(self, other: LinkToken) -> bool:
        """True if original token ``other`` lies within this token."""
        if self.words and other.words:
            return all(any(w.contains(o) for w in self.words) for o in other.words)
        words = self.surface or (self.text,)
        return other.text in words


@dataclass(frozen=True)
class DepLink:
    link_type: str
    head: LinkToken
    dep: LinkToken

    def __post_init__(self):
        if not self.link_type:
            raise ValueError("link type must be non-empty")

    def sort_key(self):
        return (self.head.index, self.dep.index, self.link_type)


GOLD, ORIGINAL, SIMPLIFIED = "GOLD", "ORIGINAL", "SIMPLIFIED"


@dataclass
class LinkSet:
    sentence_id: str
    role: str
    links: list[DepLink] = field(default_factory=list)


class MatchResult(NamedTuple):
    tp: list[tuple[DepLink, DepLink]]  # (predicted, gold)
    fp: list[DepLink]
    fn: list[DepLink]


def original_tokens(tokens: Sequence[Token]) -> list[LinkToken]:
    return [LinkToken(i, t.text, (t.span,), (t.text,)) for i, t in enumerate(tokens)]


def simplified_tokens(texts: Sequence[str], alignment: AlignmentMap,
                      orig_text: str | None = None) -> list[LinkToken]:
    if len(texts) != len(alignment):
        raise AlignmentMismatch(f"{len(texts)} tokens but {len(alignment)} alignment entries")
    out = []
    for i, (text, spans) in enumerate(zip(texts, alignment.entries)):
        surface = ()
        if orig_text:
            surface = tuple(t.text for s in spans for t in tokenize(orig_text[s.start:s.end]))
        out.append(LinkToken(i, text, tuple(spans), surface))
    return out


def _compatible(pred: DepLink, gold: DepLink) -> bool:
    return (pred.link_type == gold.link_type
            and pred.head.covers(gold.head)
            and pred.dep.covers(gold.dep))


def _max_matching(pred: list[DepLink], gold: list[DepLink], priority: list[int]) -> dict[int, int]:
    """Maximum bipartite matching by augmenting paths from the gold side.

    Gold links are inserted in ``priority`` order.  An augmenting path never
    unmatches a gold link already placed, so this is the greedy algorithm on
    a transversal matroid: the result is a maximum matching and, among those,
    covers the earliest possible gold links.  Predicted links are tried
    leftmost first.  Returns ``{pred_index: gold_index}``.
    """
    adj = {g: [p for p, pl in enumerate(pred) if _compatible(pl, gold[g])] for g in priority}
    pred_owner: dict[int, int] = {}

    def augment(g: int, seen: set[int]) -> bool:
        for p in adj[g]:
            if p in seen:
                continue
            seen.add(p)
            if p not in pred_owner or augment(pred_owner[p], seen):
                pred_owner[p] = g
                return True
        return False

    for g in priority:
        augment(g, set())
    return pred_owner


def match_link_sets(pred: LinkSet, gold: LinkSet,
                    alignment: AlignmentMap | Sequence[LinkToken] | None = None) -> MatchResult:
    """Split predictions into TP / FP and gold links into matched / FN.

    ``alignment`` describes every token of the predicted sentence (either an
    :class:`AlignmentMap` or the list of :class:`LinkToken`); it is needed only
    to exempt gold links lying inside one simplified token.  ``None`` means
    the prediction is over the original tokens.
    """
    pred_links = sorted(pred.links, key=DepLink.sort_key)
    gold_links = sorted(gold.links, key=DepLink.sort_key)

    containers: list[LinkToken] = []
    if isinstance(alignment, AlignmentMap):
        for link in pred_links:
            for tok in (link.head, link.dep):
                if not 0 <= tok.index < len(alignment):
                    raise AlignmentMismatch(
                        f"token {tok.index} outside alignment of {len(alignment)} tokens")
        containers = [LinkToken(i, "", tuple(spans)) for i, spans in enumerate(alignment.entries)]
    elif alignment is not None:
        containers = list(alignment)

    exempt = [any(len(c.words) > 0 and c.covers(link.head) and c.covers(link.dep)
                  for c in containers) for link in gold_links]
    # links that would otherwise be missed are matched first
    priority = sorted(range(len(gold_links)), key=lambda g: (exempt[g], g))
    pairs = _max_matching(pred_links, gold_links, priority)
    matched_gold = set(pairs.values())
    tp = [(pred_links[p], gold_links[g]) for p, g in sorted(pairs.items())]
    fp = [link for i, link in enumerate(pred_links) if i not in pairs]
    fn = [link for g, link in enumerate(gold_links)
          if g not in matched_gold and not exempt[g]]
    return MatchResult(tp, fp, fn)


@dataclass(frozen=True)
class SentenceScore:
    tp: int
    fp: int
    fn: int
    sentence_id: str = ""

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 1.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 1.0


def score_sentence(tp_set, fp_set, fn_set, sentence_id: str = "") -> SentenceScore:
    return SentenceScore(len(tp_set), len(fp_set), len(fn_set), sentence_id)


def f_measure(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r else 0.0


@dataclass
class EvalReport:
    macro_precision: float
    macro_recall: float
    per_sentence: list[SentenceScore]
    system: str = "system"

    @property
    def f_measure(self) -> float:
        return f_measure(self.macro_precision, self.macro_recall)

    def row(self) -> tuple[str, str, str, str]:
        return (self.system, f"{100 * self.macro_precision:.2f}%",
                f"{100 * self.macro_recall:.2f}%", f"{100 * self.f_measure:.2f}%")

    def render(self) -> str:
        return render_table([self])

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "f_measure": self.f_measure,
            "sentences": len(self.per_sentence),
            "per_sentence": [
                {"id": s.sentence_id, "tp": s.tp, "fp": s.fp, "fn": s.fn,
                 "precision": s.precision, "recall": s.recall}
                for s in self.per_sentence
            ],
        }


def score_corpus(per_sentence: Sequence[SentenceScore], system: str = "system") -> EvalReport:
    """Unweighted mean of per-sentence precision and recall."""
    if not per_sentence:
        raise EmptyCorpus("no sentences to score")
    n = len(per_sentence)
    # fsum is exactly rounded, so the means do not depend on sentence order
    p = math.fsum(s.precision for s in per_sentence) / n
    r = math.fsum(s.recall for s in per_sentence) / n
    return EvalReport(p, r, list(per_sentence), system)


def render_table(reports: Sequence[EvalReport], improvement: bool = False) -> str:
    """Precision / Recall / f-measure rows, percentages to two decimals."""
    rows = [("", "Precision", "Recall", "f-measure")]
    rows += [r.row() for r in reports]
    if improvement and len(reports) == 2:
        a, b = reports
        rows.append(("Improvement",
                     f"{100 * (b.macro_precision - a.macro_precision):.2f}%",
                     f"{100 * (b.macro_recall - a.macro_recall):.2f}%",
                     f"{100 * (b.f_measure - a.f_measure):.2f}%"))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "\n".join(
        "  ".join([r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])])
        for r in rows
    )


# -- corpus-level evaluation over link files -------------------------------------


def _gold_token(index: int, text: str, orig_tokens, index_space: bool) -> LinkToken:
    if orig_tokens is not None and index < len(orig_tokens):
        tok = orig_tokens[index]
        return LinkToken(index, text, (tok.span,), (tok.text,))
    if index_space:
        # both sides index the same tokens: positions serve as spans
        return LinkToken(index, text, (Span(index, index + 1),), (text,))
    return LinkToken(index, text, (), (text,))


def _gold_set(sid, rows, orig_tokens, index_space=False) -> LinkSet:
    return LinkSet(sid, GOLD, [
        DepLink(r.link_type, _gold_token(r.head_index, r.head_text, orig_tokens, index_space),
                _gold_token(r.dep_index, r.dep_text, orig_tokens, index_space))
        for r in rows
    ])


def evaluate(gold_rows: dict, pred_rows: dict, records=None, system: str = "system",
             strict: bool = True, warn=None) -> EvalReport:
    """Score predicted link rows against gold rows.

    Without ``records`` predictions are over the original sentences and share
    their ids.  With ``records`` (simplified sentences) predictions are keyed
    by simplified id and interpreted through each record's alignment; gold
    links of a split sentence go to the unit holding their head token.
    """
    warn = warn or (lambda msg: None)
    scores: list[SentenceScore] = []

    if records is None:
        for sid in pred_rows:
            if sid not in gold_rows:
                if strict:
                    raise KeyError(f"predicted sentence {sid!r} has no gold links")
                warn(f"predicted sentence {sid!r} not in gold; skipped")
        for sid, rows in gold_rows.items():
            gold = _gold_set(sid, rows, None, index_space=True)
            pred = _gold_set(sid, pred_rows.get(sid, []), None, index_space=True)
            pred.role = ORIGINAL
            m = match_link_sets(pred, gold)
            scores.append(score_sentence(*m, sentence_id=sid))
        return score_corpus(scores, system)

    by_id = {r.id: r for r in records}
    units: dict[str, list] = {}
    for r in records:
        units.setdefault(r.orig_id, []).append(r)
    for sid in pred_rows:
        if sid not in by_id or by_id[sid].orig_id not in gold_rows:
            if strict:
                raise KeyError(f"predicted sentence {sid!r} unknown to alignment or gold")
            warn(f"predicted sentence {sid!r} unknown; skipped")

    for sid, rows in gold_rows.items():
        recs = units.get(sid)
        if not recs:
            gold = _gold_set(sid, rows, None)
            scores.append(score_sentence([], [], gold.links, sentence_id=sid))
            continue
        orig_text = recs[0].orig_text
        orig_toks = tokenize(orig_text) if orig_text is not None else None
        gold = _gold_set(sid, rows, orig_toks)
        unit_tokens = []
        for rec in recs:
            texts = [t.text for t in tokenize(rec.text)]
            unit_tokens.append(simplified_tokens(texts, rec.alignment, orig_text))
        assigned: list[list[DepLink]] = [[] for _ in recs]
        for link in gold.links:
            target = 0
            for end in (link.head, link.dep):
                hit = next((k for k, toks in enumerate(unit_tokens)
                            if any(t.words and t.covers(end) for t in toks)), None)
                if hit is not None:
                    target = hit
                    break
            assigned[target].append(link)
        for rec, toks, gl in zip(recs, unit_tokens, assigned):
            plinks = []
            for r in pred_rows.get(rec.id, []):
                for idx in (r.head_index, r.dep_index):
                    if idx >= len(toks):
                        raise AlignmentMismatch(
                            f"line {r.line}: token {idx} outside {rec.id} "
                            f"({len(toks)} tokens)")
                plinks.append(DepLink(r.link_type, toks[r.head_index], toks[r.dep_index]))
            m = match_link_sets(LinkSet(rec.id, SIMPLIFIED, plinks),
                                LinkSet(sid, GOLD, gl), toks)
            scores.append(score_sentence(*m, sentence_id=rec.id))
    return score_corpus(scores, system)
