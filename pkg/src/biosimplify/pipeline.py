"""End-to-end simplification: preprocess, entities, noun phrases, clause split."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from .clause_split import SplitConfig, make_oracle, split_sentence
from .core import (
    AlignmentMap,
    PipelineConfig,
    PlaceholderEntry,
    PlaceholderTable,
    Sentence,
    SimplifiedSentence,
    Span,
    Stage,
)
from .lexicon import get_lexicon
from .preprocess import load_section_indicators, preprocess_sentence
from .substitute import (
    ExternalRecognizer,
    GazetteerRecognizer,
    chunk_noun_phrases,
    load_gazetteer,
    replace_entities,
    replace_noun_phrases,
)


class Simplifier:
    """Holds the loaded resources (gazetteer, lexicon, oracle) for a run.

    Stages run in a fixed order; each can be switched off through the
    ``preprocess`` / ``entities`` / ``noun_phrases`` / ``split`` flags of
    :class:`PipelineConfig`.
    """

    def __init__(self, config: PipelineConfig | None = None, *, gazetteer=None,
                 recognizer=None, oracle=None, lexicon=None, recognizer_cmd=None):
        self.config = config = config or PipelineConfig()
        self.lexicon = lexicon or get_lexicon(
            config.pos_lexicon_path, config.verb_lexicon_path, config.placeholder_prefixes)
        self.recognizer = recognizer
        if config.entities and recognizer is None:
            if recognizer_cmd:
                self.recognizer = ExternalRecognizer(
                    recognizer_cmd, config.oracle.pool_size, config.oracle.timeout)
            else:
                gaz = gazetteer if gazetteer is not None else load_gazetteer(config.gazetteer_path)
                self.recognizer = GazetteerRecognizer(gaz)
        self.oracle = oracle
        if config.split and oracle is None:
            self.oracle = make_oracle(config.oracle, self.lexicon)
        self.split_cfg = SplitConfig(config.split_threshold_words, config.split_min_commas,
                                     self.oracle, config.oracle.timeout)

    def simplify(self, sentence: Sentence) -> list[SimplifiedSentence]:
        cfg = self.config
        cur = sentence
        align = AlignmentMap.identity(sentence)
        table = PlaceholderTable()
        tags: set[Stage] = set()

        if cfg.preprocess:
            new, record = preprocess_sentence(cur, cfg)
            if record.changed:
                tags.add(Stage.PREPROCESS)
                cur, align = new, record.alignment

        if cfg.entities:
            matches = self.recognizer.find(cur)
            result = replace_entities(cur, matches, cfg)
            cur, align = self._absorb(cur, align, table, tags, Stage.ENTITY, result)
        if cfg.noun_phrases:
            chunks = chunk_noun_phrases(cur, self.lexicon)
            result = replace_noun_phrases(cur, chunks, cfg, self.lexicon)
            cur, align = self._absorb(cur, align, table, tags, Stage.NP, result)

        if cfg.split:
            pieces = split_sentence(cur, self.split_cfg)
        else:
            pieces = [(cur, AlignmentMap.identity(cur))]
        if len(pieces) > 1:
            tags.add(Stage.SPLIT)

        out = []
        for k, (unit, unit_align) in enumerate(pieces, start=1):
            final = unit_align.compose(align, cur.tokens)
            words = set(unit.words)
            sub = PlaceholderTable()
            for key, entry in table.items():
                if key in words:
                    sub.add(entry)
            out.append(SimplifiedSentence(
                id=f"{sentence.id}.{k}",
                orig_id=sentence.id,
                text=unit.text,
                placeholders=sub,
                alignment=final,
                transforms=frozenset(tags),
                orig_text=sentence.text,
            ))
        return out

    @staticmethod
    def _absorb(cur, align, table, tags, stage, result):
        new, stage_table, stage_align = result
        if not stage_table:
            return cur, align
        tags.add(stage)
        composed = stage_align.compose(align, cur.tokens)
        by_text = {t.text: i for i, t in enumerate(new.tokens)}
        for key, entry in stage_table.items():
            spans = composed[by_text[key]]
            table.add(PlaceholderEntry(entry.placeholder, entry.surface,
                                       Span(spans[0].start, spans[-1].end),
                                       entry.kind, entry.number))
        return new, composed

    def __call__(self, sentence: Sentence) -> list[SimplifiedSentence]:
        return self.simplify(sentence)


def simplify(text: str, config: PipelineConfig | None = None, **kwargs) -> list[SimplifiedSentence]:
    """Convenience wrapper: simplify one sentence given as a string."""
    return Simplifier(config, **kwargs).simplify(Sentence.from_text("S1", text))


_worker: Simplifier | None = None


def _init_worker(config, recognizer_cmd):
    global _worker
    _worker = Simplifier(config, recognizer_cmd=recognizer_cmd)


def _run_worker(sentence):
    return _worker.simplify(sentence)


def simplify_corpus(sentences: Iterable[Sentence], config: PipelineConfig | None = None,
                    jobs: int = 1, simplifier: Simplifier | None = None,
                    recognizer_cmd=None) -> Iterator[list[SimplifiedSentence]]:
    """Simplify a corpus, yielding per-input results in input order.

    With ``jobs > 1`` each worker process builds its own :class:`Simplifier`
    from ``config``; output does not depend on ``jobs``.
    """
    config = config or PipelineConfig()
    if jobs <= 1:
        simplifier = simplifier or Simplifier(config, recognizer_cmd=recognizer_cmd)
        for s in sentences:
            yield simplifier.simplify(s)
        return
    with ProcessPoolExecutor(jobs, initializer=_init_worker,
                             initargs=(config, recognizer_cmd)) as pool:
        yield from pool.map(_run_worker, sentences, chunksize=64)


def config_with_indicator_file(config: PipelineConfig, path) -> PipelineConfig:
    from dataclasses import replace

    return replace(config, section_indicator_list=load_section_indicators(path))
