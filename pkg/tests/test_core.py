import pytest
from hypothesis import given
from hypothesis import strategies as st

from biosimplify.core import (
    AlignmentMap,
    Number,
    PipelineConfig,
    PlaceholderEntry,
    PlaceholderKind,
    PlaceholderTable,
    Sentence,
    SimplifiedSentence,
    Span,
    Stage,
    detokenize,
    is_word,
    placeholder_pattern,
    tokenize,
)


def words(text):
    return [t.text for t in tokenize(text)]


@pytest.mark.parametrize("text, expected", [
    ("p53 binds DNA.", ["p53", "binds", "DNA", "."]),
    ("(Fig. 2),", ["(", "Fig", ".", "2", ")", ","]),
    ("Huntington's alpha- x", ["Huntington's", "alpha-", "x"]),
    ('"quoted" [1]', ['"', "quoted", '"', "[", "1", "]"]),
    ("", []),
    ("  a   b  ", ["a", "b"]),
])
def test_tokenize(text, expected):
    assert words(text) == expected


def test_token_spans_index_the_text():
    text = "The (big) protein, here."
    for tok in tokenize(text):
        assert text[tok.span.start:tok.span.end] == tok.text


@pytest.mark.parametrize("tokens, expected", [
    (["a", ",", "b", "."], "a, b."),
    (["x", "(", "y", ")", "z"], "x (y) z"),
    (["[", "1", "]"], "[1]"),
])
def test_detokenize(tokens, expected):
    assert detokenize(tokens) == expected


_word = st.text(alphabet="abcXYZ09-'", min_size=1, max_size=6)
_punct = st.sampled_from(list(".,;:!?()[]"))


@given(st.lists(st.one_of(_word, _punct), max_size=12))
def test_detokenize_round_trips_through_tokenize(toks):
    toks = [t for t in toks if t.strip("-'")] or ["x"]
    text = detokenize(toks)
    assert detokenize(words(text)) == text


@given(st.text(max_size=40))
def test_tokenize_spans_are_ordered_and_faithful(text):
    toks = tokenize(text)
    for a, b in zip(toks, toks[1:]):
        assert a.span.end <= b.span.start
    for t in toks:
        assert text[t.span.start:t.span.end] == t.text and t.text.strip() == t.text


def test_span_relations():
    assert Span(0, 10).contains(Span(2, 3))
    assert not Span(2, 3).contains(Span(0, 10))
    assert Span(0, 5).overlaps(Span(4, 8))
    assert not Span(0, 4).overlaps(Span(4, 8))


def test_placeholder_table():
    table = PlaceholderTable()
    entry = PlaceholderEntry("NPX1", "cell cycle genes", Span(0, 16),
                             PlaceholderKind.NOUN_PHRASE, Number.PLURAL)
    table.add(entry)
    assert table.lookup("NPX1s") is entry
    assert table.lookup("NPX2") is None
    with pytest.raises(ValueError):
        table.add(entry)
    with pytest.raises(ValueError):
        PlaceholderEntry("NPX 1", "x", Span(0, 1), PlaceholderKind.NOUN_PHRASE)
    with pytest.raises(ValueError):
        PlaceholderEntry("NPX1", "", Span(0, 1), PlaceholderKind.NOUN_PHRASE)


def test_alignment_compose():
    orig = Sentence.from_text("s", "a b c d")
    # stage 1 merges b c into X
    mid = Sentence.from_tokens("s", ["a", "X", "d"])
    first = AlignmentMap(((Span(0, 1),), (Span(2, 5),), (Span(6, 7),)))
    # stage 2 drops a
    second = AlignmentMap(((mid.tokens[1].span,), (mid.tokens[2].span,)))
    composed = second.compose(first, mid.tokens)
    assert composed.entries == ((Span(2, 5),), (Span(6, 7),))
    assert [orig.text[s.start:s.end] for (s,) in composed.entries] == ["b c", "d"]


def test_simplified_sentence_json_round_trip():
    table = PlaceholderTable()
    table.add(PlaceholderEntry("GENE1", "p53", Span(0, 3), PlaceholderKind.ENTITY))
    rec = SimplifiedSentence("S1.1", "S1", "GENE1 binds.", table,
                             AlignmentMap(((Span(0, 3),), (Span(4, 9),), (Span(9, 10),))),
                             frozenset({Stage.ENTITY}), "p53 binds.")
    assert SimplifiedSentence.from_json(rec.to_json()) == rec


def test_pipeline_config_validation():
    assert PipelineConfig(section_indicator_list=("results ",)).section_indicator_list == ("RESULTS",)
    with pytest.raises(ValueError):
        PipelineConfig(split_threshold_words=0)
    with pytest.raises(ValueError):
        PipelineConfig(split_min_commas=0)


def test_placeholder_pattern_and_words():
    pat = placeholder_pattern("GENE", "NPX")
    assert pat.match("GENE12") and pat.match("NPX3s")
    assert not pat.match("GENES") and not pat.match("xGENE1")
    assert is_word("p53") and not is_word(",") and not is_word("(")
