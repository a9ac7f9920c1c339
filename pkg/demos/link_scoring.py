"""
Scoring dependency links across a simplified tokenization
=========================================================

"""

from biosimplify import PipelineConfig, Sentence, Simplifier
from biosimplify.linkeval import (
    DepLink,
    LinkSet,
    match_link_sets,
    original_tokens,
    render_table,
    score_corpus,
    score_sentence,
    simplified_tokens,
)
from biosimplify.substitute import Gazetteer

text = "The Huntington's disease protein interacts with p53."
sentence = Sentence.from_text("S1", text)
orig = original_tokens(sentence.tokens)
print([(t.index, t.text) for t in orig])

# gold links connect single original words
gold = LinkSet("S1", "GOLD", [
    DepLink("S", orig[4], orig[3]),   # interacts -> protein
    DepLink("D", orig[3], orig[0]),   # protein -> The
    DepLink("J", orig[5], orig[6]),   # with -> p53
])

# a parser run on the simplified sentence sees placeholders instead
simplifier = Simplifier(PipelineConfig(), gazetteer=Gazetteer({
    "Huntington's disease protein": "GENE", "p53": "GENE"}))
(rec,) = simplifier.simplify(sentence)
simp = simplified_tokens([t.text for t in rec.tokens], rec.alignment, text)
print([(t.index, t.text, t.surface) for t in simp])

pred = LinkSet("S1.1", "SIMPLIFIED", [
    DepLink("S", simp[1], simp[0]),   # interacts -> GENE1 covers "protein"
    DepLink("J", simp[2], simp[3]),   # with -> GENE2
    DepLink("O", simp[1], simp[3]),   # a spurious link
])
m = match_link_sets(pred, gold, simp)
print("tp", len(m.tp), "fp", len(m.fp), "fn", len(m.fn))
# the determiner link sits inside GENE1, so it is not counted as missed

simplified = score_corpus([score_sentence(*m)], system="parser + simplification")
original = score_corpus([score_sentence([1, 2], [3], [4])], system="parser")
print(render_table([original, simplified], improvement=True))
