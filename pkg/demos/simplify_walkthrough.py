"""
Simplifying a biomedical sentence, stage by stage
=================================================

"""

from biosimplify import PipelineConfig, Sentence, Simplifier
from biosimplify.preprocess import preprocess_sentence
from biosimplify.substitute import Gazetteer, restore_placeholders

# a gazetteer is just a set of names; multi-word names are matched whole
genes = Gazetteer({"Huntington's disease protein": "GENE", "p53": "GENE",
                   "CREB-binding protein": "GENE", "cyclin D1": "GENE", "BRCA1": "GENE"})

text = ("RESULTS: The Huntington's disease protein interacts with p53 and "
        "CREB-binding protein (Fig. 2) and represses transcription.")
sentence = Sentence.from_text("S1", text)
print(sentence.words)

# preprocessing drops the section label and the figure reference
cleaned, record = preprocess_sentence(sentence)
print(cleaned.text)
print([text[s.start:s.end] for s, _ in record.removed_spans])

# the full pipeline also replaces entities and noun phrases by placeholders
simplifier = Simplifier(PipelineConfig(), gazetteer=genes)
(rec,) = simplifier.simplify(sentence)
print(rec.text)
for key, entry in rec.placeholders.items():
    print(key, "->", entry.surface)

# every simplified token knows which characters of the original it covers
for tok, spans in zip(rec.tokens, rec.alignment.entries):
    print(f"{tok.text:>14}  {' | '.join(text[s.start:s.end] for s in spans)}")

# and the placeholders expand back
print(restore_placeholders(rec))

# long comma-laden sentences are split where a clause reads as a sentence
long_text = ("p53 binds the nuclear receptor in human cells, cyclin D1 represses "
             "cell cycle genes in yeast, and BRCA1 activates a novel kinase.")
short = Simplifier(PipelineConfig(split_threshold_words=10), gazetteer=genes)
for unit in short.simplify(Sentence.from_text("S2", long_text)):
    print(unit.id, unit.text)
