"""
Readability before and after simplification
===========================================

"""

from biosimplify import PipelineConfig, Sentence, Simplifier, simplify_corpus
from biosimplify.readability import corpus_stats, count_syllables, reduction_report
from biosimplify.substitute import Gazetteer

# syllables are vowel groups; placeholders count as two
for word in ["protein", "transcription", "apoptosis", "alpha-catenin", "GENE1"]:
    print(word, count_syllables(word))

abstract = [
    "RESULTS: Tumor necrosis factor alpha activates nuclear factor kappa B (Fig. 3).",
    "The heat shock protein 70 binds the misfolded receptor domain in human cells, "
    "cyclin D1 represses the cell cycle genes during apoptosis, and p53 regulates "
    "the transcription of the insulin receptor substrate 1 after treatment.",
    "Alpha- and beta-catenin interact with the cellular membrane complex.",
]
genes = Gazetteer({name: "GENE" for name in [
    "Tumor necrosis factor alpha", "nuclear factor kappa B", "heat shock protein 70",
    "cyclin D1", "p53", "insulin receptor substrate 1", "alpha-catenin", "beta-catenin"]})

before = [Sentence.from_text(f"S{i}", t) for i, t in enumerate(abstract, 1)]
config = PipelineConfig(split_threshold_words=20)
groups = simplify_corpus(before, config, simplifier=Simplifier(config, gazetteer=genes))
after = [rec for group in groups for rec in group]
for rec in after:
    print(rec.id, rec.text)

report = reduction_report(corpus_stats(before), corpus_stats(after))
print(report.render())
