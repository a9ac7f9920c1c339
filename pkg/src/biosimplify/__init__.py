"""Rule-based simplification of biomedical sentences ahead of parsing."""

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
    Stage,
    Token,
    detokenize,
    tokenize,
)
from .pipeline import Simplifier, simplify, simplify_corpus

__version__ = "0.1.0"
