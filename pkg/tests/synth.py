"""Seeded generator of biomedical-looking sentences for corpus-scale tests."""

from __future__ import annotations

import random

GENE_NAMES = [
    "p53", "BRCA1", "CREB-binding protein", "Huntington's disease protein",
    "cyclin D1", "protein kinase C", "nuclear factor kappa B",
    "heat shock protein 70", "insulin receptor substrate 1",
    "tumor necrosis factor alpha", "alpha-catenin", "beta-catenin",
]

ADJS = ["novel", "nuclear", "specific", "functional", "recombinant", "cellular"]
NOUNS = ["cell", "cycle", "protein", "kinase", "membrane", "domain", "receptor",
         "activity", "expression", "transcription", "complex", "pathway", "level"]
PLURALS = ["genes", "proteins", "cells", "receptors", "levels", "domains"]
VERBS_3SG = ["binds", "interacts with", "activates", "inhibits", "regulates", "represses"]
VERBS_PL = ["bind", "interact with", "activate", "inhibit", "regulate", "repress"]
TAILS = ["in vitro", "in yeast", "during apoptosis", "after treatment", "in human cells"]


def noun_phrase(rng: random.Random, plural: bool) -> str:
    words = []
    det = rng.choice(["the", "a", ""]) if not plural else rng.choice(["the", ""])
    if det:
        words.append(det)
    if rng.random() < 0.4:
        words.append(rng.choice(ADJS))
    words.extend(rng.choice(NOUNS) for _ in range(rng.randint(0, 2)))
    words.append(rng.choice(PLURALS) if plural else rng.choice(NOUNS))
    return " ".join(words)


def subject(rng: random.Random) -> tuple[str, bool]:
    if rng.random() < 0.5:
        name = rng.choice(GENE_NAMES)
        if rng.random() < 0.3:
            name = "the " + name
        return name, False
    plural = rng.random() < 0.4
    return noun_phrase(rng, plural), plural


def clause(rng: random.Random) -> str:
    subj, plural = subject(rng)
    verb = rng.choice(VERBS_PL if plural else VERBS_3SG)
    obj = rng.choice(GENE_NAMES) if rng.random() < 0.5 else noun_phrase(rng, rng.random() < 0.3)
    parts = [subj, verb, obj]
    if rng.random() < 0.3:
        parts.append(rng.choice(TAILS))
    return " ".join(parts)


def plain_sentence(rng: random.Random, max_clauses: int = 1) -> str:
    """A sentence with no parentheticals, section labels or hyphen fragments."""
    n = rng.randint(1, max_clauses)
    text = ", and ".join(clause(rng) for _ in range(n))
    return text[0].upper() + text[1:] + "."


def noisy_sentence(rng: random.Random) -> str:
    """A sentence that may carry every feature the pipeline handles."""
    parts = []
    if rng.random() < 0.2:
        parts.append(rng.choice(["RESULTS:", "Background:", "CONCLUSIONS:"]))
    clauses = [clause(rng) for _ in range(rng.randint(1, 5))]
    if rng.random() < 0.3:
        clauses[0] = "alpha- and beta-catenin " + rng.choice(VERBS_PL) + " " + noun_phrase(rng, False)
    if rng.random() < 0.3:
        i = rng.randrange(len(clauses))
        clauses[i] += rng.choice([" (Fig. 2)", " [12, 13]", " (see (ref 3))", " (p53)"])
    parts.append(", ".join(clauses))
    return " ".join(parts) + "."


def corpus(n: int, seed: int = 0, noisy: bool = False) -> list[str]:
    rng = random.Random(seed)
    make = noisy_sentence if noisy else plain_sentence
    return [make(rng) for _ in range(n)]


def gazetteer_lines() -> list[str]:
    return list(GENE_NAMES)
