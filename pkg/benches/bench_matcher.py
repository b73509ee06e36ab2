#!/usr/bin/env python3
"""Benchmark the compiled matcher engine against the pure-Python twin.

Builds a synthetic harvesting-sized corpus, compiles the bundled example
patterns, and times full-corpus matching per engine.

    python benches/bench_matcher.py [--sentences 20000] [--repeats 3]
"""

import argparse
import time
from random import Random

from smellex import matcher
from smellex.corpus import Corpus, Document, TaggedSentence, Token
from smellex.keywords import load_default_keywords
from smellex.lexicon import default_synonym_groups
from smellex.pattern_dsl import make_record

PATTERNS = [
    ("listing1", "extraction", "adj_noun",
     "[<adj>] <smell_noun> _,_* _of_ <pronoun>* [<noun> {_of_ <noun>}*]"),
    ("compound", "identification", "none", "<adj>* compound__ <smell_noun>"),
    ("verb-noun", "extraction", "verb_noun",
     "<smell_noun> _of|like_ __DET* <pronoun>* [<noun> {_of_ <noun>}*] [<verb> prep__*]"),
    ("breath", "identification", "none",
     "<adj>* _breath|breaths_ _of_ <pronoun>* <noun> {_of_ <noun>}*"),
]

ADJS = "faint sweet sour odd sharp warm damp heavy mild strange".split()
NOUNS = "tar brine peat moss smoke cedar resin hay timber dust".split()
SMELLS = "aroma smell scent odour stench perfume reek".split()
FILLER = "lantern market bridge carriage harbour meadow stairway window".split()


def build_corpus(n_sentences: int, seed: int) -> Corpus:
    rng = Random(seed)
    sentences = []
    for i in range(n_sentences):
        r = rng.random()
        if r < 0.15:
            toks = [
                ("the", "DET"), (rng.choice(ADJS), "ADJ"),
                (rng.choice(SMELLS), "NOUN"), ("of", "ADP"),
                (rng.choice(ADJS), "ADJ"), (rng.choice(NOUNS), "NOUN"),
                ("and", "CCONJ"), (rng.choice(NOUNS), "NOUN"),
                ("drifted", "VERB"), ("in", "ADP"),
            ]
        elif r < 0.25:
            toks = [
                ("a", "DET"), (rng.choice(ADJS), "ADJ"),
                (rng.choice(NOUNS), "NOUN"), (rng.choice(SMELLS), "NOUN"),
                ("hung", "VERB"), ("there", "ADV"),
            ]
        else:
            toks = [
                ("the", "DET"), (rng.choice(FILLER), "NOUN"),
                ("stood", "VERB"), ("near", "ADP"), ("the", "DET"),
                (rng.choice(FILLER), "ADJ"), (rng.choice(FILLER), "NOUN"),
            ]
        tokens = tuple(
            Token(j, text, text.lower(), pos) for j, (text, pos) in enumerate(toks)
        )
        sentences.append(TaggedSentence("bench", i, tokens))
    return Corpus("bench", (Document("bench", tuple(sentences)),))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sentences", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    groups = default_synonym_groups(load_default_keywords())
    records = [
        make_record(pid, source, kind, approach)
        for pid, kind, approach, source in PATTERNS
    ]
    corpus = build_corpus(args.sentences, args.seed)
    token_count = sum(len(s.tokens) for s in corpus.sentences())
    print(
        "corpus: %d sentences, %d tokens; %d patterns; best of %d runs"
        % (corpus.sentence_count, token_count, len(records), args.repeats)
    )

    results = {}
    for name in matcher.available_engines():
        engine = matcher.get_engine(name)
        best = None
        n_matches = 0
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            matches = matcher.match_corpus(records, corpus, groups, engine)
            elapsed = time.perf_counter() - t0
            best = elapsed if best is None else min(best, elapsed)
            n_matches = len(matches)
        results[name] = best
        print(
            "  %-8s %8.3fs   (%d matches, %.0f sentences/s)"
            % (name, best, n_matches, corpus.sentence_count / best)
        )
    if "python" in results and "cython" in results:
        print(
            "  speedup: compiled engine is %.1fx faster"
            % (results["python"] / results["cython"])
        )


if __name__ == "__main__":
    main()
