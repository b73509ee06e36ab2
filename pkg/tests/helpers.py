"""Shared builders: hand-tagged sentences, random cases, synthetic worlds."""

from dataclasses import dataclass

from smellex.corpus import Corpus, Document, TaggedSentence, Token
from smellex.pattern_dsl import (
    Capture,
    ChunkRef,
    DepWildcard,
    Group,
    Literal,
    PatternAst,
    PosWildcard,
    SynRef,
    parse_pattern,
    render_pattern,
)


def sent(doc_id, sent_index, toks):
    """toks: (text, pos) / (text, pos, lemma) / (text, pos, lemma, dep) tuples."""
    tokens = []
    for i, spec in enumerate(toks):
        text, pos = spec[0], spec[1]
        lemma = spec[2] if len(spec) > 2 and spec[2] else text.lower()
        dep = spec[3] if len(spec) > 3 else None
        tokens.append(Token(i, text, lemma, pos, dep))
    return TaggedSentence(doc_id, sent_index, tuple(tokens))


def corpus_of(name, docs, role="unassigned"):
    """docs: {doc_id: [token-spec list, ...]} -> Corpus."""
    documents = []
    for doc_id, sentences in docs.items():
        documents.append(
            Document(
                doc_id,
                tuple(sent(doc_id, i, toks) for i, toks in enumerate(sentences)),
            )
        )
    return Corpus(name, tuple(documents), role)


def words(text, pos_tags, lemmas=None, deps=None):
    """Zip a space-separated string with per-token POS tags (and extras)."""
    forms = text.split()
    tags = pos_tags.split()
    assert len(forms) == len(tags), (forms, tags)
    lemmas = lemmas.split() if lemmas else [None] * len(forms)
    deps = deps.split() if deps else [None] * len(forms)
    out = []
    for form, tag, lemma, dep in zip(forms, tags, lemmas, deps):
        lemma = None if lemma in (None, "_") else lemma
        dep = None if dep in (None, "_") else dep
        out.append((form, tag, lemma, dep))
    return out


# ---------------------------------------------------------------------------
# Randomized sentences and patterns for the oracle-equivalence checks

ORACLE_TAGS = (
    "NOUN", "ADJ", "VERB", "DET", "ADP", "ADV",
    "CCONJ", "PRON", "PROPN", "AUX", "PART", "PUNCT",
)
ORACLE_VOCAB = (
    ("alpha", "alpha"), ("betas", "beta"), ("gamma", "gamma"),
    ("of", "of"), ("and", "and"), ("the", "the"), ("walked", "walk"),
)
ORACLE_GROUPS = {
    "g1": frozenset({("beta", "NOUN"), ("walk", "VERB")}),
    "g2": frozenset({("alpha", "ADJ"), ("of", "ADP")}),
}


class _OracleGroup:
    def __init__(self, members):
        self.members = members


def oracle_groups():
    return {name: _OracleGroup(m) for name, m in ORACLE_GROUPS.items()}


def random_sentence(rng, max_len=12, doc_id="r", idx=0):
    n = rng.randint(1, max_len)
    toks = []
    for _ in range(n):
        form, lemma = rng.choice(ORACLE_VOCAB)
        dep = rng.choice((None, None, None, "compound", "det"))
        toks.append((form, rng.choice(ORACLE_TAGS), lemma, dep))
    return sent(doc_id, idx, toks)


def _random_atom(rng, top):
    r = rng.random() * (1.0 if top else 0.82)
    if r < 0.25:
        k = rng.randint(1, 2)
        lits = rng.sample([w for w, _ in ORACLE_VOCAB], k)
        return Literal(tuple(lits))
    if r < 0.45:
        return PosWildcard(rng.choice(ORACLE_TAGS))
    if r < 0.52:
        return DepWildcard("compound")
    if r < 0.62:
        return SynRef(rng.choice(("g1", "g2")))
    if r < 0.82:
        return ChunkRef(rng.choice(("adj", "noun", "verb", "pronoun")))
    if r < 0.92:
        inner = tuple(
            _star(rng, _random_atom(rng, False)) for _ in range(rng.randint(1, 2))
        )
        return Capture(inner, index=-1)
    # group: starred by construction, children plain to keep stars unnested
    inner = tuple(_random_atom(rng, False) for _ in range(rng.randint(1, 2)))
    return Group(inner, star=True)


def _star(rng, el):
    if isinstance(el, (Capture, Group)):
        return el
    if rng.random() < 0.35:
        return type(el)(*[getattr(el, f) for f in el.__dataclass_fields__ if f != "star"], star=True)
    return el


def random_pattern(rng, max_elements=6):
    """A random pattern without nested stars, normalized through the parser."""
    n = rng.randint(1, max_elements)
    elements = tuple(_star(rng, _random_atom(rng, True)) for _ in range(n))
    # render/parse normalizes capture indices (and exercises the round trip)
    return parse_pattern(render_pattern(PatternAst(elements)))


# ---------------------------------------------------------------------------
# Synthetic bootstrap world with planted complement pairs

PLANTED_ADJS = (
    "acidic", "burnt", "clammy", "dusky", "earthy", "floral", "grassy",
    "heady", "metallic", "peppery", "resinous", "salty", "smoky", "sour",
    "spicy", "stale", "sugary", "tangy", "woody", "zesty", "briny",
    "chalky", "leafy", "milky", "oily", "rusty", "soapy", "waxen",
    "herbal", "ashen",
)
PLANTED_NOUNS = (
    "cedar", "wet moss", "tar", "old leather", "brine", "warm bread",
    "pitch", "dried herbs", "smoke", "crushed mint", "resin", "fresh hay",
    "lamplight oil", "peat", "ripe apples", "camphor", "spilt wine",
    "iodine", "burnt sugar", "clover", "damp wool", "turpentine",
    "green walnuts", "lye", "charred wood", "vinegar", "pressed flowers",
    "sawdust", "pine gum", "nutmeg",
)

TEMPLATE_A_PATTERN = "[<adj>] <smell_noun> _of_ __DET* [<noun>]"
TEMPLATE_C_PATTERN = "[<noun>] _which_ _gave_ _off_ __DET* [<adj>] <smell_noun>"

_DISTRACTOR_WORDS = (
    "lantern", "market", "bridge", "carriage", "harbour", "meadow",
    "stairway", "window", "orchard", "village",
)


def _noun_group_tokens(noun_text):
    parts = noun_text.split()
    if len(parts) == 2:
        return [(parts[0], "ADJ"), (parts[1], "NOUN")]
    return [(parts[0], "NOUN")]


def _template_a(adj, noun, smell="aroma"):
    toks = [("the", "DET"), (adj, "ADJ"), (smell, "NOUN"), ("of", "ADP")]
    toks += _noun_group_tokens(noun)
    toks += [("filled", "VERB", "fill"), ("the", "DET"), ("room", "NOUN")]
    return toks


def _template_c(adj, noun, known_adj, known_noun):
    toks = [("beside", "ADP"), ("the", "DET"), (known_adj, "ADJ")]
    toks += _noun_group_tokens(known_noun)
    toks += [("lay", "VERB", "lie")]
    toks += _noun_group_tokens(noun)
    toks += [
        ("which", "PRON"), ("gave", "VERB", "give"), ("off", "ADP"),
        ("a", "DET"), (adj, "ADJ"), ("reek", "NOUN"),
    ]
    return toks


def _distractor(rng):
    w = lambda: rng.choice(_DISTRACTOR_WORDS)
    return [
        ("the", "DET"), (w(), "NOUN"), ("stood", "VERB", "stand"),
        ("near", "ADP"), ("the", "DET"), (w(), "ADJ"), (w(), "NOUN"),
    ]


@dataclass
class SyntheticWorld:
    harvesting: Corpus
    validation: Corpus
    planted: set  # of (adj, noun) pairs
    pattern_a: str
    pattern_c: str

    def judge_label(self, doc_id):
        return "tp" if doc_id.startswith("smell-") else "fp"


def synthetic_world(rng, n_harvest=500):
    """Harvesting/validation corpora built from three planted templates.

    Templates A and B share the shape "<adj> smell-noun of <noun-group>"
    (A around the seed word, B around other smell nouns); template C
    inverts the order and carries an already-plantable pair mention so a
    second cycle can retrieve it.
    """
    pairs = list(zip(PLANTED_ADJS, PLANTED_NOUNS))
    a_pairs, b_pairs, c_pairs = pairs[:12], pairs[12:22], pairs[22:]

    smell_sents = []
    for adj, noun in a_pairs:
        smell_sents.append(_template_a(adj, noun, "aroma"))
    for i, (adj, noun) in enumerate(b_pairs):
        smell_sents.append(_template_a(adj, noun, ("scent", "odour")[i % 2]))
    for i, (adj, noun) in enumerate(c_pairs):
        known_adj, known_noun = a_pairs[i % len(a_pairs)]
        smell_sents.append(_template_c(adj, noun, known_adj, known_noun))

    sentences = [("smell", toks) for toks in smell_sents]
    while len(sentences) < n_harvest:
        sentences.append(("plain", _distractor(rng)))
    rng.shuffle(sentences)

    docs, doc_count = {}, {}
    for kind, toks in sentences:
        doc_id = "%s-%d" % (kind, doc_count.get(kind, 0) // 25)
        doc_count[kind] = doc_count.get(kind, 0) + 1
        docs.setdefault(doc_id, []).append(toks)
    harvesting = corpus_of("synthetic-harvest", docs)

    val_docs = {"smell-a": [], "smell-c": [], "plain-v": []}
    for adj, noun in pairs[:15]:
        val_docs["smell-a"].append(_template_a(adj, noun, "aroma"))
    for adj, noun in c_pairs:
        val_docs["smell-c"].append(_template_c(adj, noun, *a_pairs[0]))
    for _ in range(20):
        val_docs["plain-v"].append(_distractor(rng))
    validation = corpus_of("synthetic-validation", val_docs)

    return SyntheticWorld(
        harvesting=harvesting,
        validation=validation,
        planted={(adj, noun) for adj, noun in pairs},
        pattern_a=TEMPLATE_A_PATTERN,
        pattern_c=TEMPLATE_C_PATTERN,
    )
