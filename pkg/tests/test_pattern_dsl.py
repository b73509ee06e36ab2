import io
from random import Random

import pytest

from helpers import random_pattern
from smellex.pattern_dsl import (
    Capture,
    ChunkRef,
    Group,
    Literal,
    PatternKindError,
    PatternSyntaxError,
    PosWildcard,
    SynRef,
    classify_pattern,
    make_record,
    parse_pattern,
    read_patterns,
    render_pattern,
    write_patterns,
)

LISTING = "[<adj>] <smell_noun> _,_* _of_ <pronoun>* [<noun> {_of_ <noun>}*]"


def test_listing_pattern_shape():
    ast = parse_pattern(LISTING)
    assert len(ast.elements) == 6
    assert len(ast.captures()) == 2
    cap0, cap1 = ast.captures()
    assert cap0.index == 0 and isinstance(cap0.elements[0], ChunkRef)
    assert cap1.elements[0].chunk == "noun"
    # the nested {_of_ <noun>} group keeps its star
    group = cap1.elements[1]
    assert isinstance(group, Group) and group.star


def test_prep_alias_normalizes_to_adp():
    ast = parse_pattern("prep__*")
    (el,) = ast.elements
    assert el == PosWildcard("ADP", star=True)
    assert render_pattern(ast) == "__ADP*"


def test_unbalanced_bracket():
    with pytest.raises(PatternSyntaxError) as exc:
        parse_pattern("[<adj>")
    assert exc.value.column == 1


@pytest.mark.parametrize(
    "source",
    [
        "",
        "__",
        "__XX",
        "_a||b_",
        "__DET**",
        "* _of_",
        "<adj> ]",
        "{}",
        "[]",
        "[<adj> [<noun>]]",
        "bare",
        "_unterminated",
    ],
)
def test_parse_errors(source):
    with pytest.raises(PatternSyntaxError):
        parse_pattern(source)


def test_error_column_is_meaningful():
    with pytest.raises(PatternSyntaxError) as exc:
        parse_pattern("<adj> [<noun> [<adj>]]")
    assert exc.value.column == 15


def test_unstarred_group_normalized_away():
    assert parse_pattern("{_of_ <noun>}") == parse_pattern("_of_ <noun>")


def test_capture_indices_dense_in_source_order():
    ast = parse_pattern("[<adj>] _of_ [<noun>] {[<verb>]}*")
    assert [c.index for c in ast.captures()] == [0, 1, 2]


def test_render_is_canonical_and_stable():
    ast = parse_pattern(LISTING)
    rendered = render_pattern(ast)
    assert rendered == LISTING
    assert parse_pattern(rendered) == ast


def test_render_parse_identity_on_paper_patterns(paper_patterns):
    for rec in paper_patterns:
        rendered = render_pattern(rec.ast)
        again = parse_pattern(rendered)
        assert again == rec.ast, rec.id
        assert render_pattern(again) == rendered


def test_render_parse_identity_random():
    rng = Random(11)
    for _ in range(300):
        ast = random_pattern(rng)
        rendered = render_pattern(ast)
        assert parse_pattern(rendered) == ast
        assert render_pattern(parse_pattern(rendered)) == rendered


def test_literal_alternation_and_comma():
    ast = parse_pattern("_of|like_ _,_*")
    lit, comma = ast.elements
    assert lit == Literal(("of", "like"))
    assert comma == Literal((",",), star=True)


def test_classify_listing_extraction_for_adj_noun():
    ast = parse_pattern(LISTING)
    assert classify_pattern(ast, "adj_noun") == "extraction"
    assert classify_pattern(ast, "verb_noun") == "identification"


def test_classify_no_captures_identification():
    ast = parse_pattern("<adj>* compound__ <smell_noun>")
    assert classify_pattern(ast, "adj_noun") == "identification"


def test_classify_three_captures_identification():
    ast = parse_pattern("[<adj>] [<noun>] [<verb>]")
    assert classify_pattern(ast, "adj_noun") == "identification"


def test_classify_never_extraction_for_both(paper_patterns):
    rng = Random(23)
    asts = [rec.ast for rec in paper_patterns] + [random_pattern(rng) for _ in range(200)]
    for ast in asts:
        both = {
            approach
            for approach in ("adj_noun", "verb_noun")
            if classify_pattern(ast, approach) == "extraction"
        }
        assert len(both) <= 1


def test_classify_same_class_twice_not_extraction():
    ast = parse_pattern("[<noun>] _of_ [<noun>]")
    assert classify_pattern(ast, "adj_noun") == "identification"
    assert classify_pattern(ast, "verb_noun") == "identification"


def test_pronoun_ignored_in_complement_class():
    ast = parse_pattern("[<pronoun>* <adj>] <smell_noun> _of_ [<noun>]")
    assert classify_pattern(ast, "adj_noun") == "extraction"


def test_extraction_record_requires_eligible_captures():
    with pytest.raises(PatternKindError):
        make_record("p0", "<smell_noun> _of_ <noun>", "extraction", "adj_noun")
    with pytest.raises(PatternKindError):
        make_record("p0", LISTING, "extraction", "none")
    rec = make_record("p1", LISTING, "extraction", "adj_noun")
    assert rec.kind == "extraction"


def test_synref_vs_chunkref():
    ast = parse_pattern("<smell_noun> <noun>")
    assert ast.elements[0] == SynRef("smell_noun")
    assert ast.elements[1] == ChunkRef("noun")


def test_pattern_file_round_trip(paper_patterns):
    buf = io.StringIO()
    write_patterns(paper_patterns, buf)
    reloaded = read_patterns(io.StringIO(buf.getvalue()))
    assert [(r.id, r.kind, r.approach, r.ast) for r in reloaded] == [
        (r.id, r.kind, r.approach, r.ast) for r in paper_patterns
    ]


def test_pattern_file_extended_columns():
    rec = make_record(
        "p9",
        LISTING,
        "extraction",
        "adj_noun",
        status="validated",
        estimated_precision=0.8,
        origin_cycle=2,
        exempt=True,
    )
    buf = io.StringIO()
    write_patterns([rec], buf, extended=True)
    (reloaded,) = read_patterns(io.StringIO(buf.getvalue()))
    assert reloaded.status == "validated"
    assert reloaded.estimated_precision == pytest.approx(0.8)
    assert reloaded.origin_cycle == 2
    assert reloaded.exempt


def test_pattern_file_syntax_error_names_pattern():
    bad = "px\tidentification\tnone\t[<adj>\n"
    with pytest.raises(PatternSyntaxError, match="px"):
        read_patterns(io.StringIO(bad))
