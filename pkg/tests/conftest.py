from pathlib import Path

import pytest

from smellex.corpus import load_tagged
from smellex.keywords import load_default_keywords
from smellex.lexicon import default_synonym_groups
from smellex.pattern_dsl import load_patterns

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def keywords():
    return load_default_keywords()


@pytest.fixture(scope="session")
def groups(keywords):
    return default_synonym_groups(keywords)


@pytest.fixture(scope="session")
def phrases():
    """Hand-tagged fixtures of the quoted example phrases."""
    return load_tagged(FIXTURES / "paper_phrases.tsv")


@pytest.fixture(scope="session")
def paper_patterns():
    return load_patterns(FIXTURES / "paper_patterns.tsv")


@pytest.fixture(params=["python", "cython"])
def engine(request):
    from smellex import matcher

    if request.param not in matcher.available_engines():
        pytest.skip("engine %s not built" % request.param)
    return matcher.get_engine(request.param)
