import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from standext.algebra import build_algebra
from standext.cli import fixture_text
from standext.presentation import parse_algebra

ALL_FIXTURES = (
    "semisimple1",
    "a2-dominant",
    "sl2-regular",
    "sl2-regular-badht",
    "digon-s1",
    "a3-zero",
    "a3-zero-desc",
    "a3-zero-mixed",
)

# fixtures on which every verification stage passes
PASSING_FIXTURES = (
    "semisimple1",
    "a2-dominant",
    "sl2-regular",
    "digon-s1",
    "a3-zero",
    "a3-zero-desc",
)

# fixtures passing check_qh (a3-zero-mixed is quasi-hereditary but fails
# the height conditions on its resolutions)
QH_FIXTURES = PASSING_FIXTURES + ("a3-zero-mixed",)

_cache = {}


def algebra_for(name: str):
    if name not in _cache:
        _cache[name] = build_algebra(parse_algebra(fixture_text(name)))
    return _cache[name]


@pytest.fixture(scope="session")
def algebras():
    return {name: algebra_for(name) for name in ALL_FIXTURES}
