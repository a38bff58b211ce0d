import json

import pytest

from standext.algebra import NotFiniteDimensionalError, build_algebra
from standext.cli import fixture_text
from standext.presentation import parse_algebra

from conftest import ALL_FIXTURES, algebra_for
from oracle import OracleAlgebra


EXPECTED_HILBERT = {
    "semisimple1": {0: 1},
    "a2-dominant": {0: 2, 1: 1},
    "sl2-regular": {0: 2, 1: 2, 2: 1},
    "digon-s1": {0: 4, 1: 4},
    "a3-zero": {0: 3, 1: 2},
}


@pytest.mark.parametrize("name,expected", sorted(EXPECTED_HILBERT.items()))
def test_hilbert_tables(name, expected):
    assert algebra_for(name).hilbert() == expected


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_dims_match_oracle(name):
    alg = algebra_for(name)
    oalg = OracleAlgebra(json.loads(fixture_text(name)))
    lib = {
        (x, y, n): alg.dim(x, y, n)
        for x in alg.vertices
        for y in alg.vertices
        for n in range(alg.top_degree + 1)
        if alg.dim(x, y, n)
    }
    assert lib == oalg.dims()


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_multiplication_associative(name):
    alg = algebra_for(name)
    basis = [
        b
        for x in alg.vertices
        for y in alg.vertices
        for n in range(alg.top_degree + 1)
        for b in alg.basis(x, y, n)
    ]
    for f in basis:
        for g in basis:
            if f.target != g.source:
                continue
            for h in basis:
                if g.target != h.source:
                    continue
                left = alg.multiply(alg.multiply(f, g), h)
                right = alg.multiply(f, alg.multiply(g, h))
                assert left.coords == right.coords


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_units_are_neutral(name):
    alg = algebra_for(name)
    for x in alg.vertices:
        for y in alg.vertices:
            for n in range(alg.top_degree + 1):
                for b in alg.basis(x, y, n):
                    assert alg.multiply(alg.unit(x), b).coords == b.coords
                    assert alg.multiply(b, alg.unit(y)).coords == b.coords


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_opposite_preserves_dimensions(name):
    alg = algebra_for(name)
    op = alg.opposite()
    assert op.hilbert() == alg.hilbert()
    for x in alg.vertices:
        for y in alg.vertices:
            for n in range(alg.top_degree + 1):
                assert op.dim(y, x, n) == alg.dim(x, y, n)
    assert op.opposite() is alg


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_degree_one_generation(name):
    alg = algebra_for(name)
    assert alg.generated_in_degree_one()
    assert all(n == 1 for (_, _, n) in alg.species())


def test_infinite_dimensional_rejected():
    doc = """
    {"name": "loop", "vertices": [{"id": "x", "ht": 0}],
     "arrows": [{"id": "a", "from": "x", "to": "x"}], "relations": []}
    """
    with pytest.raises(NotFiniteDimensionalError):
        build_algebra(parse_algebra(doc), degree_cap=8)
