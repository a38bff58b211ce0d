from fractions import Fraction

from hypothesis import given, settings, strategies as st

from standext.linalg import Matrix, Subspace

entries = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(entries, min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(Matrix)
        )
    )


@given(matrices())
@settings(max_examples=60)
def test_rref_idempotent(m):
    red, pivots = m.rref()
    red2, pivots2 = red.rref()
    assert red == red2
    assert pivots == pivots2


@given(matrices())
@settings(max_examples=60)
def test_rank_nullity(m):
    assert m.rank() + m.kernel().dim == m.cols


@given(matrices())
@settings(max_examples=60)
def test_kernel_vectors_annihilated(m):
    for v in m.kernel().vectors():
        assert all(e == 0 for e in m.matvec(v))


@given(matrices(), st.lists(entries, min_size=1, max_size=4))
@settings(max_examples=60)
def test_solve_verifies(m, x):
    x = x[: m.cols] + [Fraction(0)] * max(0, m.cols - len(x))
    b = m.matvec(tuple(x))
    sol = m.solve(b)
    assert sol is not None
    assert m.matvec(sol) == b


@given(matrices())
@settings(max_examples=40)
def test_row_space_membership(m):
    sp = m.row_space()
    for row in m.entries:
        assert sp.contains(row)
    assert sp.dim == m.rank()


def test_degenerate_shapes():
    z = Matrix.zero(0, 3)
    assert (z * Matrix.zero(3, 2)).cols == 2
    assert (z + z).cols == 3
    assert z.hstack(Matrix.zero(0, 4)).cols == 7
    assert Matrix.zero(2, 0).rank() == 0


def test_inverse_round_trip():
    m = Matrix([[1, 2], [3, 5]])
    assert m.inverse() * m == Matrix.identity(2)


def test_subspace_operations():
    a = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    b = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    assert a.intersect(b).dim == 1
    assert a.add(b).dim == 3
    assert a.complement_in(b).dim == 1
