from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeq.arith import (
    Cyclotomic,
    MatrixQ,
    SubspaceQ,
    cyclo_normalize,
    cyclotomic_polynomial,
    format_cyclotomic,
    image_space,
    kernel_space,
    parse_cyclotomic,
    rref,
    subspace_intersect,
)
from heckeq.errors import DimensionError, InputError


# -- cyclotomic numbers

def test_zeta4_squared_is_minus_one():
    v = cyclo_normalize(4, [0, 0, 1, 0])
    assert v == Cyclotomic.rational(-1)
    assert v.is_rational


def test_cube_roots_sum_to_zero():
    v = cyclo_normalize(3, [1, 1, 1])
    assert v.is_zero() and v.is_rational


def test_order_one_is_rational():
    v = cyclo_normalize(1, [7])
    assert v.is_rational and v.to_rational() == 7


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(15)) - 1 == 8


def test_mixed_orders_compare_after_embedding():
    z3 = Cyclotomic.root(3)
    z6 = Cyclotomic.root(6)
    assert z6 * z6 == z3
    assert hash(z6 * z6) == hash(z3)
    assert -Cyclotomic.root(10, 5) == Cyclotomic.rational(1)


def test_galois_and_conjugate():
    z = Cyclotomic.root(5)
    assert z.galois(2) == z ** 2
    assert (z * z.conjugate()) == Cyclotomic.rational(1)
    assert (z + z.conjugate()).normalized_trace() == Fraction(-1, 2)


def test_normalized_trace_of_roots():
    assert Cyclotomic.root(7).normalized_trace() == Fraction(-1, 6)
    assert Cyclotomic.root(4).normalized_trace() == 0


@pytest.mark.parametrize("text", ["0", "1/2 - 3*z12^1 + 1*z12^3", "-1*z5^2", "2", "z5^2 + 1"])
def test_parse_format_roundtrip(text):
    v = parse_cyclotomic(text)
    assert parse_cyclotomic(format_cyclotomic(v)) == v


def test_parse_rejects_garbage():
    with pytest.raises(InputError):
        parse_cyclotomic("1 + q")


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyclotomics(draw):
    n = draw(st.sampled_from([1, 3, 4, 5, 6, 8, 12]))
    return cyclo_normalize(n, draw(st.lists(small, min_size=n, max_size=n)))


@given(cyclotomics(), cyclotomics(), cyclotomics())
@settings(max_examples=60, deadline=None)
def test_cyclotomic_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Cyclotomic.rational(0)


@given(cyclotomics())
@settings(max_examples=40, deadline=None)
def test_coefficients_lowest_terms(a):
    for q in a.coeffs:
        assert isinstance(q, Fraction) and q.denominator > 0


# -- linear algebra

def test_rref_examples():
    full, r = rref(MatrixQ.identity(3))
    assert r == 3 and full == SubspaceQ.full(3)
    zero, r = rref(MatrixQ.zeros(2, 2))
    assert r == 0 and zero == SubspaceQ.zero(2)
    line, r = rref(MatrixQ.from_rows([[1, 2], [2, 4]]))
    assert r == 1 and line == SubspaceQ.span([[1, 2]], 2)
    assert line.basis.row(0) == (1, 2)


def test_kernel_examples():
    assert kernel_space(MatrixQ.identity(3)) == SubspaceQ.zero(3)
    assert kernel_space(MatrixQ.zeros(3, 3)) == SubspaceQ.full(3)
    assert kernel_space(MatrixQ.from_rows([[1, 1], [0, 0]])) == SubspaceQ.span([[1, -1]], 2)


def test_intersection_examples():
    b = SubspaceQ.span([[1, 2, 3]], 3)
    assert subspace_intersect(SubspaceQ.full(3), b) == b
    x = SubspaceQ.span([[1, 0]], 2)
    y = SubspaceQ.span([[1, 1]], 2)
    assert subspace_intersect(x, y) == SubspaceQ.zero(2)
    assert subspace_intersect(b, b) == b
    with pytest.raises(DimensionError):
        subspace_intersect(x, b)


def test_image_is_column_space():
    m = MatrixQ.from_rows([[1, 0], [1, 0], [0, 0]])
    assert image_space(m) == SubspaceQ.span([[1, 1, 0]], 3)


def test_matrix_shape_checked():
    with pytest.raises(DimensionError):
        MatrixQ(2, 2, (Fraction(1),))


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_nullity(rows):
    m = MatrixQ.from_rows(rows)
    _, r = rref(m)
    assert r + kernel_space(m).dim == m.cols
    assert image_space(m).dim == r


@st.composite
def idempotents(draw):
    n = draw(st.integers(1, 4))
    diag = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    # unipotent upper-triangular change of basis keeps everything integral
    upper = [[1 if i == j else (draw(st.integers(-2, 2)) if j > i else 0) for j in range(n)] for i in range(n)]
    return n, diag, upper


def _unipotent_inverse(u):
    n = len(u)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        for i in range(n - 1, -1, -1):
            s = inv[i][col] - sum(Fraction(u[i][k]) * inv[k][col] for k in range(i + 1, n))
            inv[i][col] = s
    return inv


@given(idempotents())
@settings(max_examples=60, deadline=None)
def test_row_space_of_idempotent_is_kernel_of_complement(data):
    n, diag, upper = data
    s = MatrixQ.from_rows(upper)
    s_inv = MatrixQ.from_rows(_unipotent_inverse(upper))
    d = MatrixQ.from_rows([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    p = s @ d @ s_inv
    assert p @ p == p
    row_space, _ = rref(p)
    assert row_space == kernel_space((MatrixQ.identity(n) - p).transpose())
    assert image_space(p) == kernel_space(MatrixQ.identity(n) - p)


vectors3 = st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), max_size=3)


@given(vectors3, vectors3, vectors3)
@settings(max_examples=60, deadline=None)
def test_subspace_equality_is_mutual_containment(a, b, c):
    A, B, C = (SubspaceQ.span(v, 3) for v in (a, b, c))
    assert A == A
    assert (A == B) == (B == A) == (A <= B and B <= A)
    if A == B and B == C:
        assert A == C
    meet = A & B
    assert meet <= A and meet <= B
    assert meet.dim >= A.dim + B.dim - 3
    assert A <= A + B
