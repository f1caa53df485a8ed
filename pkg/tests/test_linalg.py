"""Exact linear algebra tests: frozen small cases, oracle cross-checks,
and structural properties (MDS submatrices, duality, Zassenhaus sums)."""

import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srstore.errors import (
    DimensionMismatch,
    DuplicateEvaluationPoint,
    FieldTooSmall,
    NoSolution,
    NotContained,
    Singular,
    ZeroMultiplier,
)
from srstore.field import field_new
from srstore.linalg import (
    Matrix,
    Subspace,
    cauchy,
    default_cauchy_points,
    default_eval_points,
    grs,
    grs_dual,
    vandermonde,
    zero_forcing_rank_ok,
)

from .oracles import rank_mod_p


def rand_matrix(field, nrows, ncols, rng):
    return Matrix(
        field,
        [[rng.randrange(field.q) for _ in range(ncols)] for _ in range(nrows)],
        ncols,
    )


# -- basics and elimination -------------------------------------------


def test_identity_rank_inverse():
    f = field_new(7)
    i3 = Matrix.identity(f, 3)
    assert i3.rank() == 3
    assert i3.inverse() == i3


def test_small_rank_frozen():
    f = field_new(7)
    m = Matrix(f, [[3, 2], [6, 3]])
    assert m.rank() == 2  # det = 9 - 12 = -3 = 4 mod 7


def test_zero_matrix_kernel_full():
    f = field_new(7)
    z = Matrix.zero(f, 2, 2)
    ker = z.left_kernel()
    assert ker.dim == 2
    assert ker == Subspace.full(f, 2)


def test_rank_matches_prime_oracle():
    rng = random.Random(11)
    for p in (2, 3, 7, 13):
        f = field_new(p)
        for _ in range(30):
            nr, nc = rng.randrange(1, 7), rng.randrange(1, 7)
            m = rand_matrix(f, nr, nc, rng)
            assert m.rank() == rank_mod_p(m.rows, p)


def test_rref_idempotent_and_shape():
    rng = random.Random(5)
    for q in (2, 5, 8, 9):
        f = field_new(q)
        for _ in range(20):
            m = rand_matrix(f, rng.randrange(1, 6), rng.randrange(1, 6), rng)
            r, piv = m.rref()
            r2, piv2 = r.rref()
            assert r == r2 and piv == piv2
            assert len(piv) == m.rank()
            for i, p_col in enumerate(piv):
                col = [r.rows[t][p_col] for t in range(r.nrows)]
                assert col[i] == 1 and sum(map(bool, col)) == 1


def test_solve_left_roundtrip_and_no_solution():
    rng = random.Random(3)
    for q in (5, 8):
        f = field_new(q)
        m = rand_matrix(f, 3, 5, rng)
        x = [rng.randrange(q) for _ in range(3)]
        y = m.left_mul_vec(x)
        got = m.solve_left(y)
        assert m.left_mul_vec(got) == y
    f = field_new(5)
    m = Matrix(f, [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(NoSolution):
        m.solve_left([0, 0, 1])


def test_inverse_roundtrip_and_singular():
    rng = random.Random(9)
    f = field_new(13)
    for _ in range(20):
        m = rand_matrix(f, 4, 4, rng)
        if m.rank() < 4:
            with pytest.raises(Singular):
                m.inverse()
        else:
            assert m.mul(m.inverse()) == Matrix.identity(f, 4)
            assert m.inverse().mul(m) == Matrix.identity(f, 4)
    with pytest.raises(Singular):
        Matrix(f, [[1, 2, 3]]).inverse()


def test_left_kernel_annihilates():
    rng = random.Random(17)
    for q in (2, 9, 13):
        f = field_new(q)
        for _ in range(10):
            m = rand_matrix(f, rng.randrange(1, 6), rng.randrange(1, 6), rng)
            ker = m.left_kernel()
            assert ker.dim == m.nrows - m.rank()
            for v in ker.basis:
                assert not any(m.left_mul_vec(v))


def test_empty_shapes():
    f = field_new(5)
    e = Matrix(f, [], ncols=3)
    assert e.rank() == 0
    assert e.transpose().nrows == 3 and e.transpose().ncols == 0
    prod = Matrix.zero(f, 2, 0).mul(Matrix(f, [], ncols=4))
    assert prod.nrows == 2 and prod.ncols == 4 and prod.is_zero()
    assert Matrix.zero(f, 0, 0).rank() == 0
    assert Subspace.zero(f, 3).dim == 0
    with pytest.raises(DimensionMismatch):
        Matrix(f, [])


def test_matmul_transpose_identity():
    rng = random.Random(23)
    f = field_new(8)
    a = rand_matrix(f, 3, 4, rng)
    b = rand_matrix(f, 4, 2, rng)
    assert a.mul(b).transpose() == b.transpose().mul(a.transpose())
    with pytest.raises(DimensionMismatch):
        b.mul(a)


# -- structured matrices ----------------------------------------------


def test_cauchy_frozen_f7():
    f = field_new(7)
    assert cauchy(f, [0, 1], [2, 3]) == Matrix(f, [[3, 2], [6, 3]])


def test_cauchy_one_by_one():
    for q in (2, 7, 9):
        f = field_new(q)
        m = cauchy(f, [0], [1])
        assert m.rows == [[f.neg(1)]]


def test_cauchy_duplicate_rejected():
    f = field_new(7)
    with pytest.raises(DuplicateEvaluationPoint):
        cauchy(f, [0, 1], [1, 3])
    with pytest.raises(DuplicateEvaluationPoint):
        cauchy(f, [0, 0], [2, 3])


def test_cauchy_every_submatrix_invertible():
    # Cauchy matrices are superregular: all square submatrices invertible
    for q, size in ((11, 5), (13, 5), (7, 3), (8, 4)):
        f = field_new(q)
        alphas, betas = default_cauchy_points(f, size, size)
        m = cauchy(f, alphas, betas)
        for s in range(1, size + 1):
            for ri in combinations(range(size), s):
                for ci in combinations(range(size), s):
                    assert m.submatrix(ri, ci).rank() == s


def test_vandermonde_frozen_f7():
    f = field_new(7)
    assert vandermonde(f, [1, 2, 3], 2) == Matrix(f, [[1, 1, 1], [1, 2, 3]])
    row = vandermonde(f, [2, 4, 6], 1)
    assert row.rows == [[1, 1, 1]]


def test_vandermonde_column_mds():
    for q in (7, 11, 13):
        f = field_new(q)
        for n in range(1, 7):
            if n > q:
                continue
            zetas = default_eval_points(f, n)
            for k in range(1, min(n, 4) + 1):
                v = vandermonde(f, zetas, k)
                for ci in combinations(range(n), k):
                    assert v.take_cols(ci).rank() == k


def test_vandermonde_duplicate_rejected():
    f = field_new(7)
    with pytest.raises(DuplicateEvaluationPoint):
        vandermonde(f, [1, 1, 3], 2)


def test_grs_frozen_f7():
    f = field_new(7)
    m = grs(f, [1, 2, 3], [1, 2, 3])
    assert m == Matrix(f, [[1, 2, 3], [1, 4, 2], [1, 1, 6]])
    assert m.rank() == 3


def test_grs_all_ones_is_vandermonde():
    f = field_new(13)
    alphas = [2, 5, 7, 11]
    assert grs(f, [1] * 4, alphas) == vandermonde(f, alphas, 4)


def test_grs_rejects_bad_inputs():
    f = field_new(7)
    with pytest.raises(ZeroMultiplier):
        grs(f, [1, 0, 3], [1, 2, 3])
    with pytest.raises(DuplicateEvaluationPoint):
        grs(f, [1, 2, 3], [1, 1, 3])


def test_grs_full_rank_random():
    rng = random.Random(29)
    for q in (13, 17):
        f = field_new(q)
        for _ in range(10):
            n = rng.randrange(2, min(q, 7))
            alphas = rng.sample(range(q), n)
            v = [rng.randrange(1, q) for _ in range(n)]
            assert grs(f, v, alphas).rank() == n


def test_grs_dual_frozen_n2():
    f = field_new(7)
    dual = grs_dual(f, [1, 1], [0, 1], 1)
    assert dual == Matrix(f, [[6, 1]])


def test_grs_dual_orthogonal_random():
    rng = random.Random(31)
    for q in (13, 17, 25):
        f = field_new(q)
        for _ in range(10):
            n = rng.randrange(2, min(q, 7))
            k = rng.randrange(1, n)
            alphas = rng.sample(range(q), n)
            v = [rng.randrange(1, q) for _ in range(n)]
            dual = grs_dual(f, v, alphas, k)
            g = grs(f, v, alphas).take_rows(range(k))
            assert dual.mul(g.transpose()).is_zero()
            assert dual.rank() == n - k


def test_zero_forcing_frozen_and_random():
    f = field_new(7)
    assert zero_forcing_rank_ok(f, [1, 1], [0, 1], 1)
    rng = random.Random(37)
    for q in (13,):
        fq = field_new(q)
        for _ in range(100):
            n = rng.randrange(2, 7)
            k = rng.randrange(1, n)
            alphas = rng.sample(range(q), n)
            v = [rng.randrange(1, q) for _ in range(n)]
            assert zero_forcing_rank_ok(fq, v, alphas, k)


def test_default_points_deterministic_and_bounded():
    f = field_new(8)
    assert default_cauchy_points(f, 2, 3) == ([0, 1], [2, 3, 4])
    assert default_eval_points(f, 5) == [0, 1, 2, 3, 4]
    with pytest.raises(FieldTooSmall):
        default_cauchy_points(f, 4, 5)
    with pytest.raises(FieldTooSmall):
        default_eval_points(f, 9)


# -- subspaces --------------------------------------------------------


def enumerate_span(field, ambient, basis):
    vecs = set()
    for coeffs in product(range(field.q), repeat=len(basis)):
        v = [0] * ambient
        for c, b in zip(coeffs, basis):
            v = [field.add(x, field.mul(c, y)) for x, y in zip(v, b)]
        vecs.add(tuple(v))
    return vecs


def test_subspace_trivial_identities():
    f = field_new(5)
    u = Subspace(f, 3, [[1, 2, 0], [0, 0, 1]])
    assert u.sum_(u) == u
    assert u.intersect(u) == u
    e1 = Subspace(f, 2, [[1, 0]])
    e2 = Subspace(f, 2, [[0, 1]])
    assert e1.intersect(e2).dim == 0
    assert e1.sum_(e2) == Subspace.full(f, 2)


def test_subspace_f2_containment_frozen():
    f = field_new(2)
    u = Subspace(f, 3, [[1, 1, 0], [0, 1, 1]])
    v = Subspace(f, 3, [[1, 0, 1]])
    assert u.contains_subspace(v)
    assert u.intersect(v) == v
    assert u.sum_(v) == u


def test_subspace_ops_match_enumeration():
    rng = random.Random(41)
    for q in (2, 3):
        f = field_new(q)
        for _ in range(25):
            amb = rng.randrange(1, 5)
            bu = [
                [rng.randrange(q) for _ in range(amb)]
                for _ in range(rng.randrange(0, 3))
            ]
            bv = [
                [rng.randrange(q) for _ in range(amb)]
                for _ in range(rng.randrange(0, 3))
            ]
            u, v = Subspace(f, amb, bu), Subspace(f, amb, bv)
            su, sv = enumerate_span(f, amb, bu), enumerate_span(f, amb, bv)
            inter = u.intersect(v)
            assert enumerate_span(f, amb, inter.basis) == su & sv
            assert enumerate_span(f, amb, u.sum_(v).basis) == {
                tuple(f.add(a, b) for a, b in zip(x, y))
                for x in su
                for y in sv
            }


def test_subspace_dimension_identity_random():
    rng = random.Random(43)
    for q in (2, 3, 5):
        f = field_new(q)
        for _ in range(30):
            amb = rng.randrange(1, 11)
            u = Subspace(
                f, amb,
                [
                    [rng.randrange(q) for _ in range(amb)]
                    for _ in range(rng.randrange(0, amb + 1))
                ],
            )
            v = Subspace(
                f, amb,
                [
                    [rng.randrange(q) for _ in range(amb)]
                    for _ in range(rng.randrange(0, amb + 1))
                ],
            )
            s, i = u.sum_(v), u.intersect(v)
            assert s.dim + i.dim == u.dim + v.dim
            assert s.contains_subspace(u) and s.contains_subspace(v)
            assert u.contains_subspace(i) and v.contains_subspace(i)


def test_complement_within():
    rng = random.Random(47)
    for q in (2, 5):
        f = field_new(q)
        for _ in range(25):
            amb = rng.randrange(1, 8)
            w = Subspace(
                f, amb,
                [
                    [rng.randrange(q) for _ in range(amb)]
                    for _ in range(rng.randrange(0, amb + 1))
                ],
            )
            if not w.basis:
                continue
            # carve a sub-subspace of w
            u = Subspace(
                f, amb,
                [
                    w.basis_matrix().left_mul_vec(
                        [rng.randrange(q) for _ in range(w.dim)]
                    )
                    for _ in range(rng.randrange(0, w.dim + 1))
                ],
            )
            c = u.complement_within(w)
            assert u.sum_(c) == w
            assert u.intersect(c).dim == 0
            assert c.dim == w.dim - u.dim


def test_complement_not_contained_rejected():
    f = field_new(3)
    u = Subspace(f, 3, [[1, 0, 0]])
    w = Subspace(f, 3, [[0, 1, 0]])
    with pytest.raises(NotContained):
        u.complement_within(w)


@given(
    q=st.sampled_from([2, 3, 5, 8]),
    seed=st.integers(min_value=0, max_value=10**6),
)
@settings(max_examples=60, deadline=None)
def test_rank_product_bound(q, seed):
    rng = random.Random(seed)
    f = field_new(q)
    a = rand_matrix(f, rng.randrange(1, 5), rng.randrange(1, 5), rng)
    b = rand_matrix(f, a.ncols, rng.randrange(1, 5), rng)
    assert a.mul(b).rank() <= min(a.rank(), b.rank())
    assert a.rank() == a.transpose().rank()
