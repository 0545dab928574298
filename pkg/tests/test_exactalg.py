import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pathhom.exactalg import (T, CyclotomicNumber, LaurentPoly, RankAccumulator, SparseMatrix,
                              TrackedEchelon, cyc_rank, cyclotomic_polynomial, divisors,
                              euler_phi, evaluate_matrix, generic_rank, int_det, int_matmul,
                              kernel_basis, matmul_laurent, rat_kernel, rat_rank,
                              modp_rank, prime_for_conductor, smith_normal_form)

small_ints = st.integers(-4, 4)
laurent = st.dictionaries(st.integers(-3, 5), st.integers(-3, 3), max_size=4).map(LaurentPoly)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


# --- Laurent polynomials ---------------------------------------------------

def test_parse_and_print_roundtrip():
    p = LaurentPoly.parse("1 - t^2")
    assert p == 1 - T ** 2
    assert LaurentPoly.parse(str(p)) == p
    assert LaurentPoly.parse("t^-1 + 3") == LaurentPoly({-1: 1, 0: 3})
    assert str(LaurentPoly()) == "0"


def test_laurent_arithmetic_basics():
    p = T - 1
    assert p * (T + 1) == T ** 2 - 1
    assert (T ** 3).shift(-3) == LaurentPoly.const(1)
    assert p(1) == 0 and p(Fraction(1, 2)) == Fraction(-1, 2)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()


@given(laurent, laurent, st.fractions(min_value=-3, max_value=3).filter(lambda x: x != 0))
def test_evaluation_is_a_ring_map(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


# --- cyclotomic arithmetic -------------------------------------------------

@pytest.mark.parametrize("q", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(q):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(q, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(q).dense() == [int(c) for c in ref]


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_product_identity(n):
    prod = LaurentPoly.const(1)
    for q in divisors(n):
        prod = prod * cyclotomic_polynomial(q)
    assert prod == T ** n - 1


@pytest.mark.parametrize("n", range(1, 31))
def test_euler_phi_sums_to_n(n):
    assert sum(euler_phi(q) for q in divisors(n)) == n
    assert euler_phi(n) == sympy.totient(n)


def test_known_cyclotomics():
    assert cyclotomic_polynomial(1) == T - 1
    assert cyclotomic_polynomial(4) == T ** 2 + 1
    assert cyclotomic_polynomial(6) == T ** 2 - T + 1
    assert cyclotomic_polynomial(12) == T ** 4 - T ** 2 + 1


@given(laurent.filter(bool), st.integers(2, 12))
def test_cyclotomic_inverse(p, q):
    z = CyclotomicNumber.from_laurent(p, q)
    if z.is_zero():
        return
    assert z * z.inverse() == CyclotomicNumber.from_laurent(LaurentPoly.const(1), q)


def test_zeta_power_is_one():
    for q in (3, 5, 12):
        z = CyclotomicNumber.from_laurent(T ** q, q)
        assert z == CyclotomicNumber.from_laurent(LaurentPoly.const(1), q)
        inv = CyclotomicNumber.from_laurent(LaurentPoly.monomial(-1), q)
        assert inv * CyclotomicNumber.from_laurent(T, q) == CyclotomicNumber.from_laurent(
            LaurentPoly.const(1), q)


# --- rational linear algebra -----------------------------------------------

@settings(max_examples=150)
@given(int_matrices(6, 6))
def test_rat_rank_matches_sympy(m):
    assert rat_rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=150)
@given(int_matrices(6, 6))
def test_rank_plus_nullity(m):
    ker = rat_kernel(m)
    assert rat_rank(m) + len(ker) == len(m[0])
    for v in ker:
        for row in m:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


@settings(max_examples=60)
@given(int_matrices(8, 8))
def test_float_rank_sanity(m):
    # numpy's SVD rank agrees on small well-scaled integer matrices
    assert rat_rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))


def test_kernel_basis_is_rref_in_requested_order():
    m = [[1, 1, 0], [0, 1, -1]]
    ker = kernel_basis(m)
    assert ker == [(2, {2: 1, 1: 1, 0: -1})]
    rev = kernel_basis(m, column_order=[2, 1, 0])
    assert rev[0][0] == 0 and rev[0][1][0] == 1


def test_sparse_matrix_roundtrip():
    dense = [[0, 2, 0], [1, 0, 0]]
    assert SparseMatrix.from_dense(dense).to_dense() == dense
    assert kernel_basis(SparseMatrix(0, 2, [])) == [(0, {0: 1}), (1, {1: 1})]


def test_rank_accumulator_and_tracked_echelon():
    acc = RankAccumulator()
    assert acc.add({"a": 1, "b": 2})
    assert not acc.add({"a": 2, "b": 4})
    assert acc.contains({"a": 3, "b": 6}) and not acc.contains({"b": 1})
    te = TrackedEchelon()
    rng = random.Random(3)
    vecs = [{k: rng.randint(-3, 3) for k in range(5)} for _ in range(4)]
    for i, v in enumerate(vecs):
        te.add(v, i)
    target = {k: 2 * vecs[0].get(k, 0) - vecs[3].get(k, 0) for k in range(5)}
    sol = te.solve(target)
    recon = {k: sum(x * vecs[i].get(k, 0) for i, x in sol.items()) for k in range(5)}
    assert all(recon[k] == target[k] for k in range(5))
    with pytest.raises(ValueError):
        TrackedEchelon().solve({0: 1})


# --- Laurent matrix ranks --------------------------------------------------

def test_cyc_rank_examples():
    m1 = [[T - 1, T ** 2 - 1, T ** 4 - 1]]
    assert generic_rank(m1) == 1
    assert [cyc_rank(m1, q) for q in range(1, 6)] == [0, 1, 1, 1, 1]
    assert cyc_rank([[T + 1]], 2) == 0 and cyc_rank([[T + 1]], 1) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(laurent, min_size=3, max_size=3), min_size=1, max_size=3),
       st.integers(1, 9))
def test_cyc_rank_bounded_by_generic(m, q):
    assert cyc_rank(m, q) <= generic_rank(m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(laurent, min_size=3, max_size=3), min_size=1, max_size=3))
def test_generic_rank_matches_sympy(m):
    t = sympy.Symbol("t")
    sm = sympy.Matrix([[sum(c * t ** e for e, c in p.items()) for p in row] for row in m])
    assert generic_rank(m) == sm.rank(simplify=True)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(laurent, min_size=2, max_size=2), min_size=2, max_size=3))
def test_cyc_rank_at_q1_is_rank_at_one(m):
    assert cyc_rank(m, 1) == rat_rank(evaluate_matrix(m, 1))


def test_cyc_rank_matches_numeric_root_of_unity():
    rng = random.Random(7)
    for _ in range(30):
        m = [[LaurentPoly({rng.randint(-2, 4): rng.randint(-2, 2)}) for _ in range(3)]
             for _ in range(3)]
        for q in (3, 4, 5, 7):
            z = np.exp(2j * np.pi / q)
            num = np.array([[complex(sum(c * z ** e for e, c in p.items())) for p in row]
                            for row in m])
            assert cyc_rank(m, q) == np.linalg.matrix_rank(num, tol=1e-8)


def test_matmul_laurent():
    a = [[T, LaurentPoly.const(1)]]
    b = [[LaurentPoly.const(1)], [-T]]
    assert matmul_laurent(a, b) == [[LaurentPoly()]]


# --- Smith normal form -----------------------------------------------------

def test_snf_small():
    assert smith_normal_form([[6, 0], [0, 4]]) == (2, 12)
    assert smith_normal_form([[7, -3], [0, 1]]) == (1, 7)
    assert smith_normal_form([[0, 0], [0, 0]]) == (0, 0)


@settings(max_examples=150)
@given(int_matrices(4, 4))
def test_snf_matches_sympy_and_transforms(m):
    inv, U, V = smith_normal_form(m, transforms=True)
    d = int_matmul(int_matmul(U, m), V)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (inv[i] if i == j else 0)
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    for a, b in zip(inv, inv[1:]):
        if b:
            assert a and b % a == 0
    from sympy.matrices.normalforms import smith_normal_form as sym_snf
    ref = sym_snf(sympy.Matrix(m), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(inv) == ref_diag


@settings(max_examples=80)
@given(int_matrices(3, 3), st.integers(0, 10 ** 6))
def test_snf_unimodular_invariance(m, seed):
    rng = random.Random(seed)
    k = len(m)
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(4):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i != j:
            r = rng.randint(-2, 2)
            U[i] = [a + r * b for a, b in zip(U[i], U[j])]
    assert smith_normal_form(int_matmul(U, m)) == smith_normal_form(m)


@given(int_matrices(4, 4).filter(lambda m: len(m) == len(m[0])))
def test_int_det_matches_sympy(m):
    assert int_det(m) == sympy.Matrix(m).det()


# --- modular ranks -----------------------------------------------------------

@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 7, 12])
def test_prime_for_conductor(q):
    p, z = prime_for_conductor(q)
    assert (p - 1) % q == 0 and sympy.isprime(p)
    assert pow(z, q, p) == 1
    assert all(pow(z, k, p) != 1 for k in range(1, q))
    assert prime_for_conductor(q, 1)[0] > p


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(laurent, min_size=3, max_size=3), min_size=1, max_size=4),
       st.integers(1, 9))
def test_modp_rank_is_a_lower_bound_and_usually_exact(m, q):
    # reduction can only lose rank; with primes near 2^30 it essentially never does
    assert modp_rank(m, q) <= cyc_rank(m, q)
    assert modp_rank(m, q) == cyc_rank(m, q)


def test_modp_rank_rejects_rational_coefficients():
    with pytest.raises(ValueError):
        modp_rank([[LaurentPoly({0: Fraction(1, 2)})]], 3)
    assert modp_rank([[0, 0]], 3) == 0
