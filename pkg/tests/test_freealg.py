import random

import pytest
import sympy

from canonlift.freealg import (MonicPoly, NotARootError, QuotAlgebra, RingMap, adjoin_root,
                               alg_trace, charpoly_check, mult_matrix, newton_power_sums,
                               poly_divide_linear, submodule_index)
from canonlift.series import BaseElt, BaseRing

E = BaseRing(("u1",), 8, 2, 16)
u1 = E.gen("u1")
F = MonicPoly(E, [-2, -u1, 0, 1])
A = QuotAlgebra(E, F, "x")
x = A.gen()

U, X = sympy.symbols("u1 x")
F_SYM = X ** 3 - U * X - 2


def from_sympy(expr, algebra=A) -> object:
    """Reduce a sympy polynomial in x, u1 independently and load it."""
    r = sympy.Poly(sympy.rem(sympy.expand(expr), F_SYM, X), X)
    vec = []
    for i in range(algebra.rank):
        c = sympy.Poly(r.coeff_monomial(X ** i), U)
        vec.append(BaseElt(E, {e: int(v) for e, v in c.terms()}))
    return algebra.from_vec(vec)


def test_alg_make():
    assert A.rank == 3
    assert QuotAlgebra(BaseRing((), 8, 2, 16), [2, 1], "y").rank == 1
    lin = QuotAlgebra(E, MonicPoly(E, [-5, 1]))
    assert lin.gen() == lin.scalar(5)
    with pytest.raises(ValueError):
        MonicPoly(E, [1, 2])


def test_alg_mul_examples():
    assert x * x ** 2 == u1 * x + 2
    a = x * 5 + u1
    assert a * 1 == a
    assert x ** 2 * x ** 2 == x ** 2 * u1 + x * 2
    assert x ** 4 == from_sympy(X ** 4)


def test_mul_matches_sympy_reduction():
    rng = random.Random(3)
    for _ in range(20):
        ca = [rng.randint(-9, 9) for _ in range(6)]
        cb = [rng.randint(-9, 9) for _ in range(6)]
        pa = ca[0] + ca[1] * U + ca[2] * X + ca[3] * U * X + ca[4] * X ** 2 + ca[5] * U ** 2 * X ** 2
        pb = cb[0] + cb[1] * U + cb[2] * X + cb[3] * U * X + cb[4] * X ** 2 + cb[5] * U ** 2 * X ** 2
        assert from_sympy(pa) * from_sympy(pb) == from_sympy(pa * pb)


def test_mult_matrix():
    M = mult_matrix(x)
    cols = [[M[i][j] for i in range(3)] for j in range(3)]
    assert cols[0] == [0, 1, 0]
    assert cols[1] == [0, 0, 1]
    assert cols[2] == [2, u1, 0]
    I = mult_matrix(A.one())
    assert all(I[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    C = mult_matrix(A.scalar(u1 + 3))
    assert all(C[i][j] == ((u1 + 3) if i == j else 0) for i in range(3) for j in range(3))


def test_trace_examples():
    assert alg_trace(A.one()) == 3
    assert alg_trace(x).is_zero()
    assert alg_trace(x ** 2) == u1 * 2


def test_newton_examples():
    p1, p2, p3 = newton_power_sums(F, 3)
    assert p1.is_zero() and p2 == u1 * 2 and p3 == 6


def random_monic(rng, ring, degree):
    coeffs = [ring.random_element(rng, degree=2) for _ in range(degree)]
    return MonicPoly(ring, coeffs + [1])


def test_newton_matches_trace():
    rng = random.Random(11)
    for _ in range(15):
        f = random_monic(rng, E, rng.randint(1, 6))
        B = QuotAlgebra(E, f)
        sums = newton_power_sums(f, 8)
        for k in range(1, 9):
            assert sums[k - 1] == alg_trace(B.gen() ** k)


def test_trace_is_linear():
    rng = random.Random(2)
    for _ in range(20):
        a, b = A.random_element(rng), A.random_element(rng)
        al, be = E.random_element(rng), E.random_element(rng)
        assert alg_trace(a * al + b * be) == alg_trace(a) * al + alg_trace(b) * be


def test_charpoly_check():
    assert charpoly_check(A)
    assert charpoly_check(QuotAlgebra(E, MonicPoly(E, [-7, 1])))
    rng = random.Random(4)
    for _ in range(10):
        assert charpoly_check(QuotAlgebra(E, random_monic(rng, E, rng.randint(1, 6))))


def tower():
    Y = adjoin_root(E, F, "y")
    y = Y.gen()
    q = poly_divide_linear(F, y)
    D = adjoin_root(Y, q, "z")
    return Y, y, q, D, D.gen()


def test_divide_linear_and_adjoin():
    Y, y, q, D, z = tower()
    assert Y.rank == 3
    assert q == MonicPoly(Y, [y * y - u1, y, 1])
    assert D.rank == 2 and D.flat_rank == 6
    last = poly_divide_linear(q, z)
    assert last == MonicPoly(D, [y + z, 1])
    assert MonicPoly.from_roots(D, [y, z, -y - z]) == F.over(D)
    # reconstruct f from the quotient
    assert MonicPoly.linear(Y, y) * q == F.over(Y)
    c = E(5) + u1
    assert poly_divide_linear(MonicPoly(E, [-c, 1]), c) == MonicPoly(E, [1])
    with pytest.raises(NotARootError):
        poly_divide_linear(F, Y.scalar(1))
    trivial = adjoin_root(E, MonicPoly(E, [0, 1]), "w")
    assert trivial.rank == 1 and trivial.gen().is_zero()


def test_division_invariant_random():
    rng = random.Random(8)
    for _ in range(10):
        roots = [E.random_element(rng) for _ in range(rng.randint(1, 5))]
        f = MonicPoly.from_roots(E, roots)
        q = poly_divide_linear(f, roots[0])
        assert MonicPoly.linear(E, roots[0]) * q == f


def test_tower_trace():
    Y, y, q, D, z = tower()
    assert alg_trace(D.one()) == 6
    # each root appears twice among the 6 embeddings of D_1, trace(z) = 2 * (sum of roots)
    assert alg_trace(z).is_zero()


def test_ringmap():
    Y, y, q, D, z = tower()
    res = RingMap(QuotAlgebra(E, F * MonicPoly(E, [0, 1]), "y"), E, 0)
    assert res(res.source.gen()).is_zero()
    chi_y = RingMap(A, Y, y)
    assert chi_y(x ** 2) == y * y
    chi_3 = RingMap(A, D, -y - z)
    assert chi_3(x) == -y - z
    with pytest.raises(NotARootError):
        RingMap(A, E, 0)


def test_submodule_index_examples():
    rep = submodule_index([[E(1), E(1), E(0), E(0)],
                           [E(0), E(0), E(1), E(0)],
                           [E(0), E(0), E(0), E(1)],
                           [E(0), E(2), u1, E(0)]])
    oracle = sympy.Matrix([[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 2, U, 0]]).det()
    assert rep.determinant == BaseElt(E, {(0,): int(oracle)})
    assert abs(int(oracle)) == 2
    assert rep.valuation == 1 and rep.cofactor_is_unit
    Z3 = BaseRing((), 8, 3, 16)
    rep = submodule_index([[Z3(1), Z3(1)], [Z3(0), Z3(3)]])
    assert rep.determinant == 3 and rep.valuation == 1
    eye = [[E(int(i == j)) for j in range(3)] for i in range(3)]
    rep = submodule_index(eye)
    assert rep.determinant == 1 and rep.valuation == 0 and rep.cofactor_is_unit
    with pytest.raises(ValueError):
        submodule_index([[E(1), E(0)]])


def test_unimodular_change_of_basis():
    rng = random.Random(6)
    for _ in range(10):
        n = 4
        M = [[E(int(i == j)) for j in range(n)] for i in range(n)]
        for _ in range(6):
            i, j = rng.sample(range(n), 2)
            c = E.random_element(rng, degree=2)
            M[i] = [a + b * c for a, b in zip(M[i], M[j])]
        rep = submodule_index(M)
        assert rep.valuation == 0 and rep.cofactor_is_unit
