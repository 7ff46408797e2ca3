import random
from fractions import Fraction

import pytest

from jkpencil.unipoly import (
    UniPoly,
    coprime_refine,
    poly_gcd,
    rational_roots,
    split_rational_linear_factors,
    squarefree_decompose,
)

from conftest import gcd_oracle_from_factors, poly_from_linear_factors

X = UniPoly.x()
ONE = UniPoly.one()


def test_gcd_common_linear_factor():
    f = X * X - ONE
    g = X - ONE
    assert poly_gcd(f, g) == X - ONE


def test_gcd_with_zero_is_monic_normalization():
    f = UniPoly([6, 0, 2])  # 2x^2 + 6
    assert poly_gcd(f, UniPoly.zero()) == UniPoly([3, 0, 1])
    assert poly_gcd(UniPoly.zero(), f) == UniPoly([3, 0, 1])
    assert poly_gcd(UniPoly.zero(), UniPoly.zero()) == UniPoly.zero()


def test_gcd_derived_by_rational_root_factorization():
    # x^3 - x = x(x-1)(x+1); x^2 - 2x + 1 = (x-1)^2
    f = X**3 - X
    g = X * X - X.scale(2) + ONE
    expected = gcd_oracle_from_factors(
        [(Fraction(0), 1), (Fraction(1), 1), (Fraction(-1), 1)],
        [(Fraction(1), 2)],
    )
    assert expected == X - ONE
    assert poly_gcd(f, g) == expected


def test_gcd_divides_both_and_is_divided_by_common_divisors():
    rng = random.Random(7)
    roots = [Fraction(v) for v in (-2, -1, 0, 1, 2, 3)]
    for _ in range(120):
        fa = [(r, rng.randint(0, 2)) for r in roots]
        fb = [(r, rng.randint(0, 2)) for r in roots]
        f = poly_from_linear_factors([(r, m) for r, m in fa if m])
        g = poly_from_linear_factors([(r, m) for r, m in fb if m])
        d = poly_gcd(f, g)
        assert (f % d).is_zero and (g % d).is_zero
        oracle = gcd_oracle_from_factors(
            [(r, m) for r, m in fa if m], [(r, m) for r, m in fb if m]
        )
        assert d == oracle
        # any common divisor divides the gcd
        assert (d % oracle).is_zero


def _euclid_gcd_oracle(f, g):
    # plain Euclidean remainders; independent of the subresultant path
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def test_gcd_matches_euclid_on_random_inputs():
    rng = random.Random(91)
    for _ in range(150):
        f = UniPoly(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(0, 7))]
        )
        g = UniPoly(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(0, 7))]
        )
        assert poly_gcd(f, g) == _euclid_gcd_oracle(f, g)


def test_squarefree_structure_on_random_inputs():
    rng = random.Random(57)
    for _ in range(60):
        f = UniPoly([Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(2, 8))])
        if f.degree < 1:
            continue
        parts = squarefree_decompose(f)
        rebuilt = UniPoly.one()
        for part, mult in parts:
            assert poly_gcd(part, part.derivative()).is_one  # squarefree
            rebuilt = rebuilt * part**mult
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                assert poly_gcd(parts[i][0], parts[j][0]).is_one
        assert rebuilt == f.monic()


def test_gcd_large_coefficients_subresultant_path():
    f = (X.scale(12) + UniPoly.constant(Fraction(5, 7))) * (X**3 + X.scale(9) - ONE)
    g = (X.scale(12) + UniPoly.constant(Fraction(5, 7))) * (X**2 - X.scale(4))
    d = poly_gcd(f, g)
    assert d == (X + UniPoly.constant(Fraction(5, 84)))


def test_squarefree_constructed_factorization():
    f = (X - UniPoly.constant(2)) ** 2 * (X + ONE)
    assert squarefree_decompose(f) == [
        (X + ONE, 1),
        (X - UniPoly.constant(2), 2),
    ]


def test_squarefree_irreducible_quadratic():
    f = X * X + ONE
    assert squarefree_decompose(f) == [(X * X + ONE, 1)]


def test_squarefree_rejects_zero():
    with pytest.raises(ValueError):
        squarefree_decompose(UniPoly.zero())


def test_squarefree_random_distinct_linear_products():
    rng = random.Random(3)
    for _ in range(60):
        roots = rng.sample([-4, -3, -2, -1, 1, 2, 3, 4], rng.randint(1, 5))
        f = poly_from_linear_factors([(Fraction(r), 1) for r in roots])
        decomp = squarefree_decompose(f.scale(rng.choice([1, 2, -3])))
        assert decomp == [(f.monic(), 1)]


def test_squarefree_reconstructs_input():
    rng = random.Random(11)
    for _ in range(40):
        roots = rng.sample([-3, -1, 0, 2, 5], rng.randint(1, 4))
        factors = [(Fraction(r), rng.randint(1, 3)) for r in roots]
        f = poly_from_linear_factors(factors)
        rebuilt = UniPoly.one()
        for part, mult in squarefree_decompose(f):
            rebuilt = rebuilt * part**mult
        assert rebuilt == f.monic()


def test_rational_roots_with_multiplicities():
    f = poly_from_linear_factors([(Fraction(1, 2), 2), (Fraction(-3), 1)])
    assert rational_roots(f) == [(Fraction(-3), 1), (Fraction(1, 2), 2)]
    assert rational_roots(X * X + ONE) == []


def test_coprime_refine_splits_shared_factors():
    a = (X - ONE) * (X + ONE)
    b = (X - ONE) * (X - UniPoly.constant(2))
    basis = coprime_refine([a, b])
    assert basis == [
        X - UniPoly.constant(2),
        X - ONE,
        X + ONE,
    ]


def test_split_rational_linear_factors_keeps_opaque_part():
    f = (X - UniPoly.constant(3)) * (X * X + ONE)
    parts = split_rational_linear_factors(f)
    assert parts == [X - UniPoly.constant(3), X * X + ONE]


def test_divmod_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        f = UniPoly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 7))])
        g = UniPoly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 5))])
        if g.is_zero:
            continue
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree or r.is_zero


def test_compose_and_eval():
    f = X * X + X.scale(2)  # x^2 + 2x
    inner = X - ONE
    composed = f.compose(inner)
    for v in (-2, 0, 1, 5):
        assert composed(v) == f(Fraction(v) - 1)
