"""Shared brute-force oracles and instance generators for the suite.

The oracles here are deliberately independent of the library's
algorithms: Pfaffians by perfect-matching enumeration, determinants by
permutation expansion, gcds from known linear factorizations.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from jkpencil.pencil import INFINITY, JKInvariants
from jkpencil.unipoly import UniPoly

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdict lines after capture ends."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


def matching_sign(pairs) -> int:
    """Sign of the permutation (i1, j1, i2, j2, ...) by inversion count."""
    flat = [v for pair in pairs for v in pair]
    inversions = sum(
        1
        for a in range(len(flat))
        for b in range(a + 1, len(flat))
        if flat[a] > flat[b]
    )
    return -1 if inversions % 2 else 1


def all_perfect_matchings(items):
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    for t in range(1, len(items)):
        rest = items[1:t] + items[t + 1 :]
        for matching in all_perfect_matchings(rest):
            yield [(first, items[t])] + matching


def naive_pfaffian(m, zero):
    """Sum over perfect matchings; independent of the recursive expansion."""
    n = len(m)
    if n % 2:
        return zero
    total = zero
    for matching in all_perfect_matchings(range(n)):
        term = None
        for i, j in matching:
            term = m[i][j] if term is None else term * m[i][j]
        if term is None:
            term_sum = zero
        else:
            term_sum = term if matching_sign(matching) > 0 else -term
        total = total + term_sum
    return total


def naive_det(m) -> Fraction:
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = Fraction(1)
        for i in range(n):
            term *= m[i][perm[i]]
        total += -term if inversions % 2 else term
    return total


def poly_from_linear_factors(roots_with_mults) -> UniPoly:
    out = UniPoly.one()
    for root, mult in roots_with_mults:
        out = out * UniPoly.linear(root) ** mult
    return out


def gcd_oracle_from_factors(fa, fb) -> UniPoly:
    """Monic gcd of two polynomials given by their linear factorizations."""
    roots_a = dict(fa)
    out = UniPoly.one()
    for root, mult in fb:
        common = min(mult, roots_a.get(root, 0))
        if common:
            out = out * UniPoly.linear(root) ** common
    return out


EIGENVALUE_POOL = [Fraction(v) for v in (-3, -2, -1, 0, 1, 2, 3, 5, 7)] + [
    Fraction(1, 2),
    Fraction(-2, 3),
]


def random_jk_spec(
    rng: random.Random, max_dim: int = 14, min_dim: int = 2, allow_infinity: bool = True
) -> JKInvariants:
    """Random block specification with rational eigenvalues, total
    dimension between min_dim and max_dim."""
    n_target = rng.randint(min_dim, max_dim)
    remaining = n_target
    kron: list[int] = []
    groups: dict = {}
    while remaining > 0:
        if remaining == 1:
            kron.append(1)
            break
        if rng.random() < 0.45:
            k = rng.randint(1, min((remaining + 1) // 2, 3))
            kron.append(k)
            remaining -= 2 * k - 1
        else:
            half = rng.randint(1, min(remaining // 2, 3))
            if allow_infinity and rng.random() < 0.15:
                eig = "INF"
            else:
                eig = rng.choice(EIGENVALUE_POOL)
            groups.setdefault(eig, []).append(half)
            remaining -= 2 * half
    jordan = [
        (INFINITY if eig == "INF" else UniPoly.linear(eig), tuple(sizes))
        for eig, sizes in groups.items()
    ]
    return JKInvariants.from_blocks(kron, jordan)
