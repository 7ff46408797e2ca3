"""Constant pencils of skew-symmetric bilinear forms over Q.

Analyzes the one-parameter family A + lambda*B: rank, regular values,
the characteristic polynomial (gcd of Pfaffians of principal minors of
A - lambda*B), the core subspace (sum of kernels of regular members),
and the full block invariants (Kronecker parameters plus Jordan
half-sizes grouped by eigenvalue).

Sign conventions.  Eigenvalues are the roots of the characteristic
polynomial of A - lambda*B; the member A + lambda0*B drops rank exactly
when -lambda0 is such a root.  Non-rational eigenvalues are represented
by their monic minimal polynomials over Q; a degree-d descriptor stands
for d conjugate eigenvalues sharing one multiset of half-sizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

from .errors import (
    InfiniteEigenvalueError,
    InternalConsistencyError,
    PairingViolationError,
    SingularMatrixError,
    ValidationError,
)
from .linalg import (
    Matrix,
    PfaffianCache,
    Subspace,
    bilinear,
    charpoly_rational,
    congruence,
    fraction_free_rank,
    is_skew,
    kernel_basis,
    mat_inverse,
    mat_mul,
    matrix,
    pfaffian,
    rank,
    subspace_sum,
)
from .unipoly import (
    UniPoly,
    coprime_refine,
    poly_gcd,
    rational_roots,
    split_rational_linear_factors,
    squarefree_decompose,
)


class _InfinityType:
    """Sentinel for the eigenvalue at infinity (rank(B) < pencil rank)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _InfinityType()


@dataclass(frozen=True)
class SkewPencil:
    """A pair of same-size skew-symmetric rational matrices (A, B)."""

    a: Matrix
    b: Matrix

    def __post_init__(self):
        object.__setattr__(self, "a", matrix(self.a))
        object.__setattr__(self, "b", matrix(self.b))
        n = len(self.a)
        if len(self.b) != n:
            raise ValidationError("A and B have different sizes")
        if not is_skew(self.a) or not is_skew(self.b):
            raise ValidationError("pencil matrices must be skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.a)

    def member(self, lam) -> Matrix:
        """A + lambda*B as a rational matrix."""
        lam = Fraction(lam)
        return tuple(
            tuple(x + lam * y for x, y in zip(ra, rb))
            for ra, rb in zip(self.a, self.b)
        )

    def lambda_matrix(self, sign: int = 1) -> list[list[UniPoly]]:
        """A + sign*lambda*B as a matrix of univariate polynomials."""
        return [
            [UniPoly((x, sign * y)) for x, y in zip(ra, rb)]
            for ra, rb in zip(self.a, self.b)
        ]


class JordanGroup(NamedTuple):
    """Jordan blocks sharing one eigenvalue descriptor.

    descriptor: monic UniPoly over Q (degree 1 = rational eigenvalue) or
    INFINITY; half_sizes: sorted multiset, one entry 2n per jordan block
    of size 2n x 2n.
    """

    descriptor: object
    half_sizes: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 1 if self.descriptor is INFINITY else self.descriptor.degree

    def sort_key(self):
        if self.descriptor is INFINITY:
            return (1, 0, ())
        return (0,) + self.descriptor.sort_key()


@dataclass(frozen=True)
class JKInvariants:
    """Complete Jordan-Kronecker block data of a skew pencil.

    kronecker holds the parameters k_i (block size 2k_i - 1); jordan
    holds eigenvalue groups.  Derived dimensions are stored for
    reporting and cross-checks.
    """

    kronecker: tuple[int, ...]
    jordan: tuple[JordanGroup, ...]
    n: int = field(compare=False)
    rank: int = field(compare=False)
    corank: int = field(compare=False)
    core_dim: int = field(compare=False)
    mantle_dim: int = field(compare=False)
    reparametrization: Optional[Fraction] = field(default=None, compare=False)

    @classmethod
    def from_blocks(cls, kronecker, jordan, reparametrization=None) -> "JKInvariants":
        kron = tuple(sorted(int(k) for k in kronecker))
        if any(k < 1 for k in kron):
            raise ValidationError("Kronecker parameters must be >= 1")
        groups = []
        for descriptor, sizes in jordan:
            sizes = tuple(sorted(int(s) for s in sizes))
            if not sizes or any(s < 1 for s in sizes):
                raise ValidationError("Jordan half-sizes must be >= 1")
            if descriptor is not INFINITY:
                if not isinstance(descriptor, UniPoly) or descriptor.degree < 1:
                    raise ValidationError("eigenvalue descriptor must be non-constant")
                descriptor = descriptor.monic()
            groups.append(JordanGroup(descriptor, sizes))
        groups.sort(key=JordanGroup.sort_key)
        n = sum(2 * k - 1 for k in kron) + sum(
            2 * g.degree * sum(g.half_sizes) for g in groups
        )
        corank = len(kron)
        core_dim = sum(kron)
        mantle_dim = core_dim + sum(
            2 * g.degree * sum(g.half_sizes) for g in groups
        )
        return cls(
            kronecker=kron,
            jordan=tuple(groups),
            n=n,
            rank=n - corank,
            corank=corank,
            core_dim=core_dim,
            mantle_dim=mantle_dim,
            reparametrization=reparametrization,
        )

    @property
    def jordan_degree_total(self) -> int:
        """Sum of half-sizes weighted by descriptor degree, all groups."""
        return sum(g.degree * sum(g.half_sizes) for g in self.jordan)

    @property
    def finite_char_degree(self) -> int:
        """Degree of the characteristic polynomial (finite eigenvalues only)."""
        return sum(
            g.degree * sum(g.half_sizes)
            for g in self.jordan
            if g.descriptor is not INFINITY
        )

    def shape(self):
        """Eigenvalue-free canonical form: each descriptor of degree d
        expands to d copies of its half-size multiset."""
        expanded = []
        for g in self.jordan:
            expanded.extend([g.half_sizes] * g.degree)
        return (self.kronecker, tuple(sorted(expanded)))


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial with its factor structure."""

    poly: UniPoly
    degree: int
    squarefree_parts: tuple[tuple[UniPoly, int], ...]
    rational_roots: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_poly(cls, poly: UniPoly) -> "CharPoly":
        poly = poly.monic()
        if poly.degree < 1:
            return cls(UniPoly.one(), 0, (), ())
        parts = tuple(squarefree_decompose(poly))
        roots = tuple(rational_roots(poly))
        return cls(poly, poly.degree, parts, roots)

    @property
    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.squarefree_parts)


# -- basic pencil quantities ---------------------------------------------


def pencil_rank(p: SkewPencil) -> int:
    """Rank of A + lambda*B over Q(lambda); always even."""
    r = fraction_free_rank(p.lambda_matrix())
    if r % 2 != 0:
        raise InternalConsistencyError("skew pencil with odd rank")
    return r


def is_regular_value(p: SkewPencil, value) -> bool:
    """Whether rank(A + value*B) attains the pencil rank; INFINITY tests B."""
    r = pencil_rank(p)
    m = p.b if value is INFINITY else p.member(value)
    return rank(m) == r


class RegularValueSampler:
    """Draws distinct regular rational values for a pencil.

    Candidates are integers from [-10n, 10n]; a candidate is rejected if
    the member rank drops.  At most 50 attempts per draw (there are at
    most n/2 degenerate values, so honest inputs cannot exhaust this).
    """

    def __init__(self, p: SkewPencil, rng: random.Random, r: int | None = None):
        self.p = p
        self.rng = rng
        self.r = pencil_rank(p) if r is None else r
        self.used: set[Fraction] = set()

    def draw(self) -> Fraction:
        bound = max(10 * self.p.n, 10)
        for _ in range(50):
            cand = Fraction(self.rng.randint(-bound, bound))
            if cand in self.used:
                continue
            if rank(self.p.member(cand)) == self.r:
                self.used.add(cand)
                return cand
        raise InternalConsistencyError("failed to sample a regular value in 50 draws")


# -- characteristic polynomial -------------------------------------------


def characteristic_polynomial(p: SkewPencil) -> CharPoly:
    """Monic gcd of the Pfaffians of all principal r x r minors of
    A - lambda*B, where r is the pencil rank.

    Requires B regular in the pencil (rank(B) = pencil rank), i.e. all
    eigenvalues finite; raises InfiniteEigenvalueError otherwise, in
    which case the caller must reparametrize (jk_invariants does).
    """
    r = pencil_rank(p)
    if rank(p.b) < r:
        raise InfiniteEigenvalueError(
            f"rank(B) = {rank(p.b)} < pencil rank {r}: infinite eigenvalues present"
        )
    return CharPoly.from_poly(_pfaffian_gcd(p, r))


def _pfaffian_gcd(p: SkewPencil, r: int) -> UniPoly:
    if r == 0:
        return UniPoly.one()
    m = p.lambda_matrix(sign=-1)
    cache = PfaffianCache(m, UniPoly.zero(), UniPoly.one())
    g = UniPoly.zero()
    for subset in combinations(range(p.n), r):
        pf = cache.pfaffian(subset)
        if pf.is_zero:
            continue
        g = poly_gcd(g, pf)
        if g.degree == 0:
            break  # gcd can only shrink; a unit gcd is final
    if g.is_zero:
        raise InternalConsistencyError(
            "all principal Pfaffians vanished at the claimed pencil rank"
        )
    return g.monic()


def recursion_charpoly_check(p: SkewPencil) -> bool:
    """Whether det(B^-1 A - lambda*I) equals +/- p_L(lambda)^2."""
    n = p.n
    if rank(p.b) < n:
        raise SingularMatrixError("recursion operator needs an invertible B")
    recursion = mat_mul(mat_inverse(p.b), p.a)
    lhs = charpoly_rational(recursion)  # det(lambda*I - P); n is even
    rhs = characteristic_polynomial(p).poly
    square = rhs * rhs
    return lhs == square or lhs == -square


# -- core subspace --------------------------------------------------------


def core_subspace(p: SkewPencil, seed: int = 0) -> Subspace:
    """Sum of kernels of regular members, stabilized twice.

    Adds Ker(A + mu*B) at fresh random regular values mu until the
    dimension is unchanged for two consecutive steps.
    """
    core, _ = _core_with_kernels(p, random.Random(seed))
    return core


def _core_with_kernels(
    p: SkewPencil, rng: random.Random, extra: int = 0
) -> tuple[Subspace, list[tuple[Fraction, Subspace]]]:
    sampler = RegularValueSampler(p, rng)
    core = Subspace.zero(p.n)
    kernels: list[tuple[Fraction, Subspace]] = []
    stable = 0
    while stable < 2 + extra:
        mu = sampler.draw()
        ker = kernel_basis(p.member(mu))
        kernels.append((mu, ker))
        grown = subspace_sum(core, ker)
        stable = stable + 1 if grown.dim == core.dim else 0
        core = grown
    return core, kernels


# -- Jordan-Kronecker invariants ------------------------------------------


def _mobius_pullback(desc: UniPoly, mu0: Fraction):
    """Map an eigenvalue descriptor of the pencil (A, A + mu0*B) back to
    the (A, B) parameter.

    A root t of desc corresponds to the original eigenvalue
    mu0*t / (1 - t); the descriptor lambda - 1 corresponds to INFINITY.
    """
    d = desc.degree
    one = UniPoly.one()
    base = UniPoly((mu0, Fraction(1)))  # mu0 + lambda
    if desc == UniPoly.linear(Fraction(1)):
        return INFINITY
    acc = UniPoly.zero()
    lam_pow = one
    for i in range(d + 1):
        c = desc.coefficient(i)
        if c != 0:
            acc = acc + (lam_pow * base ** (d - i)).scale(c)
        lam_pow = lam_pow * UniPoly.x()
    if acc.degree != d:
        raise InternalConsistencyError("Moebius pullback dropped degree unexpectedly")
    return acc.monic()


def _jordan_groups_from_smith(
    lam_matrix: list[list[UniPoly]], expected_rank: int
) -> list[tuple[UniPoly, tuple[int, ...]]]:
    from .smith import smith_normal_form

    factors = smith_normal_form(lam_matrix)
    nonzero = [f for f in factors if not f.is_zero]
    if len(nonzero) != expected_rank:
        raise InternalConsistencyError(
            f"Smith form rank {len(nonzero)} != pencil rank {expected_rank}"
        )
    parts: list[UniPoly] = []
    for f in nonzero:
        if f.degree >= 1:
            parts.extend(part for part, _ in squarefree_decompose(f))
    refined: list[UniPoly] = []
    for q in coprime_refine(parts):
        refined.extend(split_rational_linear_factors(q))
    refined = sorted(set(refined), key=UniPoly.sort_key)
    groups = []
    for q in refined:
        exponents = []
        for f in nonzero:
            e = 0
            g = f
            while g.degree >= q.degree and (g % q).is_zero:
                g = g.exact_div(q)
                e += 1
            if e:
                exponents.append(e)
        counts: dict[int, int] = {}
        for e in exponents:
            counts[e] = counts.get(e, 0) + 1
        half_sizes = []
        for value, cnt in sorted(counts.items()):
            if cnt % 2 != 0:
                raise PairingViolationError(
                    f"elementary divisor {q}^{value} occurs {cnt} times (odd)"
                )
            half_sizes.extend([value] * (cnt // 2))
        groups.append((q, tuple(half_sizes)))
    return groups


def jk_invariants(p: SkewPencil, seed: int = 0) -> JKInvariants:
    """Full block invariants: Jordan data from the Smith normal form of
    A - lambda*B (reparametrized when B is irregular), Kronecker
    parameters from the kernel-sum growth sequence at regular values."""
    n = p.n
    r = pencil_rank(p)
    corank = n - r
    rng = random.Random(seed)
    sampler = RegularValueSampler(p, rng, r=r)

    # Kronecker parameters: s_t - s_{t-1} = #{i : k_i >= t}.
    increments: list[int] = []
    core = Subspace.zero(n)
    if corank > 0:
        while True:
            mu = sampler.draw()
            grown = subspace_sum(core, kernel_basis(p.member(mu)))
            c = grown.dim - core.dim
            core = grown
            if c == 0:
                break
            increments.append(c)
    if any(b > a for a, b in zip(increments, increments[1:])):
        raise InternalConsistencyError("kernel growth sequence not monotone")
    if increments and increments[0] != corank:
        raise InternalConsistencyError("first kernel increment != corank")
    kronecker: list[int] = []
    for t, c in enumerate(increments):
        following = increments[t + 1] if t + 1 < len(increments) else 0
        kronecker.extend([t + 1] * (c - following))

    # Jordan data, reparametrizing into a regular-B pencil if needed.
    mu0: Optional[Fraction] = None
    if rank(p.b) == r:
        groups = _jordan_groups_from_smith(p.lambda_matrix(sign=-1), r)
    else:
        mu0 = sampler.draw()
        regularized = SkewPencil(p.a, p.member(mu0))
        raw = _jordan_groups_from_smith(regularized.lambda_matrix(sign=-1), r)
        groups = [(_mobius_pullback(q, mu0), sizes) for q, sizes in raw]

    invariants = JKInvariants.from_blocks(kronecker, groups, reparametrization=mu0)
    if invariants.n != n:
        raise InternalConsistencyError(
            f"block dimensions sum to {invariants.n}, expected {n}"
        )
    if invariants.core_dim != core.dim:
        raise InternalConsistencyError(
            f"Kronecker core dimension {invariants.core_dim} != kernel-sum dimension {core.dim}"
        )
    return invariants


# -- canonical pencils and congruence -------------------------------------


def _embed(block_a, block_b, target_a, target_b, offset):
    for i, row in enumerate(block_a):
        for j, v in enumerate(row):
            target_a[offset + i][offset + j] = Fraction(v)
    for i, row in enumerate(block_b):
        for j, v in enumerate(row):
            target_b[offset + i][offset + j] = Fraction(v)


def _jordan_finite_block(lam0: Fraction, half: int):
    p = half
    a = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
    b = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
    for i in range(p):
        a[i][p + i] = lam0
        a[p + i][i] = -lam0
        b[i][p + i] = Fraction(1)
        b[p + i][i] = Fraction(-1)
        if i + 1 < p:
            a[i][p + i + 1] = Fraction(1)
            a[p + i + 1][i] = Fraction(-1)
    return a, b


def _jordan_infinite_block(half: int):
    p = half
    a = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
    b = [[Fraction(0)] * (2 * p) for _ in range(2 * p)]
    for i in range(p):
        a[i][p + i] = Fraction(1)
        a[p + i][i] = Fraction(-1)
        if i + 1 < p:
            b[i][p + i + 1] = Fraction(1)
            b[p + i + 1][i] = Fraction(-1)
    return a, b


def _kronecker_block(k: int):
    size = 2 * k - 1
    a = [[Fraction(0)] * size for _ in range(size)]
    b = [[Fraction(0)] * size for _ in range(size)]
    for i in range(k - 1):
        a[i][k - 1 + i] = Fraction(1)
        a[k - 1 + i][i] = Fraction(-1)
        b[i][k + i] = Fraction(1)
        b[k + i][i] = Fraction(-1)
    return a, b


def canonical_pencil(spec: JKInvariants) -> SkewPencil:
    """Block-diagonal pencil realizing the given invariants.

    Only rational (degree-1) and INFINITY eigenvalue descriptors are
    accepted; this is a builder limitation, not a structural one.
    """
    blocks = []
    for k in spec.kronecker:
        blocks.append(_kronecker_block(k))
    for group in spec.jordan:
        if group.descriptor is INFINITY:
            for half in group.half_sizes:
                blocks.append(_jordan_infinite_block(half))
            continue
        if group.descriptor.degree != 1:
            raise ValidationError(
                "canonical_pencil needs rational (degree-1) eigenvalue descriptors"
            )
        lam0 = -group.descriptor.coefficient(0)
        for half in group.half_sizes:
            blocks.append(_jordan_finite_block(lam0, half))
    n = sum(len(block_a) for block_a, _ in blocks)
    a = [[Fraction(0)] * n for _ in range(n)]
    b = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for block_a, block_b in blocks:
        _embed(block_a, block_b, a, b, offset)
        offset += len(block_a)
    return SkewPencil(a, b)


def congruence_transform(p: SkewPencil, transform: Matrix) -> SkewPencil:
    """(P^T A P, P^T B P); jk_invariants are unchanged."""
    transform = matrix(transform)
    if len(transform) != p.n or rank(transform) != p.n:
        raise SingularMatrixError("congruence transform must be invertible n x n")
    return SkewPencil(congruence(transform, p.a), congruence(transform, p.b))


def random_unimodular(n: int, rng: random.Random, shears: int | None = None) -> Matrix:
    """Random integer matrix with determinant +/-1 (permutation + shears)."""
    perm = list(range(n))
    rng.shuffle(perm)
    m = [[Fraction(1 if perm[i] == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(2 * n if shears is None else shears):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for col in range(n):
            m[i][col] += c * m[j][col]
    return tuple(tuple(row) for row in m)


# -- isotropy certificate --------------------------------------------------


@dataclass(frozen=True)
class IsotropyCertificate:
    """Exact pairing check of core + sampled kernels under both forms."""

    family_size: int
    pairings: int
    passed: bool
    violation: Optional[tuple[int, int, str]] = None


def isotropy_certificate(p: SkewPencil, extra: int = 2, seed: int = 0) -> IsotropyCertificate:
    """Checks that K + sum of sampled regular kernels is isotropic for A
    and for B: every pairing u^T A v and u^T B v is exactly zero."""
    _, kernels = _core_with_kernels(p, random.Random(seed), extra=extra)
    family: list = []
    for _, ker in kernels:
        family.extend(ker.basis)
    pairings = 0
    for i in range(len(family)):
        for j in range(i, len(family)):
            for name, form in (("A", p.a), ("B", p.b)):
                pairings += 1
                if bilinear(family[i], form, family[j]) != 0:
                    return IsotropyCertificate(len(family), pairings, False, (i, j, name))
    return IsotropyCertificate(len(family), pairings, True)
