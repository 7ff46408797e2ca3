"""Lie-algebra front end: Lie-Poisson pencils on the dual space.

A Lie algebra is given by structure constants c_ij^k (stored for i < j,
antisymmetry implied).  The Lie-Poisson matrix A(x) = (sum_k c_ij^k x_k)
together with a frozen-argument matrix A(a) forms a compatible Poisson
pencil; its generic Jordan-Kronecker invariants, the fundamental
semi-invariant, and the completeness verdicts for the argument-shift
family and its extension are computed here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import InternalConsistencyError, ValidationError
from .linalg import Matrix, Vector, fraction_free_rank, rank, vector
from .multipoly import MultiPoly, multi_gcd_list, normalize_content
from .pencil import JKInvariants, SkewPencil, jk_invariants, pencil_rank
from .poisson import (
    COMPLETE,
    INCOMPLETE,
    INDETERMINATE,
    CompletenessReport,
    PolyPoissonPencil,
    compatibility_check,
    completeness_check,
    jacobi_check,
    sample_generic_point,
)
from .unipoly import _as_fraction


class LieAlgebra:
    """Structure constants of a finite-dimensional Lie algebra over Q.

    brackets maps (i, j) with 0 <= i < j < dim to {k: c} meaning
    [e_i, e_j] = sum_k c * e_k.  Instances are immutable by convention.
    """

    def __init__(self, dim: int, brackets: dict, name: str = ""):
        if dim < 1:
            raise ValidationError("dimension must be positive")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise ValidationError(f"bracket indices ({i}, {j}) out of range")
            row = {}
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise ValidationError(f"target index {k} out of range")
                c = _as_fraction(c)
                if c != 0:
                    row[k] = c
            if row:
                table[(i, j)] = row
        self.dim = dim
        self.name = name
        self.table = table

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Structure constant with antisymmetry in (i, j)."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.table.get((i, j), {}).get(k, Fraction(0))
        return -self.table.get((j, i), {}).get(k, Fraction(0))

    def poisson_matrix(self) -> list[list[MultiPoly]]:
        """The Lie-Poisson matrix A(x) with entries sum_k c_ij^k x_k."""
        n = self.dim
        rows = [[MultiPoly.zero(n) for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in self.table.items():
            entry = MultiPoly(n, {tuple(1 if t == k else 0 for t in range(n)): c
                                  for k, c in coeffs.items()})
            rows[i][j] = entry
            rows[j][i] = -entry
        return rows

    def frozen_matrix(self, a: Sequence) -> Matrix:
        """The frozen-argument matrix A(a) at a point of the dual space."""
        a = vector(a)
        if len(a) != self.dim:
            raise ValidationError("frozen point has wrong length")
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), coeffs in self.table.items():
            val = sum(c * a[k] for k, c in coeffs.items())
            rows[i][j] = val
            rows[j][i] = -val
        return tuple(tuple(r) for r in rows)

    def generic_rank(self) -> int:
        return fraction_free_rank(self.poisson_matrix())

    def __repr__(self):
        label = self.name or f"dim {self.dim}"
        return f"LieAlgebra({label})"


class LieValidation(NamedTuple):
    ok: bool
    witness: Optional[tuple[int, int, int, int]]

    def __bool__(self) -> bool:
        return self.ok


def validate_lie_algebra(g: LieAlgebra) -> LieValidation:
    """Exact Jacobi identity over all index quadruples, cross-checked
    against jacobi_check on the Lie-Poisson matrix."""
    witness = None
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                for l in range(g.dim):
                    total = Fraction(0)
                    for m in range(g.dim):
                        total += g.c(i, j, m) * g.c(m, k, l)
                        total += g.c(j, k, m) * g.c(m, i, l)
                        total += g.c(k, i, m) * g.c(m, j, l)
                    if total != 0 and witness is None:
                        witness = (i + 1, j + 1, k + 1, l + 1)
    linear_ok = bool(jacobi_check(g.poisson_matrix()))
    if linear_ok != (witness is None):
        raise InternalConsistencyError(
            "structure-constant Jacobi check and jacobi_check disagree"
        )
    return LieValidation(witness is None, witness)


@dataclass(frozen=True)
class LiePencilSpec:
    """Lie-Poisson plus frozen-argument pencil on the dual space."""

    algebra: LieAlgebra
    frozen_point: Vector
    pencil: PolyPoissonPencil
    frozen_regular: bool
    warnings: tuple[str, ...]


def lie_pencil(g: LieAlgebra, a: Sequence) -> LiePencilSpec:
    """Builds the pencil (A(x), A(a)); compatibility is asserted.

    An irregular frozen point (rank A(a) below the generic rank) is
    recorded as a warning: the analysis may proceed but the completeness
    theorems do not apply there.
    """
    a = vector(a)
    a_rows = g.poisson_matrix()
    n = g.dim
    frozen = g.frozen_matrix(a)
    b_rows = [[MultiPoly.constant(n, frozen[i][j]) for j in range(n)] for i in range(n)]
    pencil = PolyPoissonPencil(a_rows, b_rows)
    if not compatibility_check(pencil):
        raise InternalConsistencyError(
            "Lie-Poisson pencil failed the compatibility check"
        )
    generic = g.generic_rank()
    regular = rank(frozen) == generic
    warnings = ()
    if not regular:
        warnings = (
            f"IRREGULAR_FROZEN_POINT: rank A(a) = {rank(frozen)} < generic rank {generic}",
        )
    return LiePencilSpec(g, a, pencil, regular, warnings)


@dataclass(frozen=True)
class GenericJKReport:
    """Generic Jordan-Kronecker invariants of a Lie algebra by sampling."""

    samples: int
    seed: int
    max_rank: int
    stable: bool
    representative: JKInvariants
    shape: tuple
    sample_points: tuple[tuple[Vector, Vector], ...]

    @property
    def has_jordan_blocks(self) -> bool:
        return bool(self.representative.jordan)


def jk_invariants_generic(g: LieAlgebra, samples: int = 7, seed: int = 0) -> GenericJKReport:
    """Invariants of the constant pencil (A(x), A(a)) at random rational
    pairs, keeping those achieved at maximal pencil rank.

    Stability means all max-rank samples agree on the eigenvalue-free
    shape (Kronecker multiset plus degree-expanded half-size multisets);
    an unstable report is not fatal, the caller may raise `samples`.
    """
    rng = random.Random(seed)
    results = []
    for _ in range(samples):
        x0 = tuple(Fraction(rng.randint(-9, 9)) for _ in range(g.dim))
        a0 = tuple(Fraction(rng.randint(-9, 9)) for _ in range(g.dim))
        sp = SkewPencil(g.frozen_matrix(x0), g.frozen_matrix(a0))
        r = pencil_rank(sp)
        inv = jk_invariants(sp, seed=rng.randrange(1 << 30))
        results.append((r, inv, (x0, a0)))
    max_rank = max(r for r, _, _ in results)
    top = [(inv, pt) for r, inv, pt in results if r == max_rank]
    shapes = {inv.shape() for inv, _ in top}
    return GenericJKReport(
        samples=samples,
        seed=seed,
        max_rank=max_rank,
        stable=len(shapes) == 1,
        representative=top[0][0],
        shape=top[0][0].shape(),
        sample_points=tuple(pt for _, pt in top),
    )


def fundamental_semiinvariant(g: LieAlgebra, seed: int = 0) -> MultiPoly:
    """Gcd of the Pfaffians of all principal r x r minors of A(x).

    Normalized to content 1 with positive lexicographically-leading
    coefficient.  The defining identity is asserted at three random
    pairs with regular a: with eigenvalues read from A - lambda*B, the
    pencil characteristic polynomial at (x, a) equals the monic
    normalization of p_g restricted to the line x - lambda*a.
    """
    from itertools import combinations

    from .linalg import PfaffianCache

    n = g.dim
    r = g.generic_rank()
    if r == 0:
        result = MultiPoly.one(n)
    else:
        rows = g.poisson_matrix()
        cache = PfaffianCache(rows, MultiPoly.zero(n), MultiPoly.one(n))
        pfaffians = []
        for subset in combinations(range(n), r):
            pf = cache.pfaffian(subset)
            if not pf.is_zero:
                pfaffians.append(pf)
        if not pfaffians:
            raise InternalConsistencyError(
                "all principal Pfaffians vanished at the generic rank"
            )
        result = normalize_content(multi_gcd_list(pfaffians, n))
    _assert_semiinvariant_identity(g, result, r, seed)
    return result


def _assert_semiinvariant_identity(g: LieAlgebra, p_g: MultiPoly, r: int, seed: int):
    from .pencil import characteristic_polynomial

    rng = random.Random(seed + 7)
    done = 0
    attempts = 0
    while done < 3:
        attempts += 1
        if attempts > 60:
            raise InternalConsistencyError(
                "could not find regular sample pairs for the semi-invariant identity"
            )
        x0 = tuple(Fraction(rng.randint(-9, 9)) for _ in range(g.dim))
        a0 = tuple(Fraction(rng.randint(-9, 9)) for _ in range(g.dim))
        frozen = g.frozen_matrix(a0)
        if rank(frozen) != r:
            continue
        sp = SkewPencil(g.frozen_matrix(x0), frozen)
        if pencil_rank(sp) != r:
            continue
        restricted = p_g.eval_on_line(x0, tuple(-v for v in a0))
        char = characteristic_polynomial(sp)
        if restricted.monic() != char.poly:
            raise InternalConsistencyError(
                f"semi-invariant identity fails at x={x0}, a={a0}"
            )
        done += 1


def fa_completeness(
    g: LieAlgebra,
    report: GenericJKReport,
    semiinvariant: Optional[MultiPoly] = None,
) -> str:
    """Argument-shift family verdict: COMPLETE iff the generic invariants
    contain no Jordan blocks (equivalently the semi-invariant is constant)."""
    if not report.stable:
        return INDETERMINATE
    no_jordan = not report.has_jordan_blocks
    if semiinvariant is not None and semiinvariant.is_constant != no_jordan:
        raise InternalConsistencyError(
            "Kronecker-type test disagrees with the semi-invariant degree"
        )
    return COMPLETE if no_jordan else INCOMPLETE


@dataclass(frozen=True)
class FTildeReport:
    """Aggregated extended-family completeness verdict over sample points."""

    verdict: str
    frozen_point: Vector
    frozen_regular: bool
    points: tuple[CompletenessReport, ...]
    witnesses: tuple[str, ...]
    warnings: tuple[str, ...]
    pencil_spec: Optional[LiePencilSpec] = None


def ftilde_completeness(
    g: LieAlgebra,
    a: Sequence,
    points: int = 3,
    seed: int = 0,
    explicit_points: Sequence[Sequence] | None = None,
) -> FTildeReport:
    """Extended family verdict via the pointwise completeness criterion.

    Runs completeness_check at `points` sampled generic points of the
    pencil (A(x), A(a)), or at the explicitly supplied points; by
    analyticity all generic points must agree, so disagreement is
    reported as UNSTABLE_SAMPLES and the verdict is downgraded.  An
    irregular frozen point downgrades to INDETERMINATE.
    """
    spec = lie_pencil(g, a)
    if not spec.frozen_regular:
        return FTildeReport(
            verdict=INDETERMINATE,
            frozen_point=spec.frozen_point,
            frozen_regular=False,
            points=(),
            witnesses=(),
            warnings=spec.warnings,
            pencil_spec=spec,
        )
    if explicit_points is not None:
        sample_at = [vector(p) for p in explicit_points]
    else:
        sample_at = [
            sample_generic_point(spec.pencil, seed=seed + 31 * i) for i in range(points)
        ]
    reports = []
    for x0 in sample_at:
        reports.append(completeness_check(spec.pencil, x0, seed=seed))
    verdicts = {r.verdict for r in reports}
    warnings = spec.warnings
    if len(verdicts) == 1:
        verdict = reports[0].verdict
    else:
        verdict = INDETERMINATE
        warnings = warnings + ("UNSTABLE_SAMPLES: pointwise verdicts disagree",)
    witnesses = []
    for r in reports:
        for w in r.witnesses:
            if w not in witnesses:
                witnesses.append(w)
    return FTildeReport(
        verdict=verdict,
        frozen_point=spec.frozen_point,
        frozen_regular=True,
        points=tuple(reports),
        witnesses=tuple(witnesses),
        warnings=warnings,
        pencil_spec=spec,
    )


# -- catalog ----------------------------------------------------------------


def abelian(n: int, name: str = "") -> LieAlgebra:
    return LieAlgebra(n, {}, name or f"abelian{n}")


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}}, "heisenberg3")


def aff1() -> LieAlgebra:
    return LieAlgebra(2, {(0, 1): {1: 1}}, "aff1")


def so3() -> LieAlgebra:
    return LieAlgebra(
        3,
        {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 1}},
        "so3",
    )


def sl2() -> LieAlgebra:
    # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra(
        3,
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
        "sl2",
    )


def e3() -> LieAlgebra:
    """Euclidean algebra so(3) acting on R^3: rotations first, then
    translations; [e_i, f_j] = eps_ijk f_k, [f_i, f_j] = 0."""
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
           (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1}
    brackets: dict = {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 1}}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                s = eps.get((i, j, k))
                if s:
                    brackets.setdefault((i, 3 + j), {})[3 + k] = s
    return LieAlgebra(6, brackets, "e3")


def so_n(n: int, name: str = "") -> LieAlgebra:
    """so(n) in the basis M_ab = E_ab - E_ba, a < b, lexicographic order."""
    gens = [(a, b) for a in range(n) for b in range(a + 1, n)]
    index = {ab: t for t, ab in enumerate(gens)}

    def gen_coeff(x: int, y: int) -> tuple[int, int] | None:
        # M_xy as +/- a basis generator; None for x == y
        if x == y:
            return None
        return (index[(x, y)], 1) if x < y else (index[(y, x)], -1)

    brackets: dict = {}
    for t1, (a, b) in enumerate(gens):
        for t2, (c, d) in enumerate(gens):
            if t1 >= t2:
                continue
            coeffs: dict[int, Fraction] = {}
            for delta, pair in (
                (int(b == c), (a, d)),
                (int(a == d), (b, c)),
                (-int(a == c), (b, d)),
                (-int(b == d), (a, c)),
            ):
                if delta == 0:
                    continue
                gc = gen_coeff(*pair)
                if gc is None:
                    continue
                k, sign = gc
                coeffs[k] = coeffs.get(k, Fraction(0)) + delta * sign
            coeffs = {k: v for k, v in coeffs.items() if v != 0}
            if coeffs:
                brackets[(t1, t2)] = coeffs
    return LieAlgebra(len(gens), brackets, name or f"so{n}")


def direct_sum(g1: LieAlgebra, g2: LieAlgebra, name: str = "") -> LieAlgebra:
    brackets: dict = {}
    for (i, j), coeffs in g1.table.items():
        brackets[(i, j)] = dict(coeffs)
    off = g1.dim
    for (i, j), coeffs in g2.table.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in coeffs.items()}
    return LieAlgebra(g1.dim + g2.dim, brackets, name or f"{g1.name}+{g2.name}")


def catalog() -> list[LieAlgebra]:
    """Named regression fixtures; every entry passes validate_lie_algebra."""
    entries = [
        abelian(3),
        abelian(4),
        heisenberg3(),
        aff1(),
        direct_sum(aff1(), abelian(2), "aff1_abelian2"),
        so3(),
        sl2(),
        e3(),
        so_n(4),
    ]
    for g in entries:
        if not validate_lie_algebra(g):
            raise InternalConsistencyError(f"catalog entry {g.name} fails Jacobi")
    return entries


def catalog_names() -> list[str]:
    return [g.name for g in catalog()]


def get_algebra(name: str) -> LieAlgebra:
    for g in catalog():
        if g.name == name:
            return g
    raise ValidationError(f"unknown catalog algebra: {name}")
