"""Smith normal form of matrices over Q[x].

Q[x] is Euclidean, so the classical minimal-degree-pivot reduction
applies.  Only the invariant factors are produced (no transformation
matrices); nonzero factors are returned monic, and the trailing zero
factors of a rank-deficient matrix are included so that the product of
the first k factors matches the gcd of the k x k minors.
"""

from __future__ import annotations

from .errors import ValidationError
from .unipoly import UniPoly


def _min_degree_entry(work, t):
    best = None
    for i in range(t, len(work)):
        for j in range(t, len(work[0])):
            e = work[i][j]
            if e.is_zero:
                continue
            if best is None or e.degree < best[2]:
                best = (i, j, e.degree)
    return best


def smith_normal_form(m) -> list[UniPoly]:
    """Invariant factors d_1 | d_2 | ... of a matrix of UniPoly."""
    work = [[e if isinstance(e, UniPoly) else UniPoly.constant(e) for e in row] for row in m]
    if not work or any(len(r) != len(work[0]) for r in work):
        raise ValidationError("smith_normal_form needs a rectangular nonempty matrix")
    nrows, ncols = len(work), len(work[0])
    size = min(nrows, ncols)
    factors: list[UniPoly] = []
    t = 0
    while t < size:
        found = _min_degree_entry(work, t)
        if found is None:
            break
        while True:
            i, j, _ = _min_degree_entry(work, t)
            if i != t:
                work[t], work[i] = work[i], work[t]
            if j != t:
                for row in work:
                    row[t], row[j] = row[j], row[t]
            pivot = work[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if work[i][t].is_zero:
                    continue
                q = work[i][t] // pivot
                if not q.is_zero:
                    work[i] = [a - q * b for a, b in zip(work[i], work[t])]
                if not work[i][t].is_zero:
                    dirty = True  # remainder of smaller degree appeared
            if dirty:
                continue
            for j in range(t + 1, ncols):
                if work[t][j].is_zero:
                    continue
                q = work[t][j] // pivot
                if not q.is_zero:
                    for row in work:
                        row[j] = row[j] - q * row[t]
                if not work[t][j].is_zero:
                    dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if not (work[i][j] % pivot).is_zero:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            work[t] = [a + b for a, b in zip(work[t], work[offender])]
        factors.append(work[t][t].monic())
        t += 1
    while len(factors) < size:
        factors.append(UniPoly.zero())
    return factors
