"""Command-line interface: pencil analyze, lie analyze, catalog.

Input documents are JSON with all rationals as strings ("3/4") or
integers; reports are emitted as human-readable text or as a stable
JSON schema (schema_version 1) in which rationals are always strings.
Identical input and identical --seed produce byte-identical JSON.

Exit codes: 0 success, 2 validation error, 3 internal-consistency
failure.  Diagnostics go to stderr; the report alone goes to stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    InfiniteEigenvalueError,
    InternalConsistencyError,
    JKPencilError,
    NonGenericPointError,
    PairingViolationError,
    ValidationError,
)
from .liealg import (
    LieAlgebra,
    catalog,
    fa_completeness,
    ftilde_completeness,
    fundamental_semiinvariant,
    jk_invariants_generic,
    validate_lie_algebra,
)
from .linalg import rank
from .pencil import (
    INFINITY,
    SkewPencil,
    characteristic_polynomial,
    core_subspace,
    isotropy_certificate,
    jk_invariants,
    pencil_rank,
)
from .poisson import eigenvalue_lemma_check, involution_check
from .unipoly import UniPoly

DEFAULT_SEED = 1729


# -- parsing ----------------------------------------------------------------


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{where}: boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{where}: bad rational {value!r} ({exc})") from exc
    raise ValidationError(f"{where}: expected integer or rational string, got {value!r}")


def _parse_matrix(doc, key: str, n: int):
    raw = doc.get(key)
    if not isinstance(raw, list) or len(raw) != n:
        raise ValidationError(f"{key}: expected {n} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise ValidationError(f"{key}[{i}]: expected {n} entries")
        rows.append([_parse_rational(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)])
    return rows


def load_pencil_document(doc) -> SkewPencil:
    if not isinstance(doc, dict):
        raise ValidationError("document root must be a JSON object")
    n = doc.get("dimension")
    if not isinstance(n, int) or n < 1:
        raise ValidationError("dimension: expected a positive integer")
    a = _parse_matrix(doc, "A", n)
    b = _parse_matrix(doc, "B", n)
    return SkewPencil(a, b)


def load_lie_document(doc) -> tuple[LieAlgebra, list | None, list | None]:
    """Returns (algebra, frozen point or None, evaluation points or None)."""
    if not isinstance(doc, dict):
        raise ValidationError("document root must be a JSON object")
    n = doc.get("dimension")
    if not isinstance(n, int) or n < 1:
        raise ValidationError("dimension: expected a positive integer")
    brackets_raw = doc.get("brackets", [])
    if not isinstance(brackets_raw, list):
        raise ValidationError("brackets: expected a list")
    table: dict = {}
    for t, entry in enumerate(brackets_raw):
        where = f"brackets[{t}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: expected an object")
        i, j = entry.get("i"), entry.get("j")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise ValidationError(f"{where}: need 1-based indices with i < j <= {n}")
        coeffs_raw = entry.get("coeffs", {})
        if not isinstance(coeffs_raw, dict):
            raise ValidationError(f"{where}.coeffs: expected an object")
        coeffs = {}
        for k_str, c in coeffs_raw.items():
            try:
                k = int(k_str)
            except ValueError:
                raise ValidationError(f"{where}.coeffs: bad index {k_str!r}") from None
            if not 1 <= k <= n:
                raise ValidationError(f"{where}.coeffs: index {k} out of range")
            coeffs[k - 1] = _parse_rational(c, f"{where}.coeffs[{k_str}]")
        if (i - 1, j - 1) in table:
            raise ValidationError(f"{where}: duplicate bracket ({i}, {j})")
        table[(i - 1, j - 1)] = coeffs
    g = LieAlgebra(n, table, name=str(doc.get("name", "")))
    a = None
    if "a" in doc:
        raw = doc["a"]
        if not isinstance(raw, list) or len(raw) != n:
            raise ValidationError(f"a: expected {n} entries")
        a = [_parse_rational(v, f"a[{k}]") for k, v in enumerate(raw)]
    points = None
    if "points" in doc:
        raw = doc["points"]
        if not isinstance(raw, list):
            raise ValidationError("points: expected a list of points")
        points = []
        for t, p in enumerate(raw):
            if not isinstance(p, list) or len(p) != n:
                raise ValidationError(f"points[{t}]: expected {n} entries")
            points.append([_parse_rational(v, f"points[{t}][{k}]") for k, v in enumerate(p)])
    return g, a, points


def lie_document(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(g.table):
        coeffs = {str(k + 1): str(c) for k, c in sorted(g.table[(i, j)].items())}
        brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return {"dimension": g.dim, "name": g.name, "brackets": brackets}


# -- serialization helpers ---------------------------------------------------


def _frac(x: Fraction) -> str:
    return str(x)


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _poly_str(p: UniPoly) -> str:
    return p.to_string("lambda")


def _charpoly_dict(cp) -> dict:
    return {
        "status": "ok",
        "polynomial": _poly_str(cp.poly),
        "degree": cp.degree,
        "coefficients": [str(c) for c in cp.poly.coeffs],
        "squarefree_parts": [
            {"factor": _poly_str(f), "multiplicity": m} for f, m in cp.squarefree_parts
        ],
        "rational_roots": [
            {"root": str(r), "multiplicity": m} for r, m in cp.rational_roots
        ],
    }


def _invariants_dict(inv) -> dict:
    jordan = []
    for grp in inv.jordan:
        descriptor = "INFINITY" if grp.descriptor is INFINITY else _poly_str(grp.descriptor)
        jordan.append(
            {
                "descriptor": descriptor,
                "degree": grp.degree,
                "half_sizes": list(grp.half_sizes),
            }
        )
    return {
        "kronecker": list(inv.kronecker),
        "jordan": jordan,
        "rank": inv.rank,
        "corank": inv.corank,
        "core_dimension": inv.core_dim,
        "mantle_dimension": inv.mantle_dim,
        "reparametrization": (
            None if inv.reparametrization is None else str(inv.reparametrization)
        ),
    }


def _completeness_dict(rep) -> dict:
    return {
        "point": _vec(rep.point),
        "verdict": rep.verdict,
        "rank": rep.rank,
        "char_degree": rep.char_degree,
        "core_dimension": rep.core_dim,
        "extended_core_dimension": rep.extended_dim,
        "target_dimension": rep.target_dim,
        "jordan_blocks_2x2": rep.jordan_blocks_2x2,
        "distinct_eigenvalues": rep.distinct_eigenvalues,
        "factor_tests": [
            {
                "factor": _poly_str(t.factor),
                "multiplicity": t.multiplicity,
                "escapes_core": t.escapes,
            }
            for t in rep.factor_tests
        ],
        "witnesses": list(rep.witnesses),
    }


def _digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


# -- pencil analyze ----------------------------------------------------------


def cmd_pencil_analyze(path: str, seed: int) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    doc = json.loads(raw.decode("utf-8"))
    pencil = load_pencil_document(doc)
    r = pencil_rank(pencil)
    inv = jk_invariants(pencil, seed=seed)
    core = core_subspace(pencil, seed=seed)
    cert = isotropy_certificate(pencil, seed=seed)
    if not cert.passed:
        raise InternalConsistencyError(f"isotropy certificate failed: {cert.violation}")
    try:
        char = _charpoly_dict(characteristic_polynomial(pencil))
    except InfiniteEigenvalueError as exc:
        char = {
            "status": "INFINITE_EIGENVALUE",
            "note": str(exc),
            "reparametrization": (
                None if inv.reparametrization is None else str(inv.reparametrization)
            ),
        }
    return {
        "schema_version": 1,
        "tool": "jkpencil",
        "version": __version__,
        "command": "pencil analyze",
        "input_digest": _digest(raw),
        "seed": seed,
        "dimension": pencil.n,
        "pencil_rank": r,
        "corank": pencil.n - r,
        "rank_b": rank(pencil.b),
        "conventions": {
            "eigenvalues": "roots of the characteristic polynomial of A - lambda*B",
            "degenerate_members": "A + lambda*B drops rank exactly at lambda = -(root)",
        },
        "char_poly": char,
        "jk_invariants": _invariants_dict(inv),
        "core": {"dimension": core.dim, "basis": [_vec(v) for v in core.basis]},
        "isotropy_certificate": {
            "family_size": cert.family_size,
            "pairings": cert.pairings,
            "passed": cert.passed,
        },
    }


def _render_pencil_text(rep: dict) -> str:
    lines = [
        f"jkpencil {rep['version']} - pencil analysis",
        f"input digest: {rep['input_digest']}",
        f"seed: {rep['seed']}",
        "",
        f"dimension: {rep['dimension']}",
        f"pencil rank: {rep['pencil_rank']} (corank {rep['corank']}, rank B = {rep['rank_b']})",
        "conventions: eigenvalues are roots of char(A - lambda*B);",
        "             A + lambda*B drops rank at lambda = -(root)",
        "",
    ]
    char = rep["char_poly"]
    if char["status"] == "ok":
        lines.append(f"characteristic polynomial: {char['polynomial']} (degree {char['degree']})")
        for part in char["squarefree_parts"]:
            lines.append(f"  squarefree part: ({part['factor']})^{part['multiplicity']}")
        for root in char["rational_roots"]:
            lines.append(f"  rational root: {root['root']} (multiplicity {root['multiplicity']})")
    else:
        lines.append(f"characteristic polynomial: {char['status']} - {char['note']}")
        if char.get("reparametrization"):
            lines.append(f"  reparametrized with mu0 = {char['reparametrization']}")
    inv = rep["jk_invariants"]
    lines.append("")
    lines.append(f"kronecker parameters: {inv['kronecker'] or 'none'}")
    for grp in inv["jordan"]:
        lines.append(
            f"jordan group: descriptor {grp['descriptor']} (degree {grp['degree']}), "
            f"half-sizes {grp['half_sizes']}"
        )
    if not inv["jordan"]:
        lines.append("jordan groups: none")
    lines.append(
        f"rank {inv['rank']}, corank {inv['corank']}, core dim {inv['core_dimension']}, "
        f"mantle dim {inv['mantle_dimension']}"
    )
    if inv["reparametrization"] is not None:
        lines.append(f"invariants computed via reparametrization mu0 = {inv['reparametrization']}")
    core = rep["core"]
    lines.append("")
    lines.append(f"core subspace: dimension {core['dimension']}")
    for row in core["basis"]:
        lines.append("  [" + ", ".join(row) + "]")
    cert = rep["isotropy_certificate"]
    lines.append(
        f"isotropy certificate: {'PASS' if cert['passed'] else 'FAIL'} "
        f"({cert['pairings']} pairings over a family of {cert['family_size']})"
    )
    return "\n".join(lines) + "\n"


# -- lie analyze -------------------------------------------------------------


def cmd_lie_analyze(
    path: str, seed: int, samples: int, point_override: list | None
) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    doc = json.loads(raw.decode("utf-8"))
    g, frozen, doc_points = load_lie_document(doc)
    valid = validate_lie_algebra(g)
    if not valid:
        raise ValidationError(f"Jacobi identity fails at quadruple {valid.witness}")
    report = jk_invariants_generic(g, samples=samples, seed=seed)
    semi = fundamental_semiinvariant(g, seed=seed)
    fa = fa_completeness(g, report, semiinvariant=semi)

    sampled_a = False
    if frozen is None:
        rng = random.Random(seed + 5)
        generic = g.generic_rank()
        for _ in range(50):
            cand = [Fraction(rng.randint(-9, 9)) for _ in range(g.dim)]
            if rank(g.frozen_matrix(cand)) == generic:
                frozen = cand
                sampled_a = True
                break
        else:
            raise ValidationError("could not sample a regular frozen point")

    explicit = None
    if point_override is not None:
        explicit = [point_override]
    elif doc_points:
        explicit = doc_points
    ftilde = ftilde_completeness(
        g, frozen, points=2, seed=seed, explicit_points=explicit
    )

    involution_certs = []
    eigen_certs = []
    if ftilde.frozen_regular:
        spec = ftilde.pencil_spec
        for rep in ftilde.points:
            cert = involution_check(spec.pencil, rep.point, seed=seed)
            if not cert.passed:
                raise InternalConsistencyError(
                    f"involution certificate failed at {_vec(rep.point)}: {cert.violation}"
                )
            involution_certs.append(
                {
                    "point": _vec(cert.point),
                    "family_size": cert.family_size,
                    "kernel_samples": _vec(cert.kernel_samples),
                    "pairings": cert.pairings,
                    "passed": cert.passed,
                }
            )
            ev = eigenvalue_lemma_check(spec.pencil, rep.point, seed=seed)
            eigen_certs.append(
                {
                    "point": _vec(ev.point),
                    "status": ev.status,
                    "checks": [
                        {
                            "root": str(c.root),
                            "multiplicity": c.multiplicity,
                            "status": c.status,
                            "gradient": None if c.gradient is None else _vec(c.gradient),
                        }
                        for c in ev.checks
                    ],
                }
            )

    return {
        "schema_version": 1,
        "tool": "jkpencil",
        "version": __version__,
        "command": "lie analyze",
        "input_digest": _digest(raw),
        "seed": seed,
        "samples": samples,
        "algebra": {"name": g.name, "dimension": g.dim, "jacobi_valid": True},
        "conventions": {
            "eigenvalues": "roots of the characteristic polynomial of A - lambda*B",
            "degenerate_members": "A + lambda*B drops rank exactly at lambda = -(root)",
        },
        "frozen_point": {
            "a": _vec(frozen),
            "regular": ftilde.frozen_regular,
            "sampled": sampled_a,
        },
        "generic_invariants": {
            "samples": report.samples,
            "stable": report.stable,
            "max_rank": report.max_rank,
            "invariants": _invariants_dict(report.representative),
            "jordan_shape": [list(s) for s in report.shape[1]],
        },
        "fundamental_semiinvariant": {
            "polynomial": str(semi),
            "total_degree": max(semi.total_degree(), 0),
        },
        "fa": {"verdict": fa},
        "ftilde": {
            "verdict": ftilde.verdict,
            "witnesses": list(ftilde.witnesses),
            "warnings": list(ftilde.warnings),
            "points": [_completeness_dict(r) for r in ftilde.points],
        },
        "involution_certificates": involution_certs,
        "eigenvalue_lemma": eigen_certs,
    }


def _render_lie_text(rep: dict) -> str:
    alg = rep["algebra"]
    lines = [
        f"jkpencil {rep['version']} - Lie algebra analysis",
        f"input digest: {rep['input_digest']}",
        f"seed: {rep['seed']} (samples: {rep['samples']})",
        "",
        f"algebra: {alg['name'] or '(unnamed)'} (dimension {alg['dimension']}, Jacobi valid)",
    ]
    fp = rep["frozen_point"]
    origin = "sampled" if fp["sampled"] else "given"
    regularity = "regular" if fp["regular"] else "IRREGULAR"
    lines.append(f"frozen point a = [{', '.join(fp['a'])}] ({origin}, {regularity})")
    gi = rep["generic_invariants"]
    inv = gi["invariants"]
    lines.append("")
    lines.append(
        f"generic invariants ({gi['samples']} samples, "
        f"{'stable' if gi['stable'] else 'UNSTABLE'}, max rank {gi['max_rank']}):"
    )
    lines.append(f"  kronecker parameters: {inv['kronecker'] or 'none'}")
    if inv["jordan"]:
        lines.append(
            f"  jordan shape (half-size multisets per eigenvalue): {gi['jordan_shape']}"
        )
        for grp in inv["jordan"]:
            lines.append(
                f"  representative sample group: descriptor {grp['descriptor']} "
                f"(degree {grp['degree']}), half-sizes {grp['half_sizes']} "
                f"(eigenvalues move with the sample)"
            )
    else:
        lines.append("  jordan groups: none (Kronecker type)")
    lines.append(
        f"fundamental semi-invariant: {rep['fundamental_semiinvariant']['polynomial']}"
    )
    lines.append("")
    lines.append(f"F_a verdict: {rep['fa']['verdict']}")
    ft = rep["ftilde"]
    lines.append(f"F~_a verdict: {ft['verdict']}")
    for w in ft["warnings"]:
        lines.append(f"  warning: {w}")
    for w in ft["witnesses"]:
        lines.append(f"  witness: {w}")
    for pt in ft["points"]:
        lines.append(
            f"  point [{', '.join(pt['point'])}]: {pt['verdict']} "
            f"(dim K = {pt['core_dimension']}, dim K^ = {pt['extended_core_dimension']}, "
            f"target = {pt['target_dimension']})"
        )
    for cert in rep["involution_certificates"]:
        lines.append(
            f"involution certificate at [{', '.join(cert['point'])}]: "
            f"{'PASS' if cert['passed'] else 'FAIL'} ({cert['pairings']} pairings)"
        )
    for ev in rep["eigenvalue_lemma"]:
        lines.append(f"eigenvalue lemma at [{', '.join(ev['point'])}]: {ev['status']}")
    return "\n".join(lines) + "\n"


# -- catalog ----------------------------------------------------------------


def cmd_catalog(name: str | None) -> dict:
    entries = catalog()
    if name is None:
        return {"algebras": [g.name for g in entries]}
    for g in entries:
        if g.name == name:
            return lie_document(g)
    raise ValidationError(f"unknown catalog algebra: {name!r}")


# -- entry point -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jkpencil",
        description=(
            "Exact Jordan-Kronecker invariants and completeness analysis for "
            "skew-symmetric and Lie-Poisson pencils."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--seed",
            type=int,
            default=DEFAULT_SEED,
            help=f"random seed for regular-value and point sampling (default {DEFAULT_SEED})",
        )
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            help="output format (default text)",
        )

    pencil = sub.add_parser("pencil", help="constant skew pencil commands")
    pencil_sub = pencil.add_subparsers(dest="pencil_command", required=True)
    pa = pencil_sub.add_parser("analyze", help="analyze a pencil document")
    pa.add_argument("file", help="JSON pencil document")
    add_common(pa)

    lie = sub.add_parser("lie", help="Lie algebra commands")
    lie_sub = lie.add_subparsers(dest="lie_command", required=True)
    la = lie_sub.add_parser("analyze", help="analyze a Lie algebra document")
    la.add_argument("file", help="JSON Lie algebra document")
    add_common(la)
    la.add_argument(
        "--samples",
        type=int,
        default=7,
        help="random (x, a) samples for the generic invariants (default 7)",
    )
    la.add_argument(
        "--point",
        type=str,
        default=None,
        help="evaluation point override: comma-separated rationals",
    )

    cat = sub.add_parser("catalog", help="print catalog algebras")
    cat.add_argument("name", nargs="?", default=None, help="algebra name")
    cat.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    return parser


def _emit(report: dict, fmt: str, text_renderer) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text_renderer(report))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "pencil":
            report = cmd_pencil_analyze(args.file, args.seed)
            _emit(report, args.format, _render_pencil_text)
        elif args.command == "lie":
            override = None
            if args.point is not None:
                override = [
                    _parse_rational(tok.strip(), "--point")
                    for tok in args.point.split(",")
                ]
            report = cmd_lie_analyze(args.file, args.seed, args.samples, override)
            _emit(report, args.format, _render_lie_text)
        elif args.command == "catalog":
            report = cmd_catalog(args.name)
            if args.format == "json" or args.name is not None:
                sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
            else:
                sys.stdout.write("\n".join(report["algebras"]) + "\n")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 2
    except (ValidationError, NonGenericPointError, InfiniteEigenvalueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InternalConsistencyError, PairingViolationError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except JKPencilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
