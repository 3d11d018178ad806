"""Command-line surface: check, modular, report, cohomology, tjurina.

Every command reads a declarative structure file (tjurina also accepts a
bare polynomial expression), computes, and prints either a human-readable
summary or, with ``--json``, a report envelope with the keys ``version``,
``command``, ``input_digest``, ``conventions``, ``result``, ``timing_ms``.
The JSON output validates against the schema shipped as
``poissonkit/schema.json``.

Exit codes: 0 success, 2 parse error, 3 violated mathematical precondition,
4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .diagnostics import (
    Verdict,
    degeneracy_divisor,
    holonomy_verdict,
    surface_h2_report,
    surface_leaf_report,
    zero_leaf_locus,
)
from .errors import (
    BudgetExceededError,
    JacobiFailure,
    ParseError,
    PreconditionError,
)
from .graded_cohomology import cohomology_table
from .groebner import DEFAULT_BUDGET, GREVLEX, INFINITE, jacobian_ideal_basis, quotient_dimension
from .multivec import SIGN_CONVENTIONS, lie_derivative
from .poisson import (
    PoissonStructure,
    dmodule_generators,
    modular_field,
    pfaffian,
)
from .polyalg import Chart, Poly, parse_poly
from .structfile import StructureSpec, parse_structure_file

_IDENT_SCAN_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _envelope(command: str, digest: str, result: dict, started: float) -> dict:
    return {
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "conventions": dict(SIGN_CONVENTIONS),
        "result": result,
        "timing_ms": round((time.perf_counter() - started) * 1000.0, 3),
    }


def _structure_payload(P: PoissonStructure) -> dict:
    chart = P.chart
    brackets = {
        f"{{{chart.names[i]},{chart.names[j]}}}": str(coeff)
        for (i, j), coeff in sorted(P.pi.terms.items())
    }
    return {
        "chart": list(chart.names),
        "weights": list(chart.weights),
        "brackets": brackets,
    }


def _load_spec(path: str) -> tuple[StructureSpec, str]:
    data = Path(path).read_bytes()
    return parse_structure_file(data.decode("utf-8")), _digest(data)


def _finite_or_marker(value):
    return "INFINITE" if value is INFINITE else value


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_check(args) -> dict:
    started = time.perf_counter()
    spec, digest = _load_spec(args.file)
    try:
        P = spec.build()
        result = {
            "jacobi_ok": True,
            "jacobiator": "0",
            "structure": _structure_payload(P),
        }
    except JacobiFailure as failure:
        tri = failure.trivector
        pi = _unvalidated_structure(spec)
        result = {
            "jacobi_ok": False,
            "jacobiator": str(tri),
            "structure": _structure_payload(pi),
        }
    return _envelope("check", digest, result, started)


def _unvalidated_structure(spec: StructureSpec) -> PoissonStructure:
    """Wrap the raw bivector without the Jacobi certificate (check command only)."""
    from .multivec import Polyvector

    terms = {(i, j): p for i, j, p in spec.brackets if not p.is_zero}
    pi = Polyvector(spec.chart, 2, terms)
    return PoissonStructure(spec.chart, pi, jacobiator_checked=False)


def cmd_modular(args) -> dict:
    started = time.perf_counter()
    spec, digest = _load_spec(args.file)
    P = spec.build()
    zeta = modular_field(P)
    symmetry = lie_derivative(zeta, P.pi)
    result = {
        "modular_field": str(zeta),
        "lie_zeta_pi_is_zero": symmetry.is_zero,
        "structure": _structure_payload(P),
    }
    return _envelope("modular", digest, result, started)


def cmd_report(args) -> dict:
    started = time.perf_counter()
    spec, digest = _load_spec(args.file)
    P = spec.build()
    budget = args.budget
    f, reduced = degeneracy_divisor(P, budget)
    verdict = holonomy_verdict(P, budget)
    witness = None
    if verdict.nonreduced_factor is not None:
        witness = {"nonreduced_factor": str(verdict.nonreduced_factor)}
    elif verdict.verdict == Verdict.OBSTRUCTED_BY_MODULAR_LEAVES:
        witness = {
            "ideal": [str(g) for g in verdict.witness_ideal.gens],
            "dimension": verdict.witness_dimension,
        }
    locus = None
    if P.chart.n >= 4:
        basis, dimension = zero_leaf_locus(P, budget)
        locus = {"ideal": [str(g) for g in basis.gens], "dimension": dimension}
    surface = None
    if P.chart.n == 2:
        leaf = surface_leaf_report(P, budget)
        surface = {
            "singular_ideal": [str(g) for g in leaf.singular_ideal.gens],
            "singular_dimension": leaf.singular_dimension,
            "tjurina_total": _finite_or_marker(leaf.tjurina_total),
            "multiple_components": leaf.contains_multiple_components,
            "open_leaf": leaf.open_leaf,
        }
        if reduced:
            h2 = surface_h2_report(P, budget=budget)
            surface["h2"] = {
                "formula": h2.formula,
                "tjurina_total": h2.tjurina_total,
                "quasi_homogeneous": h2.quasi_homogeneous,
                "formula_asserted": h2.formula_asserted,
                "dim_h2": h2.dim_h2,
            }
        else:
            surface["h2"] = None
    generators = [
        {
            "coordinate": str(g.source),
            "scalar": str(g.scalar_part),
            "vector": str(g.vector_part),
        }
        for g in dmodule_generators(P)
    ]
    result = {
        "structure": _structure_payload(P),
        "pfaffian": str(f),
        "pfaffian_squarefree": reduced,
        "log_symplectic": reduced,
        "verdict": verdict.verdict.value,
        "witness": witness,
        "zero_leaf_locus": locus,
        "surface": surface,
        "modular_field": str(modular_field(P)),
        "dmodule_generators": generators,
    }
    return _envelope("report", digest, result, started)


def cmd_cohomology(args) -> dict:
    started = time.perf_counter()
    spec, digest = _load_spec(args.file)
    P = spec.build()
    k_max = args.kmax if args.kmax is not None else P.chart.n
    table = cohomology_table(P, k_max, args.wmax)
    entries = [
        {
            "k": e.k,
            "w": e.w,
            "dim_chain": e.dim_chain,
            "dim_kernel": e.dim_kernel,
            "dim_image_incoming": e.dim_image_incoming,
            "dim_h": e.dim_h,
            "rank_certificate": {
                "rows": e.rank_certificate[0],
                "cols": e.rank_certificate[1],
                "rank": e.rank_certificate[2],
            },
        }
        for (_, _), e in sorted(table.entries.items())
    ]
    checks = [
        {
            "w0": c.w0,
            "chain_sum": c.chain_sum,
            "cohomology_sum": c.cohomology_sum,
            "consistent": c.consistent,
        }
        for c in table.euler_checks
    ]
    result = {
        "structure": _structure_payload(P),
        "weight_shift": table.weight_shift,
        "k_max": table.k_max,
        "w_min": table.w_min,
        "w_max": table.w_max,
        "entries": entries,
        "euler_checks": checks,
        "euler_consistent": table.euler_consistent(),
        "table_text": table.render_text(),
    }
    return _envelope("cohomology", digest, result, started)


def cmd_tjurina(args) -> dict:
    started = time.perf_counter()
    source = args.file_or_poly
    path = Path(source)
    if path.is_file():
        data = path.read_bytes()
        digest = _digest(data)
        text = data.decode("utf-8")
        if re.search(r"^\s*chart:", text, re.MULTILINE):
            spec = parse_structure_file(text)
            P = spec.build()
            f = pfaffian(P)
            if f.is_zero or f.is_constant:
                raise PreconditionError(
                    "the Pfaffian is constant; there is no degeneracy curve to measure"
                )
            chart = P.chart
        else:
            f, chart = _poly_from_text(text.strip())
    else:
        digest = _digest(source.encode("utf-8"))
        f, chart = _poly_from_text(source)
    point = None
    if args.point:
        try:
            point = [Fraction(t.strip()) for t in args.point.split(",")]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad --point value {args.point!r}") from None
        if len(point) != chart.n:
            raise ParseError(
                f"--point needs {chart.n} coordinates in chart order {chart.names}"
            )
        f = f.shift(point)
    basis = jacobian_ideal_basis(f, include_f=True, order=GREVLEX, budget=args.budget)
    tau = quotient_dimension(basis)
    result = {
        "poly": str(f),
        "chart": list(chart.names),
        "point": [str(v) for v in point] if point is not None else None,
        "tjurina": _finite_or_marker(tau),
        "groebner_basis": [str(g) for g in basis.gens],
    }
    return _envelope("tjurina", digest, result, started)


def _poly_from_text(text: str) -> tuple[Poly, Chart]:
    """Parse a bare polynomial; the chart is its identifiers sorted by name."""
    names = sorted(set(_IDENT_SCAN_RE.findall(text)))
    if not names:
        raise PreconditionError("the Tjurina number needs a nonconstant polynomial")
    chart = Chart(tuple(names))
    f = parse_poly(text, chart)
    if f.is_zero or f.is_constant:
        raise PreconditionError("the Tjurina number needs a nonconstant polynomial")
    return f, chart


# ---------------------------------------------------------------------------
# Rendering and entry point
# ---------------------------------------------------------------------------


def _render_human(envelope: dict) -> str:
    command = envelope["command"]
    result = envelope["result"]
    lines = [f"poissonkit {command} (v{envelope['version']})"]
    if command == "check":
        lines.append("jacobi: " + ("PASS" if result["jacobi_ok"] else "FAIL"))
        if not result["jacobi_ok"]:
            lines.append(f"jacobiator: {result['jacobiator']}")
    elif command == "modular":
        lines.append(f"modular field: {result['modular_field']}")
        lines.append(f"L_zeta pi = 0: {result['lie_zeta_pi_is_zero']}")
    elif command == "report":
        lines.append(f"pfaffian: {result['pfaffian']}")
        lines.append(f"reduced (squarefree): {result['pfaffian_squarefree']}")
        lines.append(f"log symplectic: {result['log_symplectic']}")
        lines.append(f"verdict: {result['verdict']}")
        if result["witness"]:
            lines.append(f"witness: {result['witness']}")
        if result["surface"]:
            s = result["surface"]
            lines.append(
                "surface: singular ideal "
                + "{" + ", ".join(s["singular_ideal"]) + "}"
                + f", dimension {s['singular_dimension']}, tjurina {s['tjurina_total']}"
            )
            if s["h2"]:
                lines.append(f"dim H^2 = {s['h2']['formula']}")
        lines.append(f"modular field: {result['modular_field']}")
        for g in result["dmodule_generators"]:
            lines.append(
                f"D-ideal generator for {g['coordinate']}: ({g['scalar']}) + ({g['vector']})"
            )
    elif command == "cohomology":
        lines.append(f"weight shift m = {result['weight_shift']}")
        lines.append(result["table_text"])
        lines.append(f"euler consistent: {result['euler_consistent']}")
    elif command == "tjurina":
        lines.append(f"poly: {result['poly']}")
        if result["point"]:
            lines.append(f"translated point: {', '.join(result['point'])}")
        lines.append(f"tjurina: {result['tjurina']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonkit",
        description="Exact diagnostics for polynomial Poisson structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit the JSON report envelope")
        p.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_BUDGET,
            help="Groebner reduction-step budget (default 10^6)",
        )
        p.add_argument(
            "--seed",
            type=int,
            default=20260810,
            help="seed recorded for randomized suites (commands here are deterministic)",
        )

    p = sub.add_parser("check", help="validate [pi,pi] = 0 and report the jacobiator")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("modular", help="print the modular vector field")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("report", help="full holonomicity / log-symplectic diagnostics")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("cohomology", help="weight-graded Lichnerowicz cohomology table")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, default=None, help="largest polyvector degree (default n)")
    p.add_argument("--wmax", type=int, default=6, help="largest weight (default 6)")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("tjurina", help="global or translated-local Tjurina number")
    p.add_argument("file_or_poly", help="structure file, polynomial file, or literal expression")
    p.add_argument("--point", default=None, help='translate this point to the origin: "a,b,..."')
    common(p)
    p.set_defaults(func=cmd_tjurina)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        envelope = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(envelope, indent=2))
    else:
        print(_render_human(envelope))
    return 0


def entrypoint():
    raise SystemExit(main())
