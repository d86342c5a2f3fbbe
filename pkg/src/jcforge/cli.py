"""Command-line front end.

Parses field / polynomial / matrix text, dispatches to the engine and
renders text or JSON with scripting-friendly exit codes:

    0   success
    1   no decomposition exists / verification failed
    2   parse error
    3   validation error (not primary, not irreducible, ...)
    4   enumeration budget exceeded

Matrices are accepted inline or as `@path` file indirection.  The only
environment variable consulted is JC_FORGE_BUDGET, which overrides the
partition-sum bound of the fiber/table enumeration.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from .errors import (BudgetExceeded, DegreeTooLarge, JCForgeError, NoSuchType,
                     NotInImage, ParseError, RaggedRows)
from .fields import FieldSpec, parse_element, prime_field, rational_functions, rationals
from .jc import (admissible_types, classification_table, decompose,
                 random_decomposition, typ_of, validate_primary, verify_decomp)
from .linalg import (Mat, frobenius_normal_form, invariant_factors_of,
                     parse_matrix_text, render_matrix)
from .partitions import Partition, enumerate_preimages, jc_dimension, parse_partition
from .poly import Poly, parse_poly_text, render_poly


@dataclass
class Request:
    subcommand: str
    field: str | None = None
    f: str | None = None
    matrix: str | None = None
    s: str | None = None
    n: str | None = None
    type: str | None = None
    partition: str | None = None
    q: int | None = None
    degf: int | None = None
    m: int | None = None
    fmt: str = "text"
    seed: int | None = None
    random: bool = False
    paranoid: bool = False


_FIELD_RE = re.compile(r"^GF\((\d+)\)(\(t\))?$")


def parse_field(s: str) -> FieldSpec:
    """`Q`, `GF(p)` or `GF(p)(t)`; rejects non-prime p."""
    s = s.strip().replace(" ", "")
    if s == "Q":
        return rationals()
    m = _FIELD_RE.match(s)
    if not m:
        raise ParseError(f"bad field literal {s!r} (expected Q, GF(p) or GF(p)(t))")
    p = int(m.group(1))
    return rational_functions(p) if m.group(2) else prime_field(p)


def parse_poly(s: str, spec: FieldSpec) -> Poly:
    return parse_poly_text(s, spec)


def parse_matrix(s: str, spec: FieldSpec, fmt: str = "text") -> Mat:
    """Matrix text grammar, or a JSON array-of-arrays in json mode."""
    s = s.strip()
    if fmt == "json":
        try:
            data = json.loads(s)
        except json.JSONDecodeError:
            data = None
        if isinstance(data, list):
            rows = []
            for row in data:
                if not isinstance(row, list):
                    raise ParseError("JSON matrix must be an array of arrays")
                rows.append([parse_element(str(e), spec) for e in row])
            if len({len(r) for r in rows}) > 1:
                raise RaggedRows("rows of differing lengths")
            return Mat.from_rows(spec, rows)
    return parse_matrix_text(s, spec)


def _read_arg(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return value


def _budget() -> int | None:
    raw = os.environ.get("JC_FORGE_BUDGET")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise ParseError(f"JC_FORGE_BUDGET must be an integer, got {raw!r}") from e


def _mat_json(m: Mat) -> list:
    from .fields import render_element
    return [[render_element(m.entry(i, j)) for j in range(m.cols)]
            for i in range(m.rows)]


def _types_json(types) -> list:
    return [{"type": str(phi), "dim": dim} for phi, dim in types]


def _render(payload: dict, text_lines: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    return "\n".join(text_lines)


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def _need(req: Request, *names):
    for name in names:
        if getattr(req, name) in (None, ""):
            raise ParseError(f"--{name.replace('_', '-')} is required for "
                             f"{req.subcommand}")


def _load_instance(req: Request):
    _need(req, "field", "f", "matrix")
    spec = parse_field(req.field)
    f = parse_poly(_read_arg(req.f), spec)
    x = parse_matrix(_read_arg(req.matrix), spec, req.fmt)
    return spec, f, validate_primary(spec, f, x, paranoid=req.paranoid)


def _run_analyze(req: Request):
    spec, f, e = _load_instance(req)
    report = admissible_types(e, bound=_budget(), paranoid=req.paranoid)
    payload = {
        "subcommand": "analyze",
        "field": str(spec),
        "f": render_poly(f),
        "q": e.q,
        "m": e.m,
        "inv": str(report.inv),
        "exists": report.exists,
        "types": _types_json(report.types),
    }
    lines = [
        f"field: {spec}",
        f"f: {render_poly(f)}",
        f"q: {e.q}",
        f"m: {e.m}",
        f"inv: {report.inv}",
        f"exists: {'yes' if report.exists else 'no'}",
        "types:",
    ]
    lines += [f"  {phi} : {dim}" for phi, dim in report.types]
    return payload, lines, 0 if report.exists else 1


def _run_decompose(req: Request):
    spec, f, e = _load_instance(req)
    _need(req, "type")
    phi = parse_partition(req.type)
    if req.random:
        if req.seed is None:
            raise ParseError("--seed is required with --random")
        dec = random_decomposition(e, phi, req.seed)
    else:
        dec = decompose(e, phi, paranoid=req.paranoid)
    payload = {
        "subcommand": "decompose",
        "field": str(spec),
        "f": render_poly(f),
        "q": e.q,
        "m": e.m,
        "type": str(dec.type),
        "s": _mat_json(dec.s),
        "n": _mat_json(dec.n),
    }
    lines = [
        f"type: {dec.type}",
        f"s: {render_matrix(dec.s)}",
        f"n: {render_matrix(dec.n)}",
    ]
    return payload, lines, 0


def _run_verify(req: Request):
    spec, f, e = _load_instance(req)
    _need(req, "s", "n")
    s = parse_matrix(_read_arg(req.s), spec, req.fmt)
    n = parse_matrix(_read_arg(req.n), spec, req.fmt)
    res = verify_decomp(e, s, n)
    if res:
        typ = typ_of(e, s, n)
        payload = {"subcommand": "verify", "ok": True, "typ": str(typ)}
        return payload, [f"ok: typ = {typ}"], 0
    payload = {"subcommand": "verify", "ok": False, "failed": res.diagnostic}
    return payload, [f"failed: {res.diagnostic}"], 1


def _run_types(req: Request):
    _need(req, "q", "partition")
    psi = parse_partition(req.partition)
    degf = req.degf if req.degf is not None else 1
    fiber = enumerate_preimages(psi, req.q, _budget())
    types = [(phi, jc_dimension(psi, phi, degf)) for phi in fiber]
    payload = {
        "subcommand": "types",
        "q": req.q,
        "degf": degf,
        "inv": str(psi),
        "exists": bool(types),
        "types": _types_json(types),
    }
    lines = [f"inv: {psi}", f"exists: {'yes' if types else 'no'}", "types:"]
    lines += [f"  {phi} : {dim}" for phi, dim in types]
    return payload, lines, 0 if types else 1


def _run_zeta(req: Request):
    _need(req, "q", "partition")
    phi = parse_partition(req.partition)
    from .partitions import zeta_apply
    psi = zeta_apply(phi, req.q)
    payload = {
        "subcommand": "zeta",
        "q": req.q,
        "partition": str(phi),
        "result": str(psi),
    }
    return payload, [str(psi)], 0


def _run_table(req: Request):
    _need(req, "q", "degf", "m")
    rows = classification_table(req.q, req.degf, req.m, bound=_budget())
    payload = {
        "subcommand": "table",
        "q": req.q,
        "degf": req.degf,
        "m": req.m,
        "rows": [{"inv": str(psi), "types": _types_json(types)}
                 for psi, types in rows],
    }
    width = max(len(str(psi)) for psi, _ in rows)
    lines = [f"{'psi'.ljust(width)} | phi : dim",
             f"{'-' * width}-+{'-' * 30}"]
    for psi, types in rows:
        cell = ", ".join(f"{phi}:{dim}" for phi, dim in types)
        lines.append(f"{str(psi).ljust(width)} | {cell}")
    return payload, lines, 0


def _run_fnf(req: Request):
    _need(req, "field", "matrix")
    spec = parse_field(req.field)
    x = parse_matrix(_read_arg(req.matrix), spec, req.fmt)
    f, p = frobenius_normal_form(x)
    factors = invariant_factors_of(x)
    payload = {
        "subcommand": "fnf",
        "field": str(spec),
        "factors": [render_poly(d) for d in factors],
        "F": _mat_json(f),
        "P": _mat_json(p),
    }
    lines = [
        "factors: " + "; ".join(render_poly(d) for d in factors),
        f"F: {render_matrix(f)}",
        f"P: {render_matrix(p)}",
    ]
    return payload, lines, 0


_RUNNERS = {
    "analyze": _run_analyze,
    "decompose": _run_decompose,
    "verify": _run_verify,
    "types": _run_types,
    "zeta": _run_zeta,
    "table": _run_table,
    "fnf": _run_fnf,
}


def run(request: Request):
    """Dispatch a parsed request; returns (rendered output, exit code)."""
    payload, lines, code = _RUNNERS[request.subcommand](request)
    return _render(payload, lines, request.fmt), code


def exit_code_for(exc: JCForgeError) -> int:
    if isinstance(exc, ParseError):
        return 2
    if isinstance(exc, (NoSuchType, NotInImage)):
        return 1
    if isinstance(exc, (DegreeTooLarge, BudgetExceeded)):
        return 4
    return 3


# ---------------------------------------------------------------------------
# argparse wiring
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="jc-forge",
        description="Existence, enumeration, construction and verification "
                    "of commuting semisimple + nilpotent matrix splittings "
                    "over Q, GF(p) and GF(p)(t), in exact arithmetic.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def add_common(p, field=False, poly=False, matrix=False):
        if field:
            p.add_argument("--field", required=True,
                           help="Q, GF(p) or GF(p)(t)")
        if poly:
            p.add_argument("--f", required=True,
                           help="monic irreducible polynomial in T")
        if matrix:
            p.add_argument("--matrix", required=True,
                           help="matrix literal [[..],[..]] or @file")
        p.add_argument("--format", choices=("text", "json"), default="text",
                       dest="fmt")
        p.add_argument("--paranoid", action="store_true",
                       help="enable redundant cross-checking routes")

    p = sub.add_parser("analyze", help="existence and admissible types")
    add_common(p, field=True, poly=True, matrix=True)

    p = sub.add_parser("decompose", help="construct a decomposition of a type")
    add_common(p, field=True, poly=True, matrix=True)
    p.add_argument("--type", required=True, help="partition, e.g. [2,1]")
    p.add_argument("--random", action="store_true",
                   help="conjugate by a random centralizer element")
    p.add_argument("--seed", type=int, help="seed for --random")

    p = sub.add_parser("verify", help="check a candidate pair (s, n)")
    add_common(p, field=True, poly=True, matrix=True)
    p.add_argument("--s", required=True, help="semisimple part or @file")
    p.add_argument("--n", required=True, help="nilpotent part or @file")

    p = sub.add_parser("types", help="fiber of an invariant partition")
    add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition", required=True, dest="partition")
    p.add_argument("--degf", type=int, default=1)

    p = sub.add_parser("zeta", help="apply the type collapse map")
    add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition", required=True)

    p = sub.add_parser("table", help="classification table for (q, degf, m)")
    add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--degf", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("fnf", help="Frobenius normal form and witness")
    add_common(p, field=True, matrix=True)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    req = Request(
        subcommand=args.subcommand,
        field=getattr(args, "field", None),
        f=getattr(args, "f", None),
        matrix=getattr(args, "matrix", None),
        s=getattr(args, "s", None),
        n=getattr(args, "n", None),
        type=getattr(args, "type", None),
        partition=getattr(args, "partition", None),
        q=getattr(args, "q", None),
        degf=getattr(args, "degf", None),
        m=getattr(args, "m", None),
        fmt=getattr(args, "fmt", "text"),
        seed=getattr(args, "seed", None),
        random=getattr(args, "random", False),
        paranoid=getattr(args, "paranoid", False),
    )
    try:
        out, code = run(req)
    except JCForgeError as exc:
        print(f"jc-forge: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
