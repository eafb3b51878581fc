"""Command-line interface.

    realcubic request.json            analyse a JSON request (``-`` or no file: stdin)
    realcubic --family TwoA5 --params '{"b": "0"}'
    realcubic --suite [--table]       run the worked examples
    realcubic --h1 TwoA5              H^1 of a catalog module (or a presentation file)
    realcubic --jobs 4 grid.json      sweep: {"family": ..., "grid": [params, ...]}

Reports are JSON on stdout with sorted keys; rationals are written as "p/q".
Exit codes: 0 success, 2 malformed input, 3 semantic error (constraint
violation, failed audit, inconsistent presentation). For ``--suite`` the exit
code is 1 when some row does not match.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .cohomology import (
    CATALOG_CASES, LatticePresentation, PresentationError, galois_module_catalog, h1_report,
    lattice_from_presentation,
)
from .families import RAW_FAMILIES, FamilyError, FamilyId, normalize_params
from .verdict import AnalysisInput, AuditError, ConstraintError, analyze

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_SEMANTIC = 0, 1, 2, 3

REQUEST_KEYS = {"family", "params", "cubic", "witnesses", "declared", "options", "grid"}
OPTION_KEYS = {"oracle_resolution": int, "ade_cap": int, "strict_4a2": bool}
WITNESS_KEYS = {"line", "plane", "scroll"}
DECLARED_KEYS = {"galois_swaps_scrolls", "eight_a1_iota", "defect"}


class RequestError(ValueError):
    """Malformed request (exit code 2)."""


def parse_rational(text, name="value"):
    """Exact rational from ``"p/q"``, an integer string or a JSON integer."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise RequestError(f"{name}: rationals must be strings like \"p/q\" or integers, got {text!r}")
    try:
        return Fraction(text.strip() if isinstance(text, str) else text)
    except (ValueError, ZeroDivisionError) as exc:
        raise RequestError(f"{name}: cannot parse {text!r} ({exc})") from None


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise RequestError(f"{where} must be a JSON object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise RequestError(f"unknown keys in {where}: {sorted(unknown)}")


def _options(raw, overrides):
    raw = dict(raw or {})
    _check_keys(raw, OPTION_KEYS, "options")
    out = {}
    for key, typ in OPTION_KEYS.items():
        if key in raw:
            if type(raw[key]) is not typ:
                raise RequestError(f"options.{key} must be {typ.__name__}")
            out[key] = raw[key]
    out.update({k: v for k, v in overrides.items() if v is not None})
    return out


def build_input(doc, params=None, **overrides):
    """``AnalysisInput`` from a request document (``params`` overrides ``doc["params"]``)."""
    _check_keys(doc, REQUEST_KEYS - {"grid"}, "request")
    if "family" not in doc:
        raise RequestError("request needs a 'family'")
    try:
        family = FamilyId.parse(doc["family"])
    except FamilyError as exc:
        raise RequestError(str(exc)) from None
    raw = doc.get("params", {}) if params is None else params
    if not isinstance(raw, dict):
        raise RequestError("params must be a JSON object")
    values = {k: parse_rational(v, k) for k, v in raw.items()}
    if family not in RAW_FAMILIES:
        try:
            values = normalize_params(family, values)
        except FamilyError as exc:
            raise RequestError(str(exc)) from None
    witnesses = doc.get("witnesses") or {}
    _check_keys(witnesses, WITNESS_KEYS, "witnesses")
    declared = doc.get("declared") or {}
    _check_keys(declared, DECLARED_KEYS, "declared")
    cubic = doc.get("cubic")
    if cubic is not None and not isinstance(cubic, str):
        raise RequestError("cubic must be a polynomial string")
    try:
        return AnalysisInput(family, values, cubic=cubic, witnesses=witnesses, declared=declared,
                             **_options(doc.get("options"), overrides))
    except (SyntaxError, FamilyError) as exc:
        raise RequestError(str(exc)) from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj):
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def report(inp):
    v = analyze(inp)
    out = v.to_dict()
    out["family"] = inp.family.value
    out["params"] = {k: format_rational(x) for k, x in (inp.params or {}).items()}
    return out


def _analyze_one(args):
    doc, params, overrides = args
    try:
        return report(build_input(doc, params, **overrides))
    except (ConstraintError, AuditError, ValueError) as exc:
        return {"error": f"{type(exc).__name__}: {exc}", "params": params}


def cmd_analyze(doc, jobs=1, **overrides):
    """Single analysis, or a sweep when the request has a ``grid`` of parameter maps."""
    if "grid" not in doc:
        return report(build_input(doc, **overrides))
    grid = doc["grid"]
    if not isinstance(grid, list):
        raise RequestError("grid must be a list of parameter maps")
    base = {k: v for k, v in doc.items() if k != "grid"}
    build_input(dict(base, params=grid[0] if grid else {}), **overrides)  # fail fast on malformed input
    tasks = [(base, params, overrides) for params in grid]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_analyze_one, tasks))
    else:
        rows = [_analyze_one(t) for t in tasks]
    return {"family": doc["family"], "results": rows}


def cmd_paper_suite(jobs=1, table=False, **overrides):
    from .suite import format_table, run_suite

    rows = run_suite(jobs=jobs, **{k: v for k, v in overrides.items() if v is not None})
    ok = all(r.match for r in rows)
    if table:
        text = format_table(rows)
        text += f"\n{sum(r.match for r in rows)}/{len(rows)} rows match"
    else:
        text = dumps({"all_match": ok, "rows": [r.to_dict() for r in rows]})
    return text, ok


def cmd_h1(arg):
    """H^1 for a catalog case name or a presentation JSON file."""
    if arg in CATALOG_CASES:
        lattice = galois_module_catalog(arg)
        source = arg
    else:
        try:
            with open(arg) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise RequestError(f"{arg!r} is neither a catalog case ({', '.join(CATALOG_CASES)}) "
                               f"nor a readable file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise RequestError(f"{arg}: {exc}") from None
        _check_keys(doc, {"generators", "relations", "involution", "labels"}, "presentation")
        try:
            pres = LatticePresentation(int(doc["generators"]), doc.get("relations", []),
                                       doc["involution"], tuple(doc.get("labels", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise RequestError(f"malformed presentation: {exc}") from None
        lattice = lattice_from_presentation(pres)
        source = arg
    out = h1_report(lattice)
    out["source"] = source
    return out


def _load(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise RequestError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise RequestError(f"invalid JSON: {exc}") from None


def make_parser():
    p = argparse.ArgumentParser(prog="realcubic", description="Rationality verdicts for real singular cubic threefolds.")
    p.add_argument("request", nargs="?", help="JSON request file ('-' for stdin)")
    p.add_argument("--family", help="family name (with --params instead of a request file)")
    p.add_argument("--params", help="JSON object of parameters, rationals as strings")
    p.add_argument("--suite", action="store_true", help="run the worked-example suite")
    p.add_argument("--table", action="store_true", help="with --suite: print a text table")
    p.add_argument("--h1", metavar="CASE_OR_FILE", help="H^1(C2, M) of a catalog case or presentation file")
    p.add_argument("--oracle-resolution", type=int)
    p.add_argument("--ade-cap", type=int)
    p.add_argument("--strict-4a2", action="store_true", default=None)
    p.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    overrides = {"oracle_resolution": args.oracle_resolution, "ade_cap": args.ade_cap,
                 "strict_4a2": args.strict_4a2}
    try:
        if args.suite:
            text, ok = cmd_paper_suite(jobs=args.jobs, table=args.table, **overrides)
            print(text)
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.h1:
            print(dumps(cmd_h1(args.h1)))
            return EXIT_OK
        if args.family:
            if args.request:
                raise RequestError("give either a request file or --family, not both")
            try:
                params = json.loads(args.params) if args.params else {}
            except json.JSONDecodeError as exc:
                raise RequestError(f"--params: invalid JSON: {exc}") from None
            doc = {"family": args.family, "params": params}
        else:
            doc = _load(args.request)
        print(dumps(cmd_analyze(doc, jobs=args.jobs, **overrides)))
        return EXIT_OK
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstraintError as exc:
        print(dumps({"error": "constraint violation",
                     "violations": [{"constraint": v.constraint, "reason": v.citation} for v in exc.violations]}))
        return EXIT_SEMANTIC
    except (AuditError, PresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
