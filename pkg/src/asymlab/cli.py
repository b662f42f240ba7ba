"""asymlab command line: enumeration, group orders, fixed-structure statistics,
permanents, bound formulas, crossovers, asymmetry reports, and SRG checks.

All stdout payloads are single JSON documents (or CSV with --format csv),
byte-identical across runs and worker counts; big integers are printed as
decimal strings. Domain errors exit 1 with a one-line JSON object on stderr;
usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import asymmetry, enumeration, permanent, permgroup, srg, structures
from .asymmetry import AsymmetryReport, FixStats
from .cache import ResultCache
from .errors import AsymlabError, InvalidStructure
from .srg import SrgParams


def _dump(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"))


def report_writer(report: AsymmetryReport | FixStats | SrgParams, fmt: str = "json") -> str:
    """Deterministic serialization of report objects.

    CSV column orders:
      AsymmetryReport  kind,n,total,nontrivial,proportion_num,proportion_den,histogram
                       (histogram as order:count pairs joined by ';', empty when empty)
      FixStats         kind,fixed_points,fixed_objects,orbit_count
      SrgParams        v,k,lambda,mu
    """
    if isinstance(report, AsymmetryReport):
        hist = report.aut_order_histogram
        if fmt == "csv":
            pairs = ";".join(f"{o}:{c}" for o, c in hist.items())
            return (
                f"{report.kind},{report.n},{report.total},{report.with_nontrivial_aut},"
                f"{report.proportion.numerator},{report.proportion.denominator},{pairs}"
            )
        return _dump(
            {
                "kind": report.kind,
                "n": report.n,
                "total": str(report.total),
                "with_nontrivial_aut": str(report.with_nontrivial_aut),
                "proportion": {
                    "num": str(report.proportion.numerator),
                    "den": str(report.proportion.denominator),
                },
                "aut_order_histogram": {str(o): str(c) for o, c in hist.items()},
            }
        )
    if isinstance(report, FixStats):
        if fmt == "csv":
            fp = "" if report.fixed_points is None else str(report.fixed_points)
            return f"{report.kind},{fp},{report.fixed_objects},{report.orbit_count}"
        return _dump(
            {
                "kind": report.kind,
                "fixed_points": report.fixed_points,
                "fixed_objects": report.fixed_objects,
                "orbit_count": report.orbit_count,
                "bound_values_ln": {
                    name: val.ln_float() for name, val in report.bound_values.items()
                },
            }
        )
    if isinstance(report, SrgParams):
        if fmt == "csv":
            return f"{report.v},{report.k},{report.lmbda},{report.mu}"
        return _dump(
            {"v": report.v, "k": report.k, "lambda": report.lmbda, "mu": report.mu}
        )
    raise TypeError(f"unsupported report type {type(report).__name__}")


def _make_cache(args) -> ResultCache:
    return ResultCache(args.cache_dir, enabled=not args.no_cache)


def _add_cache_flags(p: argparse.ArgumentParser):
    p.add_argument("--cache-dir", default=None, help="cache directory (default ./.asymlab-cache or $ASYMLAB_CACHE)")
    p.add_argument("--no-cache", action="store_true", help="ignore and do not write the on-disk cache")


def _cmd_enumerate(args) -> int:
    kind, n = args.kind, args.n
    if kind != "latin" and args.reduced_only:
        raise InvalidStructure("--reduced-only applies to Latin squares only")
    if args.count_only:
        cache = _make_cache(args)
        key = f"count-{kind}-{n}" + ("-reduced" if args.reduced_only else "")
        cached = cache.get(key)
        if cached is not None:
            count = int(cached)
        else:
            count = _run_count(kind, n, args)
            cache.put(key, str(count))
        doc = {"kind": kind, "n": n, "count": str(count)}
        if args.reduced_only:
            doc["reduced"] = True
        print(_dump(doc))
        return 0
    lines: list[str] = []
    sink = lines.append
    if kind == "latin":
        enumeration.enumerate_latin(
            n, lambda s: sink(structures.to_json(s)), reduced_only=args.reduced_only
        )
    elif kind == "sts":
        enumeration.enumerate_sts(n, lambda s: sink(structures.to_json(s)), budget=args.budget)
    else:
        enumeration.enumerate_one_factorizations(n, lambda s: sink(structures.to_json(s)))
    sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))
    return 0


def _run_count(kind: str, n: int, args) -> int:
    if kind == "latin":
        return enumeration.enumerate_latin(
            n, count_only=True, reduced_only=args.reduced_only, jobs=args.jobs
        )
    if kind == "sts":
        return enumeration.enumerate_sts(
            n, count_only=True, jobs=args.jobs, budget=args.budget
        )
    return enumeration.enumerate_one_factorizations(n, count_only=True, jobs=args.jobs)


def _load_structure(path: str):
    """Structure from a JSON file, or a plain-text Latin square grid."""
    text = Path(path).read_text()
    try:
        return structures.from_json(text)
    except json.JSONDecodeError:
        return structures.latin_from_text(text)


def _cmd_aut(args) -> int:
    obj = _load_structure(args.file)
    if isinstance(obj, structures.LatinSquare):
        report = permgroup.aut_order_latin(obj)
        gens = [g.to_json_dict() for g in report.generators]
        kind = "latin"
    elif isinstance(obj, structures.Sts):
        report = permgroup.aut_order_sts(obj)
        gens = [list(g.image) for g in report.generators]
        kind = "sts"
    else:
        report = permgroup.aut_order_of(obj)
        gens = [list(g.image) for g in report.generators]
        kind = "of"
    print(
        _dump(
            {
                "kind": kind,
                "n": obj.n,
                "order": str(report.order),
                "is_trivial": report.is_trivial,
                "generators": gens,
            }
        )
    )
    return 0


def _cmd_fixed(args) -> int:
    obj = _load_structure(args.structure)
    perm_text = Path(args.permutation).read_text()
    if isinstance(obj, structures.LatinSquare):
        g = permgroup.TriplePermutation.from_json_dict(json.loads(perm_text))
        stats = asymmetry.latin_fix_stats(g, obj)
    elif isinstance(obj, structures.Sts):
        stats = asymmetry.sts_fix_stats(structures.point_permutation_from_text(perm_text), obj)
    else:
        stats = asymmetry.ep_fix_stats(structures.point_permutation_from_text(perm_text), obj)
    print(report_writer(stats, args.format))
    return 0


def _cmd_permanent(args) -> int:
    matrix = structures.matrix_from_text(Path(args.file).read_text())
    value = permanent.permanent_exact(matrix, cap=args.cap, jobs=args.jobs)
    doc = {"n": matrix.n, "permanent": str(value)}
    k = matrix.common_line_sum()
    doc["regular"] = k is not None
    if k is not None and k >= 1:
        from .logscalar import LogScalar

        lower = permanent.bang_friedland_lower(matrix.n, k)
        doc["k"] = k
        doc["bang_friedland_ln"] = lower.ln_float()
        if value > 0:
            doc["ln_permanent"] = LogScalar.from_int(value).ln_float()
            doc["bound_holds"] = bool(LogScalar.from_int(value) >= lower)
    print(_dump(doc))
    return 0


def _cmd_bounds(args) -> int:
    kind = args.kind
    eps = args.eps
    lower_kind, upper_kind = {
        "latin": ("latin_lower", "latin_aut_upper"),
        "sts": ("sts_lower", "sts_aut_upper"),
        "ep": ("ep_lower", "ep_aut_upper"),
    }[kind]
    use_eps = None if kind == "latin" else eps
    doc = {
        "kind": kind,
        "n": args.n,
        "lower_ln": asymmetry.bound_eval(lower_kind, args.n, use_eps).ln_float(),
        "aut_upper_ln": asymmetry.bound_eval(upper_kind, args.n, None).ln_float(),
    }
    if use_eps is not None:
        doc["eps"] = eps
    print(_dump(doc))
    return 0


def _cmd_crossover(args) -> int:
    n0 = asymmetry.crossover_order(args.kind, args.eps)
    doc = {"kind": args.kind, "n0": n0, "window": asymmetry.CROSSOVER_WINDOW}
    if args.kind != "latin":
        doc["eps"] = args.eps
    if args.figure:
        from .figures import save_crossover_figure

        save_crossover_figure(args.kind, n0, args.figure, args.eps)
        doc["figure"] = str(args.figure)
    print(_dump(doc))
    return 0


def _cmd_report(args) -> int:
    cache = _make_cache(args)
    key = f"report-{args.kind}-{args.n}"
    cached = cache.get(key)
    if cached is not None:
        report = AsymmetryReport(
            cached["kind"],
            cached["n"],
            int(cached["total"]),
            int(cached["nontrivial"]),
            Fraction(int(cached["proportion_num"]), int(cached["proportion_den"])),
            {int(o): int(c) for o, c in cached["histogram"]},
        )
    else:
        report = asymmetry.asymmetry_report(args.kind, args.n, jobs=args.jobs)
        cache.put(
            key,
            {
                "kind": report.kind,
                "n": report.n,
                "total": str(report.total),
                "nontrivial": str(report.with_nontrivial_aut),
                "proportion_num": str(report.proportion.numerator),
                "proportion_den": str(report.proportion.denominator),
                "histogram": [[str(o), str(c)] for o, c in report.aut_order_histogram.items()],
            },
        )
    if args.figure:
        from .figures import save_histogram_figure

        save_histogram_figure(report, args.figure)
    print(report_writer(report, args.format))
    return 0


def _cmd_srg(args) -> int:
    doc: dict = {}
    if args.construct:
        if args.construct == "multipartite":
            graph = srg.complete_multipartite(args.parts, args.size)
        else:
            graph = srg.classical_graph(args.construct, args.n)
        doc["construct"] = args.construct
        structure = None
    else:
        if args.file is None:
            raise InvalidStructure("provide a graph/structure file or --construct")
        text = Path(args.file).read_text()
        head = json.loads(text)
        if "kind" in head:
            structure = structures.from_json(text)
            if isinstance(structure, structures.LatinSquare):
                graph = srg.latin_square_graph(structure)
            elif isinstance(structure, structures.Sts):
                graph = srg.steiner_graph(structure)
            else:
                raise InvalidStructure("SRG constructions take Latin or STS structures")
        else:
            graph = srg.graph_from_json(text)
            structure = None
    params = srg.srg_params(graph)
    doc.update(json.loads(report_writer(params)))
    doc["least_eigenvalue"] = srg.least_eigenvalue(graph)
    doc["closed_form_root"] = params.least_eigenvalue_root()
    if structure is not None:
        cmp = srg.aut_comparison(structure, graph)
        doc["graph_aut_order"] = str(cmp.graph_aut_order)
        doc["structure_aut_order"] = str(cmp.structure_aut_order)
        doc["induced_equal"] = cmp.induced_equal
    if args.format == "csv":
        print(report_writer(params, "csv"))
    else:
        print(_dump(doc))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymlab",
        description="Latin squares, Steiner triple systems, and 1-factorizations: "
        "enumeration, automorphism groups, permanents, and asymmetry statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate or count structures")
    p.add_argument("--kind", required=True, choices=["latin", "sts", "of"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--reduced-only", action="store_true", help="reduced Latin squares only")
    p.add_argument("--jobs", type=int, default=1, help="worker count for counting")
    p.add_argument("--budget", action="store_true", help="allow the large STS(13) count")
    _add_cache_flags(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("aut", help="automorphism group order of a structure file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_aut)

    p = sub.add_parser("fixed", help="fixed-structure statistics for a permutation")
    p.add_argument("structure")
    p.add_argument("permutation")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=_cmd_fixed)

    p = sub.add_parser("permanent", help="exact permanent of a 0/1 matrix file")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=permanent.DEFAULT_DIMENSION_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_permanent)

    p = sub.add_parser("bounds", help="log-domain lower and automorphism-upper bounds")
    p.add_argument("--kind", required=True, choices=["latin", "sts", "ep"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--eps", type=float, default=None)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("crossover", help="least n0 where the upper bound drops below the lower")
    p.add_argument("--kind", required=True, choices=["latin", "sts", "ep"])
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--figure", default=None, help="write a bound-curve figure to this file")
    p.set_defaults(fn=_cmd_crossover)

    p = sub.add_parser("report", help="asymmetry report over all labeled structures")
    p.add_argument("--kind", required=True, choices=["latin", "sts", "of"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--figure", default=None, help="write a histogram figure to this file")
    _add_cache_flags(p)
    p.set_defaults(fn=_cmd_report)

    p = sub.add_parser("srg", help="strongly regular parameters and spectrum checks")
    p.add_argument("file", nargs="?", default=None, help="graph JSON or structure JSON")
    p.add_argument(
        "--construct",
        choices=["multipartite", "triangular", "square_lattice"],
        default=None,
    )
    p.add_argument("--parts", type=int, default=3)
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=_cmd_srg)

    return parser


def dispatch(argv=None) -> int:
    """Route argv to a subcommand: exit 0 on success, 1 on domain error, 2 on usage."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AsymlabError as exc:
        sys.stderr.write(
            _dump({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
