"""Command-line front end.

Exit status: 0 on success, 1 when the computation succeeded but the verdict is
negative (an invalid inequality, a failed verification, disagreeing methods),
2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, blowup, catalog, graphs, hde, pathprofile
from .cones import cone_to_json
from .exactlp import rat_str

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _read_graph(path: Optional[str]) -> graphs.Graph:
    if path is None:
        raise UsageError("--graph is required")
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from None
    return graphs.parse_graph(text)


_PATTERN_BUILDERS = {"P": graphs.path, "C": graphs.cycle, "S": graphs.star, "K": graphs.complete}


def parse_pattern(text: str) -> graphs.Graph:
    """``P3``, ``C4``, ``S2``, ``K3`` or a named graph such as ``turan:6,3``."""
    text = text.strip()
    if ":" in text:
        family, _, params = text.partition(":")
        try:
            nums = [int(x) for x in params.split(",") if x]
        except ValueError:
            raise UsageError(f"bad graph parameters in {text!r}") from None
        return graphs.make_named(family, *nums)
    if len(text) >= 2 and text[0] in _PATTERN_BUILDERS and text[1:].isdigit():
        return _PATTERN_BUILDERS[text[0]](int(text[1:]))
    raise UsageError(f"cannot parse graph pattern {text!r}")


def _rats(v: Sequence) -> list:
    return [rat_str(Fraction(x)) for x in v]


def _parse_rat_list(text: str) -> list:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad number list {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_hom(args) -> int:
    g = _read_graph(args.graph)
    h = parse_pattern(args.pattern)
    count = graphs.hom_count(h, g)
    _emit(args, {"pattern": args.pattern, "graph": graphs.graph_to_json(g), "hom": str(count)}, str(count))
    return EXIT_OK


def cmd_pathvec(args) -> int:
    g = _read_graph(args.graph)
    vec = graphs.path_hom_vector(g, args.max_len)
    _emit(args, {"graph": graphs.graph_to_json(g), "paths": [str(x) for x in vec]},
          " ".join(str(x) for x in vec))
    return EXIT_OK


def cmd_check(args) -> int:
    ineq = pathprofile.parse_inequality(args.inequality)
    if args.family:
        fam = catalog.ProfileFamily.parse(args.family)
        res = catalog.check_binomial_in_family(fam, ineq)
        payload = {"family": fam.selector, "inequality": str(ineq), "status": res.status}
        if res.status == "valid":
            payload["certificate"] = res.certificate.to_json()
            text = "valid\n" + "\n".join(f"  {t['coeff']} * {t['generator']}" for t in payload["certificate"])
        else:
            payload["ray"] = _rats(res.ray)
            payload["ray_name"] = res.ray_name
            text = f"invalid\n  ray: ({', '.join(payload['ray'])})"
        _emit(args, payload, text)
        return EXIT_OK if res.status == "valid" else EXIT_NEGATIVE
    if ineq.family != "Paths":
        raise UsageError("non-path inequalities need --family")
    if args.no_witness:
        res, witness = pathprofile.check_path_inequality(ineq, args.n), None
    else:
        res, witness = pathprofile.check_with_witness(ineq, args.max_vertices or 7)
    payload = pathprofile.result_to_json(ineq, res, witness)
    if res.status == "valid":
        lines = ["valid"] + [f"  {t['coeff']} * {t['generator']}" for t in payload["certificate"]]
    else:
        lines = ["invalid", f"  ray: ({', '.join(payload['ray'])})"]
        if witness:
            lines.append(f"  witness: {witness.name} with path counts {list(witness.counts)}; "
                         f"lhs {witness.lhs_value} < rhs {witness.rhs_value}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if res.status == "valid" else EXIT_NEGATIVE


def _parse_source(text: str) -> hde.SourceSpec:
    fam, terms = pathprofile.parse_terms(text)
    if fam != "Paths":
        raise UsageError("sources are products of paths, e.g. P0^2*P5^3")
    if not terms:
        raise UsageError("empty source")
    return hde.SourceSpec.paths(terms)


def _parse_target(text: str) -> int:
    fam, terms = pathprofile.parse_terms(text)
    if fam != "Paths" or len(terms) != 1 or list(terms.values()) != [1]:
        raise UsageError("the target must be a single path such as P4")
    return next(iter(terms))


def cmd_hde(args) -> int:
    source = _parse_source(args.source)
    w = _parse_target(args.target)
    payload = {"source": args.source, "target": args.target, "method": args.method}
    lines = []
    closed = lp = None
    if args.method in ("closed", "both"):
        if len(source.components) != 1:
            raise UsageError("the closed form covers a single path source")
        g, a = source.components[0]
        closed = a * hde.hde_paths_closed_form(g.edge_count, w)
        payload["closed_form"] = rat_str(closed)
        lines.append(f"closed form: {rat_str(closed)}")
    if args.method in ("lp", "both"):
        try:
            lp = hde.hde_lp(source, graphs.path(w))
            payload["lp"] = rat_str(lp)
            lines.append(f"lp: {rat_str(lp)}")
        except hde.EmptyHomSetError:
            payload["lp"] = None
            payload["lp_status"] = "unbounded"
            lines.append("lp: unbounded (a source component has no homomorphism into the target)")
    if args.method == "both":
        agree = lp is not None and lp == closed
        payload["agree"] = agree
        lines.append("methods agree" if agree else "methods DISAGREE")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if agree else EXIT_NEGATIVE
    _emit(args, payload, "\n".join(lines))
    if args.method == "lp" and lp is None:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_trop(args) -> int:
    if args.family.startswith("paths:"):
        try:
            n = int(args.family.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad family selector {args.family!r}") from None
        pc = pathprofile.build_cone_C(n)
        payload = {"family": args.family, "cone": cone_to_json(pc.cone)}
        text = "\n".join(f"{lab}: {' '.join(_rats(row))}" for lab, row in pc.cone.labeled_rows())
        _emit(args, payload, text)
        return EXIT_OK
    fam = catalog.ProfileFamily.parse(args.family)
    payload = catalog.family_to_json(fam)
    coords = payload["coordinates"]
    lines = [f"{fam} in coordinates {', '.join(coords)}"]
    for row in payload["rows"]:
        lines.append(f"  {row['label']}: {' '.join(row['coeffs'])} >= 0")
    lines.append("rays:")
    for r in payload["rays"]:
        lines.append(f"  {r['name']}: ({', '.join(r['ray'])})")
    code = EXIT_OK
    if args.verify:
        report = catalog.verify_family(fam)
        payload["verification"] = report.to_json()
        lines.append(f"verification: {'pass' if report.passed else 'FAIL'}")
        code = EXIT_OK if report.passed else EXIT_NEGATIVE
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_blowup(args) -> int:
    spec = blowup.parse_spec(args.spec)
    violations = spec.violations()
    payload = {"spec": blowup.spec_to_json(spec), "valid": not violations, "violations": violations}
    lines = [f"spec f={spec.f} b={rat_str(spec.b)} s={rat_str(spec.s)} d={','.join(_rats(spec.d))}"]
    if violations:
        lines.append(f"invalid: conditions {violations} fail")
        _emit(args, payload, "\n".join(lines))
        return EXIT_NEGATIVE
    n = args.n if args.n is not None else spec.f
    ray = blowup.limit_ray(spec, n)
    payload["realization"] = spec.realization_path()
    payload["limit_ray"] = _rats(ray)
    lines.append(f"realization: {spec.realization_path()}")
    lines.append(f"limit ray: ({', '.join(payload['limit_ray'])})")
    if spec.realization_path() == "direct":
        wp = blowup.weight_function(spec, check_admissible=False)
        dp = blowup.max_weight_hom_vector(wp, 2 * n + 1)
        payload["weights"] = {"vertices": _rats(wp.vertex_weights), "edges": _rats(wp.edge_weights)}
        payload["dp_agrees"] = tuple(dp) == tuple(ray)
        lines.append(f"vertex weights: {' '.join(payload['weights']['vertices'])}")
        lines.append(f"edge weights: {' '.join(payload['weights']['edges'])}")
        lines.append(f"max-weight DP agrees: {payload['dp_agrees']}")
        if args.m is not None:
            g = blowup.build_blowup_graph(spec, args.m, args.max_vertices or blowup.MAX_BLOWUP_VERTICES)
            counts = graphs.path_hom_vector(g, 2 * n + 1)
            payload["graph"] = {"m": args.m, "vertex_count": g.vertex_count, "edge_count": g.edge_count,
                                "paths": [str(c) for c in counts]}
            lines.append(f"B_{args.m}: {g.vertex_count} vertices, {g.edge_count} edges")
            lines.append(f"path counts: {' '.join(str(c) for c in counts)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    r = _parse_rat_list(args.ray)
    if len(r) % 2 or not r:
        raise UsageError("the ray needs an even number 2n+2 of entries")
    if not pathprofile.in_projection(r):
        payload = {"ray": _rats(r), "status": "not-in-cone"}
        _emit(args, payload, "the point is not in the projected cone")
        return EXIT_NEGATIVE
    parts = pathprofile.decompose_ray(r, check_membership=False)
    total = pathprofile.recombine(parts)
    payload = {"ray": _rats(r), "parts": [p.to_json() for p in parts],
               "recombines": tuple(total) == tuple(Fraction(x) for x in r)}
    lines = []
    for p in parts:
        tag = f"l={p.l}" if p.kind == "rfamily" else "special"
        lines.append(f"{tag}: ({', '.join(_rats(p.ray))})")
    lines.append(f"tropical sum reproduces input: {payload['recombines']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if payload["recombines"] else EXIT_NEGATIVE


def cmd_realize(args) -> int:
    fam = catalog.ProfileFamily.parse(args.family)
    ray_id = args.ray
    if ray_id.isdigit():
        ray_id = int(ray_id)
    elif "," in ray_id:
        ray_id = tuple(_parse_rat_list(ray_id))
    counts = catalog.realizer_counts(fam, ray_id, args.scale)
    logs = catalog.realizer_log_vector(fam, ray_id, args.scale)
    payload = {"family": fam.selector, "ray": args.ray, "scale": args.scale,
               "counts": [str(c) for c in counts], "log_vector": [format(x, ".12g") for x in logs]}
    text = "counts: " + " ".join(str(c) for c in counts) + "\nlog/log n: " + " ".join(payload["log_vector"])
    _emit(args, payload, text)
    return EXIT_OK


# sweep workers are module-level so they can be pickled

def _rows_task(task):
    g, rows, top = task
    counts = graphs.path_hom_vector(g, top)
    if any(c == 0 for c in counts):
        return None
    bad = []
    for label, row in rows:
        lhs = rhs = 1
        for k, a in enumerate(row):
            if a > 0:
                lhs *= counts[k] ** int(a)
            elif a < 0:
                rhs *= counts[k] ** int(-a)
        if lhs < rhs:
            bad.append(label)
    return (graphs.graph_to_json(g), bad)


def _decompose_task(task):
    n, seed = task
    rng = random.Random(seed)
    r = pathprofile.random_projected_point(n, rng)
    parts = pathprofile.decompose_ray(r, check_membership=False)
    ok = pathprofile.recombine(parts) == r and all(
        pathprofile.rfamily_check(p.spec) for p in parts if p.kind == "rfamily")
    return [str(x) for x in r], ok


def _blowup_task(task):
    f, seed = task
    rng = random.Random(seed)
    spec = blowup.random_valid_spec(rng, f)
    wp = blowup.weight_function(spec, check_admissible=False)
    ok = tuple(blowup.max_weight_hom_vector(wp, 2 * f + 1)) == tuple(blowup.limit_ray(spec, f))
    return blowup.spec_to_json(spec), ok


def _run_tasks(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def cmd_sweep(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "rows":
        n = args.n if args.n is not None else 1
        rows = pathprofile.cone_rows(n)
        top = 4 * n + 3
        mv = args.max_vertices or 6
        tasks = [(g, rows, top) for g in graphs.all_graphs(mv, allow_seven=mv >= 7) if g.edge_count]
        results = [r for r in _run_tasks(_rows_task, tasks, args.jobs) if r is not None]
        failures = [{"graph": g, "rows": bad} for g, bad in results if bad]
        payload = {"kind": "rows", "n": n, "max_vertices": mv, "graphs_checked": len(results),
                   "rows": len(rows), "violations": failures}
        text = f"checked {len(rows)} rows of C({n}) on {len(results)} graphs: {len(failures)} violating graphs"
    elif args.kind == "decompose":
        n = args.n if args.n is not None else 1
        tasks = [(n, rng.getrandbits(64)) for _ in range(args.count)]
        results = _run_tasks(_decompose_task, tasks, args.jobs)
        failures = [r for r, ok in results if not ok]
        payload = {"kind": "decompose", "n": n, "seed": args.seed, "points": len(results), "failures": failures}
        text = f"decomposed {len(results)} random points of proj(C({n})): {len(failures)} failures"
    else:
        f = args.n if args.n is not None else 6
        tasks = [(f, rng.getrandbits(64)) for _ in range(args.count)]
        results = _run_tasks(_blowup_task, tasks, args.jobs)
        failures = [s for s, ok in results if not ok]
        payload = {"kind": "blowup", "f": f, "seed": args.seed, "specs": len(results), "failures": failures}
        text = f"compared DP and closed form on {len(results)} random specs: {len(failures)} failures"
    _emit(args, payload, text)
    return EXIT_OK if not failures else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# parser

def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _positive_int(text: str) -> int:
    v = _nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _seed(text: str) -> int:
    v = _nonneg_int(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--graph", metavar="FILE", help="graph file ('-' for stdin)")
    common.add_argument("--family", metavar="SELECTOR", help="profile family such as even-cycles:4")
    common.add_argument("--seed", type=_seed, default=0, help="random seed (u64)")
    common.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for sweeps")
    common.add_argument("--max-vertices", type=_positive_int, default=None, help="size bound for searches")

    p = _Parser(prog="pathtrop", description="Binomial inequalities between graph homomorphism numbers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("hom", parents=[common], help="count homomorphisms from a pattern into --graph")
    s.add_argument("pattern", help="P3, C4, S2, K3 or family:params")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("pathvec", parents=[common], help="hom(P_0..P_k; --graph)")
    s.add_argument("--max-len", type=_nonneg_int, default=7)
    s.set_defaults(func=cmd_pathvec)

    s = sub.add_parser("check", parents=[common], help="decide a binomial inequality")
    s.add_argument("inequality", help='e.g. "P0*P2 >= P1^2"')
    s.add_argument("--n", type=_nonneg_int, default=None, help="lift size for path inequalities")
    s.add_argument("--no-witness", action="store_true", help="skip the witness search")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("hde", parents=[common], help="homomorphism domination exponent for paths")
    s.add_argument("--source", required=True, help="e.g. P3 or P0^2*P5^3")
    s.add_argument("--target", required=True, help="e.g. P4")
    s.add_argument("--method", choices=("closed", "lp", "both"), default="both")
    s.set_defaults(func=cmd_hde)

    s = sub.add_parser("trop", parents=[common], help="show a tropicalization cone")
    s.add_argument("--verify", action="store_true", help="re-verify rays and hulls")
    s.set_defaults(func=cmd_trop)

    s = sub.add_parser("blowup", parents=[common], help="blow-up spec: weights, limit ray, graph")
    s.add_argument("spec", help='e.g. "b=34 s=30 d=4,3,3,0,1,3,4"')
    s.add_argument("--n", type=_nonneg_int, default=None, help="ray length 2n+2 (default f)")
    s.add_argument("--m", type=_positive_int, default=None, help="build B_m and count paths")
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("decompose", parents=[common], help="split a point of proj(C) into R-family rays")
    s.add_argument("ray", help="comma-separated rationals r_0,...,r_{2n+1}")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("realize", parents=[common], help="closed-form realizer of a family ray")
    s.add_argument("--ray", required=True, help="ray index or name; for matroid:m also a point a0,a0+a1,...")
    s.add_argument("--scale", type=_positive_int, default=2 ** 20, help="scale parameter n")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("sweep", parents=[common], help="exhaustive or seeded randomized checks")
    s.add_argument("--kind", choices=("rows", "decompose", "blowup"), default="rows")
    s.add_argument("--n", type=_nonneg_int, default=None, help="cone size n (rows, decompose) or f (blowup)")
    s.add_argument("--count", type=_positive_int, default=100, help="random samples")
    s.set_defaults(func=cmd_sweep)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("trop", "realize") and not args.family:
            raise UsageError(f"{args.command} needs --family")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"pathtrop: error: {exc}\n")
        return EXIT_USAGE
    except (graphs.GraphError, pathprofile.InequalityError, catalog.CatalogError,
            blowup.BlowUpError, hde.HdeError) as exc:
        sys.stderr.write(f"pathtrop: error: {exc}\n")
        return EXIT_USAGE
    except graphs.ResourceLimitError as exc:
        sys.stderr.write(f"pathtrop: resource limit: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
