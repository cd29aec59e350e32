"""Command-line surface: decisions, oracles, generators, Turán checks and verification campaigns"""
import argparse
import inspect
import json
import sys
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

sys.path.append(str(Path(__file__).parent.parent))

from config.settings import DEFAULT_JOBS, DEFAULT_SEED, EXHAUSTIVE_MAX_N
from src.certificates import Certificate, load_certificate, save_certificate, validate_certificate
from src.decide import certify
from src.families import FAMILY_KINDS, FamilySpecError, build_family
from src.graph_core import Graph, GraphError, parse_edge_list, read_graph, serialize_edge_list, to_graph6
from src.harness import CAMPAIGNS, random_graph_under_preconditions, replay_violation
from src.oracle import circumference, longest_path_order, longest_uv_path_order
from src.pathver import certify_path
from src.system_health_checker import SystemHealthChecker
from src.turan import build_turan_extremal, turan_bound, verify_turan

EXIT_OK, EXIT_T0, EXIT_ERROR = 0, 1, 2
FAMILY_PARAMS = ("n", "ell", "a", "s", "t", "k")


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _emit_json(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def _load_graph(path: str) -> Graph:
    if path == "-":
        return parse_edge_list(sys.stdin.buffer.read())
    return read_graph(path)


def _write_graph(G: Graph, out: Optional[str], fmt: str) -> None:
    data = to_graph6(G) + b"\n" if fmt == "graph6" else serialize_edge_list(G)
    if out:
        Path(out).write_bytes(data)
        _status(f"✅ Wrote {G.order} vertices, {G.size} edges to {out}")
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _finish_certificate(cert: Certificate, args: argparse.Namespace) -> int:
    if args.out:
        save_certificate(args.out, cert)
        _status(f"✅ Certificate saved to {args.out}")
    if args.json:
        _emit_json(cert.to_json())
    else:
        _status(f"📊 {cert.verdict}: threshold {cert.threshold}, {cert.evidence['kind']} evidence ({cert.witness_source})")
    return EXIT_OK if cert.verdict == "T1" else EXIT_T0


def cmd_decide(args: argparse.Namespace) -> int:
    G = _load_graph(args.input)
    if args.min_form:
        cert = certify(G, want_witness=args.witness, problem="min-cycle", cap=args.cap, budget=args.budget, verbose=not args.quiet)
    else:
        if args.k is None:
            raise GraphError("--k is required unless --min-form is given")
        cert = certify(G, args.k, args.witness, args.mode, cap=args.cap, budget=args.budget, verbose=not args.quiet)
    return _finish_certificate(cert, args)


def cmd_path_decide(args: argparse.Namespace) -> int:
    G = _load_graph(args.input)
    cert = certify_path(G, args.k, args.witness, cap=args.cap, budget=args.budget)
    return _finish_certificate(cert, args)


def cmd_oracle(args: argparse.Namespace) -> int:
    G = _load_graph(args.input)
    if args.uv:
        u, v = args.uv
        result, name = longest_uv_path_order(G, u, v, cap=args.cap), "longest_uv_path_order"
    elif args.longest_path:
        result, name = longest_path_order(G, cap=args.cap), "longest_path_order"
    else:
        result, name = circumference(G, cap=args.cap), "circumference"
    witness = result.witness.to_json() if result.witness is not None else None
    if args.json:
        _emit_json({"quantity": name, "value": result.value, "witness": witness})
    else:
        print(f"{name} = {result.value}")
    return EXIT_OK


def _family_spec(args: argparse.Namespace):
    cls = FAMILY_KINDS[args.family]
    values = {}
    for f in fields(cls):
        value = getattr(args, f.name, None)
        if value is None:
            raise FamilySpecError(f"family {args.family} needs --{f.name}")
        values[f.name] = value
    return cls(**values)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.random:
        if args.n is None or args.k is None:
            raise GraphError("--random needs --n and --k")
        G = random_graph_under_preconditions(args.n, args.k, seed=args.seed)
    elif args.family:
        G, roles = build_family(_family_spec(args))
        if args.roles:
            Path(args.roles).write_text(json.dumps({str(v): role for v, role in enumerate(roles)}, indent=2) + "\n")
    else:
        raise GraphError("choose --family KIND or --random")
    _write_graph(G, args.out, args.format)
    return EXIT_OK


def cmd_turan(args: argparse.Namespace) -> int:
    if args.verify:
        report = verify_turan(args.n, args.k, budget=args.budget, jobs=args.jobs, confirm_extremal=not args.no_extremal)
        if args.json:
            _emit_json(report.to_json())
        else:
            _status(f"📊 ex({args.n}, {{S_{args.k + 2}, P_{2 * args.k + 1}}}) = {report.bound}")
            _status(f"   construction: {report.construction_edges} edges, parts {report.construction_parts}")
            if report.extremal_skipped:
                _status("⚠️ Extremal enumeration skipped: search budget exceeded")
            elif report.extremal_graphs is not None:
                _status(f"   extremal graphs found: {report.extremal_graphs}")
        _status("✅ Turán bound verified" if report.verified else "❌ Turán verification failed")
        return EXIT_OK if report.verified else EXIT_T0
    G = build_turan_extremal(args.n, args.k)
    _status(f"📊 bound floor(kn/2) = {turan_bound(args.n, args.k)}, construction has {G.size} edges")
    _write_graph(G, args.out, args.format)
    return EXIT_OK


def _campaign_kwargs(args: argparse.Namespace, campaign) -> Dict[str, Any]:
    ks = args.k
    candidates = {
        "n_max": args.max_n,
        "max_n": args.max_n,
        "max_order": args.max_n,
        "sample_max_n": args.max_n,
        "k_range": ks,
        "ks": ks,
        "k": ks[0] if ks and len(ks) == 1 else None,
        "seed": args.seed,
        "jobs": args.jobs,
        "all_k": args.all_k or None,
        "allow_large": args.allow_large or None,
        "samples": args.samples,
        "mutations": args.samples,
        "inject_fault": args.inject_fault or None,
        "quiet": args.quiet or None,
    }
    accepted = inspect.signature(campaign).parameters
    return {name: value for name, value in candidates.items() if name in accepted and value is not None}


def cmd_verify(args: argparse.Namespace) -> int:
    campaign = CAMPAIGNS[args.campaign]
    report = campaign(**_campaign_kwargs(args, campaign))
    if args.save is not None:
        path = report.save(args.save or None)
        _status(f"✅ Report saved to {path}")
    if args.json:
        _emit_json(report.to_json())
    return EXIT_OK if report.passed else EXIT_T0


def cmd_replay(args: argparse.Namespace) -> int:
    report = json.loads(Path(args.report).read_text())
    entries: List[Dict[str, Any]] = report.get("violations", [])
    if args.index is not None:
        entries = entries[args.index : args.index + 1]
    genuine = 0
    for entry in entries:
        result = replay_violation(entry)
        genuine += result.ok
        mark = "❌ genuine" if result.ok else "✅ not reproduced"
        _status(f"{mark} {entry.get('key')}: {result.diagnostic}")
    _status(f"📊 {genuine}/{len(entries)} violation(s) reproduced")
    return EXIT_T0 if genuine else EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    cert = load_certificate(args.certificate)
    result = validate_certificate(G, cert)
    if args.json:
        _emit_json({"valid": result.ok, "diagnostic": result.diagnostic})
    _status("✅ Certificate is valid" if result else f"❌ Certificate rejected: {result.diagnostic}")
    return EXIT_OK if result else EXIT_T0


def cmd_health(args: argparse.Namespace) -> int:
    checker = SystemHealthChecker()
    healthy = checker.quick_check() if args.quick else checker.full_health_check()
    _status("✅ System is healthy" if healthy else "❌ System needs attention")
    return EXIT_OK if healthy else EXIT_T0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="long-cycle-certifier",
        description="Certify long cycles and paths in graphs meeting a near-minimum-degree condition",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_decision(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True, help="graph file (edge list or graph6), - for stdin")
        p.add_argument("--witness", action=argparse.BooleanOptionalAction, default=True, help="attach a witness for T1")
        p.add_argument("--json", action="store_true", help="print the certificate JSON to stdout")
        p.add_argument("--out", help="also save the certificate to this file")
        p.add_argument("--cap", type=int, help="largest order handed to the exact oracle")
        p.add_argument("--budget", type=int, help="step budget of the long-cycle search")
        p.add_argument("--quiet", action="store_true")
        return p

    p = graph_decision("decide", "decide c(G) >= 2k+2 (or min{2δ+2, n} with --min-form)")
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=("auto", "fast", "exact"), default="auto")
    p.add_argument("--min-form", action="store_true", help="decide c(G) >= min{2δ+2, n}")
    p.set_defaults(handler=cmd_decide)

    p = graph_decision("path-decide", "decide whether G has a path on min{n, 2k+3} vertices")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_path_decide)

    p = sub.add_parser("oracle", help="exact circumference or longest-path order of a small graph")
    p.add_argument("--input", required=True)
    quantity = p.add_mutually_exclusive_group()
    quantity.add_argument("--circumference", action="store_true", help="(default)")
    quantity.add_argument("--longest-path", action="store_true")
    quantity.add_argument("--uv", type=int, nargs=2, metavar=("U", "V"))
    p.add_argument("--cap", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("gen", help="build a family member or a random precondition graph")
    p.add_argument("--family", choices=sorted(FAMILY_KINDS))
    p.add_argument("--random", action="store_true")
    for name in FAMILY_PARAMS:
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--roles", help="write the vertex roles of a family member as JSON")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("turan", help="Turán number of {S_{k+2}, P_{2k+1}}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    action = p.add_mutually_exclusive_group(required=True)
    action.add_argument("--construct", action="store_true")
    action.add_argument("--verify", action="store_true")
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    p.add_argument("--no-extremal", action="store_true", help="skip enumerating the extremal graphs")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_turan)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("campaign", choices=sorted(CAMPAIGNS))
    p.add_argument("--max-n", type=int, default=None, help=f"largest order (exhaustive default {EXHAUSTIVE_MAX_N})")
    p.add_argument("--k", type=int, nargs="+", help="restrict to these k")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    p.add_argument("--samples", type=int, help="random instances (mutations for certificate-fuzz)")
    p.add_argument("--all-k", action="store_true", help="check every admissible k, not only the largest")
    p.add_argument("--allow-large", action="store_true", help="allow exhaustive enumeration at n = 8")
    p.add_argument("--inject-fault", action="store_true", help="flip one seeded verdict (harness self-test)")
    p.add_argument("--save", nargs="?", const="", help="save the report (default path under reports/)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("replay", help="re-run the violations recorded in a report")
    p.add_argument("--report", required=True)
    p.add_argument("--index", type=int)
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("check", help="validate a certificate file against a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--certificate", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("health", help="self-check of dependencies, oracles and the harness")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(handler=cmd_health)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Exit 0 for T1 or a pass, 1 for T0 or a failed check, 2 for input and precondition errors"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    try:
        return args.handler(args)
    except (GraphError, OSError, ValueError, KeyError) as e:
        _status(f"❌ {e}")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
