"""Command-line entry point: ``coarsepath params | verify | witness``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .decomposition import exact_path_length, set_diameter, validate
from .domination import (
    DominationWitness,
    dpr,
    exact_dsp,
    heuristic_dsp,
    is_k_dominating_pair,
    is_shortest_path,
    path_eccentricity,
)
from .enumeration import MAX_ENUMERATION_N
from .errors import CoarsePathError, ExtractionFailed, PreconditionFailed, TooLarge, TooManyPaths
from .graph import Graph, load_graph, parse_graph6
from .harness import (
    PARAMETERS,
    Caps,
    compute_all_parameters,
    exhaustive_corpus,
    pcc_with_layout,
    random_corpus,
    reports_jsonl,
    summary_csv,
    verify_graphs,
    violations_json,
)
from .layering import approx_adc, best_extended_layering, distortion, exact_adc, extended_layering
from .mccarty import extract_fat_minor, verify_fat_minor
from .powers import verify_ccp
from .quasi_isometry import qi_to_json, quasi_isometry_to_path, verify_qi

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
WITNESS_KINDS = ("decomposition", "caterpillar", "qi", "ccp", "dompair", "dsp", "fatminor")


def _positive_or_zero(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="graph file ('-' for stdin)")
    p.add_argument("--inline", help="graph given directly on the command line")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")


def _add_caps(p: argparse.ArgumentParser) -> None:
    defaults = Caps()
    p.add_argument("--pl-max-n", type=_positive_or_zero, default=defaults.pl_max_n)
    p.add_argument("--adc-max-n", type=_positive_or_zero, default=defaults.adc_max_n)
    p.add_argument("--dsp-path-cap", type=_positive_or_zero, default=defaults.dsp_path_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coarsepath", description="Path-length and coarsely equivalent graph parameters.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="compute every parameter of a graph")
    _add_input(p)
    _add_caps(p)
    p.add_argument("--output", choices=("json", "csv", "text"), default="json")

    v = sub.add_parser("verify", help="check the inequality ledger over a corpus")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=int, metavar="N", help="all connected graphs on 1..N vertices")
    src.add_argument("--random", type=int, metavar="COUNT", help="COUNT random connected graphs")
    v.add_argument("--n", default="8:14", help="vertex count or range a:b for --random")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--p", type=float, default=0.35, help="edge probability for --random")
    v.add_argument("--out", type=Path, help="directory for reports.jsonl, summary.csv, violations.json")
    _add_caps(v)

    w = sub.add_parser("witness", help="emit a verified witness")
    _add_input(w)
    _add_caps(w)
    w.add_argument("--kind", choices=WITNESS_KINDS, required=True)
    w.add_argument("--K", type=int, default=1, help="fatness for --kind fatminor")
    return parser


def _caps(args) -> Caps:
    return Caps(args.pl_max_n, args.adc_max_n, args.dsp_path_cap)


def _read_graphs(args, parser: argparse.ArgumentParser) -> list[tuple[str, Graph]]:
    if (args.graph is None) == (args.inline is None):
        parser.error("give exactly one of a graph file or --inline")
    if args.inline is not None:
        return [("inline", load_graph(args.inline, args.format))]
    text = sys.stdin.read() if args.graph == "-" else Path(args.graph).read_text()
    if args.format == "edgelist":
        return [(args.graph, load_graph(text, "edgelist"))]
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise CoarsePathError(f"{args.graph}: no graphs found")
    if len(lines) == 1:
        return [(args.graph, parse_graph6(lines[0]))]
    return [(f"{args.graph}:{i}", parse_graph6(line)) for i, line in enumerate(lines)]


def _render_text(report) -> str:
    lines = [f"id: {report.id}", f"graph6: {report.graph6}", f"n: {report.n}"]
    for name in PARAMETERS:
        value = getattr(report, name)
        if value is None:
            lines.append(f"{name}: null ({report.absent.get(name, 'not computed')})")
        else:
            lines.append(f"{name}: {value}")
    return "\n".join(lines) + "\n"


def cmd_params(args, parser) -> int:
    graphs = _read_graphs(args, parser)
    caps = _caps(args)
    reports = [compute_all_parameters(g, caps, gid) for gid, g in graphs]
    if args.output == "json":
        sys.stdout.write(reports_jsonl(reports))
    elif args.output == "csv":
        sys.stdout.write(summary_csv(reports))
    else:
        sys.stdout.write("\n".join(_render_text(r) for r in reports))
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    a = int(lo)
    b = int(hi) if hi else a
    if a < 1 or b < a:
        raise ValueError(text)
    return a, b


def cmd_verify(args, parser) -> int:
    if args.exhaustive is not None:
        if not 1 <= args.exhaustive <= MAX_ENUMERATION_N:
            parser.error(f"--exhaustive must lie in 1..{MAX_ENUMERATION_N}")
        graphs = exhaustive_corpus(args.exhaustive)
    else:
        if args.random < 0:
            parser.error("--random needs a nonnegative count")
        if not 0 < args.p <= 1:
            parser.error("--p must lie in (0, 1]")
        try:
            lo, hi = _parse_range(args.n)
        except ValueError:
            parser.error(f"bad --n value {args.n!r}; use N or a:b")
        graphs = random_corpus(args.random, lo, hi, args.seed, args.p)
    summary = verify_graphs(graphs, _caps(args))
    skipped = sum(c["skipped"] for c in summary.status_counts.values())
    print(f"graphs: {len(summary.reports)}")
    print(f"ledger rows: {len(summary.status_counts)}")
    print(f"row checks skipped (absent fields): {skipped}")
    print(f"findings: {len(summary.findings)}")
    print(f"violations: {len(summary.violations)}")
    for v in summary.violations:
        print(str(v), file=sys.stderr)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "reports.jsonl").write_text(reports_jsonl(summary.reports))
        (args.out / "summary.csv").write_text(summary_csv(summary.reports))
        (args.out / "violations.json").write_text(violations_json(summary))
    return EXIT_OK if summary.clean else EXIT_VIOLATIONS


def _witness(g: Graph, kind: str, caps: Caps, K: int) -> tuple[dict, bool]:
    """Build a witness and re-check it with the matching verifier."""
    if kind == "decomposition":
        try:
            value, pd = exact_path_length(g, caps.pl_max_n)
            source = "exact"
        except TooLarge:
            _, _, s = best_extended_layering(g)
            pd, value, _ = extended_layering(g, s)
            source = "extended_layering"
        length = max(set_diameter(g, sorted(b)) for b in pd.bags)
        ok = not validate(g, pd) and length == value
        return {**pd.to_json(), "length": length, "source": source}, ok
    if kind == "caterpillar":
        try:
            k, t = exact_adc(g, caps.adc_max_n)
            source = "exact"
        except TooLarge:
            t, k = approx_adc(g)
            source = "canonical"
        return {**t.to_json(), "distortion": k, "source": source}, distortion(g, t) == k
    if kind == "qi":
        p, m = quasi_isometry_to_path(g)
        return qi_to_json(p, m), bool(verify_qi(g, p, m))
    if kind == "ccp":
        _, layout = pcc_with_layout(g)
        return layout.to_json(), bool(verify_ccp(g, layout.sigma, layout.mu))
    if kind == "dompair":
        k, (x, y) = dpr(g)
        ok = g.n == 1 or is_k_dominating_pair(g, x, y, k)
        return DominationWitness("pair", (x, y), k).to_json(), ok
    if kind == "dsp":
        try:
            k, path = exact_dsp(g, caps.dsp_path_cap)
        except TooManyPaths:
            k, path = heuristic_dsp(g)
        ok = is_shortest_path(g, path) and path_eccentricity(g, path) == k
        return DominationWitness("path", path, k).to_json(), ok
    if kind == "fatminor":
        w = extract_fat_minor(g, K)
        return w.to_json(), bool(verify_fat_minor(g, w))
    raise ValueError(kind)


def cmd_witness(args, parser) -> int:
    graphs = _read_graphs(args, parser)
    caps = _caps(args)
    out = []
    for _, g in graphs:
        try:
            body, ok = _witness(g, args.kind, caps, args.K)
        except PreconditionFailed as exc:
            print(f"precondition failed: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        except ExtractionFailed as exc:
            print(f"extraction failed: {exc}", file=sys.stderr)
            return EXIT_VIOLATIONS
        if not ok:
            print(f"refusing to emit a {args.kind} witness that fails verification", file=sys.stderr)
            return EXIT_VIOLATIONS
        body["verified"] = True
        out.append(json.dumps(body))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"params": cmd_params, "verify": cmd_verify, "witness": cmd_witness}
    try:
        return handlers[args.command](args, parser)
    except (CoarsePathError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
