"""Parameter reports for whole corpora and the inequality checks run on them."""

from __future__ import annotations

import csv
import io
import json
import os
import random
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .decomposition import exact_path_breadth, exact_path_length
from .domination import DEFAULT_PATH_CAP, DominationWitness, dpr, exact_dsp, heuristic_dsp
from .enumeration import enumerate_connected_graphs, random_connected_graph
from .errors import TooLarge, TooManyPaths
from .graph import Graph, parse_graph6, power, to_graph6
from .layering import DEFAULT_ADC_CAP, approx_adc, best_extended_layering, exact_adc, layering, min_layering_length
from .ledger import LedgerRow, RowOutcome, check_row, load_rows
from .mccarty import fat_minor_lower_bound, mci
from .powers import LinearLayout, cocomparability_layout, pat
from .quasi_isometry import quasi_isometry_to_path

PARAMETERS = (
    "pl", "pb", "delta", "rho", "adc", "pat", "pcc", "dpr", "dsp", "mci", "mfi_lower_bound",
)
DIAGNOSTICS = ("adc_approx", "min_layer_length", "pat_layer_length", "qi_C", "dsp_heuristic")
THREADS_ENV = "COARSEPATH_THREADS"


@dataclass(frozen=True)
class Caps:
    pl_max_n: int = 9
    adc_max_n: int = DEFAULT_ADC_CAP
    dsp_path_cap: int = DEFAULT_PATH_CAP

    def __post_init__(self) -> None:
        if self.pl_max_n < 0 or self.adc_max_n < 0 or self.dsp_path_cap < 0:
            raise ValueError("caps must be nonnegative")


@dataclass
class ParameterReport:
    id: str
    graph6: str
    n: int
    pl: Optional[int] = None
    pb: Optional[int] = None
    delta: Optional[int] = None
    rho: Optional[int] = None
    adc: Optional[int] = None
    pat: Optional[int] = None
    pcc: Optional[int] = None
    dpr: Optional[int] = None
    dsp: Optional[int] = None
    mci: Optional[int] = None
    mfi_lower_bound: Optional[int] = None
    adc_approx: Optional[int] = None
    min_layer_length: Optional[int] = None
    pat_layer_length: Optional[int] = None
    qi_C: Optional[int] = None
    dsp_heuristic: Optional[int] = None
    next_power_cocomparable: Optional[bool] = None
    witnesses: dict = field(default_factory=dict)
    absent: dict = field(default_factory=dict)

    def values(self) -> dict[str, Optional[int]]:
        """Field values under the names used by ledger expressions."""
        out = {name: getattr(self, name) for name in PARAMETERS + DIAGNOSTICS}
        out["mfi_lb"] = out.pop("mfi_lower_bound")
        out["n"] = self.n
        return out

    def to_json(self) -> dict:
        out = {"id": self.id, "graph6": self.graph6, "n": self.n}
        for name in PARAMETERS + DIAGNOSTICS:
            out[name] = getattr(self, name)
        out["next_power_cocomparable"] = self.next_power_cocomparable
        out["absent"] = dict(sorted(self.absent.items()))
        out["witnesses"] = self.witnesses
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ParameterReport":
        kwargs = {k: data.get(k) for k in ("id", "graph6", "n", *PARAMETERS, *DIAGNOSTICS)}
        return cls(
            **kwargs,
            next_power_cocomparable=data.get("next_power_cocomparable"),
            witnesses=data.get("witnesses", {}),
            absent=data.get("absent", {}),
        )


def pcc_with_layout(g: Graph) -> tuple[int, LinearLayout]:
    """Least k with G^k cocomparability, and an ordering valid for G at power k."""
    k = 1
    while True:
        layout = cocomparability_layout(power(g, k))
        if layout is not None:
            return k, LinearLayout(layout.sigma, k)
        k += 1


def compute_all_parameters(g: Graph, caps: Caps = Caps(), graph_id: str = "") -> ParameterReport:
    """Every parameter of ``g``; capped oracles leave their field absent with a reason."""
    rep = ParameterReport(graph_id, to_graph6(g), g.n)
    wit = rep.witnesses

    try:
        rep.pl, pd = exact_path_length(g, caps.pl_max_n)
        wit["pl"] = pd.to_json()
        rep.pb, pd = exact_path_breadth(g, caps.pl_max_n)
        wit["pb"] = pd.to_json()
    except TooLarge as exc:
        rep.absent.setdefault("pl", str(exc))
        rep.absent.setdefault("pb", str(exc))

    rep.delta, rep.rho, s = best_extended_layering(g)
    wit["delta"] = {"start": s}

    t, rep.adc_approx = approx_adc(g)
    rep.min_layer_length = min_layering_length(g)
    try:
        rep.adc, t = exact_adc(g, caps.adc_max_n)
        wit["adc"] = t.to_json()
    except TooLarge as exc:
        rep.absent["adc"] = str(exc)

    _, m = quasi_isometry_to_path(g)
    if m.C.denominator != 1:
        raise RuntimeError("unit-weight projection produced a fractional constant")
    rep.qi_C = m.C.numerator

    rep.pat, admissible = pat(g)
    rep.pat_layer_length = layering(g, admissible).length
    wit["pat"] = {"admissible": admissible}
    rep.pcc, layout = pcc_with_layout(g)
    wit["pcc"] = layout.to_json()
    rep.next_power_cocomparable = cocomparability_layout(power(g, rep.pat + 1)) is not None

    k, pair = dpr(g)
    rep.dpr = k
    wit["dpr"] = DominationWitness("pair", pair, k).to_json()
    try:
        rep.dsp, path = exact_dsp(g, caps.dsp_path_cap)
        wit["dsp"] = DominationWitness("path", path, rep.dsp).to_json()
    except TooManyPaths as exc:
        rep.absent["dsp"] = str(exc)
    rep.dsp_heuristic, _ = heuristic_dsp(g)

    rep.mci, cert = mci(g)
    wit["mci"] = cert.to_json()
    rep.mfi_lower_bound, fat = fat_minor_lower_bound(g)
    wit["mfi_lower_bound"] = fat.to_json() if fat else None
    return rep


@dataclass(frozen=True)
class LedgerViolation:
    row: str
    graph_id: str
    graph6: str
    lhs: int
    rhs: int
    values: dict

    def to_json(self) -> dict:
        return {
            "inequality": self.row,
            "id": self.graph_id,
            "graph6": self.graph6,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "values": self.values,
        }

    def __str__(self) -> str:
        return f"{self.row} violated on {self.graph6} ({self.graph_id}): lhs={self.lhs}, rhs={self.rhs}"


def ledger_outcomes(report: ParameterReport, rows: Optional[Sequence[LedgerRow]] = None) -> list[RowOutcome]:
    rows = load_rows() if rows is None else rows
    values = report.values()
    return [check_row(row, values) for row in rows]


def _violation(report: ParameterReport, outcome: RowOutcome) -> LedgerViolation:
    return LedgerViolation(
        outcome.row.name, report.id, report.graph6, outcome.lhs, outcome.rhs, report.values()
    )


def check_inequalities(report: ParameterReport, rows: Optional[Sequence[LedgerRow]] = None) -> list[LedgerViolation]:
    """Failed non-advisory rows; rows whose fields are absent are skipped."""
    return [
        _violation(report, o)
        for o in ledger_outcomes(report, rows)
        if o.status == "fail" and not o.row.advisory
    ]


@dataclass
class VerificationSummary:
    reports: list[ParameterReport]
    violations: list[LedgerViolation]
    findings: list[str]
    status_counts: dict[str, Counter]

    @property
    def clean(self) -> bool:
        return not self.violations


def exhaustive_corpus(n_max: int) -> list[tuple[str, Graph]]:
    out = []
    for n in range(1, n_max + 1):
        for i, g in enumerate(enumerate_connected_graphs(n)):
            out.append((f"n{n}-{i}", g))
    return out


def random_corpus(count: int, n_lo: int, n_hi: int, seed: int, p: float = 0.35) -> list[tuple[str, Graph]]:
    """Graph ``i`` depends only on ``(seed, i)``."""
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        n = rng.randint(n_lo, n_hi)
        out.append((f"r{seed}-{i}", random_connected_graph(n, p, f"{seed}:{i}:edges")))
    return out


def _report_task(args: tuple[str, str, Caps]) -> ParameterReport:
    graph_id, g6, caps = args
    return compute_all_parameters(parse_graph6(g6), caps, graph_id)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_reports(graphs: Iterable[tuple[str, Graph]], caps: Caps = Caps(), threads: Optional[int] = None) -> list[ParameterReport]:
    """Reports in input order, computed in up to ``threads`` worker processes."""
    tasks = [(gid, to_graph6(g), caps) for gid, g in graphs]
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(tasks) < 2:
        return [_report_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_report_task, tasks, chunksize=max(1, len(tasks) // (threads * 8))))


def verify_reports(reports: Sequence[ParameterReport], rows: Optional[Sequence[LedgerRow]] = None) -> VerificationSummary:
    rows = load_rows() if rows is None else rows
    violations: list[LedgerViolation] = []
    findings: list[str] = []
    counts: dict[str, Counter] = {row.name: Counter() for row in rows}
    for rep in reports:
        for outcome in ledger_outcomes(rep, rows):
            counts[outcome.row.name][outcome.status] += 1
            if outcome.status != "fail":
                continue
            if outcome.row.advisory:
                findings.append(f"advisory row {outcome.row.name} fails on {rep.graph6}")
            else:
                violations.append(_violation(rep, outcome))
        if rep.next_power_cocomparable is False:
            findings.append(f"power pat+1 of {rep.graph6} is not cocomparability")
    return VerificationSummary(list(reports), violations, findings, counts)


def verify_graphs(graphs: Iterable[tuple[str, Graph]], caps: Caps = Caps(), threads: Optional[int] = None) -> VerificationSummary:
    return verify_reports(run_reports(graphs, caps, threads))


def reports_jsonl(reports: Sequence[ParameterReport]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=False) + "\n" for r in reports)


def summary_csv(reports: Sequence[ParameterReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ("id", "graph6", "n", *PARAMETERS)
    writer.writerow(cols)
    for r in reports:
        writer.writerow(["" if getattr(r, c) is None else getattr(r, c) for c in cols])
    return buf.getvalue()


def violations_json(summary: VerificationSummary) -> str:
    body = {
        "violations": [v.to_json() for v in summary.violations],
        "findings": summary.findings,
        "rows": {name: dict(sorted(c.items())) for name, c in summary.status_counts.items()},
    }
    return json.dumps(body, indent=2) + "\n"
