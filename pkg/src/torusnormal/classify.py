"""Hereditary normality of weight sets of simple B/C/D modules.

Positive weights come from a fixed table (closed under duality) and are
certified by recomputation.  Every other dominant weight is sent to an
explicit non-saturated set from :mod:`torusnormal.certify`; the chosen
vectors are checked for membership in ``M(lambda)`` before a verdict is
issued, so a wrong dispatch fails loudly instead of giving a wrong answer.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from . import certify
from .certify import HnCertificate, NssCertificate
from .rootsystem import (RootSystem, Weight, dual_weight, fundamental_weight, in_weight_lattice, is_dominant,
                         simple_reflections, table_name, weight_set, weyl_group_arrays)
from .saturation import DEFAULT_BUDGET, BudgetExceeded, StrategyNotApplicable, VectorSet, is_hereditarily_normal

HN = "HereditarilyNormal"
NOT_HN = "NotHereditarilyNormal"
UNDECIDED = "Undecided"


class DispatchError(RuntimeError):
    """A selected counterexample failed its membership or validity check."""


@dataclass(frozen=True)
class TableEntry:
    family: str
    min_rank: int
    max_rank: Optional[int]
    fundamental: int  # k in k-th fundamental weight; 0 marks 2*pi_2 of B2
    method: str

    def weight(self, n: int) -> Weight:
        rs = RootSystem(self.family, n)
        if self.fundamental == 0:
            return Weight(tuple(2 * x for x in fundamental_weight(rs, 2).doubled))
        return fundamental_weight(rs, self.fundamental)

    def applies(self, rs: RootSystem) -> bool:
        return rs.family == self.family and rs.n >= self.min_rank and (self.max_rank is None or rs.n <= self.max_rank)

    @property
    def label(self) -> str:
        w = "2pi_2" if self.fundamental == 0 else f"pi_{self.fundamental}"
        if self.max_rank is None:
            return f"{self.family}_n (n>={self.min_rank}) {w}"
        return f"{self.family}{self.min_rank} {w}"


_TABLE = (
    TableEntry("B", 2, None, 1, "Unimodular"),
    TableEntry("B", 2, 2, 2, "Unimodular"),
    TableEntry("B", 2, 2, 0, "Exhaustive"),
    TableEntry("B", 3, 3, 3, "Unimodular"),
    TableEntry("B", 4, 4, 4, "Ratio2Structural"),
    TableEntry("C", 3, None, 1, "Unimodular"),
    TableEntry("C", 3, 3, 2, "Unimodular"),
    TableEntry("C", 4, 4, 2, "Ratio2Structural"),
    TableEntry("D", 4, None, 1, "Unimodular"),
    TableEntry("D", 4, 4, 2, "Ratio2Structural"),
    TableEntry("D", 4, 4, 3, "Unimodular"),
    TableEntry("D", 4, 4, 4, "Unimodular"),
    TableEntry("D", 5, 5, 4, "Exhaustive"),
    TableEntry("D", 6, 6, 5, "Ratio2Structural"),
    TableEntry("D", 6, 6, 6, "Ratio2Structural"),
)


def theorem1_table() -> tuple[TableEntry, ...]:
    """The fifteen rows of positive modules, each tagged with its certification method."""
    return _TABLE


def table_match(rs: RootSystem, lam: Weight) -> Optional[tuple[TableEntry, bool]]:
    """The matching row and whether it matched through the dual weight."""
    for via_dual, w in ((False, lam), (True, dual_weight(rs, lam))):
        for e in _TABLE:
            if e.applies(rs) and e.weight(rs.n) == w:
                return e, via_dual
    return None


def in_table(rs: RootSystem, lam: Weight) -> bool:
    return table_match(rs, lam) is not None


@dataclass
class ClassificationReport:
    root_system: RootSystem
    weight: Weight
    verdict: str
    matched_entry: Optional[dict] = None
    certificate: Optional[Union[HnCertificate, NssCertificate]] = None
    trace: list = field(default_factory=list)
    millis: float = 0.0

    @property
    def normal(self) -> Optional[bool]:
        return None if self.verdict == UNDECIDED else self.verdict == HN

    def to_json(self, certificate_path: Optional[str] = None) -> dict:
        return {
            "input": {"family": self.root_system.family, "rank": self.root_system.n,
                      "lambda": str(self.weight), "doubled": list(self.weight.doubled)},
            "verdict": self.verdict,
            "matched_entry": self.matched_entry,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "certificate_path": certificate_path,
            "trace": self.trace,
            "millis": round(self.millis, 1),
        }


# ---------------------------------------------------------------------------
# positive side


def _positive(rs: RootSystem, lam: Weight, entry: TableEntry, budget: int, trace: list) -> Optional[HnCertificate]:
    ws = weight_set(rs, lam)
    vs = VectorSet.of(ws.integer_members)
    group = weyl_group_arrays(rs)
    gens = [g.to_json() for g in simple_reflections(rs)]
    strategy = {"Unimodular": "unimodular", "Ratio2Structural": "structural", "Exhaustive": "exhaustive"}[entry.method]
    trace.append({"step": "weight set", "size": len(vs), "denominator": ws.denominator})
    try:
        verdict = is_hereditarily_normal(vs, strategy, group, budget)
    except StrategyNotApplicable as exc:
        trace.append({"step": "fallback", "reason": str(exc)})
        verdict = is_hereditarily_normal(vs, "auto", group, budget)
    if not verdict.normal:
        raise DispatchError(f"{rs} {lam}: table weight has a non-saturated subset")
    data = {k: v for k, v in verdict.detail.items() if k in ("m", "bases_checked", "examined")}
    if verdict.method != "Unimodular":
        data["group"] = gens
    trace.append({"step": "certified", "method": verdict.method, **data})
    cert = HnCertificate(f"{rs} lambda={lam}", vs.vectors, verdict.method, data, ws.denominator)
    if not certify.verify_hn_certificate(cert, budget=budget):
        raise DispatchError(f"{rs} {lam}: hereditary-normality certificate does not verify")
    trace.append({"step": "verified"})
    return cert


# ---------------------------------------------------------------------------
# negative side


def _flip_last(v):
    return tuple(v[:-1]) + (-v[-1],)


def _select(rs: RootSystem, lam: Weight) -> list[tuple[str, tuple]]:
    """Candidate (counterexample, tail) pairs for ``lam`` with ``l_n >= 0``."""
    fam, n = rs.family, rs.n
    d = lam.doubled
    if lam.is_integral:
        big = max(d) >= 4
        k = sum(1 for x in d if x)
        odd_sum = (sum(d) // 2) % 2 == 1
        if fam == "B":
            return [("B-(2,0)" if n == 2 else "B-(1,1)", ())]
        if big:
            return [(f"{fam}-(2,1)" if odd_sum else f"{fam}-(2,0)", ())]
        if k % 2 == 1:
            return [(f"{fam}-(1,1,1)", ())]
        if (fam == "C" and n >= 5) or (fam == "D" and k == 2):
            return [(f"{fam}-(1,1)", ())]
        return [(f"{fam}-(1,1,1,1)", ())]
    if fam == "B":
        if max(d) >= 3:
            return [("B-(3/2,1/2,...)", ())]
        return [("B-(1/2,...)", ())]
    if max(abs(x) for x in d) >= 3:
        base = (1,) * (n - 4)
        return [("D-(3/2,1/2,1/2,...)", base + (s,)) for s in (1, -1)]
    return [("D-(1/2,...)", ())]


def _negative(rs: RootSystem, lam: Weight, trace: list) -> NssCertificate:
    target = lam
    flip = rs.family == "D" and lam.doubled[-1] < 0
    if flip:
        target = Weight(_flip_last(lam.doubled))
        trace.append({"step": "diagram automorphism", "lambda": str(target)})
    failures = []
    for name, tail in _select(rs, target):
        ce = certify.counterexample(name)
        cert = ce.instantiate(rs.n, tail)
        trace.append({"step": "counterexample", "name": name, "rank": rs.n,
                      "padding": ce.padding if rs.n > ce.base else None, "tail": list(tail) or None})
        if flip:
            cert = cert.transformed(_flip_last)
        bad = certify.membership_problems(cert, rs, lam)
        trace.append({"step": "membership", "checked": len(cert.vectors), "failed": len(bad)})
        if bad:
            failures.append(f"{name}: {len(bad)} vectors outside M({lam})")
            continue
        problems = certify.nss_certificate_problems(cert)
        if problems:
            raise DispatchError(f"{rs} {lam}: {name} does not verify: {problems}")
        trace.append({"step": "verified"})
        return cert
    raise DispatchError(f"{rs} {lam}: no counterexample fits ({'; '.join(failures) or 'none selected'})")


# ---------------------------------------------------------------------------


def classify(rs: RootSystem, lam: Weight, budget: int = DEFAULT_BUDGET) -> ClassificationReport:
    if lam.n != rs.n or not any(lam.doubled):
        raise ValueError("weight must be nonzero and of the right dimension")
    if not in_weight_lattice(rs, lam):
        raise ValueError(f"{lam} is not in the weight lattice of {rs}")
    if not is_dominant(rs, lam):
        raise ValueError(f"{lam} is not dominant for {rs}")
    return _classify_cached(rs, lam, budget)


@lru_cache(maxsize=4096)
def _classify_cached(rs: RootSystem, lam: Weight, budget: int) -> ClassificationReport:
    t0 = time.perf_counter()
    trace: list = [{"step": "input", "lambda": str(lam), "name": table_name(rs, lam)}]
    match = table_match(rs, lam)
    if match is not None:
        entry, via_dual = match
        matched = {"row": entry.label, "via_dual": via_dual, "method": entry.method}
        try:
            cert = _positive(rs, lam, entry, budget, trace)
        except BudgetExceeded as exc:
            trace.append({"step": "budget exhausted", "detail": str(exc)})
            return ClassificationReport(rs, lam, UNDECIDED, matched, None, trace,
                                        (time.perf_counter() - t0) * 1e3)
        return ClassificationReport(rs, lam, HN, matched, cert, trace, (time.perf_counter() - t0) * 1e3)
    cert = _negative(rs, lam, trace)
    return ClassificationReport(rs, lam, NOT_HN, None, cert, trace, (time.perf_counter() - t0) * 1e3)


def dominant_weights(rs: RootSystem, height_bound: int) -> list[Weight]:
    """Nonzero dominant weights with doubled coordinate sum at most ``height_bound``.

    Ordered by doubled sum, then reverse-lexicographically.
    """
    n, fam = rs.n, rs.family
    out = []

    def rec(prefix, left, cap, parity):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        if fam == "D" and i == n - 1:
            for x in range(-cap, cap + 1):
                if x % 2 == parity and x <= left:
                    out.append(tuple(prefix) + (x,))
            return
        for x in range(min(cap, left), -1, -1):
            if x % 2 == parity:
                rec(prefix + [x], left - x, x, parity)

    parities = (0,) if fam == "C" else (0, 1)
    for parity in parities:
        for first in range(height_bound, 0, -1):
            if first % 2 == parity:
                rec([first], height_bound - first, first, parity)
    ws = [Weight(d) for d in set(out) if any(d) and sum(d) <= height_bound]
    if fam == "C":
        ws = [w for w in ws if all(x % 2 == 0 for x in w.doubled)]
    return sorted(ws, key=lambda w: (sum(w.doubled), tuple(-x for x in w.doubled)))


@dataclass
class ScanReport:
    reports: list
    discrepancies: list
    millis: float

    def summary(self) -> dict:
        by_rs: dict = {}
        for r in self.reports:
            key = str(r.root_system)
            s = by_rs.setdefault(key, {"weights": 0, "normal": 0, "millis": 0.0})
            s["weights"] += 1
            s["normal"] += r.verdict == HN
            s["millis"] = round(s["millis"] + r.millis, 1)
        return {"weights": len(self.reports), "discrepancies": len(self.discrepancies),
                "millis": round(self.millis, 1), "per_root_system": by_rs}


def _scan_one(args):
    rs, lam, budget = args
    try:
        return classify(rs, lam, budget)
    except DispatchError as exc:
        return ClassificationReport(rs, lam, "Error", trace=[{"step": "error", "detail": str(exc)}])


def parse_ranks(text: str) -> dict[str, tuple[int, int]]:
    """``"B2-5,C3-5,D4-7"`` -> ``{"B": (2, 5), ...}``; ``"D6"`` means ``D6-6``."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        fam, rng = part[0].upper(), part[1:]
        lo, _, hi = rng.partition("-")
        out[fam] = (int(lo), int(hi or lo))
    return out


def theorem1_scan(ranks: dict[str, tuple[int, int]], height_bound: int,
                  budget: int = DEFAULT_BUDGET, workers: int = 1) -> ScanReport:
    """Classify every dominant weight in range and compare with the table."""
    t0 = time.perf_counter()
    jobs = []
    for fam in sorted(ranks):
        lo, hi = ranks[fam]
        for n in range(lo, hi + 1):
            rs = RootSystem(fam, n)
            jobs.extend((rs, lam, budget) for lam in dominant_weights(rs, height_bound))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_scan_one, jobs, chunksize=4))
    else:
        reports = [_scan_one(j) for j in jobs]
    disc = []
    for r in reports:
        expected = HN if in_table(r.root_system, r.weight) else NOT_HN
        if r.verdict != expected:
            disc.append({"root_system": str(r.root_system), "lambda": str(r.weight),
                         "expected": expected, "got": r.verdict})
    return ScanReport(reports, disc, (time.perf_counter() - t0) * 1e3)


def classification_table() -> list[tuple[str, int, Weight, str]]:
    """Table rows instantiated at their smallest rank: (family, rank, weight, method)."""
    return [(e.family, e.min_rank, e.weight(e.min_rank), e.method) for e in _TABLE]
