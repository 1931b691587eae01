"""Re-check a recorded run: channel replay, round coverage, primitive contracts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .bits import Bitstring
from .channel import Message, step_round
from .topology import Topology, from_edge_list
from .trace import Trace

CONTRACT_CHECKS = {
    "decay": "decay",
    "decay4": "decay",
    "pmb": "pmb",
    "selection_bits": "witness",
    "selection": "selection",
    "search": "search",
    "beep_wave": "beep_wave",
    "slot": "slot",
}


@dataclass(frozen=True)
class Violation:
    check: str
    round: int
    detail: str

    def to_json(self) -> dict:
        return {"check": self.check, "round": self.round, "detail": self.detail}


@dataclass
class AuditReport:
    violations: list[Violation] = field(default_factory=list)
    rounds_checked: int = 0
    primitives_checked: Counter = field(default_factory=Counter)
    outcome_success: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(v.check for v in self.violations).items()))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rounds_checked": self.rounds_checked,
            "primitives_checked": dict(sorted(self.primitives_checked.items())),
            "outcome_success": self.outcome_success,
            "counts": self.counts(),
            "violations": [v.to_json() for v in self.violations],
        }


def topology_of(trace: Trace) -> Topology:
    h = trace.header
    return from_edge_list(h["n"], h["edges"], h["directed"])


def _bs(s: str) -> Bitstring:
    return Bitstring.from_str(s)


def check_pmb(sources: dict[int, str], outputs: list[str]) -> list[str]:
    if not sources:
        bad = [v for v, o in enumerate(outputs) if o != ""]
        return [f"no sources but nodes {bad} hold a string"] if bad else []
    allowed = set(sources.values())
    probs = []
    for v, s in sources.items():
        if outputs[v] != s:
            probs.append(f"source {v} lost its own string")
    bad = [v for v, o in enumerate(outputs) if o not in allowed]
    if bad:
        probs.append(f"nodes {bad[:10]} hold no source's string")
    return probs


def check_selection(candidates: dict[int, str], outputs: list[tuple[str, int]]) -> list[str]:
    ids = list(candidates.values())
    if not ids:
        bad = [v for v, o in enumerate(outputs) if tuple(o) != ("", 0)]
        return [f"empty candidate set but nodes {bad[:10]} output something"] if bad else []
    if len(ids) == 1:
        bad = [v for v, o in enumerate(outputs) if tuple(o) != (ids[0], 1)]
        return [f"single candidate but nodes {bad[:10]} disagree"] if bad else []
    if len(set(ids)) == 1:
        return [f"duplicate IDs: {len(ids)} candidates all hold {ids[0]}"]
    probs = []
    lowest = min(ids, key=_bs)
    allowed = set(ids) - {lowest}
    b_bad = [v for v, (m, b) in enumerate(outputs) if b != 0]
    if b_bad:
        probs.append(f"{len(ids)} candidates but nodes {b_bad[:10]} output b=1")
    min_bad = [v for v, (m, b) in enumerate(outputs) if m == lowest]
    if min_bad:
        probs.append(f"min-removal: nodes {min_bad[:10]} output the minimum ID")
    other = [v for v, (m, b) in enumerate(outputs) if m != lowest and m not in allowed]
    if other:
        probs.append(f"nodes {other[:10]} output a string that is no candidate's ID")
    return probs


def check_search(candidates: dict[int, str], ell: int, outputs: list[str]) -> list[str]:
    if candidates:
        want = str(max(map(_bs, candidates.values())).prefix(ell))
    else:
        want = "0" * ell
    bad = [v for v, o in enumerate(outputs) if o != want]
    return [f"nodes {bad[:10]} differ from max-ID prefix {want}"] if bad else []


def check_beep_wave(t: Topology, sources: dict[int, str], outputs: list[str],
                    first_beep: list[int] | None = None) -> list[str]:
    if not sources:
        bad = [v for v, o in enumerate(outputs) if o != ""]
        return [f"no sources but nodes {bad[:10]} decoded something"] if bad else []
    if len(sources) == 1:
        (s, f), = sources.items()
        probs = []
        bad = [v for v, o in enumerate(outputs) if o != f]
        if bad:
            probs.append(f"single source but nodes {bad[:10]} decoded wrongly")
        if first_beep is not None:
            dist = t.distances_from(s)
            late = [v for v in range(t.n) if first_beep[v] != dist[v]]
            if late:
                probs.append(f"first beep differs from BFS distance at {late[:10]}")
        return probs
    probs = []
    blank = [v for v, o in enumerate(outputs) if o == ""]
    if blank:
        probs.append(f"several sources but nodes {blank[:10]} decoded nothing")
    decoded = [_bs(o) for o in outputs if o != ""]
    fs = {v: _bs(f) for v, f in sources.items()}
    found = any(
        m.covers(fs[u] | fs[w])
        for u, w in combinations(sorted(fs), 2)
        for m in decoded
    )
    if not found:
        probs.append("no node holds the OR of two source strings")
    return probs


def check_decay(t: Topology, sources: dict[int, str], outputs: list[str | None]) -> list[str]:
    ins = t.in_neighbors()
    bad = [v for v, o in enumerate(outputs)
           if o is not None and not any(sources.get(u) == o for u in ins[v])]
    return [f"nodes {bad[:10]} heard a string no in-neighbour sent"] if bad else []


def _check_event(t: Topology, ev: dict, rounds_by_index: dict) -> list[str]:
    d = ev["data"]
    name = ev["name"]
    src = {int(k): v for k, v in d.get("sources", {}).items()}
    if name in ("decay", "decay4"):
        return check_decay(t, src, d["outputs"])
    if name == "pmb":
        return check_pmb(src, d["outputs"])
    if name == "selection":
        return check_selection({int(k): v for k, v in d["candidates"].items()}, d["outputs"])
    if name == "search":
        return check_search({int(k): v for k, v in d["candidates"].items()}, d["ell"], d["outputs"])
    if name == "beep_wave":
        return check_beep_wave(t, src, d["outputs"], d.get("first_beep"))
    if name == "selection_bits":
        if not rounds_by_index:
            return []
        probs = []
        for w in d["witnesses"]:
            seen = False
            for r in range(ev["start"], ev["start"] + ev["rounds"]):
                rec = rounds_by_index.get(r)
                if rec is None:
                    continue
                got = rec.receptions[w]
                if isinstance(got, Message) and str(got.payload) != d["before"][w]:
                    seen = True
                    break
            if not seen:
                probs.append(f"witness {w} never received a second distinct ID")
        return probs
    if name == "slot":
        return []
    return [f"unknown primitive {name!r}"]


def audit_trace(trace: Trace, topology: Topology | None = None) -> AuditReport:
    """Replay every recorded round and check every primitive summary.

    ``topology`` skips rebuilding the graph from the header when the caller
    already has it; it must match the header's edges.
    """
    t = topology_of(trace) if topology is None else topology
    model = trace.header["model"]
    report = AuditReport()
    rounds = trace.rounds
    by_index = {}
    for rec in rounds:
        if rec.round in by_index:
            report.violations.append(Violation("synchrony", rec.round, "round recorded twice"))
        by_index[rec.round] = rec
        replay = step_round(t, dict(enumerate(rec.actions)), model)
        wrong = [v for v in range(t.n) if replay[v] != rec.receptions[v]]
        if wrong:
            report.violations.append(Violation(
                "channel", rec.round, f"receptions differ from replay at nodes {wrong[:10]}"))
        report.rounds_checked += 1

    leaves = []
    for ev in trace.events:
        if ev.get("leaf"):
            leaves.append((ev["start"], ev["start"] + ev["rounds"]))
        name = ev["name"]
        report.primitives_checked[CONTRACT_CHECKS.get(name, name)] += 1
        for problem in _check_event(t, ev, by_index):
            report.violations.append(Violation(CONTRACT_CHECKS.get(name, name), ev["start"], problem))

    total = trace.outcome["rounds"] if trace.outcome else (max(by_index) + 1 if by_index else 0)
    cursor = 0
    for a, b in sorted(leaves):
        if a != cursor:
            what = "overlap" if a < cursor else "gap"
            report.violations.append(Violation(
                "coverage", min(a, cursor), f"{what} between rounds {min(a, cursor)} and {max(a, cursor)}"))
        cursor = max(cursor, b)
    if cursor != total:
        report.violations.append(Violation("coverage", cursor, f"leaf primitives end at {cursor}, run at {total}"))
    if rounds:
        missing = [r for r in range(total) if r not in by_index]
        if missing:
            report.violations.append(Violation("synchrony", missing[0], f"{len(missing)} rounds missing"))
    if trace.outcome is not None:
        report.outcome_success = bool(trace.outcome["success"])
    report.violations.sort(key=lambda v: (v.round, v.check))
    return report
