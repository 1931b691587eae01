"""Run traces: per-round actions/receptions plus primitive summaries, as JSON Lines.

Record types, one JSON object per line, keys in fixed order:

* ``header``    protocol, params, seed, n, D, model, directed, edges
* ``round``     round, primitive, phase, iteration, actions, receptions
* ``primitive`` name, phase, iteration, start, rounds, leaf, data
* ``outcome``   the outcome record of the run
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .bits import Bitstring
from .channel import (
    BEEP,
    BEEP_HEARD,
    COLLISION,
    LISTEN,
    NO_BEEP,
    SILENCE,
    SILENT,
    Message,
    Reception,
    RoundAction,
    Transmit,
)


class TraceFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class RoundRecord:
    round: int
    primitive: str
    phase: str
    iteration: int
    actions: tuple[RoundAction, ...]
    receptions: tuple[Reception, ...]


@dataclass
class Trace:
    header: dict[str, Any]
    keep_rounds: bool = True
    records: list = field(default_factory=list)
    outcome: dict[str, Any] | None = None

    @property
    def rounds(self) -> list[RoundRecord]:
        return [r for r in self.records if isinstance(r, RoundRecord)]

    @property
    def events(self) -> list[dict]:
        return [r for r in self.records if isinstance(r, dict)]

    def to_jsonl(self) -> str:
        lines = [_dumps({"type": "header", **self.header})]
        for rec in self.records:
            if isinstance(rec, RoundRecord):
                lines.append(_dumps(round_to_json(rec)))
            else:
                lines.append(_dumps({"type": "primitive", **rec}))
        if self.outcome is not None:
            lines.append(_dumps({"type": "outcome", **self.outcome}))
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_jsonl())


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def action_to_json(v: int, a: RoundAction) -> dict:
    if isinstance(a, Transmit):
        return {"node": v, "kind": a.kind, "payload": str(a.payload)}
    return {"node": v, "kind": a.kind}


def reception_to_json(v: int, r: Reception) -> dict:
    if isinstance(r, Message):
        return {"node": v, "kind": r.kind, "payload": str(r.payload)}
    return {"node": v, "kind": r.kind}


def round_to_json(rec: RoundRecord) -> dict:
    return {
        "type": "round",
        "round": rec.round,
        "primitive": rec.primitive,
        "phase": rec.phase,
        "iteration": rec.iteration,
        "actions": [action_to_json(v, a) for v, a in enumerate(rec.actions)],
        "receptions": [reception_to_json(v, r) for v, r in enumerate(rec.receptions)],
    }


_PLAIN = {
    "listen": LISTEN,
    "beep": BEEP,
    "silent": SILENT,
    "silence": SILENCE,
    "collision": COLLISION,
    "beep_heard": BEEP_HEARD,
    "no_beep": NO_BEEP,
}


def _parse_entry(entry: dict, lineno: int):
    kind = entry.get("kind")
    if kind in ("transmit", "message"):
        try:
            payload = Bitstring.from_str(entry["payload"])
        except (KeyError, ValueError) as exc:
            raise TraceFormatError(lineno, f"bad payload in {entry}") from exc
        return Transmit(payload) if kind == "transmit" else Message(payload)
    if kind in _PLAIN:
        return _PLAIN[kind]
    raise TraceFormatError(lineno, f"unknown kind {kind!r}")


def _parse_slots(entries: list, n: int, lineno: int, what: str) -> tuple:
    slots: list = [None] * n
    for e in entries:
        v = e.get("node")
        if not isinstance(v, int) or not 0 <= v < n:
            raise TraceFormatError(lineno, f"{what}: bad node {v!r}")
        if slots[v] is not None:
            raise TraceFormatError(lineno, f"{what}: node {v} appears twice")
        slots[v] = _parse_entry(e, lineno)
    if any(s is None for s in slots):
        raise TraceFormatError(lineno, f"{what}: not every node has an entry")
    return tuple(slots)


def parse_trace(lines: Iterable[str]) -> Trace:
    """Parse JSONL text; raises TraceFormatError naming the offending line."""
    trace: Trace | None = None
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(lineno, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict) or "type" not in obj:
            raise TraceFormatError(lineno, "record without a type")
        kind = obj.pop("type")
        if kind == "header":
            if trace is not None:
                raise TraceFormatError(lineno, "second header")
            for key in ("protocol", "seed", "n", "model", "edges", "directed"):
                if key not in obj:
                    raise TraceFormatError(lineno, f"header lacks {key!r}")
            trace = Trace(header=obj)
            continue
        if trace is None:
            raise TraceFormatError(lineno, "record before header")
        n = trace.header["n"]
        if kind == "round":
            try:
                rec = RoundRecord(
                    round=obj["round"],
                    primitive=obj["primitive"],
                    phase=obj["phase"],
                    iteration=obj["iteration"],
                    actions=_parse_slots(obj["actions"], n, lineno, "actions"),
                    receptions=_parse_slots(obj["receptions"], n, lineno, "receptions"),
                )
            except KeyError as exc:
                raise TraceFormatError(lineno, f"round record lacks {exc}") from exc
            trace.records.append(rec)
        elif kind == "primitive":
            trace.records.append(obj)
        elif kind == "outcome":
            trace.outcome = obj
        else:
            raise TraceFormatError(lineno, f"unknown record type {kind!r}")
    if trace is None:
        raise TraceFormatError(0, "empty trace")
    return trace


def read_trace(path) -> Trace:
    with open(path) as fh:
        return parse_trace(fh)
