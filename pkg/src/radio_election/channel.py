"""Per-round channel semantics: radio (with or without collision detection) and beep."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Mapping

from .bits import Bitstring
from .topology import Topology


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class Transmit:
    payload: Bitstring
    kind: ClassVar[str] = "transmit"


@dataclass(frozen=True)
class Listen:
    kind: ClassVar[str] = "listen"


@dataclass(frozen=True)
class Beep:
    kind: ClassVar[str] = "beep"


@dataclass(frozen=True)
class Silent:
    kind: ClassVar[str] = "silent"


@dataclass(frozen=True)
class Message:
    payload: Bitstring
    kind: ClassVar[str] = "message"


@dataclass(frozen=True)
class Silence:
    kind: ClassVar[str] = "silence"


@dataclass(frozen=True)
class Collision:
    kind: ClassVar[str] = "collision"


@dataclass(frozen=True)
class BeepHeard:
    kind: ClassVar[str] = "beep_heard"


@dataclass(frozen=True)
class NoBeep:
    kind: ClassVar[str] = "no_beep"


LISTEN, BEEP, SILENT = Listen(), Beep(), Silent()
SILENCE, COLLISION, BEEP_HEARD, NO_BEEP = Silence(), Collision(), BeepHeard(), NoBeep()

RoundAction = Transmit | Listen | Beep | Silent
Reception = Message | Silence | Collision | BeepHeard | NoBeep

MODELS = ("nocd", "cd", "beep")


def step_radio_round(t: Topology, actions: Mapping[int, RoundAction], cd: bool) -> dict[int, Reception]:
    """Resolve one radio round.

    A listener with exactly one transmitting in-neighbor gets its payload;
    with none it gets silence; with two or more it gets silence, or a
    collision when ``cd`` is set. Transmitters learn nothing.
    """
    if set(actions) != set(range(t.n)):
        raise ChannelError("every node needs exactly one action")
    for v, a in actions.items():
        if not isinstance(a, (Transmit, Listen)):
            raise ChannelError(f"node {v}: {a.kind} is not a radio action")
    heard: dict[int, list[Bitstring]] = {v: [] for v in range(t.n)}
    for u, nbrs in enumerate(t.out_neighbors()):
        a = actions[u]
        if isinstance(a, Transmit):
            for w in nbrs:
                heard[w].append(a.payload)
    out: dict[int, Reception] = {}
    for v in range(t.n):
        msgs = heard[v]
        if isinstance(actions[v], Transmit) or not msgs:
            out[v] = SILENCE
        elif len(msgs) == 1:
            out[v] = Message(msgs[0])
        else:
            out[v] = COLLISION if cd else SILENCE
    return out


def step_beep_round(t: Topology, beepers) -> dict[int, Reception]:
    """Resolve one beep round: a silent node hears a beep iff some neighbor beeped."""
    beepers = set(beepers)
    hears = set()
    for u, nbrs in enumerate(t.out_neighbors()):
        if u in beepers:
            hears.update(nbrs)
    return {
        v: BEEP_HEARD if (v in hears and v not in beepers) else NO_BEEP
        for v in range(t.n)
    }


def step_round(t: Topology, actions: Mapping[int, RoundAction], model: str) -> dict[int, Reception]:
    if model == "beep":
        for v, a in actions.items():
            if not isinstance(a, (Beep, Silent)):
                raise ChannelError(f"node {v}: {a.kind} is not a beep action")
        return step_beep_round(t, [v for v, a in actions.items() if isinstance(a, Beep)])
    if model not in MODELS:
        raise ChannelError(f"unknown model {model!r}")
    return step_radio_round(t, actions, cd=(model == "cd"))
