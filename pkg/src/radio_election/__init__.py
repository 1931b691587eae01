"""Synchronous-round simulator for randomized leader election in radio and beep networks."""

from .bits import EMPTY, ONE, Bitstring, log2n
from .topology import Topology, TopologySpec, build_topology, eccentricity
from .channel import step_beep_round, step_radio_round
from .network import Network, RoundCapExceeded
from .radio import decay, decay4, partial_multi_broadcast, search, selection
from .beep import beep_wave
from .election import (
    ElectionParams,
    ProtocolOutcome,
    ProtocolSpec,
    elect_beep,
    elect_expected,
    elect_single_hop,
    elect_whp,
    run_protocol,
    sample_constant_weight_id,
)
from .audit import audit_trace
from .sweep import ExperimentSpec, run_sweep

__all__ = [
    "EMPTY", "ONE", "Bitstring", "log2n",
    "Topology", "TopologySpec", "build_topology", "eccentricity",
    "step_beep_round", "step_radio_round",
    "Network", "RoundCapExceeded",
    "decay", "decay4", "partial_multi_broadcast", "search", "selection",
    "beep_wave",
    "ElectionParams", "ProtocolOutcome", "ProtocolSpec",
    "elect_beep", "elect_expected", "elect_single_hop", "elect_whp",
    "run_protocol", "sample_constant_weight_id",
    "audit_trace", "ExperimentSpec", "run_sweep",
]
