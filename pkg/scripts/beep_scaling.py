"""Mean total rounds of the beep election on paths, and ratios for doubled D.

Per iteration the protocol spends two fixed-length waves, so the measured
ratio should track the per-iteration ratio printed next to it.

    python3 scripts/beep_scaling.py --d 8 16 32 64 128 256 512 --runs 1000
"""

import argparse
import statistics

from radio_election.beep import beep_wave_duration
from radio_election.bits import log2n
from radio_election.election import ProtocolSpec, run_protocol
from radio_election.topology import TopologySpec, build_topology


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--d", type=int, nargs="+", default=[8, 16, 32, 64, 128, 256, 512])
    ap.add_argument("--runs", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    means, per_iter = {}, {}
    for D in args.d:
        t = build_topology(TopologySpec("path", D + 1))
        rounds = [run_protocol(t, ProtocolSpec("beep", record="none"), args.seed + s)[0].rounds
                  for s in range(args.runs)]
        means[D] = statistics.fmean(rounds)
        per_iter[D] = beep_wave_duration(D, 4 * log2n(D + 1)) + beep_wave_duration(D, 1)
        print(f"D={D:4d} n={D + 1:4d} mean rounds={means[D]:10.1f} per iteration={per_iter[D]}")
    for D in args.d:
        if 2 * D in means:
            print(f"{D}->{2 * D}: measured {means[2 * D] / means[D]:.3f}, "
                  f"per-iteration {per_iter[2 * D] / per_iter[D]:.3f}")


if __name__ == "__main__":
    main()
