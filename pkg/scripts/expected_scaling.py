"""Rounds of the radio election as D grows at fixed n (layered graphs).

Each iteration is one Selection, whose length is affine in D for fixed n
(two Decay-flooding broadcasts plus the D-independent bit phase). The
script prints the per-iteration length, its D-term 2*alpha*D*log n, and
the measured mean rounds.

    python3 scripts/expected_scaling.py --n 512 --widths 8 4 2 1 --runs 200
"""

import argparse
import statistics

from radio_election.election import ProtocolSpec, run_protocol
from radio_election.network import Network
from radio_election.radio import selection_duration
from radio_election.topology import TopologySpec, build_topology


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--widths", type=int, nargs="+", default=[8, 4, 2, 1])
    ap.add_argument("--runs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for w in args.widths:
        t = build_topology(TopologySpec("layered", args.n, width=w))
        net = Network(t, "nocd")
        per_iter = selection_duration(net, 16 * net.L)
        d_term = 2 * net.alpha * t.D * net.L
        out = [run_protocol(t, ProtocolSpec("expected", record="none"), args.seed + s)[0]
               for s in range(args.runs)]
        its = statistics.fmean(o.iterations for o in out)
        rounds = statistics.fmean(o.rounds for o in out)
        print(f"width={w} D={t.D:4d} per-iteration={per_iter} D-term={d_term} "
              f"mean iterations={its:.3f} mean rounds={rounds:.0f}")


if __name__ == "__main__":
    main()
