"""Iteration counts of the retry-loop protocols against Geometric(p), p = (1-1/n)^(n-1).

    python3 scripts/geometric_iterations.py --n 256 --runs 2000
"""

import argparse
import statistics

from scipy import stats

from radio_election.election import ProtocolSpec, run_protocol
from radio_election.topology import TopologySpec, build_topology

FAMILY = {"expected": "grid", "beep": "grid", "single-hop": "complete"}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--runs", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--protocols", nargs="+", default=list(FAMILY))
    args = ap.parse_args()

    p = (1 - 1 / args.n) ** (args.n - 1)
    print(f"p = {p:.5f}, exact mean = {1 / p:.4f}")
    for proto in args.protocols:
        t = build_topology(TopologySpec(FAMILY[proto], args.n))
        its = [run_protocol(t, ProtocolSpec(proto, record="none"), args.seed + s)[0].iterations
               for s in range(args.runs)]
        kmax = 8
        obs = [its.count(k) for k in range(1, kmax)] + [sum(k >= kmax for k in its)]
        exp = [args.runs * (1 - p) ** (k - 1) * p for k in range(1, kmax)]
        exp.append(args.runs * (1 - p) ** (kmax - 1))
        _, pval = stats.chisquare(obs, exp)
        print(f"{proto:10s} mean={statistics.fmean(its):.3f} chi2 p={pval:.4f} counts={obs}")


if __name__ == "__main__":
    main()
