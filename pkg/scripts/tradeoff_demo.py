"""Reads-versus-list-size trade-off for GV codes of decreasing strength.

For a fixed channel ch(t, b) and each designed radius eps < t, build a GV code,
then report the reconstruction degree and the measured list sizes for every
h in 0..t-eps-1.
"""

import argparse
import sys

from burstrecon.codes import construct_gv
from burstrecon.core import Params
from burstrecon.experiments import ExperimentConfig, cmd_tradeoff


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--b", type=int, default=1)
    ap.add_argument("--t", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--mode", choices=["random", "adversarial", "mixed"], default="mixed")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    header = True
    for eps in range(args.t - 1, 0, -1):
        code = construct_gv(Params(n=args.n, q=args.q, b=args.b), eps)
        params = {"t": args.t, "trials": args.trials, "mode": args.mode,
                  "code": {"n": args.n, "q": args.q, "b": args.b, "designed_t": eps, "size": len(code)}}
        table = cmd_tradeoff(ExperimentConfig("tradeoff", params, args.seed, args.threads), code)
        lines = table.to_csv().splitlines()
        body = [ln for ln in lines if not ln.startswith("#")]
        if header:
            print("\n".join(ln for ln in lines if ln.startswith("#")))
            print("eps," + body[0])
            header = False
        for ln in body[1:]:
            print(f"{eps},{ln}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
