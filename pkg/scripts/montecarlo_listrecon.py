"""Monte Carlo list reconstruction against the brute-force list.

Random code of a given size at length n (optionally with codewords planted
near a few random centers so that lists are non-trivial), then the
transmit -> reads -> reconstruct loop. Prints a one-row CSV summary.
"""

import argparse
import sys

from burstrecon.channel import ChannelSpec, generate_reads, make_rng
from burstrecon.codes import Code
from burstrecon.core import Word
from burstrecon.experiments import ExperimentConfig, cmd_montecarlo


def random_code(n, q, b, size, planted, seed):
    rng = make_rng(seed)
    words = {Word(tuple(r), q) for r in rng.integers(0, q, (size, n)).tolist()}
    if planted:
        center = next(iter(words))
        spec = ChannelSpec(n, q, min(4, n // (2 * b)), b)
        words |= set(generate_reads(center, spec, planted, rng).reads)
    return Code.from_words(words, n, q, b, method="random", seed=seed)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--b", type=int, default=1)
    ap.add_argument("--t", type=int, default=2)
    ap.add_argument("--s", type=int, default=1)
    ap.add_argument("--h", type=int, default=1)
    ap.add_argument("--size", type=int, default=500)
    ap.add_argument("--planted", type=int, default=20)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--mode", choices=["random", "adversarial"], default="random")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    code = random_code(args.n, args.q, args.b, args.size, args.planted, args.seed)
    params = {"t": args.t, "s": args.s, "h": args.h, "trials": args.trials, "mode": args.mode,
              "code": {"n": args.n, "q": args.q, "b": args.b, "size": len(code), "planted": args.planted}}
    table = cmd_montecarlo(ExperimentConfig("montecarlo", params, args.seed, args.threads), code)
    sys.stdout.write(table.to_csv())
    return 2 if table.failed_flags() else 0


if __name__ == "__main__":
    sys.exit(main())
