"""Command-line frontend.

Exit codes: 0 success, 2 validation failure (bad input files, a failed code
check, reads inconsistent with the code, a false inequality flag), 3
infeasible parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import io as fmt
from .balls import (
    ball_intersection,
    diameter,
    diametric_bound_check,
    levenshtein_intersection_formula,
    reconstruction_degree,
    reconstruction_degree_bound,
    shift_to_fixed_point,
)
from .channel import ChannelSpec, generate_reads, make_rng
from .codes import (
    check_burst_code,
    construct_gv,
    construct_matching_code,
    gv_floor,
    johnson_upper_bound,
    redundancy_report,
)
from .core import ParameterError, Params, Word, burst_distance, burst_distance_oracle, hamming_distance
from .experiments import ExperimentConfig, cmd_ballsize, cmd_montecarlo, cmd_tradeoff
from .recon import (
    AmbiguousReconstruction,
    CandidateOverflow,
    InconsistentReads,
    list_reconstruct,
    unique_reconstruct,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


class ValidationFailure(Exception):
    pass


def int_list(text: str) -> list[int]:
    """'6..14' or '2,3' or '5' -> list of ints."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2, default=str) + "\n")


def _emit_table(args, table):
    _emit(args, table.render(args.format or "csv"))
    bad = table.failed_flags()
    if bad:
        raise ValidationFailure(f"{len(bad)} false inequality flag(s), first at row {bad[0][0]} column {bad[0][1]}")


def _config(args, command: str, params: dict) -> ExperimentConfig:
    return ExperimentConfig(command, params, seed=args.seed, threads=args.threads)


def _load_code(path):
    return fmt.load_code(fmt.read_text(path))


def _code_identity(code) -> dict:
    text = fmt.dump_code(code)
    return {"header": text.splitlines()[0], "size": len(code),
            "sha256": hashlib.sha256(text.encode()).hexdigest()[:16]}


# --- subcommands ------------------------------------------------------------


def run_distance(args):
    x, y = Word.parse(args.x, args.q), Word.parse(args.y, args.q)
    d = burst_distance(x, y, args.b)
    out = {"x": str(x), "y": str(y), "b": args.b, "distance": d, "hamming": hamming_distance(x, y)}
    if args.check_oracle:
        out["oracle"] = burst_distance_oracle(x, y, args.b)
        if out["oracle"] != d:
            _emit_json(args, out)
            raise ValidationFailure("distance algorithms disagree")
    if args.format == "json":
        _emit_json(args, out)
    else:
        _emit(args, f"{d}\n")


def run_ballsize(args):
    params = {"n": int_list(args.n), "q": int_list(args.q), "b": int_list(args.b), "t": int_list(args.t),
              "method": args.method, "enumerate_limit": args.enumerate_limit}
    progress = args.progress or (f"{args.out}.progress.json" if args.out else None)
    _emit_table(args, cmd_ballsize(_config(args, "ballsize", params), progress))


def run_intersect(args):
    x, y = Word.parse(args.x, args.q), Word.parse(args.y, args.q)
    inter = ball_intersection(x, y, args.t, args.b)
    d = burst_distance(x, y, args.b)
    out = {"x": str(x), "y": str(y), "t": args.t, "b": args.b, "distance": d, "size": len(inter)}
    if args.b == 1:
        out["formula"] = levenshtein_intersection_formula(len(x), args.q, args.t, d)
    if args.list:
        out["words"] = [str(w) for w in inter]
    if args.format == "json" or args.list:
        _emit_json(args, out)
    else:
        _emit(args, f"{len(inter)}\n")
    if "formula" in out and out["formula"] != out["size"]:
        raise ValidationFailure("enumerated intersection disagrees with the b=1 formula")


def run_construct(args):
    if args.method == "gv":
        if args.t is None:
            raise ParameterError("construct gv needs --t")
        code = construct_gv(Params(n=args.n, q=args.q, b=args.b), args.t, args.order,
                            seed=args.seed, budget=args.budget)
        info = {"size": len(code), "gv_floor": gv_floor(args.n, args.q, args.b, args.t)}
    else:
        if args.w is None or args.r is None:
            raise ParameterError("construct matching needs --w and --r")
        code = construct_matching_code(args.n, args.q, args.b, args.w, args.r)
        info = {"size": len(code), "johnson_bound": johnson_upper_bound(args.n, args.q, args.b, args.w, args.r)}
    _emit(args, fmt.dump_code(code))
    rep = redundancy_report(code)
    info.update(redundancy=round(rep.redundancy, 4), window=[round(rep.window_low, 4), round(rep.window_high, 4)])
    print(json.dumps(info), file=sys.stderr)


def run_check(args):
    code = _load_code(args.code)
    radius = code.designed_t if args.t is None else args.t
    ok, witness = check_burst_code(code, radius)
    out = {"size": len(code), "radius": radius, "b": code.b, "ok": ok,
           "witness": None if witness is None else [str(w) for w in witness]}
    if witness is not None:
        out["witness_distance"] = burst_distance(*witness, code.b)
    _emit_json(args, out)
    if not ok:
        raise ValidationFailure(f"code is not ({radius},{code.b})-burst-correcting")


def run_degree(args):
    code = _load_code(args.code)
    deg = reconstruction_degree(code, args.t, code.b)
    out = {"size": len(code), "t": args.t, "b": code.b, "degree": deg}
    s = args.s if args.s is not None else args.t - code.designed_t - 1
    if 0 <= s <= args.t - 1:
        bound = reconstruction_degree_bound(code.n, code.q, code.b, args.t, s)
        out.update(s=s, bound=str(bound), within_bound=deg <= bound)
    _emit_json(args, out)
    if out.get("within_bound") is False and check_burst_code(code, args.t - s - 1)[0]:
        raise ValidationFailure("degree exceeds the upper bound for a valid code")


def run_shift(args):
    A = fmt.load_wordset(fmt.read_text(args.set))
    F = shift_to_fixed_point(A)
    _emit(args, fmt.dump_wordset(F))
    if len(A) >= 2:
        info = {"size": len(A), "diameter_before": diameter(A, args.b), "diameter_after": diameter(F, args.b)}
        print(json.dumps(info), file=sys.stderr)
        if info["diameter_after"] > info["diameter_before"]:
            raise ValidationFailure("shifting increased the diameter")


def run_diametric(args):
    rep = diametric_bound_check(args.n, args.q, args.b, args.d, trials=args.trials, seed=args.seed,
                                exact_limit=args.exact_limit)
    out = {k: getattr(rep, k) for k in ("n", "q", "b", "d", "ball_size", "max_found", "method", "exceeds")}
    if args.witness:
        out["witness"] = [str(w) for w in rep.witness]
    _emit_json(args, out)


def run_simulate(args):
    if args.word is not None:
        x = Word.parse(args.word, args.q)
        words = [x]
        b = 1 if args.b is None else args.b
    else:
        code = _load_code(args.code)
        words = code.word_list()
        x = words[int(make_rng(args.seed).integers(len(words)))] if args.index is None else words[args.index]
        b = code.b if args.b is None else args.b
    spec = ChannelSpec(len(x), x.q, args.t, b, seed=args.seed)
    rng = spec.rng()
    adversary = None
    if args.adversarial:
        if args.other is not None:
            adversary = Word.parse(args.other, x.q)
        else:
            others = [w for w in words if w != x]
            if not others:
                raise ParameterError("--adversarial needs --other or a code with at least two words")
            adversary = min(others, key=lambda w: (burst_distance(x, w, b), w.symbols))
    rs = generate_reads(x, spec, args.N, rng, adversary=adversary)
    _emit(args, fmt.dump_readset(rs, n=len(x), q=x.q, b=b, t=args.t, seed=args.seed))


def run_reconstruct(args):
    code = _load_code(args.code)
    reads, info = fmt.load_readset(fmt.read_text(args.reads))
    if (info["n"], info["q"], info["b"]) != (code.n, code.q, code.b):
        raise fmt.FormatError(f"reads were made for n={info['n']} q={info['q']} b={info['b']}, "
                              f"code has n={code.n} q={code.q} b={code.b}")
    t = args.t if args.t is not None else info["t"]
    if args.list:
        if args.s is None or args.h is None:
            raise ParameterError("--list needs --s and --h")
        res = list_reconstruct(code, reads, t, args.s, args.h, max_candidate_bits=args.max_candidate_bits)
        out = {"list": [str(w) for w in res.codewords], "stats": res.stats}
    else:
        try:
            w = unique_reconstruct(code, reads, t)
            out = {"list": [str(w)], "stats": {"mode": "unique", "reads": len(reads)}}
        except AmbiguousReconstruction as exc:
            out = {"list": [str(c) for c in exc.candidates],
                   "stats": {"mode": "unique", "reads": len(reads), "ambiguous": True}}
    _emit_json(args, out)


def run_tradeoff(args):
    code = _load_code(args.code)
    params = {"t": args.t, "trials": args.trials, "mode": args.mode, "code": _code_identity(code)}
    _emit_table(args, cmd_tradeoff(_config(args, "tradeoff", params), code))


def run_montecarlo(args):
    code = _load_code(args.code)
    params = {"t": args.t, "s": args.s, "h": args.h, "reads": args.N, "trials": args.trials,
              "mode": args.mode, "code": _code_identity(code)}
    _emit_table(args, cmd_montecarlo(_config(args, "montecarlo", params), code))


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def globals_(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without defaults so they do not
        # clobber values given before the subcommand name
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        g.add_argument("--seed", type=int, default=d(0))
        g.add_argument("--threads", type=int, default=d(1))
        g.add_argument("--out", default=d(None), help="write output here instead of stdout")
        g.add_argument("--format", choices=["csv", "json"], default=d(None))
        return g

    common = globals_(False)
    ap = argparse.ArgumentParser(prog="burstrecon", description=__doc__.splitlines()[0], parents=[globals_(True)])
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = cmd("distance", run_distance, "burst distance between two words")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--check-oracle", action="store_true")

    p = cmd("ballsize", run_ballsize, "exact ball sizes against the sandwich bounds")
    p.add_argument("--n", required=True, help="e.g. 6..14 or 8,10")
    p.add_argument("--q", default="2")
    p.add_argument("--b", default="1")
    p.add_argument("--t", default="1")
    p.add_argument("--method", choices=["enumerate", "count"], default="enumerate")
    p.add_argument("--enumerate-limit", type=int, default=2_000_000)
    p.add_argument("--progress", help="checkpoint file (default: <out>.progress.json)")

    p = cmd("intersect", run_intersect, "size of Ball_t(x) & Ball_t(y)")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--list", action="store_true")

    p = cmd("construct", run_construct, "build a burst-correcting code")
    p.add_argument("method", choices=["gv", "matching"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--t", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--order", choices=["lexicographic", "random"], default="lexicographic")
    p.add_argument("--budget", type=int)

    p = cmd("check", run_check, "verify a code's burst-correcting radius")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, help="radius to check (default: designed_t)")

    p = cmd("degree", run_degree, "exact reconstruction degree of a code")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int)

    p = cmd("shift", run_shift, "shift a word set to a fixed point")
    p.add_argument("--set", required=True)
    p.add_argument("--b", type=int, default=1)

    p = cmd("diametric", run_diametric, "search for sets of diameter <= 2d larger than a ball")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--exact-limit", type=int, default=64)
    p.add_argument("--witness", action="store_true")

    p = cmd("simulate", run_simulate, "draw N distinct channel outputs")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--code")
    src.add_argument("--word")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--index", type=int, help="codeword index (sorted order); random by default")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--b", type=int, help="burst length (default: the code's, or 1)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--adversarial", action="store_true")
    p.add_argument("--other", help="second centre for adversarial reads")

    p = cmd("reconstruct", run_reconstruct, "unique or list reconstruction from reads")
    p.add_argument("--code", required=True)
    p.add_argument("--reads", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--list", action="store_true")
    p.add_argument("--max-candidate-bits", type=int, default=24)

    p = cmd("tradeoff", run_tradeoff, "degree and list sizes of a code over ch(t, b)")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--mode", choices=["random", "adversarial", "mixed"], default="mixed")

    p = cmd("montecarlo", run_montecarlo, "repeated transmit/reconstruct trials")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--mode", choices=["random", "adversarial"], default="random")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ValidationFailure, InconsistentReads, fmt.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ParameterError, CandidateOverflow) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
