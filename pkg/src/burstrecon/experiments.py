"""Experiment drivers behind the CLI: parameter sweeps, trade-off tables, Monte Carlo runs.

Every driver takes an ``ExperimentConfig`` and returns a ``ResultTable`` whose
rows are deterministic for a fixed config and seed. Cells run in a thread
pool, each with its own child seed, and are merged in cell order. Long
sweeps can checkpoint finished cells to a sidecar JSON file keyed by the
config hash and resume from it.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .balls import ball_size, count_ball, reconstruction_degree, reconstruction_degree_bound
from .channel import RNG_ALGORITHM, ChannelSpec, generate_reads, make_rng, spawn_seeds
from .codes import Code, check_burst_code
from .core import ParameterError
from .recon import (
    bruteforce_list,
    completeness_threshold,
    consistent_codewords,
    list_reconstruct,
    list_size_bound,
    stars_bound,
)

# meta keys that legitimately differ between identical runs
VOLATILE_META = ("timestamp", "elapsed_s")


@dataclass
class ExperimentConfig:
    command: str
    params: dict
    seed: int = 0
    threads: int = 1

    def canonical(self) -> str:
        # thread count does not change results, so it is not part of the identity
        return json.dumps({"command": self.command, "params": self.params, "seed": self.seed},
                          sort_keys=True, default=str)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[dict]
    meta: dict = field(default_factory=dict)

    @classmethod
    def for_config(cls, config: ExperimentConfig, columns, rows, **extra) -> ResultTable:
        meta = {
            "tool": "burstrecon",
            "version": __version__,
            "command": config.command,
            "config": config.canonical(),
            "config_hash": config.digest(),
            "rng": RNG_ALGORITHM,
        }
        meta.update(extra)
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(list(columns), rows, meta)

    def flag_columns(self) -> list[str]:
        return [c for c in self.columns if c.endswith("_ok") or c == "flag"]

    def failed_flags(self) -> list[tuple[int, str]]:
        """(row index, column) for every false flag on an in-regime, non-skipped row."""
        bad = []
        for k, row in enumerate(self.rows):
            if row.get("status", "ok") != "ok" or row.get("in_regime", True) is False:
                continue
            for c in self.flag_columns():
                if row.get(c) is False:
                    bad.append((k, c))
        return bad

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.meta.items():
            buf.write(f"# {k}={v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_cell(row.get(c)) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{c: _json_value(row.get(c)) for c in self.columns} for row in self.rows]
        return json.dumps({"meta": self.meta, "columns": self.columns, "rows": rows}, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ParameterError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(round(v, 9))
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return round(v, 9)
    return str(v)


def strip_volatile(text: str) -> str:
    """Drop timestamp-like meta lines from a CSV rendering (for reproducibility checks)."""
    keep = []
    for ln in text.splitlines():
        if ln.startswith("# ") and ln[2:].split("=", 1)[0] in VOLATILE_META:
            continue
        keep.append(ln)
    return "\n".join(keep)


# --- work pool with checkpoint/resume -----------------------------------------


class Progress:
    """Sidecar JSON of finished cells; ignored if written for a different config."""

    def __init__(self, path, config_hash: str):
        self.path = Path(path) if path else None
        self.config_hash = config_hash
        self.done: dict[str, dict] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            data = json.loads(self.path.read_text())
            if data.get("config_hash") == config_hash:
                self.done = data.get("done", {})

    def record(self, key: str, row: dict):
        with self._lock:
            self.done[key] = row
            if self.path:
                tmp = self.path.with_suffix(self.path.suffix + ".tmp")
                tmp.write_text(json.dumps({"config_hash": self.config_hash, "done": self.done},
                                          default=_json_value))
                tmp.replace(self.path)


def run_cells(cells, fn, config: ExperimentConfig, progress_path=None) -> list[dict]:
    """Evaluate fn(cell, seed_sequence) for each (key, cell); results in cell order."""
    progress = Progress(progress_path, config.digest())
    seeds = spawn_seeds(config.seed, len(cells))
    todo = [(i, key, cell) for i, (key, cell) in enumerate(cells) if key not in progress.done]

    def work(item):
        i, key, cell = item
        row = fn(cell, seeds[i])
        progress.record(key, row)

    if config.threads > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            list(pool.map(work, todo))
    else:
        for item in todo:
            work(item)
    return [progress.done[key] for key, _ in cells]


# --- ballsize -------------------------------------------------------------------

BALLSIZE_COLUMNS = ["n", "q", "b", "t", "lower", "exact", "upper", "flag", "method", "status"]


def cmd_ballsize(config: ExperimentConfig, progress_path=None) -> ResultTable:
    """Sweep (n, q, b, t); exact size by enumeration (or the transfer-matrix count) vs the sandwich.

    params: n, q, b, t (lists of ints), method ("enumerate" or "count"),
    enumerate_limit (largest ball we are willing to list).
    """
    p = config.params
    method = p.get("method", "enumerate")
    limit = int(p.get("enumerate_limit", 2_000_000))
    cells = []
    for q in p["q"]:
        for b in p["b"]:
            for t in p["t"]:
                for n in p["n"]:
                    cells.append((f"{n}/{q}/{b}/{t}", (int(n), int(q), int(b), int(t))))

    def one(cell, _seed):
        n, q, b, t = cell
        row = {"n": n, "q": q, "b": b, "t": t, "method": method}
        if n < 2 * t * b:
            return {**row, "status": "skipped: n < 2tb"}
        if method == "enumerate":
            if count_ball(t, b, n, q) > limit:
                return {**row, "status": f"skipped: ball larger than {limit}"}
            bs = ball_size(t, b, n, q)
            lower, exact, upper, ok = bs.lower, bs.exact, bs.upper, bs.sandwiched
        elif method == "count":
            from .balls import ball_bounds

            lower, upper = ball_bounds(t, b, n, q)
            exact = count_ball(t, b, n, q)
            ok = lower <= exact <= upper
        else:
            raise ParameterError(f"unknown method {method!r}")
        return {**row, "lower": _fraction_text(lower), "exact": exact, "upper": upper,
                "flag": bool(ok), "status": "ok"}

    rows = run_cells(cells, one, config, progress_path)
    return ResultTable.for_config(config, BALLSIZE_COLUMNS, rows)


def _fraction_text(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{float(x):.6f}"


# --- tradeoff ---------------------------------------------------------------------

TRADEOFF_COLUMNS = [
    "n", "q", "b", "t", "epsilon", "code_ok", "s", "h", "reads", "degree", "degree_bound",
    "degree_ok", "read_order", "max_list", "mean_list", "list_bound", "list_ok", "lambda_est",
    "max_stars", "stars_bound", "stars_ok", "in_regime", "budget",
]


def read_order(N: int, b: int, n: int, q: int, cap: int) -> int:
    """Largest s <= cap with |Ball_{s,b}(0)| < N, or -1 when N = 1 (single-length proxy)."""
    if N <= 1:
        return -1
    s = 0
    while s + 1 <= cap and count_ball(s + 1, b, n, q) < N:
        s += 1
    return s


def cmd_tradeoff(config: ExperimentConfig, code: Code) -> ResultTable:
    """Measure degree and list sizes for a (epsilon, b)-code over ch(t, b).

    params: t, trials (per h), mode ("random"/"adversarial"/"mixed"). The code's
    designed_t is epsilon; s = t - epsilon - 1 and rows are emitted for each
    h in 0..s. The budget column reports epsilon + read_order + lambda_est
    next to t - 1 as orientation only.
    """
    p = config.params
    t = int(p["t"])
    trials = int(p.get("trials", 20))
    mode = p.get("mode", "mixed")
    n, q, b = code.n, code.q, code.b
    eps = code.designed_t
    code_ok, _ = check_burst_code(code, eps)
    s = t - eps - 1
    degree = reconstruction_degree(code, t, b)
    bound = reconstruction_degree_bound(n, q, b, t, s) if 0 <= s <= t - 1 else None
    base = {
        "n": n, "q": q, "b": b, "t": t, "epsilon": eps, "code_ok": bool(code_ok), "s": s,
        "degree": degree,
        "degree_bound": None if bound is None else _fraction_text(bound),
        "degree_ok": (degree == 1) if bound is None else bool(degree <= bound),
    }
    if s < 1:
        row = dict(base, h=0, reads=degree, read_order=read_order(degree, b, n, q, t))
        row["budget"] = f"{eps}+{row['read_order']}+0 vs {t - 1}"
        return ResultTable.for_config(config, TRADEOFF_COLUMNS, [row])

    cells = [(str(h), h) for h in range(0, s + 1)]

    def one(h, seed):
        rng = make_rng(seed)
        N = count_ball(s - h, b, n, q) + 1
        spec = ChannelSpec(n, q, t, b)
        words = code.word_list()
        sizes, stars = [], []
        for k in range(trials):
            x = words[int(rng.integers(len(words)))]
            adv = None
            if len(words) > 1 and (mode == "adversarial" or (mode == "mixed" and k % 2)):
                other = int(rng.integers(len(words) - 1))
                adv = words[other + (other >= words.index(x))]
            reads = generate_reads(x, spec, N, rng, adversary=adv)
            res = list_reconstruct(code, reads, t, s, h, b, validate=False)
            sizes.append(len(res))
            stars.append(res.stats.get("stars", 0))
        row = dict(base, h=h, reads=N, read_order=read_order(N, b, n, q, t))
        row["max_list"] = max(sizes)
        row["mean_list"] = float(np.mean(sizes))
        row["lambda_est"] = math.log(max(sizes), n)
        if h >= 1:
            row["list_bound"] = list_size_bound(n, q, b, t, s, h)
            row["list_ok"] = max(sizes) <= row["list_bound"]
            row["max_stars"] = max(stars)
            row["stars_bound"] = stars_bound(t, s, h, b)
            row["in_regime"] = n >= completeness_threshold(q, b, t, s, h)
            row["stars_ok"] = max(stars) <= row["stars_bound"]
        row["budget"] = f"{eps}+{row['read_order']}+{row['lambda_est']:.3f} vs {t - 1}"
        return row

    rows = run_cells(cells, one, config)
    return ResultTable.for_config(config, TRADEOFF_COLUMNS, rows)


# --- montecarlo ---------------------------------------------------------------------

MONTECARLO_COLUMNS = [
    "n", "q", "b", "t", "s", "h", "reads", "mode", "trials", "success_rate", "mean_list",
    "max_list", "mean_stars", "max_stars", "soundness_violations", "completeness_mismatches",
    "list_bound", "list_ok", "stars_bound", "stars_ok", "soundness_ok", "in_regime",
]


def cmd_montecarlo(config: ExperimentConfig, code: Code) -> ResultTable:
    """transmit -> generate_reads -> reconstruct, T times.

    params: t, trials, reads (N; default |Ball_{s-h}|+1 in list mode, or the
    exact degree in unique mode), s and h (omit h for unique reconstruction),
    mode ("random"/"adversarial"), chunk (trials per work-pool cell; fixed so
    that results do not depend on the thread count).
    Success means the transmitted word is in the list (list mode) or is the
    unique answer (unique mode). Every list is compared with the brute-force
    list to count soundness violations and completeness mismatches.
    """
    p = config.params
    t = int(p["t"])
    trials = int(p.get("trials", 100))
    mode = p.get("mode", "random")
    n, q, b = code.n, code.q, code.b
    h = p.get("h")
    s = p.get("s")
    list_mode = h is not None
    if list_mode:
        s, h = int(s), int(h)
        N = int(p.get("reads") or count_ball(s - h, b, n, q) + 1)
    else:
        N = int(p.get("reads") or reconstruction_degree(code, t, b))
    spec = ChannelSpec(n, q, t, b)
    chunk = max(1, int(p.get("chunk", 25)))
    cells = [(str(k), min(chunk, trials - lo)) for k, lo in enumerate(range(0, trials, chunk))]
    words = code.word_list()

    def one(count, seed):
        rng = make_rng(seed)
        out = {"success": 0, "sizes": [], "stars": [], "unsound": 0, "mismatch": 0}
        for _ in range(count):
            x = words[int(rng.integers(len(words)))]
            adv = None
            if mode == "adversarial" and len(words) > 1:
                other = int(rng.integers(len(words) - 1))
                adv = words[other + (other >= words.index(x))]
            reads = generate_reads(x, spec, N, rng, adversary=adv)
            truth = bruteforce_list(code, reads, t, b)
            if list_mode:
                res = list_reconstruct(code, reads, t, s, h, b, validate=False)
                found = res.codewords
                out["stars"].append(res.stats.get("stars", 0))
            else:
                found = consistent_codewords(code, reads, t, b)
            out["sizes"].append(len(found))
            out["unsound"] += 0 if found <= truth else 1
            out["mismatch"] += 0 if found == truth else 1
            ok = x in found if list_mode else (len(found) == 1 and x in found)
            out["success"] += int(ok)
        return out

    t0 = time.perf_counter()
    parts = run_cells(cells, one, config)
    elapsed = time.perf_counter() - t0
    sizes = [v for part in parts for v in part["sizes"]]
    stars = [v for part in parts for v in part["stars"]]
    row = {
        "n": n, "q": q, "b": b, "t": t, "s": s, "h": h, "reads": N, "mode": mode, "trials": trials,
        "success_rate": sum(part["success"] for part in parts) / trials,
        "mean_list": float(np.mean(sizes)),
        "max_list": max(sizes),
        "soundness_violations": sum(part["unsound"] for part in parts),
        "completeness_mismatches": sum(part["mismatch"] for part in parts),
    }
    row["soundness_ok"] = row["soundness_violations"] == 0
    if list_mode:
        row["mean_stars"] = float(np.mean(stars))
        row["max_stars"] = max(stars)
        row["in_regime"] = h >= 1 and n >= completeness_threshold(q, b, t, s, h)
        if h >= 1:
            row["list_bound"] = list_size_bound(n, q, b, t, s, h)
            row["list_ok"] = row["max_list"] <= row["list_bound"]
            row["stars_bound"] = stars_bound(t, s, h, b)
            row["stars_ok"] = row["max_stars"] <= row["stars_bound"]
    return ResultTable.for_config(config, MONTECARLO_COLUMNS, [row], elapsed_s=round(elapsed, 3))
