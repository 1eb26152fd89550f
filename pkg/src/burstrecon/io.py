"""Flat-file formats for word sets, read sets and codes.

Every file is a single ``key=value`` header line followed by one word per
line in the digit text format (0-9 then a-z, index 1 first). Blank lines and
lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .balls import WordSet
from .channel import ReadSet
from .codes import Code
from .core import ParameterError, Params, Word


class FormatError(ValueError):
    pass


def _parse_header(line: str, required: tuple[str, ...]) -> dict[str, str]:
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise FormatError(f"header token {token!r} is not key=value")
        k, v = token.split("=", 1)
        fields[k] = v
    missing = [k for k in required if k not in fields]
    if missing:
        raise FormatError(f"header is missing {', '.join(missing)}")
    return fields


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _words(lines: list[str], n: int, q: int) -> list[Word]:
    out = []
    for ln in lines:
        try:
            w = Word.parse(ln, q)
        except ParameterError as exc:
            raise FormatError(str(exc)) from exc
        if len(w) != n:
            raise FormatError(f"word {ln!r} has length {len(w)}, expected {n}")
        out.append(w)
    return out


def dump_wordset(ws: WordSet) -> str:
    return "\n".join([f"n={ws.n} q={ws.q}"] + [str(w) for w in ws]) + "\n"


def load_wordset(text: str) -> WordSet:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty word-set file")
    h = _parse_header(lines[0], ("n", "q"))
    n, q = int(h["n"]), int(h["q"])
    words = _words(lines[1:], n, q)
    if len(set(words)) != len(words):
        raise FormatError("word set contains duplicates")
    return WordSet(n, q, frozenset(words))


def dump_readset(rs: ReadSet, *, n: int, q: int, b: int, t: int, seed) -> str:
    head = f"n={n} q={q} b={b} t={t} N={len(rs)} seed={seed}"
    if rs.source is not None:
        head += f" source={rs.source}"
    if rs.meta.get("rng"):
        head += f" rng={rs.meta['rng']}"
    return "\n".join([head] + [str(w) for w in rs.reads]) + "\n"


def load_readset(text: str) -> tuple[ReadSet, dict]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty read-set file")
    h = _parse_header(lines[0], ("n", "q", "b", "t", "N", "seed"))
    n, q = int(h["n"]), int(h["q"])
    reads = _words(lines[1:], n, q)
    if len(reads) != int(h["N"]):
        raise FormatError(f"header says N={h['N']} but file holds {len(reads)} reads")
    source = Word.parse(h["source"], q) if "source" in h else None
    try:
        rs = ReadSet(tuple(reads), source, {"rng": h.get("rng"), "seed": h["seed"]})
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc
    info = {"n": n, "q": q, "b": int(h["b"]), "t": int(h["t"]), "N": int(h["N"]), "seed": h["seed"]}
    return rs, info


def dump_code(code: Code) -> str:
    method = code.provenance.get("method", "explicit")
    ordering = code.provenance.get("ordering")
    if ordering:
        method = f"{method}-{ordering}"
    seed = code.provenance.get("seed", "none")
    head = (
        f"n={code.n} q={code.q} b={code.b} designed_t={code.designed_t} "
        f"method={method} seed={seed}"
    )
    return "\n".join([head] + [str(w) for w in code.words]) + "\n"


def load_code(text: str) -> Code:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty code file")
    h = _parse_header(lines[0], ("n", "q", "b", "designed_t", "method", "seed"))
    n, q, b = int(h["n"]), int(h["q"]), int(h["b"])
    words = _words(lines[1:], n, q)
    if len(set(words)) != len(words):
        raise FormatError("code contains duplicate words")
    return Code(
        Params(n=n, q=q, b=b),
        WordSet(n, q, frozenset(words)),
        int(h["designed_t"]),
        {"method": h["method"], "seed": h["seed"]},
    )


def read_text(path) -> str:
    return Path(path).read_text()
