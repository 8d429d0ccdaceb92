"""Command line entry point: batch, stream, verify-algebra, verify-topology.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid configuration,
3 failed verification.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from dataclasses import dataclass
from typing import IO, Iterator

from . import multireal
from .dedup import BlockScheme, DetectionStats, Record, Threshold, detect_blocked, detect_exhaustive
from .errors import (
    EpsilonMustBePositiveError,
    IdCollisionError,
    InvalidCountError,
    MultiDedupError,
    ParseError,
)
from .multimetric import METRICS, ImbalanceFunction, parse_imbalance, verify_topology
from .multiset import Multiset, parse_multiset
from .stream import WindowState

log = logging.getLogger("multidedup")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2, 3

FORMATS = ("counts-jsonl", "tokens-jsonl")


class ConfigError(MultiDedupError):
    code = "invalid-config"


def parse_record(obj, fmt: str) -> Record:
    if not isinstance(obj, dict) or "id" not in obj:
        raise ParseError("expected an object with an 'id' field")
    rid = obj["id"]
    if isinstance(rid, bool) or not isinstance(rid, (str, int)):
        raise ParseError(f"id must be a string or integer, got {rid!r}")
    if fmt == "counts-jsonl":
        attrs = obj.get("attrs")
        if not isinstance(attrs, dict):
            raise ParseError("'attrs' must be an object of token -> count")
        for tok, k in attrs.items():
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise InvalidCountError(f"count for {tok!r} must be a positive integer, got {k!r}")
        return Record(str(rid), Multiset(attrs))
    if fmt == "tokens-jsonl":
        tokens = obj.get("tokens")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ParseError("'tokens' must be a list of strings")
        return Record(str(rid), Multiset.from_tokens(tokens))
    raise ConfigError(f"unknown format {fmt!r}")


def ingest(source: IO[str], fmt: str = "counts-jsonl") -> Iterator[Record]:
    """Yield records from a JSON Lines stream; blank lines are skipped."""
    seen: set[str] = set()
    for lineno, line in enumerate(source, 1):
        if not line.strip():
            continue
        try:
            rec = parse_record(json.loads(line), fmt)
            if rec.id in seen:
                raise IdCollisionError(f"duplicate record id {rec.id!r}")
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        except MultiDedupError as exc:
            raise type(exc)(f"line {lineno}: {exc.code}: {exc}") from None
        seen.add(rec.id)
        yield rec


@dataclass
class Config:
    mode: str
    input: str = "-"
    metric: str = "counts"
    imbalance: str = "abs"
    epsilon: str = "0:2"
    window: int = 100
    block: str = "card:1"
    format: str = "counts-jsonl"
    out: str | None = None
    confirm: bool = False
    drop_duplicates: bool = False
    mset: str | None = None
    trials: int = 10_000
    seed: int = 0
    limit: int = 4096


@contextlib.contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


@contextlib.contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _settings(config: Config) -> tuple[Threshold, ImbalanceFunction, BlockScheme]:
    try:
        eps = Threshold.parse(config.epsilon)
        f = parse_imbalance(config.imbalance)
        scheme = BlockScheme.parse(config.block)
    except EpsilonMustBePositiveError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if eps.epsilon.value != 0:
        log.warning(
            "epsilon %s has a nonzero value; every counts-metric delta has value 0, "
            "so all pairs would be reported",
            eps,
        )
        if not config.confirm:
            raise ConfigError("nonzero epsilon value requires --yes")
    return eps, f, scheme


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)


def run_batch(config: Config) -> int:
    eps, f, scheme = _settings(config)
    with _open_in(config.input) as src:
        records = list(ingest(src, config.format))
    stats = DetectionStats()
    if scheme.kind == "none":
        pairs = detect_exhaustive(records, eps, f, stats)
    else:
        pairs = detect_blocked(records, eps, f, scheme, stats)
    with _open_out(config.out) as out:
        for p in pairs:
            out.write(_dump(p.to_dict()) + "\n")
    print(stats.summary(), file=sys.stderr)
    return EXIT_OK


def run_stream(config: Config) -> int:
    eps, f, scheme = _settings(config)
    if config.window < 1:
        raise ConfigError(f"--window must be >= 1, got {config.window}")
    state = WindowState(config.window, eps, f, scheme, drop_duplicates=config.drop_duplicates)
    with _open_in(config.input) as src, _open_out(config.out) as out:
        for rec in ingest(src, config.format):
            out.write(_dump(state.process(rec).to_dict()) + "\n")
            out.flush()
    state.stats.blocks = state.index.block_count
    print(state.stats.summary(), file=sys.stderr)
    return EXIT_OK


def run_verify_algebra(config: Config) -> int:
    report = multireal.run_law_suite(config.trials, config.seed)
    for failure in report.failures[:20]:
        print(failure)
    print(f"{report.checked} triples checked, {len(report.failures)} failures")
    return EXIT_OK if report.ok else EXIT_VERIFY


def run_verify_topology(config: Config) -> int:
    if config.metric not in METRICS:
        raise ConfigError(f"verify-topology needs --metric {'|'.join(METRICS)}")
    if not config.mset:
        raise ConfigError("verify-topology needs --mset")
    try:
        M = parse_multiset(config.mset)
        if config.metric == "lifted":
            M = Multiset((multireal.parse_number(x), k) for x, k in M.items())
    except ParseError as exc:
        raise ConfigError(f"--mset: {exc}") from None
    report = verify_topology(M, METRICS[config.metric], config.limit)
    print(f"{M}: {report}")
    print(json.dumps({"open_count": report.open_count, "axioms_hold": report.axioms_hold,
                      "counterexample": report.counterexample}))
    return EXIT_OK if report.axioms_hold else EXIT_VERIFY


MODES = {
    "batch": run_batch,
    "stream": run_stream,
    "verify-algebra": run_verify_algebra,
    "verify-topology": run_verify_topology,
}


def run(config: Config) -> int:
    if config.mode in ("batch", "stream") and config.metric != "counts":
        log.error("records are compared with the counts metric; got --metric %s", config.metric)
        return EXIT_CONFIG
    try:
        return MODES[config.mode](config)
    except (ConfigError, EpsilonMustBePositiveError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (OSError, MultiDedupError) as exc:
        log.error("%s", exc)
        return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multidedup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True)

    def detection_args(p):
        p.add_argument("input", nargs="?", default="-", help="JSON Lines file (default: stdin)")
        p.add_argument("--epsilon", default="0:2", help="threshold as value:mult (default 0:2)")
        p.add_argument("--metric", default="counts", choices=["counts", "discrete", "lifted"])
        p.add_argument("--imbalance", default="abs", help="abs | capped:<c>")
        p.add_argument("--block", default="card:1", help="card:<width> | support | none")
        p.add_argument("--format", default="counts-jsonl", choices=FORMATS)
        p.add_argument("--out", default=None)
        p.add_argument("--yes", dest="confirm", action="store_true",
                       help="accept an epsilon with nonzero value")

    batch = sub.add_parser("batch", help="find duplicate pairs in a dataset")
    detection_args(batch)

    stream = sub.add_parser("stream", help="flag duplicates in a record stream")
    detection_args(stream)
    stream.add_argument("--window", type=int, default=100)
    stream.add_argument("--drop-duplicates", action="store_true",
                        help="do not insert flagged records into the window")

    alg = sub.add_parser("verify-algebra", help="randomized semiring and order law checks")
    alg.add_argument("--trials", type=int, default=10_000)
    alg.add_argument("--seed", type=int, default=0)

    topo = sub.add_parser("verify-topology", help="check topology axioms on a small mset")
    topo.add_argument("--mset", required=True, help='e.g. "{2/a, 1/b}"')
    topo.add_argument("--metric", default="discrete", choices=sorted(METRICS))
    topo.add_argument("--limit", type=int, default=4096)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    return run(Config(**vars(args)))


if __name__ == "__main__":
    sys.exit(main())
