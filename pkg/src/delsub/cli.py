"""Command-line surface: ball materialization, intersection reports,
verification sweeps, and channel simulation.

Data goes to stdout as plain text, JSON, or CSV; progress goes to
stderr.  Exit status: 0 clean / verified, 1 a sweep found violations
(or a fast-vs-oracle cross-check mismatched), 2 usage or budget errors.
Every randomized command takes an explicit seed and is deterministic
given its full flag set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from itertools import product
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from .balls import BallSpec, BudgetExceededError, DEFAULT_BUDGET, ball_intersection, ds_ball
from .intersect import (
    constant_regime_bound,
    coverage_bound,
    intersection_size_fast,
    min_valid_length,
    verify_claims,
)
from .reconstruct import Codebook, ReadSet, channel_transmit, reconstruct
from .sequence import Sequence, lcs_length

Word = Tuple[int, ...]

PAIR_CAP = 4_000_000
SCOPES = ("claims", "theorem", "lemmas", "remark5")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delsub",
        description=(
            "Error-ball combinatorics and reconstruction for the q-ary "
            "single-deletion single-substitution channel"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ball = sub.add_parser("ball", help="materialize an error ball")
    p_ball.add_argument("--q", type=int, required=True, help="alphabet size")
    p_ball.add_argument("--x", type=str, required=True, help="word (digit string)")
    p_ball.add_argument("--t", type=int, default=0, help="deletions (exact)")
    p_ball.add_argument("--s", type=int, default=0, help="substitutions (at most)")
    p_ball.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_format(p_ball)
    p_ball.set_defaults(func=cmd_ball)

    p_int = sub.add_parser("intersect", help="(1,1)-ball intersection of two words")
    p_int.add_argument("--q", type=int, required=True)
    p_int.add_argument("--x", type=str, required=True)
    p_int.add_argument("--y", type=str, required=True)
    p_int.add_argument(
        "--mode", choices=("fast", "oracle", "both"), default="fast",
        help="structural path, materialized oracle, or cross-checked both",
    )
    p_int.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_format(p_int)
    p_int.set_defaults(func=cmd_intersect)

    p_ver = sub.add_parser("verify", help="sweep structural facts over word pairs")
    p_ver.add_argument("--scope", choices=SCOPES, required=True)
    p_ver.add_argument("--q", type=int, required=True)
    p_ver.add_argument("--n", type=int, required=True)
    mode = p_ver.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true", help="all ordered pairs")
    mode.add_argument("--samples", type=int, help="number of sampled pairs")
    p_ver.add_argument("--seed", type=int, help="required with --samples")
    p_ver.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_ver.add_argument("--progress", action="store_true", help="progress lines on stderr")
    _add_format(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="transmit/reconstruct Monte Carlo")
    p_sim.add_argument("--q", type=int, required=True)
    book = p_sim.add_mutually_exclusive_group(required=True)
    book.add_argument("--parity", action="store_true", help="single parity-check codebook")
    book.add_argument("--codebook", type=str, help="newline-delimited codeword file")
    p_sim.add_argument("--n", type=int, help="codeword length (parity codebook)")
    p_sim.add_argument(
        "--reads", type=str, required=True,
        help="comma-separated distinct-read counts, e.g. 1,54,108",
    )
    p_sim.add_argument("--trials", type=int, required=True)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--sub-prob", type=float, default=0.5)
    p_sim.add_argument(
        "--max-draws", type=int, default=10000,
        help="channel uses allowed per trial while collecting distinct reads",
    )
    _add_format(p_sim)
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("plain", "json", "csv"), default="plain", dest="fmt"
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        _emit_error(str(exc), args)
        return 2
    except (ValueError, OSError) as exc:
        _emit_error(str(exc), args)
        return 2


def _emit_error(message: str, args) -> None:
    fmt = getattr(args, "fmt", "plain")
    if fmt == "json":
        print(json.dumps({"error": message}))
    else:
        print(f"error: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# ball


def cmd_ball(args) -> int:
    x = Sequence.parse(args.x, args.q)
    ball = ds_ball(x, BallSpec(args.t, args.s), budget=args.budget)
    members = [str(s) for s in ball.sorted()]
    payload = {
        "command": "ball",
        "q": args.q,
        "x": str(x),
        "t": args.t,
        "s": args.s,
        "size": len(ball),
        "members": members,
    }
    if args.fmt == "json":
        print(json.dumps(payload, indent=2))
    elif args.fmt == "csv":
        _print_csv(["member"], [[m] for m in members])
    else:
        print(f"ball of {x} with t={args.t}, s={args.s}: size {len(ball)}")
        for m in members:
            print(m)
    return 0


# ---------------------------------------------------------------------------
# intersect


def cmd_intersect(args) -> int:
    x = Sequence.parse(args.x, args.q)
    y = Sequence.parse(args.y, args.q)
    oracle_size: Optional[int] = None
    match: Optional[bool] = None
    if args.mode in ("fast", "both"):
        report = intersection_size_fast(x, y, oracle_budget=args.budget)
        payload = report.to_dict()
    else:
        size = len(ball_intersection(x, y, BallSpec(1, 1), budget=args.budget))
        from .diffs import diff_profile
        from .intersect import bound_applicable

        d = diff_profile(x, y).d
        payload = {
            "n": len(x),
            "q": args.q,
            "d": d,
            "size": size,
            "method": "oracle",
            "bound": coverage_bound(len(x), args.q),
            "bound_applicable": bound_applicable(len(x), args.q, d),
            "group_sizes": {},
            "omega0_size": None,
            "omega1_size": None,
            "omega2_size": None,
            "omega1_minus_omega0": None,
            "omega2_minus_omega0": None,
        }
    if args.mode == "both":
        oracle_size = len(ball_intersection(x, y, BallSpec(1, 1), budget=args.budget))
        match = payload["size"] == oracle_size
    payload = {"command": "intersect", "mode": args.mode, "x": str(x), "y": str(y),
               **payload, "oracle_size": oracle_size, "match": match}
    if args.fmt == "json":
        print(json.dumps(payload, indent=2))
    elif args.fmt == "csv":
        cols = ["n", "q", "d", "size", "method", "bound", "bound_applicable",
                "oracle_size", "match"]
        _print_csv(cols, [[payload[c] for c in cols]])
    else:
        print(f"|ball({x}) & ball({y})| = {payload['size']}  (method: {payload['method']})")
        print(f"n={payload['n']} q={payload['q']} d={payload['d']} "
              f"bound={payload['bound']} applicable={payload['bound_applicable']}")
        if payload["group_sizes"]:
            groups = ", ".join(f"{k}={v}" for k, v in sorted(payload["group_sizes"].items()))
            print(f"group sizes: {groups}")
        if args.mode == "both":
            print(f"oracle size: {oracle_size}  match: {match}")
    if match is False:
        return 1
    return 0


# ---------------------------------------------------------------------------
# verify


_WORKER_CTX: Dict[str, object] = {}


def _init_worker(q: int, scope: str) -> None:
    _WORKER_CTX["q"] = q
    _WORKER_CTX["scope"] = scope


def _check_pair(pair: Tuple[Word, Word]):
    """Worker: returns (violation_detail | None, size | None)."""
    q = _WORKER_CTX["q"]
    scope = _WORKER_CTX["scope"]
    xs, ys = pair
    x = Sequence._wrap(xs, q)
    y = Sequence._wrap(ys, q)
    if scope in ("claims", "lemmas"):
        report = verify_claims(x, y)
        checks = report.group_checks if scope == "claims" else report.fact_checks
        failed = [c.name for c in checks if c.applicable and not c.passed]
        if failed:
            return {"x": str(x), "y": str(y), "failed": failed}, None
        return None, None
    size = intersection_size_fast(x, y).size
    limit = coverage_bound(len(x), q) if scope == "theorem" else constant_regime_bound(q)
    if size > limit:
        return {"x": str(x), "y": str(y), "size": size, "limit": limit}, size
    return None, size


def _exhaustive_pairs(q: int, n: int, min_d: int) -> List[Tuple[Word, Word]]:
    total_words = q**n
    if total_words * (total_words - 1) > PAIR_CAP:
        raise ValueError(
            f"{total_words * (total_words - 1)} ordered pairs exceed the exhaustive "
            f"cap of {PAIR_CAP}; use --samples with --seed"
        )
    words = list(product(range(q), repeat=n))
    pairs = []
    for xs in words:
        for ys in words:
            if xs is ys:
                continue
            if sum(a != b for a, b in zip(xs, ys)) >= min_d:
                pairs.append((xs, ys))
    return pairs


def _sampled_pairs(
    rng: random.Random, q: int, n: int, count: int, min_d: int, need_shift: bool
) -> List[Tuple[Word, Word]]:
    """Seeded pair sample mixing uniform pairs with small-distance pairs
    (random substitution patterns), all meeting the minimum Hamming
    distance; ``need_shift`` additionally requires that the words share
    no length n-1 subsequence (the constant-regime hypothesis)."""
    pairs: List[Tuple[Word, Word]] = []
    while len(pairs) < count:
        xs = tuple(rng.randrange(q) for _ in range(n))
        if rng.random() < 0.5:
            k = rng.randint(min_d, min(n, min_d + 4))
            positions = rng.sample(range(n), k)
            ys_list = list(xs)
            for p in positions:
                ys_list[p] = (xs[p] + 1 + rng.randrange(q - 1)) % q
            ys = tuple(ys_list)
        else:
            ys = tuple(rng.randrange(q) for _ in range(n))
            if sum(a != b for a, b in zip(xs, ys)) < min_d:
                continue
        if need_shift and n - lcs_length(xs, ys) < 2:
            continue
        pairs.append((xs, ys))
    return pairs


def cmd_verify(args) -> int:
    if args.samples is not None and args.seed is None:
        raise ValueError("--samples requires --seed")
    q, n, scope = args.q, args.n, args.scope
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if scope in ("theorem", "remark5") and n < min_valid_length(q):
        raise ValueError(
            f"scope {scope} needs n >= {min_valid_length(q)} for q = {q}"
        )
    min_d = 3 if scope == "remark5" else 2
    if args.exhaustive:
        pairs = _exhaustive_pairs(q, n, min_d)
        if scope == "remark5":
            pairs = [p for p in pairs if n - lcs_length(p[0], p[1]) >= 2]
        mode = "exhaustive"
    else:
        rng = random.Random(args.seed)
        pairs = _sampled_pairs(rng, q, n, args.samples, min_d, scope == "remark5")
        mode = "sampled"

    violations: List[dict] = []
    max_size: Optional[int] = None
    checked = 0
    step = max(1, len(pairs) // 20)
    if args.jobs > 1:
        with Pool(args.jobs, initializer=_init_worker, initargs=(q, scope)) as pool:
            for detail, size in pool.imap(_check_pair, pairs, chunksize=256):
                checked += 1
                if detail is not None:
                    violations.append(detail)
                if size is not None and (max_size is None or size > max_size):
                    max_size = size
                if args.progress and checked % step == 0:
                    print(f"checked {checked}/{len(pairs)}", file=sys.stderr)
    else:
        _init_worker(q, scope)
        for pair in pairs:
            detail, size = _check_pair(pair)
            checked += 1
            if detail is not None:
                violations.append(detail)
            if size is not None and (max_size is None or size > max_size):
                max_size = size
            if args.progress and checked % step == 0:
                print(f"checked {checked}/{len(pairs)}", file=sys.stderr)

    limit = (
        coverage_bound(n, q) if scope == "theorem"
        else constant_regime_bound(q) if scope == "remark5"
        else None
    )
    payload = {
        "command": "verify",
        "scope": scope,
        "q": q,
        "n": n,
        "mode": mode,
        "seed": args.seed,
        "pairs_checked": checked,
        "violations": len(violations),
        "max_size": max_size,
        "bound": limit,
        "violation_samples": violations[:10],
    }
    if args.fmt == "json":
        print(json.dumps(payload, indent=2))
    elif args.fmt == "csv":
        cols = ["scope", "q", "n", "mode", "pairs_checked", "violations", "max_size", "bound"]
        _print_csv(cols, [[payload[c] for c in cols]])
    else:
        print(
            f"verify {scope}: q={q} n={n} {mode} pairs={checked} "
            f"violations={len(violations)}"
            + (f" max_size={max_size} bound={limit}" if limit is not None else "")
        )
        for v in violations[:10]:
            print(f"  violation: {v}")
    return 1 if violations else 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    if args.parity:
        if args.n is None:
            raise ValueError("--parity requires --n")
        codebook = Codebook.parity(args.n, args.q)
    else:
        codebook = Codebook.load(args.codebook, args.q)
    read_counts = [int(part) for part in args.reads.split(",")]
    if any(r < 1 for r in read_counts):
        raise ValueError("read counts must be positive")
    rng = random.Random(args.seed)
    rows = []
    for requested in read_counts:
        successes = 0
        for _ in range(args.trials):
            codeword = codebook.sample_word(rng)
            distinct = set()
            draws = 0
            while len(distinct) < requested and draws < args.max_draws:
                out = channel_transmit(codeword, args.sub_prob, rng=rng)
                distinct.add(out.symbols)
                draws += 1
            reads = ReadSet(distinct, codebook.q, codebook.n - 1, raw_count=draws)
            result = reconstruct(reads, codebook)
            if result.outcome == "unique" and result.codeword == codeword:
                successes += 1
        rows.append(
            {
                "reads_requested": requested,
                "trials": args.trials,
                "successes": successes,
                "rate": successes / args.trials,
            }
        )
    payload = {
        "command": "simulate",
        "q": codebook.q,
        "n": codebook.n,
        "codebook": "parity" if args.parity else args.codebook,
        "trials": args.trials,
        "seed": args.seed,
        "substitution_probability": args.sub_prob,
        "rows": rows,
    }
    if args.fmt == "json":
        print(json.dumps(payload, indent=2))
    elif args.fmt == "csv":
        cols = ["reads_requested", "trials", "successes", "rate"]
        _print_csv(cols, [[row[c] for c in cols] for row in rows])
    else:
        print(f"simulate: q={codebook.q} n={codebook.n} trials={args.trials} seed={args.seed}")
        for row in rows:
            print(
                f"  reads={row['reads_requested']:>6}  successes={row['successes']}/"
                f"{row['trials']}  rate={row['rate']:.4f}"
            )
    return 0


def _print_csv(header: List[str], rows: List[List[object]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


if __name__ == "__main__":
    raise SystemExit(main())
