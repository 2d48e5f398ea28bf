"""Searching for invertible 0-1 matrices with many invertible 2x2 submatrices.

Three modes share one result type:

* ``exhaustive``: canonical enumeration plus branch and bound. Rows are kept
  strictly increasing in (weight, value) order and the ones of the first row
  sit in the lowest bit positions; any matrix can be brought to this form by
  row and column permutations, neither of which changes N_2 or invertibility.
* ``random``: i.i.d. entries equal to 1 with probability ``epsilon``.
* ``hill_climb``: steepest single-bit-flip ascent from random starts, escaping
  flip-local optima by row or column additions.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence`` with a
per-chunk spawn key, so a seed gives the same result for any worker count.
"""

from __future__ import annotations

import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .density import count_invertible_2_fast, pair_invertible_count
from .errors import NoInvertibleFound
from .gf2 import BinaryMatrix, gf2_rank_rows

log = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy.PCG64/SeedSequence"
CHECKPOINT_FORMAT = "aont-search-checkpoint/1"
RANDOM_CHUNK = 4096

__all__ = [
    "SearchConfig",
    "SearchResult",
    "exhaustive_search",
    "random_search",
    "hill_climb",
    "expected_random_density",
    "canonical_candidates",
    "run_search",
]


@dataclass
class SearchConfig:
    s: int
    mode: str = "exhaustive"
    epsilon: float = math.sqrt(0.5)
    trials: int = 1
    time_budget: float | None = None
    seed: int = 0
    workers: int = 1
    checkpoint: str | None = None
    resume: str | None = None
    seed_incumbent: bool = True
    start: BinaryMatrix | None = None

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("N_2 needs s >= 2")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in ("exhaustive", "random", "hill_climb"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SearchResult:
    best_matrix: BinaryMatrix
    best_n2: int
    nodes_visited: int
    exhausted: bool
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        m = self.best_matrix
        return {
            "s": m.s,
            "best_n2": self.best_n2,
            "nodes_visited": self.nodes_visited,
            "exhausted": self.exhausted,
            "matrix": [m.row_string(i) for i in range(m.s)],
            **self.metadata,
        }


def expected_random_density(epsilon: float) -> float:
    """Probability that a fixed 2x2 submatrix of an epsilon-random matrix is invertible."""
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon must be a probability")
    e2 = epsilon * epsilon
    return 2 * e2 * (1 - e2)


def _worker_count(requested: int | None) -> int:
    cap = os.environ.get("AONT_THREADS")
    n = requested or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


# exhaustive search

def canonical_candidates(s: int) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero row values sorted by (weight, value) and their pair-count table."""
    values = sorted(range(1, 1 << s), key=lambda v: (v.bit_count(), v))
    vals = np.array(values, dtype=np.int64)
    n = len(values)
    pair = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        va = values[a]
        for b in range(a + 1, n):
            pair[a, b] = pair[b, a] = pair_invertible_count(va, values[b])
    return vals, pair


def _prefixes(s: int, values: np.ndarray) -> list[tuple[int, ...]]:
    index = {int(v): i for i, v in enumerate(values)}
    n = len(values)
    out = []
    for w in range(1, s + 1):
        first = index[(1 << w) - 1]
        if s == 1:
            out.append((first,))
            continue
        for second in range(first + 1, n):
            out.append((first, second))
    return out


def _run_tasks(args):
    from ._kernels import search_prefix

    s, tasks, best_init, cap = args
    values, pair = canonical_candidates(s)
    best, best_idx, nodes = best_init, None, 0
    for task in tasks:
        b, idx, n_nodes, _ = search_prefix(pair, values, s, np.array(task, dtype=np.int64),
                                           best, cap, 0)
        nodes += int(n_nodes)
        if b > best:
            best, best_idx = int(b), tuple(int(i) for i in idx)
    return best, best_idx, nodes


def exhaustive_search(cfg: SearchConfig) -> SearchResult:
    from ._kernels import search_prefix

    s = cfg.s
    if s == 1:
        m = BinaryMatrix.identity(1)
        return SearchResult(m, 0, 1, True, {"mode": "exhaustive"})
    values, pair = canonical_candidates(s)
    cap = (s * s) // 3
    tasks = _prefixes(s, values)
    best_n2, best_rows, nodes = -1, None, 0

    if cfg.resume:
        state = json.loads(Path(cfg.resume).read_text())
        if state.get("format") != CHECKPOINT_FORMAT or state["s"] != s:
            raise ValueError("checkpoint does not match this search")
        tasks = [tuple(t) for t in state["remaining"]]
        best_n2 = state["best_n2"]
        best_rows = state["best_rows"]
        nodes = state["nodes_visited"]
    elif cfg.seed_incumbent and s >= 5:
        # a heuristic incumbent only tightens pruning; the search still
        # returns the first maximal matrix in canonical order
        seed_res = hill_climb(SearchConfig(s, "hill_climb", trials=8, seed=cfg.seed))
        best_n2 = seed_res.best_n2 - 1

    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    workers = _worker_count(cfg.workers)
    exhausted = True
    if workers > 1 and deadline is None:
        chunks = [tasks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_tasks, [(s, c, best_n2, cap) for c in chunks]))
        # tie-break: first matrix in canonical order
        for b, idx, n_nodes in results:
            nodes += n_nodes
            if idx is None:
                continue
            rows = [int(values[i]) for i in idx]
            if b > best_n2 or (b == best_n2 and best_rows is not None and
                               tuple(idx) < tuple(_indices(values, best_rows))):
                best_n2, best_rows = b, rows
        tasks = []
    else:
        while tasks:
            if deadline is not None and time.monotonic() > deadline:
                exhausted = False
                break
            task = tasks.pop(0)
            b, idx, n_nodes, _ = search_prefix(pair, values, s, np.array(task, dtype=np.int64),
                                               best_n2, cap, 0)
            nodes += int(n_nodes)
            if b > best_n2:
                best_n2, best_rows = int(b), [int(values[i]) for i in idx]
                log.info("s=%d: new best N_2=%d", s, best_n2)

    if cfg.checkpoint:
        Path(cfg.checkpoint).write_text(json.dumps({
            "format": CHECKPOINT_FORMAT,
            "s": s,
            "best_n2": best_n2,
            "best_rows": best_rows,
            "nodes_visited": nodes,
            "remaining": [list(t) for t in tasks],
        }))
    if best_rows is None:
        # incumbent not reached before the budget ran out; fall back to the heuristic
        seed_res = hill_climb(SearchConfig(s, "hill_climb", trials=8, seed=cfg.seed))
        return SearchResult(seed_res.best_matrix, seed_res.best_n2, nodes, False,
                            {"mode": "exhaustive"})
    m = BinaryMatrix(best_rows, s)
    return SearchResult(m, count_invertible_2_fast(m), nodes, exhausted,
                        {"mode": "exhaustive"})


def _indices(values: np.ndarray, rows) -> list[int]:
    index = {int(v): i for i, v in enumerate(values)}
    return [index[r] for r in rows]


# random search

def _n2_batch(rows: np.ndarray) -> np.ndarray:
    """N_2 for a batch of matrices given as (B, s) uint64 bit-rows."""
    B, s = rows.shape
    w = np.bitwise_count(rows).astype(np.int64)
    total = np.zeros(B, dtype=np.int64)
    for i in range(s):
        for j in range(i + 1, s):
            a3 = np.bitwise_count(rows[:, i] & rows[:, j]).astype(np.int64)
            a2 = w[:, i] - a3
            a1 = w[:, j] - a3
            total += a1 * a2 + (a1 + a2) * a3
    return total


def _random_rows(rng: np.random.Generator, count: int, s: int, epsilon: float) -> np.ndarray:
    bits = rng.random((count, s, s)) < epsilon
    weights = np.left_shift(np.uint64(1), np.arange(s, dtype=np.uint64))
    return (bits.astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _random_chunk(args):
    s, epsilon, seed, chunk, count = args
    rng = _chunk_rng(seed, chunk)
    rows = _random_rows(rng, count, s, epsilon)
    n2 = _n2_batch(rows)
    # stable: ties keep the earliest trial
    for pos in np.argsort(-n2, kind="stable"):
        r = [int(x) for x in rows[pos]]
        if gf2_rank_rows(r) == s:
            return int(n2[pos]), chunk, int(pos), r
    return None


def random_search(cfg: SearchConfig) -> SearchResult:
    s = cfg.s
    if s > 63:
        raise ValueError("random search supports s <= 63")
    n_chunks = -(-cfg.trials // RANDOM_CHUNK)
    jobs = []
    for c in range(n_chunks):
        count = min(RANDOM_CHUNK, cfg.trials - c * RANDOM_CHUNK)
        jobs.append((s, cfg.epsilon, cfg.seed, c, count))
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    workers = _worker_count(cfg.workers)
    results = []
    done = 0
    if workers > 1 and deadline is None:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_random_chunk, jobs))
        done = cfg.trials
    else:
        for job in jobs:
            if deadline is not None and time.monotonic() > deadline:
                break
            results.append(_random_chunk(job))
            done += job[-1]
    found = [r for r in results if r is not None]
    if not found:
        raise NoInvertibleFound(f"no invertible matrix among {done} trials (epsilon={cfg.epsilon})")
    n2, chunk, pos, rows = max(found, key=lambda r: (r[0], -r[1], -r[2]))
    meta = {"mode": "random", "rng": RNG_ALGORITHM, "seed": cfg.seed, "epsilon": cfg.epsilon,
            "trials": done, "best_trial": chunk * RANDOM_CHUNK + pos}
    return SearchResult(BinaryMatrix(rows, s), n2, done, False, meta)


# hill climbing

def _random_invertible(rng: np.random.Generator, s: int, epsilon: float) -> list[int]:
    for _ in range(10_000):
        rows = [int(x) for x in _random_rows(rng, 1, s, epsilon)[0]]
        if gf2_rank_rows(rows) == s:
            return rows
    raise NoInvertibleFound("could not draw an invertible start matrix")


def _flip_ascent(rows: list[int], s: int) -> list[int]:
    """Steepest ascent over single-bit flips that keep the matrix invertible."""
    rows = list(rows)
    while True:
        moves = []
        for i in range(s):
            ri = rows[i]
            old = sum(pair_invertible_count(ri, rows[k]) for k in range(s) if k != i)
            for j in range(s):
                new_ri = ri ^ (1 << j)
                new = sum(pair_invertible_count(new_ri, rows[k]) for k in range(s) if k != i)
                if new > old:
                    moves.append((old - new, i, j))
        moves.sort()
        for _, i, j in moves:
            trial = list(rows)
            trial[i] ^= 1 << j
            if gf2_rank_rows(trial) == s:
                rows = trial
                break
        else:
            return rows


def _elementary_moves(rows: list[int], s: int):
    # adding one row (or column) to another never changes the rank
    for i in range(s):
        for k in range(s):
            if i != k:
                trial = list(rows)
                trial[i] ^= rows[k]
                yield trial
                yield [r ^ (((r >> k) & 1) << i) for r in rows]


def _climb(rows: list[int], s: int) -> tuple[list[int], int]:
    """Bit-flip ascent; at a flip-local optimum, take the best improving row or
    column addition and climb again."""
    while True:
        rows = _flip_ascent(rows, s)
        cur = count_invertible_2_fast(BinaryMatrix(rows, s))
        best = None
        for trial in _elementary_moves(rows, s):
            n2 = count_invertible_2_fast(BinaryMatrix(trial, s))
            if n2 > cur and (best is None or n2 > best[0]):
                best = (n2, trial)
        if best is None:
            return rows, cur
        rows = best[1]


def hill_climb(cfg: SearchConfig) -> SearchResult:
    s = cfg.s
    best = None
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    restarts = 0
    for r in range(cfg.trials):
        if deadline is not None and time.monotonic() > deadline and best is not None:
            break
        if r == 0 and cfg.start is not None:
            if gf2_rank_rows(cfg.start.rows) != s:
                raise ValueError("start matrix must be invertible")
            start = list(cfg.start.rows)
        else:
            start = _random_invertible(_chunk_rng(cfg.seed, r), s, cfg.epsilon)
        rows, n2 = _climb(start, s)
        restarts += 1
        if best is None or n2 > best[0]:
            best = (n2, rows)
    meta = {"mode": "hill_climb", "rng": RNG_ALGORITHM, "seed": cfg.seed,
            "epsilon": cfg.epsilon, "restarts": restarts}
    return SearchResult(BinaryMatrix(best[1], s), best[0], restarts, False, meta)


def run_search(cfg: SearchConfig) -> SearchResult:
    if cfg.mode == "exhaustive":
        return exhaustive_search(cfg)
    if cfg.mode == "random":
        return random_search(cfg)
    return hill_climb(cfg)
