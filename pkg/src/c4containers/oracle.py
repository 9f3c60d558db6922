"""Brute-force ground truth for small graphs.

Everything here is exhaustive or near-exhaustive and exists to pin down the
behaviour of the probabilistic and container machinery on desk-scale inputs:
induced-C4 detection, exhaustive counts of induced-C4-free graphs by edge
count, split-graph recognition with a witness partition, quasirandomness and
closeness-to-split checked over all vertex subsets, a rejection sampler that
deletes one edge per 4-cycle, and a branch-and-bound C4-free subgraph
maximizer.  Counting is over labeled graphs throughout.

The exhaustive F(n, m) tables come from a vectorized scan of all 2^C(n,2)
edge masks against precomputed induced-C4 patterns (three per 4-subset, one
per cyclic structure).  A second, structurally different implementation
(depth-first over pair decisions with pruning) recomputes the same tables so
the two can be cross-validated; n is capped at 8 and 7 respectively, with a
scale refusal beyond.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import graph6
from .errors import ScaleError

__all__ = [
    "LabeledGraph",
    "is_induced_c4_free",
    "induced_c4_patterns",
    "fnm_table",
    "count_Fnm_c4",
    "fnm_table_backtracking",
    "enumerate_fnm_masks",
    "SplitPartition",
    "is_split",
    "QuasirandomCheck",
    "is_eps_quasirandom",
    "CloseSplitCheck",
    "is_eps_close_to_split",
    "DeletionSample",
    "sample_c4free_by_deletion",
    "ex_c4",
]

EXACT_COUNT_LIMIT = 8
BACKTRACK_LIMIT = 7
SUBSET_SCAN_LIMIT = 16
EX_C4_LIMIT = 14


@dataclass(frozen=True)
class LabeledGraph:
    """Graph on vertices 0..n-1 with edges as a bitmask over pair indices."""

    n: int
    mask: int

    def __post_init__(self):
        npairs = self.n * (self.n - 1) // 2
        if self.mask < 0 or self.mask >> npairs:
            raise ValueError("edge mask outside the pair range")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "LabeledGraph":
        mask = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            mask |= 1 << graph6.pair_index(u, v)
        return LabeledGraph(n, mask)

    @property
    def m(self) -> int:
        return self.mask.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.mask >> graph6.pair_index(u, v)) & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        k = self.mask
        while k:
            low = k & -k
            out.append(graph6.pair_from_index(low.bit_length() - 1))
            k ^= low
        return out

    def degree(self, v: int) -> int:
        return sum(1 for u in range(self.n) if u != v and self.has_edge(u, v))

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmasks over vertices (not pairs)."""
        adj = [0] * self.n
        for u, v in self.edges():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def to_graph6(self) -> str:
        return graph6.encode(self.n, self.mask)

    @staticmethod
    def from_graph6(text: str) -> "LabeledGraph":
        n, mask = graph6.decode(text)
        return LabeledGraph(n, mask)


def is_induced_c4_free(g: LabeledGraph) -> bool:
    """Scan 4-subsets with early exit; a 4-subset induces C4 exactly when it
    spans 4 edges whose 2 missing pairs are disjoint."""
    for quad in itertools.combinations(range(g.n), 4):
        present = []
        missing = []
        for u, v in itertools.combinations(quad, 2):
            (present if g.has_edge(u, v) else missing).append((u, v))
        if len(present) == 4 and not (set(missing[0]) & set(missing[1])):
            return False
    return True


@lru_cache(maxsize=None)
def induced_c4_patterns(n: int) -> tuple[tuple[int, int], ...]:
    """(subset mask, exact pattern) pairs over pair-index bitmasks.

    A graph mask g induces a C4 with a given cyclic structure iff
    (g & subset) == pattern; each 4-subset yields three structures, one per
    way of pairing up the two diagonals.
    """
    pats = []
    for quad in itertools.combinations(range(n), 4):
        full = 0
        for u, v in itertools.combinations(quad, 2):
            full |= 1 << graph6.pair_index(u, v)
        a, b, c, d = quad
        for d1, d2 in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            diag = (1 << graph6.pair_index(*d1)) | (1 << graph6.pair_index(*d2))
            pats.append((full, full & ~diag))
    return tuple(pats)


_CHUNK = 1 << 22


def _scan_chunks(n: int):
    """Yield (masks, keep) per chunk of all 2^C(n,2) graphs, keep marking
    the induced-C4-free ones."""
    npairs = n * (n - 1) // 2
    pats = induced_c4_patterns(n)
    for start in range(0, 1 << npairs, _CHUNK):
        stop = min(start + _CHUNK, 1 << npairs)
        g = np.arange(start, stop, dtype=np.uint32)
        bad = np.zeros(g.shape, dtype=bool)
        for mask, pat in pats:
            bad |= (g & np.uint32(mask)) == np.uint32(pat)
        yield g, ~bad


@lru_cache(maxsize=4)
def fnm_table(n: int) -> tuple[int, ...]:
    """Counts of labeled induced-C4-free graphs on n vertices, by edge count.

    Exhaustive over all 2^C(n,2) graphs; refuses n above 8.
    """
    if n > EXACT_COUNT_LIMIT:
        raise ScaleError(f"exhaustive scan supports n <= {EXACT_COUNT_LIMIT}, got n = {n}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    npairs = n * (n - 1) // 2
    counts = np.zeros(npairs + 1, dtype=np.int64)
    for g, keep in _scan_chunks(n):
        good = g[keep]
        counts += np.bincount(
            np.bitwise_count(good).astype(np.int64), minlength=npairs + 1
        )
    return tuple(int(x) for x in counts)


def count_Fnm_c4(n: int, m: int) -> int:
    """|F_{n,m}|: labeled induced-C4-free graphs with exactly m edges, n <= 8."""
    table = fnm_table(n)
    if not 0 <= m < len(table):
        raise ValueError(f"m = {m} outside 0..{len(table) - 1}")
    return table[m]


def fnm_table_backtracking(n: int) -> tuple[int, ...]:
    """Same table as fnm_table by an independent route: depth-first over pair
    decisions, pruning as soon as a fully decided 4-subset induces a C4."""
    if n > BACKTRACK_LIMIT:
        raise ScaleError(f"backtracking scan supports n <= {BACKTRACK_LIMIT}, got n = {n}")
    npairs = n * (n - 1) // 2
    finishing: list[list[tuple[int, int]]] = [[] for _ in range(max(npairs, 1))]
    for mask, pat in induced_c4_patterns(n):
        finishing[mask.bit_length() - 1].append((mask, pat))
    counts = [0] * (npairs + 1)
    if npairs == 0:
        counts[0] = 1
        return tuple(counts)

    def walk(k: int, g: int, edges: int) -> None:
        if k == npairs:
            counts[edges] += 1
            return
        for bit in (0, 1):
            g2 = g | (bit << k)
            ok = True
            for mask, pat in finishing[k]:
                if (g2 & mask) == pat:
                    ok = False
                    break
            if ok:
                walk(k + 1, g2, edges + bit)

    walk(0, 0, 0)
    return tuple(counts)


@lru_cache(maxsize=64)
def _fnm_masks(n: int, m: int) -> np.ndarray:
    if n > EXACT_COUNT_LIMIT:
        raise ScaleError(f"exhaustive scan supports n <= {EXACT_COUNT_LIMIT}, got n = {n}")
    parts = []
    for g, keep in _scan_chunks(n):
        good = g[keep]
        parts.append(good[np.bitwise_count(good) == m])
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint32)


def enumerate_fnm_masks(n: int, m: int) -> np.ndarray:
    """All edge masks of graphs in F_{n,m}, ascending, as uint32; n <= 8."""
    return _fnm_masks(n, m).copy()


# -- split graphs -------------------------------------------------------------


@dataclass(frozen=True)
class SplitPartition:
    clique: tuple[int, ...]
    independent: tuple[int, ...]


def is_split(g: LabeledGraph) -> Optional[SplitPartition]:
    """Degree-sequence split test; returns a verified partition or None.

    With degrees sorted nonincreasingly and h the largest i with d_i >= i-1,
    the graph is split iff sum of the top h degrees equals h(h-1) plus the
    sum of the rest, in which case the top h vertices form the clique side.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    h = 0
    for i in range(1, g.n + 1):
        if degs[i - 1] >= i - 1:
            h = i
    if sum(degs[:h]) != h * (h - 1) + sum(degs[h:]):
        return None
    clique = tuple(sorted(order[:h]))
    independent = tuple(sorted(order[h:]))
    for u, v in itertools.combinations(clique, 2):
        if not g.has_edge(u, v):  # pragma: no cover - split theorem guarantees this
            raise AssertionError("degree test accepted but clique side is not complete")
    for u, v in itertools.combinations(independent, 2):
        if g.has_edge(u, v):  # pragma: no cover
            raise AssertionError("degree test accepted but independent side has an edge")
    return SplitPartition(clique, independent)


# -- subset scans --------------------------------------------------------------


def _subset_edge_counts(g: LabeledGraph) -> list[int]:
    """e[S] for every vertex subset S (as bitmask), by peeling the low vertex."""
    adj = g.adjacency_masks()
    e = [0] * (1 << g.n)
    for s in range(1, 1 << g.n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        e[s] = e[rest] + (adj[low] & rest).bit_count()
    return e


@dataclass(frozen=True)
class QuasirandomCheck:
    ok: bool
    exact: bool
    witness: Optional[tuple[int, ...]]  # a violating subset when not ok


def is_eps_quasirandom(
    g: LabeledGraph, eps: float, *, seed: int = 0, samples: int = 20000
) -> QuasirandomCheck:
    """Every subset on more than eps*n vertices must induce density within
    (1 +- eps) of the global one.  Exhaustive for n <= 16, sampled beyond."""
    if g.n < 2:
        raise ValueError("density needs at least two vertices")
    p = g.m / math.comb(g.n, 2)
    lo, hi = (1 - eps) * p, (1 + eps) * p

    def bad(size: int, count: int) -> bool:
        if size <= max(1, int(eps * g.n)) or (size > g.n):
            return False
        if size * (size - 1) == 0:
            return False
        dens = count / math.comb(size, 2)
        return not (lo <= dens <= hi)

    if g.n <= SUBSET_SCAN_LIMIT:
        e = _subset_edge_counts(g)
        for s in range(1 << g.n):
            size = s.bit_count()
            if size <= eps * g.n or size < 2:
                continue
            dens = e[s] / math.comb(size, 2)
            if not (lo <= dens <= hi):
                witness = tuple(v for v in range(g.n) if (s >> v) & 1)
                return QuasirandomCheck(False, True, witness)
        return QuasirandomCheck(True, True, None)
    rng = random.Random(seed)
    adj = g.adjacency_masks()
    for _ in range(samples):
        size = rng.randint(max(2, int(eps * g.n) + 1), g.n)
        subset = rng.sample(range(g.n), size)
        smask = 0
        count = 0
        for v in subset:
            count += (adj[v] & smask).bit_count()
            smask |= 1 << v
        if bad(size, count):
            return QuasirandomCheck(False, False, tuple(sorted(subset)))
    return QuasirandomCheck(True, False, None)


@dataclass(frozen=True)
class CloseSplitCheck:
    ok: bool
    exact: bool
    partition: Optional[tuple[tuple[int, ...], tuple[int, ...]]]


def is_eps_close_to_split(g: LabeledGraph, eps: float) -> CloseSplitCheck:
    """Is there a partition A, B with A nearly complete (missing at most an
    eps fraction of its pairs) and B carrying at most eps*e(G) edges?
    Exhaustive over all 2^n partitions for n <= 16, greedy beyond."""
    if g.n <= SUBSET_SCAN_LIMIT:
        e = _subset_edge_counts(g)
        full = (1 << g.n) - 1
        total = g.m
        for a in range(1 << g.n):
            size = a.bit_count()
            if e[a] >= (1 - eps) * math.comb(size, 2) and e[full ^ a] <= eps * total:
                av = tuple(v for v in range(g.n) if (a >> v) & 1)
                bv = tuple(v for v in range(g.n) if not (a >> v) & 1)
                return CloseSplitCheck(True, True, (av, bv))
        return CloseSplitCheck(False, True, None)
    # greedy: grow A from the top of the degree order while it stays nearly complete
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    best = None
    amask = 0
    count = 0
    adj = g.adjacency_masks()
    for size, v in enumerate(order, start=1):
        count += (adj[v] & amask).bit_count()
        amask |= 1 << v
        if count >= (1 - eps) * math.comb(size, 2):
            rest = [u for u in range(g.n) if not (amask >> u) & 1]
            eb = sum(1 for x, y in itertools.combinations(rest, 2) if g.has_edge(x, y))
            if eb <= eps * g.m:
                best = (
                    tuple(v for v in range(g.n) if (amask >> v) & 1),
                    tuple(rest),
                )
    return CloseSplitCheck(best is not None, False, best)


# -- deletion sampler ----------------------------------------------------------


@dataclass(frozen=True)
class DeletionSample:
    graph: Optional[LabeledGraph]
    attempts: int
    accepted: bool
    m_prime: int
    copies: int  # 4-cycle count of the last draw
    surplus_removed: int


def _derived_seed(seed: int, attempt: int) -> int:
    import hashlib

    digest = hashlib.blake2b(f"{seed}:{attempt}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _count_c4(n: int, adj: list[int]) -> int:
    twice = 0
    for u, v in itertools.combinations(range(n), 2):
        co = (adj[u] & adj[v]).bit_count()
        twice += co * (co - 1) // 2
    assert twice % 2 == 0
    return twice // 2


def sample_c4free_by_deletion(
    n: int, m: int, delta: float, seed: int, max_attempts: int = 1
) -> DeletionSample:
    """Draw a uniform graph with floor((1+delta)m) edges; if its 4-cycle count
    X fits into the surplus, delete one edge per cycle plus enough further
    edges (lowest pair index first) to land on exactly m, which leaves a
    C4-free and hence induced-C4-free graph.  Otherwise redraw.
    """
    npairs = n * (n - 1) // 2
    m_prime = int((1 + delta) * m)
    if not 0 < m <= m_prime <= npairs:
        raise ValueError(f"need 0 < m <= (1+delta)m <= C(n,2); got m={m}, m'={m_prime}")
    last_copies = -1
    for attempt in range(1, max_attempts + 1):
        rng = random.Random(_derived_seed(seed, attempt))
        # partial Fisher-Yates over pair indices
        arr = list(range(npairs))
        for i in range(m_prime):
            j = rng.randrange(i, npairs)
            arr[i], arr[j] = arr[j], arr[i]
        chosen = arr[:m_prime]
        mask = 0
        for k in chosen:
            mask |= 1 << k
        adj = LabeledGraph(n, mask).adjacency_masks()
        copies = _count_c4(n, adj)
        last_copies = copies
        if copies > m_prime - m:
            continue
        # destroy every 4-cycle of the draw: lowest-index edge of each
        removed = 0
        for u, v in itertools.combinations(range(n), 2):
            common = adj[u] & adj[v]
            if common.bit_count() < 2:
                continue
            nbrs = [w for w in range(n) if (common >> w) & 1]
            for w, x in itertools.combinations(nbrs, 2):
                cycle = [
                    graph6.pair_index(u, w),
                    graph6.pair_index(w, v),
                    graph6.pair_index(v, x),
                    graph6.pair_index(x, u),
                ]
                if all((mask >> k) & 1 for k in cycle):
                    k = min(cycle)
                    mask ^= 1 << k
                    a, bb = graph6.pair_from_index(k)
                    adj[a] &= ~(1 << bb)
                    adj[bb] &= ~(1 << a)
                    removed += 1
        surplus = 0
        while mask.bit_count() > m:
            low = mask & -mask
            mask ^= low
            surplus += 1
        out = LabeledGraph(n, mask)
        return DeletionSample(out, attempt, True, m_prime, copies, surplus)
    return DeletionSample(None, max_attempts, False, m_prime, last_copies, 0)


# -- extremal subgraphs ---------------------------------------------------------


def _find_c4(n: int, adj: list[int]) -> Optional[tuple[int, int, int, int]]:
    for u, v in itertools.combinations(range(n), 2):
        common = adj[u] & adj[v]
        if common.bit_count() >= 2:
            nbrs = []
            s = common
            while s and len(nbrs) < 2:
                low = s & -s
                nbrs.append(low.bit_length() - 1)
                s ^= low
            return (u, nbrs[0], v, nbrs[1])
    return None


def ex_c4(g: LabeledGraph) -> int:
    """Most edges of a subgraph of g with no 4-cycle, by branch and bound."""
    if g.n > EX_C4_LIMIT:
        raise ScaleError(f"ex_c4 supports n <= {EX_C4_LIMIT}, got n = {g.n}")
    best = 0
    seen: set[int] = set()

    def adj_of(mask: int) -> list[int]:
        return LabeledGraph(g.n, mask).adjacency_masks()

    def walk(mask: int) -> None:
        nonlocal best
        if mask in seen:
            return
        seen.add(mask)
        count = mask.bit_count()
        if count <= best:
            return
        cyc = _find_c4(g.n, adj_of(mask))
        if cyc is None:
            best = max(best, count)
            return
        u, w, v, x = cyc
        for a, b in ((u, w), (w, v), (v, x), (x, u)):
            walk(mask & ~(1 << graph6.pair_index(a, b)))

    walk(g.mask)
    return best
