"""Pregraphs and the constraint hypergraphs of good 4-cycles.

A pregraph is a partial two-colouring of the edge set of K_n: a set E of
edges already fixed to be present, a set M of mixed (undecided) edges, and
an auxiliary set N of mixed edges that preprocessing has neutralized (they
can no longer serve as cycle edges but may still appear as induced extras).
A good copy of C4 is a 4-cycle all of whose edges are mixed and whose four
vertices span no fixed edge.  Each good copy, together with the i in
{0, 1, 2} remaining induced mixed edges (its diagonals that lie in M or N),
yields one constraint of the (i, 4)-uniform hypergraph H_i: the copy is
"alive" in a completion exactly when the four cycle edges are all present
and the diagonals all absent, which is the induced-C4 event.

The greedy builder assembles permissible subhypergraphs (degree-capped by
floor(l^3/n), l^2, and l for the (0,1), (1,0), and (0,2) patterns) one
constraint at a time, neutralizing saturated single edges by a two-phase
preprocessing move and skipping copies that contain a saturated cycle-edge
pair, until one of H_0, H_1, H_2 reaches beta*l^4 constraints or no
insertable copy remains.

Also here: the Caro-Wei independence bound, the retained-vertex random
independent set used by the supersaturation arguments, and the almost-split
and leaf classifications that drive the container tree.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError
from .hypergraph import Constraint, UniformHypergraph

__all__ = [
    "Pair",
    "Pregraph",
    "complete_pregraph",
    "GoodC4",
    "good_c4_enumerate",
    "ConstraintSystem",
    "build_constraint_hypergraphs",
    "is_saturated",
    "preprocess_saturation",
    "PermissibleResult",
    "build_permissible",
    "caro_wei_bound",
    "random_order_independent_set",
    "AlmostSplitResult",
    "is_almost_split_pregraph",
    "LeafClassification",
    "is_leaf_pregraph",
    "CliqueCost",
    "close_to_clique_cost",
]

Pair = tuple[int, int]

EXACT_PARTITION_LIMIT = 12
EXACT_SUBSET_LIMIT = 16


def _norm_pair(p: Sequence[int]) -> Pair:
    u, v = p
    if u == v:
        raise ValueError(f"loop ({u}, {v}) is not an edge")
    return (u, v) if u < v else (v, u)


def _norm_pairs(pairs: Iterable[Sequence[int]], n: int) -> frozenset[Pair]:
    out = set()
    for p in pairs:
        q = _norm_pair(p)
        if not 0 <= q[0] < q[1] < n:
            raise ValueError(f"pair {q} outside vertex range 0..{n - 1}")
        out.add(q)
    return frozenset(out)


@dataclass(frozen=True)
class Pregraph:
    """Partial two-colouring (M, E, N) of the pairs of 0..n-1."""

    n: int
    mixed: frozenset[Pair]
    fixed: frozenset[Pair]
    neutral: frozenset[Pair] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "mixed", _norm_pairs(self.mixed, self.n))
        object.__setattr__(self, "fixed", _norm_pairs(self.fixed, self.n))
        object.__setattr__(self, "neutral", _norm_pairs(self.neutral, self.n))
        if (
            self.mixed & self.fixed
            or self.mixed & self.neutral
            or self.fixed & self.neutral
        ):
            raise ValueError("mixed, fixed, and neutral edge sets must be disjoint")

    def e_m(self) -> int:
        return len(self.mixed)

    def e_e(self) -> int:
        return len(self.fixed)

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        for tag, pairs in (("M", self.mixed), ("E", self.fixed), ("N", self.neutral)):
            for u, v in sorted(pairs):
                lines.append(f"{tag} {u} {v}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Pregraph":
        n = None
        sets: dict[str, list[Pair]] = {"M": [], "E": [], "N": []}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n":
                n = int(parts[1])
            elif parts[0] in sets and len(parts) == 3:
                sets[parts[0]].append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"unparseable pregraph line: {raw!r}")
        if n is None:
            raise ValueError("pregraph text lacks an 'n <count>' line")
        return Pregraph(n, frozenset(sets["M"]), frozenset(sets["E"]), frozenset(sets["N"]))


def complete_pregraph(n: int) -> Pregraph:
    """All pairs mixed, nothing fixed: the root of the container tree."""
    return Pregraph(n, frozenset(itertools.combinations(range(n), 2)), frozenset())


_DIAGONAL_SPLITS = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


@dataclass(frozen=True)
class GoodC4:
    """One embedded 4-cycle of mixed edges with E-independent vertex set."""

    cycle_edges: tuple[Pair, Pair, Pair, Pair]
    extra_mixed: tuple[Pair, ...]  # the diagonals that lie in M or N

    @property
    def i(self) -> int:
        return len(self.extra_mixed)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.cycle_edges for v in e}))


def good_c4_enumerate(p: Pregraph) -> list[GoodC4]:
    """All good copies of C4, one per embedding, in a fixed lexicographic
    order (by vertex 4-tuple, then by the diagonal split chosen)."""
    undecided = p.mixed | p.neutral
    out = []
    for quad in itertools.combinations(range(p.n), 4):
        if any(_norm_pair((a, b)) in p.fixed for a, b in itertools.combinations(quad, 2)):
            continue
        for da, db in _DIAGONAL_SPLITS:
            d1 = _norm_pair((quad[da[0]], quad[da[1]]))
            d2 = _norm_pair((quad[db[0]], quad[db[1]]))
            cycle = tuple(
                sorted(
                    _norm_pair((a, b))
                    for a, b in itertools.combinations(quad, 2)
                    if _norm_pair((a, b)) not in (d1, d2)
                )
            )
            if any(e not in p.mixed for e in cycle):
                continue
            extra = tuple(sorted(d for d in (d1, d2) if d in undecided))
            out.append(GoodC4(cycle, extra))
    return out


@dataclass(frozen=True)
class ConstraintSystem:
    """The hypergraphs H_0, H_1, H_2 of a pregraph, over an indexed ground
    set (the mixed and neutral edges in sorted order)."""

    ground: tuple[Pair, ...]
    h0: UniformHypergraph
    h1: UniformHypergraph
    h2: UniformHypergraph

    def __iter__(self):
        return iter((self.h0, self.h1, self.h2))

    def index(self, e: Pair) -> int:
        return self._index[e]

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: k for k, e in enumerate(self.ground)})

    def hypergraph(self, i: int) -> UniformHypergraph:
        return (self.h0, self.h1, self.h2)[i]


def _encode_copy(copy: GoodC4, index: dict[Pair, int]) -> Constraint:
    return Constraint.make(
        (index[e] for e in copy.extra_mixed), (index[e] for e in copy.cycle_edges)
    )


def build_constraint_hypergraphs(p: Pregraph) -> ConstraintSystem:
    """H_i collects the good copies with exactly i extra induced mixed edges;
    the ground set is all of M and N, so v(H_i) = e(M) + |N|."""
    ground = tuple(sorted(p.mixed | p.neutral))
    index = {e: k for k, e in enumerate(ground)}
    hs = [UniformHypergraph(i, 4, len(ground)) for i in range(3)]
    for copy in good_c4_enumerate(p):
        hs[copy.i].add(_encode_copy(copy, index))
    return ConstraintSystem(ground, *hs)


# -- saturation and the permissible greedy ------------------------------------


def _saturation_threshold(shape: tuple[int, int], ell: int, n: int) -> int:
    if shape == (0, 1):
        raw = ell**3 // n
    elif shape == (1, 0):
        raw = ell * ell
    elif shape == (0, 2):
        raw = ell
    else:
        raise PreconditionError(f"no saturation threshold for degree shape {shape}")
    # a pair must actually appear to be saturated, so an empty hypergraph
    # never has any; this only differs from the raw floor when l^3 < n
    return max(raw, 1)


def is_saturated(s: Iterable[int], t: Iterable[int], h: UniformHypergraph, ell: int, n: int) -> bool:
    """Has deg_H(S, T) reached the permitted maximum for its shape?

    Shapes and thresholds: (0,1) -> floor(l^3/n); (1,0) -> l^2; (0,2) -> l,
    each clamped to at least 1.
    """
    s = tuple(s)
    t = tuple(t)
    threshold = _saturation_threshold((len(s), len(t)), ell, n)
    return h.degree(s, t) >= threshold


def preprocess_saturation(
    p: Pregraph,
    h0: UniformHypergraph,
    h1: UniformHypergraph,
    h2: UniformHypergraph,
    ell: int,
    n: int,
) -> Pregraph:
    """Two-phase neutralization of saturated single edges.

    Phase 1 moves every mixed edge f with deg({f}, empty) at the l^2 cap in
    H_1 or H_2 into E (its copies stop being good at all); phase 2 moves
    every remaining f with deg(empty, {f}) at the floor(l^3/n) cap in any
    H_i into N (it stops serving as a cycle edge but still counts as an
    induced extra).  Degrees are taken against the ground indexing of p.
    """
    ground = tuple(sorted(p.mixed | p.neutral))
    index = {e: k for k, e in enumerate(ground)}
    t10 = _saturation_threshold((1, 0), ell, n)
    t01 = _saturation_threshold((0, 1), ell, n)
    to_fixed = set()
    for f in p.mixed:
        k = index[f]
        if h1.degree((k,), ()) >= t10 or h2.degree((k,), ()) >= t10:
            to_fixed.add(f)
    to_neutral = set()
    for f in p.mixed - to_fixed:
        k = index[f]
        if any(h.degree((), (k,)) >= t01 for h in (h0, h1, h2)):
            to_neutral.add(f)
    return Pregraph(
        p.n,
        p.mixed - to_fixed - to_neutral,
        p.fixed | to_fixed,
        p.neutral | to_neutral,
    )


@dataclass(frozen=True)
class PermissibleResult:
    status: str  # "success" or "exhausted"
    i: Optional[int]
    hypergraph: Optional[UniformHypergraph]
    system: ConstraintSystem  # all three hypergraphs as built
    preprocessed: Pregraph  # the final neutralized pregraph
    insertions: int

    @property
    def succeeded(self) -> bool:
        return self.status == "success"


def build_permissible(p: Pregraph, ell: int, beta: float) -> PermissibleResult:
    """Greedy construction of a permissible H_i with at least beta*l^4 edges.

    Each iteration re-derives the neutralized pregraph from the original one
    and the current degree state, then inserts the first good copy (in
    enumeration order) that is not yet present and whose cycle contains no
    (0,2)-saturated pair of any H_i.  Insertion order makes the result
    deterministic; the saturation rules make every intermediate hypergraph
    permissible by construction.
    """
    if ell < 1:
        raise PreconditionError(f"scale parameter must be at least 1, got {ell}")
    if beta <= 0:
        raise PreconditionError(f"target density beta must be positive, got {beta}")
    n = p.n
    ground = tuple(sorted(p.mixed | p.neutral))
    index = {e: k for k, e in enumerate(ground)}
    hs = [UniformHypergraph(i, 4, len(ground)) for i in range(3)]
    inserted: set[tuple[int, tuple]] = set()
    # incremental degree state, equivalent to querying the growing h_i
    deg10 = [dict(), dict(), dict()]  # A-side singletons (only i = 1, 2 used)
    deg01 = [dict(), dict(), dict()]  # B-side singletons
    pair_deg = [dict(), dict(), dict()]  # B-side pairs
    blocked: set[tuple[int, int]] = set()
    t10 = _saturation_threshold((1, 0), ell, n)
    t01 = _saturation_threshold((0, 1), ell, n)
    t02 = _saturation_threshold((0, 2), ell, n)
    target = beta * ell**4
    insertions = 0

    def neutralized() -> Pregraph:
        to_fixed = {
            f
            for f in p.mixed
            if deg10[1].get(index[f], 0) >= t10 or deg10[2].get(index[f], 0) >= t10
        }
        to_neutral = {
            f
            for f in p.mixed - to_fixed
            if any(deg01[i].get(index[f], 0) >= t01 for i in range(3))
        }
        return Pregraph(
            p.n, p.mixed - to_fixed - to_neutral, p.fixed | to_fixed, p.neutral | to_neutral
        )

    while True:
        if any(h.e() >= target for h in hs):
            break
        pp = neutralized()
        found = None
        for copy in good_c4_enumerate(pp):
            c = _encode_copy(copy, index)
            if (copy.i, c.key()) in inserted:
                continue
            if any(t in blocked for t in itertools.combinations(c.a1, 2)):
                continue
            found = (copy.i, c)
            break
        if found is None:
            return PermissibleResult(
                "exhausted", None, None, ConstraintSystem(ground, *hs), pp, insertions
            )
        i, c = found
        hs[i].add(c)
        inserted.add((i, c.key()))
        insertions += 1
        for k in c.a0:
            deg10[i][k] = deg10[i].get(k, 0) + 1
        for k in c.a1:
            deg01[i][k] = deg01[i].get(k, 0) + 1
        for t in itertools.combinations(c.a1, 2):
            pair_deg[i][t] = pair_deg[i].get(t, 0) + 1
            if pair_deg[i][t] >= t02:
                blocked.add(t)
    winner = max(range(3), key=lambda i: (hs[i].e() >= target, hs[i].e()))
    return PermissibleResult(
        "success", winner, hs[winner], ConstraintSystem(ground, *hs), neutralized(), insertions
    )


# -- independence utilities ----------------------------------------------------


def caro_wei_bound(n: int, edges: Iterable[Pair]) -> Fraction:
    """Sum of 1/(1 + deg(v)): the classical independence-number lower bound."""
    deg = [0] * n
    for p in edges:
        u, v = _norm_pair(p)
        deg[u] += 1
        deg[v] += 1
    return sum((Fraction(1, 1 + d) for d in deg), Fraction(0))


def random_order_independent_set(
    n: int,
    edges: Iterable[Pair],
    keep_probabilities: Sequence[float],
    ordering: Sequence[int],
    seed: int = 0,
) -> tuple[int, ...]:
    """Retain each vertex independently, then keep the retained vertices none
    of whose later-ordered neighbours were retained.

    The output is independent in the given graph for every retention
    outcome; with all probabilities 1 its expected size over a uniformly
    random ordering is exactly the Caro-Wei bound.
    """
    if sorted(ordering) != list(range(n)):
        raise ValueError("ordering must be a permutation of 0..n-1")
    if len(keep_probabilities) != n:
        raise ValueError("need one retention probability per vertex")
    if any(not 0 <= q <= 1 for q in keep_probabilities):
        raise ValueError("retention probabilities must lie in [0, 1]")
    adj: list[set[int]] = [set() for _ in range(n)]
    for p in edges:
        u, v = _norm_pair(p)
        adj[u].add(v)
        adj[v].add(u)
    rng = random.Random(seed)
    retained = {v for v in range(n) if rng.random() < keep_probabilities[v]}
    position = {v: k for k, v in enumerate(ordering)}
    out = []
    for v in retained:
        if all(u not in retained or position[u] < position[v] for u in adj[v]):
            out.append(v)
    result = tuple(sorted(out))
    for u, v in itertools.combinations(result, 2):
        assert v not in adj[u], "selection rule produced a dependent pair"
    return result


# -- structural classification --------------------------------------------------


def _subset_pair_counts(n: int, pairs: frozenset[Pair]) -> list[int]:
    """count[S] = pairs with both endpoints in the subset S (bitmask)."""
    adj = [0] * n
    for u, v in pairs:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    count = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        count[s] = count[rest] + (adj[low] & rest).bit_count()
    return count


@dataclass(frozen=True)
class AlmostSplitResult:
    found: bool
    exact: bool
    u: Optional[tuple[int, ...]] = None
    w: Optional[tuple[int, ...]] = None


def _almost_split_ok(p: Pregraph, eps: float, umask: int, e_e: list[int], e_m: list[int]) -> bool:
    full = (1 << p.n) - 1
    size = umask.bit_count()
    budget = 7 * math.sqrt(eps) * size * p.n
    return (
        p.e_e() <= math.comb(size, 2)
        and e_e[umask] >= (1 - eps) * math.comb(size, 2)
        and e_m[full ^ umask] <= budget
    )


def is_almost_split_pregraph(p: Pregraph, eps: float) -> AlmostSplitResult:
    """Search for a vertex split (U, W) with E concentrated on a near-clique
    U and few mixed edges inside W: e(E) <= C(|U|,2), e_E(U) >= (1-eps) of
    that clique, and e_M(W) <= 7*sqrt(eps)*|U|*n.

    Exhaustive over all 2^n subsets up to n = 12; beyond that a greedy
    E-degree prefix with single-vertex swaps is tried and the result is
    flagged non-exact.
    """
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if p.n <= EXACT_PARTITION_LIMIT:
        e_e = _subset_pair_counts(p.n, p.fixed)
        e_m = _subset_pair_counts(p.n, p.mixed)
        for umask in range(1 << p.n):
            if _almost_split_ok(p, eps, umask, e_e, e_m):
                u = tuple(v for v in range(p.n) if (umask >> v) & 1)
                w = tuple(v for v in range(p.n) if not (umask >> v) & 1)
                return AlmostSplitResult(True, True, u, w)
        return AlmostSplitResult(False, True)
    e_e = None
    deg_e = [0] * p.n
    for u, v in p.fixed:
        deg_e[u] += 1
        deg_e[v] += 1
    order = sorted(range(p.n), key=lambda v: (-deg_e[v], v))

    def exact_check(uset: set[int]) -> Optional[AlmostSplitResult]:
        umask = sum(1 << v for v in uset)
        size = len(uset)
        inside_e = sum(1 for a, b in p.fixed if a in uset and b in uset)
        inside_m = sum(1 for a, b in p.mixed if a not in uset and b not in uset)
        if (
            p.e_e() <= math.comb(size, 2)
            and inside_e >= (1 - eps) * math.comb(size, 2)
            and inside_m <= 7 * math.sqrt(eps) * size * p.n
        ):
            w = tuple(v for v in range(p.n) if v not in uset)
            return AlmostSplitResult(True, False, tuple(sorted(uset)), w)
        return None

    for size in range(p.n + 1):
        uset = set(order[:size])
        hit = exact_check(uset)
        if hit:
            return hit
        # single swaps: trade the least-connected member for the best outsider
        for _ in range(p.n):
            improved = False
            for v_out in list(uset):
                for v_in in order:
                    if v_in in uset:
                        continue
                    trial = (uset - {v_out}) | {v_in}
                    hit = exact_check(trial)
                    if hit:
                        return hit
                    inside = sum(1 for a, b in p.fixed if a in trial and b in trial)
                    if inside > sum(1 for a, b in p.fixed if a in uset and b in uset):
                        uset = trial
                        improved = True
                        break
                if improved:
                    break
            if not improved:
                break
    return AlmostSplitResult(False, False)


@dataclass(frozen=True)
class LeafClassification:
    kind: str  # almost_split | ratio_leaf | e_overflow | m_underflow | not_leaf
    ell: Optional[int] = None
    split: Optional[AlmostSplitResult] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind != "not_leaf"


def m_underflow_threshold(n: int, m: int) -> float:
    """Mixed-edge floor sqrt(n^2 m / (2^8 ln(n^2/m))) below which a pregraph
    can describe only a negligible share of m-edge graphs."""
    if m >= n * n:
        raise PreconditionError(f"need m < n^2 for the log to be positive, got n={n}, m={m}")
    return math.sqrt(n * n * m / (2**8 * math.log(n * n / m)))


def is_leaf_pregraph(p: Pregraph, m: int, eps: float, delta: float) -> LeafClassification:
    """Ordered leaf test: eps-almost split, then the ratio condition
    (some l with e(E) >= C(l,2) and e(M) <= (1-delta)*l*n), then edge
    overflow e(E) > m, then the mixed-edge underflow floor."""
    if m < 1:
        raise PreconditionError(f"edge budget m must be at least 1, got {m}")
    if not 0 < delta <= 1:
        raise PreconditionError(f"delta must lie in (0, 1], got {delta}")
    if m >= p.n * p.n:
        raise PreconditionError(f"need m < n^2, got n={p.n}, m={m}")
    split = is_almost_split_pregraph(p, eps)
    if split.found:
        return LeafClassification("almost_split", split=split)
    ell = 1
    while math.comb(ell, 2) <= p.e_e():
        if p.e_m() <= (1 - delta) * ell * p.n:
            return LeafClassification("ratio_leaf", ell=ell)
        ell += 1
    if p.e_e() > m:
        return LeafClassification("e_overflow")
    if p.e_m() < m_underflow_threshold(p.n, m):
        return LeafClassification("m_underflow")
    return LeafClassification("not_leaf")


@dataclass(frozen=True)
class CliqueCost:
    cost: int
    exact: bool
    subset: tuple[int, ...]


def close_to_clique_cost(n: int, edges: Iterable[Pair], ell: int) -> CliqueCost:
    """Fewest edge additions plus deletions turning the graph into K_ell:
    min over ell-subsets U of (C(ell,2) - e(U)) + (e(G) - e(U)).

    Exact for n <= 16 by scanning all subsets; larger n fall back to the
    top-degree subset with single swaps, flagged non-exact.
    """
    pairs = _norm_pairs(edges, n)
    if not 0 <= ell <= n:
        raise PreconditionError(f"clique size {ell} outside 0..{n}")
    total = len(pairs)
    target = math.comb(ell, 2)
    if n <= EXACT_SUBSET_LIMIT:
        counts = _subset_pair_counts(n, pairs)
        best_mask = None
        best_inside = -1
        for s in range(1 << n):
            if s.bit_count() == ell and counts[s] > best_inside:
                best_inside = counts[s]
                best_mask = s
        subset = tuple(v for v in range(n) if (best_mask >> v) & 1)
        return CliqueCost(target - best_inside + total - best_inside, True, subset)
    deg = [0] * n
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    uset = set(sorted(range(n), key=lambda v: (-deg[v], v))[:ell])

    def inside(s: set[int]) -> int:
        return sum(1 for a, b in pairs if a in s and b in s)

    current = inside(uset)
    improved = True
    while improved:
        improved = False
        for v_out in list(uset):
            for v_in in range(n):
                if v_in in uset:
                    continue
                trial = (uset - {v_out}) | {v_in}
                t = inside(trial)
                if t > current:
                    uset, current = trial, t
                    improved = True
                    break
            if improved:
                break
    return CliqueCost(target - current + total - current, False, tuple(sorted(uset)))
