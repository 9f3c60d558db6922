"""Uniform constraint multi-hypergraphs over a finite integer ground set.

A (k0, k1)-uniform hypergraph H collects constraints (A0, A1): disjoint
vertex tuples with |A0| = k0 and |A1| = k1, carried with positive integer
multiplicities.  A 0/1 assignment h on the ground set {0, ..., n-1} violates
(A0, A1) when h is 0 everywhere on A0 and 1 everywhere on A1, so a constraint
reads "h must not vanish on all of A0 while being 1 on all of A1".  F(H) is
the set of assignments violating no constraint, and F_m(H) its slice with
exactly m ones.

Degrees count multiplicities: deg(T0, T1) is the total multiplicity of
constraints with T0 inside A0 and T1 inside A1, and Delta_{(l0,l1)}(H) is the
maximum over pairs of sizes (l0, l1).  The container engine requires, for
every (l0, l1) != (0, 0) with l0 <= k0 and l1 <= k1,

    Delta_{(l0,l1)}(H) <= K * b^(l0+l1-1) / (m^l0 * v^l1) * e(H) * (m/r)^[l0>0]

with v = v(H); check_container_hypothesis evaluates all of these in exact
rational arithmetic and reports the minimal K that would pass.

Serialization is a line-oriented text format: a header line "k0 k1 n"
followed by one constraint per line, "mult | a0 vertices | a1 vertices".
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Constraint",
    "UniformHypergraph",
    "Assignment",
    "HypothesisReport",
    "check_container_hypothesis",
    "degree",
    "max_degree",
]


@dataclass(frozen=True)
class Constraint:
    """One constraint (A0, A1), stored as sorted disjoint vertex tuples."""

    a0: tuple[int, ...]
    a1: tuple[int, ...]

    @staticmethod
    def make(a0: Iterable[int], a1: Iterable[int]) -> "Constraint":
        t0, t1 = tuple(sorted(a0)), tuple(sorted(a1))
        if len(set(t0)) != len(t0) or len(set(t1)) != len(t1):
            raise ValueError("repeated vertex inside a constraint side")
        if set(t0) & set(t1):
            raise ValueError("constraint sides must be disjoint")
        return Constraint(t0, t1)

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.a0, self.a1)


class UniformHypergraph:
    """A (k0, k1)-uniform constraint multi-hypergraph on vertices 0..n-1.

    The degenerate (0, 0)-uniform shape (whose only possible constraint is
    (empty, empty)) is rejected unless ``allow_degenerate`` is set; the
    container engine produces it internally at the end of a run.
    """

    def __init__(
        self,
        k0: int,
        k1: int,
        n_vertices: int,
        constraints: Iterable[tuple[Iterable[int], Iterable[int]] | tuple[Iterable[int], Iterable[int], int]] = (),
        *,
        allow_degenerate: bool = False,
    ):
        if k0 < 0 or k1 < 0:
            raise ValueError("uniformities must be nonnegative")
        if (k0, k1) == (0, 0) and not allow_degenerate:
            raise ValueError("(0, 0)-uniform hypergraphs are degenerate; pass allow_degenerate")
        if n_vertices < 0:
            raise ValueError("n_vertices must be nonnegative")
        self.k0 = k0
        self.k1 = k1
        self.n_vertices = n_vertices
        self._edges: Counter[Constraint] = Counter()
        for item in constraints:
            if len(item) == 3:
                a0, a1, mult = item
            else:
                a0, a1 = item
                mult = 1
            self.add(Constraint.make(a0, a1), mult)

    def add(self, c: Constraint, mult: int = 1) -> None:
        if mult <= 0:
            raise ValueError("multiplicity must be positive")
        if len(c.a0) != self.k0 or len(c.a1) != self.k1:
            raise ValueError(
                f"constraint sizes {(len(c.a0), len(c.a1))} do not match uniformity {(self.k0, self.k1)}"
            )
        for u in itertools.chain(c.a0, c.a1):
            if not 0 <= u < self.n_vertices:
                raise ValueError(f"vertex {u} outside ground set of size {self.n_vertices}")
        self._edges[c] += mult

    # -- basic accessors ---------------------------------------------------

    def e(self) -> int:
        """Number of constraints, counted with multiplicity."""
        return sum(self._edges.values())

    def is_empty(self) -> bool:
        return not self._edges

    def support_size(self) -> int:
        """Number of distinct constraints, ignoring multiplicity."""
        return len(self._edges)

    def constraints(self) -> Iterator[tuple[Constraint, int]]:
        yield from self._edges.items()

    def multiplicity(self, c: Constraint) -> int:
        return self._edges.get(c, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniformHypergraph)
            and (self.k0, self.k1, self.n_vertices) == (other.k0, other.k1, other.n_vertices)
            and self._edges == other._edges
        )

    def __repr__(self) -> str:
        return f"UniformHypergraph(k0={self.k0}, k1={self.k1}, n={self.n_vertices}, e={self.e()})"

    # -- degrees -----------------------------------------------------------

    def degree(self, t0: Iterable[int], t1: Iterable[int]) -> int:
        """Total multiplicity of constraints with t0 inside A0 and t1 inside A1."""
        s0, s1 = frozenset(t0), frozenset(t1)
        if s0 & s1:
            raise ValueError("degree query sides must be disjoint")
        total = 0
        for c, mult in self._edges.items():
            if s0 <= set(c.a0) and s1 <= set(c.a1):
                total += mult
        return total

    def max_degree(self, l0: int, l1: int) -> int:
        """Delta_{(l0,l1)}: the largest degree over pairs of sizes (l0, l1).

        Computed by accumulating sub-tuples of stored constraints, never by
        enumerating all vertex tuples, so empty hypergraphs report 0.
        """
        if not (0 <= l0 <= self.k0 and 0 <= l1 <= self.k1):
            raise ValueError(f"sizes {(l0, l1)} out of range for uniformity {(self.k0, self.k1)}")
        if (l0, l1) == (0, 0):
            raise ValueError("(0, 0) degree is just e(H); ask for a nontrivial pair")
        counts: Counter[tuple[tuple[int, ...], tuple[int, ...]]] = Counter()
        for c, mult in self._edges.items():
            for s0 in itertools.combinations(c.a0, l0):
                for s1 in itertools.combinations(c.a1, l1):
                    counts[(s0, s1)] += mult
        return max(counts.values(), default=0)

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.k0} {self.k1} {self.n_vertices}"]
        for c in sorted(self._edges, key=Constraint.key):
            mult = self._edges[c]
            lines.append(f"{mult} | {' '.join(map(str, c.a0))} | {' '.join(map(str, c.a1))}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str, *, allow_degenerate: bool = False) -> "UniformHypergraph":
        lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty hypergraph text")
        head = lines[0].split()
        if len(head) != 3:
            raise ValueError(f"bad header {lines[0]!r}, expected 'k0 k1 n'")
        k0, k1, n = map(int, head)
        h = UniformHypergraph(k0, k1, n, allow_degenerate=allow_degenerate)
        for ln in lines[1:]:
            parts = ln.split("|")
            if len(parts) != 3:
                raise ValueError(f"bad constraint line {ln!r}")
            mult = int(parts[0])
            a0 = tuple(map(int, parts[1].split()))
            a1 = tuple(map(int, parts[2].split()))
            h.add(Constraint.make(a0, a1), mult)
        return h


# -- assignments -----------------------------------------------------------


@dataclass(frozen=True)
class Assignment:
    """A 0/1 assignment on the ground set, held as a bit tuple."""

    bits: tuple[int, ...]

    @staticmethod
    def from_bits(bits: Sequence[int]) -> "Assignment":
        t = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in t):
            raise ValueError("assignment bits must be 0 or 1")
        return Assignment(t)

    @staticmethod
    def from_ones(n: int, ones: Iterable[int]) -> "Assignment":
        s = set(ones)
        if any(not 0 <= u < n for u in s):
            raise ValueError("one-positions outside ground set")
        return Assignment(tuple(1 if i in s else 0 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def ones_count(self) -> int:
        return sum(self.bits)

    def ones(self) -> frozenset[int]:
        return frozenset(i for i, b in enumerate(self.bits) if b)

    def violates(self, c: Constraint) -> bool:
        return all(self.bits[u] == 0 for u in c.a0) and all(self.bits[u] == 1 for u in c.a1)

    def in_solution_set(self, h: UniformHypergraph) -> bool:
        """True when this assignment violates none of the constraints of h."""
        return not any(self.violates(c) for c, _ in h.constraints())


# -- module-level convenience wrappers --------------------------------------


def degree(h: UniformHypergraph, t0: Iterable[int], t1: Iterable[int]) -> int:
    return h.degree(t0, t1)


def max_degree(h: UniformHypergraph, l0: int, l1: int) -> int:
    return h.max_degree(l0, l1)


# -- container hypothesis ----------------------------------------------------


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the degree-condition check, one entry per (l0, l1) pair.

    entries maps (l0, l1) to (observed max degree, exact bound, passed);
    min_k is the smallest K under which every pair would pass.
    """

    entries: dict[tuple[int, int], tuple[int, Fraction, bool]]
    min_k: Fraction
    k: Fraction
    b: int
    m: int
    r: int

    @property
    def all_passed(self) -> bool:
        return all(ok for (_, _, ok) in self.entries.values())

    def failing_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p, (_, _, ok) in self.entries.items() if not ok)


def check_container_hypothesis(h: UniformHypergraph, k: Fraction | int | float, b: int, m: int, r: int) -> HypothesisReport:
    """Evaluate the degree condition for every admissible (l0, l1), exactly.

    The bound for sizes (l0, l1) is K * b^(l0+l1-1) / (m^l0 * v^l1) * e(H),
    with an extra factor m/r when l0 > 0.  All arithmetic is in Fractions;
    floats for K are converted exactly.
    """
    if h.is_empty():
        raise ValueError("hypothesis check needs a non-empty hypergraph")
    if min(b, m, r) < 1:
        raise ValueError("b, m, r must be positive integers")
    kf = Fraction(k)
    if kf <= 0:
        raise ValueError("K must be positive")
    v = h.n_vertices
    e = h.e()
    entries: dict[tuple[int, int], tuple[int, Fraction, bool]] = {}
    min_k = Fraction(0)
    for l0 in range(h.k0 + 1):
        for l1 in range(h.k1 + 1):
            if (l0, l1) == (0, 0):
                continue
            delta = h.max_degree(l0, l1)
            base = Fraction(b ** (l0 + l1 - 1) * e, m**l0 * v**l1)
            if l0 > 0:
                base *= Fraction(m, r)
            bound = kf * base
            entries[(l0, l1)] = (delta, bound, delta <= bound)
            min_k = max(min_k, Fraction(delta) / base)
    return HypothesisReport(entries=entries, min_k=min_k, k=kf, b=b, m=m, r=r)
