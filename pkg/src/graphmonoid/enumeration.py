"""Bounded enumeration of monoid classes.

The model takes every count vector up to a size cap and partitions them
two ways.  A union-find structure merges vectors joined by single moves
that stay inside the cap: blocks of this partition are provably
equivalent.  Certificate invariants stratify the same vectors from
above: blocks with different invariants are provably inequivalent.  The
true class relation sits between the two, so every answer drawn from the
model is either proved or reported as unknown, and counting questions
come back as a lower and an upper bound that agree exactly when the two
partitions coincide on the region of interest.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .graphs import Graph, hsat_closure, is_hereditary, _saturate
from .elements import MonoidElement, count_vectors, vertex_element, zero
from .certificates import (
    Certificate,
    _quotient_data,
    _quotient_image,
    leq_obstruction,
    support_closure,
)

DEFAULT_CLASS_CAP = 24
DEFAULT_K_BOUND = 3


class ClassModel:
    """Union-find over in-cap moves plus invariant fingerprints."""

    def __init__(self, graph: Graph, cap: int):
        if cap < 1:
            raise ValueError("cap must be positive")
        self.graph = graph
        self.cap = cap
        order = graph.vertex_order
        n = len(order)
        self.vectors: list[tuple[int, ...]] = list(count_vectors(n, cap))
        self.index = {v: i for i, v in enumerate(self.vectors)}
        self.sizes = [sum(v) for v in self.vectors]
        count = len(self.vectors)
        self._parent = list(range(count))
        self._rank = [0] * count

        deltas = []
        for p, v in enumerate(order):
            if not graph.is_sink(v):
                d = [0] * n
                d[p] -= 1
                for w in graph.ranges_from(v):
                    d[graph.vertex_index[w]] += 1
                deltas.append((p, tuple(d), sum(d)))
        for i, vec in enumerate(self.vectors):
            si = self.sizes[i]
            for p, d, growth in deltas:
                if vec[p] and si + growth <= cap:
                    j = self.index[tuple(a + b for a, b in zip(vec, d))]
                    self._union(i, j)

        best: dict[int, tuple[int, tuple[int, ...]]] = {}
        for i, vec in enumerate(self.vectors):
            r = self._find(i)
            key = (self.sizes[i], vec)
            if r not in best or key < best[r]:
                best[r] = key
        self._rep_key = best
        self.roots: list[int] = sorted(best, key=best.__getitem__)
        self._fp: dict[int, tuple] = {}
        self._add_memo: dict[tuple[int, int], Optional[int]] = {}
        self._le_memo: dict[tuple[int, int], Optional[int]] = {}
        self._le_table: Optional[tuple[dict[int, int], dict[int, int]]] = None

    # -- union-find ----------------------------------------------------

    def _find(self, i: int) -> int:
        p = self._parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def _union(self, i: int, j: int) -> None:
        ri, rj = self._find(i), self._find(j)
        if ri == rj:
            return
        if self._rank[ri] < self._rank[rj]:
            ri, rj = rj, ri
        self._parent[rj] = ri
        if self._rank[ri] == self._rank[rj]:
            self._rank[ri] += 1

    # -- classes -------------------------------------------------------

    def in_universe(self, x: MonoidElement) -> bool:
        return x.graph == self.graph and x.counts in self.index

    def class_of(self, x: MonoidElement) -> int:
        if x.graph != self.graph:
            raise ValueError("element belongs to a different graph")
        i = self.index.get(x.counts)
        if i is None:
            raise ValueError("element lies outside the enumerated universe")
        return self._find(i)

    def class_of_vertex(self, v: str) -> int:
        return self.class_of(vertex_element(self.graph, v))

    def rep(self, root: int) -> MonoidElement:
        """Smallest member of a block, by size then count vector."""
        return MonoidElement(self.graph, self._rep_key[root][1])

    def rep_size(self, root: int) -> int:
        return self._rep_key[root][0]

    def roots_up_to(self, size: int) -> list[int]:
        return [r for r in self.roots if self._rep_key[r][0] <= size]

    def closure_of(self, root: int) -> frozenset:
        return support_closure(self.rep(root))

    def fingerprint(self, root: int) -> tuple:
        """Invariant profile of a block; unequal profiles prove blocks
        belong to different classes."""
        fp = self._fp.get(root)
        if fp is None:
            rep = self.rep(root)
            parts: list = [tuple(sorted(support_closure(rep)))]
            for _, q, pres in _quotient_data(self.graph):
                parts.append(_quotient_image(q, pres, rep))
            fp = tuple(parts)
            self._fp[root] = fp
        return fp

    def distinct_classes(self, r: int, s: int) -> bool:
        return self.fingerprint(r) != self.fingerprint(s)

    def eq3(self, x: MonoidElement, y: MonoidElement) -> str:
        """Three-valued word problem inside the model."""
        try:
            rx = self.class_of(x)
            ry = self.class_of(y)
        except ValueError:
            return "unknown"
        if rx == ry:
            return "equal"
        if self.fingerprint(rx) != self.fingerprint(ry):
            return "distinct"
        return "unknown"

    # -- arithmetic on blocks ------------------------------------------

    def add_classes(self, r: int, s: int) -> Optional[int]:
        """Block of the sum of two representatives, or None when the sum
        leaves the universe."""
        key = (r, s) if r <= s else (s, r)
        if key in self._add_memo:
            return self._add_memo[key]
        va = self._rep_key[r][1]
        vb = self._rep_key[s][1]
        i = self.index.get(tuple(a + b for a, b in zip(va, vb)))
        out = None if i is None else self._find(i)
        self._add_memo[key] = out
        return out

    def le_witness(self, r: int, s: int) -> Optional[int]:
        """A block ``t`` with ``r + t`` provably landing in ``s``."""
        key = (r, s)
        if key in self._le_memo:
            return self._le_memo[key]
        room = self.cap - self._rep_key[r][0]
        out = None
        for t in self.roots:
            if self._rep_key[t][0] > room:
                break
            if self.add_classes(r, t) == s:
                out = t
                break
        self._le_memo[key] = out
        return out

    def le_classes(self, r: int, s: int) -> bool:
        return self.le_witness(r, s) is not None

    def le_table(self) -> tuple[dict[int, int], dict[int, int]]:
        """Whole-model divisibility at once.

        Returns ``(position, reachable)``: ``position`` numbers the
        blocks, and bit ``position[s]`` of ``reachable[r]`` is set when
        some block added to ``r`` provably lands in ``s``.  Costs one
        pass over all pairs of blocks; cached after the first call.
        """
        if self._le_table is None:
            position = {r: k for k, r in enumerate(self.roots)}
            reachable: dict[int, int] = {}
            for r in self.roots:
                bits = 0
                room = self.cap - self._rep_key[r][0]
                for t in self.roots:
                    if self._rep_key[t][0] > room:
                        break
                    s = self.add_classes(r, t)
                    if s is not None:
                        bits |= 1 << position[s]
                reachable[r] = bits
            self._le_table = (position, reachable)
        return self._le_table


def class_model(g: Graph, cap: int = DEFAULT_CLASS_CAP) -> ClassModel:
    return _build_model(g, cap)


@lru_cache(maxsize=32)
def _build_model(g: Graph, cap: int) -> ClassModel:
    return ClassModel(g, cap)


# ----------------------------------------------------------------------
# counting


def bounded_class_count(
    g: Graph, size_limit: int, cap: int = DEFAULT_CLASS_CAP
) -> tuple[int, int]:
    """Bounds on the number of classes with a member of the given size.

    Returns ``(low, high)``: at least ``low`` such classes are pairwise
    separated by invariants, and at most ``high`` blocks could merge
    further.  Equality means the count is exact.
    """
    if size_limit > cap:
        raise ValueError("size limit exceeds the enumeration cap")
    model = class_model(g, cap)
    roots = model.roots_up_to(size_limit)
    profiles = {model.fingerprint(r) for r in roots}
    return len(profiles), len(roots)


def quotient_bounded_class_count(
    g: Graph,
    h_members,
    size_limit: int,
    cap: int = DEFAULT_CLASS_CAP,
) -> tuple[int, int]:
    """Bounds on the class count of the monoid collapsed along a
    hereditary saturated set, computed inside the original graph.

    Vectors are additionally merged with themselves plus one vertex of
    the set (collapsing exactly the congruence the set generates), and
    only invariants that survive the collapse separate blocks.  Counted
    blocks are those reachable from a vector of size at most
    ``size_limit`` supported away from the set.
    """
    h = frozenset(h_members)
    for v in h:
        g.require_vertex(v)
    if not is_hereditary(g, h) or _saturate(g, h) != h:
        raise ValueError("subset is not hereditary and saturated")
    if size_limit > cap:
        raise ValueError("size limit exceeds the enumeration cap")
    model = class_model(g, cap)
    vectors = model.vectors
    parent = [model._find(i) for i in range(len(vectors))]

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    order = g.vertex_order
    h_positions = [i for i, v in enumerate(order) if v in h]
    for i, vec in enumerate(vectors):
        if model.sizes[i] < cap:
            for p in h_positions:
                bumped = list(vec)
                bumped[p] += 1
                union(i, model.index[tuple(bumped)])

    wanted: set[int] = set()
    for i, vec in enumerate(vectors):
        if model.sizes[i] <= size_limit and all(
            vec[p] == 0 for p in h_positions
        ):
            wanted.add(find(i))

    best: dict[int, tuple[int, tuple[int, ...]]] = {}
    for i, vec in enumerate(vectors):
        r = find(i)
        if r in wanted:
            key = (model.sizes[i], vec)
            if r not in best or key < best[r]:
                best[r] = key

    entries = [
        (q, pres)
        for ctx, q, pres in _quotient_data(g)
        if h <= set(ctx)
    ]
    profiles = set()
    for r in wanted:
        _, vec = best[r]
        elem = MonoidElement(g, vec)
        parts: list = [tuple(sorted(hsat_closure(g, elem.support | h)))]
        for q, pres in entries:
            parts.append(_quotient_image(q, pres, elem))
        profiles.add(tuple(parts))
    return len(profiles), len(wanted)


# ----------------------------------------------------------------------
# order-ideal membership


def ideal_membership(
    x: MonoidElement,
    y: MonoidElement,
    k_bound: int = DEFAULT_K_BOUND,
    cap: int = DEFAULT_CLASS_CAP,
):
    """Three-valued test of ``x``'s class against the order-ideal
    generated by ``y``'s class.

    Returns ``("member", (k, z))`` with a proven witness ``x + z``
    equivalent to ``k`` copies of ``y``, ``("not-member", certificate)``
    with a checkable refutation, or ``("unknown", None)``.  The witness
    multiple is searched up to ``k_bound``; the enumeration cap escalates
    twice before giving up.
    """
    if x.graph != y.graph:
        raise ValueError("elements belong to different graphs")
    g = x.graph
    if x.is_zero:
        return ("member", (0, zero(g)))
    if y.is_zero:
        return ("not-member", Certificate("zero", None, False, True))
    # membership is monotone in the multiple, so one obstruction at the
    # largest multiple refutes the whole bounded question
    blocked = leq_obstruction(x, y * k_bound)
    if blocked is not None:
        return ("not-member", blocked)
    for attempt in (cap, cap + 8, cap + 16):
        model = class_model(g, attempt)
        try:
            rx = model.class_of(x)
        except ValueError:
            continue
        for k in range(1, k_bound + 1):
            try:
                rt = model.class_of(y * k)
            except ValueError:
                break
            witness = model.le_witness(rx, rt)
            if witness is not None:
                return ("member", (k, model.rep(witness)))
    return ("unknown", None)
