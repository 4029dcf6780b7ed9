"""Dual graphs of exceptional curves, fundamental and canonical cycles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import is_negative_definite, leading_minors, solve_rational


class GraphError(ValueError):
    pass


@dataclass
class DualGraph:
    labels: list
    self_int: list
    edges: set = field(default_factory=set)  # frozensets of two vertex indices

    def __post_init__(self):
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        self._adj = {k: set() for k in range(len(self.labels))}
        for e in self.edges:
            i, j = tuple(e)
            self._adj[i].add(j)
            self._adj[j].add(i)

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def add_vertex(self, label, self_intersection: int) -> int:
        if label in self._index:
            raise GraphError(f"duplicate vertex {label}")
        self.labels.append(label)
        self.self_int.append(self_intersection)
        self._index[label] = len(self.labels) - 1
        self._adj[len(self.labels) - 1] = set()
        return len(self.labels) - 1

    def add_edge(self, u, v):
        i, j = self.index(u), self.index(v)
        if i == j:
            raise GraphError("loops are not allowed")
        self.edges.add(frozenset((i, j)))
        self._adj[i].add(j)
        self._adj[j].add(i)

    def neighbours(self, i: int) -> list[int]:
        return sorted(self._adj[i])

    def matrix(self, support=None) -> list[list[int]]:
        idx = range(len(self)) if support is None else sorted(support)
        pos = {v: k for k, v in enumerate(idx)}
        M = [[0] * len(pos) for _ in pos]
        for v, k in pos.items():
            M[k][k] = self.self_int[v]
        for e in self.edges:
            i, j = tuple(e)
            if i in pos and j in pos:
                M[pos[i]][pos[j]] = M[pos[j]][pos[i]] = 1
        return M

    def is_tree(self) -> bool:
        return len(self.edges) == len(self) - 1 and self.is_connected()

    def is_connected(self, support=None) -> bool:
        verts = set(range(len(self))) if support is None else set(support)
        if not verts:
            return False
        start = min(verts)
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w in verts and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == verts

    def elimination_order(self) -> list[int]:
        """Reverse BFS order: leaves first, so elimination on a tree creates no fill."""
        order, seen = [], set()
        for root in range(len(self)):
            if root in seen:
                continue
            seen.add(root)
            queue = [root]
            for v in queue:
                for w in self.neighbours(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            order.extend(queue)
        return order[::-1]

    def permuted_matrix(self, order) -> list[list[int]]:
        M = self.matrix()
        return [[M[i][j] for j in order] for i in order]

    def is_negative_definite(self, support=None) -> bool:
        order = self.elimination_order()
        if support is not None:
            order = [v for v in order if v in support]
        return is_negative_definite(self.permuted_matrix(order))

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": l, "self_intersection": s, "genus": 0} for l, s in zip(self.labels, self.self_int)],
            "edges": sorted(sorted([self.labels[i] for i in e]) for e in self.edges),
        }


@dataclass
class Cycle:
    graph: DualGraph
    coeffs: list

    def dot(self, other) -> Fraction | int:
        o = other.coeffs if isinstance(other, Cycle) else other
        return sum(o[v] * self.dot_vertex(v) for v in range(len(o)) if o[v])

    def dot_vertex(self, v: int):
        g = self.graph
        return self.coeffs[v] * g.self_int[v] + sum(self.coeffs[w] for w in g.neighbours(v))

    def square(self):
        return self.dot(self)

    def __add__(self, other):
        return Cycle(self.graph, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, k):
        return Cycle(self.graph, [k * a for a in self.coeffs])

    def support(self) -> set:
        return {i for i, c in enumerate(self.coeffs) if c}

    def by_label(self) -> dict:
        return {lab: c for lab, c in zip(self.graph.labels, self.coeffs)}

    def to_json(self) -> dict:
        return {lab: str(c) for lab, c in zip(self.graph.labels, self.coeffs) if c}


def chain_label(i: int, j: int) -> str:
    return f"A{i},{j}"


def build_star_graph(q: int) -> DualGraph:
    """Central curve A0 (self-intersection -q) with q+1 chains of q-1 (-2)-curves."""
    if q < 2:
        raise GraphError("q must be at least 2")
    g = DualGraph([], [])
    g.add_vertex("A0", -q)
    for i in range(q + 1):
        prev = "A0"
        for j in range(1, q):
            g.add_vertex(chain_label(i, j), -2)
            g.add_edge(prev, chain_label(i, j))
            prev = chain_label(i, j)
    return g


def chain_graph(n: int) -> DualGraph:
    """A_n configuration: n (-2)-curves in a row."""
    g = DualGraph([], [])
    for k in range(n):
        g.add_vertex(f"C{k}", -2)
        if k:
            g.add_edge(f"C{k - 1}", f"C{k}")
    return g


def star_cycle_closed_form(q: int, g: DualGraph | None = None) -> Cycle:
    """q A0 + sum (q - j) A_ij."""
    g = g or build_star_graph(q)
    coeffs = [0] * len(g)
    coeffs[g.index("A0")] = q
    for i in range(q + 1):
        for j in range(1, q):
            coeffs[g.index(chain_label(i, j))] = q - j
    return Cycle(g, coeffs)


def fundamental_cycle(g: DualGraph, seed: int | None = None) -> Cycle:
    """Computation sequence from the reduced exceptional cycle.

    With ``seed=None`` the lowest-index vertex with Z.v > 0 is added at each
    step; otherwise a seeded random choice among such vertices.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if not g.is_negative_definite():
        raise GraphError("intersection matrix is not negative definite")
    rng = random.Random(f"computation-sequence:{seed}") if seed is not None else None
    Z = Cycle(g, [1] * len(g))
    positive = {v for v in range(len(g)) if Z.dot_vertex(v) > 0}
    while positive:
        v = min(positive) if rng is None else rng.choice(sorted(positive))
        Z.coeffs[v] += 1
        for w in (v, *g.neighbours(v)):
            if Z.dot_vertex(w) > 0:
                positive.add(w)
            else:
                positive.discard(w)
    return Z


def canonical_cycle(g: DualGraph) -> Cycle:
    """Rational K with K.E + E^2 = -2 for every (rational) vertex E."""
    order = g.elimination_order()
    rhs = [-2 - g.self_int[v] for v in order]
    sol = solve_rational(g.permuted_matrix(order), rhs)
    coeffs = [Fraction(0)] * len(g)
    for k, v in enumerate(order):
        coeffs[v] = sol[k]
    return Cycle(g, coeffs)


def fundamental_genus(g: DualGraph, Z: Cycle | None = None, K: Cycle | None = None) -> int:
    Z = Z or fundamental_cycle(g)
    K = K or canonical_cycle(g)
    chi = -Fraction(Z.square() + K.dot(Z)) / 2
    if chi.denominator != 1:
        raise ArithmeticError(f"non-integral Euler characteristic {chi}")
    return 1 - int(chi)


def kernel_degrees(q: int) -> list[list[int]]:
    """Degrees floor(i/q) - (i mod q) arranged in rows of length q, i < q(q-2)."""
    return [[r - c for c in range(q)] for r in range(q - 2)]


def pg_upper_bound(q: int) -> int:
    if q < 2:
        raise GraphError("q must be at least 2")
    total = sum(max(0, i // q - i % q + 1) for i in range(q * (q - 2)))
    assert total == q * (q - 1) * (q - 2) // 6
    return total


@dataclass
class FiberGraph:
    graph: DualGraph
    F1: Cycle
    F2: Cycle
    checks: dict


def extended_fiber_graph(q: int) -> FiberGraph:
    """Star graph plus the (-1)-curves B1 (on chain 0) and B2 (on chain q)."""
    g = build_star_graph(q)
    g.add_vertex("B1", -1)
    g.add_edge("B1", chain_label(0, q - 1))
    g.add_vertex("B2", -1)
    g.add_edge("B2", chain_label(q, q - 1))

    def fiber(chain, b):
        Z = star_cycle_closed_form(q, g)
        coeffs = list(Z.coeffs)
        for j in range(1, q):
            coeffs[g.index(chain_label(chain, j))] += j
        coeffs[g.index(b)] = q
        return Cycle(g, coeffs)

    F1, F2 = fiber(0, "B1"), fiber(q, "B2")
    star = build_star_graph(q)
    K = canonical_cycle(star)
    b1 = g.index("B1")
    Kext = Cycle(g, list(K.coeffs) + [0, 0])
    checks = {}
    for name, F in (("F1", F1), ("F2", F2)):
        supp = F.support()
        checks[f"{name}_orthogonal_to_support"] = all(F.dot_vertex(v) == 0 for v in supp)
        checks[f"{name}_square_zero"] = F.square() == 0
        # F in the kernel and a negative definite complement of one component: radical spanned by F
        rest = supp - {g.index("B1" if name == "F1" else "B2")}
        checks[f"{name}_radical_rank_one"] = checks[f"{name}_orthogonal_to_support"] and g.is_negative_definite(rest)
    checks["K_dot_B1"] = Kext.dot_vertex(b1)
    checks["K_dot_B1_ok"] = checks["K_dot_B1"] == -(q - 2)
    checks["B2_neighbour_multiplicity_in_F1"] = F1.coeffs[g.index(chain_label(q, q - 1))]
    return FiberGraph(g, F1, F2, checks)


def euler_snc_tree(g: DualGraph, support) -> int:
    """Euler number of a connected nodal union of rational curves: 2 V - E."""
    supp = set(support)
    if not g.is_connected(supp):
        raise GraphError("support is not connected")
    E = sum(1 for e in g.edges if e <= supp)
    return 2 * len(supp) - E


def negative_definite_report(g: DualGraph) -> dict:
    minors = leading_minors(g.permuted_matrix(g.elimination_order()))
    signs_ok = len(minors) == len(g) and all((m < 0) == (k % 2 == 0) and m != 0 for k, m in enumerate(minors))
    return {"negative_definite": signs_ok, "vertices": len(g), "determinant": str(minors[-1]) if minors else "1"}
