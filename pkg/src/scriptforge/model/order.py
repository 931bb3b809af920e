"""Reachability, cycle finding, and transitive closure/reduction for the
strict partial order over a script's events.

All functions take the node list in a fixed (creation) order plus an edge
list; outputs are deterministic given that ordering.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

Edge = tuple[str, str]


def successors(edges: Iterable[Edge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
    return adj


def find_path(edges: Iterable[Edge], src: str, dst: str) -> list[str] | None:
    """Shortest path src..dst along edges, or None. src == dst gives [src]."""
    if src == dst:
        return [src]
    adj = successors(edges)
    parent: dict[str, str] = {}
    queue: deque[str] = deque([src])
    seen = {src}
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v in seen:
                continue
            parent[v] = u
            if v == dst:
                path = [dst]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            seen.add(v)
            queue.append(v)
    return None


def reachable_sets(nodes: Sequence[str], edges: Iterable[Edge]) -> dict[str, set[str]]:
    """Map of node -> set of nodes strictly reachable from it."""
    adj = successors(edges)
    out: dict[str, set[str]] = {}
    for start in nodes:
        seen: set[str] = set()
        stack = list(adj.get(start, ()))
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(adj.get(u, ()))
        out[start] = seen
    return out


def find_cycle(nodes: Sequence[str], edges: Iterable[Edge]) -> list[str] | None:
    """Some directed cycle as [n0, ..., n0], or None if the graph is acyclic."""
    adj = successors(edges)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in nodes}
    trail: list[str] = []

    def visit(start: str) -> list[str] | None:
        stack: list[tuple[str, Iterable[str]]] = [(start, iter(adj.get(start, ())))]
        color[start] = GRAY
        trail.append(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt, WHITE) == GRAY:
                    i = trail.index(nxt)
                    return trail[i:] + [nxt]
                if color.get(nxt, WHITE) == WHITE:
                    color[nxt] = GRAY
                    trail.append(nxt)
                    stack.append((nxt, iter(adj.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                trail.pop()
                color[node] = BLACK
        return None

    for n in nodes:
        if color[n] == WHITE:
            cycle = visit(n)
            if cycle is not None:
                return cycle
    return None


def transitive_closure(nodes: Sequence[str], edges: Iterable[Edge]) -> set[Edge]:
    reach = reachable_sets(nodes, edges)
    return {(u, v) for u, targets in reach.items() for v in targets}


def transitive_reduction(nodes: Sequence[str], edges: Iterable[Edge]) -> list[Edge]:
    """Unique minimal edge set with the same reachability (DAG only).

    A closure edge (u, v) survives iff no intermediate w has both (u, w)
    and (w, v) in the closure. Result is ordered by node creation order.
    """
    closure = transitive_closure(nodes, edges)
    reach = reachable_sets(nodes, edges)
    index = {n: i for i, n in enumerate(nodes)}
    reduced = [
        (u, v)
        for (u, v) in closure
        if not any(w != v and (w, v) in closure for w in reach[u])
    ]
    reduced.sort(key=lambda e: (index[e[0]], index[e[1]]))
    return reduced


def unordered_pairs(nodes: Sequence[str], edges: Iterable[Edge]) -> list[tuple[str, str]]:
    """Pairs with no path either way, earlier-created node first."""
    reach = reachable_sets(nodes, edges)
    pairs = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            if b not in reach[a] and a not in reach[b]:
                pairs.append((a, b))
    return pairs
