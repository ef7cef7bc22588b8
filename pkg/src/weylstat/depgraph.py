"""Dependency graphs of root sets: vertices are roots, edges join
non-orthogonal pairs.  Two indicator families with no connecting edges are
independent, so degree statistics of these graphs feed the normal
approximation bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PropertyViolationError, TooLargeError
from .rootsys import RootSystem

ANTICHAIN_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class DependencyGraph:
    """Undirected graph keyed by canonical root ids; equality is decidable."""

    vertices: tuple[int, ...]
    adjacency: dict[int, frozenset[int]]
    max_degree: int
    component_sizes: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency.values()) // 2

    def edges(self):
        for v in self.vertices:
            for w in self.adjacency[v]:
                if v < w:
                    yield (v, w)


def build_graph(rs: RootSystem, psi) -> DependencyGraph:
    """Graph on psi with edges between non-orthogonal distinct roots."""
    ids = sorted({rs.index(r) for r in psi})
    adj: dict[int, set[int]] = {v: set() for v in ids}
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            v, w = ids[a], ids[b]
            if rs._ip_ids(v, w) != 0:
                adj[v].add(w)
                adj[w].add(v)
    sizes = []
    seen: set[int] = set()
    for v in ids:
        if v in seen:
            continue
        comp = 0
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        sizes.append(comp)
    return DependencyGraph(
        vertices=tuple(ids),
        adjacency={v: frozenset(s) for v, s in adj.items()},
        max_degree=max((len(s) for s in adj.values()), default=0),
        component_sizes=tuple(sorted(sizes)),
    )


def check_antichain_degree(rs: RootSystem, psi):
    """Measure (is_antichain, max_degree, edge_count); assert antichain bounds.

    For a nonempty antichain the edge count is at most ``|psi| - 1`` and the
    maximum degree at most 3; violations raise
    :class:`PropertyViolationError`.
    """
    roots = list({rs.index(r): r for r in psi}.values())
    graph = build_graph(rs, roots)
    anti = rs.is_antichain(roots)
    if anti and roots:
        if graph.edge_count > len(roots) - 1:
            raise PropertyViolationError(
                f"antichain with {graph.edge_count} dependent pairs > |psi|-1 = {len(roots) - 1}"
            )
        if graph.max_degree > 3:
            raise PropertyViolationError(
                f"antichain with dependency degree {graph.max_degree} > 3"
            )
    return anti, graph.max_degree, graph.edge_count


def degree_bound_phi_d(rs: RootSystem, d: int):
    """Max dependency degree of the bounded-height root set, with its bound.

    Classical components obey the linear bound ``4 d``; a G2 component never
    exceeds 5 (one less than its number of positive roots).
    """
    if d < 1:
        raise PropertyViolationError("d must be positive")
    psi = rs.roots_up_to_height(d)
    graph = build_graph(rs, psi)
    classical_present = any(c.family != "G2" for c in rs.spec.components)
    bound = 4 * d if classical_present else 5
    for v in graph.vertices:
        fam = rs.spec.components[rs.roots[v].component].family
        limit = 5 if fam == "G2" else 4 * d
        if len(graph.adjacency[v]) > limit:
            raise PropertyViolationError(
                f"vertex {rs.render_root(rs.roots[v])} has degree "
                f"{len(graph.adjacency[v])} > {limit}"
            )
    return graph.max_degree, bound


def antichains(rs: RootSystem, limit: int = ANTICHAIN_ENUMERATION_CAP):
    """Yield every nonempty antichain (as a tuple of root ids), DFS order."""
    n = len(rs.roots)
    comparable = [set() for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            ra, rb = rs.roots[a], rs.roots[b]
            if rs.poset_leq(ra, rb) or rs.poset_leq(rb, ra):
                comparable[a].add(b)
                comparable[b].add(a)
    count = 0

    def extend(chosen, start):
        nonlocal count
        for k in range(start, n):
            if any(k in comparable[c] for c in chosen):
                continue
            chosen.append(k)
            count += 1
            if count > limit:
                raise TooLargeError(count, limit)
            yield tuple(chosen)
            yield from extend(chosen, k + 1)
            chosen.pop()

    yield from extend([], 0)


def edge_csv_rows(rs: RootSystem, graph: DependencyGraph):
    yield ("source", "target")
    for v, w in graph.edges():
        yield (rs.render_root(rs.roots[v]), rs.render_root(rs.roots[w]))


def to_dot(rs: RootSystem, graph: DependencyGraph) -> str:
    lines = ["graph dependency {"]
    for v in graph.vertices:
        lines.append(f'  "{rs.render_root(rs.roots[v])}";')
    for v, w in graph.edges():
        lines.append(
            f'  "{rs.render_root(rs.roots[v])}" -- "{rs.render_root(rs.roots[w])}";'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
