"""Polynomial-time parity partition and orientation routines.

Everything reduces to small GF(2) linear systems (one variable per vertex,
plus one per edge for the 2-coloring systems) or to a single spanning-tree
sweep; free variables are fixed to 0, so all outputs are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Matrix, solve
from .graph import Graph, GraphError, vertices_of

__all__ = [
    "CographFailure",
    "JoinBoundResult",
    "Orientation",
    "TwoColoring",
    "cograph_odd_3_coloring",
    "even_two_coloring",
    "gallai_even_even",
    "gallai_odd_even",
    "join_bound_floor",
    "join_bound_subgraph",
    "odd_orientation",
    "odd_two_coloring",
    "orientation_obstruction",
]


@dataclass(frozen=True)
class TwoColoring:
    """2-class vertex coloring plus the per-edge monochromatic indicators."""

    colors: tuple[int, ...]                      # class 0 or 1 per vertex
    edge_mono: dict[tuple[int, int], int]        # (u, v) u < v -> 1 iff same class

    def class_mask(self, cls: int) -> int:
        m = 0
        for v, c in enumerate(self.colors):
            if c == cls:
                m |= 1 << v
        return m


def _two_coloring_system(g: Graph, vertex_rhs: int) -> TwoColoring | None:
    """Solve the edge/vertex parity system shared by both 2-coloring variants.

    Variables: x_v per vertex, y_e per edge.  Per edge uv: x_u + x_v + y_e = 1
    (y_e marks monochromatic edges).  Per vertex v: sum of y_e over incident
    edges = vertex_rhs, i.e. v's degree inside its own class has that parity.
    """
    edges = list(g.edges())
    nvars = g.n + len(edges)
    rows = []
    rhs_bits = []
    for k, (u, v) in enumerate(edges):
        rows.append((1 << u) | (1 << v) | (1 << (g.n + k)))
        rhs_bits.append(1)
    incident: list[int] = [0] * g.n
    for k, (u, v) in enumerate(edges):
        incident[u] |= 1 << (g.n + k)
        incident[v] |= 1 << (g.n + k)
    for v in range(g.n):
        rows.append(incident[v])
        rhs_bits.append(vertex_rhs)
    rhs = sum(b << i for i, b in enumerate(rhs_bits))
    x = solve(Gf2Matrix(tuple(rows), nvars), rhs)
    if x is None:
        return None
    colors = tuple(x >> v & 1 for v in range(g.n))
    edge_mono = {e: x >> (g.n + k) & 1 for k, e in enumerate(edges)}
    return TwoColoring(colors, edge_mono)


def odd_two_coloring(g: Graph) -> TwoColoring | None:
    """Partition into <= 2 classes, each inducing an odd subgraph, or None."""
    return _two_coloring_system(g, vertex_rhs=1)


def even_two_coloring(g: Graph) -> TwoColoring:
    """Partition into <= 2 classes, each inducing an even subgraph.

    Always exists (Gallai); infeasibility would be an internal error.
    """
    result = _two_coloring_system(g, vertex_rhs=0)
    if result is None:
        raise RuntimeError("internal error: even 2-coloring system infeasible")
    return result


def _gallai(g: Graph, self_extra: int) -> tuple[int, int]:
    """Shared per-vertex system for the Gallai partitions.

    Membership variable x_v = 1 puts v in part A.  Row v: sum of x_u over
    open neighbors plus x_v * (deg(v) + self_extra) = deg(v)  (mod 2).
    """
    rows = []
    rhs = 0
    for v in range(g.n):
        row = g.adj[v]
        if (g.degree(v) + self_extra) & 1:
            row |= 1 << v
        rows.append(row)
        if g.degree(v) & 1:
            rhs |= 1 << v
    x = solve(Gf2Matrix(tuple(rows), g.n), rhs)
    if x is None:
        raise RuntimeError("internal error: Gallai partition system infeasible")
    return x, g.full_mask & ~x


def gallai_odd_even(g: Graph) -> tuple[int, int]:
    """(A, B) with G[A] odd and G[B] even; always exists."""
    return _gallai(g, self_extra=1)


def gallai_even_even(g: Graph) -> tuple[int, int]:
    """(A, B) with both induced parts even; always exists."""
    return _gallai(g, self_extra=0)


@dataclass(frozen=True)
class Orientation:
    """Edge orientations as (tail, head) arcs, one per edge in edge order."""

    arcs: tuple[tuple[int, int], ...]

    def indegrees(self, n: int) -> list[int]:
        deg = [0] * n
        for _, head in self.arcs:
            deg[head] += 1
        return deg


def orientation_obstruction(g: Graph) -> int | None:
    """Mask of the first component with odd |V_c| + |E_c|, or None."""
    for comp in g.components():
        edges_inside = sum((g.adj[v] & comp).bit_count() for v in vertices_of(comp)) // 2
        if (comp.bit_count() + edges_inside) & 1:
            return comp
    return None


def odd_orientation(g: Graph) -> Orientation | None:
    """Orientation with every in-degree odd, or None if any component forbids.

    Exists iff |V_c| + |E_c| is even for every component.  Non-tree edges are
    oriented low->high; a leaves-to-root sweep of a BFS tree fixes parities.
    """
    if orientation_obstruction(g) is not None:
        return None
    head: dict[tuple[int, int], int] = {}
    indeg = [0] * g.n
    for comp in g.components():
        root = (comp & -comp).bit_length() - 1
        parent: dict[int, int] = {root: -1}
        order = [root]
        seen = 1 << root
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for v in vertices_of(g.adj[u] & comp & ~seen):
                seen |= 1 << v
                parent[v] = u
                order.append(v)
        tree = {(min(v, p), max(v, p)) for v, p in parent.items() if p >= 0}
        for u in order:
            for v in vertices_of(g.adj[u] & comp):
                if u < v and (u, v) not in tree:
                    head[(u, v)] = v
                    indeg[v] += 1
        for v in reversed(order):
            p = parent[v]
            if p < 0:
                continue
            e = (min(v, p), max(v, p))
            if indeg[v] & 1:
                head[e] = p
                indeg[p] += 1
            else:
                head[e] = v
                indeg[v] += 1
        assert indeg[root] & 1, "component parity must leave the root odd"
    arcs = []
    for u, v in g.edges():
        h = head[(u, v)]
        arcs.append((u if h == v else v, h))
    return Orientation(tuple(arcs))


@dataclass(frozen=True)
class JoinBoundResult:
    subgraph: int                        # vertex mask inducing an odd subgraph
    coloring: tuple[int, ...] | None     # classes 0..2 over all of V when n is even


def join_bound_floor(n: int) -> int:
    """Guaranteed odd-subgraph order for an n-vertex graph with a join."""
    return 2 * ((n - 2 + 3) // 4) if n >= 2 else 0


def _check_join(g: Graph, v1: int, v2: int) -> None:
    if not v1 or not v2:
        raise GraphError("join sides must be nonempty")
    if v1 & v2:
        raise GraphError("join sides overlap")
    if (v1 | v2) != g.full_mask:
        raise GraphError("join sides must cover every vertex")
    for u in vertices_of(v1):
        if g.adj[u] & v2 != v2:
            missing = (v2 & ~g.adj[u]).bit_length() - 1
            raise GraphError(f"not a join: missing edge ({u}, {missing})")


def _case_odd_odd(g: Graph, v1: int, v2: int) -> tuple[int, int]:
    """Both sides odd order: two classes from the odd/even Gallai partitions.

    Class 0 unions the even-inducing parts (odd sizes, so the join makes the
    cross degrees odd); class 1 unions the odd-inducing parts.
    """
    class0 = 0
    class1 = 0
    for side in (v1, v2):
        sub, verts = g.induced(side)
        odd_local, even_local = gallai_odd_even(sub)
        for i, v in enumerate(verts):
            if odd_local >> i & 1:
                class1 |= 1 << v
            else:
                class0 |= 1 << v
    return class0, class1


def join_bound_subgraph(g: Graph, v1: int, v2: int) -> JoinBoundResult:
    """Odd induced subgraph of order >= 2*ceil((n-2)/4) from a join (v1, v2).

    For even n also returns a full <=3-class odd coloring; for odd n the odd
    chromatic number is undefined, so only the subgraph is produced.
    """
    _check_join(g, v1, v2)
    n = g.n
    colors = [0] * n
    if n % 2 == 0:
        if v1.bit_count() % 2 == 1:
            class0, class1 = _case_odd_odd(g, v1, v2)
            pair = 0
        else:
            a = v1 & -v1
            b = v2 & -v2
            pair = a | b
            sub, verts = g.induced(g.full_mask & ~pair)
            l1 = sum(1 << i for i, v in enumerate(verts) if v1 >> v & 1)
            l2 = sum(1 << i for i, v in enumerate(verts) if v2 >> v & 1)
            c0_local, c1_local = _case_odd_odd(sub, l1, l2)
            class0 = sum(1 << v for i, v in enumerate(verts) if c0_local >> i & 1)
            class1 = sum(1 << v for i, v in enumerate(verts) if c1_local >> i & 1)
        for v in vertices_of(class1):
            colors[v] = 1
        for v in vertices_of(pair):
            colors[v] = 2
        best = class0 if class0.bit_count() >= class1.bit_count() else class1
        return JoinBoundResult(best, tuple(colors))
    # odd n: drop the lowest vertex of the even-order side, then as above
    drop_side, keep_side = (v1, v2) if v1.bit_count() % 2 == 0 else (v2, v1)
    x = drop_side & -drop_side
    sub, verts = g.induced(g.full_mask & ~x)
    l1 = sum(1 << i for i, v in enumerate(verts) if (drop_side & ~x) >> v & 1)
    l2 = sum(1 << i for i, v in enumerate(verts) if keep_side >> v & 1)
    c0_local, c1_local = _case_odd_odd(sub, l1, l2)
    class0 = sum(1 << v for i, v in enumerate(verts) if c0_local >> i & 1)
    class1 = sum(1 << v for i, v in enumerate(verts) if c1_local >> i & 1)
    best = class0 if class0.bit_count() >= class1.bit_count() else class1
    return JoinBoundResult(best, None)


@dataclass(frozen=True)
class CographFailure:
    reason: str     # "not-cograph" | "odd-component"
    detail: int     # vertex mask of the offending induced subgraph


def _co_components(g: Graph, mask: int) -> list[int]:
    """Connected components of the complement restricted to `mask`."""
    seen = 0
    out = []
    for v in vertices_of(mask):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in vertices_of(frontier):
                nxt |= mask & ~g.adj[u] & ~(1 << u)
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def _components_within(g: Graph, mask: int) -> list[int]:
    seen = 0
    out = []
    for v in vertices_of(mask):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in vertices_of(frontier):
                nxt |= g.adj[u] & mask
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def _is_cograph(g: Graph, mask: int) -> bool:
    """Cograph test by alternating complement-connectivity, no P4 search."""
    if mask.bit_count() <= 1:
        return True
    comps = _components_within(g, mask)
    if len(comps) > 1:
        return all(_is_cograph(g, c) for c in comps)
    cocomps = _co_components(g, mask)
    if len(cocomps) == 1:
        return False
    return all(_is_cograph(g, c) for c in cocomps)


def cograph_odd_3_coloring(g: Graph) -> tuple[int, ...] | CographFailure:
    """Odd coloring of a cograph with <= 3 classes (classes 0..2).

    Fails as a value when the input is not a cograph or some component has
    odd order (the odd chromatic number is undefined there).
    """
    if not _is_cograph(g, g.full_mask):
        for comp in _components_within(g, g.full_mask):
            if not _is_cograph(g, comp):
                return CographFailure("not-cograph", comp)
        return CographFailure("not-cograph", g.full_mask)
    colors = [0] * g.n
    for comp in g.components():
        if comp.bit_count() & 1:
            return CographFailure("odd-component", comp)
        sub, verts = g.induced(comp)
        cocomps = _co_components(sub, sub.full_mask)
        v1 = cocomps[0]
        v2 = sub.full_mask & ~v1
        result = join_bound_subgraph(sub, v1, v2)
        assert result.coloring is not None
        for i, v in enumerate(verts):
            colors[v] = result.coloring[i]
    return tuple(colors)
