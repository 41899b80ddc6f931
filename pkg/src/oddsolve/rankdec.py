"""Rank decompositions: rooted binary decomposition trees and cut bases.

A decomposition tree is a full binary tree whose leaves are the graph
vertices.  Every node w induces the cut (V_w, V \\ V_w) where V_w is the set
of leaf vertices below w; the width of the tree is the maximum GF(2) rank of
the bipartite adjacency matrix across any of these cuts.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import Gf2Matrix, RrefDecomposition, rank_of, rref
from .graph import Graph, GraphError, vertices_of

__all__ = [
    "CutBasis",
    "DecompositionTree",
    "TreeFormatError",
    "caterpillar",
    "cut_rank",
    "heuristic_order",
    "optimal_linear",
    "parse_tree",
    "width",
    "write_tree",
]


class TreeFormatError(ValueError):
    """Malformed decomposition-tree document or invalid tree structure."""


@dataclass(frozen=True, eq=True)
class DecompositionTree:
    """Rooted full binary tree; leaves carry graph vertices."""

    children: dict[int, tuple[int, int]] = field(default_factory=dict)
    leaf_vertex: dict[int, int] = field(default_factory=dict)
    root: int = 0

    def __post_init__(self) -> None:
        dup = self.children.keys() & self.leaf_vertex.keys()
        if dup:
            raise TreeFormatError(f"node ids both internal and leaf: {sorted(dup)}")
        ids = self.children.keys() | self.leaf_vertex.keys()
        if self.root not in ids:
            raise TreeFormatError(f"root id {self.root} is not a node")
        if len(set(self.leaf_vertex.values())) != len(self.leaf_vertex):
            raise TreeFormatError("duplicate leaf vertices")
        # walk from the root: every node reached exactly once, no danglers
        seen: set[int] = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node in seen:
                raise TreeFormatError(f"node {node} reached twice (shared or cyclic)")
            seen.add(node)
            if node in self.children:
                left, right = self.children[node]
                for child in (left, right):
                    if child not in ids:
                        raise TreeFormatError(f"node {node} references unknown child {child}")
                stack.append(right)
                stack.append(left)
        if seen != ids:
            raise TreeFormatError(f"unreachable nodes: {sorted(ids - seen)}")

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_vertex)

    def is_leaf(self, node: int) -> bool:
        return node in self.leaf_vertex

    def postorder(self) -> list[int]:
        """Node ids with children before parents, left subtree first."""
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or node in self.leaf_vertex:
                out.append(node)
                continue
            left, right = self.children[node]
            stack.append((node, True))
            stack.append((right, False))
            stack.append((left, False))
        return out

    def leaf_masks(self) -> dict[int, int]:
        """Vertex bitmask below each node."""
        masks: dict[int, int] = {}
        for node in self.postorder():
            if node in self.leaf_vertex:
                masks[node] = 1 << self.leaf_vertex[node]
            else:
                left, right = self.children[node]
                masks[node] = masks[left] | masks[right]
        return masks

    def validate_for(self, g: Graph) -> None:
        """Check that leaves biject onto the graph's vertices."""
        got = sorted(self.leaf_vertex.values())
        if got != list(range(g.n)):
            raise TreeFormatError(
                f"tree leaves {got} do not biject onto vertices 0..{g.n - 1}")


class CutBasis:
    """Deterministic row bases for one cut (A, B) of a graph.

    Rows of side A are the neighborhoods of A-vertices restricted to B (ints
    over the full vertex range; B-columns only can be set).  The basis picks
    the earliest independent vertices, so representatives are canonical.
    """

    def __init__(self, g: Graph, a_mask: int) -> None:
        self.a_mask = a_mask
        self.b_mask = g.full_mask & ~a_mask
        self._a_vertices = vertices_of(a_mask)
        self._b_vertices = vertices_of(self.b_mask)
        self.a_dec = self._side(g, self._a_vertices, self.b_mask)
        self.b_dec = self._side(g, self._b_vertices, a_mask)
        self.rank = self.a_dec.rank
        self.a_basis_vertices = tuple(self._a_vertices[i] for i in self.a_dec.basis_row_indices)
        self.b_basis_vertices = tuple(self._b_vertices[i] for i in self.b_dec.basis_row_indices)
        self._a_pos = {v: i for i, v in enumerate(self._a_vertices)}
        self._b_pos = {v: i for i, v in enumerate(self._b_vertices)}

    @staticmethod
    def _side(g: Graph, vertices: list[int], other_mask: int) -> RrefDecomposition:
        rows = tuple(g.adj[v] & other_mask for v in vertices)
        return rref(Gf2Matrix(rows, g.n))

    def a_code(self, mask: int) -> int:
        """Representative code of a subset of A (bits over a_basis_vertices)."""
        acc = 0
        rows = self.a_dec.matrix.rows
        for v in vertices_of(mask):
            acc ^= rows[self._a_pos[v]]
        code = self.a_dec.coordinates(acc)
        assert code is not None, "subset row must lie in the side's row space"
        return code

    def b_code(self, mask: int) -> int:
        acc = 0
        rows = self.b_dec.matrix.rows
        for v in vertices_of(mask):
            acc ^= rows[self._b_pos[v]]
        code = self.b_dec.coordinates(acc)
        assert code is not None, "subset row must lie in the side's row space"
        return code

    def a_representative(self, code: int) -> int:
        """Vertex mask of the canonical representative with this code."""
        mask = 0
        for i, v in enumerate(self.a_basis_vertices):
            if code >> i & 1:
                mask |= 1 << v
        return mask

    def b_representative(self, code: int) -> int:
        mask = 0
        for i, v in enumerate(self.b_basis_vertices):
            if code >> i & 1:
                mask |= 1 << v
        return mask


def cut_rank(g: Graph, a_mask: int) -> CutBasis:
    """Cut basis (with .rank) for the cut (a_mask, complement)."""
    if a_mask < 0 or a_mask & ~g.full_mask:
        raise GraphError("cut side contains vertices outside the graph")
    return CutBasis(g, a_mask)


def _cut_rank_value(g: Graph, a_mask: int) -> int:
    """Rank only, computed from the smaller side."""
    b_mask = g.full_mask & ~a_mask
    side, other = (a_mask, b_mask) if a_mask.bit_count() <= b_mask.bit_count() else (b_mask, a_mask)
    return rank_of(g.adj[v] & other for v in vertices_of(side))


def width(g: Graph, t: DecompositionTree) -> int:
    t.validate_for(g)
    return max(_cut_rank_value(g, mask) for mask in t.leaf_masks().values())


def caterpillar(g: Graph, order: list[int]) -> DecompositionTree:
    """Left-comb tree whose leaves follow `order` (a permutation of V)."""
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    leaf_vertex = {i: order[i] for i in range(g.n)}
    if g.n == 1:
        return DecompositionTree({}, leaf_vertex, 0)
    children: dict[int, tuple[int, int]] = {}
    spine = 0
    nxt = g.n
    for i in range(1, g.n):
        children[nxt] = (spine, i)
        spine = nxt
        nxt += 1
    return DecompositionTree(children, leaf_vertex, spine)


def heuristic_order(g: Graph, method: str = "bfs") -> list[int]:
    """Leaf order heuristic: 'bfs' from a max-degree root, or 'degree'.

    Components are handled separately, ordered by their smallest vertex, and
    concatenated.  All ties break toward the smaller vertex index.
    """
    if method not in ("bfs", "degree"):
        raise GraphError(f"unknown order heuristic {method!r}")
    order: list[int] = []
    for comp in g.components():
        verts = vertices_of(comp)
        if method == "degree":
            order.extend(sorted(verts, key=lambda v: (-g.degree(v), v)))
            continue
        root = min(verts, key=lambda v: (-g.degree(v), v))
        seen = 1 << root
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in vertices_of(g.adj[u] & comp & ~seen):
                seen |= 1 << v
                queue.append(v)
        order.extend(queue)
    return order


def optimal_linear(g: Graph) -> DecompositionTree:
    """Caterpillar of minimum width (exact linear rank-width), n <= 20.

    Subset DP over prefix sets; exponential, intended for small instances.
    """
    if g.n > 20:
        raise GraphError(f"optimal_linear is capped at n <= 20, got {g.n}")
    if g.n == 0:
        raise GraphError("empty graph has no decomposition tree")
    n = g.n
    full = (1 << n) - 1
    f = [0] * (full + 1)
    choice = [0] * (full + 1)
    adj = g.adj
    for s in range(1, full + 1):
        best_v = -1
        best = None
        rest = s
        while rest:
            low = rest & -rest
            sub = f[s ^ low]
            if best is None or sub < best:
                best = sub
                best_v = low.bit_length() - 1
            rest ^= low
        cr = rank_of(adj[v] & ~s for v in vertices_of(s))
        f[s] = max(cr, best)
        choice[s] = best_v
    seq = [0] * n
    s = full
    for pos in range(n - 1, -1, -1):
        v = choice[s]
        seq[pos] = v
        s ^= 1 << v
    return caterpillar(g, seq)


def parse_tree(text: str) -> DecompositionTree:
    """Parse the line format ``leaf <id> <vertex>`` / ``node <id> <l> <r>`` /
    ``root <id>`` (vertices 1-indexed)."""
    children: dict[int, tuple[int, int]] = {}
    leaf_vertex: dict[int, int] = {}
    root: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            args = [int(p) for p in parts[1:]]
        except ValueError:
            raise TreeFormatError(f"line {lineno}: non-integer field") from None
        if parts[0] == "leaf":
            if len(args) != 2:
                raise TreeFormatError(f"line {lineno}: expected 'leaf <id> <vertex>'")
            node, vertex = args
            if node in children or node in leaf_vertex:
                raise TreeFormatError(f"line {lineno}: duplicate node id {node}")
            if vertex < 1:
                raise TreeFormatError(f"line {lineno}: vertices are 1-indexed")
            leaf_vertex[node] = vertex - 1
        elif parts[0] == "node":
            if len(args) != 3:
                raise TreeFormatError(
                    f"line {lineno}: expected 'node <id> <left> <right>' (binary nodes only)")
            node, left, right = args
            if node in children or node in leaf_vertex:
                raise TreeFormatError(f"line {lineno}: duplicate node id {node}")
            children[node] = (left, right)
        elif parts[0] == "root":
            if len(args) != 1:
                raise TreeFormatError(f"line {lineno}: expected 'root <id>'")
            if root is not None:
                raise TreeFormatError(f"line {lineno}: duplicate root line")
            root = args[0]
        else:
            raise TreeFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if root is None:
        raise TreeFormatError("missing root line")
    return DecompositionTree(children, leaf_vertex, root)


def write_tree(t: DecompositionTree) -> str:
    lines = []
    for node in sorted(t.children.keys() | t.leaf_vertex.keys()):
        if node in t.leaf_vertex:
            lines.append(f"leaf {node} {t.leaf_vertex[node] + 1}")
        else:
            left, right = t.children[node]
            lines.append(f"node {node} {left} {right}")
    lines.append(f"root {t.root}")
    return "\n".join(lines) + "\n"
