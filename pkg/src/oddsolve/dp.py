"""Exact parity-subgraph solvers running over a rank decomposition tree.

Dynamic programming over the binary decomposition tree.  At a node whose
leaves span the vertex set A, a partial solution S <= A is summarized by two
things that together decide how it can be completed across the cut (A, B):

  * the code of N2(S) & B over the cut's row basis (how S toggles outside
    degree parities), and
  * the set of completion codes that fix S's remaining parity defects,
    stored as the canonical reduced form of a small affine GF(2) system
    (one equation per realized neighborhood pattern inside A).

Two partial solutions with equal keys are interchangeable in every
completion, so each key retains one extremal witness; keys whose completion
system is unsatisfiable are dropped immediately.  At the root the cut is
(V, {}), both key parts collapse, and the surviving witness is the answer.
"""
from __future__ import annotations

from .graph import Graph, mask_lex_less, vertices_of
from .rankdec import CutBasis, DecompositionTree, cut_rank

__all__ = [
    "chi_odd",
    "solve_mes",
    "solve_mos",
    "solve_odd_ds",
    "solve_odd_qcol",
    "solve_odd_tds",
]

# (D, E) of a partial solution: vertices of D still constrain the completion,
# those in E need odd outside degree, the rest of D need even outside degree.
_SUBSET_KINDS = {
    "mos": lambda a, s, p: (s, s & ~p),
    "mes": lambda a, s, p: (s, s & p),
    "ds": lambda a, s, p: (a & ~s, a & ~s & ~p),
    "tds": lambda a, s, p: (a, a & ~p),
}
_MAXIMIZING = {"mos": True, "mes": True, "ds": False, "tds": False}


def _better(maximize: bool, new: int, old: int) -> bool:
    nc, oc = new.bit_count(), old.bit_count()
    if nc != oc:
        return nc > oc if maximize else nc < oc
    return mask_lex_less(new, old)


def _sig_rref(rows: list[int], rhs_bit: int) -> tuple[int, ...] | None:
    """Canonical reduced form of an affine system, or None if unsatisfiable.

    Each row is a coefficient pattern with the right-hand side in `rhs_bit`.
    The reduced rows are unique for a given solution set, so equal signatures
    mean equal completion sets.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for piv, b in zip(pivots, basis):
            if r & piv:
                r ^= b
        if r == 0:
            continue
        if r == rhs_bit:
            return None
        piv = r & -r
        for i, b in enumerate(basis):
            if b & piv:
                basis[i] ^= r
        basis.append(r)
        pivots.append(piv)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return tuple(basis[i] for i in order)


class _NodeCut:
    """Per-node cut data: basis, and A-vertices grouped by outside pattern."""

    __slots__ = ("a", "b", "basis", "rb", "rhs_bit", "patterns", "zero_mask")

    def __init__(self, g: Graph, a_mask: int) -> None:
        self.a = a_mask
        self.b = g.full_mask & ~a_mask
        self.basis: CutBasis = cut_rank(g, a_mask)
        bverts = self.basis.b_basis_vertices
        self.rb = len(bverts)
        self.rhs_bit = 1 << self.rb
        profiles = [g.adj[w] & a_mask for w in bverts]
        patterns: dict[int, int] = {}
        zero = 0
        for v in vertices_of(a_mask):
            bit = 1 << v
            pat = 0
            for i, prof in enumerate(profiles):
                if prof & bit:
                    pat |= 1 << i
            if pat:
                patterns[pat] = patterns.get(pat, 0) | bit
            else:
                zero |= bit
        self.patterns = patterns
        self.zero_mask = zero

    def coset_sig(self, d: int, e: int) -> tuple[int, ...] | None:
        """Signature of {completion codes fixing (d, e)}, or None if empty.

        A vertex in e with no outside basis neighborhood can never be fixed;
        vertices sharing a pattern must agree on the required parity.
        """
        if e & self.zero_mask:
            return None
        rows: list[int] = []
        for pat, pmask in self.patterns.items():
            dm = d & pmask
            if not dm:
                continue
            em = e & dm
            if em == 0:
                rows.append(pat)
            elif em == dm:
                rows.append(pat | self.rhs_bit)
            else:
                return None
        return _sig_rref(rows, self.rhs_bit)


def _child_map(g: Graph, parent: _NodeCut, child: _NodeCut, sibling_mask: int):
    """code-at-child -> (code over the parent basis, parity mask on sibling).

    Both outputs depend only on the child code: subsets with equal crossing
    behavior at the child cut agree on every vertex outside the child.
    """
    rows = [g.adj[v] for v in child.basis.a_basis_vertices]
    dec = parent.basis.a_dec
    b = parent.b
    cache: dict[int, tuple[int, int]] = {}

    def get(code: int) -> tuple[int, int]:
        hit = cache.get(code)
        if hit is not None:
            return hit
        vec = 0
        rest = code
        while rest:
            vec ^= rows[(rest & -rest).bit_length() - 1]
            rest &= rest - 1
        up = dec.coordinates(vec & b)
        assert up is not None, "crossing vector must stay in the parent span"
        out = (up, vec & sibling_mask)
        cache[code] = out
        return out

    return get


def _leaf_table(cut: _NodeCut, u: int, kind: str):
    defect = _SUBSET_KINDS[kind]
    table: dict[tuple[int, tuple[int, ...]], tuple[int, int]] = {}
    for s in (0, 1 << u):
        d, e = defect(cut.a, s, 0)
        sig = cut.coset_sig(d, e)
        if sig is None:
            continue
        table[(cut.basis.a_code(s), sig)] = (s, 0)
    return table


def _join_table(cut: _NodeCut, get_x, get_y, tx, ty, ax: int, ay: int, kind: str):
    defect = _SUBSET_KINDS[kind]
    maximize = _MAXIMIZING[kind]
    table: dict[tuple[int, tuple[int, ...]], tuple[int, int]] = {}
    for (cx, _), (sx, px) in tx.items():
        up_x, cross_x = get_x(cx)
        for (cy, _), (sy, py) in ty.items():
            up_y, cross_y = get_y(cy)
            s = sx | sy
            p = (px ^ (cross_y & ax)) | (py ^ (cross_x & ay))
            d, e = defect(cut.a, s, p)
            sig = cut.coset_sig(d, e)
            if sig is None:
                continue
            key = (up_x ^ up_y, sig)
            cur = table.get(key)
            if cur is None or _better(maximize, s, cur[0]):
                table[key] = (s, p)
    return table


def _leaf_table_qcol(cut: _NodeCut, u: int, q: int):
    bit = 1 << u
    own_sig = cut.coset_sig(bit, bit)
    table: dict[tuple, tuple] = {}
    if own_sig is None:
        return table
    own_code = cut.basis.a_code(bit)
    empty_sig = cut.coset_sig(0, 0)
    for i in range(q):
        key = tuple((own_code, own_sig) if j == i else (0, empty_sig) for j in range(q))
        val = tuple((bit, 0) if j == i else (0, 0) for j in range(q))
        table[key] = val
    return table


def _join_table_qcol(cut: _NodeCut, get_x, get_y, tx, ty, ax: int, ay: int, q: int):
    table: dict[tuple, tuple] = {}
    for keyx, valx in tx.items():
        lifted_x = [get_x(c) for c, _ in keyx]
        for keyy, valy in ty.items():
            key: list[tuple[int, tuple[int, ...]]] = []
            val: list[tuple[int, int]] = []
            for i in range(q):
                up_x, cross_x = lifted_x[i]
                up_y, cross_y = get_y(keyy[i][0])
                sx, px = valx[i]
                sy, py = valy[i]
                s = sx | sy
                p = (px ^ (cross_y & ax)) | (py ^ (cross_x & ay))
                sig = cut.coset_sig(s, s & ~p)
                if sig is None:
                    break
                key.append((up_x ^ up_y, sig))
                val.append((s, p))
            else:
                tkey = tuple(key)
                if tkey not in table:
                    table[tkey] = tuple(val)
    return table


def _run(g: Graph, t: DecompositionTree, kind: str, q: int = 0, collect=None):
    """Bottom-up sweep; returns the root table (possibly empty).

    `collect`, if a dict, receives {node: (cut, table)} for inspection.
    """
    t.validate_for(g)
    masks = t.leaf_masks()
    cuts: dict[int, _NodeCut] = {}
    tables: dict[int, dict] = {}
    for node in t.postorder():
        cut = _NodeCut(g, masks[node])
        if t.is_leaf(node):
            u = t.leaf_vertex[node]
            tab = _leaf_table_qcol(cut, u, q) if kind == "qcol" else _leaf_table(cut, u, kind)
        else:
            x, y = t.children[node]
            get_x = _child_map(g, cut, cuts[x], masks[y])
            get_y = _child_map(g, cut, cuts[y], masks[x])
            if kind == "qcol":
                tab = _join_table_qcol(cut, get_x, get_y, tables[x], tables[y],
                                       masks[x], masks[y], q)
            else:
                tab = _join_table(cut, get_x, get_y, tables[x], tables[y],
                                  masks[x], masks[y], kind)
            if collect is None:
                del tables[x], tables[y], cuts[x], cuts[y]
        cuts[node] = cut
        tables[node] = tab
        if collect is not None:
            collect[node] = (cut, tab)
        if not tab:
            return {}
    return tables[t.root]


def _extract_subset(root_table, maximize: bool) -> tuple[int, int] | None:
    best = None
    for _, (s, _) in root_table.items():
        if best is None or _better(maximize, s, best):
            best = s
    if best is None:
        return None
    return best.bit_count(), best


def solve_mos(g: Graph, t: DecompositionTree) -> tuple[int, int]:
    """Maximum induced subgraph with all degrees odd: (order, vertex mask)."""
    out = _extract_subset(_run(g, t, "mos"), maximize=True)
    assert out is not None, "the empty set is always a valid odd subgraph"
    return out


def solve_mes(g: Graph, t: DecompositionTree) -> tuple[int, int]:
    """Maximum induced subgraph with all degrees even: (order, vertex mask)."""
    out = _extract_subset(_run(g, t, "mes"), maximize=True)
    assert out is not None
    return out


def solve_odd_ds(g: Graph, t: DecompositionTree) -> tuple[int, int]:
    """Minimum set S with |N(v) & S| odd for every v outside S."""
    out = _extract_subset(_run(g, t, "ds"), maximize=False)
    assert out is not None, "the full vertex set always dominates"
    return out


def solve_odd_tds(g: Graph, t: DecompositionTree) -> tuple[int, int] | None:
    """Minimum S with |N(v) & S| odd for every vertex, or None."""
    return _extract_subset(_run(g, t, "tds"), maximize=False)


def solve_odd_qcol(g: Graph, t: DecompositionTree, q: int) -> tuple[int, ...] | None:
    """Partition into <= q classes, each inducing an odd subgraph.

    Returns the per-vertex class tuple (values 0..q-1) or None if infeasible.
    """
    if q < 1:
        raise ValueError("q must be positive")
    root_table = _run(g, t, "qcol", q=q)
    if not root_table:
        return None
    val = next(iter(root_table.values()))
    colors = [0] * g.n
    for i, (s, _) in enumerate(val):
        for v in vertices_of(s):
            colors[v] = i
    return tuple(colors)


def chi_odd(g: Graph, t: DecompositionTree,
            q_max: int | None = None) -> tuple[int, tuple[int, ...]] | None:
    """Minimum q admitting an odd q-coloring, with a witness coloring.

    Returns None when undefined, i.e. some component has odd order (odd
    subgraphs have even order, so no partition can exist).
    """
    if g.n == 0:
        return 0, ()
    for comp in g.components():
        if comp.bit_count() & 1:
            return None
    limit = g.n if q_max is None else q_max
    for q in range(1, limit + 1):
        colors = solve_odd_qcol(g, t, q)
        if colors is not None:
            return q, colors
    raise RuntimeError("internal error: no odd coloring within the class budget")
