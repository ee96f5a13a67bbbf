"""Pairs (and triples) of curves realized in minimal position.

A configuration is an overlay drawing of reduced solo curves with all
bigons between participating roles removed; bigon-freeness is the
minimal-position certificate, so the crossing count of the drawing is the
geometric intersection number.  The module also hosts the operations that
read the complement of a configuration: the cut-components oracle, the
search for nonseparating curves disjoint from both, and the dual curve
meeting a nonseparating curve exactly once.
"""

from __future__ import annotations

from . import curve as C
from .arrangement import Arrangement, cut_component_count, face_data, _union_find
from .drawing import Drawing, overlay
from .errors import InternalInvariantError, NSCurvesError
from .homology import homology_basis


_INTERSECTION_CACHE = {}


def minimal_pair_drawing(a: C.Curve, b: C.Curve, convention="ab"):
    """Overlay of a and b with all mutual bigons removed."""
    if a.surface is not b.surface:
        raise NSCurvesError("curves on different surfaces")
    if a == b:
        d = a.drawing.clone()
        sid_a = next(iter(d.strands))
        d.strands[sid_a].role = "a"
        sid_b = d.add_parallel_strand(sid_a, role="b")
        return d, sid_a, sid_b
    if convention == "ab":
        parts = [(a.drawing, "a"), (b.drawing, "b")]
    else:
        parts = [(b.drawing, "b"), (a.drawing, "a")]
    d, sids = overlay(parts)
    sid_a = d.strand_by_role("a")
    sid_b = d.strand_by_role("b")
    d.remove_bigons_between(sid_a, sid_b, check_counts=False)
    return d, sid_a, sid_b


class ConfigVertex:
    __slots__ = ("id", "crossing", "sign_ab", "idx_a", "idx_b")

    def __init__(self, vid, crossing, sign_ab, idx_a, idx_b):
        self.id = vid
        self.crossing = crossing
        self.sign_ab = sign_ab   # crossing sign for (strand a, strand b) dirs
        self.idx_a = idx_a       # rank along strand a
        self.idx_b = idx_b       # rank along strand b


class PairConfiguration:
    """Two (optionally three) curves drawn mutually bigon-free."""

    def __init__(self, a, b, convention="ab"):
        self.a = a
        self.b = b
        self.d_curve = None
        self.drawing, self.sid_a, self.sid_b = minimal_pair_drawing(
            a, b, convention)
        self.sid_d = None
        self._index_vertices()

    def _index_vertices(self):
        geo = self.drawing.geometry()
        ev_a = geo.pair_events(self.sid_a, self.sid_b)
        ev_b = geo.pair_events(self.sid_b, self.sid_a)
        rank_b = {cr.id: k for k, cr in enumerate(ev_b)}
        self.vertices = []
        for k, cr in enumerate(ev_a):
            self.vertices.append(ConfigVertex(
                k, cr, cr.sign_for(self.sid_a), k, rank_b[cr.id]))
        self._by_crossing = {v.crossing.id: v for v in self.vertices}

    def add_third(self, d_curve):
        """Draw a third curve minimally against both locked curves.

        Bigons of d against a and against b are removed by moving d only;
        since a and b stay bigon-free this terminates (the d-a count never
        grows while a d-b bigon is removed, and vice versa).
        """
        if self.sid_d is not None:
            raise NSCurvesError("third curve already drawn")
        self.d_curve = d_curve
        sids = self.drawing.insert_copy(d_curve.drawing, role="d")
        if len(sids) != 1:
            raise InternalInvariantError("third curve not a single strand")
        self.sid_d = sids[0]
        while True:
            moved = False
            for sid_other in (self.sid_a, self.sid_b):
                move = self.drawing.find_bigon(self.sid_d, sid_other)
                if move is not None:
                    self.drawing.apply_bigon_move(move)
                    moved = True
                    break
            if not moved:
                break
        self._index_vertices()
        return self.sid_d

    # -- counts and signs -------------------------------------------------

    def count(self, role_x="a", role_y="b"):
        return self.drawing.geometry().count_pair(
            self._sid(role_x), self._sid(role_y))

    def _sid(self, role):
        return {"a": self.sid_a, "b": self.sid_b, "d": self.sid_d}[role]

    def events_along(self, role, other):
        return self.drawing.geometry().pair_events(
            self._sid(role), self._sid(other))

    def faces(self):
        return face_data(self.drawing, roles=("a", "b"))

    def to_json(self):
        geo = self.drawing.geometry()
        verts = []
        for v in self.vertices:
            verts.append({"id": v.id, "sign": v.sign_ab,
                          "rank_a": v.idx_a, "rank_b": v.idx_b,
                          "triangle": v.crossing.tri})
        arcs = []
        for role, sid in (("a", self.sid_a), ("b", self.sid_b)):
            st = self.drawing.strands[sid]
            arcs.append({"role": role,
                         "edges": [self.drawing.pt_edge[p] for p in st.pts]})
        return {"schema": "nscurves.pairconfig/1",
                "surface": self.a.surface.spec_name,
                "vertices": verts,
                "arcs": arcs,
                "faces": [f.to_json() for f in self.faces()]}


def draw_pair(a, b, convention="ab") -> PairConfiguration:
    return PairConfiguration(a, b, convention)


def intersection_number(a: C.Curve, b: C.Curve) -> int:
    if a == b:
        return 0
    key = frozenset((a.key(), b.key()))
    got = _INTERSECTION_CACHE.get(key)
    if got is None:
        cfg = PairConfiguration(a, b)
        got = cfg.count()
        _INTERSECTION_CACHE[key] = got
    return got


def algebraic_intersection(a_or: C.OrientedCurve, b_or: C.OrientedCurve) -> int:
    cfg = PairConfiguration(a_or.curve, b_or.curve)
    fa = 1 if a_or.strand_forward() else -1
    fb = 1 if b_or.strand_forward() else -1
    return fa * fb * sum(v.sign_ab for v in cfg.vertices)


def cut_components(surface, curve: C.Curve) -> int:
    d = curve.drawing
    return cut_component_count(d, list(d.strands))


# -- complement search ------------------------------------------------------


def _fragment_graph(arr):
    adj = {}
    for fa, fb, cell in arr.fragment_links():
        adj.setdefault(fa, []).append((fb, cell))
        adj.setdefault(fb, []).append((fa, cell))
    for k in adj:
        adj[k].sort(key=lambda x: x[1].id)
    return adj


def _bfs_tree(adj, root):
    parent = {root: None}
    order = [root]
    queue = [root]
    while queue:
        u = queue.pop(0)
        for (v, cell) in adj.get(u, ()):
            if v not in parent:
                parent[v] = (u, cell)
                order.append(v)
                queue.append(v)
    return parent


def _tree_path(parent, u, v):
    """Cells along the tree path u -> v, with the fragments they join."""
    up_u, up_v = [u], [v]
    seen_u = {u}
    x = u
    while parent[x] is not None:
        x = parent[x][0]
        up_u.append(x)
        seen_u.add(x)
    x = v
    while x not in seen_u:
        x = parent[x][0]
        up_v.append(x)
    meet = up_v[-1]
    path_u = up_u[:up_u.index(meet) + 1]
    cells = []
    frags = []
    for k in range(len(path_u) - 1):
        cells.append(parent[path_u[k]][1])
        frags.append(path_u[k])
    frags.append(meet)
    down = list(reversed(up_v[:-1]))
    for x in down:
        cells.append(parent[x][1])
        frags.append(x)
    return cells, frags


def _curve_from_gap_cycle(surface, cells, frag_tris):
    """Solo drawing crossing the given edge gaps, one chord per fragment.

    cells[i] carries (edge, gap); the chord between crossings i and i+1
    runs inside the fragment with triangle frag_tris[i+1 mod n]... the
    caller supplies, for each consecutive cell pair, the triangle of the
    fragment they share.
    """
    d = Drawing(surface)
    by_edge = {}
    for idx, cell in enumerate(cells):
        by_edge.setdefault(cell.edge, []).append((cell.gap, idx))
    pid_of = {}
    for e in sorted(by_edge):
        lst = sorted(by_edge[e])
        for k in range(len(lst) - 1):
            if lst[k][0] == lst[k + 1][0]:
                raise InternalInvariantError("gap crossed twice")
        for k, (_, idx) in enumerate(lst):
            pid_of[idx] = d.new_point(e, k)
    pts = [pid_of[i] for i in range(len(cells))]
    d.add_strand(pts, list(frag_tris), role=None)
    d.validate_embedded()
    return d


def complement_curves(config: PairConfiguration):
    """Curves living in the complement of the drawn pair.

    Yields the curves of the fundamental cycles of the fragment graph;
    those generate the image of the complement's homology, so a
    nonseparating complement curve exists iff one of them is
    nonseparating.
    """
    from .errors import Inessential
    drawing = config.drawing
    surface = drawing.surface
    arr = Arrangement(drawing)
    adj = _fragment_graph(arr)
    if not adj:
        return
    root = min(adj)
    parent = _bfs_tree(adj, root)
    tree_cells = {p[1].id for p in parent.values() if p is not None}
    non_tree = sorted(
        {cell.id: (fa, fb, cell) for fa, fb, cell in arr.fragment_links()
         if cell.id not in tree_cells}.values(),
        key=lambda x: x[2].id)
    frag_tri = {fr.id: fr.tri for fr in arr.fragments}
    for (fa, fb, link) in non_tree:
        if fa == fb:
            cells = [link]
            frags_between = [fa]
        else:
            path_cells, path_frags = _tree_path(parent, fb, fa)
            cells = [link] + path_cells
            frags_between = path_frags
        # triangle sequence: between cells[i] and cells[i+1] lies a fragment
        tris = [frag_tri[f] for f in frags_between]
        if len(tris) != len(cells):
            raise InternalInvariantError("cycle bookkeeping off")
        d = _curve_from_gap_cycle(surface, cells, tris)
        sid = next(iter(d.strands))
        d.reduce_turnbacks(sid)
        if sid not in d.strands:
            continue
        try:
            yield C.curve_from_drawing(d, sid)
        except Inessential:
            continue


def find_complement_curve(config: PairConfiguration):
    """A nonseparating curve disjoint from both, or None."""
    for curve in complement_curves(config):
        if not curve.is_separating():
            return curve
    return None


def find_separating_complement(config: PairConfiguration):
    """An essential separating curve disjoint from both, or None."""
    for curve in complement_curves(config):
        if curve.is_separating() and not curve.peripheral:
            return curve
    return None


# -- dual curve meeting a nonseparating curve once ------------------------------


def intersection_witness(curve: C.Curve):
    """A simple closed curve meeting `curve` exactly once, or None.

    Built from an embedded arc joining the two sides of the curve in the
    cut surface, closed up across one chord; exists iff the curve is
    nonseparating.
    """
    if curve.is_separating():
        return None
    d = curve.drawing
    surface = d.surface
    arr = Arrangement(d)
    adj = _fragment_graph(arr)
    chord_cells = sorted((c for c in arr.cells if c.kind == "chord"),
                         key=lambda c: c.id)
    for s_cell in chord_cells:
        f_plus, f_minus = arr.chord_sides(s_cell)
        if f_plus is None or f_minus is None:
            continue
        # flanking side cells at the chord's endpoints
        entry = _flank_cell(arr, d, s_cell, end="a", want_frag=f_plus)
        exit_ = _flank_cell(arr, d, s_cell, end="b", want_frag=f_minus)
        if entry is None or exit_ is None:
            continue
        # after crossing those edges the witness sits in the glued fragments
        g_entry = _across(arr, surface, entry)
        g_exit = _across(arr, surface, exit_)
        if g_entry is None or g_exit is None:
            continue
        banned = {entry.id, exit_.id}
        path = _bfs_path(adj, g_exit, g_entry, banned)
        if path is None:
            continue
        path_cells, path_frags = path
        cells = [entry, exit_] + path_cells
        tris = ([s_cell.tri, arr.fragments[g_exit].tri]
                + [arr.fragments[f].tri for f in path_frags])
        if len(tris) != len(cells):
            raise InternalInvariantError("witness bookkeeping off")
        dd = _curve_from_gap_cycle(surface, cells, tris)
        sid = next(iter(dd.strands))
        witness = C.curve_from_drawing(dd, sid)
        if intersection_number(witness, curve) == 1:
            return witness
    raise InternalInvariantError("no witness found for a nonseparating curve")


def _across(arr, surface, side_cell):
    """Inner fragment of the partner cell across an interior edge."""
    e = side_cell.edge
    if surface.edges[e].is_boundary:
        return None
    by_tri = arr.side_cells[(e, side_cell.gap)]
    for tri, cell in sorted(by_tri.items()):
        if cell.id != side_cell.id:
            return arr.inner_frag(cell)
    return None


def _flank_cell(arr, d, chord_cell, end, want_frag):
    """Side cell flanking a chord endpoint and bounding the wanted fragment."""
    node = chord_cell.a if end == "a" else chord_cell.b
    if node[0] != "p":
        return None
    pid = node[1]
    e = d.pt_edge[pid]
    k = d.pos(pid)
    for gap in (k, k + 1):
        cell = arr.side_cells.get((e, gap), {}).get(chord_cell.tri)
        if cell is not None and arr.inner_frag(cell) == want_frag:
            return cell
    return None


def _bfs_path(adj, src, dst, banned_cells):
    """Shortest fragment path; returns (cells, fragments between) or None."""
    if src == dst:
        return ([], [])
    parent = {src: None}
    queue = [src]
    while queue:
        u = queue.pop(0)
        for (v, cell) in adj.get(u, ()):
            if cell.id in banned_cells or cell.kind != "side":
                continue
            if v not in parent:
                parent[v] = (u, cell)
                if v == dst:
                    cells, frags = [], []
                    x = dst
                    while parent[x] is not None:
                        u2, c2 = parent[x]
                        cells.append(c2)
                        frags.append(x)
                        x = u2
                    cells.reverse()
                    frags.reverse()
                    # frags lists the fragment after each cell along src->dst;
                    # chords run inside: src, then each listed fragment
                    return (cells, frags)
                queue.append(v)
    return None
