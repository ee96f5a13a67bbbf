"""Bicorn curves, the bicorn graph, and the three constructive engines.

A bicorn between curves a and b is a simple closed curve made of one arc
of each, meeting only at the shared endpoints; a and b themselves count
as degenerate bicorns.  On top of the enumeration this module implements
the surgery step that shortens intersection with b while staying close to
a, the successor step that grows a bicorn's b-arc while moving distance
at most two, and the two-stage projection that pushes a bicorn of (a,b)
near the bicorns of (a,d) or (b,d).

Claimed intersection bounds that the constructions are supposed to
satisfy are measured on the derived curves and raised as BoundViolation
when they fail, so harness runs report them instead of silently passing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import curve as C
from . import pairconfig as PC
from .drawing import assemble_path_strand
from .errors import (InternalInvariantError, Inessential, NoSuccessor,
                     NSCurvesError, PreconditionViolation, DegenerateTriple)
from .homology import homology_basis


class BoundViolation(NSCurvesError):
    """A constructed curve failed one of the claimed intersection bounds."""


# -- bicorn objects ---------------------------------------------------------


class Bicorn:
    __slots__ = ("config", "kind", "aseg", "bseg", "derived", "b_gaps")

    def __init__(self, config, kind, aseg, bseg, derived, b_gaps):
        self.config = config
        self.kind = kind          # "degenerate_a" | "degenerate_b" | "proper"
        self.aseg = aseg          # (v_from, v_to) forward along a, or None
        self.bseg = bseg          # (w_from, w_to) forward along b, or None
        self.derived = derived
        self.b_gaps = b_gaps      # frozenset of covered elementary b-gaps

    def __repr__(self):
        return "Bicorn(%s, %s)" % (self.kind, self.derived)

    def contains_b_arc_of(self, other):
        return other.b_gaps < self.b_gaps

    def to_json(self):
        def seg(sg):
            return None if sg is None else [sg[0].id, sg[1].id]
        return {"kind": self.kind, "a_arc": seg(self.aseg),
                "b_arc": seg(self.bseg),
                "curve": self.derived.to_json()}


def _ab_events(config, role):
    sid = config._sid(role)
    other = config.sid_b if role == "a" else config.sid_a
    geo = config.drawing.geometry()
    return [cr for cr in geo.events[sid] if other in cr.strands()]


def _rank_map(events):
    return {cr.id: k for k, cr in enumerate(events)}


def _gaps_of_arc(config, w_from, w_to):
    """Elementary b-gaps covered by the forward b-arc w_from -> w_to."""
    ev = _ab_events(config, "b")
    rank = _rank_map(ev)
    n = len(ev)
    r1, r2 = rank[w_from.crossing.id], rank[w_to.crossing.id]
    out = set()
    r = r1
    while r != r2:
        out.add(r)
        r = (r + 1) % n
    return frozenset(out)


def _vertices_inside(config, role, v_from, v_to):
    """Config vertices strictly inside the forward arc of a or b."""
    ev = _ab_events(config, role)
    rank = _rank_map(ev)
    n = len(ev)
    r1, r2 = rank[v_from.crossing.id], rank[v_to.crossing.id]
    out = []
    r = (r1 + 1) % n
    while r != r2:
        out.append(config._by_crossing[ev[r].id])
        r = (r + 1) % n
    return out


def degenerate_bicorn(config, which):
    verts = config.vertices
    anchor = verts[0] if verts else None
    curve = config.a if which == "a" else config.b
    if which == "a":
        gaps = frozenset()
    else:
        gaps = frozenset(range(len(verts))) if verts else frozenset()
    return Bicorn(config, "degenerate_" + which, None, None, curve, gaps)


def _derive(config, aseg, bseg):
    """Smooth the union of the two arcs into a Curve."""
    u, v = aseg
    segs = [(config.sid_a, u.crossing, v.crossing, 1)]
    if (bseg[0], bseg[1]) == (u, v):
        segs.append((config.sid_b, v.crossing, u.crossing, -1))
    elif (bseg[0], bseg[1]) == (v, u):
        segs.append((config.sid_b, v.crossing, u.crossing, 1))
    else:
        raise InternalInvariantError("bicorn arcs do not close up")
    d = assemble_path_strand(config.drawing, segs)
    return C.curve_from_drawing(d, next(iter(d.strands)))


def make_bicorn(config, aseg, bseg):
    ia = {vv.id for vv in _vertices_inside(config, "a", *aseg)}
    ib = {vv.id for vv in _vertices_inside(config, "b", *bseg)}
    if ia & ib:
        return None
    try:
        derived = _derive(config, aseg, bseg)
    except Inessential:
        return None
    return Bicorn(config, "proper", aseg, bseg, derived,
                  _gaps_of_arc(config, *bseg))


def enumerate_bicorns(config) -> list:
    """All bicorns of the configuration, degenerate ones included."""
    out = [degenerate_bicorn(config, "a"), degenerate_bicorn(config, "b")]
    verts = config.vertices
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            u, v = verts[i], verts[j]
            for aseg in ((u, v), (v, u)):
                for bseg in ((u, v), (v, u)):
                    bc = make_bicorn(config, aseg, bseg)
                    if bc is not None:
                        out.append(bc)
    return out


# -- the bicorn graph ---------------------------------------------------------


@dataclass
class BicornGraph:
    a: object
    b: object
    vertices: list                    # deduplicated nonseparating Curves
    edges: set                        # frozensets of vertex indices
    representatives: dict             # curve -> Bicorn
    connected: bool
    skipped_separating: int

    def adjacency(self):
        adj = {i: set() for i in range(len(self.vertices))}
        for e in self.edges:
            i, j = tuple(e)
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def bfs_distances(self, src):
        adj = self.adjacency()
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist

    def diameter(self):
        best = 0
        for i in range(len(self.vertices)):
            dist = self.bfs_distances(i)
            if len(dist) < len(self.vertices):
                return None
            best = max(best, max(dist.values()))
        return best

    def to_json(self):
        return {"schema": "nscurves.bicorngraph/1",
                "vertices": [v.to_json() for v in self.vertices],
                "edges": sorted([sorted(e) for e in self.edges]),
                "connected": self.connected,
                "separating_bicorns_skipped": self.skipped_separating}


def bicorn_graph(a, b) -> BicornGraph:
    if a.is_separating() or b.is_separating():
        raise PreconditionViolation("bicorn graph needs nonseparating input")
    config = PC.draw_pair(a, b)
    bics = enumerate_bicorns(config)
    reps = {}
    skipped = 0
    for bc in bics:
        if bc.derived.is_separating():
            skipped += 1
            continue
        reps.setdefault(bc.derived, bc)
    verts = sorted(reps, key=lambda c: (c.complexity, c.weights))
    index = {c: i for i, c in enumerate(verts)}
    edges = set()
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if PC.intersection_number(verts[i], verts[j]) <= 2:
                edges.add(frozenset((i, j)))
    g = BicornGraph(a, b, verts, edges, reps, False, skipped)
    if verts:
        g.connected = len(g.bfs_distances(0)) == len(verts)
    return g


# -- the surgery step (distance bound engine) -----------------------------------


def surgery_pair(a_or, b_or, config):
    """Both surgery outcomes at a consecutive-along-b crossing pair.

    Returns (c1, c2, branch, drawn class identity data); the drawn
    orientations satisfy [c1] + [c2] = [a] exactly.
    """
    if config.count() < 2:
        raise PreconditionViolation("surgery needs i(a,b) >= 2")
    ev_b = _ab_events(config, "b")
    k0 = min(range(len(ev_b)),
             key=lambda k: config._by_crossing[ev_b[k].id].id)
    w1 = config._by_crossing[ev_b[k0].id]
    w2 = config._by_crossing[ev_b[(k0 + 1) % len(ev_b)].id]
    parallel = (w1.sign_ab == w2.sign_ab)

    # both curves reuse the same consecutive b-arc from w1 to w2, so that
    # as chains c1 + c2 = (a-arc + a-arc) + (beta - beta) = a
    segs1 = [(config.sid_a, w1.crossing, w2.crossing, 1),
             (config.sid_b, w2.crossing, w1.crossing, -1)]
    segs2 = [(config.sid_a, w2.crossing, w1.crossing, 1),
             (config.sid_b, w1.crossing, w2.crossing, 1)]
    basis = homology_basis(config.a.surface)
    out = []
    for segs in (segs1, segs2):
        d = assemble_path_strand(config.drawing, segs)
        sid = next(iter(d.strands))
        cls = basis.class_of_chain(d.cycle_chain(sid))
        curve = C.curve_from_drawing(d, sid)
        out.append((curve, cls))
    (c1, cls1), (c2, cls2) = out
    cls_a = basis.class_of_chain(
        config.drawing.cycle_chain(config.sid_a))
    if (cls1 + cls2).coords != cls_a.coords:
        raise InternalInvariantError("surgery homology bookkeeping failed")
    return c1, c2, ("parallel" if parallel else "antiparallel"), \
        (cls1, cls2, cls_a)


def surgery_step(a_or, b_or, config=None):
    """One distance-reducing surgery; returns the chosen nonseparating curve."""
    a, b = a_or.curve, b_or.curve
    if config is None:
        config = PC.draw_pair(a, b)
    i_ab = config.count()
    c1, c2, branch, _ = surgery_pair(a_or, b_or, config)
    candidates = [c for c in (c1, c2) if not c.is_separating()]
    if not candidates:
        raise InternalInvariantError("both surgery curves separating")
    candidates.sort(key=lambda c: (PC.intersection_number(c, b), c.weights))
    c = candidates[0]
    ia, ib = PC.intersection_number(c, a), PC.intersection_number(c, b)
    if branch == "parallel":
        if ia > 1 or ib > i_ab - 1:
            raise BoundViolation(
                "parallel surgery bounds failed: i(c,a)=%d i(c,b)=%d i=%d"
                % (ia, ib, i_ab))
    else:
        if ia != 0 or ib > i_ab - 2:
            raise BoundViolation(
                "antiparallel surgery bounds failed: i(c,a)=%d i(c,b)=%d i=%d"
                % (ia, ib, i_ab))
    return c


def ns_adjacent(surface, x, y, flavor):
    i = PC.intersection_number(x, y)
    if flavor == "ns":
        return i <= 2
    if surface.genus == 1:
        return i <= 1
    return i == 0


def distance_path(a, b, flavor="nsprime"):
    """Explicit path from a to b under the requested edge rule.

    Length is at most 2 i(a,b) + 1; built by induction on the surgery
    step, with the complement-curve insertion at the genus >= 2 base case.
    """
    if flavor not in ("ns", "nsprime"):
        raise NSCurvesError("flavor must be 'ns' or 'nsprime'")
    if a.is_separating() or b.is_separating():
        raise PreconditionViolation("path endpoints must be nonseparating")
    surface = a.surface
    path = _distance_path_rec(a, b, flavor, surface)
    for x, y in zip(path, path[1:]):
        if not ns_adjacent(surface, x, y, flavor):
            raise InternalInvariantError("path edge violates the flavor rule")
    if len(path) - 1 > 2 * PC.intersection_number(a, b) + 1:
        raise BoundViolation("path longer than 2i+1")
    return path


def _base_hop(a, b, flavor, surface):
    """Path for i(a,b) <= 1, per the genus-dependent base case."""
    i = PC.intersection_number(a, b)
    if a == b:
        return [a]
    if flavor == "ns":
        return [a, b]
    if surface.genus == 1:
        return [a, b]
    if i == 0:
        return [a, b]
    cfg = PC.draw_pair(a, b)
    c = PC.find_complement_curve(cfg)
    if c is None:
        raise InternalInvariantError(
            "no complement curve for a once-crossing pair on genus >= 2")
    return [a, c, b]


def _distance_path_rec(a, b, flavor, surface):
    i = PC.intersection_number(a, b)
    if a == b:
        return [a]
    if i <= 1:
        return _base_hop(a, b, flavor, surface)
    if flavor == "ns" and i <= 2:
        return [a, b]
    cfg = PC.draw_pair(a, b)
    c = surgery_step(a.oriented(), b.oriented(), cfg)
    head = _base_hop(a, c, flavor, surface)
    tail = _distance_path_rec(c, b, flavor, surface)
    return head + tail[1:]


# -- the successor step (connectivity engine) --------------------------------------


def _walk_b(config, start_vertex, forward=True):
    """a-b vertices in b-order starting после start_vertex (exclusive)."""
    ev = _ab_events(config, "b")
    rank = _rank_map(ev)
    n = len(ev)
    r = rank[start_vertex.crossing.id]
    step = 1 if forward else -1
    out = []
    for k in range(1, n):
        out.append(config._by_crossing[ev[(r + step * k) % n].id])
    return out


def _a_positions(config):
    ev = _ab_events(config, "a")
    return _rank_map(ev), len(ev)


def _sub_arc_of_a(config, aseg, end_vertex, z):
    """Sub-arc of the forward a-arc `aseg` between one endpoint and z."""
    u, v = aseg
    inside = _vertices_inside(config, "a", u, v)
    assert any(t.id == z.id for t in inside), "z not inside the a-arc"
    if end_vertex.id == u.id:
        return (u, z)
    if end_vertex.id == v.id:
        return (z, v)
    raise InternalInvariantError("end vertex not an endpoint")


def bicorn_successor(c: Bicorn, config=None, record=None):
    """A strictly larger adjacent nonseparating bicorn.

    Implements the full case split: the initial step from a, the matching
    sign extension, the two terminal cases that land on b, and the
    double-extension construction (in both mirror patterns) when the signs
    disagree on both sides.
    """
    if config is None:
        config = c.config
    if c.kind == "degenerate_b":
        raise NoSuccessor("the terminal bicorn has no successor")
    stats = record if record is not None else {}

    if c.kind == "degenerate_a":
        verts = config.vertices
        if len(verts) < 2:
            stats["branch"] = "take_b"
            return degenerate_bicorn(config, "b")
        x = verts[0]
        y = _walk_b(config, x, forward=True)[0]
        cand = []
        for aseg in ((x, y), (y, x)):
            bc = make_bicorn(config, aseg, (x, y))
            if bc is not None and not bc.derived.is_separating():
                cand.append(bc)
        if not cand:
            raise BoundViolation("initial step: both half-bicorns separating")
        cand.sort(key=lambda t: (PC.intersection_number(t.derived, config.b),
                                 t.derived.weights))
        nxt = cand[0]
        stats["branch"] = "initial"
        _check_successor(c, nxt, config, stats, limit=2)
        return nxt

    u, v = c.aseg
    w_from, w_to = c.bseg
    interior_ids = {t.id for t in _vertices_inside(config, "a", u, v)}

    def first_hit(walk):
        for t in walk:
            if t.id in interior_ids:
                return t
            if t.id in (w_from.id, w_to.id):
                return None
        return None

    z1 = first_hit(_walk_b(config, w_to, forward=True))
    if z1 is None:
        stats["branch"] = "take_b_clean"
        nxt = degenerate_bicorn(config, "b")
        i_cb = PC.intersection_number(c.derived, config.b)
        stats["i_c_b"] = i_cb
        if i_cb > 1:
            raise BoundViolation("clean extension but i(c,b)=%d > 1" % i_cb)
        return nxt

    if c.bseg and _sign(z1) == _sign(w_to):
        aseg2 = _sub_arc_of_a(config, c.aseg, w_from, z1)
        nxt = make_bicorn(config, aseg2, (w_from, z1))
        if nxt is None:
            raise InternalInvariantError("same-sign extension not a bicorn")
        stats["branch"] = "same_sign_forward"
        if nxt.derived.is_separating():
            raise BoundViolation("same-sign successor separating")
        _check_successor(c, nxt, config, stats, limit=2)
        return nxt

    z2 = first_hit(_walk_b(config, w_from, forward=False))
    if z2 is None:
        raise InternalInvariantError("backward extension found no interior hit")
    if _sign(z2) == _sign(w_from):
        aseg2 = _sub_arc_of_a(config, c.aseg, w_to, z2)
        nxt = make_bicorn(config, aseg2, (z2, w_to))
        if nxt is None:
            raise InternalInvariantError("mirror extension not a bicorn")
        stats["branch"] = "same_sign_backward"
        if nxt.derived.is_separating():
            raise BoundViolation("mirror same-sign successor separating")
        _check_successor(c, nxt, config, stats, limit=2)
        return nxt

    if z1.id == z2.id:
        stats["branch"] = "take_b_pinched"
        nxt = degenerate_bicorn(config, "b")
        i_cb = PC.intersection_number(c.derived, config.b)
        stats["i_c_b"] = i_cb
        if i_cb > 2:
            raise BoundViolation("pinched extension but i(c,b)=%d > 2" % i_cb)
        return nxt

    # both extensions exist, opposite signs both ways
    c1 = make_bicorn(config, _sub_arc_of_a(config, c.aseg, w_from, z1),
                     (w_from, z1))
    c2 = make_bicorn(config, _sub_arc_of_a(config, c.aseg, w_to, z2),
                     (z2, w_to))
    if c1 is None or c2 is None:
        raise InternalInvariantError("double extension lost a bicorn")
    usable = []
    for bc in (c1, c2):
        if not bc.derived.is_separating() \
                and PC.intersection_number(c.derived, bc.derived) <= 2:
            usable.append(bc)
    if usable:
        usable.sort(key=lambda t: (PC.intersection_number(c.derived, t.derived),
                                   t.derived.weights))
        stats["branch"] = "double_extension_direct"
        nxt = usable[0]
        _check_successor(c, nxt, config, stats, limit=2)
        return nxt

    if not (c1.derived.is_separating() and c2.derived.is_separating()):
        raise BoundViolation(
            "a nonseparating double-extension bicorn exceeded i(c,.) <= 2")

    # both separating: build the correcting bicorn e2 and the span bicorn c'
    e2 = make_bicorn(config, _sub_arc_of_a(config, c.aseg, w_from, z2),
                     (z2, w_from))
    if e2 is None:
        raise InternalInvariantError("correction bicorn invalid")
    if e2.derived.is_separating():
        raise BoundViolation("correction bicorn separating")
    _assert_sign_identity(config, c, c2, e2)
    # span arc of a between z1 and z2, inside the old a-arc
    pos, _na = _a_positions(config)
    ordered = _vertices_inside(config, "a", u, v)
    order_ids = [t.id for t in ordered]
    if order_ids.index(z1.id) < order_ids.index(z2.id):
        span = (z1, z2)
    else:
        span = (z2, z1)
    nxt = make_bicorn(config, span, (z2, z1))
    if nxt is None:
        raise InternalInvariantError("span bicorn invalid")
    stats["branch"] = "both_separating_span"
    if nxt.derived.is_separating():
        raise BoundViolation("span bicorn separating")
    _check_successor(c, nxt, config, stats, limit=2)
    _assert_span_identity(config, nxt, c1, e2)
    return nxt


def _sign(vertex):
    return vertex.sign_ab


def _check_successor(c, nxt, config, stats, limit):
    if not nxt.b_gaps > c.b_gaps:
        raise InternalInvariantError("successor b-arc did not grow")
    i_cc = PC.intersection_number(c.derived, nxt.derived)
    stats["i_c_succ"] = i_cc
    if i_cc > limit:
        raise BoundViolation("successor intersection %d > %d" % (i_cc, limit))


def _assert_sign_identity(config, c, c2, e2):
    """[c2] + [e2] = [c] up to orientation choices, exactly."""
    want = c.derived.cls
    g2, ge = c2.derived.cls, e2.derived.cls
    for s1 in (1, -1):
        for s2 in (1, -1):
            got = [s1 * x + s2 * y for x, y in zip(g2.coords, ge.coords)]
            if tuple(got) == want.coords or \
                    tuple(-t for t in got) == want.coords:
                return
    raise BoundViolation("correction identity [c2]+[e2]=[c] failed")


def _assert_span_identity(config, span, c1, e2):
    want = span.derived.cls
    g1, ge = c1.derived.cls, e2.derived.cls
    for s1 in (1, -1):
        for s2 in (1, -1):
            got = [s1 * x + s2 * y for x, y in zip(g1.coords, ge.coords)]
            if tuple(got) == want.coords or \
                    tuple(-t for t in got) == want.coords:
                return
    raise BoundViolation("span identity [c']=[c1]+[e2] failed")


def connect_in_bicorn_graph(a, b, collect_stats=None):
    """Monotone chain of adjacent nonseparating bicorns from a to b."""
    if a.is_separating() or b.is_separating():
        raise PreconditionViolation("chain endpoints must be nonseparating")
    config = PC.draw_pair(a, b)
    i_ab = config.count()
    chain = [degenerate_bicorn(config, "a")]
    if i_ab <= 1 or a == b:
        chain.append(degenerate_bicorn(config, "b"))
        return chain
    guard = i_ab + 2
    while chain[-1].kind != "degenerate_b":
        stats = {}
        nxt = bicorn_successor(chain[-1], config, record=stats)
        if collect_stats is not None:
            collect_stats.append(stats)
        chain.append(nxt)
        if len(chain) > guard:
            raise InternalInvariantError("chain exceeded its length bound")
    return chain


# -- the projection step (thinness engine) --------------------------------------


@dataclass
class ProjectionWitness:
    branch: str                 # "trivial" | "near" | "reroute"
    side: str                   # which bicorn family the witness lands in
    target: object              # curve in A(a,d) or A(b,d)
    reroute: object = None      # the disjoint modified curve, if any
    bounds: dict = field(default_factory=dict)
    path: list = field(default_factory=list)
    certified_distance: int = 0

    def to_json(self):
        return {"branch": self.branch, "side": self.side,
                "target": self.target.to_json() if self.target else None,
                "reroute": self.reroute.to_json() if self.reroute else None,
                "bounds": dict(self.bounds),
                "path": [c.to_json() for c in self.path],
                "certified_distance": self.certified_distance}


def triple_config(a, b, d_curve) -> PC.PairConfiguration:
    cfg = PC.draw_pair(a, b)
    cfg.add_third(d_curve)
    return cfg


def project_to_sides(c: Bicorn, d_curve, cfg=None, strict=False):
    """Witness that c is near the bicorns of (a,d) or (b,d).

    Follows the two-stage construction: pick a nonseparating bicorn c' of
    (b,d) whose b-arc sits inside c's, then either find a nonseparating
    (a,d)-bicorn meeting c at most once, or reroute the left-side arcs of
    c along d and certify the distance to c' through the surgery path.
    """
    config = cfg if cfg is not None else c.config
    a, b = config.a, config.b
    if d_curve == a or d_curve == b:
        if strict:
            raise DegenerateTriple("projection target equals a pair curve")
        return ProjectionWitness("trivial", "ad" if d_curve == a else "bd",
                                 c.derived, certified_distance=0)
    if c.kind == "degenerate_a":
        return ProjectionWitness("trivial", "ad", c.derived,
                                 certified_distance=0)
    if c.kind == "degenerate_b":
        return ProjectionWitness("trivial", "bd", c.derived,
                                 certified_distance=0)
    if config.sid_d is None:
        config.add_third(d_curve)

    basis = homology_basis(a.surface)
    geo = config.drawing.geometry()
    sid_a, sid_b, sid_d = config.sid_a, config.sid_b, config.sid_d

    # stage one: bicorns of b with d over the sub-arcs of beta
    cprime_dseg, cprime_curve, sum_ok = _stage_one(config, c, basis, geo)

    # stage two: consecutive hits of c' on the a-arc
    return _stage_two(config, c, cprime_dseg, cprime_curve, basis, geo)


def _events_between(geo, sid, par_lo, par_hi, events):
    """Events from the list whose position on `sid` lies in the open arc."""
    out = []
    for cr in events:
        p = cr.param_of(sid)
        if _cyclic_between(par_lo, p, par_hi):
            out.append(cr)
    return out


def _cyclic_between(lo, mid, hi):
    if lo < hi:
        return lo < mid < hi
    return mid > lo or mid < hi


def _stage_one(config, c, basis, geo):
    """Select a nonseparating bicorn of (b,d) with b-arc inside beta."""
    sid_b, sid_d = config.sid_b, config.sid_d
    w_from, w_to = c.bseg
    p_lo = w_from.crossing.param_of(sid_b)
    p_hi = w_to.crossing.param_of(sid_b)
    db_events = [cr for cr in geo.events[sid_d] if sid_b in cr.strands()]
    hits = [cr for cr in db_events
            if _cyclic_between(p_lo, cr.param_of(sid_b), p_hi)]
    if not hits:
        # beta misses d: d itself serves, as the degenerate bicorn of (b,d)
        return None, config.d_curve, True

    m = len(hits)
    pieces = []
    total = None
    for k in range(m):
        x_i, x_j = hits[k], hits[(k + 1) % m]
        if m == 1:
            # the d-arc wraps all of d and the b-arc degenerates to x_1
            segs = [(sid_d, x_i, x_j, 1)]
        else:
            segs = [(sid_d, x_i, x_j, 1)]
            # the sub-arc of beta between the two hits, traversed back
            q_i = x_i.param_of(sid_b)
            q_j = x_j.param_of(sid_b)
            if _cyclic_between(p_lo, q_i, q_j):
                segs.append((sid_b, x_j, x_i, -1))
            else:
                segs.append((sid_b, x_j, x_i, 1))
        d = assemble_path_strand(config.drawing, segs)
        sid = next(iter(d.strands))
        cls = basis.class_of_chain(d.cycle_chain(sid))
        try:
            curve = C.curve_from_drawing(d, sid)
        except Inessential:
            curve = None
        pieces.append(((x_i, x_j), curve, cls))
        total = cls if total is None else total + cls
    d_cls = basis.class_of_chain(config.drawing.cycle_chain(sid_d))
    if total.coords != d_cls.coords:
        raise BoundViolation("sum of (b,d)-bicorn classes misses [d]")
    cands = [(seg, curve) for (seg, curve, cls) in pieces
             if curve is not None and not basis.in_boundary_lattice(cls)]
    if not cands:
        raise BoundViolation("no nonseparating (b,d)-bicorn over beta")
    cands.sort(key=lambda t: (PC.intersection_number(t[1], c.derived),
                              t[1].weights))
    seg, curve = cands[0]
    return seg, curve, True


def _stage_two(config, c, cprime_dseg, cprime_curve, basis, geo):
    a, b = config.a, config.b
    sid_a, sid_d = config.sid_a, config.sid_d
    u, v = c.aseg
    pa_lo = u.crossing.param_of(sid_a)
    pa_hi = v.crossing.param_of(sid_a)

    ad_events = [cr for cr in geo.events[sid_d] if sid_a in cr.strands()]
    if cprime_dseg is None:
        dseg_events = ad_events
    else:
        x_i, x_j = cprime_dseg
        q_lo = x_i.param_of(sid_d)
        q_hi = x_j.param_of(sid_d)
        dseg_events = [cr for cr in ad_events
                       if _cyclic_between(q_lo, cr.param_of(sid_d), q_hi)]
    ys = [cr for cr in dseg_events
          if _cyclic_between(pa_lo, cr.param_of(sid_a), pa_hi)]
    # order along the d-arc
    if cprime_dseg is None:
        ys.sort(key=lambda cr: cr.param_of(sid_d))
    else:
        q_lo = cprime_dseg[0].param_of(sid_d)
        ys.sort(key=lambda cr: _cyclic_offset(q_lo, cr.param_of(sid_d)))

    second_bicorns = []
    for k in range(len(ys) - 1):
        y_i, y_j = ys[k], ys[k + 1]
        segs = [(sid_d, y_i, y_j, 1)]
        if _order_along(sid_a, pa_lo, y_i, y_j):
            segs.append((sid_a, y_j, y_i, -1))
        else:
            segs.append((sid_a, y_j, y_i, 1))
        dd = assemble_path_strand(config.drawing, segs)
        sid = next(iter(dd.strands))
        cls = basis.class_of_chain(dd.cycle_chain(sid))
        try:
            curve = C.curve_from_drawing(dd, sid)
        except Inessential:
            curve = None
        second_bicorns.append(((y_i, y_j), curve, cls))

    near = []
    for (pair, curve, cls) in second_bicorns:
        if curve is None:
            continue
        i_cc = PC.intersection_number(c.derived, curve)
        if i_cc > 1:
            raise BoundViolation(
                "second-stage bicorn meets c %d > 1 times" % i_cc)
        if not basis.in_boundary_lattice(cls):
            near.append((i_cc, curve))
    if near:
        near.sort(key=lambda t: (t[0], t[1].weights))
        w = ProjectionWitness("near", "ad", near[0][1])
        w.bounds["i_c_target"] = near[0][0]
        w.certified_distance = 1
        return w

    # all separating: reroute the left-side maximal arcs of c along d
    c0 = _build_reroute(config, c, ys, second_bicorns, basis, geo)
    i_c_c0 = PC.intersection_number(c.derived, c0)
    if i_c_c0 != 0:
        raise BoundViolation("rerouted curve meets c (%d times)" % i_c_c0)
    i_c0_cp = PC.intersection_number(c0, cprime_curve)
    if i_c0_cp > 3:
        raise BoundViolation("reroute to side bicorn: i=%d > 3" % i_c0_cp)
    path = distance_path(c0, cprime_curve, "nsprime")
    w = ProjectionWitness("reroute", "bd", cprime_curve, reroute=c0)
    w.bounds["i_c_c0"] = i_c_c0
    w.bounds["i_c0_cprime"] = i_c0_cp
    w.path = path
    w.certified_distance = (0 if c0 == c.derived else 1) + (len(path) - 1)
    return w


def _cyclic_offset(base, par):
    # total order key for params along a strand, starting at `base`
    return (par < base, par)


def _order_along(sid, base, y_i, y_j):
    """Whether y_i comes before y_j along the strand starting at base."""
    return _cyclic_offset(base, y_i.param_of(sid)) <= \
        _cyclic_offset(base, y_j.param_of(sid))


def _side_of_arc_ends(config, y, departing):
    """Side of the a-strand the d-arc occupies at a crossing endpoint."""
    s = y.sign_for(config.sid_a)
    return s if departing else -s


def _build_reroute(config, c, ys, second_bicorns, basis, geo):
    """Replace maximal left-left a-arcs of c by their d-arcs."""
    sid_a, sid_b, sid_d = config.sid_a, config.sid_b, config.sid_d
    u, v = c.aseg
    pa_lo = u.crossing.param_of(sid_a)

    arcs = []
    for k, ((y_i, y_j), curve, cls) in enumerate(second_bicorns):
        side_start = _side_of_arc_ends(config, y_i, departing=True)
        side_end = _side_of_arc_ends(config, y_j, departing=False)
        if side_start != side_end:
            raise BoundViolation(
                "separating second-stage bicorn crosses sides")
        lo = _cyclic_offset(pa_lo, y_i.param_of(sid_a))
        hi = _cyclic_offset(pa_lo, y_j.param_of(sid_a))
        lo, hi = min(lo, hi), max(lo, hi)
        arcs.append({"pair": (y_i, y_j), "side": side_start,
                     "lo": lo, "hi": hi})
    # nesting audit for same-side arcs
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if arcs[i]["side"] != arcs[j]["side"]:
                continue
            a1, a2 = arcs[i], arcs[j]
            nested = (a1["lo"] < a2["lo"] and a2["hi"] < a1["hi"]) or \
                     (a2["lo"] < a1["lo"] and a1["hi"] < a2["hi"])
            disjoint = a1["hi"] < a2["lo"] or a2["hi"] < a1["lo"] or \
                a1["hi"] == a2["lo"] or a2["hi"] == a1["lo"]
            if not (nested or disjoint):
                raise BoundViolation("same-side arcs interleave")

    left = [ar for ar in arcs if ar["side"] > 0]
    maximal = []
    for ar in left:
        if not any(o is not ar and o["lo"] < ar["lo"] and ar["hi"] < o["hi"]
                   for o in left):
            maximal.append(ar)
    maximal.sort(key=lambda ar: ar["lo"])
    if not maximal:
        return c.derived

    # walk the a-arc from u to v, replacing the maximal spans
    segs = []
    cursor = u.crossing
    for ar in maximal:
        y_i, y_j = ar["pair"]
        first, second = (y_i, y_j) if _order_along(sid_a, pa_lo, y_i, y_j) \
            else (y_j, y_i)
        segs.append((sid_a, cursor, first.crossing
                     if hasattr(first, "crossing") else first, 1))
        # d-arc traversed from `first` to `second`; direction along d
        start, end = ar["pair"]
        if first is start:
            segs.append((sid_d, first, second, 1))
        else:
            segs.append((sid_d, first, second, -1))
        cursor = second
    segs.append((sid_a, cursor, v.crossing, 1))
    # close with the b-arc of c, traversed from v back to u
    w_from, w_to = c.bseg
    if (w_from, w_to) == (u, v):
        segs.append((sid_b, v.crossing, u.crossing, -1))
    else:
        segs.append((sid_b, v.crossing, u.crossing, 1))
    fixed = []
    for (sid, fr, to, direction) in segs:
        fr_cr = fr.crossing if hasattr(fr, "crossing") else fr
        to_cr = to.crossing if hasattr(to, "crossing") else to
        fixed.append((sid, fr_cr, to_cr, direction))
    dd = assemble_path_strand(config.drawing, fixed)
    sid = next(iter(dd.strands))
    cls = basis.class_of_chain(dd.cycle_chain(sid))
    if basis.in_boundary_lattice(cls):
        raise BoundViolation("rerouted curve is separating")
    return C.curve_from_drawing(dd, sid)
