"""Experiment harness: randomized replay of the structural claims.

Every verifier samples seeded populations, runs the corresponding
construction, checks the claimed bounds exactly, and aggregates extremal
statistics into a reproducible report.  Failing instances are serialized
with enough data (surface, seed, curve coordinates) to replay them.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import bicorn as B
from . import curve as C
from . import pairconfig as PC
from .errors import DisconnectedGraph, NSCurvesError, PreconditionViolation
from .surface import parse_surface_spec

REPORT_SCHEMA = "nscurves.report/1"


@dataclass
class RunConfig:
    command: str
    surface: str
    samples: int
    seed: int
    params: dict = field(default_factory=dict)

    def to_json(self):
        return asdict(self)


@dataclass
class VerificationReport:
    claim: str
    surface: str
    samples: int
    seed: int
    passes: int = 0
    failures: int = 0
    stats: dict = field(default_factory=dict)
    branch_counts: dict = field(default_factory=dict)
    failing_instances: list = field(default_factory=list)
    trial_rows: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    generated_at: str = ""

    def finish(self):
        self.generated_at = datetime.now(timezone.utc).isoformat()
        return self

    @property
    def ok(self):
        return self.failures == 0

    def to_json(self):
        out = asdict(self)
        out["schema"] = REPORT_SCHEMA
        out["stats"] = {k: (str(v) if isinstance(v, Fraction) else v)
                        for k, v in self.stats.items()}
        return out

    def to_csv(self):
        buf = io.StringIO()
        if not self.trial_rows:
            return ""
        cols = sorted({k for row in self.trial_rows for k in row})
        w = csv.DictWriter(buf, fieldnames=["claim", "surface", "seed"] + cols)
        w.writeheader()
        for row in self.trial_rows:
            full = {"claim": self.claim, "surface": self.surface,
                    "seed": self.seed}
            full.update(row)
            w.writerow(full)
        return buf.getvalue()

    def bump(self, key, value):
        if key not in self.stats or self.stats[key] < value:
            self.stats[key] = value

    def record_branch(self, name):
        self.branch_counts[name] = self.branch_counts.get(name, 0) + 1


def reports_equal(a, b):
    """Byte-level equality of two report JSON dicts, timestamps excluded."""
    da, db = dict(a), dict(b)
    da.pop("generated_at", None)
    db.pop("generated_at", None)
    return json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def _trial_seed(seed, k):
    return seed * 1_000_003 + 7 * k + 1


# -- samplers -----------------------------------------------------------------


def sample_curve(surface, rng, complexity_bound=160, max_twists=4,
                 power_bound=2):
    return C.random_nonseparating(
        surface, rng, max_twists=max_twists, power_bound=power_bound,
        complexity_bound=complexity_bound)


def sample_pair(surface, rng, lo, hi, complexity_bound=160, tries=80):
    """Nonseparating pair with lo <= i(a,b) <= hi."""
    for _ in range(tries):
        a = sample_curve(surface, rng, complexity_bound)
        style = rng.randrange(3)
        if style == 0:
            b = sample_curve(surface, rng, complexity_bound)
        elif style == 1:
            w = PC.intersection_witness(a)
            n = rng.choice([-2, -1, 1, 2])
            b = C.dehn_twist(a, w, n)
        else:
            w = PC.intersection_witness(a)
            n = rng.choice([-1, 1])
            mid = C.dehn_twist(w, a, rng.choice([-1, 1]))
            b = C.dehn_twist(a, mid, n) if not mid.is_separating() else \
                sample_curve(surface, rng, complexity_bound)
        if b.is_separating() or b.peripheral or a == b:
            continue
        i = PC.intersection_number(a, b)
        if lo <= i <= hi:
            return a, b, i
    raise NSCurvesError("pair sampling failed in range [%d, %d]" % (lo, hi))


def sample_adjacent_pair(surface, rng, complexity_bound=160):
    return sample_pair(surface, rng, 0, 2, complexity_bound)


from functools import lru_cache

_SEED_SURFACES = {}


@lru_cache(maxsize=None)
def _separating_seed(spec_name):
    """An essential separating curve of the surface, when one exists."""
    surface = _SEED_SURFACES[spec_name]
    if surface.genus >= 2:
        gens = dict(C.twist_generators(surface))
        cfg = PC.draw_pair(gens["A"], gens["B"])
        return PC.find_separating_complement(cfg)
    if surface.boundary_count >= 2:
        cfg = PC.draw_pair(C.torus_slope(surface, 1, 0),
                           C.torus_slope(surface, 0, 1))
        return PC.find_separating_complement(cfg)
    return None


def separating_seed_curve(surface):
    _SEED_SURFACES[surface.spec_name] = surface
    return _separating_seed(surface.spec_name)


def random_curve_any(surface, rng, complexity_bound=200, max_twists=5):
    """Random curve that may be separating or peripheral (oracle tests).

    Mixes plain twist words with bicorn smoothings of random pairs and
    with twisted images of a separating seed curve, so both answers of
    the separating test actually occur in the population.
    """
    style = rng.randrange(4)
    if style == 2:
        seed = separating_seed_curve(surface)
        if seed is None and surface.boundary_count >= 1:
            seed = C.boundary_parallel_curve(surface, 0)
        if seed is not None:
            gens = C.twist_generators(surface)
            cur = seed
            for _ in range(rng.randrange(3)):
                _, t = gens[rng.randrange(len(gens))]
                nxt = C.dehn_twist(cur, t, rng.choice([-1, 1]))
                if nxt.complexity > complexity_bound:
                    break
                cur = nxt
            return cur
    if style == 3:
        for _ in range(8):
            try:
                a, b, i = sample_pair(surface, rng, 2, 6, complexity_bound, 20)
            except NSCurvesError:
                continue
            cfg = PC.draw_pair(a, b)
            bics = [bc for bc in B.enumerate_bicorns(cfg)
                    if bc.kind == "proper"]
            if bics:
                return bics[rng.randrange(len(bics))].derived
    return C.random_curve(surface, rng, max_twists=max_twists,
                          power_bound=2, complexity_bound=complexity_bound)


# -- claim verifiers ------------------------------------------------------------


def verify_claim1(surface, samples, seed, complexity_bound=120,
                  trial_indices=None):
    """Adjacent pairs: the bicorn graph has diameter at most two."""
    surface = parse_surface_spec(surface)
    rep = VerificationReport("claim1", surface.spec_name, samples, seed)
    rep.config = RunConfig("verify claim1", surface.spec_name, samples, seed,
                           {"complexity_bound": complexity_bound}).to_json()
    for k in (trial_indices if trial_indices is not None
             else range(samples)):
        rng = random.Random(_trial_seed(seed, k))
        row = {"trial": k}
        try:
            a, b, i = sample_adjacent_pair(surface, rng, complexity_bound)
            row["i_ab"] = i
            cfg = PC.draw_pair(a, b)
            bics = B.enumerate_bicorns(cfg)
            if i == 2:
                worst = 0
                for bc in bics:
                    if bc.kind == "proper":
                        worst = max(worst, PC.intersection_number(
                            a, bc.derived))
                row["max_i_a_bicorn"] = worst
                rep.bump("max_i_a_bicorn", worst)
                if worst > 1:
                    raise B.BoundViolation(
                        "a bicorn of an i=2 pair meets a %d times" % worst)
            graph = B.bicorn_graph(a, b)
            if i <= 1 and len(graph.vertices) != 2:
                raise B.BoundViolation(
                    "A(a,b) of an i<=1 pair has %d vertices"
                    % len(graph.vertices))
            diam = graph.diameter()
            row["diameter"] = diam
            if diam is None or diam > 2:
                raise B.BoundViolation("bicorn graph diameter %s" % diam)
            rep.bump("max_diameter", diam)
            rep.passes += 1
            row["ok"] = 1
        except (B.BoundViolation, NSCurvesError) as err:
            rep.failures += 1
            row["ok"] = 0
            rep.failing_instances.append(_instance(surface, k, seed, err,
                                                   locals()))
        rep.trial_rows.append(row)
    return rep.finish()


def verify_claim2(surface, samples, seed, max_i=10, complexity_bound=150,
                  trial_indices=None):
    """Monotone successor chains reach b; the bicorn graph is connected."""
    surface = parse_surface_spec(surface)
    rep = VerificationReport("claim2", surface.spec_name, samples, seed)
    rep.config = RunConfig("verify claim2", surface.spec_name, samples, seed,
                           {"max_i": max_i,
                            "complexity_bound": complexity_bound}).to_json()
    for k in (trial_indices if trial_indices is not None
             else range(samples)):
        rng = random.Random(_trial_seed(seed, k))
        row = {"trial": k}
        try:
            a, b, i = sample_pair(surface, rng, 0, max_i, complexity_bound)
            row["i_ab"] = i
            stats = []
            chain = B.connect_in_bicorn_graph(a, b, collect_stats=stats)
            row["chain_len"] = len(chain) - 1
            rep.bump("max_chain_len", len(chain) - 1)
            worst = 0
            for u, v in zip(chain, chain[1:]):
                iuv = PC.intersection_number(u.derived, v.derived)
                worst = max(worst, iuv)
                if not v.b_gaps > u.b_gaps and v.kind != "degenerate_b":
                    raise B.BoundViolation("chain b-arcs not monotone")
            row["max_consecutive_i"] = worst
            rep.bump("max_consecutive_i", worst)
            if worst > 2:
                raise B.BoundViolation("chain edge intersects %d > 2" % worst)
            for st in stats:
                rep.record_branch(st.get("branch", "unknown"))
            if i <= 6:
                graph = B.bicorn_graph(a, b)
                row["bfs_connected"] = int(graph.connected)
                if not graph.connected:
                    raise B.BoundViolation("bicorn graph disconnected")
            rep.passes += 1
            row["ok"] = 1
        except (B.BoundViolation, NSCurvesError) as err:
            rep.failures += 1
            row["ok"] = 0
            rep.failing_instances.append(_instance(surface, k, seed, err,
                                                   locals()))
        rep.trial_rows.append(row)
    return rep.finish()


def verify_claim3(surface, samples, seed, max_i=4, complexity_bound=120,
                  trial_indices=None):
    """Every bicorn of (a,b) lands near the bicorns of (a,d) or (b,d)."""
    surface = parse_surface_spec(surface)
    rep = VerificationReport("claim3", surface.spec_name, samples, seed)
    rep.config = RunConfig("verify claim3", surface.spec_name, samples, seed,
                           {"max_i": max_i,
                            "complexity_bound": complexity_bound}).to_json()
    for k in (trial_indices if trial_indices is not None
             else range(samples)):
        rng = random.Random(_trial_seed(seed, k))
        row = {"trial": k}
        try:
            a, b, i = sample_pair(surface, rng, 0, max_i, complexity_bound)
            d = sample_curve(surface, rng, complexity_bound)
            row["i_ab"] = i
            cfg = B.triple_config(a, b, d)
            bics = B.enumerate_bicorns(cfg)
            seen = set()
            worst = 0
            for bc in bics:
                if bc.derived.is_separating() or bc.derived in seen:
                    continue
                seen.add(bc.derived)
                w = B.project_to_sides(bc, d, cfg)
                rep.record_branch(w.branch)
                if w.branch == "near" and w.bounds.get("i_c_target", 0) > 1:
                    raise B.BoundViolation("near witness bound")
                if w.branch == "reroute":
                    if w.bounds.get("i_c_c0", 0) != 0 or \
                            w.bounds.get("i_c0_cprime", 0) > 3:
                        raise B.BoundViolation("reroute witness bounds")
                worst = max(worst, w.certified_distance)
            row["empirical_D"] = worst
            rep.bump("empirical_D", worst)
            if worst > 8:
                raise B.BoundViolation("certified distance %d > 8" % worst)
            rep.passes += 1
            row["ok"] = 1
        except (B.BoundViolation, NSCurvesError) as err:
            rep.failures += 1
            row["ok"] = 0
            rep.failing_instances.append(_instance(surface, k, seed, err,
                                                   locals()))
        rep.trial_rows.append(row)
    return rep.finish()


def verify_lemma22(surface, samples, seed, max_i=12, complexity_bound=150,
                   trial_indices=None):
    """Surgery paths stay within 2 i(a,b) + 1 under the primed edge rule."""
    surface = parse_surface_spec(surface)
    rep = VerificationReport("lemma22", surface.spec_name, samples, seed)
    rep.config = RunConfig("verify lemma22", surface.spec_name, samples, seed,
                           {"max_i": max_i,
                            "complexity_bound": complexity_bound}).to_json()
    for k in (trial_indices if trial_indices is not None
             else range(samples)):
        rng = random.Random(_trial_seed(seed, k))
        row = {"trial": k}
        try:
            a, b, i = sample_pair(surface, rng, 0, max_i, complexity_bound)
            row["i_ab"] = i
            path = B.distance_path(a, b, "nsprime")
            row["path_len"] = len(path) - 1
            rep.bump("max_path_len", len(path) - 1)
            if len(path) - 1 > 2 * i + 1:
                raise B.BoundViolation("path length bound")
            for u, v in zip(path, path[1:]):
                if not B.ns_adjacent(surface, u, v, "nsprime"):
                    raise B.BoundViolation("path edge rule")
            if path[0] != a or path[-1] != b:
                raise B.BoundViolation("path endpoints")
            if i == 1:
                want = 1 if surface.genus == 1 else 2
                if len(path) - 1 != want:
                    raise B.BoundViolation(
                        "base case length %d != %d" % (len(path) - 1, want))
            rep.passes += 1
            row["ok"] = 1
        except (B.BoundViolation, NSCurvesError) as err:
            rep.failures += 1
            row["ok"] = 0
            rep.failing_instances.append(_instance(surface, k, seed, err,
                                                   locals()))
        rep.trial_rows.append(row)
    return rep.finish()


def verify_separating_oracle(surface, samples, seed, complexity_bound=200,
                             trial_indices=None):
    """Homological separating test against the cut-components oracle."""
    surface = parse_surface_spec(surface)
    rep = VerificationReport("separating_oracle", surface.spec_name,
                             samples, seed)
    rep.config = RunConfig("verify separating", surface.spec_name, samples,
                           seed, {}).to_json()
    seen_sep = 0
    for k in (trial_indices if trial_indices is not None
             else range(samples)):
        rng = random.Random(_trial_seed(seed, k))
        row = {"trial": k}
        try:
            c = random_curve_any(surface, rng, complexity_bound)
            parts = PC.cut_components(surface, c)
            sep = c.is_separating()
            row["separating"] = int(sep)
            row["components"] = parts
            if sep != (parts >= 2):
                raise B.BoundViolation(
                    "oracle disagreement: separating=%s components=%d"
                    % (sep, parts))
            seen_sep += int(sep)
            rep.passes += 1
            row["ok"] = 1
        except (B.BoundViolation, NSCurvesError) as err:
            rep.failures += 1
            row["ok"] = 0
            rep.failing_instances.append(_instance(surface, k, seed, err,
                                                   locals()))
        rep.trial_rows.append(row)
    rep.stats["separating_seen"] = seen_sep
    return rep.finish()


def _instance(surface, trial, seed, err, ctx):
    inst = {"surface": surface.spec_name, "trial": trial, "seed": seed,
            "error": "%s: %s" % (type(err).__name__, err)}
    for name in ("a", "b", "d", "c"):
        val = ctx.get(name)
        if isinstance(val, C.Curve):
            inst[name] = val.literal()
    return inst


VERIFIERS = {
    "claim1": verify_claim1,
    "claim2": verify_claim2,
    "claim3": verify_claim3,
    "lemma22": verify_lemma22,
    "separating": verify_separating_oracle,
}


# -- explored balls and hyperbolicity ---------------------------------------------


@dataclass
class BallGraph:
    surface: str
    center: object
    radius: int
    complexity_bound: int
    flavor: str
    vertices: list
    edges: set
    distance_caveat: bool = True

    def adjacency(self):
        adj = {i: set() for i in range(len(self.vertices))}
        for e in self.edges:
            i, j = tuple(e)
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def distances_from(self, src):
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

    def distance_matrix(self):
        n = len(self.vertices)
        mat = np.full((n, n), -1, dtype=np.int64)
        for i in range(n):
            d = self.distances_from(i)
            if len(d) != n:
                raise DisconnectedGraph("ball graph is not connected")
            for j, v in d.items():
                mat[i][j] = v
        return mat

    def to_json(self):
        return {"schema": "nscurves.ball/1", "surface": self.surface,
                "center": self.center.to_json(), "radius": self.radius,
                "complexity_bound": self.complexity_bound,
                "flavor": self.flavor,
                "distance_caveat":
                    "distances are upper bounds for the full graph",
                "vertices": [v.to_json() for v in self.vertices],
                "edges": sorted(sorted(e) for e in self.edges)}


def build_ball(surface, center, radius, complexity_bound, flavor="ns",
               use_bicorn_moves=True, twist_powers=10):
    """BFS ball of the explored graph around a center curve.

    Neighbors are proposed by bounded twist words (all powers up to
    `twist_powers` of each generator) and, optionally, by the
    nonseparating bicorns against the center; induced distances
    overestimate distances in the full graph.
    """
    surface = parse_surface_spec(surface)
    if center.is_separating():
        raise PreconditionViolation("ball center must be nonseparating")
    gens = [c for _, c in C.twist_generators(surface)]

    def proposals(v):
        out = list(gens)
        for g in gens:
            for n in range(1, twist_powers + 1):
                stop = True
                for sgn in (1, -1):
                    cand = C.dehn_twist(v, g, sgn * n)
                    if cand.complexity <= complexity_bound:
                        stop = False
                    out.append(cand)
                if stop and n > 2:
                    break
        if use_bicorn_moves and v != center \
                and PC.intersection_number(v, center) <= 8:
            cfg = PC.draw_pair(v, center)
            for bc in B.enumerate_bicorns(cfg):
                if not bc.derived.is_separating():
                    out.append(bc.derived)
        keep = []
        for c in out:
            if c.complexity <= complexity_bound and not c.is_separating() \
                    and not c.peripheral:
                keep.append(c)
        return keep

    if center.complexity > complexity_bound:
        raise PreconditionViolation("center exceeds the complexity bound")
    # generation closure first, then an honest BFS ball of the induced graph
    pool = [center]
    seen = {center}
    new = [center]
    for _ in range(radius):
        batch = []
        for v in new:
            for w in proposals(v):
                if w not in seen:
                    seen.add(w)
                    batch.append(w)
        pool.extend(batch)
        new = batch
    adj = {i: set() for i in range(len(pool))}
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if _flavor_adjacent(surface, pool[i], pool[j], flavor):
                adj[i].add(j)
                adj[j].add(i)
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    keep = sorted(i for i, d in dist.items() if d <= radius)
    remap = {i: k for k, i in enumerate(keep)}
    vertices = [pool[i] for i in keep]
    edges = set()
    for i in keep:
        for j in adj[i]:
            if j in remap and remap[i] < remap[j]:
                edges.add(frozenset((remap[i], remap[j])))
    return BallGraph(surface.spec_name, center, radius, complexity_bound,
                     flavor, vertices, edges)


def _flavor_adjacent(surface, u, v, flavor):
    if u == v:
        return False
    return B.ns_adjacent(surface, u, v, flavor)


def four_point_delta(graph: BallGraph, mode="exact", seed=0, samples=20000,
                     exact_cap=400):
    """Four-point hyperbolicity defect of the explored graph, as a Fraction.

    Exact mode scans all quadruples (vectorized over pairs); sampled mode
    maximizes over seeded random quadruples and therefore lower-bounds the
    exact value.
    """
    n = len(graph.vertices)
    if n < 4:
        return Fraction(0)
    mat = graph.distance_matrix()
    if mode == "exact":
        if n > exact_cap:
            raise NSCurvesError(
                "exact mode capped at %d vertices (got %d)" % (exact_cap, n))
        pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64)
        pz, pw = pairs[:, 0], pairs[:, 1]
        d_zw = mat[pz, pw]
        best = 0
        for x in range(n):
            for y in range(x + 1, n):
                s1 = mat[x][y] + d_zw
                s2 = mat[x, pz] + mat[y, pw]
                s3 = mat[x, pw] + mat[y, pz]
                hi = np.maximum(s1, np.maximum(s2, s3))
                lo = np.minimum(s1, np.minimum(s2, s3))
                mid = s1 + s2 + s3 - hi - lo
                gap = int(np.max(hi - mid))
                if gap > best:
                    best = gap
        return Fraction(best, 2)
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        x, y, z, w = rng.sample(range(n), 4)
        s1 = mat[x][y] + mat[z][w]
        s2 = mat[x][z] + mat[y][w]
        s3 = mat[x][w] + mat[y][z]
        hi, mid, _ = sorted((int(s1), int(s2), int(s3)), reverse=True)
        best = max(best, hi - mid)
    return Fraction(best, 2)


def four_point_delta_bruteforce(graph: BallGraph):
    """Plain all-quadruples oracle; use on small graphs only."""
    n = len(graph.vertices)
    if n < 4:
        return Fraction(0)
    mat = graph.distance_matrix()
    best = 0
    for x, y, z, w in combinations(range(n), 4):
        s1 = mat[x][y] + mat[z][w]
        s2 = mat[x][z] + mat[y][w]
        s3 = mat[x][w] + mat[y][z]
        hi, mid, _ = sorted((int(s1), int(s2), int(s3)), reverse=True)
        best = max(best, hi - mid)
    return Fraction(best, 2)


# -- parallel driver ------------------------------------------------------------

_SUM_STATS = {"separating_seen"}


def _merge_reports(base, parts):
    for rep in parts:
        base.passes += rep.passes
        base.failures += rep.failures
        for k, v in rep.stats.items():
            if k in _SUM_STATS:
                base.stats[k] = base.stats.get(k, 0) + v
            else:
                base.bump(k, v)
        for k, v in rep.branch_counts.items():
            base.branch_counts[k] = base.branch_counts.get(k, 0) + v
        base.failing_instances.extend(rep.failing_instances)
        base.trial_rows.extend(rep.trial_rows)
    base.failing_instances.sort(key=lambda x: x.get("trial", 0))
    base.trial_rows.sort(key=lambda x: x.get("trial", 0))
    return base.finish()


def _verify_worker(args):
    claim, spec_name, samples, seed, params, indices = args
    fn = VERIFIERS[claim]
    return fn(spec_name, samples, seed, trial_indices=indices, **params)


def run_verifier(claim, surface, samples, seed, jobs=1, **params):
    """Run a claim verifier, optionally over a process pool.

    Per-trial seeds depend only on (seed, trial index), so the merged
    report is identical for every parallelism degree.
    """
    surface = parse_surface_spec(surface)
    if claim not in VERIFIERS:
        raise NSCurvesError("unknown claim %r" % claim)
    if jobs <= 1:
        return VERIFIERS[claim](surface, samples, seed, **params)
    from concurrent.futures import ProcessPoolExecutor
    chunks = [list(range(w, samples, jobs)) for w in range(jobs)]
    chunks = [c for c in chunks if c]
    tasks = [(claim, surface.spec_name, samples, seed, params, idx)
             for idx in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_verify_worker, tasks))
    base = VerificationReport(claim, surface.spec_name, samples, seed)
    base.config = parts[0].config if parts else {}
    return _merge_reports(base, parts)


def replay_instances(path_or_data):
    """Re-run serialized failing instances; returns per-instance outcomes."""
    if isinstance(path_or_data, str):
        with open(path_or_data) as fh:
            data = json.load(fh)
    else:
        data = path_or_data
    instances = data if isinstance(data, list) else \
        data.get("failing_instances", [])
    out = []
    for inst in instances:
        surface = parse_surface_spec(inst["surface"])
        claim = data.get("claim") if isinstance(data, dict) else None
        claim = claim or inst.get("claim", "claim2")
        rep = VERIFIERS[claim](surface, 1, inst["seed"],
                               trial_indices=[inst["trial"]])
        out.append({"instance": inst, "reproduced": rep.failures > 0})
    return out
