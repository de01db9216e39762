"""Subpolytope enumeration and the weakly sporadic / sporadic classifications.

Breadth-first closure under vertex deletion, deduplicated by affine normal
form.  Deleting a vertex of the hull of the remaining lattice points reaches
every full-dimensional lattice subpolytope class of a root, so the pipelines
only have to filter the emitted classes.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .canonical import canonical_rays
from .catalog import delta2, lawrence_prism, pyr_2delta2, simplex, sporadic_roots, width2_root
from .fine import GorensteinData, gorenstein_data, multiplier_profile
from .linalg import det, dot, kernel_basis, rank, solve_square, vsub
from .normal_form import affine_normal_form, matrix_digest, polytope_from_normal_form
from .polytope import HalfSpace, InvariantViolation, Polytope, minkowski_sum, resolve_hpolyhedron
from .width import lattice_width


@dataclass(frozen=True)
class ClassificationRecord:
    digest: str
    vertices: tuple  # canonical vertex matrix, d rows
    width: int
    mu: object
    dim_f_at_mu: int
    f_hollow: bool
    weakly_sporadic: bool
    sporadic: bool
    canonically_closed_at_mu: bool
    gorenstein: GorensteinData | None
    provenance: str


class DedupStore:
    """Insert-if-absent set of normal forms, confirmed by full matrix compare.

    Optionally persists to an append-only log so interrupted runs can resume:
    `seen` lines carry the canonical matrix, `done` lines mark classes whose
    children have been generated.
    """

    def __init__(self, log_path=None):
        self._by_digest = {}
        self._done = set()
        self._log = None
        self._log_path = log_path

    def open_log(self, resume=False):
        if self._log_path is None:
            return
        if resume:
            try:
                with open(self._log_path, "r", encoding="utf-8") as fh:
                    for line in fh:
                        entry = json.loads(line)
                        if "seen" in entry:
                            matrix = tuple(tuple(row) for row in entry["m"])
                            self._by_digest[entry["seen"]] = matrix
                        elif "done" in entry:
                            self._done.add(entry["done"])
            except FileNotFoundError:
                pass
        mode = "a" if resume else "w"
        self._log = open(self._log_path, mode, encoding="utf-8")

    def close(self):
        if self._log is not None:
            self._log.close()
            self._log = None

    def insert(self, digest, matrix) -> bool:
        known = self._by_digest.get(digest)
        if known is not None:
            if known != matrix:
                raise InvariantViolation(f"digest collision on {digest}")
            return False
        self._by_digest[digest] = matrix
        if self._log is not None:
            self._log.write(json.dumps({"seen": digest, "m": [list(r) for r in matrix]}) + "\n")
            self._log.flush()
        return True

    def mark_done(self, digest):
        self._done.add(digest)
        if self._log is not None:
            self._log.write(json.dumps({"done": digest}) + "\n")
            self._log.flush()

    def is_done(self, digest):
        return digest in self._done

    def matrices(self):
        return dict(self._by_digest)


def _thin_direction_exists(p, bound=2):
    """Cheap certificate that the lattice width is at most one."""
    verts = p.vertices
    d = p.ambient_dim
    for n in itertools.product(range(-bound, bound + 1), repeat=d):
        first = next((x for x in n if x != 0), None)
        if first is None or first < 0:
            continue
        vals = [dot(v, n) for v in verts]
        if max(vals) - min(vals) <= 1:
            return True
    return False


def _width_at_least_2(p):
    """Intrinsic pruning predicate: False only when the width is provably <= 1.

    Deliberately one-sided: scanning a small direction ball is enough to kill
    the flat subtrees, and a width-1 class that slips through is merely
    filtered later rather than mis-emitted.
    """
    return not _thin_direction_exists(p)


_EXPAND_FILTERS = {None: None, "width2": _width_at_least_2}


def _expand_class(args):
    """Canonical matrices of the full-dimensional children of one class.

    An expand filter (referenced by name so the call pickles cheaply) drops
    children that provably contain nothing the calling pipeline wants; width
    is monotone under inclusion, so pruning width<=1 subtrees is sound for
    pipelines that only keep width-2 classes.
    """
    matrix, filter_name = args
    filt = _EXPAND_FILTERS[filter_name]
    q = polytope_from_normal_form(matrix)
    d = q.ambient_dim
    pts = q.lattice_points()
    out = []
    for v in q.vertices:
        remaining = [p for p in pts if p != v]
        if len(remaining) <= d:
            continue
        child = Polytope(remaining)
        if child.intrinsic_dim != d:
            continue
        if filt is not None and not filt(child):
            continue
        nf = affine_normal_form(child)
        out.append((nf.digest, nf.canonical_vertices))
    return out


def subpolytope_classes(root, store=None, jobs=1, expand_filter=None):
    """Every full-dimensional lattice subpolytope class of the root, root included.

    Children are hulls of the lattice points minus one vertex; the closure is
    deduplicated through the store.  Returns canonical representatives sorted
    by digest.  `expand_filter` ("width2") restricts the traversal to classes
    that can still contain what the caller wants; the default emits everything.
    """
    if not root.is_lattice:
        raise ValueError("subpolytope enumeration requires a lattice root")
    if not root.is_full_dim:
        raise ValueError("subpolytope enumeration requires a full-dimensional root")
    store = store if store is not None else DedupStore()
    filt = _EXPAND_FILTERS[expand_filter]
    if filt is not None and not filt(root):
        return []
    nf = affine_normal_form(root)
    frontier = []
    if store.insert(nf.digest, nf.canonical_vertices):
        frontier.append((nf.digest, nf.canonical_vertices))
    elif not store.is_done(nf.digest):
        frontier.append((nf.digest, nf.canonical_vertices))
    # resume: anything seen but not expanded goes back on the frontier
    for digest, matrix in store.matrices().items():
        if digest != nf.digest and not store.is_done(digest):
            frontier.append((digest, matrix))
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            wave = sorted(
                frontier,
                key=lambda item: (_lattice_point_count(item[1]), item[0]),
            )
            frontier = []
            jobs_args = [(m, expand_filter) for _, m in wave]
            if pool is not None:
                results = list(pool.map(_expand_class, jobs_args, chunksize=4))
            else:
                results = [_expand_class(a) for a in jobs_args]
            for (digest, _), children in zip(wave, results):
                for child_digest, child_matrix in children:
                    if store.insert(child_digest, child_matrix):
                        frontier.append((child_digest, child_matrix))
                store.mark_done(digest)
    finally:
        if pool is not None:
            pool.shutdown()
    classes = store.matrices()
    return [polytope_from_normal_form(classes[d]) for d in sorted(classes)]


def _lattice_point_count(matrix):
    return len(polytope_from_normal_form(matrix).lattice_points())


def projects_to_2delta2(p, cert=None):
    """Lattice projection into 2*Delta_2, decided on the width certificate.

    True when the width is exactly 2 and three pairwise dependent width
    directions span a triangle of normalized area 3 with 0 interior whose six
    supporting half-spaces leave only 3 irredundant constraints.
    """
    if p.ambient_dim != 3 or not p.is_lattice:
        raise ValueError("projection predicate expects a lattice 3-polytope")
    if cert is None:
        cert = lattice_width(p)
    if cert.width == 1:
        raise ValueError("use width-1 projection predicate")
    if cert.width != 2:
        return False
    dirs = cert.directions
    for triple in itertools.combinations(dirs, 3):
        if rank(list(triple)) != 2:
            continue
        plane_normals = kernel_basis(list(triple))
        if len(plane_normals) != 1:
            continue
        basis = kernel_basis([plane_normals[0]])
        coords = []
        ok = True
        for w in triple:
            c = _plane_coordinates(basis, w)
            if c is None:
                ok = False
                break
            coords.append(c)
        if not ok:
            continue
        w1, w2, w3 = coords
        d12 = w1[0] * w2[1] - w1[1] * w2[0]
        d23 = w2[0] * w3[1] - w2[1] * w3[0]
        d31 = w3[0] * w1[1] - w3[1] * w1[0]
        if not (d12 > 0 and d23 > 0 and d31 > 0) and not (d12 < 0 and d23 < 0 and d31 < 0):
            continue
        area = abs(det([vsub(w2, w1), vsub(w3, w1)]))
        if area != 3:
            continue
        constraints = []
        for w, wc in zip(triple, coords):
            for sign in (1, -1):
                n3 = tuple(sign * x for x in w)
                constraints.append((tuple(sign * x for x in wc), p.min_support(n3)))
        if _count_irredundant_2d(constraints) == 3:
            return True
    return False


def _plane_coordinates(basis, w):
    """Coordinates of w in the saturated plane lattice spanned by basis."""
    b1, b2 = basis
    for i, j in itertools.combinations(range(3), 2):
        d = b1[i] * b2[j] - b1[j] * b2[i]
        if d != 0:
            sol = solve_square([[b1[i], b2[i]], [b1[j], b2[j]]], [w[i], w[j]])
            if sol is None:
                return None
            a, c = sol
            if not (isinstance(a, int) and isinstance(c, int)):
                return None
            if tuple(a * x + c * y for x, y in zip(b1, b2)) != tuple(w):
                return None
            return (a, c)
    return None


def _count_irredundant_2d(constraints):
    from .polytope import _fm_feasible

    count = 0
    for k, (nk, ck) in enumerate(constraints):
        others = [(n, c, False) for i, (n, c) in enumerate(constraints) if i != k]
        others.append((tuple(-x for x in nk), -ck, True))  # <x, nk> < ck
        if _fm_feasible(others, 2):
            count += 1
    return count


def is_sporadic(p):
    """F-hollow with no lattice projection to a segment or into 2*Delta_2."""
    from .fine import is_f_hollow

    if p.ambient_dim != 3 or not p.is_lattice:
        raise ValueError("sporadicity is defined for lattice 3-polytopes")
    if not is_f_hollow(p):
        return False
    cert = lattice_width(p)
    if cert.width == 1:
        return False
    return not projects_to_2delta2(p)


def analyze(p, provenance):
    """Everything the classification records need, recomputed from the class
    representative so records stay reproducible."""
    nf = affine_normal_form(p)
    canonical = polytope_from_normal_form(nf.canonical_vertices)
    profile = multiplier_profile(canonical)
    cert = lattice_width(canonical)
    mu = profile.mu
    f_at_mu = profile.fine_at(mu)
    f_hollow = mu > 1
    weakly = f_hollow and f_at_mu.intrinsic_dim == 0
    if canonical.ambient_dim == 3 and f_hollow and cert.width >= 2:
        sporadic = not projects_to_2delta2(canonical, cert)
    else:
        sporadic = False
    return ClassificationRecord(
        digest=nf.digest,
        vertices=nf.canonical_vertices,
        width=cert.width,
        mu=mu,
        dim_f_at_mu=f_at_mu.intrinsic_dim,
        f_hollow=f_hollow,
        weakly_sporadic=weakly,
        sporadic=sporadic,
        canonically_closed_at_mu=profile.mu_cc <= mu,
        gorenstein=gorenstein_data(canonical),
        provenance=provenance,
    )


def _analyze_job(args):
    matrix, provenance = args
    return analyze(polytope_from_normal_form(matrix), provenance)


def _analyze_all(polytopes, provenance, jobs=1):
    items = [(affine_normal_form(p).canonical_vertices, provenance) for p in polytopes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_analyze_job, items, chunksize=4))
    else:
        records = [_analyze_job(item) for item in items]
    return records


# -- pipelines -------------------------------------------------------------------


def classify_polygons(jobs=1):
    """The four weakly sporadic lattice polygons, enumerated inside 2*Delta_2."""
    classes = subpolytope_classes(delta2(2), jobs=jobs)
    records = _analyze_all(classes, "2delta2", jobs=jobs)
    out = [r for r in records if r.weakly_sporadic]
    return sorted(out, key=lambda r: r.digest)


def classify_weakly_sporadic_width2(jobs=1, store=None):
    """Width-2 weakly sporadic non-sporadic classes from 2*Delta_2 x [0,4]."""
    classes = subpolytope_classes(
        width2_root(), store=store, jobs=jobs, expand_filter="width2"
    )
    records = _analyze_all(classes, "prism_2delta2_h4", jobs=jobs)
    # the sporadic flag already carries the projection predicate for width 2
    out = [r for r in records if r.width == 2 and r.weakly_sporadic and not r.sporadic]
    return sorted(out, key=lambda r: r.digest)


def reflexive_polygons(jobs=1):
    """All reflexive polygon classes, derived by subpolytope search in 4*Delta_2."""
    from .fine import reflexive_check

    classes = subpolytope_classes(delta2(4), jobs=jobs)
    out = []
    for c in classes:
        if len(c.lattice_points(interior_only=True)) == 1 and reflexive_check(c):
            out.append(c)
    return out


def minkowski_summand_pairs(r):
    """All ordered pairs of lattice polytopes (A, B) with A + B = R.

    A runs over anchored lattice subpolytopes of R; B is forced as the hull of
    the lattice points of the Minkowski difference, and the pair is kept only
    when the sum reproduces R exactly.
    """
    if not r.is_lattice:
        raise ValueError("summand search requires a lattice polytope")
    pts = r.lattice_points()
    seen = {}
    for size in range(1, len(pts) + 1):
        for subset in itertools.combinations(pts, size):
            a = Polytope(subset)
            anchor = tuple(min(v[i] for v in a.vertices) for i in range(r.ambient_dim))
            a = a.translate(tuple(-x for x in anchor))
            seen.setdefault(a.vertices, a)
    pairs = []
    facets = r.facets()
    for a in seen.values():
        shifted = [HalfSpace(h.normal, h.offset - a.min_support(h.normal)) for h in facets]
        res = resolve_hpolyhedron(shifted, r.ambient_dim)
        if res is None or not res.vertices:
            continue
        lo = [min(v[i] for v in res.vertices) for i in range(r.ambient_dim)]
        hi = [max(v[i] for v in res.vertices) for i in range(r.ambient_dim)]
        from math import ceil, floor

        cand = []
        for p in itertools.product(*(range(ceil(l), floor(h) + 1) for l, h in zip(lo, hi))):
            if all(h.contains(p) for h in shifted):
                cand.append(p)
        if not cand:
            continue
        b = Polytope(cand)
        if minkowski_sum(a, b) == r:
            pairs.append((a, b))
    pairs.sort(key=lambda ab: (ab[0].vertices, ab[1].vertices))
    return pairs


def classify_weakly_sporadic_width1(jobs=1):
    """Width-1 weakly sporadic classes: Cayley polytopes of reflexive-polygon
    summand pairs, plus the four explicit small-degree polytopes."""
    candidates = []
    for refl in reflexive_polygons(jobs=jobs):
        for a, b in minkowski_summand_pairs(refl):
            pts = [(0,) + v for v in a.vertices] + [(1,) + v for v in b.vertices]
            p = Polytope(pts)
            if p.intrinsic_dim == 3:
                candidates.append((p, "width1_gorenstein2"))
    candidates.append((simplex(3), "width1_small_degree"))
    candidates.append((lawrence_prism(1, 1, 0), "width1_small_degree"))
    candidates.append((lawrence_prism(2, 0, 0), "width1_small_degree"))
    candidates.append((pyr_2delta2(), "width1_small_degree"))
    by_digest = {}
    for p, prov in candidates:
        nf = affine_normal_form(p)
        by_digest.setdefault(nf.digest, (nf.canonical_vertices, prov))
    items = [(matrix, prov) for matrix, prov in by_digest.values()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_analyze_job, items, chunksize=4))
    else:
        records = [_analyze_job(item) for item in items]
    out = [r for r in records if r.weakly_sporadic]
    return sorted(out, key=lambda r: r.digest)


def classify_weakly_sporadic_all(jobs=1, store=None):
    """All 114 weakly sporadic non-sporadic classes (width 1 and width 2)."""
    width2 = classify_weakly_sporadic_width2(jobs=jobs, store=store)
    width1 = classify_weakly_sporadic_width1(jobs=jobs)
    by_digest = {}
    for r in width2 + width1:
        by_digest.setdefault(r.digest, r)
    return sorted(by_digest.values(), key=lambda r: r.digest)


def classify_sporadic(jobs=1, store=None):
    """All sporadic F-hollow classes inside the three maximal simplices."""
    store = store if store is not None else DedupStore()
    provenance_of = {}
    all_classes = {}
    for label, root in sporadic_roots():
        classes = subpolytope_classes(root, store=store, jobs=jobs, expand_filter="width2")
        for c in classes:
            nf_digest = affine_normal_form(c).digest
            if nf_digest not in provenance_of:
                provenance_of[nf_digest] = label
            all_classes[nf_digest] = c
    items = []
    for digest, c in sorted(all_classes.items()):
        items.append((affine_normal_form(c).canonical_vertices, provenance_of[digest]))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_analyze_job, items, chunksize=8))
    else:
        records = [_analyze_job(item) for item in items]
    out = [r for r in records if r.f_hollow and r.sporadic]
    return sorted(out, key=lambda r: r.digest)


def bipyramid_census(records):
    """Count classes that are bipyramids: five vertices, two of them strictly
    on opposite sides of the others' plane with the connecting segment meeting
    that triangle's relative interior."""
    count = 0
    for r in records:
        p = polytope_from_normal_form(r.vertices)
        if len(p.vertices) != 5:
            continue
        if _is_bipyramid(p):
            count += 1
    return count


def _is_bipyramid(p):
    verts = p.vertices
    for apexes in itertools.combinations(range(5), 2):
        tri = [verts[i] for i in range(5) if i not in apexes]
        a1, a2 = verts[apexes[0]], verts[apexes[1]]
        base = [vsub(tri[1], tri[0]), vsub(tri[2], tri[0])]
        if rank(base) != 2:
            continue
        normal = kernel_basis(base)
        if len(normal) != 1:
            continue
        n = normal[0]
        c = dot(tri[0], n)
        v1 = dot(a1, n) - c
        v2 = dot(a2, n) - c
        if v1 == 0 or v2 == 0 or (v1 > 0) == (v2 > 0):
            continue
        t = Fraction(-v1, v2 - v1)
        x = tuple(a1[i] + t * (a2[i] - a1[i]) for i in range(3))
        lam = solve_square(
            [[tri[1][i] - tri[0][i], tri[2][i] - tri[0][i], n[i]] for i in range(3)],
            [x[i] - tri[0][i] for i in range(3)],
        )
        if lam is None:
            continue
        l1, l2, _ = lam
        if l1 > 0 and l2 > 0 and l1 + l2 < 1:
            return True
    return False
