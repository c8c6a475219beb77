"""Generative constructions: dipoles, wedges, arc splices, face subdivision,
and the recursive lower-bound family grown from the bundled base fixture."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combmap import (IN, OUT, Arc, Dart, EmbeddedDigraph, FaceWalk,
                      make_digraph, trace_faces, validate, walk_vertices)
from .intalg import log_int, tree_number
from .trinity import Triangulation, derive, triangulate


def dipole(m: int) -> EmbeddedDigraph:
    """Two vertices joined by m arcs each way, rotations alternating.

    Arc 2i runs 0 -> 1 and arc 2i+1 runs 1 -> 0.  The embedding is spherical
    with 2m digon faces; the sandpile group is Z_m.
    """
    if m < 1:
        raise ValueError("dipole needs m >= 1")
    arcs = []
    for i in range(m):
        arcs.append(Arc(2 * i, 0, 1))
        arcs.append(Arc(2 * i + 1, 1, 0))
    rot0 = []
    for i in range(m):
        rot0.append(Dart(OUT, 2 * i))
        rot0.append(Dart(IN, 2 * i + 1))
    rot1 = []
    for i in reversed(range(m)):
        rot1.append(Dart(OUT, 2 * i + 1))
        rot1.append(Dart(IN, 2 * i))
    return make_digraph((0, 1), arcs, {0: rot0, 1: rot1})


def _relabel_arcs(D: EmbeddedDigraph, vmap, offset: int, drop=None):
    """Arcs of D with vertices mapped and ids shifted; `drop` is left out."""
    arcs = []
    amap = {}
    for a in D.arcs:
        if a.id == drop:
            continue
        amap[a.id] = offset + len(arcs)
        arcs.append(Arc(amap[a.id], vmap[a.tail], vmap[a.head]))
    return arcs, amap


def wedge(D1: EmbeddedDigraph, v1, D2: EmbeddedDigraph, v2) -> EmbeddedDigraph:
    """Identify v1 in D1 with v2 in D2.

    The merged vertex's rotation is rotation(v1) followed by rotation(v2);
    both start with an outgoing dart, so alternation is preserved.  The
    sandpile group of the result is the direct sum of the parts.
    """
    for D, v in ((D1, v1), (D2, v2)):
        if v not in D.vertices:
            raise ValueError(f"vertex {v} not in digraph")
        if validate(D):
            raise ValueError("wedge requires valid inputs")
    n1 = D1.n_vertices
    vmap2 = {v2: v1}
    for w in sorted(x for x in D2.vertices if x != v2):
        vmap2[w] = n1 + len(vmap2) - 1
    arcs2, amap2 = _relabel_arcs(D2, vmap2, D1.n_arcs)

    rotation = {v: list(D1.rotation[v]) for v in D1.vertices}
    for x in D2.vertices:
        mapped = [Dart(d.direction, amap2[d.arc]) for d in D2.rotation[x]]
        if x == v2:
            rotation[v1] = rotation[v1] + mapped
        else:
            rotation[vmap2[x]] = mapped
    verts = sorted(set(D1.vertices) | set(vmap2.values()))
    return make_digraph(verts, list(D1.arcs) + arcs2, rotation)


def arc_splice(D1: EmbeddedDigraph, a1: int, D2: EmbeddedDigraph, a2: int) -> EmbeddedDigraph:
    """Splice two dimaps along arcs a1: u -> u' and a2: w -> w'.

    Removes both arcs, identifies u with w', and adds one arc from w to u',
    merging the two pairs of incident faces.  Tree numbers multiply.
    """
    if not (0 <= a1 < D1.n_arcs) or not (0 <= a2 < D2.n_arcs):
        raise ValueError("arc id out of range")
    for D in (D1, D2):
        if validate(D):
            raise ValueError("arc_splice requires valid inputs")
    u, u_prime = D1.arc(a1).tail, D1.arc(a1).head
    w, w_prime = D2.arc(a2).tail, D2.arc(a2).head

    n1 = D1.n_vertices
    vmap2 = {w_prime: u}
    for x in sorted(v for v in D2.vertices if v != w_prime):
        vmap2[x] = n1 + len(vmap2) - 1
    arcs1, amap1 = _relabel_arcs(D1, {v: v for v in D1.vertices}, 0, drop=a1)
    arcs2, amap2 = _relabel_arcs(D2, vmap2, len(arcs1), drop=a2)
    new_id = len(arcs1) + len(arcs2)
    new_arc = Arc(new_id, vmap2[w], u_prime)

    def map1(d: Dart) -> Dart:
        if d == Dart(IN, a1):
            return Dart(IN, new_id)
        return Dart(d.direction, amap1[d.arc])

    def map2(d: Dart) -> Dart:
        if d == Dart(OUT, a2):
            return Dart(OUT, new_id)
        return Dart(d.direction, amap2[d.arc])

    # w' opens where its removed in-dart sat; the opened run replaces a1's
    # out-dart inside u's rotation, which keeps the splice alternating
    seq = list(D2.rotation[w_prime])
    cut = seq.index(Dart(IN, a2))
    opened = [map2(d) for d in seq[cut + 1:] + seq[:cut]]

    rotation = {}
    for v in D1.vertices:
        rot = []
        for d in D1.rotation[v]:
            if d == Dart(OUT, a1):
                rot.extend(opened)
            else:
                rot.append(map1(d))
        rotation[v] = rot
    for x in D2.vertices:
        if x == w_prime:
            continue
        rotation[vmap2[x]] = [map2(d) for d in D2.rotation[x]]

    verts = sorted(set(D1.vertices) | set(vmap2.values()))
    return make_digraph(verts, arcs1 + arcs2 + [new_arc], rotation)


def abelian_realization(ms) -> Triangulation:
    """Path-of-dipoles triangulation whose canonical group is + Z_{m_i}."""
    ms = list(ms)
    if not ms:
        raise ValueError("at least one factor required")
    for m in ms:
        if m < 2:
            raise ValueError("all factors must be >= 2")
    D = dipole(ms[0])
    tip = 1
    for m in ms[1:]:
        D = wedge(D, tip, dipole(m), 0)
        tip = D.n_vertices - 1
    return triangulate(D)


def subdivide_face(D: EmbeddedDigraph, f: FaceWalk) -> EmbeddedDigraph:
    """Insert a hub into face f and join it both ways to every face vertex.

    Replaces a face of size k by k triangles and k digons.  Preconditions
    (reported individually): k > 2, every face vertex has out-degree two,
    and D has more than k vertices.
    """
    problems = validate(D)
    if problems:
        raise ValueError("invalid dimap: " + "; ".join(problems))
    faces = trace_faces(D)
    if f not in faces:
        raise ValueError("f is not a face of D")
    k = len(f.arcs)
    vs = walk_vertices(D, f)
    errors = []
    if k <= 2:
        errors.append("k > 2 required")
    if len(set(vs)) != k:
        errors.append("face walk repeats a vertex")
    else:
        bad = [v for v in vs if D.degree(v) != 2]
        if bad:
            errors.append(f"face vertices must have out-degree 2, got violations at {bad}")
    if D.n_vertices <= k:
        errors.append("|V(D)| > k required")
    if errors:
        raise ValueError("; ".join(errors))

    hub = D.n_vertices
    A = D.n_arcs
    arcs = list(D.arcs)
    p = {}  # arcs v_j -> hub
    q = {}  # arcs hub -> v_j
    for j, v in enumerate(vs):
        p[j] = Arc(A + 2 * j, v, hub)
        q[j] = Arc(A + 2 * j + 1, hub, v)
        arcs.extend((p[j], q[j]))

    rotation = {v: list(D.rotation[v]) for v in D.vertices}
    for j, v in enumerate(vs):
        e_prev = f.arcs[(j - 1) % k]  # arc arriving at v along the walk
        rot = rotation[v]
        i = rot.index(Dart(IN, e_prev))
        if f.side == "left":
            rot[i + 1:i + 1] = [Dart(OUT, p[j].id), Dart(IN, q[j].id)]
        else:
            rot[i:i] = [Dart(IN, q[j].id), Dart(OUT, p[j].id)]

    # hub dart order chosen so the new faces are exactly k triangles
    # (one per old boundary arc) and k digons
    hub_rot = []
    if f.side == "left":
        for j in [0] + list(range(k - 1, 0, -1)):
            hub_rot.append(Dart(OUT, q[j].id))
            hub_rot.append(Dart(IN, p[j].id))
    else:
        for j in range(k):
            hub_rot.append(Dart(OUT, q[j].id))
            hub_rot.append(Dart(IN, p[(j + 1) % k].id))
    rotation[hub] = hub_rot

    return make_digraph(list(D.vertices) + [hub], arcs, rotation)


def recursion_weight(k: int) -> Fraction:
    """The claimed per-step growth factor sum_{j<k} (k / 2^j) C(k-1, j)."""
    return sum(Fraction(k, 2 ** j) * math.comb(k - 1, j) for j in range(k))


@dataclass(frozen=True)
class FamilyStep:
    step: int
    triangulation: Triangulation
    t: int
    tree_number: int

    @property
    def exponent(self) -> float:
        """Running growth exponent tree_number ** (1/t)."""
        return math.exp(log_int(self.tree_number) / self.t)


def eligible_squares(D: EmbeddedDigraph) -> list[FaceWalk]:
    """Size-4 faces whose vertices all have out-degree two."""
    return [f for f in trace_faces(D)
            if len(f.arcs) == 4 and all(D.degree(v) == 2 for v in walk_vertices(D, f))]


def lower_bound_family(steps: int, base: EmbeddedDigraph | None = None) -> list[FamilyStep]:
    """Grow the recursive family from the bundled base (t = 12, tree number 15).

    Each step subdivides the distinguished size-4 face whose vertices all have
    out-degree two (the face produced by the previous step), then passes to
    the colour class of the new digon vertices for the next round.  Tree
    numbers are exact integers.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if base is None:
        from .fixtures import fig3_dimap
        base = fig3_dimap()
    D = base
    squares = eligible_squares(D)
    if not squares:
        raise ValueError("base has no size-4 face with all vertices of out-degree 2")
    target = min(squares, key=lambda g: min(walk_vertices(D, g)))
    out = [FamilyStep(0, triangulate(D), D.n_arcs, tree_number(D))]
    for n in range(1, steps + 1):
        D2 = subdivide_face(D, target)
        tn = tree_number(D2)
        T2 = triangulate(D2)
        hub = D2.n_vertices - 1
        faces2 = trace_faces(D2)
        digons = [fi for fi, g in enumerate(faces2)
                  if len(g.arcs) == 2 and hub in walk_vertices(D2, g)]
        if len(digons) != 4:
            raise RuntimeError("expected exactly four hub digons")
        zids = [D2.n_vertices + fi for fi in digons]
        cls = {T2.colours[z] for z in zids}
        if len(cls) != 1:
            raise RuntimeError("hub digon vertices fell into different colour classes")
        colour = cls.pop()
        members = T2.colour_class(colour)
        vmap = {v: i for i, v in enumerate(members)}
        new_vs = {vmap[z] for z in zids}
        D = derive(T2, colour)
        matches = [g for g in trace_faces(D)
                   if len(g.arcs) == 4 and set(walk_vertices(D, g)) == new_vs]
        if len(matches) != 1:
            raise RuntimeError("could not identify the new size-4 face")
        target = matches[0]
        out.append(FamilyStep(n, T2, D2.n_arcs, tn))
    return out
