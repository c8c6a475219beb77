"""Embedded Eulerian digraphs with alternating rotations.

An :class:`EmbeddedDigraph` records a digraph together with a rotation system:
at every vertex a cyclic sequence of darts, each dart being an (arc, direction)
incidence.  When the rotation strictly alternates outgoing and incoming darts
and the traced faces satisfy Euler's formula V - A + F = 2, the data describes
a spherical embedding in which every face is a directed cycle (a plane
alternating dimap).

Rotations are stored counterclockwise as seen from outside the sphere.  The
"left" successor of an arc is fixed as next-in-stored-order after the arc's
incoming dart; the "right" successor is previous-in-stored-order.  Any
consistent global convention gives the same orbit structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

OUT = "out"
IN = "in"


class Dart(NamedTuple):
    direction: str  # "out" or "in"
    arc: int


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int


@dataclass(frozen=True)
class FaceWalk:
    """Directed closed walk bounding one face; `side` names the trace orbit."""

    arcs: tuple[int, ...]
    side: str  # "left" or "right"

    def __len__(self):
        return len(self.arcs)


@dataclass(frozen=True)
class EmbeddedDigraph:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]
    rotation: Mapping[int, tuple[Dart, ...]]

    def arc(self, arc_id: int) -> Arc:
        return self.arcs[arc_id]

    def degree(self, v) -> int:
        """Out-degree (= in-degree for valid alternating rotations)."""
        return sum(1 for d in self.rotation[v] if d.direction == OUT)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)


def _normalize_rotation(darts: Iterable[Dart]) -> tuple[Dart, ...]:
    """Rotate a cyclic dart sequence so it starts with an outgoing dart."""
    seq = [Dart(*d) for d in darts]
    for i, d in enumerate(seq):
        if d.direction == OUT:
            return tuple(seq[i:] + seq[:i])
    return tuple(seq)


def make_digraph(vertices, arcs, rotation, normalize: bool = True) -> EmbeddedDigraph:
    """Build an EmbeddedDigraph; constructors normalise rotations to start out."""
    rot = {}
    for v, darts in rotation.items():
        seq = tuple(Dart(*d) for d in darts)
        rot[v] = _normalize_rotation(seq) if normalize else seq
    return EmbeddedDigraph(tuple(vertices), tuple(arcs), rot)


def _structural_errors(D: EmbeddedDigraph) -> list[str]:
    errors = []
    vset = set(D.vertices)
    if len(vset) != len(D.vertices):
        errors.append("duplicate vertex ids")
    for i, arc in enumerate(D.arcs):
        if arc.id != i:
            errors.append(f"arc ids not dense at position {i}")
            break
    for arc in D.arcs:
        if arc.tail not in vset or arc.head not in vset:
            errors.append(f"arc {arc.id} references unknown vertex")
    if set(D.rotation) != vset:
        errors.append("rotation does not cover exactly the vertex set")
        return errors
    seen: dict[Dart, int] = {}
    for v in D.vertices:
        for d in D.rotation[v]:
            if d in seen:
                errors.append(f"dart {d} appears twice")
            seen[d] = v
    for arc in D.arcs:
        od, idd = Dart(OUT, arc.id), Dart(IN, arc.id)
        if seen.get(od) != arc.tail:
            errors.append(f"outgoing dart of arc {arc.id} missing at its tail")
        if seen.get(idd) != arc.head:
            errors.append(f"incoming dart of arc {arc.id} missing at its head")
    if len(seen) != 2 * len(D.arcs):
        errors.append("rotations carry darts of unknown arcs")
    return errors


def _alternation_errors(D: EmbeddedDigraph) -> list[str]:
    errors = []
    for v in D.vertices:
        darts = D.rotation[v]
        if len(darts) == 0:
            errors.append(f"isolated vertex {v}")
            continue
        if len(darts) % 2 == 1:
            errors.append(f"alternation violated at vertex {v}")
            continue
        for i, d in enumerate(darts):
            if d.direction == darts[(i + 1) % len(darts)].direction:
                errors.append(f"alternation violated at vertex {v}")
                break
    return errors


def _connected(D: EmbeddedDigraph) -> bool:
    if not D.vertices:
        return False
    adj: dict[int, list[int]] = {v: [] for v in D.vertices}
    for arc in D.arcs:
        adj[arc.tail].append(arc.head)
        adj[arc.head].append(arc.tail)
    seen = {D.vertices[0]}
    stack = [D.vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(D.vertices)


def validate(D: EmbeddedDigraph) -> list[str]:
    """Check every invariant; returns the list of violations (empty if valid)."""
    errors = _structural_errors(D)
    if errors:
        return errors
    if D.n_arcs < 2:
        errors.append("degenerate embedding: fewer than two arcs")
    errors.extend(_alternation_errors(D))
    if not _connected(D):
        errors.append("underlying graph is disconnected")
    if errors:
        return errors
    faces = trace_faces(D)
    euler = D.n_vertices - D.n_arcs + len(faces)
    if euler != 2:
        errors.append(f"not spherical: V - A + F = {euler}, expected 2")
    return errors


def trace_faces(D: EmbeddedDigraph) -> list[FaceWalk]:
    """Orbits of the left and right trace permutations on arcs.

    Left successor of arc a: at head(a), the outgoing dart immediately after
    a's incoming dart in rotation order.  Right successor: the one immediately
    before.  Every arc lies in exactly one face of each side.
    """
    errors = _structural_errors(D) or _alternation_errors(D)
    if not errors and not _connected(D):
        errors = ["underlying graph is disconnected"]
    if errors:
        raise ValueError("cannot trace faces: " + "; ".join(errors))

    pos = {}
    for v in D.vertices:
        for i, d in enumerate(D.rotation[v]):
            pos[d] = (v, i)

    def successor(arc_id: int, step: int) -> int:
        v, i = pos[Dart(IN, arc_id)]
        darts = D.rotation[v]
        nxt = darts[(i + step) % len(darts)]
        return nxt.arc

    faces = []
    for side, step in ((("left"), 1), (("right"), -1)):
        unseen = set(range(D.n_arcs))
        orbits = []
        while unseen:
            start = min(unseen)
            walk = [start]
            unseen.discard(start)
            cur = successor(start, step)
            while cur != start:
                walk.append(cur)
                unseen.discard(cur)
                cur = successor(cur, step)
            orbits.append(FaceWalk(arcs=tuple(walk), side=side))
        orbits.sort(key=lambda f: f.arcs[0])
        faces.extend(orbits)
    return faces


def walk_vertices(D: EmbeddedDigraph, face: FaceWalk) -> tuple[int, ...]:
    """Vertex sequence visited by a face walk (tails of its arcs)."""
    return tuple(D.arc(a).tail for a in face.arcs)


def underlying_graph_checks(D: EmbeddedDigraph) -> dict:
    """Loops, cut vertices and 2-edge-cuts of the undirected multigraph.

    Brute force throughout; instances are desk-scale.
    """
    edges = [(arc.tail, arc.head) for arc in D.arcs]
    has_loop = any(t == h for t, h in edges)

    def connected_without(skip_vertices=(), skip_edges=()) -> bool:
        verts = [v for v in D.vertices if v not in skip_vertices]
        if not verts:
            return True
        adj = {v: [] for v in verts}
        for idx, (t, h) in enumerate(edges):
            if idx in skip_edges or t in skip_vertices or h in skip_vertices:
                continue
            adj[t].append(h)
            adj[h].append(t)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(verts)

    has_cut_vertex = any(not connected_without(skip_vertices=(v,)) for v in D.vertices) \
        if D.n_vertices > 2 else False
    m = len(edges)
    has_2_edge_cut = any(
        not connected_without(skip_edges=(i, j))
        for i in range(m) for j in range(i + 1, m)
    )
    return {"has_loop": has_loop, "has_cut_vertex": has_cut_vertex,
            "has_2_edge_cut": has_2_edge_cut}


def dimaps_equal(D1: EmbeddedDigraph, D2: EmbeddedDigraph) -> bool:
    """Equality of two dimaps up to cyclic shifts of each rotation."""
    if D1.vertices != D2.vertices:
        return False
    if [(a.tail, a.head) for a in D1.arcs] != [(a.tail, a.head) for a in D2.arcs]:
        return False
    for v in D1.vertices:
        r1, r2 = D1.rotation[v], D2.rotation[v]
        if len(r1) != len(r2):
            return False
        doubled = r2 + r2
        if not any(doubled[i:i + len(r1)] == r1 for i in range(len(r2))):
            return False
    return True


def canonical_form(D: EmbeddedDigraph):
    """Canonical relabelling by BFS from the lowest vertex id along rotations.

    Two dimaps related by a relabelling that preserves rotations map to equal
    canonical forms.  Used for the round-trip tests of the Tutte construction.
    """
    start = min(D.vertices)
    order = {start: 0}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for d in D.rotation[v]:
            arc = D.arc(d.arc)
            w = arc.head if d.direction == OUT else arc.tail
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    arc_key = {}
    for arc in sorted(D.arcs, key=lambda a: (order[a.tail], order[a.head], a.id)):
        arc_key[arc.id] = len(arc_key)
    rots = []
    for v in sorted(D.vertices, key=lambda x: order[x]):
        relabelled = [(d.direction, arc_key[d.arc]) for d in D.rotation[v]]
        best = min(tuple(relabelled[i:] + relabelled[:i]) for i in range(len(relabelled)))
        rots.append(best)
    arcs = sorted(((arc_key[a.id], order[a.tail], order[a.head]) for a in D.arcs))
    return (len(D.vertices), tuple(arcs), tuple(rots))


# --- dimap.v1 JSON ---------------------------------------------------------

def dimap_to_json(D: EmbeddedDigraph) -> dict:
    return {
        "vertices": list(D.vertices),
        "arcs": [{"id": a.id, "tail": a.tail, "head": a.head} for a in D.arcs],
        "rotation": {str(v): [[d.direction, d.arc] for d in D.rotation[v]]
                     for v in D.vertices},
    }


def dimap_from_json(data: dict) -> EmbeddedDigraph:
    vertices = tuple(int(v) for v in data["vertices"])
    arcs = tuple(Arc(int(a["id"]), int(a["tail"]), int(a["head"])) for a in data["arcs"])
    rotation = {int(v): tuple(Dart(str(d[0]), int(d[1])) for d in darts)
                for v, darts in data["rotation"].items()}
    return EmbeddedDigraph(vertices, arcs, rotation)


def save_dimap(D: EmbeddedDigraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(dimap_to_json(D), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_dimap(path) -> EmbeddedDigraph:
    with open(path) as fh:
        return dimap_from_json(json.load(fh))
