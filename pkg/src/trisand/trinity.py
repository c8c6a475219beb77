"""Face 2-coloured spherical triangulations and the Tutte correspondence.

A :class:`Triangulation` is a combinatorial map: vertices carry one of three
colours R/C/S, faces are triangles properly 2-coloured white/black, and every
vertex carries a cyclic rotation of its incident edges.  Face boundaries are
stored in the orientation compatible with the rotations: for a boundary
``[(E1,V1), (E2,V2), (E3,V3)]`` the edge following ``Ei`` in the rotation at
``Vi`` is ``E(i+1)``.

The two directions of the correspondence:

* :func:`derive` maps a triangulation and a colour class I to the directed
  Eulerian spherical embedding D_I (one arc per black face, running towards
  the white face across the opposite edge).
* :func:`triangulate` maps a plane alternating dimap back to a triangulation
  (one new vertex per face; each arc splits into a black and a white
  triangle), inverse to `derive` on the class of original vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .combmap import (IN, OUT, Arc, Dart, EmbeddedDigraph, FaceWalk,
                      make_digraph, trace_faces, validate)
from .intalg import AbelianGroupShape, sandpile_group, tree_number

COLOURS = ("R", "C", "S")


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def ends(self) -> frozenset:
        return frozenset((self.u, self.v))


@dataclass(frozen=True)
class Face:
    id: int
    colour: str  # "white" or "black"
    boundary: tuple[tuple[int, int], ...]  # ((edge, vertex), ...) of length 3

    def vertex_set(self) -> frozenset:
        return frozenset(v for _, v in self.boundary)

    def edge_set(self) -> frozenset:
        return frozenset(e for e, _ in self.boundary)


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[int, ...]
    colours: Mapping[int, str]
    labels: Mapping[int, str]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    rotation: Mapping[int, tuple[int, ...]]

    @property
    def t(self) -> int:
        """Number of faces of each colour."""
        return sum(1 for f in self.faces if f.colour == "white")

    def colour_class(self, colour: str) -> list[int]:
        return sorted(v for v in self.vertices if self.colours[v] == colour)

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def edge(self, eid: int) -> Edge:
        return self.edges[eid]


def underlying_simple(T: Triangulation) -> bool:
    """True when no two edges share the same endpoint pair."""
    pairs = [e.ends() for e in T.edges]
    return len(pairs) == len(set(pairs))


def _edge_faces(T: Triangulation) -> dict[int, list[Face]]:
    by_edge: dict[int, list[Face]] = {e.id: [] for e in T.edges}
    for f in T.faces:
        for e in f.edge_set():
            by_edge[e].append(f)
    return by_edge


def _rotation_successors(T: Triangulation) -> dict[tuple[int, int], int]:
    succ = {}
    for v in T.vertices:
        rot = T.rotation[v]
        for i, e in enumerate(rot):
            succ[(v, e)] = rot[(i + 1) % len(rot)]
    return succ


def validate_triangulation(T: Triangulation) -> list[str]:
    """All Triangulation invariants; empty list when valid."""
    errors = []
    if len(set(T.vertices)) != len(T.vertices):
        errors.append("duplicate vertex ids")
    for v in T.vertices:
        if T.colours.get(v) not in COLOURS:
            errors.append(f"vertex {v} has no colour in {{R,C,S}}")
    for i, e in enumerate(T.edges):
        if e.id != i:
            errors.append("edge ids not dense")
            break
        if e.u == e.v:
            errors.append(f"edge {e.id} is a loop")
    if errors:
        return errors

    whites = [f for f in T.faces if f.colour == "white"]
    blacks = [f for f in T.faces if f.colour == "black"]
    if len(whites) != len(blacks):
        errors.append("face colour classes differ in size")
    t = len(whites)
    if t < 2:
        errors.append("degenerate triangulation: fewer than two faces per colour")

    for f in T.faces:
        if len(f.boundary) != 3:
            errors.append(f"face {f.id} is not a triangle")
            continue
        verts = [v for _, v in f.boundary]
        if len(set(verts)) != 3:
            errors.append(f"face {f.id} repeats a vertex")
            continue
        if {T.colours[v] for v in verts} != set(COLOURS):
            errors.append(f"face {f.id} is not rainbow coloured")
        for i in range(3):
            e_next = f.boundary[(i + 1) % 3][0]
            v_here = f.boundary[i][1]
            edge = T.edges[e_next]
            v_next = f.boundary[(i + 1) % 3][1]
            if edge.ends() != frozenset((v_here, v_next)):
                errors.append(f"face {f.id} boundary walk is inconsistent")
                break
    if errors:
        return errors

    for eid, fs in _edge_faces(T).items():
        if len(fs) != 2:
            errors.append(f"edge {eid} lies in {len(fs)} faces, expected 2")
        elif fs[0].colour == fs[1].colour:
            errors.append(f"edge {eid} separates two {fs[0].colour} faces")

    succ = _rotation_successors(T)
    used_corners = set()
    for f in T.faces:
        for i in range(3):
            e_in, v = f.boundary[i][0], f.boundary[i][1]
            e_out = f.boundary[(i + 1) % 3][0]
            if succ.get((v, e_in)) != e_out:
                errors.append(f"face {f.id} disagrees with the rotation at vertex {v}")
            if (v, e_in) in used_corners:
                errors.append(f"corner ({v}, edge {e_in}) used twice")
            used_corners.add((v, e_in))
    total_corners = sum(len(T.rotation[v]) for v in T.vertices)
    if len(used_corners) != total_corners:
        errors.append("rotations carry corners not covered by any face")

    euler = len(T.vertices) - len(T.edges) + len(T.faces)
    if euler != 2:
        errors.append(f"not spherical: V - E + F = {euler}, expected 2")

    # connectivity over edges
    if T.vertices:
        adj = {v: [] for v in T.vertices}
        for e in T.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {T.vertices[0]}
        stack = [T.vertices[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(T.vertices):
            errors.append("underlying graph is disconnected")
    return errors


def three_colour(T: Triangulation) -> dict[int, str]:
    """Recompute the forced proper vertex 3-colouring by flood fill.

    Requires a proper face 2-colouring (checked first); the triangle of lowest
    face id seeds the classes R, C, S in boundary-walk order.  Raises
    ValueError on any propagation conflict.
    """
    by_edge = _edge_faces(T)
    for eid, fs in by_edge.items():
        if len(fs) != 2 or fs[0].colour == fs[1].colour:
            raise ValueError(
                "not a proper face 2-coloured spherical triangulation: "
                f"edge {eid} does not separate a white and a black face")

    colours: dict[int, str] = {}
    seed = min(T.faces, key=lambda f: f.id)
    for (_, v), c in zip(seed.boundary, COLOURS):
        colours[v] = c

    # across every edge the two opposite vertices share a colour
    pending = [seed.id]
    done = set()
    faces_by_id = {f.id: f for f in T.faces}
    while pending:
        f = faces_by_id[pending.pop()]
        if f.id in done:
            continue
        done.add(f.id)
        fverts = f.vertex_set()
        for eid in f.edge_set():
            edge = T.edges[eid]
            mine = next(iter(fverts - edge.ends()))
            for g in by_edge[eid]:
                if g.id == f.id:
                    continue
                theirs = next(iter(g.vertex_set() - edge.ends()))
                if mine in colours:
                    if theirs in colours and colours[theirs] != colours[mine]:
                        raise ValueError(
                            "colour propagation conflict: input is not a valid "
                            "face 2-coloured spherical triangulation")
                    colours[theirs] = colours[mine]
                if g.id not in done:
                    pending.append(g.id)

    if set(colours) != set(T.vertices):
        raise ValueError("colour propagation did not reach every vertex")
    for f in T.faces:
        if {colours[v] for v in f.vertex_set()} != set(COLOURS):
            raise ValueError("colour propagation conflict: a face is not rainbow")
    return colours


def derive(T: Triangulation, colour: str) -> EmbeddedDigraph:
    """Directed Eulerian spherical embedding D_I for colour class I.

    One arc per black face: from the I-vertex of the black face to the
    I-vertex of the white face sharing the black face's opposite edge.  The
    rotation is inherited from the triangulation, so it alternates.
    """
    if colour not in COLOURS:
        raise ValueError(f"unknown colour class {colour!r}")
    members = T.colour_class(colour)
    vmap = {v: i for i, v in enumerate(members)}
    by_edge = _edge_faces(T)

    def i_vertex(f: Face):
        for v in f.vertex_set():
            if T.colours[v] == colour:
                return v
        raise ValueError(f"face {f.id} has no {colour}-vertex")

    def opposite_edge(f: Face, v):
        for e, _ in f.boundary:
            if v not in T.edges[e].ends():
                return e
        raise ValueError("triangle without an opposite edge")

    blacks = sorted((f for f in T.faces if f.colour == "black"), key=lambda f: f.id)
    arc_of_black: dict[int, int] = {}
    arcs = []
    for k, b in enumerate(blacks):
        x = i_vertex(b)
        e = opposite_edge(b, x)
        white = next(f for f in by_edge[e] if f.id != b.id)
        arcs.append(Arc(k, vmap[x], vmap[i_vertex(white)]))
        arc_of_black[b.id] = k

    # white face at i -> the arc arriving via it
    arc_into: dict[int, int] = {}
    for f in T.faces:
        if f.colour != "white":
            continue
        i = i_vertex(f)
        e = opposite_edge(f, i)
        black = next(g for g in by_edge[e] if g.id != f.id)
        arc_into[f.id] = arc_of_black[black.id]

    corner_face: dict[tuple[int, int, int], Face] = {}
    for f in T.faces:
        for i in range(3):
            e_in, v = f.boundary[i]
            e_out = f.boundary[(i + 1) % 3][0]
            corner_face[(v, e_in, e_out)] = f

    rotation = {}
    for v in members:
        rot = T.rotation[v]
        darts = []
        for i, e in enumerate(rot):
            f = corner_face[(v, e, rot[(i + 1) % len(rot)])]
            if f.colour == "black":
                darts.append(Dart(OUT, arc_of_black[f.id]))
            else:
                darts.append(Dart(IN, arc_into[f.id]))
        rotation[vmap[v]] = darts
    return make_digraph(range(len(members)), arcs, rotation)


def triangulate(D: EmbeddedDigraph) -> Triangulation:
    """Face 2-coloured spherical triangulation from a plane alternating dimap.

    Inserts one new vertex per face of D; each arc x->y with side vertices
    u (left face) and w (right face) becomes a black triangle {x,u,w} and a
    white triangle {y,u,w}.  Original vertices keep their ids and form class
    R; left-face vertices form class C, right-face vertices class S.
    """
    problems = validate(D)
    if problems:
        raise ValueError("invalid dimap: " + "; ".join(problems))
    if list(D.vertices) != list(range(D.n_vertices)):
        raise ValueError("triangulate expects dense vertex ids 0..n-1")

    n, t = D.n_vertices, D.n_arcs
    faces = trace_faces(D)
    zvert = {fi: n + fi for fi in range(len(faces))}
    side_of = {}
    pos_in = {}
    for fi, f in enumerate(faces):
        for pos, a in enumerate(f.arcs):
            side_of.setdefault(a, {})[f.side] = fi
            pos_in[(fi, a)] = pos

    colours = {v: "R" for v in D.vertices}
    labels = {v: f"r{v}" for v in D.vertices}
    c_count = s_count = 0
    for fi, f in enumerate(faces):
        if f.side == "left":
            colours[zvert[fi]] = "C"
            labels[zvert[fi]] = f"c{c_count}"
            c_count += 1
        else:
            colours[zvert[fi]] = "S"
            labels[zvert[fi]] = f"s{s_count}"
            s_count += 1

    # edges: one crossing edge per arc, then one edge per face corner
    edges = [Edge(a, zvert[side_of[a]["left"]], zvert[side_of[a]["right"]])
             for a in range(t)]
    corner_edge: dict[tuple[int, int], int] = {}
    for fi, f in enumerate(faces):
        for pos, a in enumerate(f.arcs):
            eid = len(edges)
            corner_edge[(fi, pos)] = eid
            edges.append(Edge(eid, D.arc(a).head, zvert[fi]))

    tri_faces = []
    for a in range(t):
        arc = D.arc(a)
        li, ri = side_of[a]["left"], side_of[a]["right"]
        lp, rp = pos_in[(li, a)], pos_in[(ri, a)]
        m_l, m_r = len(faces[li].arcs), len(faces[ri].arcs)
        e_xu = corner_edge[(li, (lp - 1) % m_l)]
        e_xw = corner_edge[(ri, (rp - 1) % m_r)]
        e_yu = corner_edge[(li, lp)]
        e_yw = corner_edge[(ri, rp)]
        tri_faces.append(Face(a, "black", (
            (e_xu, arc.tail), (e_xw, zvert[ri]), (a, zvert[li]))))
        tri_faces.append(Face(t + a, "white", (
            (e_yw, arc.head), (e_yu, zvert[li]), (a, zvert[ri]))))
    tri_faces.sort(key=lambda f: f.id)

    rotation: dict[int, tuple[int, ...]] = {}
    for v in D.vertices:
        darts = D.rotation[v]
        out_edges = []
        for i in range(len(darts)):
            nxt = darts[(i + 1) % len(darts)]
            if nxt.direction == IN:
                fi = side_of[nxt.arc]["right"]
            else:
                prev = darts[i]
                fi = side_of[prev.arc]["left"]
            b = nxt.arc if nxt.direction == IN else darts[i].arc
            out_edges.append(corner_edge[(fi, pos_in[(fi, b)])])
        rotation[v] = tuple(out_edges)
    for fi, f in enumerate(faces):
        m = len(f.arcs)
        seq = []
        for i in range(m):
            seq.append(f.arcs[i])  # crossing edge id equals arc id
            seq.append(corner_edge[(fi, (i - 1) % m)] if f.side == "left"
                       else corner_edge[(fi, i)])
        rotation[zvert[fi]] = tuple(seq)

    verts = tuple(range(n + len(faces)))
    return Triangulation(verts, colours, labels, tuple(edges),
                         tuple(tri_faces), rotation)


def canonical_group(T: Triangulation) -> AbelianGroupShape:
    """Common sandpile shape of the three derived dimaps (computed on one)."""
    smallest = min(COLOURS, key=lambda c: len(T.colour_class(c)))
    return sandpile_group(derive(T, smallest))


@dataclass(frozen=True)
class TrinityReport:
    tree_numbers: dict
    groups: dict

    @property
    def tree_number(self) -> int:
        return self.tree_numbers["R"]

    @property
    def group(self) -> AbelianGroupShape:
        return self.groups["R"]


def trinity_report(T: Triangulation) -> TrinityReport:
    """Tree numbers and sandpile shapes of D_R, D_C, D_S; they must agree."""
    trees = {}
    groups = {}
    for colour in COLOURS:
        D = derive(T, colour)
        trees[colour] = tree_number(D)
        groups[colour] = sandpile_group(D)
    if len(set(trees.values())) != 1 or len(set(groups.values())) != 1:
        raise RuntimeError(
            "trinity violated: tree numbers or group shapes differ across "
            f"colour classes ({trees}, {groups}); this would falsify the "
            "sandpile correspondence and indicates an implementation bug")
    return TrinityReport(trees, groups)


def triangulation_from_faces(triples: Sequence[tuple], white=None,
                             colours: Mapping | None = None) -> Triangulation:
    """Build a Triangulation from vertex triples (simple underlying graph).

    `triples` lists the faces as 3-tuples of labels.  `white`, when given, is
    the set of indices of white faces; otherwise the face adjacency graph is
    2-coloured by flood fill with face 0 white.  `colours`, when given, maps
    labels to R/C/S; otherwise the 3-colouring is propagated from face 0.
    """
    labels_sorted = sorted({x for tri in triples for x in tri}, key=str)
    vid = {lab: i for i, lab in enumerate(labels_sorted)}

    edge_id: dict[frozenset, int] = {}
    edge_triples: dict[frozenset, list[int]] = {}
    for fi, tri in enumerate(triples):
        if len(set(tri)) != 3:
            raise ValueError(f"face {fi} is not a triangle on three vertices")
        for i in range(3):
            pair = frozenset((tri[i], tri[(i + 1) % 3]))
            edge_triples.setdefault(pair, []).append(fi)
    for pair, fs in sorted(edge_triples.items(), key=lambda kv: sorted(map(str, kv[0]))):
        if len(fs) != 2:
            raise ValueError(f"edge {set(pair)} lies in {len(fs)} faces, expected 2")
        edge_id[pair] = len(edge_id)

    # face 2-colouring
    if white is None:
        side = {0: "white"}
        stack = [0]
        adj = {fi: [] for fi in range(len(triples))}
        for fs in edge_triples.values():
            adj[fs[0]].append(fs[1])
            adj[fs[1]].append(fs[0])
        while stack:
            f = stack.pop()
            for g in adj[f]:
                want = "black" if side[f] == "white" else "white"
                if g in side:
                    if side[g] != want:
                        raise ValueError("faces are not 2-colourable")
                else:
                    side[g] = want
                    stack.append(g)
        face_colour = [side[fi] for fi in range(len(triples))]
    else:
        white = set(white)
        face_colour = ["white" if fi in white else "black" for fi in range(len(triples))]

    # vertex 3-colouring
    if colours is None:
        col: dict = {}
        for x, c in zip(triples[0], COLOURS):
            col[x] = c
        changed = True
        while changed:
            changed = False
            for tri in triples:
                known = {x: col[x] for x in tri if x in col}
                if len(known) == 2:
                    missing = next(x for x in tri if x not in col)
                    col[missing] = next(iter(set(COLOURS) - set(known.values())))
                    changed = True
        if len(col) != len(labels_sorted):
            raise ValueError("3-colour propagation did not reach every vertex")
        colours = col
    for tri in triples:
        if {colours[x] for x in tri} != set(COLOURS):
            raise ValueError("triples are not properly 3-colourable with the given classes")

    # orient: white faces run r->c->s, black faces r->s->c
    def walk(tri, colour):
        by = {colours[x]: x for x in tri}
        order = ("R", "C", "S") if colour == "white" else ("R", "S", "C")
        return [by[c] for c in order]

    succ: dict[tuple[int, int], int] = {}
    boundaries = []
    for fi, tri in enumerate(triples):
        w = walk(tri, face_colour[fi])
        bnd = []
        for i in range(3):
            a, b = w[i], w[(i + 1) % 3]
            e_ab = edge_id[frozenset((a, b))]
            bnd.append((e_ab, vid[b]))
        boundaries.append(tuple(bnd))
        for i in range(3):
            e_in, v = bnd[i]
            e_out = bnd[(i + 1) % 3][0]
            key = (v, e_in)
            if key in succ:
                raise ValueError("inconsistent face orientations")
            succ[key] = e_out

    rotation = {}
    for lab in labels_sorted:
        v = vid[lab]
        incident = sorted(e for pair, e in edge_id.items() if lab in pair)
        if not incident:
            raise ValueError(f"vertex {lab} has no incident edges")
        start = incident[0]
        rot = [start]
        cur = succ.get((v, start))
        while cur is not None and cur != start:
            rot.append(cur)
            cur = succ.get((v, cur))
        if cur is None or len(rot) != len(incident):
            raise ValueError(f"rotation at {lab} does not close into one cycle")
        rotation[v] = tuple(rot)

    edges = [None] * len(edge_id)
    for pair, e in edge_id.items():
        a, b = sorted(pair, key=str)
        edges[e] = Edge(e, vid[a], vid[b])
    faces = tuple(Face(fi, face_colour[fi], boundaries[fi]) for fi in range(len(triples)))
    verts = tuple(range(len(labels_sorted)))
    vcol = {vid[lab]: colours[lab] for lab in labels_sorted}
    vlabels = {vid[lab]: str(lab) for lab in labels_sorted}
    return Triangulation(verts, vcol, vlabels, tuple(edges), faces, rotation)


# --- tri.v1 JSON -----------------------------------------------------------

def tri_to_json(T: Triangulation) -> dict:
    return {
        "vertices": [{"id": v, "colour": T.colours[v], "label": T.labels[v]}
                     for v in T.vertices],
        "edges": [{"id": e.id, "ends": [e.u, e.v]} for e in T.edges],
        "faces": [{"id": f.id, "colour": f.colour,
                   "boundary": [[e, v] for e, v in f.boundary]} for f in T.faces],
        "rotation": {str(v): list(T.rotation[v]) for v in T.vertices},
    }


def tri_from_json(data: dict) -> Triangulation:
    vertices = tuple(int(v["id"]) for v in data["vertices"])
    colours = {int(v["id"]): v["colour"] for v in data["vertices"]}
    labels = {int(v["id"]): str(v.get("label", v["id"])) for v in data["vertices"]}
    edges = tuple(Edge(int(e["id"]), int(e["ends"][0]), int(e["ends"][1]))
                  for e in data["edges"])
    faces = tuple(Face(int(f["id"]), f["colour"],
                       tuple((int(e), int(v)) for e, v in f["boundary"]))
                  for f in data["faces"])
    rotation = {int(v): tuple(int(e) for e in rot)
                for v, rot in data["rotation"].items()}
    return Triangulation(vertices, colours, labels, edges, faces, rotation)


def save_tri(T: Triangulation, path) -> None:
    with open(path, "w") as fh:
        json.dump(tri_to_json(T), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_tri(path) -> Triangulation:
    with open(path) as fh:
        return tri_from_json(json.load(fh))
