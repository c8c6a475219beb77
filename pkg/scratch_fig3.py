"""Scratch: build the fig3 dimap fixture and probe the core machinery."""
from trisand.combmap import Arc, Dart, OUT, IN, make_digraph, validate, trace_faces, walk_vertices, save_dimap
from trisand.intalg import laplacian, reduced_laplacian, determinant, smith_normal_form, tree_number, sandpile_group

# vertices: 0 = r0 (pole), 1..4 = cycle r1..r4
# arcs 0..3: the directed 4-cycle r1->r2->r3->r4->r1
# arcs 4..11: pairs between each r_i and r0
arcs = [
    Arc(0, 1, 2), Arc(1, 2, 3), Arc(2, 3, 4), Arc(3, 4, 1),
    Arc(4, 1, 0), Arc(5, 0, 1),
    Arc(6, 2, 0), Arc(7, 0, 2),
    Arc(8, 3, 0), Arc(9, 0, 3),
    Arc(10, 4, 0), Arc(11, 0, 4),
]
rotation = {
    1: [Dart(OUT, 0), Dart(IN, 3), Dart(OUT, 4), Dart(IN, 5)],
    2: [Dart(IN, 7), Dart(OUT, 1), Dart(IN, 0), Dart(OUT, 6)],
    3: [Dart(OUT, 8), Dart(IN, 9), Dart(OUT, 2), Dart(IN, 1)],
    4: [Dart(IN, 2), Dart(OUT, 10), Dart(IN, 11), Dart(OUT, 3)],
    0: [Dart(OUT, 11), Dart(IN, 10), Dart(OUT, 9), Dart(IN, 8),
        Dart(OUT, 7), Dart(IN, 6), Dart(OUT, 5), Dart(IN, 4)],
}
D = make_digraph(range(5), arcs, rotation)
print("validate:", validate(D))
faces = trace_faces(D)
for f in faces:
    print(f.side, f.arcs, walk_vertices(D, f))
print("face sizes:", sorted(len(f.arcs) for f in faces))
L = laplacian(D)
print("L rows:", L.to_rows())
Lred = reduced_laplacian(D, 0)
print("L' (omit 0):", Lred.to_rows())
print("det L' =", determinant(Lred))
diag, U, V = smith_normal_form(Lred)
print("SNF diag:", diag)
print("tree_number:", tree_number(D))
print("sandpile:", sandpile_group(D))
save_dimap(D, "src/trisand/fixtures/fig3_dr.dimap.json")
print("saved fixture")
