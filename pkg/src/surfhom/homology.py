"""First homology of a ribbon-graph surface, with its intersection form.

The cycle lattice is coordinatized by the fundamental cycles of a
spanning tree (one per non-tree edge); 2-cell boundaries are quotiented
out through a Smith normal form, leaving H1 = Z^2g for a closed
surface.  The intersection form is computed by contracting the spanning
tree: in the resulting one-vertex ribbon graph every generator is a
loop, and two loops cross exactly when their dart pairs interleave in
the rotation at the vertex.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .ribbon import (
    ValidationError,
    _tables,
    edge_index,
    edge_of_dart,
    edges,
    trace_faces,
    validate_walk,
)
from .zlattice import (
    LatticeError,
    as_int_matrix,
    det_int,
    identity,
    int_inverse,
    is_partial_basis,
    matmul,
    smith_normal_form,
    vec_mat,
)


@dataclass(frozen=True)
class ChainComplex:
    """Cellular boundary maps: d1 sends edges to vertices (V x E) and d2
    sends 2-cells to edges (E x F); boundary walks are not 2-cells."""

    d1: tuple
    d2: tuple


def chain_complex(R):
    eix = edge_index(R)
    vof, _, _ = _tables(R)
    V = len(R.rotation)
    E = R.n_edges
    d1 = [[0] * E for _ in range(V)]
    for e, i in eix.items():
        t = R.twin[e]
        d1[vof[t]][i] += 1
        d1[vof[e]][i] -= 1
    internal = [f for f in trace_faces(R) if f[0] not in R.boundary_faces]
    d2 = [[0] * len(internal) for _ in range(E)]
    for j, face in enumerate(internal):
        for d in face:
            i = eix[edge_of_dart(R, d)]
            d2[i][j] += 1 if d < R.twin[d] else -1
    return ChainComplex(as_int_matrix(d1), as_int_matrix(d2))


def _spanning_tree(R):
    """BFS tree from vertex 0; returns (tree edge min-darts, parent darts).

    parent[v] is the dart at v's parent whose edge leads to v.
    """
    vof, _, _ = _tables(R)
    parent = {0: None}
    tree = []
    queue = [0]
    while queue:
        v = queue.pop(0)
        for d in R.rotation[v]:
            w = vof[R.twin[d]]
            if w not in parent:
                parent[w] = d
                tree.append(edge_of_dart(R, d))
                queue.append(w)
    if len(parent) != len(R.rotation):
        raise ValidationError("graph is not connected")
    return tree, parent


def _tree_path(R, parent, u, v):
    """Dart walk from u to v inside the spanning tree."""
    vof, _, _ = _tables(R)

    def to_root(x):
        out = []
        while parent[x] is not None:
            d = parent[x]
            out.append(d)  # dart from parent toward x
            x = vof[d]
        return out  # path root->...: reversed below

    up_u = to_root(u)  # darts pointing from ancestors toward u
    up_v = to_root(v)
    while up_u and up_v and up_u[-1] == up_v[-1]:
        up_u.pop()
        up_v.pop()
    # from u up to the common ancestor, then down to v
    walk = [R.twin[d] for d in up_u] + list(reversed(up_v))
    return tuple(walk)


def _contracted_rotation(R, tree_edges):
    """Cyclic dart order at the single vertex after contracting the tree."""
    rot = {v: list(cyc) for v, cyc in enumerate(R.rotation)}
    vof = list(_tables(R)[0])
    for e in tree_edges:
        d, t = e, R.twin[e]
        u, v = vof[d], vof[t]
        if u == v:
            raise AssertionError("tree edge became a loop")
        i = rot[u].index(d)
        j = rot[v].index(t)
        seq = rot[v][j + 1:] + rot[v][:j]
        rot[u] = rot[u][:i] + seq + rot[u][i + 1:]
        for dd in seq:
            vof[dd] = u
        del rot[v]
    (order,) = rot.values()
    return tuple(order)


def _interleave_sign(pos, L, a1, b1, a2, b2):
    """+1 for counterclockwise order (a1, a2, b1, b2), -1 for the mirror,
    0 when the strand (a2,b2) does not separate (a1,b1)."""
    base = pos[a1]
    qa2 = (pos[a2] - base) % L
    qb1 = (pos[b1] - base) % L
    qb2 = (pos[b2] - base) % L
    if qa2 < qb1 < qb2:
        return 1
    if qb2 < qb1 < qa2:
        return -1
    return 0


class SurfaceHomology:
    """Cycle coordinates, H1 quotient and intersection form of a surface."""

    def __init__(self, R):
        self.R = R
        tree, parent = _spanning_tree(R)
        self.tree_edges = tuple(tree)
        self.parent = parent
        tset = set(tree)
        self.fundamental_edges = tuple(e for e in edges(R) if e not in tset)
        self._fund_pos = {e: i for i, e in enumerate(self.fundamental_edges)}
        r = len(self.fundamental_edges)
        self.cycle_rank = r

        # face relations in fundamental coordinates
        internal = [f for f in trace_faces(R) if f[0] not in R.boundary_faces]
        rels = [self._fund_coords_of_darts(f) for f in internal]
        rels = [row for row in rels if any(row)]
        if rels:
            snf = smith_normal_form(as_int_matrix(rels))
            if any(d != 1 for d in snf.invariant_factors[: snf.rank]):
                raise AssertionError("torsion in a surface quotient")
            self._s = snf.rank
            self._V = snf.V
            self._Vi = snf.V_inv
        else:
            self._s = 0
            self._V = identity(r) if r else ()
            self._Vi = identity(r) if r else ()
        self.rank = r - self._s

        # interleaving form on fundamental loops, pushed to the quotient
        order = _contracted_rotation(R, self.tree_edges) if len(R.rotation) > 1 \
            else R.rotation[0]
        pos = {d: i for i, d in enumerate(order)}
        L = len(order)
        J0 = [
            [
                _interleave_sign(pos, L, R.twin[e], e, R.twin[f], f)
                for f in self.fundamental_edges
            ]
            for e in self.fundamental_edges
        ]
        self._J0 = as_int_matrix(J0)
        if r:
            full = matmul(matmul(self._Vi, self._J0), [list(c) for c in zip(*self._Vi)])
            for i in range(self._s):
                if any(full[i]):
                    raise AssertionError("intersection form does not vanish on boundaries")
            self.pairing_matrix = tuple(row[self._s:] for row in full[self._s:])
        else:
            self.pairing_matrix = ()
        if not R.boundary_faces and self.rank:
            if abs(det_int(self.pairing_matrix)) != 1:
                raise AssertionError("intersection form of a closed surface must be unimodular")

    # -- coordinates ------------------------------------------------------

    def _fund_coords_of_darts(self, darts):
        row = [0] * len(self.fundamental_edges)
        for d in darts:
            e = edge_of_dart(self.R, d)
            i = self._fund_pos.get(e)
            if i is not None:
                row[i] += 1 if d == e else -1
        return tuple(row)

    def class_of_walk(self, walk):
        """H1 class of a closed walk, in the surface's own coordinates."""
        validate_walk(self.R, walk)
        c = self._fund_coords_of_darts(walk)
        return vec_mat(c, self._V)[self._s:] if self.cycle_rank else ()

    def fundamental_class(self, e):
        """Class of the fundamental cycle attached to non-tree edge e."""
        c = tuple(int(f == e) for f in self.fundamental_edges)
        return vec_mat(c, self._V)[self._s:]

    def fundamental_walk(self, e):
        vof, _, _ = _tables(self.R)
        t = self.R.twin[e]
        path = _tree_path(self.R, self.parent, vof[t], vof[e])
        return validate_walk(self.R, (e,) + path)

    def pair(self, c1, c2):
        """Intersection number of two classes."""
        return sum(
            a * self.pairing_matrix[i][j] * b
            for i, a in enumerate(c1)
            if a
            for j, b in enumerate(c2)
            if b
        )


@lru_cache(maxsize=None)
def homology(R):
    return SurfaceHomology(R)


def cotree_basis(R):
    """One fundamental cycle per non-tree edge, with its H1 class.

    The walks generate the surface's first homology (and, for a closed
    surface, map onto all of Z^2g).
    """
    H = homology(R)
    return tuple(
        (H.fundamental_walk(e), H.fundamental_class(e)) for e in H.fundamental_edges
    )


def class_vector(R, walk):
    return homology(R).class_of_walk(walk)


# ---------------------------------------------------------------------------
# intersection numbers of edge-disjoint walks (local rule at shared vertices)

def algebraic_intersection(R, w1, w2):
    """Signed crossing count of two walks meeting only at vertices.

    At every shared vertex each walk contributes strands (in-dart,
    out-dart); a strand of w2 crosses one of w1 positively when the four
    darts interleave counterclockwise as (in1, in2, out1, out2).
    """
    validate_walk(R, w1)
    validate_walk(R, w2)
    e1 = {edge_of_dart(R, d) for d in w1}
    e2 = {edge_of_dart(R, d) for d in w2}
    if e1 & e2:
        raise ValidationError("walks share an edge; subdivide to make them transverse")
    vof, _, _ = _tables(R)

    def strands(w):
        out = {}
        m = len(w)
        for i in range(m):
            d_in, d_out = w[i], w[(i + 1) % m]
            v = vof[d_out]
            out.setdefault(v, []).append((R.twin[d_in], d_out))
        return out

    s1, s2 = strands(w1), strands(w2)
    total = 0
    for v, lst1 in s1.items():
        if v not in s2:
            continue
        cyc = R.rotation[v]
        pos = {d: i for i, d in enumerate(cyc)}
        L = len(cyc)
        for a1, b1 in lst1:
            for a2, b2 in s2[v]:
                total += _interleave_sign(pos, L, a1, b1, a2, b2)
    return total


# ---------------------------------------------------------------------------
# reference bases

@dataclass(frozen=True)
class HomologyClass:
    coords: tuple
    basis: str
    modulus: int = 0


@dataclass(frozen=True)
class ReferenceBasis:
    """2g homology classes declared as the coordinate system.

    ``matrix`` holds the basis classes in the surface's own coordinates;
    ``walks`` maps a basis name to a representative closed walk where
    one exists (classes like a canonical pair not traced by any catalog
    curve carry None).
    """

    name: str
    names: tuple
    matrix: tuple
    inverse: tuple
    pairing: tuple
    walks: tuple

    def express(self, class_vec, modulus=0):
        coords = vec_mat(tuple(class_vec), self.inverse)
        if modulus:
            coords = tuple(x % modulus for x in coords)
        return coords


def standard_symplectic(g):
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return as_int_matrix(J)


def class_of_walk(R, walk, basis, modulus=0):
    """Coordinates of a walk's class in a declared reference basis."""
    vec = class_vector(R, walk)
    return HomologyClass(basis.express(vec, modulus), basis.name, modulus)


def reference_basis_from_table(R, name, basis_names, declared_rows, walks, basis_walks=None):
    """Build the reference basis pinned by a declared coordinate table.

    ``declared_rows[i]`` is the declared coordinate vector of
    ``walks[i]`` with respect to the (unknown) basis; the basis is
    solved from a unimodular subset of the rows and then every row and
    the symplectic pairing are verified, so a wrong surface encoding
    cannot slip through.
    """
    H = homology(R)
    declared = as_int_matrix(declared_rows)
    n, m = len(declared), len(declared[0])
    if m != H.rank:
        raise LatticeError(f"table width {m} != homology rank {H.rank}")
    computed = as_int_matrix([H.class_of_walk(w) for w in walks])
    B = None
    for idx in combinations(range(n), m):
        sub = tuple(declared[i] for i in idx)
        if abs(det_int(sub)) != 1:
            continue
        B = matmul(int_inverse(sub), tuple(computed[i] for i in idx))
        break
    if B is None:
        raise LatticeError("declared table contains no unimodular row subset")
    if matmul(declared, B) != computed:
        raise LatticeError("surface encoding does not reproduce the declared table")
    if abs(det_int(B)) != 1:
        raise LatticeError("declared basis is not unimodular on this surface")
    pairing = as_int_matrix(
        [[H.pair(B[i], B[j]) for j in range(m)] for i in range(m)]
    )
    if pairing != standard_symplectic(m // 2):
        raise LatticeError("declared basis does not pair as a canonical basis")
    walk_map = tuple((basis_walks or {}).get(nm) for nm in basis_names)
    return ReferenceBasis(name, tuple(basis_names), B, int_inverse(B), pairing, walk_map)


def symplectic_basis(R, name="symplectic"):
    """A canonical homology basis via integer symplectic reduction.

    The output's intersection matrix is exactly the standard block form
    (pairs (a_i, b_i) with <a_i, b_i> = 1).
    """
    if R.boundary_faces:
        raise ValidationError("symplectic basis requires a closed surface")
    H = homology(R)
    n = H.rank
    if n % 2:
        raise AssertionError("odd first Betti number on a closed surface")
    G = [list(r) for r in H.pairing_matrix]
    P = [list(r) for r in identity(n)]

    def row_op(i, j, q):  # basis[i] += q * basis[j]
        P[i] = [a + q * b for a, b in zip(P[i], P[j])]
        G[i] = [a + q * b for a, b in zip(G[i], G[j])]
        for r in G:
            r[i] = r[i] + q * r[j]

    def swap(i, j):
        P[i], P[j] = P[j], P[i]
        G[i], G[j] = G[j], G[i]
        for r in G:
            r[i], r[j] = r[j], r[i]

    def negate(i):
        P[i] = [-a for a in P[i]]
        G[i] = [-a for a in G[i]]
        for r in G:
            r[i] = -r[i]

    for k in range(0, n, 2):
        while True:
            j = min(
                (jj for jj in range(k + 1, n) if G[k][jj]),
                key=lambda jj: (abs(G[k][jj]), jj),
                default=None,
            )
            if j is None:
                raise AssertionError("degenerate intersection form")
            if j != k + 1:
                swap(j, k + 1)
            done = True
            for jj in range(k + 2, n):
                if G[k][jj]:
                    q = G[k][jj] // G[k][k + 1]
                    row_op(jj, k + 1, -q)
                    if G[k][jj]:
                        done = False
            if done:
                break
        if G[k][k + 1] < 0:
            negate(k + 1)
        if G[k][k + 1] != 1:
            raise AssertionError("form is not unimodular")
        for i in range(k + 2, n):
            if G[i][k + 1]:
                row_op(i, k, -G[i][k + 1])
            if G[i][k]:
                row_op(i, k + 1, G[i][k])

    Pm = as_int_matrix(P)
    pairing = as_int_matrix(G)
    if pairing != standard_symplectic(n // 2):
        raise AssertionError("symplectic reduction failed")
    # attach representative walks where a basis row is a fundamental cycle
    by_class = {}
    for walk, cls in cotree_basis(R):
        by_class.setdefault(cls, walk)
        by_class.setdefault(tuple(-x for x in cls), tuple(R.twin[d] for d in reversed(walk)))
    names = []
    walks = []
    for i in range(n // 2):
        names += [f"a{i + 1}", f"b{i + 1}"]
    for row in Pm:
        walks.append(by_class.get(row))
    return ReferenceBasis(name, tuple(names), Pm, int_inverse(Pm), pairing, tuple(walks))


# ---------------------------------------------------------------------------
# the constructive completion behind curve systems with connected complement

def complete_system_cotree(R, system, modulus=0):
    """Extend a curve system's classes to a full homology basis.

    The system's classes must form a partial basis (which they do
    whenever the complement of the system is connected); they are then
    completed greedily by fundamental cycles of a spanning tree.
    Returns one (walk, class) pair per basis element, the system first.
    """
    H = homology(R)
    out = [(w, H.class_of_walk(w)) for w in system]
    M = [c for _, c in out]
    if not is_partial_basis(as_int_matrix(M) if M else (), modulus):
        raise LatticeError("system classes do not form a partial basis")
    target = H.rank
    for walk, cls in cotree_basis(R):
        if len(M) == target:
            break
        cand = M + [cls]
        if is_partial_basis(as_int_matrix(cand), modulus):
            M.append(cls)
            out.append((walk, cls))
    if len(M) != target:
        raise LatticeError("cotree completion failed to reach full rank")
    return tuple(out)
