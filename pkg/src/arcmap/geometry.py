"""Projective geometry over small fields: PG_2(q) incidence structures with
their collineation groups, Singer-cycle normalizers, the antiflag graph of
PG_3(2), and the 11-point biplane.

Projective points are normalized so the last nonzero coordinate is 1 and
listed in lexicographic order of the coordinate tuple; this ordering is
frozen (golden files and pinned generators depend on it).  In a plane's
incidence graph, vertices 0..N-1 are points and N..2N-1 are lines, where
line u is incident with point v iff sum(u_i v_i) = 0.
"""

from __future__ import annotations

import itertools

from .errors import NotPrimePower, SingularMatrix
from .fields import make_field
from .graphs import Graph
from .group import PermGroup
from .perms import Perm

# -- matrices over a SmallField ---------------------------------------------


def mat_mul(F, A, B):
    k = len(B)
    return tuple(
        tuple(
            _dot(F, row, tuple(B[t][j] for t in range(k)))
            for j in range(len(B[0]))
        )
        for row in A
    )


def _dot(F, u, v):
    s = 0
    for a, b in zip(u, v):
        s = F.add(s, F.mul(a, b))
    return s


def mat_vec(F, v, A):
    """Row vector times matrix."""
    return tuple(_dot(F, v, tuple(A[i][j] for i in range(len(A)))) for j in range(len(A[0])))


def mat_identity(F, n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(F, A, e):
    R = mat_identity(F, len(A))
    B = A
    while e:
        if e & 1:
            R = mat_mul(F, R, B)
        B = mat_mul(F, B, B)
        e >>= 1
    return R


def mat_transpose(A):
    return tuple(tuple(A[j][i] for j in range(len(A))) for i in range(len(A[0])))


def mat_frobenius(F, A, power=1):
    return tuple(tuple(F.pow(a, F.p ** power) for a in row) for row in A)


def mat_inverse(F, A):
    n = len(A)
    M = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix not invertible")
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        M[col] = [F.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def is_invertible(F, A):
    try:
        mat_inverse(F, A)
        return True
    except SingularMatrix:
        return False


def mat_scale(F, c, A):
    return tuple(tuple(F.mul(c, x) for x in row) for row in A)


def solve_projective_commutant(F, C, D):
    """Invertible t with t*C = lambda*D*t for some scalar lambda, or None.
    This is conjugacy of the images of C and D in PGL."""
    for lam in range(1, F.q):
        t = solve_twisted_commutant(F, C, mat_scale(F, lam, D))
        if t is not None:
            return t
    return None


def solve_twisted_commutant(F, C, D):
    """Invertible t with t*C = D*t, or None.  Works on the 9 (n^2) unknowns
    by Gaussian elimination over F, then scans the kernel for an invertible
    combination."""
    n = len(C)
    nn = n * n
    # linear map t -> t C - D t, rows indexed by (i,j) of the output
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * nn
            for k in range(n):
                # (tC)[i][j] += t[i][k] C[k][j]
                row[i * n + k] = F.add(row[i * n + k], C[k][j])
                # (Dt)[i][j] += D[i][k] t[k][j]
                row[k * n + j] = F.sub(row[k * n + j], D[i][k])
            rows.append(row)
    # kernel basis
    M = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(nn):
        piv = next((k for k in range(r, len(M)) if M[k][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c]:
                cc = M[k][c]
                M[k] = [F.sub(x, F.mul(cc, y)) for x, y in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(nn) if c not in pivots]
    if not free:
        return None
    basis = []
    for fc in free:
        vec = [0] * nn
        vec[fc] = 1
        for rr, pc in enumerate(pivots):
            vec[pc] = F.neg(M[rr][fc])
        basis.append(vec)
    # scan small combinations of kernel vectors for an invertible matrix
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        vec = [0] * nn
        for co, b in zip(coeffs, basis):
            if co:
                vec = [F.add(x, F.mul(co, y)) for x, y in zip(vec, b)]
        t = tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n))
        if is_invertible(F, t):
            return t
    return None


# -- projective machinery -----------------------------------------------------


def normalize_point(F, v):
    last = None
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            last = i
            break
    if last is None:
        return None
    inv = F.inv(v[last])
    return tuple(F.mul(inv, x) for x in v)


def projective_points(F, dim):
    pts = set()
    for v in itertools.product(range(F.q), repeat=dim):
        p = normalize_point(F, v)
        if p is not None:
            pts.add(p)
    return sorted(pts)


def matrix_to_perm(F, mats, domain, expected_order=None, seed=0):
    """Permutation group induced by row-vector action on an indexed domain.

    domain entries are coordinate tuples (vectors or normalized points);
    the action normalizes again when the domain consists of points."""
    index = {v: i for i, v in enumerate(domain)}
    normalized = domain and domain[0] == normalize_point(F, domain[0])
    perms = []
    for A in mats:
        if not is_invertible(F, A):
            raise SingularMatrix("generator matrix is singular")
        images = []
        for v in domain:
            w = mat_vec(F, v, A)
            if normalized:
                w = normalize_point(F, w)
            images.append(index[w])
        perms.append(Perm(images))
    G = PermGroup(perms, len(domain), seed=seed, check_ambient=False)
    if expected_order is not None and G.order() != expected_order:
        raise AssertionError(
            f"induced group order {G.order()} != expected {expected_order}")
    return G


def sl_generators(F, n):
    """Elementary transvections generating SL_n(q)."""
    gens = []
    scalars = [1] if F.q == 2 else [1, F.primitive]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in scalars:
                A = [list(row) for row in mat_identity(F, n)]
                A[i][j] = c
                gens.append(tuple(tuple(row) for row in A))
    return gens


def psl_order(n, q):
    d = 1
    for k in range(2, n + 1):
        d *= q**k - 1
    order = q ** (n * (n - 1) // 2) * d
    import math

    return order // math.gcd(n, q - 1)


class ProjectivePlane:
    """PG_2(q): points, lines, incidence graph, collineations."""

    def __init__(self, q):
        if q > 9:
            raise NotPrimePower("projective planes limited to q <= 9")
        self.q = q
        self.F = make_field(q)
        self.points = projective_points(self.F, 3)
        self.N = len(self.points)
        if self.N != q * q + q + 1:
            raise AssertionError("wrong projective point count")
        self.point_index = {p: i for i, p in enumerate(self.points)}
        # line i has covector points[i]; incidence = orthogonality
        self.incidence = []
        for u in self.points:
            inc = frozenset(
                self.point_index[v] for v in self.points if _dot(self.F, u, v) == 0
            )
            self.incidence.append(inc)

    def incidence_graph(self):
        edges = []
        for li, inc in enumerate(self.incidence):
            for pi in inc:
                edges.append((pi, self.N + li))
        return Graph.from_edges(2 * self.N, edges)

    def duality(self):
        """The correlation swapping point i and line i; an automorphism of
        the incidence graph because the form is symmetric."""
        n = self.N
        return Perm([i + n if i < n else i - n for i in range(2 * n)])

    def _matrix_perm(self, A):
        """Collineation of points+lines from A in GL_3: points by A, lines by
        inverse-transpose."""
        F = self.F
        images = [0] * (2 * self.N)
        for i, v in enumerate(self.points):
            images[i] = self.point_index[normalize_point(F, mat_vec(F, v, A))]
        B = mat_transpose(mat_inverse(F, A))
        for i, u in enumerate(self.points):
            images[self.N + i] = self.N + self.point_index[
                normalize_point(F, mat_vec(F, u, B))]
        return Perm(images)

    def frobenius_perm(self, power=1):
        F = self.F
        images = [0] * (2 * self.N)
        for i, v in enumerate(self.points):
            w = normalize_point(F, tuple(F.pow(x, F.p**power) for x in v))
            images[i] = self.point_index[w]
            u = normalize_point(F, tuple(F.pow(x, F.p**power) for x in self.points[i]))
            images[self.N + i] = self.N + self.point_index[u]
        return Perm(images)

    def collineation_group(self, field_auts=False, duality=False, seed=0):
        gens = [self._matrix_perm(A) for A in sl_generators(self.F, 3)]
        socle = PermGroup(gens, 2 * self.N, seed=seed, check_ambient=False)
        expected = psl_order(3, self.q)
        if socle.order() != expected:
            raise AssertionError("PSL_3 image has wrong order")
        full = list(gens)
        mult = 1
        if field_auts and self.F.f > 1:
            full.append(self.frobenius_perm())
            mult *= self.F.f
        if duality:
            full.append(self.duality())
            mult *= 2
        G = PermGroup(full, 2 * self.N, seed=seed, check_ambient=False)
        if G.order() != expected * mult:
            raise AssertionError(
                f"collineation group order {G.order()} != {expected * mult}")
        G.socle_gens = list(gens)
        return G

    def point_action_group(self, seed=0):
        """PSL_3(q) as permutations of the N points only."""
        F = self.F
        perms = []
        for A in sl_generators(F, 3):
            images = [
                self.point_index[normalize_point(F, mat_vec(F, v, A))]
                for v in self.points
            ]
            perms.append(Perm(images))
        G = PermGroup(perms, self.N, seed=seed, check_ambient=False)
        if G.order() != psl_order(3, self.q):
            raise AssertionError("PSL_3 point action has wrong order")
        G.socle_gens = list(G.gens)
        return G

    def singer_matrix(self):
        """Companion matrix of the least primitive cubic over F_q (matrix
        order q^3 - 1)."""
        F, q = self.F, self.q
        target = q**3 - 1
        for enc in range(q**3):
            coeffs = tuple((enc // q**i) % q for i in range(3))
            if any(self._eval_cubic(coeffs, x) == 0 for x in range(q)):
                continue
            C = (
                (0, 1, 0),
                (0, 0, 1),
                tuple(F.neg(c) for c in coeffs),
            )
            if _matrix_order(F, C, target) == target:
                return C
        raise AssertionError("no primitive cubic found")

    def _eval_cubic(self, coeffs, x):
        # monic cubic: x^3 + c2 x^2 + c1 x + c0
        F = self.F
        v = F.mul(F.mul(x, x), x)
        v = F.add(v, F.mul(coeffs[2], F.mul(x, x)))
        v = F.add(v, F.mul(coeffs[1], x))
        v = F.add(v, coeffs[0])
        return v

    def singer_normalizer(self, seed=0):
        """Normalizer of the Singer cycle inside the full collineation group
        (with duality и field automorphisms): order (q^2+q+1) * 3f * 2."""
        F, q, N = self.F, self.q, self.N
        C = self.singer_matrix()
        s = self._matrix_perm(C)
        proj_order = N  # image of the Singer cycle in PGL_3 has order q^2+q+1
        gens = [s]
        # inner part: conjugation realizing the q-power map on the cycle
        t = solve_projective_commutant(F, C, mat_pow(F, C, q))
        if t is None:
            raise AssertionError("no inner Singer-normalizing element")
        gens.append(self._matrix_perm(t))
        mult = 3
        # field automorphism corrected into the normalizer: conjugating the
        # cycle by (frobenius * t) gives pi((t C t^-1)^(p^(f-1))), so t must
        # conjugate C to a scalar multiple of a power of C^(p)
        if F.f > 1:
            Cp = mat_frobenius(F, C, 1)
            tf = None
            for j in range(1, proj_order):
                cand = solve_projective_commutant(F, C, mat_pow(F, Cp, j))
                if cand is not None:
                    tf = cand
                    break
            if tf is None:
                raise AssertionError("no field-aut correction found")
            gens.append(self.frobenius_perm() * self._matrix_perm(tf))
            mult *= F.f
        # duality corrected into the normalizer
        Cit = mat_transpose(mat_inverse(F, C))
        td = None
        for j in range(1, proj_order):
            cand = solve_projective_commutant(F, C, mat_pow(F, Cit, j))
            if cand is not None:
                td = cand
                break
        if td is None:
            raise AssertionError("no duality correction found")
        gens.append(self.duality() * self._matrix_perm(td))
        mult *= 2
        G = PermGroup(gens, 2 * N, seed=seed, check_ambient=False)
        if G.order() != proj_order * mult:
            raise AssertionError(
                f"Singer normalizer order {G.order()} != {proj_order * mult}")
        return G


def _matrix_order(F, A, cap):
    I = mat_identity(F, len(A))
    B = A
    for k in range(1, cap + 1):
        if B == I:
            return k
        B = mat_mul(F, B, A)
    return None


_PLANES = {}


def projective_plane(q):
    if q not in _PLANES:
        _PLANES[q] = ProjectivePlane(q)
    return _PLANES[q]


# -- PG_3(2) antiflag graph -----------------------------------------------------


def pg3_antiflag_graph():
    """30 vertices: the 15 points then the 15 hyperplanes of PG_3(2); edges
    are the non-incident point-hyperplane pairs (8-regular bipartite)."""
    F = make_field(2)
    pts = projective_points(F, 4)
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for hi, u in enumerate(pts):
        for pi, v in enumerate(pts):
            if _dot(F, u, v) != 0:
                edges.append((pi, 15 + hi))
    return Graph.from_edges(30, edges)


def pg3_antiflag_group(seed=0):
    """PSL_4(2).2 = S_8 acting on the 30 vertices of the antiflag graph."""
    F = make_field(2)
    pts = projective_points(F, 4)
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for A in sl_generators(F, 4):
        images = [0] * 30
        for i, v in enumerate(pts):
            images[i] = index[normalize_point(F, mat_vec(F, v, A))]
        B = mat_transpose(mat_inverse(F, A))
        for i, u in enumerate(pts):
            images[15 + i] = 15 + index[normalize_point(F, mat_vec(F, u, B))]
        gens.append(Perm(images))
    duality = Perm([i + 15 if i < 15 else i - 15 for i in range(30)])
    G = PermGroup(gens + [duality], 30, seed=seed, check_ambient=False)
    if G.order() != 40320:
        raise AssertionError(f"antiflag group order {G.order()} != 40320")
    return G


# -- the 11-point biplane --------------------------------------------------------


def biplane11_blocks():
    """Blocks of the 2-(11,5,2) biplane: translates mod 11 of the quadratic
    residues {1,3,4,5,9}."""
    base = (1, 3, 4, 5, 9)
    return [frozenset((b + i) % 11 for b in base) for i in range(11)]


def biplane11_graph():
    """22-vertex incidence graph: points 0..10, blocks 11..21."""
    blocks = biplane11_blocks()
    # 2-design property: every point pair in exactly 2 blocks
    for x in range(11):
        for y in range(x + 1, 11):
            lam = sum(1 for B in blocks if x in B and y in B)
            if lam != 2:
                raise AssertionError("biplane is not a 2-design with lambda=2")
    edges = []
    for bi, B in enumerate(blocks):
        for x in B:
            edges.append((x, 11 + bi))
    return Graph.from_edges(22, edges)
