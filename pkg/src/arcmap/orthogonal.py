"""The 5-dimensional orthogonal geometry over F_3 and its graphs.

Fixed quadratic form Q(x) = x1*x2 + x3*x4 + x5^2 (non-degenerate; any other
non-degenerate choice is isometric).  The suite carries:

  * Sigma: orthogonality graph on the 40 singular 1-spaces, SRG(40,12,2,4);
  * Gamma: orthogonality graph on the 80 nonzero singular vectors
    (u ~ v iff B(u,v) = 0 and v != +-u), valency 24, = lex double of Sigma;
  * GammaHat: bipartite doubling of one of the two paired 12-orbitals of the
    socle's vertex stabilizer, 160 vertices, valency 12;
  * the acting groups: X = SO_5(3) of order 51840 on 80 vectors, its socle
    X0 of index 2, the negation map tau, the orbit-swapping involution g,
    the side swap rho, and the frame stabilizer 2^4.S5 of order 1920.

Vector order is frozen: the 80 singular vectors sorted lexicographically,
then the 162 nonsingular ones, giving one 242-point domain whose first 80
indices are the singular block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph, bipartite_double_of_orbital
from .group import PermGroup, intersection
from .perms import Perm


def q_form(v):
    return (v[0] * v[1] + v[2] * v[3] + v[4] * v[4]) % 3


def b_form(u, v):
    s = (u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2] + 2 * u[4] * v[4]) % 3
    return s


def _neg(v):
    return tuple((-x) % 3 for x in v)


def _reflection_matrix(w):
    qw = q_form(w)
    inv = qw  # 1->1, 2->2 are self-inverse mod 3
    rows = []
    for i in range(5):
        e = tuple(1 if j == i else 0 for j in range(5))
        c = (b_form(e, w) * inv) % 3
        rows.append(tuple((e[j] - c * w[j]) % 3 for j in range(5)))
    return tuple(rows)


def _mat_vec(v, A):
    return tuple(sum(v[i] * A[i][j] for i in range(5)) % 3 for j in range(5))


@dataclass
class OrthogonalSuite:
    vectors: list            # all 242 nonzero vectors, singular block first
    singular: list           # the 80 singular vectors
    spaces: list             # the 40 singular 1-spaces (normalized reps)
    X242: PermGroup          # SO_5(3) on all nonzero vectors
    X: PermGroup             # SO_5(3) on the 80 singular vectors
    X0: PermGroup            # socle, index 2
    Xsigma: PermGroup        # SO_5(3) on the 40 singular 1-spaces
    tau: Perm                # v -> -v on the 80
    Xv: PermGroup            # stabilizer of vector 0
    X0v: PermGroup           # X0 ∩ Xv
    g: Perm                  # involution in Xv \ X0v swapping the 12-orbitals
    sigma: Graph
    gamma: Graph
    gamma_hat: Graph
    delta_pairs: list        # the Delta orbital as ordered pairs
    deltap_pairs: list       # the paired orbital
    frame: list              # 5 pairwise orthogonal Q=1 vectors
    frame_stab: PermGroup    # 2^4.S5 on the 80
    Xhat: PermGroup          # <X0, rho*g> on 160
    Xhat_frame: PermGroup    # image of the frame stabilizer on 160
    rho_g: Perm


def _restrict(p, k):
    return Perm(p.images[:k])


def _build():
    vecs = [v for v in itertools.product(range(3), repeat=5) if any(v)]
    singular = sorted(v for v in vecs if q_form(v) == 0)
    nonsingular = sorted(v for v in vecs if q_form(v) != 0)
    if len(singular) != 80:
        raise AssertionError(f"expected 80 singular vectors, got {len(singular)}")
    vectors = singular + nonsingular
    index = {v: i for i, v in enumerate(vectors)}

    # SO_5(3) generated by products of reflection pairs
    refl = [_reflection_matrix(w) for w in nonsingular]
    gens_mats = []
    G242 = None
    for i in range(1, len(refl)):
        A = tuple(
            tuple(sum(refl[0][r][k] * refl[i][k][c] for k in range(5)) % 3
                  for c in range(5))
            for r in range(5)
        )
        gens_mats.append(A)
        perms = []
        for M in gens_mats:
            perms.append(Perm([index[_mat_vec(v, M)] for v in vectors]))
        G242 = PermGroup(perms, 242, check_ambient=False)
        if G242.order() == 51840:
            break
    if G242 is None or G242.order() != 51840:
        raise AssertionError("failed to generate SO_5(3)")

    X = PermGroup([_restrict(p, 80) for p in G242.gens], 80, check_ambient=False)
    if X.order() != 51840:
        raise AssertionError("80-point action not faithful")

    D242 = G242.derived_subgroup()
    if D242.order() != 25920:
        raise AssertionError(f"socle order {D242.order()} != 25920")
    X0 = PermGroup([_restrict(p, 80) for p in D242.gens], 80, check_ambient=False)
    X.socle_gens = list(X0.gens)

    # 40 singular 1-spaces: normalized so the last nonzero coordinate is 1
    def norm_space(v):
        return v if v[max(i for i in range(5) if v[i])] == 1 else _neg(v)

    spaces = sorted({norm_space(v) for v in singular})
    if len(spaces) != 40:
        raise AssertionError("expected 40 singular 1-spaces")
    sp_index = {s: i for i, s in enumerate(spaces)}
    sig_perms = []
    for M in gens_mats[: len(X.gens)]:
        sig_perms.append(Perm([sp_index[norm_space(_mat_vec(s, M))] for s in spaces]))
    Xsigma = PermGroup(sig_perms, 40, check_ambient=False)

    tau = Perm([index[_neg(v)] for v in singular])

    sigma = Graph.from_edges(40, [
        (i, j) for i in range(40) for j in range(i + 1, 40)
        if b_form(spaces[i], spaces[j]) == 0
    ])
    gamma = Graph.from_edges(80, [
        (i, j) for i in range(80) for j in range(i + 1, 80)
        if b_form(singular[i], singular[j]) == 0
        and singular[j] != _neg(singular[i])
    ])

    Xv = X.stabilizer(0)
    if Xv.order() != 648:
        raise AssertionError(f"vector stabilizer order {Xv.order()} != 648")
    X0v = intersection(X0, Xv)
    if X0v.order() != 324:
        raise AssertionError("socle vector stabilizer should have order 324")

    nbrs = list(gamma.adj[0])
    orbs = []
    seen = set()
    for start in nbrs:
        if start in seen:
            continue
        orb = {start}
        queue = [start]
        for x in queue:
            for p in X0v.gens:
                y = p.images[x]
                if y not in orb:
                    orb.add(y)
                    queue.append(y)
        seen |= orb
        orbs.append(sorted(orb))
    if sorted(len(o) for o in orbs) != [12, 12]:
        raise AssertionError(f"neighbour orbits {sorted(len(o) for o in orbs)}")
    delta_v, deltap_v = orbs

    g = None
    for t in Xv.elements():
        if t.order() == 2 and not X0v.contains(t):
            if sorted(t.images[x] for x in delta_v) == deltap_v:
                g = t
                break
    if g is None:
        raise AssertionError("no orbit-swapping involution found")

    # Delta orbital: X0-orbit of the ordered pair (0, w0), w0 in delta_v
    def orbital(w0):
        pairs = {(0, w0)}
        queue = [(0, w0)]
        for (a, b) in queue:
            for p in X0.gens:
                e = (p.images[a], p.images[b])
                if e not in pairs:
                    pairs.add(e)
                    queue.append(e)
        return sorted(pairs)

    delta_pairs = orbital(delta_v[0])
    deltap_pairs = orbital(deltap_v[0])
    if len(delta_pairs) != 960 or len(deltap_pairs) != 960:
        raise AssertionError("orbital sizes should be 80*12")
    if set(delta_pairs) == {(b, a) for a, b in delta_pairs}:
        raise AssertionError("Delta unexpectedly self-paired")
    if {(b, a) for a, b in delta_pairs} != set(deltap_pairs):
        raise AssertionError("Delta' is not the reversal of Delta")

    gamma_hat = bipartite_double_of_orbital(80, delta_pairs)

    # frame: 5 pairwise orthogonal vectors of norm 1 (greedy in frozen order)
    frame = []
    for v in vectors:
        if q_form(v) == 1 and all(b_form(v, w) == 0 for w in frame):
            frame.append(v)
            if len(frame) == 5:
                break
    if len(frame) != 5:
        raise AssertionError("no orthonormal frame found")
    frame_set = {index[v] for v in frame} | {index[_neg(v)] for v in frame}
    stab242 = G242.setwise_stabilizer(frame_set)
    if stab242.order() != 1920:
        raise AssertionError(f"frame stabilizer order {stab242.order()} != 1920")
    frame_stab = PermGroup([_restrict(p, 80) for p in stab242.gens], 80,
                           check_ambient=False)

    # <X0, rho*g> on 160 points: psi(x) acts diagonally for x in the socle,
    # with the side swap rho composed in for the outer half
    def psi(p, outer):
        im = [0] * 160
        for u in range(80):
            if outer:
                im[u] = p.images[u] + 80
                im[u + 80] = p.images[u]
            else:
                im[u] = p.images[u]
                im[u + 80] = p.images[u] + 80
        return Perm(im)

    rho_g = psi(g, outer=True)
    Xhat = PermGroup([psi(p, False) for p in X0.gens] + [rho_g], 160,
                     check_ambient=False)
    if Xhat.order() != 51840:
        raise AssertionError("doubled action has wrong order")
    Xhat.socle_gens = [psi(p, False) for p in X0.gens]

    def psi_group(H):
        gens = []
        for p in H.gens:
            gens.append(psi(p, outer=not X0.contains(p)))
        return PermGroup(gens, 160, check_ambient=False)

    Xhat_frame = psi_group(frame_stab)
    if Xhat_frame.order() != 1920:
        raise AssertionError("doubled frame stabilizer has wrong order")

    return OrthogonalSuite(
        vectors=vectors, singular=singular, spaces=spaces,
        X242=G242, X=X, X0=X0, Xsigma=Xsigma, tau=tau, Xv=Xv, X0v=X0v, g=g,
        sigma=sigma, gamma=gamma, gamma_hat=gamma_hat,
        delta_pairs=delta_pairs, deltap_pairs=deltap_pairs,
        frame=frame, frame_stab=frame_stab, Xhat=Xhat,
        Xhat_frame=Xhat_frame, rho_g=rho_g,
    )


_SUITE = None


def o53_suite():
    global _SUITE
    if _SUITE is None:
        _SUITE = _build()
    return _SUITE
