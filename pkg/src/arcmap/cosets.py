"""Coset spaces [X : A] and suborbits of the point stabilizer.

Cosets are materialized by orbit expansion from the trivial coset, keyed by
a canonical representative computed through A's stabilizer chain (minimize
the image of each base point in turn).  rep(0) is the identity, so the base
point alpha is index 0 and its stabilizer is (a conjugate-equal copy of) A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GateExceeded, NotSubgroup
from .group import DEFAULT_GATES, PermGroup, _inv, _mul, is_corefree
from .perms import Perm


def _flat_chain(A):
    """A's chain as [(orbit_points, transversal_tuples)] for fast keying."""
    out = []
    for lvl in A._chain():
        pts = list(lvl.orbit)
        reps = [lvl.orbit[p] for p in pts]
        out.append((pts, reps))
    return out


def _key(chain, y):
    """Canonical representative of the right coset A*y."""
    for pts, reps in chain:
        best_i = 0
        best_v = y[pts[0]]
        for i in range(1, len(pts)):
            v = y[pts[i]]
            if v < best_v:
                best_v = v
                best_i = i
        u = reps[best_i]
        y = tuple(y[j] for j in u)
    return y


class CosetSpace:
    """Materialized right-coset action of X on [X : A]."""

    def __init__(self, ambient, sub, reps, index, gen_images):
        self.ambient = ambient
        self.sub = sub
        self.reps = reps
        self.index = index
        self.gen_images = gen_images
        self.n = len(reps)
        self.alpha = 0
        self._chain = _flat_chain(sub)
        self._faithful = None

    def rep(self, i):
        return Perm(self.reps[i])

    def coset_of(self, p):
        """Index of the coset A*p (p a Perm in X)."""
        return self.index[_key(self._chain, p.images)]

    def image(self, i, p):
        """Index of coset_i * p for an arbitrary Perm p."""
        return self.index[_key(self._chain, _mul(self.reps[i], p.images))]

    def perm_images(self, p):
        """Induced images of all cosets under p, as a list."""
        pim = p.images
        return [self.index[_key(self._chain, _mul(r, pim))] for r in self.reps]

    def induced_perm(self, p):
        return Perm(self.perm_images(p))

    def faithful(self, gates=None):
        if self._faithful is None:
            self._faithful = is_corefree(self.ambient, self.sub, gates)
        return self._faithful

    def stabilizer_of_alpha(self):
        return self.sub


def coset_action(X, A, gate=None, gates=None):
    """Materialize the action of X on right cosets of A.  Gated by index."""
    gates = gates or DEFAULT_GATES
    limit = gate if gate is not None else gates.coset_index
    for g in A.gens:
        if not X.contains(g):
            raise NotSubgroup("A is not a subgroup of X")
    if X.order() % A.order():
        raise NotSubgroup("order of A does not divide order of X")
    n = X.order() // A.order()
    if n > limit:
        raise GateExceeded(f"coset index {n} exceeds gate {limit}")

    chain = _flat_chain(A)
    identity = tuple(range(X.degree))
    xgens = [g.images for g in X.gens]
    reps = [identity]
    index = {_key(chain, identity): 0}
    gen_images = [[] for _ in xgens]
    i = 0
    while i < len(reps):
        r = reps[i]
        for gi, g in enumerate(xgens):
            y = _mul(r, g)
            k = _key(chain, y)
            j = index.get(k)
            if j is None:
                j = len(reps)
                reps.append(y)
                index[k] = j
            gen_images[gi].append(j)
        i += 1
    if len(reps) != n:
        raise AssertionError(f"coset expansion found {len(reps)} of {n} cosets")
    return CosetSpace(X, A, reps, index, gen_images)


@dataclass
class Suborbit:
    sid: int
    first: int
    rep: Perm
    size: int
    paired_with: int

    @property
    def self_paired(self):
        return self.paired_with == self.sid


def suborbits(space):
    """Orbits of A on [X : A], each with a representative h (beta = alpha^h)
    and the id of the paired suborbit (containing alpha^(h^-1))."""
    agen_images = [space.perm_images(g) for g in space.sub.gens]
    n = space.n
    label = [-1] * n
    firsts = []
    for start in range(n):
        if label[start] != -1:
            continue
        sid = len(firsts)
        firsts.append(start)
        label[start] = sid
        queue = [start]
        for x in queue:
            for img in agen_images:
                y = img[x]
                if label[y] == -1:
                    label[y] = sid
                    queue.append(y)
    sizes = [0] * len(firsts)
    for x in range(n):
        sizes[label[x]] += 1
    out = []
    for sid, first in enumerate(firsts):
        h = space.reps[first]
        back = space.index[_key(space._chain, _inv(h))]
        out.append(Suborbit(sid=sid, first=first, rep=Perm(h),
                            size=sizes[sid], paired_with=label[back]))
    if sum(s.size for s in out) != n:
        raise AssertionError("suborbit sizes do not sum to the index")
    return out
