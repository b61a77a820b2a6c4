"""Permutation groups with a base and strong generating set.

Construction is a seeded random warm start (product replacement) followed by
the deterministic Schreier-Sims closure pass, so the final chain is verified:
order and membership answers are exact, and two builds with the same seed
produce identical base, transversals, and enumeration order.

Points are 0-based throughout the Python API; 1-based conversion happens at
the parsing/CLI boundary only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import DegreeMismatch, GateExceeded, NotSubgroup, PointOutOfRange
from .perms import Perm


@dataclass
class Gates:
    """Explicit resource limits; exceeding one raises GateExceeded."""

    enumeration: int = 10**6
    coset_index: int = 10**6
    backtrack: int = 10**9
    lattice: int = 5 * 10**4
    graph_vertices: int = 10**6
    canonical: int = 5000
    set_orbit: int = 10**6


DEFAULT_GATES = Gates()


def _mul(p, q):
    # right action: (p*q)[i] = q[p[i]]
    return tuple(q[i] for i in p)


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _is_id(p):
    return all(i == j for i, j in enumerate(p))


class _Level:
    __slots__ = ("point", "gens", "orbit")

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.orbit = {}

    def recompute(self, identity):
        self.orbit = {self.point: identity}
        queue = [self.point]
        for x in queue:
            u = self.orbit[x]
            for s in self.gens:
                y = s[x]
                if y not in self.orbit:
                    self.orbit[y] = _mul(u, s)
                    queue.append(y)


class PermGroup:
    """Group generated by permutations of common degree.

    ``ambient`` records the group this one was carved out of (stabilizers,
    intersections, spans); generators of a subgroup are membership-checked
    against the ambient at construction.
    """

    def __init__(self, gens, degree=None, seed=0, ambient=None, check_ambient=True):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("need generators or an explicit degree")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generators of mixed degree")
        self.degree = degree
        self.seed = seed
        self.gens = []
        seen = set()
        for g in gens:
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                self.gens.append(g)
        self.ambient = ambient
        self.socle_gens = None
        if ambient is not None and check_ambient:
            if ambient.degree != degree:
                raise DegreeMismatch("subgroup degree differs from ambient")
            for g in self.gens:
                if not ambient.contains(g):
                    raise NotSubgroup(f"generator {g.render()} not in ambient")
        self._levels = None
        self._order = None
        self._elements = None

    # -- chain construction -------------------------------------------------

    def _identity(self):
        return tuple(range(self.degree))

    def _chain(self):
        if self._levels is None:
            self._build()
        return self._levels

    def _build(self):
        identity = self._identity()
        levels = []
        base = []

        def first_moved(p):
            for i, j in enumerate(p):
                if i != j:
                    return i
            return None

        def add_gen(p, start):
            # p fixes base[0..start-1]; register at every level whose base
            # point it fixes, opening a new level if it fixes all of them
            j = start
            while j < len(levels) and p[base[j]] == base[j]:
                j += 1
            if j == len(levels):
                pt = first_moved(p)
                levels.append(_Level(pt))
                base.append(pt)
            for k in range(start, j + 1):
                levels[k].gens.append(p)
            return j

        def sift_from(p, start):
            y = p
            for lvl in levels[start:]:
                img = y[lvl.point]
                u = lvl.orbit.get(img)
                if u is None:
                    return y
                y = _mul(y, _inv(u))
            return y

        raw = [g.images for g in self.gens]
        for p in raw:
            r = sift_from(p, 0)
            if not _is_id(r):
                lvl = add_gen(r, 0)
                levels[lvl].recompute(identity)

        # seeded product-replacement warm start: cheap pre-population so the
        # deterministic closure pass below mostly just verifies
        if raw:
            rng = random.Random(self.seed)
            slots = [p for p in raw] * max(1, (8 // len(raw)) + 1)
            for _ in range(30):
                i = rng.randrange(len(slots))
                j = rng.randrange(len(slots))
                slots[i] = _mul(slots[i], slots[j])
                r = sift_from(slots[i], 0)
                if not _is_id(r):
                    lvl = add_gen(r, 0)
                    for k in range(lvl + 1):
                        levels[k].recompute(identity)

        # deterministic Schreier-Sims closure, bottom level first
        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            lvl.recompute(identity)
            clean = True
            for x in list(lvl.orbit):
                u = lvl.orbit[x]
                for s in lvl.gens:
                    ux = _mul(u, s)
                    v = lvl.orbit[s[x]]
                    schreier = _mul(ux, _inv(v))
                    if _is_id(schreier):
                        continue
                    r = sift_from(schreier, i + 1)
                    if not _is_id(r):
                        j = add_gen(r, i + 1)
                        levels[j].recompute(identity)
                        i = j
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                i -= 1

        self._levels = levels
        order = 1
        for lvl in levels:
            order *= len(lvl.orbit)
        self._order = order

    # -- basic queries -------------------------------------------------------

    def order(self):
        if self._order is None:
            self._build()
        return self._order

    @property
    def base(self):
        return [lvl.point for lvl in self._chain()]

    def sift(self, p):
        """Residue of p after stripping through the transversal chain."""
        if p.degree != self.degree:
            raise DegreeMismatch("degree mismatch in sift")
        y = p.images
        for lvl in self._chain():
            u = lvl.orbit.get(y[lvl.point])
            if u is None:
                return Perm(y)
            y = _mul(y, _inv(u))
        return Perm(y)

    def contains(self, p):
        return self.sift(p).is_identity()

    def is_trivial(self):
        return not self.gens

    def random_element(self, rng):
        if not self.gens:
            return Perm.identity(self.degree)
        y = self._identity()
        for lvl in self._chain():
            pts = list(lvl.orbit)
            y = _mul(lvl.orbit[pts[rng.randrange(len(pts))]], y)
        return Perm(y)

    def elements(self, gate=None):
        """All members, sorted by image tuple.  Gated."""
        limit = gate if gate is not None else DEFAULT_GATES.enumeration
        if self.order() > limit:
            raise GateExceeded(f"|G| = {self.order()} exceeds enumeration gate {limit}")
        if self._elements is None:
            out = [self._identity()]
            for lvl in self._chain():
                out = [_mul(u, y) for y in out for u in lvl.orbit.values()]
            out.sort()
            self._elements = out
        return [Perm(t) for t in self._elements]

    def iter_elements(self, gate=None):
        """Stream all members in a deterministic (unsorted) order without
        materializing the whole group.  Gated like elements()."""
        limit = gate if gate is not None else DEFAULT_GATES.enumeration
        if self.order() > limit:
            raise GateExceeded(f"|G| = {self.order()} exceeds enumeration gate {limit}")
        levels = self._chain()

        def rec(i, tail):
            # element = u_{k-1} * ... * u_0 with u_i from level i
            if i < 0:
                yield tail
                return
            for u in levels[i].orbit.values():
                yield from rec(i - 1, _mul(tail, u))

        for t in rec(len(levels) - 1, self._identity()):
            yield Perm(t)

    # -- orbits and stabilizers ----------------------------------------------

    def orbit(self, point):
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        orb = [point]
        seen = {point}
        for x in orb:
            for g in self.gens:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    orb.append(y)
        return orb

    def orbits(self):
        seen = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree if self.degree else True

    def orbit_transversal(self, point):
        """dict point -> Perm with point^rep = that point, BFS order."""
        identity = self._identity()
        orb = {point: identity}
        queue = [point]
        for x in queue:
            u = orb[x]
            for g in self.gens:
                y = g.images[x]
                if y not in orb:
                    orb[y] = _mul(u, g.images)
                    queue.append(y)
        return {x: Perm(u) for x, u in orb.items()}

    def stabilizer(self, point):
        """Point stabilizer via a chain rebuilt with this point first."""
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        rebuilt = PermGroup(self.gens, self.degree, seed=self.seed,
                            check_ambient=False)
        rebuilt._build_with_first([point])
        lvls = rebuilt._levels
        if not lvls or lvls[0].point != point:
            sub = PermGroup(self.gens, self.degree, seed=self.seed,
                            ambient=self, check_ambient=False)
            sub._order = self.order()
            return sub
        gens = _dedup([Perm(p) for lvl in lvls[1:] for p in lvl.gens])
        sub = PermGroup(gens, self.degree, seed=self.seed,
                        ambient=self, check_ambient=False)
        sub._order = self.order() // len(lvls[0].orbit)
        return sub

    def _build_with_first(self, prefix):
        """Build the chain forcing the given base prefix (points that the
        group moves, in order)."""
        identity = self._identity()
        levels = []
        base = []
        for pt in prefix:
            levels.append(_Level(pt))
            base.append(pt)

        def first_moved(p):
            for i, j in enumerate(p):
                if i != j:
                    return i
            return None

        def add_gen(p, start):
            j = start
            while j < len(levels) and p[base[j]] == base[j]:
                j += 1
            if j == len(levels):
                pt = first_moved(p)
                levels.append(_Level(pt))
                base.append(pt)
            for k in range(start, j + 1):
                levels[k].gens.append(p)
            return j

        def sift_from(p, start):
            y = p
            for lvl in levels[start:]:
                img = y[lvl.point]
                u = lvl.orbit.get(img)
                if u is None:
                    return y
                y = _mul(y, _inv(u))
            return y

        for g in self.gens:
            add_gen(g.images, 0)
        for lvl in levels:
            lvl.recompute(identity)

        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            lvl.recompute(identity)
            clean = True
            for x in list(lvl.orbit):
                u = lvl.orbit[x]
                for s in lvl.gens:
                    ux = _mul(u, s)
                    v = lvl.orbit[s[x]]
                    schreier = _mul(ux, _inv(v))
                    if _is_id(schreier):
                        continue
                    r = sift_from(schreier, i + 1)
                    if not _is_id(r):
                        j = add_gen(r, i + 1)
                        levels[j].recompute(identity)
                        i = j
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                i -= 1

        # a forced prefix point the group never moves leaves an orbit-1 level;
        # its gens all fix the point and were registered deeper too
        levels = [lvl for lvl in levels if len(lvl.orbit) > 1]
        self._levels = levels
        order = 1
        for lvl in levels:
            order *= len(lvl.orbit)
        self._order = order

    def setwise_stabilizer(self, points, gates=None):
        """{g in G : S^g = S} via the orbit of S as a set, with Schreier
        generators for the stabilizer.  Gated on ambient order and on the
        number of explored sets."""
        gates = gates or DEFAULT_GATES
        if self.order() > gates.backtrack:
            raise GateExceeded("ambient order exceeds setwise-stabilizer gate")
        S = frozenset(points)
        for p in S:
            if not 0 <= p < self.degree:
                raise PointOutOfRange(f"point {p} outside domain")
        identity = self._identity()
        orbit = {S: identity}
        queue = [S]
        for T in queue:
            u = orbit[T]
            for g in self.gens:
                img = frozenset(g.images[x] for x in T)
                if img not in orbit:
                    if len(orbit) >= gates.set_orbit:
                        raise GateExceeded("set-orbit gate exceeded")
                    orbit[img] = _mul(u, g.images)
                    queue.append(img)
        stab_order = self.order() // len(orbit)
        gens = []
        sub = PermGroup([], self.degree, seed=self.seed, ambient=self,
                        check_ambient=False)
        if sub.order() == stab_order:
            return sub
        for T in queue:
            u = orbit[T]
            for g in self.gens:
                img = frozenset(g.images[x] for x in T)
                cand = Perm(_mul(_mul(u, g.images), _inv(orbit[img])))
                if not cand.is_identity() and not sub.contains(cand):
                    gens.append(cand)
                    sub = PermGroup(gens, self.degree, seed=self.seed,
                                    ambient=self, check_ambient=False)
                    if sub.order() == stab_order:
                        return sub
        if sub.order() != stab_order:
            raise AssertionError("setwise stabilizer closure failed")
        return sub

    # -- subgroup plumbing -----------------------------------------------------

    def subgroup(self, gens):
        """Subgroup of self with membership-checked generators."""
        return PermGroup(gens, self.degree, seed=self.seed, ambient=self)

    def conjugate(self, h):
        """The subgroup self^h inside the same ambient."""
        gens = [g.conj(h) for g in self.gens]
        amb = self.ambient
        sub = PermGroup(gens, self.degree, seed=self.seed, ambient=amb,
                        check_ambient=False)
        sub._order = self.order()
        return sub

    def normal_closure(self, elts, limit=None):
        """Smallest subgroup containing elts normalized by self."""
        gens = [e for e in elts if not e.is_identity()]
        grp = PermGroup(gens, self.degree, seed=self.seed, check_ambient=False)
        changed = True
        while changed:
            changed = False
            for g in list(grp.gens):
                for s in self.gens:
                    c = g.conj(s)
                    if not grp.contains(c):
                        gens.append(c)
                        grp = PermGroup(gens, self.degree, seed=self.seed,
                                        check_ambient=False)
                        changed = True
            if limit is not None and grp.order() > limit:
                raise GateExceeded("normal closure exceeded limit")
        grp.ambient = self
        return grp

    def derived_subgroup(self):
        comms = []
        for a in self.gens:
            for b in self.gens:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def is_primitive(self):
        """Transitive with no nontrivial block system (trivial for degree 1)."""
        n = self.degree
        if not self.is_transitive():
            return False
        if n <= 2:
            return True
        gens = [g.images for g in self.gens]
        for beta in range(1, n):
            # minimal block containing {0, beta} via union-find closure
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
                    return True
                return False

            union(0, beta)
            work = [(0, beta)]
            while work:
                a, b = work.pop()
                for g in gens:
                    if union(g[a], g[b]):
                        work.append((g[a], g[b]))
            size = sum(1 for x in range(n) if find(x) == find(0))
            if size != n:
                return False
        return True


def _dedup(perms):
    seen = set()
    out = []
    for p in perms:
        if not p.is_identity() and p.images not in seen:
            seen.add(p.images)
            out.append(p)
    return out


def generated_with(A, extra, seed=0):
    """Group generated by A's generators plus extra permutations."""
    gens = list(A.gens)
    for p in extra:
        if p.degree != A.degree:
            raise DegreeMismatch("extra generator degree mismatch")
        gens.append(p)
    return PermGroup(_dedup(gens), A.degree, seed=seed, check_ambient=False)


def intersection(A, B, gates=None):
    """A ∩ B by enumerating the smaller factor and filtering by membership."""
    gates = gates or DEFAULT_GATES
    if A.degree != B.degree:
        raise DegreeMismatch("intersection of groups of different degree")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    if small.order() > gates.enumeration:
        raise GateExceeded(
            f"min(|A|,|B|) = {small.order()} exceeds enumeration gate")
    members = [p for p in small.iter_elements(gates.enumeration) if big.contains(p)]
    amb = A.ambient if A.ambient is not None else A
    sub = PermGroup(_dedup(members), A.degree, seed=A.seed, ambient=amb,
                    check_ambient=False)
    sub._order = len(members)
    return sub


def core(X, A, gates=None):
    """Largest normal subgroup of X contained in A, by iterated intersection
    with conjugates.  Gated through the intersections."""
    gates = gates or DEFAULT_GATES
    K = A
    changed = True
    while changed:
        changed = False
        for s in X.gens:
            Ks = K.conjugate(s)
            if any(not K.contains(g) for g in Ks.gens):
                K = intersection(K, Ks, gates)
                changed = True
    K.ambient = X
    return K


def is_corefree(X, A, gates=None):
    """True iff A contains no nontrivial normal subgroup of X, i.e. the coset
    action of X on [X:A] is faithful.

    When X carries socle generators (registry groups), containment of the
    socle is the whole test; otherwise the core is computed directly.
    """
    if A.order() == X.order():
        return False
    if X.socle_gens:
        return not all(A.contains(g) for g in X.socle_gens)
    return core(X, A, gates).order() == 1


def contains_alternating(G, tries=100, seed=0):
    """Detect that a transitive group of degree n contains Alt(n) by
    exhibiting a certifying element (a prime cycle of length p with
    n/2 < p <= n-3) inside a primitive group.  Returns False when no
    certificate is found; never falsely returns True."""
    n = G.degree
    if n < 8:
        return G.order() >= math.factorial(n) // 2
    if not G.is_transitive() or not G.is_primitive():
        return False
    rng = random.Random(seed)
    for _ in range(tries):
        x = G.random_element(rng)
        for cyc in x.cycles():
            ln = len(cyc)
            if ln > n // 2 and ln <= n - 3 and _is_prime(ln):
                return True
    return False


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
