"""Structural verdicts on subgroups.

Covers cyclic/dihedral recognition (Klein four counts as dihedral of order 4,
C_2 as cyclic), involution listing, k-homogeneity/k-transitivity, and
conjugacy classes of all subgroups of a small group by cyclic extension.

The lattice code packs permutations of degree <= 16 into single integers
(4 bits per point) and works on subgroups as frozensets of packed elements;
conjugacy classes are flooded in full, which both deduplicates new subgroups
and yields normalizers via Schreier generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import GateExceeded
from .group import DEFAULT_GATES, PermGroup, _inv, _is_id, _mul
from .perms import Perm

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class StructureTag:
    kind: str  # "cyclic" | "dihedral" | "other"
    order: int

    def render(self):
        if self.kind == "cyclic":
            return f"Cyclic({self.order})"
        if self.kind == "dihedral":
            return f"Dihedral({self.order})"
        return f"Other({self.order})"

    @property
    def is_cyclic_or_dihedral(self):
        return self.kind in ("cyclic", "dihedral")

    def __str__(self):
        return self.render()


def cyclic(order):
    return StructureTag("cyclic", order)


def dihedral(order):
    return StructureTag("dihedral", order)


def other(order):
    return StructureTag("other", order)


def _classify_images(images):
    """Tag from a full list of image tuples of the subgroup's elements."""
    n = len(images)
    orders = {}
    for t in images:
        orders[t] = Perm(t).order()
    if max(orders.values()) == n:
        return cyclic(n)
    if n % 2 == 0:
        m = n // 2
        cands = [t for t, o in orders.items() if o == m]
        involutions = {t for t, o in orders.items() if o == 2}
        for y in cands:
            powers = {y}
            cur = y
            for _ in range(m - 1):
                cur = _mul(cur, y)
                powers.add(cur)
            yinv = _inv(y)
            for t in involutions:
                if t in powers:
                    continue
                if _mul(_mul(_inv(t), y), t) == yinv:
                    return dihedral(n)
    return other(n)


def classify_cyclic_dihedral(H, gates=None):
    """Cyclic(k) if some element has order |H|, else Dihedral(|H|) on a
    witness pair (index-2 cyclic subgroup inverted by an involution), else
    Other(|H|).  Trivial group and C_2 are Cyclic; Klein four is Dihedral."""
    gates = gates or DEFAULT_GATES
    els = H.elements(gates.enumeration)
    return _classify_images([p.images for p in els])


def involutions(H, gates=None):
    """All order-2 elements, sorted by image tuple."""
    gates = gates or DEFAULT_GATES
    return [p for p in H.elements(gates.enumeration) if p.order() == 2]


def k_homogeneous(G, k, gates=None):
    """Transitive on k-subsets of the domain."""
    gates = gates or DEFAULT_GATES
    n = G.degree
    target = math.comb(n, k)
    if target > gates.coset_index:
        raise GateExceeded(f"C({n},{k}) = {target} exceeds gate")
    start = frozenset(range(k))
    seen = {start}
    queue = [start]
    for S in queue:
        for g in G.gens:
            img = frozenset(g.images[x] for x in S)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen) == target


def k_transitive(G, k, gates=None):
    """Transitive on ordered k-tuples of distinct points."""
    gates = gates or DEFAULT_GATES
    n = G.degree
    target = 1
    for i in range(k):
        target *= n - i
    if target > gates.coset_index:
        raise GateExceeded(f"{n}P{k} = {target} exceeds gate")
    start = tuple(range(k))
    seen = {start}
    queue = [start]
    for T in queue:
        for g in G.gens:
            img = tuple(g.images[x] for x in T)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen) == target


# -- subgroup lattice by cyclic extension -------------------------------------


def _pack(t):
    v = 0
    for i, x in enumerate(t):
        v |= x << (4 * i)
    return v


def _unpack(v, n):
    return tuple((v >> (4 * i)) & 15 for i in range(n))


@dataclass
class SubgroupClass:
    rep: PermGroup
    order: int
    length: int
    elements: frozenset  # packed elements of the representative
    normalizer: PermGroup

    def tag(self, degree):
        return _classify_images([_unpack(v, degree) for v in self.elements])


@dataclass
class SubgroupClassList:
    ambient: PermGroup
    classes: list

    def total_subgroups(self):
        return sum(c.length for c in self.classes)

    def by_order(self, order):
        return [c for c in self.classes if c.order == order]


def subgroup_classes(X, gates=None):
    """Conjugacy classes of all subgroups of X by cyclic extension: seed with
    prime-order cyclic subgroups, extend each class representative H by
    prime-order elements of N_X(H)/H, dedupe against the full conjugation
    orbit of every class found so far."""
    gates = gates or DEFAULT_GATES
    if X.order() > gates.lattice:
        raise GateExceeded(f"|X| = {X.order()} exceeds lattice gate {gates.lattice}")
    if X.degree > 16:
        raise GateExceeded("lattice packing requires degree <= 16")

    n = X.degree
    identity = tuple(range(n))
    id_packed = _pack(identity)
    elements = [p.images for p in X.elements(gates.lattice)]
    xgens = [g.images for g in X.gens]
    # per-generator conjugation lookup over the whole group
    conj_maps = []
    for g in xgens:
        ginv = _inv(g)
        cmap = {}
        for t in elements:
            cmap[_pack(t)] = _pack(_mul(_mul(ginv, t), g))
        conj_maps.append(cmap)

    seen = {}      # frozenset of packed -> class index
    classes = []   # SubgroupClass, index = class id

    def add_class(packed_set, gen_tuples):
        if packed_set in seen:
            return seen[packed_set]
        cid = len(classes)
        orbit = {packed_set: identity}
        queue = [packed_set]
        for S in queue:
            u = orbit[S]
            for cmap, g in zip(conj_maps, xgens):
                img = frozenset(cmap[e] for e in S)
                if img not in orbit:
                    orbit[img] = _mul(u, g)
                    queue.append(img)
        for S in orbit:
            seen[S] = cid
        # Schreier generators of the conjugation-orbit stabilizer = N_X(H)
        norm_order = X.order() // len(orbit)
        ngens = []
        norm = PermGroup([], n, seed=X.seed, check_ambient=False)
        if norm.order() < norm_order:
            done = False
            for S in queue:
                u = orbit[S]
                for cmap, g in zip(conj_maps, xgens):
                    img = frozenset(cmap[e] for e in S)
                    cand = Perm(_mul(_mul(u, g), _inv(orbit[img])))
                    if not cand.is_identity() and not norm.contains(cand):
                        ngens.append(cand)
                        norm = PermGroup(ngens, n, seed=X.seed,
                                         check_ambient=False)
                        if norm.order() == norm_order:
                            done = True
                            break
                if done:
                    break
            if norm.order() != norm_order:
                raise AssertionError("normalizer closure failed")
        norm.ambient = X
        rep = PermGroup([Perm(t) for t in gen_tuples], n, seed=X.seed,
                        ambient=X, check_ambient=False)
        rep._order = len(packed_set)
        classes.append(SubgroupClass(rep=rep, order=len(packed_set),
                                     length=len(orbit), elements=packed_set,
                                     normalizer=norm))
        return cid

    add_class(frozenset([id_packed]), [])

    # seed: cyclic subgroups of prime order
    seeds = {}
    for t in elements:
        o = Perm(t).order()
        if _is_prime(o):
            powers = {id_packed}
            cur = t
            while not _is_id(cur):
                powers.add(_pack(cur))
                cur = _mul(cur, t)
            seeds[frozenset(powers)] = t
    for S in sorted(seeds, key=lambda s: (len(s), sorted(s))):
        add_class(S, [seeds[S]])

    # extend class by class; new classes join the worklist.  This reaches
    # every soluble subgroup (walk a composition series upward).
    todo = list(range(len(classes)))
    while todo:
        todo.sort(key=lambda c: (classes[c].order, sorted(classes[c].elements)))
        cid = todo.pop(0)
        cls = classes[cid]
        S = cls.elements
        h_order = cls.order
        before = len(classes)
        gen_tuples = [g.images for g in cls.rep.gens]
        for x in cls.normalizer.elements(gates.lattice):
            px = _pack(x.images)
            if px in S:
                continue
            # order of xH in N/H: smallest r with x^r in H
            r = 1
            cur = x.images
            while _pack(cur) not in S:
                cur = _mul(cur, x.images)
                r += 1
            if not _is_prime(r):
                continue
            if h_order * r > X.order():
                continue
            ext = set(S)
            coset = [(_unpack(e, n)) for e in S]
            powx = x.images
            for _ in range(r - 1):
                ext.update(_pack(_mul(t, powx)) for t in coset)
                powx = _mul(powx, x.images)
            if len(ext) != h_order * r:
                raise AssertionError("cyclic extension produced a non-coset union")
            add_class(frozenset(ext), gen_tuples + [x.images])
        todo.extend(range(before, len(classes)))

    _insoluble_completion(X, elements, add_class, classes, gates)

    classes.sort(key=lambda c: (c.order, c.length, sorted(c.elements)))
    return SubgroupClassList(ambient=X, classes=classes)


def _is_soluble(G):
    prev = G.order()
    D = G
    while True:
        D = D.derived_subgroup()
        o = D.order()
        if o == 1:
            return True
        if o == prev:
            return False
        prev = o


def _enumerate_packed(gens_tuples, seed_set, n):
    """Closure of seed_set (packed) under right products with the generators."""
    els = set(seed_set)
    queue = [_unpack(e, n) for e in seed_set]
    while queue:
        t = queue.pop()
        for g in gens_tuples:
            prod = _mul(t, g)
            pp = _pack(prod)
            if pp not in els:
                els.add(pp)
                queue.append(prod)
    return frozenset(els)


def _insoluble_completion(X, elements, add_class, classes, gates):
    """Cyclic extension misses insoluble subgroups.  Every insoluble subgroup
    contains a minimal simple one, and at this gate's scale (degree <= 16,
    order <= the lattice gate) minimal simple groups are generated by an
    involution and an element of order 3; so sweep those pairs, then close
    the insoluble classes upward one element at a time (x runs over coset
    representatives, since <K,x> = <K,kx>)."""
    from .cosets import coset_action

    n = X.degree
    id_packed = _pack(tuple(range(n)))
    invols = [t for t in elements if Perm(t).order() == 2]
    order3 = [t for t in elements if Perm(t).order() == 3]
    if not invols or not order3:
        return
    # involution class representatives
    xgens = [g.images for g in X.gens]
    seen_inv = set()
    inv_reps = []
    for t in invols:
        pt = _pack(t)
        if pt in seen_inv:
            continue
        inv_reps.append(t)
        orb = {pt}
        queue = [t]
        while queue:
            u = queue.pop()
            for g in xgens:
                c = _mul(_mul(_inv(g), u), g)
                pc = _pack(c)
                if pc not in orb:
                    orb.add(pc)
                    queue.append(c)
        seen_inv.update(orb)

    insoluble_ids = []

    def register(gens_tuples, seed_packed):
        els = _enumerate_packed(gens_tuples, seed_packed, n)
        before = len(classes)
        cid = add_class(els, gens_tuples)
        if cid >= before:
            rep = classes[cid].rep
            if not _is_soluble(rep):
                insoluble_ids.append(cid)

    for x in inv_reps:
        for y in order3:
            L = PermGroup([Perm(x), Perm(y)], n, seed=X.seed, check_ambient=False)
            # insoluble groups at this scale have order divisible by 12
            if L.order() % 12 or _is_soluble(L):
                continue
            register([x, y], {id_packed, _pack(x), _pack(y)})

    k = 0
    while k < len(insoluble_ids):
        cid = insoluble_ids[k]
        k += 1
        cls = classes[cid]
        K = cls.rep
        if K.order() == X.order():
            continue
        space = coset_action(X, K, gate=gates.lattice)
        kgens = [g.images for g in K.gens]
        for r in space.reps[1:]:
            register(kgens + [r], set(cls.elements) | {_pack(r)})


def brute_force_subgroups(X, gates=None):
    """All subgroups of a tiny group, as frozensets of packed elements, by
    closing every found subgroup with every element.  Oracle for the lattice."""
    gates = gates or DEFAULT_GATES
    if X.order() > 360:
        raise GateExceeded("brute-force subgroup enumeration is for tiny groups")
    n = X.degree
    elements = [p.images for p in X.elements()]
    packed = [_pack(t) for t in elements]
    by_packed = dict(zip(packed, elements))
    id_packed = _pack(tuple(range(n)))

    def close(seed_tuples):
        els = {id_packed}
        frontier = list(seed_tuples)
        els.update(_pack(t) for t in seed_tuples)
        while frontier:
            t = frontier.pop()
            for e in list(els):
                for prod in (_mul(t, by_packed[e]), _mul(by_packed[e], t)):
                    pp = _pack(prod)
                    if pp not in els:
                        els.add(pp)
                        frontier.append(prod)
        return frozenset(els)

    found = {frozenset([id_packed])}
    queue = [frozenset([id_packed])]
    while queue:
        S = queue.pop()
        for t in elements:
            if _pack(t) in S:
                continue
            S2 = close([by_packed[e] for e in S] + [t])
            if S2 not in found:
                found.add(S2)
                queue.append(S2)
    return found


def are_conjugate(X, H1, H2, gates=None):
    """Conjugacy test with cheap invariant filters, then orbit search."""
    gates = gates or DEFAULT_GATES
    if H1.order() != H2.order():
        return False
    def orbshape(H):
        return sorted(len(o) for o in H.orbits())
    if orbshape(H1) != orbshape(H2):
        return False
    def ohist(H):
        hist = {}
        for p in H.elements(gates.enumeration):
            hist[p.order()] = hist.get(p.order(), 0) + 1
        return hist
    if ohist(H1) != ohist(H2):
        return False
    target = frozenset(p.images for p in H2.elements(gates.enumeration))
    start = frozenset(p.images for p in H1.elements(gates.enumeration))
    seen = {start}
    queue = [start]
    while queue:
        S = queue.pop(0)
        if S == target:
            return True
        if len(seen) > gates.set_orbit:
            raise GateExceeded("conjugacy orbit exceeded gate")
        for g in X.gens:
            gi, gt = _inv(g.images), g.images
            img = frozenset(_mul(_mul(gi, t), gt) for t in S)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return target in seen
