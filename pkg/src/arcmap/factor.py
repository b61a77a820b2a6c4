"""Cyclic/dihedral factorisation certificates and arc-transitive embedding
certificates.

A factorisation certificate witnesses X = AB with A, B core-free and A ∩ B
cyclic or dihedral.  An embedding certificate witnesses, for X acting on
the cosets of X_a and a subgroup G, an arc (alpha, beta) and an involution
g in G such that

  X = G X_a,  X_a = G_a X_ab,  G_a cyclic or dihedral,  |G_ab| <= 2,
  g swaps alpha and beta, normalizes X_ab, and <X_a, g> = X,

which is exactly what is needed for the orbital graph on {alpha,beta}^X to
carry a G-arc-transitive map embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cosets import coset_action, suborbits
from .errors import GateExceeded
from .group import (DEFAULT_GATES, PermGroup, _inv, _mul, generated_with,
                    intersection, is_corefree)
from .perms import Perm
from .structure import StructureTag, _classify_images, classify_cyclic_dihedral


@dataclass
class FactorisationCertificate:
    x_order: int
    a_order: int
    b_order: int
    intersection_order: int
    tag: StructureTag
    corefree_a: bool
    corefree_b: bool

    @property
    def order_equation_holds(self):
        return self.a_order * self.b_order == self.x_order * self.intersection_order

    @property
    def valid(self):
        return (self.order_equation_holds and self.tag.is_cyclic_or_dihedral
                and self.corefree_a and self.corefree_b)

    def fields(self):
        return {
            "|X|": self.x_order, "|A|": self.a_order, "|B|": self.b_order,
            "|A^B|": self.intersection_order, "tag": self.tag.render(),
            "corefree_A": self.corefree_a, "corefree_B": self.corefree_b,
            "valid": self.valid,
        }


def check_factorisation(X, A, B, gates=None):
    """Certificate for X = AB with cyclic/dihedral intersection."""
    gates = gates or DEFAULT_GATES
    I = intersection(A, B, gates)
    tag = classify_cyclic_dihedral(I, gates)
    return FactorisationCertificate(
        x_order=X.order(), a_order=A.order(), b_order=B.order(),
        intersection_order=I.order(), tag=tag,
        corefree_a=is_corefree(X, A, gates),
        corefree_b=is_corefree(X, B, gates),
    )


def action_stabilizer(group, space, point, order_hint=None):
    """Stabilizer in `group` of a coset-space point, via Schreier generators
    of the induced action; returns a PermGroup on the original domain."""
    gens = group.gens
    images = [space.perm_images(g) for g in gens]
    identity = Perm.identity(group.degree)
    orbit = {point: identity}
    queue = [point]
    for x in queue:
        u = orbit[x]
        for g, img in zip(gens, images):
            y = img[x]
            if y not in orbit:
                orbit[y] = u * g
                queue.append(y)
    target = group.order() // len(orbit)
    stab_gens = []
    stab = PermGroup([], group.degree, seed=group.seed, check_ambient=False)
    if stab.order() == target:
        return stab, orbit
    for x in queue:
        u = orbit[x]
        for g, img in zip(gens, images):
            cand = u * g * orbit[img[x]].inverse()
            if not cand.is_identity() and not stab.contains(cand):
                stab_gens.append(cand)
                stab = PermGroup(stab_gens, group.degree, seed=group.seed,
                                 check_ambient=False)
                if stab.order() == target:
                    return stab, orbit
    raise AssertionError("stabilizer closure failed")


def involution_arc_reversers(G, alpha, beta, space, gates=None):
    """All involutions g in G with alpha^g = beta (hence beta^g = alpha),
    found by enumerating one coset u*G_beta of the beta-stabilizer."""
    gates = gates or DEFAULT_GATES
    gens = G.gens
    images = [space.perm_images(g) for g in gens]
    identity = Perm.identity(G.degree)
    orbit = {alpha: identity}
    queue = [alpha]
    for x in queue:
        u = orbit[x]
        for g, img in zip(gens, images):
            y = img[x]
            if y not in orbit:
                orbit[y] = u * g
                queue.append(y)
    if beta not in orbit:
        return []
    u = orbit[beta]
    g_beta, _ = action_stabilizer(G, space, beta)
    out = []
    for t in g_beta.elements(gates.enumeration):
        cand = u * t
        if cand.order() == 2 and space.image(beta, cand) == alpha:
            out.append(cand)
    out.sort()
    return out


@dataclass
class EmbeddingCertificate:
    x_order: int
    vertices: int
    alpha: int            # 0-based coset index, always 0
    beta: int             # 0-based coset index
    suborbit_id: int
    h: Perm               # alpha^h = beta
    g: Perm               # the arc-reversing involution
    xa_order: int
    xab_order: int
    g_group_order: int
    ga_order: int
    gab_order: int
    ga_tag: StructureTag
    valency: int
    span_order: int       # |<X_a, g>|
    corefree_g: bool
    self_paired: bool

    @property
    def regularity(self):
        return "flag" if self.gab_order == 2 else "arc"

    def fields(self):
        return {
            "|X|": self.x_order, "vertices": self.vertices,
            "alpha": self.alpha + 1, "beta": self.beta + 1,
            "suborbit": self.suborbit_id,
            "|Xa|": self.xa_order, "|Xab|": self.xab_order,
            "|G|": self.g_group_order,
            "|Ga|": self.ga_order, "|Gab|": self.gab_order,
            "Ga": self.ga_tag.render(), "valency": self.valency,
            "span": self.span_order, "regularity": self.regularity,
            "corefree_G": self.corefree_g,
        }


def flag_regularity(cert):
    """'flag' iff the arc stabilizer in G has order 2, else 'arc'."""
    return cert.regularity


class EmbeddingSearch:
    """Search for arc-transitive embedding certificates of (X, X_a, G).

    One certificate per suborbit by default (the first passing involution in
    sorted order); pass all_witnesses=True to keep every passing g.
    """

    def __init__(self, X, Xa, G, gates=None, all_witnesses=False):
        self.X = X
        self.Xa = Xa
        self.G = G
        self.gates = gates or DEFAULT_GATES
        self.all_witnesses = all_witnesses
        self.space = None
        self.certificates = []
        self.skip_reasons = []

    def run(self):
        X, Xa, G, gates = self.X, self.Xa, self.G, self.gates
        self.space = space = coset_action(X, Xa, gates=gates)
        corefree_g = is_corefree(X, G, gates)

        # condition: X = G X_a, via the intersection order equation
        Ga = intersection(G, Xa, gates)
        if G.order() * Xa.order() != X.order() * Ga.order():
            self.skip_reasons.append("X != G*Xa")
            return self
        ga_tag = classify_cyclic_dihedral(Ga, gates)
        if not ga_tag.is_cyclic_or_dihedral:
            self.skip_reasons.append(f"Ga is {ga_tag.render()}")
            return self

        for sub in suborbits(space):
            if sub.first == space.alpha:
                continue
            self._try_suborbit(sub, Ga, ga_tag, corefree_g)
        return self

    def _try_suborbit(self, sub, Ga, ga_tag, corefree_g):
        X, Xa, G, gates, space = self.X, self.Xa, self.G, self.gates, self.space
        beta = sub.first
        h = sub.rep
        Xab, _ = action_stabilizer(Xa, space, beta)
        # G_ab = G_a ^ X_ab; both small by hypothesis
        gab = [p for p in Ga.elements(gates.enumeration) if Xab.contains(p)]
        gab_order = len(gab)
        if gab_order > 2:
            return
        # factorisation X_a = G_a X_ab by the order equation
        if Xa.order() * gab_order != Ga.order() * Xab.order():
            return
        valency = Xa.order() // Xab.order()
        if valency < 3:
            return
        for g in involution_arc_reversers(G, space.alpha, beta, space, gates):
            if not all(Xab.contains(t.conj(g)) for t in Xab.gens):
                continue
            span = generated_with(Xa, [g], seed=X.seed)
            if span.order() != X.order():
                continue
            cert = EmbeddingCertificate(
                x_order=X.order(), vertices=space.n, alpha=space.alpha,
                beta=beta, suborbit_id=sub.sid, h=h, g=g,
                xa_order=Xa.order(), xab_order=Xab.order(),
                g_group_order=G.order(), ga_order=Ga.order(),
                gab_order=gab_order, ga_tag=ga_tag, valency=valency,
                span_order=span.order(), corefree_g=corefree_g,
                self_paired=sub.self_paired,
            )
            self.certificates.append(cert)
            if not self.all_witnesses:
                break


def embedding_search(X, Xa, G, gates=None, all_witnesses=False):
    """Certificates for every suborbit admitting an arc-reversing involution
    satisfying the embedding conditions.  Empty list = no embedding."""
    return EmbeddingSearch(X, Xa, G, gates, all_witnesses).run().certificates


def normal_subgroup_displacement_check(Xa, Xab, g, gates=None):
    """Every nontrivial N normal in X_a with N <= X_ab must satisfy
    N^g != N and N^g normal in X_ab.  Derived from the embedding conditions;
    expected true on every valid certificate."""
    gates = gates or DEFAULT_GATES
    if Xa.order() > gates.lattice:
        raise GateExceeded("displacement scan gated on |X_a|")
    members = {}
    for x in Xab.elements(gates.enumeration):
        if x.is_identity():
            continue
        try:
            N = Xa.normal_closure([x], limit=Xab.order() * 2)
        except GateExceeded:
            continue
        if N.order() > Xab.order():
            continue
        if not all(Xab.contains(t) for t in N.gens):
            continue
        key = frozenset(p.images for p in N.elements(gates.enumeration))
        members[key] = N
    # close the family under joins that stay inside X_ab
    changed = True
    while changed:
        changed = False
        for k1 in list(members):
            for k2 in list(members):
                if k1 is k2:
                    continue
                joined = generated_with(members[k1], members[k2].gens)
                if joined.order() > Xab.order():
                    continue
                if not all(Xab.contains(t) for t in joined.gens):
                    continue
                key = frozenset(p.images for p in joined.elements(gates.enumeration))
                if key not in members:
                    members[key] = joined
                    changed = True
    for key, N in members.items():
        Ng = N.conjugate(g)
        ng_key = frozenset(p.images for p in Ng.elements(gates.enumeration))
        if ng_key == key:
            return False
        # N^g must itself be normal in X_ab (and contained in it)
        if not all(Xab.contains(t) for t in Ng.gens):
            return False
        for t in Ng.gens:
            for s in Xab.gens:
                if not Ng.contains(t.conj(s)):
                    return False
    return True
