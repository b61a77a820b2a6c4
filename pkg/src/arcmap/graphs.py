"""Undirected simple graphs: invariants, canonical forms, orbital graphs.

Vertices are 0-based ints internally; the exchange format (`n m` header then
one `u v` line per edge, u < v, 1-based, sorted) is the only 1-based surface.
Canonical labeling is individualization-refinement with equitable (1-WL)
refinement and orbit pruning from discovered automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams, GateExceeded, NotSelfPaired
from .group import DEFAULT_GATES


class Graph:
    __slots__ = ("n", "adj")

    def __init__(self, n, adj):
        self.n = n
        self.adj = adj  # list of sorted tuples

    @classmethod
    def from_edges(cls, n, edges):
        adj = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if u == v:
                raise BadParams("loops not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise BadParams("edge endpoint out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                continue
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        return cls(n, [tuple(sorted(a)) for a in adj])

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def degree_multiset(self):
        return tuple(sorted(len(a) for a in self.adj))

    def is_regular(self):
        degs = {len(a) for a in self.adj}
        return len(degs) == 1

    def relabel(self, images):
        """New graph with vertex v renamed images[v]."""
        edges = [(images[u], images[v]) for u, v in self.edges()]
        return Graph.from_edges(self.n, edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def dump_graph(g):
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges()):
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def load_graph(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, m = map(int, lines[0].split())
    edges = []
    for ln in lines[1 : m + 1]:
        u, v = map(int, ln.split())
        edges.append((u - 1, v - 1))
    if len(edges) != m:
        raise BadParams("edge count does not match header")
    return Graph.from_edges(n, edges)


# -- invariants ----------------------------------------------------------------


@dataclass
class GraphInvariants:
    n: int
    m: int
    degrees: tuple
    regular: bool
    valency: int | None
    connected: bool
    bipartite: bool
    part_sizes: tuple | None
    girth: int | str | None      # int, ">12", or None when skipped
    srg: tuple | None            # (n, k, lambda, mu)
    distances_from_0: tuple | None

    def fields(self):
        return {
            "n": self.n, "m": self.m, "regular": self.regular,
            "valency": self.valency, "connected": self.connected,
            "bipartite": self.bipartite, "parts": self.part_sizes,
            "girth": self.girth, "srg": self.srg,
        }


def _bfs(g, src):
    dist = [-1] * g.n
    dist[src] = 0
    queue = [src]
    for u in queue:
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def girth(g, cap=12):
    """Length of a shortest cycle, or ">cap" if none within the cap."""
    best = None
    half = cap // 2 + 1
    for v in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[v] = 0
        queue = [v]
        for u in queue:
            if dist[u] >= half:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u] and (parent[w] != u):
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
        if best == 3:
            return 3
    if best is None or best > cap:
        return f">{cap}"
    return best


def _srg_params(g):
    if not g.is_regular() or g.n < 4:
        return None
    k = len(g.adj[0])
    if k in (0, g.n - 1):
        return None
    masks = []
    for u in range(g.n):
        m = 0
        for w in g.adj[u]:
            m |= 1 << w
        masks.append(m)
    lam = mu = None
    for u in range(g.n):
        for w in range(u + 1, g.n):
            common = (masks[u] & masks[w]).bit_count()
            if (masks[u] >> w) & 1:
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    if lam is None or mu is None:
        return None
    return (g.n, k, lam, mu)


def invariants(g, girth_cap=12, detail_limit=5000):
    """BFS-based invariant bundle; girth and SRG detection are skipped (None)
    above detail_limit vertices."""
    dist = _bfs(g, 0) if g.n else []
    connected = g.n == 0 or all(d >= 0 for d in dist)
    color = [-1] * g.n
    bip = True
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    bip = False
                    break
            if not bip:
                break
        if not bip:
            break
    parts = None
    if bip and connected and g.n:
        parts = (color.count(0), color.count(1))
    degs = g.degree_multiset()
    regular = g.is_regular() and g.n > 0
    small = g.n <= detail_limit
    return GraphInvariants(
        n=g.n, m=g.m, degrees=degs, regular=regular,
        valency=degs[0] if regular else None,
        connected=connected, bipartite=bip, part_sizes=parts,
        girth=girth(g, girth_cap) if small and g.m else None,
        srg=_srg_params(g) if small else None,
        distances_from_0=tuple(dist) if small else None,
    )


# -- canonical labeling --------------------------------------------------------


def _refine(g, colors):
    """Equitable (1-WL) refinement; returns stable color array with colors
    numbered by first appearance of sorted signatures."""
    n = g.n
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[w] for w in g.adj[v])
            sigs.append((colors[v], tuple(nb)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _cells(colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _leaf_bytes(g, colors):
    pos = [0] * g.n
    for v, c in enumerate(colors):
        pos[v] = c
    edges = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u])
        for u, v in g.edges()
    )
    out = bytearray()
    for a, b in edges:
        out += a.to_bytes(4, "big") + b.to_bytes(4, "big")
    return bytes(out), pos


@dataclass
class CanonicalForm:
    bytes: bytes
    labeling: tuple  # labeling[v] = canonical position of v

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.bytes == other.bytes


class _CanonSearch:
    def __init__(self, g):
        self.g = g
        self.best = None
        self.best_pos = None
        self.leaves = {}
        self.auts = []

    def run(self):
        colors = _refine(self.g, [0] * self.g.n)
        self._node(colors, [])
        return CanonicalForm(self.best, tuple(self.best_pos))

    def _node(self, colors, fixed):
        cells = _cells(colors)
        target = None
        for cell in cells:
            if len(cell) > 1:
                target = cell
                break
        if target is None:
            by, pos = _leaf_bytes(self.g, colors)
            if by in self.leaves:
                prev = self.leaves[by]
                aut = [0] * self.g.n
                inv_prev = [0] * self.g.n
                for v, p in enumerate(prev):
                    inv_prev[p] = v
                for v in range(self.g.n):
                    aut[v] = inv_prev[pos[v]]
                if any(aut[v] != v for v in range(self.g.n)):
                    self.auts.append(tuple(aut))
            else:
                self.leaves[by] = pos
            if self.best is None or by < self.best:
                self.best = by
                self.best_pos = pos
            return
        # orbit pruning: discovered automorphisms fixing every individualized
        # vertex act on the target cell; branch on orbit minima only
        stab = [a for a in self.auts if all(a[v] == v for v in fixed)]
        parent = {v: v for v in target}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if stab:
            tset = set(target)
            for a in stab:
                for v in target:
                    w = a[v]
                    if w in tset:
                        ra, rb = find(v), find(w)
                        if ra != rb:
                            parent[rb] = ra
        done = set()
        for v in target:
            r = find(v)
            if r in done:
                continue
            done.add(r)
            branch = [min(w for w in target if find(w) == r)]
            for v2 in branch:
                new = list(colors)
                # individualize v2: give it a strictly smaller fresh color
                new[v2] = -1
                ranking = {c: i for i, c in enumerate(sorted(set(new)))}
                new = [ranking[c] for c in new]
                self._node(_refine(self.g, new), fixed + [v2])


def canonical_form(g, gates=None):
    gates = gates or DEFAULT_GATES
    if g.n > gates.canonical:
        raise GateExceeded(f"n = {g.n} exceeds canonical gate {gates.canonical}")
    if g.n == 0:
        return CanonicalForm(b"", ())
    return _CanonSearch(g).run()


def iso(g1, g2, gates=None):
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if g1.degree_multiset() != g2.degree_multiset():
        return False
    return canonical_form(g1, gates).bytes == canonical_form(g2, gates).bytes


# -- orbital graphs and doublings ------------------------------------------------


def orbital_graph(space, beta, gates=None):
    """Graph on the coset space with edge set {alpha, beta}^X.  Requires the
    suborbit of beta to be self-paired (else NotSelfPaired)."""
    from .cosets import suborbits

    gates = gates or DEFAULT_GATES
    if beta == space.alpha:
        raise BadParams("beta must differ from alpha")
    if space.n > gates.graph_vertices:
        raise GateExceeded(f"{space.n} vertices exceed graph gate")
    subs = suborbits(space)
    # locate beta's suborbit by flooding labels from each representative
    agen_images = [space.perm_images(g) for g in space.sub.gens]
    lab = [-1] * space.n
    for s in subs:
        lab[s.first] = s.sid
        queue = [s.first]
        for x in queue:
            for img in agen_images:
                y = img[x]
                if lab[y] == -1:
                    lab[y] = s.sid
                    queue.append(y)
    sub = subs[lab[beta]]
    if not sub.self_paired:
        raise NotSelfPaired(f"suborbit {sub.sid} is paired with {sub.paired_with}")
    edges = set()
    start = (space.alpha, beta) if space.alpha < beta else (beta, space.alpha)
    edges.add(start)
    queue = [start]
    for (u, v) in queue:
        for img in space.gen_images:
            e = (img[u], img[v]) if img[u] < img[v] else (img[v], img[u])
            if e not in edges:
                edges.add(e)
                queue.append(e)
    return Graph.from_edges(space.n, edges)


def lex_double(g):
    """Lexicographic product with two isolated vertices: vertices (v, i),
    (v,i) ~ (w,j) iff v ~ w."""
    n = g.n
    edges = []
    for u, v in g.edges():
        for i in (0, 1):
            for j in (0, 1):
                edges.append((u + i * n, v + j * n))
    return Graph.from_edges(2 * n, edges)


def lex_double_quotient(g2):
    """Quotient of a 2n-vertex graph by the pairing {v, v+n}; inverse of
    lex_double on its image."""
    if g2.n % 2:
        raise BadParams("odd vertex count")
    n = g2.n // 2
    edges = set()
    for u, v in g2.edges():
        a, b = u % n, v % n
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(n, edges)


def bipartite_double_of_orbital(n, pairs):
    """Doubled bipartite graph of an orbital: vertices u+ (0..n-1) and
    u- (n..2n-1), edges {u+, w-} for (u, w) in the orbital."""
    edges = [(u, w + n) for u, w in pairs]
    return Graph.from_edges(2 * n, edges)
