"""Permutations on finite domains {1..d}.

Convention: right action throughout, written point^p.  Composition p * q
means "apply p, then q", so point^(p*q) = (point^p)^q.  Points are 1-based
in all I/O (cycle notation, rendering, CLI); internally images are stored
0-based as a tuple.

Cycle grammar: ``(a,b,c)(d,e)`` with insignificant whitespace; the empty
string is the identity.  Rendered output sorts cycles by minimum moved
point.
"""

from __future__ import annotations

import math
import re
from functools import reduce

from .errors import DegreeMismatch, MalformedCycle, PointOutOfRange, RepeatedPoint

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """An immutable permutation of {1..degree}, stored as 0-based images."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text, degree):
        """Parse cycle notation over {1..degree}; fixed points may be omitted."""
        images = parse_cycles(text, degree)
        return cls(images)

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degrees {len(self.images)} and {len(other.images)} differ"
            )
        q = other.images
        return Perm(tuple(q[i] for i in self.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def conj(self, other):
        """Conjugate self^other = other^-1 * self * other."""
        return other.inverse() * self * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(len(self.images))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, point):
        """Image of a 0-based point."""
        return self.images[point]

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles as tuples of 0-based points, each starting at its
        minimum, sorted by that minimum."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        """Sorted tuple of cycle lengths including fixed points."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (len(self.images) - sum(lengths))
        return tuple(sorted(lengths))

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def order(self):
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def moved(self):
        return [i for i, j in enumerate(self.images) if i != j]

    def render(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Perm({self.render()}, d={self.degree})"


def parse_cycles(text, degree):
    """Parse cycle notation into a 0-based image tuple."""
    stripped = text.replace(" ", "").replace("\t", "")
    if stripped in ("", "()"):
        return tuple(range(degree))
    consumed = "".join(_CYCLE_RE.findall(stripped))
    skeleton = _CYCLE_RE.sub("", stripped)
    if skeleton:
        raise MalformedCycle(f"unparsable cycle text: {text!r}")
    images = list(range(degree))
    used = set()
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        try:
            pts = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise MalformedCycle(f"bad cycle body {body!r}") from exc
        for p in pts:
            if not 1 <= p <= degree:
                raise PointOutOfRange(f"point {p} outside 1..{degree}")
            if p in used:
                raise RepeatedPoint(f"point {p} repeated")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    if not consumed and used:
        raise MalformedCycle(f"unparsable cycle text: {text!r}")
    return tuple(images)


def sign_and_order(p):
    """(sign, order) of a permutation: sign −1 to the number of even-length
    cycles, order the lcm of cycle lengths."""
    return p.sign(), p.order()


def pair_index(n):
    """2-subsets of {0..n-1} in lexicographic (min,max) order, with lookup."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    lookup = {pq: k for k, pq in enumerate(pairs)}
    return pairs, lookup


def lift_to_pairs(p):
    """Induced permutation on the C(n,2) unordered pairs, lex-ordered."""
    n = p.degree
    pairs, lookup = pair_index(n)
    images = [0] * len(pairs)
    for k, (i, j) in enumerate(pairs):
        a, b = p.images[i], p.images[j]
        if a > b:
            a, b = b, a
        images[k] = lookup[(a, b)]
    return Perm(images)


def lift_to_tuples(p, k):
    """Induced permutation on ordered k-tuples of distinct points, lex order."""
    import itertools

    n = p.degree
    tuples = list(itertools.permutations(range(n), k))
    lookup = {t: i for i, t in enumerate(tuples)}
    images = [lookup[tuple(p.images[x] for x in t)] for t in tuples]
    return Perm(images)
