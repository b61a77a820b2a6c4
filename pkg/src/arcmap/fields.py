"""Small finite fields F_q for q = p^f <= 81, with full add/mul tables.

Elements are integers 0..q-1; the base-p digits of an element, little-endian,
are its coordinates in the basis 1, x, x^2, ... modulo the defining
polynomial.  The defining polynomial is the least monic irreducible of
degree f over F_p, where candidates x^f + a_{f-1}x^{f-1} + ... + a_0 are
ordered by the integer sum(a_i * p^i).  This ordering is frozen: projective
point orderings and golden files depend on it.
"""

from __future__ import annotations

from .errors import NotPrimePower


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m == 1:
                return p, f
            return None
    return None


def _poly_mul_mod(a, b, mod_coeffs, p):
    # polynomials as little-endian coefficient lists
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    f = len(mod_coeffs)
    # reduce: x^f = -mod_coeffs
    for k in range(len(out) - 1, f - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j, mj in enumerate(mod_coeffs):
                out[k - f + j] = (out[k - f + j] - c * mj) % p
    return out[:f]


def _is_irreducible(coeffs, p):
    """coeffs: little-endian non-leading coefficients of a monic poly."""
    f = len(coeffs)
    if f == 1:
        return True
    # no roots in F_p (enough for f <= 3), plus degree-2 factor check for f=4
    def evaluate(x):
        v = 1
        for c in reversed(coeffs):
            v = (v * x + c) % p
        return v

    if any(evaluate(x) == 0 for x in range(p)) and f >= 2:
        return False
    if f in (2, 3):
        return True

    def poly_pow_x(e):
        base = ([0, 1] + [0] * (f - 2))[:f]
        acc = [1] + [0] * (f - 1)
        while e:
            if e & 1:
                acc = _poly_mul_mod(acc, base, coeffs, p)
            base = _poly_mul_mod(base, base, coeffs, p)
            e >>= 1
        return acc

    def x_power_fixed(k):
        xq = poly_pow_x(p ** k)
        diff = xq[:]
        diff[1] = (diff[1] - 1) % p
        return all(c == 0 for c in diff)

    # irreducible of degree f iff x^(p^f) = x mod poly and no proper p^k fixes x
    if any(x_power_fixed(k) for k in range(1, f)):
        return False
    return x_power_fixed(f)


class SmallField:
    def __init__(self, q):
        pp = _factor_prime_power(q)
        if pp is None or q < 2:
            raise NotPrimePower(f"{q} is not a prime power")
        p, f = pp
        self.q = q
        self.p = p
        self.f = f
        if q > 81:
            raise NotPrimePower("fields limited to q <= 81")
        self.poly = self._least_irreducible()
        self._build_tables()
        self.primitive = self._find_primitive()

    def _least_irreducible(self):
        p, f = self.p, self.f
        if f == 1:
            return ()
        for enc in range(p ** f):
            coeffs = tuple((enc // p ** i) % p for i in range(f))
            if _is_irreducible(list(coeffs), p):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    def _digits(self, e):
        p = self.p
        return [(e // p ** i) % p for i in range(self.f)]

    def _enc(self, digits):
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _build_tables(self):
        q, p = self.q, self.p
        self.add_table = [[0] * q for _ in range(q)]
        self.mul_table = [[0] * q for _ in range(q)]
        polys = [self._digits(e) for e in range(q)]
        for a in range(q):
            for b in range(q):
                s = [(x + y) % p for x, y in zip(polys[a], polys[b])]
                self.add_table[a][b] = self._enc(s)
                if self.f == 1:
                    self.mul_table[a][b] = (a * b) % p
                else:
                    m = _poly_mul_mod(polys[a], polys[b], list(self.poly), p)
                    self.mul_table[a][b] = self._enc(m)
        self.neg_table = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add_table[a][b] == 0:
                    self.neg_table[a] = b
                    break
        self.inv_table = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break

    def _find_primitive(self):
        for a in range(2, self.q):
            e = a
            order = 1
            while e != 1:
                e = self.mul_table[e][a]
                order += 1
            if order == self.q - 1:
                return a
        if self.q == 2:
            return 1
        raise AssertionError("no primitive element")

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("field inverse of 0")
        return self.inv_table[a]

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r

    def frobenius(self, a):
        return self.pow(a, self.p)

    def element_order(self, a):
        if a == 0:
            raise ZeroDivisionError("order of 0")
        e, order = a, 1
        while e != 1:
            e = self.mul_table[e][a]
            order += 1
        return order

    def dump_tables(self):
        lines = [f"q={self.q} p={self.p} f={self.f} poly={list(self.poly)} "
                 f"primitive={self.primitive}"]
        for name, table in (("add", self.add_table), ("mul", self.mul_table)):
            lines.append(name)
            for row in table:
                lines.append(" ".join(str(x) for x in row))
        return "\n".join(lines) + "\n"


_CACHE = {}


def make_field(q):
    if q not in _CACHE:
        _CACHE[q] = SmallField(q)
    return _CACHE[q]
