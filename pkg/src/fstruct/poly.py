"""Sparse multivariate polynomials with rational coefficients.

Monomials are packed into a single Python integer: one 16-bit field per
variable (variable 0 most significant) with the total degree stored above
them.  Integer comparison of packed keys is therefore graded lexicographic
order, and monomial multiplication is integer addition.

The gcd is computed recursively, one variable at a time: contents are
split off and the primitive parts are fed to a subresultant remainder
sequence over the ring of polynomials in the remaining variables.
"""

from __future__ import annotations

from fractions import Fraction

_BITS = 16
_MASK = (1 << _BITS) - 1
# exponents must stay below this so the guard bit of each field is free
_MAX_EXP = 1 << (_BITS - 1)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable polynomial in ``nvars`` variables.

    ``terms`` maps packed monomials to nonzero ``int`` or ``Fraction``
    coefficients.  Callers must treat it as read-only.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, c, nvars: int) -> Poly:
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls(nvars, {0: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        return cls(nvars, {(1 << _shift(i, nvars)) + _degunit(nvars): 1})

    @classmethod
    def monomial(cls, exps, nvars: int, coeff=1) -> Poly:
        return cls(nvars, {pack(exps, nvars): coeff})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        return self.terms.get(0, 0)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == 1

    def lm(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> (_BITS * self.nvars)

    def degree_in(self, i: int) -> int:
        s = _shift(i, self.nvars)
        if not self.terms:
            return -1
        return max((m >> s) & _MASK for m in self.terms)

    def variables(self) -> set[int]:
        """Indices of variables that occur with a positive exponent."""
        used = 0
        low = _degunit(self.nvars) - 1
        for m in self.terms:
            used |= m & low
        return {i for i in range(self.nvars) if (used >> _shift(i, self.nvars)) & _MASK}

    def items(self):
        """(exponent tuple, coefficient) pairs in descending graded-lex order."""
        for m in sorted(self.terms, reverse=True):
            yield unpack(m, self.nvars), self.terms[m]

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: Poly) -> Poly:
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __sub__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly(self.nvars)
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return Poly(self.nvars, {m: c for m, c in out.items() if c})

    def scale(self, c) -> Poly:
        if not c:
            return Poly(self.nvars)
        if c == 1:
            return self
        return Poly(self.nvars, {m: _norm(v * c) for m, v in self.terms.items()})

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_monomial(self, m: int, c=1) -> Poly:
        return Poly(self.nvars, {k + m: _norm(v * c) for k, v in self.terms.items()})

    def monic(self) -> Poly:
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        inv = Fraction(1) / lc
        return self.scale(inv)

    def deriv(self, i: int) -> Poly:
        s = _shift(i, self.nvars)
        step = (1 << s) + _degunit(self.nvars)
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & _MASK
            if e:
                out[m - step] = c * e
        return Poly(self.nvars, out)

    def evaluate(self, point):
        """Exact value at ``point`` (a sequence of rationals, one per variable)."""
        total = Fraction(0)
        n = self.nvars
        for m, c in self.terms.items():
            v = Fraction(c)
            for i in range(n):
                e = (m >> _shift(i, n)) & _MASK
                if e:
                    v *= Fraction(point[i]) ** e
            total += v
        return total

    # -- division ---------------------------------------------------------

    def min_monomial(self) -> int:
        """Packed gcd of all monomials (componentwise minimum exponent)."""
        n = self.nvars
        mins = None
        for m in self.terms:
            e = unpack(m, n)
            mins = e if mins is None else tuple(map(min, mins, e))
        return pack(mins or (0,) * n, n)

    def div_monomial(self, m: int) -> Poly:
        return Poly(self.nvars, {k - m: c for k, c in self.terms.items()})

    def exact_div(self, d: Poly) -> Poly:
        """Quotient ``self / d``; raises ``ArithmeticError`` if not exact."""
        if not d.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if d.is_const():
            return self.scale(Fraction(1) / d.terms[0])
        n = self.nvars
        if len(d.terms) == 1:
            (dm, dc), = d.terms.items()
            inv = Fraction(1) / dc
            out = {}
            for m, c in self.terms.items():
                if not divides(dm, m, n):
                    raise ArithmeticError("inexact polynomial division")
                out[m - dm] = _norm(c * inv)
            return Poly(n, out)
        dm = max(d.terms)
        inv = Fraction(1) / d.terms[dm]
        rest = [(m, c) for m, c in d.terms.items() if m != dm]
        r = dict(self.terms)
        q = {}
        while r:
            m = max(r)
            if not divides(dm, m, n):
                raise ArithmeticError("inexact polynomial division")
            c = _norm(r.pop(m) * inv)
            qm = m - dm
            q[qm] = c
            for m2, c2 in rest:
                k = m2 + qm
                v = r.get(k, 0) - c * c2
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
        return Poly(n, q)

    # -- recursive view ---------------------------------------------------

    def coeffs_in(self, i: int) -> list[Poly]:
        """Coefficients as a polynomial in variable ``i`` (index = degree)."""
        n = self.nvars
        s = _shift(i, n)
        ds = _BITS * n
        groups: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = (m >> s) & _MASK
            groups.setdefault(e, {})[m - (e << s) - (e << ds)] = c
        if not groups:
            return []
        top = max(groups)
        return [Poly(n, groups.get(k, {})) for k in range(top + 1)]

    @staticmethod
    def from_coeffs(coeffs: list[Poly], i: int, nvars: int) -> Poly:
        s = _shift(i, nvars)
        ds = _BITS * nvars
        out = {}
        for k, p in enumerate(coeffs):
            off = (k << s) + (k << ds)
            for m, c in p.terms.items():
                out[m + off] = c
        return Poly(nvars, out)

    def __repr__(self):
        return f"Poly({self.nvars}, {dict(self.items())})"


def _shift(i: int, n: int) -> int:
    return _BITS * (n - 1 - i)


def _degunit(n: int) -> int:
    return 1 << (_BITS * n)


def pack(exps, n: int) -> int:
    key = sum(exps) << (_BITS * n)
    for i, e in enumerate(exps):
        if e >= _MAX_EXP:
            raise OverflowError("exponent too large")
        key |= e << _shift(i, n)
    return key


def unpack(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> _shift(i, n)) & _MASK for i in range(n))


def _guards(n: int) -> int:
    return sum(1 << (_BITS * i + _BITS - 1) for i in range(n))


_GUARDS: dict[int, tuple[int, int]] = {}


def divides(a: int, b: int, n: int) -> bool:
    """True if packed monomial ``a`` divides ``b``."""
    g = _GUARDS.get(n)
    if g is None:
        g = _GUARDS[n] = (_guards(n), _degunit(n) - 1)
    guards, low = g
    return ((((b & low) | guards) - (a & low)) & guards) == guards


# -- gcd ------------------------------------------------------------------


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    n = p.nvars
    if not p.terms:
        return q.monic()
    if not q.terms:
        return p.monic()
    if p.is_const() or q.is_const():
        return Poly.const(1, n)
    mp, mq = p.min_monomial(), q.min_monomial()
    mono = pack(tuple(map(min, unpack(mp, n), unpack(mq, n))), n)
    if mp:
        p = p.div_monomial(mp)
    if mq:
        q = q.div_monomial(mq)
    g = _gcd(p, q)
    if mono:
        g = g.mul_monomial(mono)
    return g.monic()


def _gcd(p: Poly, q: Poly) -> Poly:
    n = p.nvars
    if p.is_const() or q.is_const():
        return Poly.const(1, n)
    pm, qm = p.monic(), q.monic()
    if pm == qm:
        return pm
    vp, vq = p.variables(), q.variables()
    v = min(vp | vq)
    if v not in vq:
        return _gcd_many([q] + p.coeffs_in(v))
    if v not in vp:
        return _gcd_many([p] + q.coeffs_in(v))
    cp = _gcd_many(p.coeffs_in(v))
    cq = _gcd_many(q.coeffs_in(v))
    c = gcd(cp, cq)
    pp = p.exact_div(cp) if not cp.is_one() else p
    qq = q.exact_div(cq) if not cq.is_one() else q
    g = _subresultant_last(pp.coeffs_in(v), qq.coeffs_in(v))
    if len(g) <= 1:
        return c.monic()
    g = _primitive(g)
    return (c * Poly.from_coeffs(g, v, n)).monic()


def _gcd_many(polys: list[Poly]) -> Poly:
    polys = sorted((p for p in polys if p.terms), key=lambda p: len(p.terms))
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    g = polys[0].monic()
    for p in polys[1:]:
        if g.is_one():
            break
        g = gcd(g, p)
    return g


def _primitive(coeffs: list[Poly]) -> list[Poly]:
    c = _gcd_many(coeffs)
    if c.is_one():
        return coeffs
    return [a.exact_div(c) for a in coeffs]


def _strip(a: list[Poly]) -> list[Poly]:
    while a and not a[-1].terms:
        a.pop()
    return a


def _prem(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of ``a`` by ``b`` (coefficient lists in one variable)."""
    db = len(b) - 1
    r = list(a)
    lcb = b[-1]
    times = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lcr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lcb for x in r]
        for k, bk in enumerate(b):
            r[k + shift] = r[k + shift] - lcr * bk
        r.pop()
        _strip(r)
        times -= 1
    if times > 0 and r:
        f = lcb ** times
        r = [x * f for x in r]
    return r


def _subresultant_last(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Last nonzero element of the subresultant remainder sequence."""
    if len(a) < len(b):
        a, b = b, a
    n = a[0].nvars
    g = Poly.const(1, n)
    h = Poly.const(1, n)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [Poly.const(1, n)]
        a = b
        div = g * h ** delta
        b = [x.exact_div(div) for x in r] if not div.is_one() else r
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))

