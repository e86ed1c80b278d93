"""Exact arithmetic with one real algebraic number.

A number is given by an integer-coefficient polynomial and a rational
interval isolating exactly one of its real roots.  Field elements are
polynomials in that root, reduced mod the defining polynomial and kept
as Fraction tuples, so equality, sign, and floor are all decided
exactly: zero via a gcd with the defining polynomial, sign via Sturm
counts after bisecting the interval clear of the element's roots.

The defining polynomial does not need to be irreducible; nothing here
factors anything.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedSpecError

ZERO_POLY = ()


def poly_norm(coeffs):
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_norm([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_neg(p):
    return tuple(-c for c in p)


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_mul(p, q):
    if not p or not q:
        return ZERO_POLY
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_norm(out)


def poly_scale(p, c):
    c = Fraction(c)
    if c == 0:
        return ZERO_POLY
    return tuple(a * c for a in p)


def poly_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for shift in range(len(p) - len(q), -1, -1):
        c = p[shift + len(q) - 1] / lead
        if c != 0:
            quo[shift] = c
            for i, b in enumerate(q):
                p[shift + i] -= c * b
    return poly_norm(quo), poly_norm(p)


def poly_mod(p, q):
    return poly_divmod(p, q)[1]


def poly_gcd(p, q):
    while q:
        p, q = q, poly_mod(p, q)
    if not p:
        return ZERO_POLY
    return poly_scale(p, 1 / p[-1])


def poly_deriv(p):
    return poly_norm([i * c for i, c in enumerate(p)][1:])


def poly_eval(p, x):
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def degree(p):
    return len(p) - 1 if p else -1


def squarefree_part(p):
    d = poly_gcd(p, poly_deriv(p))
    if degree(d) <= 0:
        return p
    return poly_divmod(p, d)[0]


def sturm_chain(p):
    chain = [p, poly_deriv(p)]
    while chain[-1]:
        chain.append(poly_neg(poly_mod(chain[-2], chain[-1])))
    chain.pop()
    return chain


def _variations(chain, x):
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, lo, hi):
    """Distinct real roots of p in the open interval (lo, hi).

    Endpoints must not be roots; callers test that exactly first.
    """
    p = squarefree_part(poly_norm(p))
    if not p:
        raise ZeroDivisionError("root counting needs a nonzero polynomial")
    if poly_eval(p, lo) == 0 or poly_eval(p, hi) == 0:
        raise UnsupportedSpecError("interval endpoint is a root; nudge the interval")
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass
class AlgebraicNumber:
    """A real root of ``poly`` isolated by the interval [lo, hi].

    Elements of Q(root) are Fraction tuples of length < deg(poly),
    little-endian in the root.  The interval shrinks in place as sign
    queries refine it; every answer is exact regardless of the width.
    """

    poly: tuple
    lo: Fraction
    hi: Fraction
    _sf: tuple = field(init=False, repr=False)

    def __post_init__(self):
        self.poly = poly_norm(self.poly)
        self.lo = Fraction(self.lo)
        self.hi = Fraction(self.hi)
        if degree(self.poly) < 1:
            raise UnsupportedSpecError("defining polynomial must be nonconstant")
        if not self.lo < self.hi:
            raise UnsupportedSpecError("isolating interval must have positive width")
        if poly_eval(self.poly, self.lo) == 0 or poly_eval(self.poly, self.hi) == 0:
            raise UnsupportedSpecError(
                "interval endpoints must not be roots; widen or shift the interval")
        self._sf = squarefree_part(self.poly)
        if count_roots(self._sf, self.lo, self.hi) != 1:
            raise UnsupportedSpecError("interval must isolate exactly one real root")

    # ---- field elements ----------------------------------------------

    def element(self, coeffs):
        return poly_mod(poly_norm(coeffs), self.poly)

    def from_rational(self, c):
        return self.element((Fraction(c),))

    @property
    def generator(self):
        return self.element((0, 1))

    def add(self, a, b):
        return poly_add(a, b)

    def sub(self, a, b):
        return poly_sub(a, b)

    def mul(self, a, b):
        return poly_mod(poly_mul(a, b), self.poly)

    def is_zero(self, a):
        """Exact test of a(root) == 0 via gcd with the defining polynomial."""
        if not a:
            return True
        d = poly_gcd(self.poly, a)
        if degree(d) <= 0:
            return False
        # roots of d sit among roots of poly, so interval endpoints are safe
        return count_roots(d, self.lo, self.hi) == 1

    def _bisect(self):
        mid = (self.lo + self.hi) / 2
        if poly_eval(self._sf, mid) == 0:
            # the root is rational and equals mid; shrink symmetrically
            width = (self.hi - self.lo) / 4
            self.lo, self.hi = mid - width, mid + width
            return
        if count_roots(self._sf, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def sign(self, a):
        """Sign of a(root) in {-1, 0, 1}, decided exactly."""
        if self.is_zero(a):
            return 0
        while True:
            if poly_eval(a, self.lo) != 0 and poly_eval(a, self.hi) != 0 \
                    and count_roots(a, self.lo, self.hi) == 0:
                v = poly_eval(a, (self.lo + self.hi) / 2)
                if v == 0:
                    # midpoint hit a root of a not counted in the open check
                    self._bisect()
                    continue
                return 1 if v > 0 else -1
            self._bisect()

    def compare(self, a, b):
        return self.sign(poly_sub(a, b))

    def floor(self, a):
        """Largest integer <= a(root)."""
        guess = int(self.approx(a))
        while self.compare(a, self.from_rational(guess)) < 0:
            guess -= 1
        while self.compare(a, self.from_rational(guess + 1)) >= 0:
            guess += 1
        return guess

    def refine(self, width):
        width = Fraction(width)
        while self.hi - self.lo > width:
            self._bisect()

    def approx(self, a, width=Fraction(1, 2 ** 40)):
        """Float estimate of a(root); exactness never depends on it."""
        self.refine(width)
        return float(poly_eval(a, (self.lo + self.hi) / 2))

    def root_float(self):
        self.refine(Fraction(1, 2 ** 40))
        return float((self.lo + self.hi) / 2)
