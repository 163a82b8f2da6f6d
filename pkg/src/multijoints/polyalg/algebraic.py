"""Real algebraic numbers as (square-free integer polynomial, isolating interval)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .unipoly import (SturmSequence, UniPoly, bivariate_resultant, int_exquo, int_gcd,
                      int_sign_at, isolate_real_roots, primitive_int)


class RealAlgebraic:
    """The unique root of ``poly`` in ``(lo, hi]``; rational when ``lo == hi``."""

    __slots__ = ("poly", "lo", "hi", "_ss")

    def __init__(self, poly: Sequence[int], lo: Fraction, hi: Fraction, ss: SturmSequence = None):
        self.poly = list(poly)
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._ss = ss
        if len(self.poly) == 2 and lo != hi:
            self.lo = self.hi = Fraction(-self.poly[0], self.poly[1])

    @classmethod
    def rational(cls, q) -> "RealAlgebraic":
        q = Fraction(q)
        return cls([-q.numerator, q.denominator], q, q)

    @classmethod
    def roots_of(cls, u) -> List["RealAlgebraic"]:
        """All distinct real roots of a nonzero polynomial, increasing."""
        ss = SturmSequence(u)
        out = []
        for lo, hi in isolate_real_roots(ss):
            if lo == hi:
                out.append(cls.rational(lo))
            else:
                out.append(cls(ss.poly, lo, hi, ss))
        return out

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return self.lo

    def _sturm(self) -> SturmSequence:
        if self._ss is None:
            self._ss = SturmSequence(self.poly)
        return self._ss

    def refine(self, width: Fraction) -> None:
        """Bisect until hi - lo < width (or an exact rational root is hit)."""
        while not self.is_rational and self.hi - self.lo >= width:
            self._bisect()

    def _bisect(self) -> None:
        mid = (self.lo + self.hi) / 2
        s_mid = int_sign_at(self.poly, mid)
        if s_mid == 0:
            self.lo = self.hi = mid
            self.poly = [-mid.numerator, mid.denominator]
            self._ss = None
            return
        # the root lies in (lo, mid] iff the sign changes there (hi is never a root)
        if int_sign_at(self.poly, self.hi) * s_mid < 0:
            self.lo = mid
        else:
            self.hi = mid

    def approx(self, width: Fraction = Fraction(1, 2 ** 40)) -> float:
        self.refine(width)
        return float((self.lo + self.hi) / 2)

    def try_rational(self) -> Optional[Fraction]:
        """The value as a Fraction if the number is rational, else None."""
        if self.is_rational:
            return self.lo
        lc, c0 = abs(self.poly[-1]), abs(self.poly[0])
        # rational roots p/q of an integer polynomial have q | lc; such roots are
        # separated by at least 1/lc^2
        self.refine(Fraction(1, 2 * lc * lc))
        if self.is_rational:
            return self.lo
        cand = ((self.lo + self.hi) / 2).limit_denominator(lc)
        if c0 == 0 and self.lo < 0 <= self.hi:
            cand = Fraction(0)
        if self.lo < cand <= self.hi and int_sign_at(self.poly, cand) == 0:
            self.lo = self.hi = cand
            return cand
        return None

    def interval_eval(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
        """Enclosure of g(self) for g given by ascending coefficients, via interval Horner."""
        lo, hi = self.lo, self.hi
        a, b = Fraction(0), Fraction(0)
        for c in reversed(coeffs):
            prods = (a * lo, a * hi, b * lo, b * hi)
            a, b = min(prods) + c, max(prods) + c
        return a, b

    def sign_at(self, g: UniPoly) -> int:
        """Exact sign of g at this number."""
        if not g:
            return 0
        if self.is_rational:
            v = g(self.lo)
            return (v > 0) - (v < 0)
        gi = primitive_int(g.coeffs)
        if len(gi) == 1:
            return 1 if gi[0] > 0 else -1
        common = int_gcd(self.poly, gi)
        if len(common) > 1 and SturmSequence(common).count(self.lo, self.hi) > 0:
            return 0
        while True:
            a, b = self.interval_eval(gi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self._bisect()
            if self.is_rational:
                v = int_sign_at(gi, self.lo)
                return v

    def eval(self, g: UniPoly, h: Optional[UniPoly] = None) -> "RealAlgebraic":
        """The number g(self) / h(self) as a RealAlgebraic; h defaults to 1."""
        h = UniPoly.const(1) if h is None else h
        if self.sign_at(h) == 0:
            raise ZeroDivisionError("denominator vanishes at this number")
        if self.is_rational:
            return RealAlgebraic.rational(g(self.lo) / h(self.lo) if g else 0)
        if g.degree <= 0 and h.degree <= 0:
            return RealAlgebraic.rational(g(0) / h(0) if g else 0)
        # defining polynomial of y = g/h: Res_t(f(t), y h(t) - g(t)), after
        # removing roots of f where h vanishes (they would kill the resultant)
        f = self.poly
        if h.degree > 0:
            common = int_gcd(f, primitive_int(h.coeffs))
            if len(common) > 1:
                f = int_exquo(f, common)
        n = max(len(g.coeffs), len(h.coeffs))
        gc = list(g.coeffs) + [0] * (n - len(g.coeffs))
        hc = list(h.coeffs) + [0] * (n - len(h.coeffs))
        res = bivariate_resultant([UniPoly.const(c) for c in f],
                                  [UniPoly((-a, b)) for a, b in zip(gc, hc)])
        roots = isolate_real_roots(res)
        while True:
            a, b = _idiv(self.interval_eval(g.coeffs), self.interval_eval(h.coeffs))
            if a is not None:
                hits = [(lo, hi) for lo, hi in roots
                        if ((a <= lo <= b) if lo == hi else (lo < b and hi >= a))]
                if len(hits) == 1:
                    lo, hi = hits[0]
                    if lo == hi:
                        return RealAlgebraic.rational(lo)
                    ss = SturmSequence(res)
                    out = RealAlgebraic(ss.poly, lo, hi, ss)
                    out.try_rational()  # the resultant may carry rational factors
                    return out
            self._bisect()
            if self.is_rational:
                return RealAlgebraic.rational(g(self.lo) / h(self.lo) if g else 0)
            roots = _refine_all(res, roots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealAlgebraic):
            other = RealAlgebraic.rational(other)
        if self.is_rational and other.is_rational:
            return self.lo == other.lo
        if self.is_rational:
            return other.sign_at(UniPoly((-self.lo, 1))) == 0
        if other.is_rational:
            return self.sign_at(UniPoly((-other.lo, 1))) == 0
        if self.hi <= other.lo or other.hi <= self.lo:
            return False
        common = int_gcd(self.poly, other.poly)
        if len(common) <= 1:
            return False
        # a root of the common factor in the overlap is a root of both, hence both numbers
        return SturmSequence(common).count(max(self.lo, other.lo), min(self.hi, other.hi)) > 0

    def __hash__(self):
        # one number has many representations; equality is the expensive part
        return 0

    def __lt__(self, other: "RealAlgebraic") -> bool:
        if self == other:
            return False
        a, b = self, other
        while True:
            if a.hi <= b.lo:
                return True
            if b.hi <= a.lo:
                return False
            if not a.is_rational:
                a._bisect()
            if not b.is_rational:
                b._bisect()

    def __repr__(self):
        if self.is_rational:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic(root of {self.poly} in ({self.lo}, {self.hi}])"

    def to_json(self):
        from ..core_geom import rat_str
        if self.is_rational:
            return rat_str(self.lo)
        return {"poly": [str(c) for c in self.poly], "lo": rat_str(self.lo), "hi": rat_str(self.hi)}


def _idiv(num, den):
    """Interval quotient, or (None, None) while the denominator straddles 0."""
    if den[0] <= 0 <= den[1]:
        return None, None
    qs = (num[0] / den[0], num[0] / den[1], num[1] / den[0], num[1] / den[1])
    return min(qs), max(qs)


def _refine_all(res: UniPoly, roots):
    ss = SturmSequence(res)
    out = []
    for lo, hi in roots:
        if lo == hi:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if int_sign_at(ss.poly, mid) == 0:
            out.append((mid, mid))
        elif ss.count(lo, mid) == 1:
            out.append((lo, mid))
        else:
            out.append((mid, hi))
    return out
