"""Dense univariate polynomials over Q, Sturm sequences and resultants."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

from ..core_geom import rat, rat_str
from ..errors import ZeroPolynomial


class UniPoly:
    """Immutable polynomial with Fraction coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, *roots) -> "UniPoly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-rat(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        return "UniPoly(" + " + ".join(terms) + ")"

    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = c / lcb
                quo[k - db] = f
                for j, b in enumerate(other.coeffs):
                    rem[k - db + j] -= f * b
        return UniPoly(quo), UniPoly(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def shift_scale(self, a, c) -> "UniPoly":
        """Return t -> self(a*t + c)."""
        return self.compose(UniPoly((c, a)))

    def to_json(self) -> list:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "UniPoly":
        return cls([rat(c) for c in data])

    def int_coeffs(self) -> List[int]:
        return primitive_int(self.coeffs)


# -- integer helpers ----------------------------------------------------------

def primitive_int(coeffs: Sequence) -> List[int]:
    """Positive multiple of the coefficient list that is integral with content 1."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(gcd, ints)
    return [v // g for v in ints]


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _content(a: Sequence[int]) -> int:
    return reduce(gcd, a, 0)


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    a = list(a)
    db = len(b) - 1
    lcb = b[-1]
    steps = len(a) - len(b) + 1
    if steps <= 0:
        return a
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        a = [x * lcb for x in a]
        if c:
            for j, bj in enumerate(b):
                a[k - db + j] -= c * bj
        a.pop()
    return _trim(a)


def _homog_sign(a: Sequence[int], p: int, q: int) -> int:
    n = len(a) - 1
    acc = 0
    for i in range(n, -1, -1):
        acc = acc * p + a[i] * q ** (n - i)
    return (acc > 0) - (acc < 0)


def int_sign_at(a: Sequence[int], x: Fraction) -> int:
    if not a:
        return 0
    return _homog_sign(a, x.numerator, x.denominator)


def int_gcd(a: List[int], b: List[int]) -> List[int]:
    """Primitive gcd of two integer polynomials via the primitive PRS."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a:
        return _normalize(b)
    if not b:
        return _normalize(a)
    if len(a) < len(b):
        a, b = b, a
    a = [v // _content(a) for v in a]
    b = [v // _content(b) for v in b]
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a = b
        if r:
            g = _content(r)
            b = [v // g for v in r]
        else:
            b = []
    return _normalize(a)


def _normalize(a: List[int]) -> List[int]:
    if not a:
        return []
    g = _content(a)
    a = [v // g for v in a]
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def _int_derivative(a: Sequence[int]) -> List[int]:
    return [i * c for i, c in enumerate(a)][1:]


def int_exquo(a: List[int], b: List[int]) -> List[int]:
    """Exact division of integer polynomials, quotient scaled to be primitive integral."""
    q = UniPoly(a).exquo(UniPoly(b))
    return primitive_int(q.coeffs)


def int_squarefree(a: List[int]) -> List[int]:
    g = int_gcd(a, _int_derivative(a))
    if len(g) <= 1:
        return _normalize(list(a))
    return _normalize(int_exquo(a, g))


# -- public operations ---------------------------------------------------------

def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    g = int_gcd(primitive_int(a.coeffs), primitive_int(b.coeffs))
    return UniPoly(g).monic()


def squarefree_part(u: UniPoly) -> UniPoly:
    if not u:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    return UniPoly(int_squarefree(primitive_int(u.coeffs)))


def sturm_chain(a: Sequence[int]) -> List[List[int]]:
    """Sturm sequence of a square-free integer polynomial, scaled by positive factors only."""
    chain = [list(a)]
    d = _int_derivative(a)
    if not d:
        return chain
    g = _content(d)
    chain.append([v // g for v in d])
    while len(chain[-1]) > 1:
        p, q = chain[-2], chain[-1]
        r = _prem(p, q)
        delta = len(p) - len(q)
        if q[-1] < 0 and (delta + 1) % 2 == 1:
            r = [-v for v in r]
        if not r:
            break
        g = _content(r)
        chain.append([-v // g for v in r])
    return chain


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _var_at(chain, x: Fraction) -> int:
    return _variations([int_sign_at(p, x) for p in chain])


def _var_inf(chain, positive: bool) -> int:
    signs = []
    for p in chain:
        s = 1 if p[-1] > 0 else -1
        if not positive and (len(p) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


class SturmSequence:
    """Sturm sequence of the square-free part of a nonzero polynomial."""

    def __init__(self, u):
        if isinstance(u, UniPoly):
            if not u:
                raise ZeroPolynomial("Sturm sequence of the zero polynomial")
            a = primitive_int(u.coeffs)
        else:
            a = list(u)
            if not a:
                raise ZeroPolynomial("Sturm sequence of the zero polynomial")
        self.poly = int_squarefree(a)
        self.chain = sturm_chain(self.poly)

    def count(self, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
        """Distinct real roots in (lo, hi]; ``None`` stands for -inf / +inf."""
        vlo = _var_inf(self.chain, False) if lo is None else _var_at(self.chain, Fraction(lo))
        vhi = _var_inf(self.chain, True) if hi is None else _var_at(self.chain, Fraction(hi))
        return vlo - vhi

    def total(self) -> int:
        return self.count()


def sturm_distinct_real_roots(u: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``u`` (in ``(lo, hi]`` when bounds are given)."""
    return SturmSequence(u).count(lo, hi)


def cauchy_bound(a: Sequence[int]) -> Fraction:
    lc = abs(a[-1])
    return 1 + Fraction(max(abs(c) for c in a[:-1]), lc) if len(a) > 1 else Fraction(1)


def isolate_real_roots(u) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one real root, in increasing order.

    A degenerate interval ``(r, r)`` marks an exactly located rational root.
    """
    ss = u if isinstance(u, SturmSequence) else SturmSequence(u)
    a = ss.poly
    if len(a) <= 1:
        return []
    bound = cauchy_bound(a)
    out: List[Tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, ss.count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten(ss, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi, ss.count(mid, hi)))
        stack.append((lo, mid, ss.count(lo, mid)))
    out.sort()
    return out


def _tighten(ss: SturmSequence, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Make the endpoints non-roots (or collapse onto an exact root)."""
    a = ss.poly
    if int_sign_at(a, hi) == 0:
        return hi, hi
    while int_sign_at(a, lo) == 0:
        mid = (lo + hi) / 2
        if ss.count(mid, hi) == 1:
            lo = mid
        else:
            hi = mid
            if int_sign_at(a, hi) == 0:
                return hi, hi
    return lo, hi


# -- resultants ------------------------------------------------------------------

def _fraction_exquo(a, b):
    return a / b


def _uni_exquo(a: UniPoly, b: UniPoly) -> UniPoly:
    return a.exquo(b)


def _pseudo_rem(A: list, B: list):
    """lc(B)^(deg A - deg B + 1) * A mod B; exactly that many scaling steps."""
    A = list(A)
    db = len(B) - 1
    lcb = B[-1]
    for k in range(len(A) - 1, db - 1, -1):
        c = A[k]
        A = [x * lcb for x in A]
        if c:
            for j, bj in enumerate(B):
                A[k - db + j] = A[k - db + j] - c * bj
        A.pop()
    while A and not A[-1]:
        A.pop()
    return A


def resultant(A: Sequence, B: Sequence, exquo: Callable = None, one=None):
    """Resultant of two polynomials given as coefficient lists (ascending) over an
    integral domain, by the subresultant PRS.

    Coefficients must support ``+ - *`` and truthiness; ``exquo`` performs exact
    division in the coefficient ring.
    """
    A = [c for c in A]
    B = [c for c in B]
    while A and not A[-1]:
        A.pop()
    while B and not B[-1]:
        B.pop()
    if not A or not B:
        return 0 if one is None else one * 0
    if one is None:
        one = Fraction(1)
    if exquo is None:
        exquo = _uni_exquo if isinstance(one, UniPoly) else _fraction_exquo
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    g = one
    h = one
    while len(B) > 1:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _pseudo_rem(A, B)
        A = B
        div = g * _pow(h, delta, one)
        B = [exquo(c, div) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exquo(_pow(g, delta, one), _pow(h, delta - 1, one))
        if not B:
            return one * 0
    da = len(A) - 1
    if da == 0:
        res = _pow(B[0], 0, one)
    else:
        res = exquo(_pow(B[0], da, one), _pow(h, da - 1, one))
    return res * s


def _pow(x, n, one):
    r = one
    for _ in range(n):
        r = r * x
    return r


def bivariate_resultant(F: Sequence[UniPoly], G: Sequence[UniPoly]) -> UniPoly:
    """Res_s(F, G) for F, G given as lists (ascending in s) of UniPoly coefficients in t."""
    r = resultant(list(F), list(G), exquo=_uni_exquo, one=UniPoly.const(1))
    return r if isinstance(r, UniPoly) else UniPoly.const(r)
