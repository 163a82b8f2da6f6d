"""Sparse trivariate polynomials over Q."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from ..core_geom import Line3, Point3, rat, rat_str
from ..errors import ValidationError, ZeroPolynomial
from .unipoly import UniPoly, int_gcd, primitive_int

Exp = Tuple[int, int, int]


class TriPoly:
    """Immutable polynomial in x, y, z stored as ``{(i, j, k): coefficient}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] = None):
        clean: Dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            c = rat(c) if not isinstance(c, Fraction) else c
            if c:
                e = tuple(int(v) for v in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValidationError(f"bad exponent {e}")
                clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TriPoly is immutable")

    # constructors
    @classmethod
    def const(cls, c) -> "TriPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, i: int) -> "TriPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def xyz(cls):
        return cls.var(0), cls.var(1), cls.var(2)

    @classmethod
    def linear(cls, a, b, c, d) -> "TriPoly":
        """a*x + b*y + c*z + d."""
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c, (0, 0, 0): d})

    # basic protocol
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TriPoly.const(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "TriPoly(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip("xyz", e) if k)
            c = self.terms[e]
            parts.append(f"{c}*{mon}" if mon else str(c))
        return "TriPoly(" + " + ".join(parts) + ")"

    def _coerce(self, other) -> "TriPoly":
        return other if isinstance(other, TriPoly) else TriPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TriPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TriPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TriPoly({e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        integral = all(c.denominator == 1 for c in a.values()) and all(
            c.denominator == 1 for c in b.values())
        out: Dict[Exp, object] = {}
        if integral:
            bi = [(e, c.numerator) for e, c in b.items()]
            for (i, j, k), c in a.items():
                c = c.numerator
                for (p, q, r), d in bi:
                    key = (i + p, j + q, k + r)
                    out[key] = out.get(key, 0) + c * d
            return TriPoly({e: Fraction(v) for e, v in out.items() if v})
        for (i, j, k), c in a.items():
            for (p, q, r), d in b.items():
                key = (i + p, j + q, k + r)
                out[key] = out.get(key, 0) + c * d
        return TriPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = TriPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "TriPoly":
        return self * rat(c)

    # evaluation
    def __call__(self, point) -> Fraction:
        return self.eval(point)

    def eval(self, point) -> Fraction:
        x, y, z = (rat(c) for c in point)
        px, py, pz = _powers(x, self.degree), _powers(y, self.degree), _powers(z, self.degree)
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * px[i] * py[j] * pz[k]
        return total

    def sign_at(self, point) -> int:
        """Exact sign at a rational point, evaluated on a common integer denominator."""
        x, y, z = (rat(c) for c in point)
        den = x.denominator * y.denominator * z.denominator
        X, Y, Z = int(x * den), int(y * den), int(z * den)
        deg = self.degree
        if deg < 0:
            return 0
        px, py, pz, pd = _powers(X, deg), _powers(Y, deg), _powers(Z, deg), _powers(den, deg)
        # common integer scale for the coefficients
        cden = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.terms.values()), 1)
        total = 0
        for (i, j, k), c in self.terms.items():
            total += (c.numerator * (cden // c.denominator)) * px[i] * py[j] * pz[k] * pd[deg - i - j - k]
        return (total > 0) - (total < 0)

    # calculus and substitution
    def diff(self, var: int) -> "TriPoly":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return TriPoly(out)

    def substitute(self, fx: UniPoly, fy: UniPoly, fz: UniPoly) -> UniPoly:
        """Univariate polynomial t -> p(fx(t), fy(t), fz(t)) by exact composition."""
        deg = self.degree
        if deg < 0:
            return UniPoly()
        px, py, pz = _upowers(fx, deg), _upowers(fy, deg), _upowers(fz, deg)
        acc: Dict[int, Fraction] = {}
        cache: Dict[Tuple[int, int], UniPoly] = {}
        for (i, j, k), c in self.terms.items():
            xy = cache.get((i, j))
            if xy is None:
                xy = cache[(i, j)] = px[i] * py[j]
            term = xy * pz[k]
            for n, v in enumerate(term.coeffs):
                acc[n] = acc.get(n, 0) + c * v
        if not acc:
            return UniPoly()
        return UniPoly([acc.get(n, 0) for n in range(max(acc) + 1)])

    def restrict_to_line(self, line: Line3) -> UniPoly:
        fx, fy, fz = (UniPoly((b, d)) for b, d in zip(line.base, line.dir))
        return self.substitute(fx, fy, fz)

    def restrict_to_curve(self, curve) -> UniPoly:
        return self.substitute(curve.px, curve.py, curve.pz)

    # normalisation
    def primitive(self) -> "TriPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self.terms:
            return self
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.terms.values()), 1)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = reduce(gcd, ints.values())
        return TriPoly({e: Fraction(v // g) for e, v in ints.items()})

    def normalized(self) -> "TriPoly":
        """Primitive integer form with positive lexicographically-leading coefficient."""
        p = self.primitive()
        if p.terms and p.terms[max(p.terms)] < 0:
            p = -p
        return p

    def to_json(self) -> list:
        return [[e[0], e[1], e[2], rat_str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "TriPoly":
        terms: Dict[Exp, Fraction] = {}
        for item in data:
            if len(item) != 4:
                raise ValidationError(f"term must be [ex, ey, ez, coeff]: {item!r}")
            e = (int(item[0]), int(item[1]), int(item[2]))
            terms[e] = terms.get(e, 0) + rat(item[3])
        return cls(terms)


def _powers(v, n):
    out = [1]
    for _ in range(n):
        out.append(out[-1] * v)
    return out


def _upowers(f: UniPoly, n: int):
    out = [UniPoly.const(1)]
    for _ in range(n):
        out.append(out[-1] * f)
    return out


class GradientTriple(NamedTuple):
    px: TriPoly
    py: TriPoly
    pz: TriPoly


def gradient(p: TriPoly) -> GradientTriple:
    return GradientTriple(p.diff(0), p.diff(1), p.diff(2))


def restrict_to_line(p, line: Line3) -> UniPoly:
    return p.restrict_to_line(line)


def restrict_to_curve(p: TriPoly, curve) -> UniPoly:
    return p.restrict_to_curve(curve)


# -- multivariate gcd (recursive primitive PRS over Z) --------------------------
# Polynomials are plain dicts {exp: int} in this section.

def _to_int(p: TriPoly) -> Dict[Exp, int]:
    return {e: c.numerator for e, c in p.primitive().terms.items()}


def _vars_in(p: Dict[Exp, int]) -> set:
    return {v for e in p for v in range(3) if e[v]}


def _deg_in(p, v) -> int:
    return max((e[v] for e in p), default=-1)


def _coeffs_in(p, v) -> Dict[int, Dict[Exp, int]]:
    out: Dict[int, Dict[Exp, int]] = {}
    for e, c in p.items():
        f = list(e)
        k = f[v]
        f[v] = 0
        out.setdefault(k, {})[tuple(f)] = c
    return out


def _mul(a, b):
    out: Dict[Exp, int] = {}
    for (i, j, k), c in a.items():
        for (p, q, r), d in b.items():
            key = (i + p, j + q, k + r)
            out[key] = out.get(key, 0) + c * d
    return {e: c for e, c in out.items() if c}


def _sub(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in out.items() if c}


def _shift(p, v, k):
    out = {}
    for e, c in p.items():
        f = list(e)
        f[v] += k
        out[tuple(f)] = c
    return out


def _int_content(p) -> int:
    return reduce(gcd, p.values(), 0)


def _divide_exact(a, b):
    """Exact quotient a / b over Q (lex order division); raises if inexact."""
    a = {e: Fraction(c) for e, c in a.items()}
    lt_b = max(b)
    cb = Fraction(b[lt_b])
    q: Dict[Exp, Fraction] = {}
    while a:
        lt_a = max(a)
        diff = tuple(x - y for x, y in zip(lt_a, lt_b))
        if min(diff) < 0:
            raise ArithmeticError("inexact multivariate division")
        f = a[lt_a] / cb
        q[diff] = q.get(diff, 0) + f
        for e, c in b.items():
            key = tuple(x + y for x, y in zip(e, diff))
            nv = a.get(key, 0) - f * c
            if nv:
                a[key] = nv
            else:
                a.pop(key, None)
    return q


def _prim_int(p) -> Dict[Exp, int]:
    """Primitive integer form of a dict with Fraction or int coefficients."""
    if not p:
        return {}
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in p.values()), 1)
    ints = {e: int(Fraction(c) * den) for e, c in p.items()}
    g = reduce(gcd, ints.values())
    return {e: v // g for e, v in ints.items()}


def _normal(p):
    p = _prim_int(p)
    if p and p[max(p)] < 0:
        p = {e: -c for e, c in p.items()}
    return p


def _content_in(p, v):
    """Content of p as a polynomial in variable v (a polynomial free of v)."""
    cs = list(_coeffs_in(p, v).values())
    g = cs[0]
    for c in cs[1:]:
        if g == {(0, 0, 0): 1}:
            break
        g = _mgcd(g, c)
    return _normal(g)


def _prem_in(a, b, v):
    db = _deg_in(b, v)
    lcb = _coeffs_in(b, v)[db]
    while a and _deg_in(a, v) >= db:
        da = _deg_in(a, v)
        lca = _coeffs_in(a, v)[da]
        a = _sub(_mul(a, lcb), _shift(_mul(lca, b), v, da - db))
    return a


def _pp_in(p, v):
    c = _content_in(p, v)
    if c == {(0, 0, 0): 1}:
        return _normal(p)
    return _normal(_divide_exact(p, c))


def _mgcd(a, b):
    if not a:
        return _normal(b)
    if not b:
        return _normal(a)
    vs = _vars_in(a) | _vars_in(b)
    if not vs:
        return {(0, 0, 0): 1}
    v = max(vs)
    if v not in _vars_in(a):
        return _mgcd(a, _content_in(b, v))
    if v not in _vars_in(b):
        return _mgcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    cg = _mgcd(ca, cb)
    pa, pb = _pp_in(a, v), _pp_in(b, v)
    if _deg_in(pa, v) < _deg_in(pb, v):
        pa, pb = pb, pa
    while pb and _deg_in(pb, v) > 0:
        r = _prem_in(pa, pb, v)
        pa, pb = pb, (_pp_in(r, v) if r else {})
    g = pa if not pb else {(0, 0, 0): 1}
    g = _pp_in(g, v) if _vars_in(g) else {(0, 0, 0): 1}
    return _normal(_mul(cg, g))


def poly_gcd3(a: TriPoly, b: TriPoly) -> TriPoly:
    """Normalised gcd over Q of two trivariate polynomials."""
    return TriPoly({e: Fraction(c) for e, c in _mgcd(_to_int(a), _to_int(b)).items()})


def exact_div(a: TriPoly, b: TriPoly) -> TriPoly:
    return TriPoly(_divide_exact({e: c for e, c in a.terms.items()}, b.terms))


def _squarefree_certificate(p: TriPoly, tries: int = 3) -> bool:
    """Sound (one-sided) test that ``p`` is square-free.

    For every variable v occurring in p, specialise the other two variables to
    integers preserving deg_v; a square-free specialisation rules out any
    repeated factor involving v.
    """
    rng = random.Random(0x5EED)
    for v in range(3):
        dv = max(e[v] for e in p.terms)
        if dv <= 0:
            continue
        lead = TriPoly({e: c for e, c in p.terms.items() if e[v] == dv})
        ok = False
        for _ in range(tries):
            vals = [Fraction(rng.randint(-50, 50)) for _ in range(3)]
            line = [UniPoly.const(vals[i]) for i in range(3)]
            line[v] = UniPoly.t()
            if lead.substitute(*line).is_zero():
                continue
            u = primitive_int(p.substitute(*line).coeffs)
            du = [i * c for i, c in enumerate(u)][1:]
            if len(int_gcd(u, du)) == 1:
                ok = True
                break
        if not ok:
            return False
    return True


def square_free_part(p: TriPoly) -> TriPoly:
    """Product of the distinct irreducible factors of ``p`` (normalised).

    Computed as p / gcd(p, dp/dx, dp/dy, dp/dz); same real zero set as p.
    """
    if not p:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree == 0:
        return TriPoly.const(1)
    if _squarefree_certificate(p):
        return p.normalized()
    a = _to_int(p)
    g = a
    for v in range(3):
        d = _to_int(p.diff(v)) if p.diff(v) else {}
        if d:
            g = _mgcd(g, d)
        if g == {(0, 0, 0): 1}:
            break
    if g == {(0, 0, 0): 1}:
        return p.normalized()
    q = _divide_exact(a, g)
    return TriPoly({e: Fraction(c) for e, c in _normal(q).items()})


def product(polys: Iterable[TriPoly]) -> TriPoly:
    acc = TriPoly.const(1)
    for p in polys:
        acc = acc * p
    return acc
