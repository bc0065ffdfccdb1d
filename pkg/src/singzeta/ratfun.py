"""Exact rational functions in U, T1..Td with denominators built from U, U-1, U-Ti.

Every zeta function produced by this package has a denominator of the form

    U^a * (U-1)^b * (U-T1)^e1 * ... * (U-Td)^ed

so :class:`ZetaRatFun` stores just those exponents next to an integer
numerator polynomial.  Cancellation is tested by synthetic division against
the three kinds of linear factor; no general multivariate gcd is needed.

Once U is specialized and the T variables are collapsed the result is an
ordinary univariate rational function over Q, see :class:`UniRatFun`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .errors import NotDivisible, NotExpandable, PoleAtOne

Exp = tuple[int, ...]

_FACTOR_RE = re.compile(r"^U(?:-(1|T(\d+)))?$")


def _parse_factor(factor: str, d: int) -> int | None:
    """Return None for ``U``, 0 for ``U-1`` and i for ``U-Ti``."""
    m = _FACTOR_RE.match(factor.replace(" ", ""))
    if m is None:
        raise ValueError(f"unknown factor {factor!r}")
    if m.group(1) is None:
        return None
    if m.group(1) == "1":
        return 0
    i = int(m.group(2))
    if not 1 <= i <= d:
        raise ValueError(f"{factor!r} out of range for d={d}")
    return i


class MultiPoly:
    """Integer polynomial in U, T1..Td stored as {(eU, eT1..eTd): coeff}."""

    __slots__ = ("terms", "d")

    def __init__(self, terms=None, d: int = 1):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != d + 1:
                raise ValueError(f"exponent {e} has length != {d + 1}")
            if min(e) < 0:
                raise ValueError(f"negative exponent in {e}")
            if c:
                clean[e] = int(c)
        self.terms = clean
        self.d = d

    @classmethod
    def const(cls, c: int, d: int) -> MultiPoly:
        return cls({(0,) * (d + 1): c}, d)

    @classmethod
    def monomial(cls, c: int, eu: int, et: Exp) -> MultiPoly:
        return cls({(eu, *et): c}, len(et))

    @classmethod
    def linear(cls, factor: str, d: int) -> MultiPoly:
        """The factor itself as a polynomial: U, U-1 or U-Ti."""
        root = _parse_factor(factor, d)
        u = (1,) + (0,) * d
        if root is None:
            return cls({u: 1}, d)
        if root == 0:
            return cls({u: 1, (0,) * (d + 1): -1}, d)
        t = [0] * (d + 1)
        t[root] = 1
        return cls({u: 1, tuple(t): -1}, d)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: MultiPoly) -> None:
        if self.d != other.d:
            raise ValueError(f"variable count mismatch: d={self.d} vs d={other.d}")

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other, self.d)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.d)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.d)
        self._check(other)
        out: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out, self.d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.const(1, self.d)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other, self.d)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, d={self.d})"

    def __str__(self):
        return format_poly(self)

    def evaluate(self, u, ts=()):
        """Exact value at U=u, Ti=ts[i-1] (ints or Fractions)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c) * Fraction(u) ** e[0]
            for t, k in zip(ts, e[1:]):
                v *= Fraction(t) ** k
            total += v
        return total

    def min_u_degree(self) -> int:
        return min((e[0] for e in self.terms), default=0)

    def shift_u(self, k: int) -> MultiPoly:
        """Multiply by U^k (k may be negative when every term allows it)."""
        out = {}
        for e, c in self.terms.items():
            if e[0] + k < 0:
                raise NotDivisible(f"{self} is not divisible by U^{-k}")
            out[(e[0] + k,) + e[1:]] = c
        return MultiPoly(out, self.d)

    def _synthetic(self, root: int) -> tuple[MultiPoly, MultiPoly]:
        """Divide by U - r with r = 1 (root 0) or r = T_root; returns (quotient, remainder)."""
        by_u: dict[int, dict[Exp, int]] = {}
        for e, c in self.terms.items():
            by_u.setdefault(e[0], {})[e[1:]] = c
        if not by_u:
            return self, self

        def times_root(p: dict[Exp, int]) -> dict[Exp, int]:
            if root == 0:
                return dict(p)
            out = {}
            for t, c in p.items():
                t2 = list(t)
                t2[root - 1] += 1
                out[tuple(t2)] = c
            return out

        top = max(by_u)
        quotient: dict[Exp, int] = {}
        carry: dict[Exp, int] = {}
        for k in range(top, 0, -1):
            nxt = times_root(carry)
            for t, c in by_u.get(k, {}).items():
                nxt[t] = nxt.get(t, 0) + c
            carry = {t: c for t, c in nxt.items() if c}
            for t, c in carry.items():
                quotient[(k - 1,) + t] = c
        rem = times_root(carry)
        for t, c in by_u.get(0, {}).items():
            rem[t] = rem.get(t, 0) + c
        remainder = {(0,) + t: c for t, c in rem.items() if c}
        return MultiPoly(quotient, self.d), MultiPoly(remainder, self.d)

    def divisible_by(self, factor: str) -> bool:
        root = _parse_factor(factor, self.d)
        if self.is_zero():
            return True
        if root is None:
            return self.min_u_degree() >= 1
        return self._synthetic(root)[1].is_zero()

    def collapse(self) -> MultiPoly:
        """Substitute T1 = ... = Td = T, giving a polynomial in U, T (d=1)."""
        out: dict[Exp, int] = {}
        for e, c in self.terms.items():
            key = (e[0], sum(e[1:]))
            out[key] = out.get(key, 0) + c
        return MultiPoly(out, 1)


def divide_exact(p: MultiPoly, factor: str) -> MultiPoly:
    """Exact quotient of ``p`` by ``U``, ``U-1`` or ``U-Ti``.

    >>> str(divide_exact(MultiPoly({(2, 0): 1, (1, 0): -2, (0, 0): 1}), "U-1"))
    '-1 + 1*U^1'
    """
    root = _parse_factor(factor, p.d)
    if root is None:
        return p.shift_u(-1)
    q, r = p._synthetic(root)
    if not r.is_zero():
        raise NotDivisible(f"{p} is not divisible by {factor}")
    return q


def _term_key(e: Exp):
    return (sum(e), e)


def _format_monomial(c: int, e: Exp) -> str:
    names = ["U"] + [f"T{i}" for i in range(1, len(e))]
    parts = [str(c)] + [f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text: terms ``c*U^a*T1^b1...`` ascending by total degree, then lex."""
    if p.is_zero():
        return "0"
    return " + ".join(_format_monomial(p.terms[e], e) for e in sorted(p.terms, key=_term_key))


@dataclass(frozen=True, eq=False)
class ZetaRatFun:
    """num / (U^den_u * (U-1)^den_u1 * prod (U-Ti)^den_t[i-1]).

    Instances built directly may be non-canonical; all arithmetic returns the
    reduced form and equality compares reduced forms.
    """

    num: MultiPoly
    den_u: int = 0
    den_u1: int = 0
    den_t: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.den_t:
            object.__setattr__(self, "den_t", (0,) * self.num.d)
        if len(self.den_t) != self.num.d:
            raise ValueError("den_t must have one exponent per T variable")
        if min(self.den_u, self.den_u1, *self.den_t) < 0:
            raise ValueError("denominator exponents must be non-negative")

    @property
    def d(self) -> int:
        return self.num.d

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c: int, d: int) -> ZetaRatFun:
        return cls(MultiPoly.const(c, d))

    @classmethod
    def u_power(cls, k: int, d: int) -> ZetaRatFun:
        """U^k for any integer k."""
        if k >= 0:
            return cls(MultiPoly.monomial(1, k, (0,) * d))
        return cls(MultiPoly.const(1, d), den_u=-k)

    @classmethod
    def t_monomial(cls, n: Exp) -> ZetaRatFun:
        return cls(MultiPoly.monomial(1, 0, tuple(n)))

    @classmethod
    def geometric(cls, i: int, d: int) -> ZetaRatFun:
        """1 / (1 - U^-1 Ti), stored as U / (U - Ti)."""
        den_t = [0] * d
        den_t[i - 1] = 1
        return cls(MultiPoly.monomial(1, 1, (0,) * d), den_t=tuple(den_t))

    @classmethod
    def of_poly(cls, p: MultiPoly) -> ZetaRatFun:
        return cls(p)

    # arithmetic -----------------------------------------------------------
    def _lift(self, a: int, b: int, e: tuple[int, ...]) -> MultiPoly:
        num = self.num.shift_u(a - self.den_u)
        if b > self.den_u1:
            num = num * MultiPoly.linear("U-1", self.d) ** (b - self.den_u1)
        for i, (want, have) in enumerate(zip(e, self.den_t), start=1):
            if want > have:
                num = num * MultiPoly.linear(f"U-T{i}", self.d) ** (want - have)
        return num

    def _coerce(self, other) -> ZetaRatFun:
        if isinstance(other, int):
            return ZetaRatFun.const(other, self.d)
        if isinstance(other, MultiPoly):
            return ZetaRatFun(other)
        if not isinstance(other, ZetaRatFun):
            return NotImplemented
        if other.d != self.d:
            raise ValueError(f"variable count mismatch: d={self.d} vs d={other.d}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = max(self.den_u, other.den_u)
        b = max(self.den_u1, other.den_u1)
        e = tuple(max(x, y) for x, y in zip(self.den_t, other.den_t))
        return reduce(ZetaRatFun(self._lift(a, b, e) + other._lift(a, b, e), a, b, e))

    __radd__ = __add__

    def __neg__(self):
        return ZetaRatFun(-self.num, self.den_u, self.den_u1, self.den_t)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return reduce(ZetaRatFun(
            self.num * other.num,
            self.den_u + other.den_u,
            self.den_u1 + other.den_u1,
            tuple(x + y for x, y in zip(self.den_t, other.den_t)),
        ))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, ZetaRatFun):
            return NotImplemented
        a, b = reduce(self), reduce(other)
        return (a.num, a.den_u, a.den_u1, a.den_t) == (b.num, b.den_u, b.den_u1, b.den_t)

    def __hash__(self):
        r = reduce(self)
        return hash((r.num, r.den_u, r.den_u1, r.den_t))

    def evaluate(self, u, ts=()) -> Fraction:
        den = Fraction(u) ** self.den_u * (Fraction(u) - 1) ** self.den_u1
        for t, e in zip(ts, self.den_t):
            den *= (Fraction(u) - Fraction(t)) ** e
        return self.num.evaluate(u, ts) / den

    def is_laurent_polynomial(self) -> bool:
        r = reduce(self)
        return r.den_u1 == 0 and not any(r.den_t)

    def __str__(self):
        return format_ratfun(self)

    def __repr__(self):
        return f"ZetaRatFun({format_ratfun(self)!r})"


def reduce(f: ZetaRatFun) -> ZetaRatFun:
    """Cancel every denominator factor that divides the numerator."""
    num, a, b, e = f.num, f.den_u, f.den_u1, list(f.den_t)
    if num.is_zero():
        return ZetaRatFun(num, 0, 0, (0,) * f.d)
    k = min(a, num.min_u_degree())
    if k:
        num, a = num.shift_u(-k), a - k
    while b:
        q, r = num._synthetic(0)
        if not r.is_zero():
            break
        num, b = q, b - 1
    for i in range(1, f.d + 1):
        while e[i - 1]:
            q, r = num._synthetic(i)
            if not r.is_zero():
                break
            num = q
            e[i - 1] -= 1
    return ZetaRatFun(num, a, b, tuple(e))


def format_ratfun(f: ZetaRatFun) -> str:
    """Canonical ``(num) / (den)`` text, or just ``num`` for a polynomial."""
    r = reduce(f)
    den = []
    if r.den_u:
        den.append(f"U^{r.den_u}")
    if r.den_u1:
        den.append(f"(U-1)^{r.den_u1}")
    den += [f"(U-T{i})^{e}" for i, e in enumerate(r.den_t, start=1) if e]
    if not den:
        return format_poly(r.num)
    return f"({format_poly(r.num)}) / ({' * '.join(den)})"


# ---------------------------------------------------------------------------
# univariate rational functions over Q

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(p, q) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _padd(p, q) -> list:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pdivmod(p, q):
    p = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        k = len(p) - len(q)
        c = p[-1] / q[-1]
        quo[k] = c
        for j, b in enumerate(q):
            p[k + j] -= c * b
        _trim(p)
    return _trim(quo), p


def _pgcd(p, q) -> list:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return [c / p[-1] for c in p]


class UniRatFun:
    """num(T)/den(T) over Q, kept in lowest terms with den(0) = 1 when possible.

    Coefficient lists are in ascending powers of T.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        n = _trim([Fraction(c) for c in num])
        m = _trim([Fraction(c) for c in den])
        if not m:
            raise ZeroDivisionError("zero denominator")
        if not n:
            m = [Fraction(1)]
        else:
            g = _pgcd(n, m)
            if len(g) > 1:
                n, m = _pdivmod(n, g)[0], _pdivmod(m, g)[0]
        lead = next(c for c in m if c)
        self.num = tuple(c / lead for c in n)
        self.den = tuple(c / lead for c in m)

    @classmethod
    def poly(cls, coeffs) -> UniRatFun:
        return cls(coeffs)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return UniRatFun([other])
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return UniRatFun(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                         _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return UniRatFun([-c for c in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return UniRatFun(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return UniRatFun(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        out = UniRatFun([1])
        base = self if k >= 0 else UniRatFun(self.den, self.num)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniRatFun([other])
        if not isinstance(other, UniRatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, t):
        t = Fraction(t)
        return sum(c * t**i for i, c in enumerate(self.num)) / sum(c * t**i for i, c in enumerate(self.den))

    def scale(self, a) -> UniRatFun:
        """Substitute T -> a*T."""
        a = Fraction(a)
        return UniRatFun([c * a**i for i, c in enumerate(self.num)],
                         [c * a**i for i, c in enumerate(self.den)])

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def __str__(self):
        num = _format_uni(self.num)
        if self.is_polynomial():
            return num
        den = _format_uni(self.den)
        wrap = lambda s, p: f"({s})" if sum(1 for c in p if c) > 1 else s
        return f"{wrap(num, self.num)} / {wrap(den, self.den)}"

    def __repr__(self):
        return f"UniRatFun({str(self)!r})"


def _format_uni(p) -> str:
    if not any(p):
        return "0"
    out = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def collapse(f: ZetaRatFun) -> ZetaRatFun:
    """Set every Ti equal to one variable T (result has d = 1)."""
    return reduce(ZetaRatFun(f.num.collapse(), f.den_u, f.den_u1, (sum(f.den_t),)))


def substitute(f: ZetaRatFun, *, collapse_t: bool = False, u=None):
    """Collapse the T variables and/or specialize U.

    Returns a ZetaRatFun when ``u`` is None, otherwise a :class:`UniRatFun`
    in T (which requires a single T variable, possibly after collapsing).
    """
    f = collapse(f) if collapse_t else reduce(f)
    if u is None:
        return f
    if f.d != 1:
        raise ValueError("specializing U needs one T variable; pass collapse_t=True "
                         "or use series_expand_multi")
    u = Fraction(u)
    if f.den_u1 and u == 1:
        raise PoleAtOne(f"(U-1)^{f.den_u1} remains in the denominator of {format_ratfun(f)}")
    if f.den_u and u == 0:
        raise ZeroDivisionError("U=0 hits the U-power in the denominator")
    deg = max((e[1] for e in f.num.terms), default=0)
    num = [Fraction(0)] * (deg + 1)
    for (eu, et), c in f.num.terms.items():
        num[et] += c * u**eu
    den = [u**f.den_u * (u - 1) ** f.den_u1]
    for _ in range(f.den_t[0]):
        den = _pmul(den, [u, Fraction(-1)])
    return UniRatFun(num, den)


def series_expand(f: UniRatFun, n: int) -> list[Fraction]:
    """Coefficients of T^0..T^n in the power series of ``f``."""
    if not f.den or f.den[0] == 0:
        raise NotExpandable(f"denominator of {f} vanishes at T=0")
    den, num = f.den, f.num
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out


def series_expand_multi(f: ZetaRatFun, u, n: int) -> dict[Exp, Fraction]:
    """Coefficients of T^m (|m| <= n) of ``f`` at U=u, without collapsing.

    Only nonzero coefficients are returned.
    """
    u = Fraction(u)
    f = reduce(f)
    if u == 0 and any(f.den_t):
        raise NotExpandable("U=0 leaves factors (-Ti) in the denominator")
    if f.den_u1 and u == 1:
        raise PoleAtOne("(U-1) remains in the denominator")
    scalar = 1 / (u**f.den_u * (u - 1) ** f.den_u1)
    # 1/(u - T)^e = u^-e * sum_k C(k+e-1, k) (T/u)^k
    axis = [[Fraction(comb(k + e - 1, k)) / u ** (k + e) if e else Fraction(int(k == 0))
             for k in range(n + 1)] for e in f.den_t]
    numer: dict[Exp, Fraction] = {}
    for e, c in f.num.terms.items():
        if sum(e[1:]) <= n:
            numer[e[1:]] = numer.get(e[1:], 0) + c * u ** e[0]
    out: dict[Exp, Fraction] = {}
    for ks in product(range(n + 1), repeat=f.d):
        if sum(ks) > n:
            continue
        w = scalar
        for axis_i, k in zip(axis, ks):
            w *= axis_i[k]
        if not w:
            continue
        for m, c in numer.items():
            key = tuple(a + b for a, b in zip(m, ks))
            if sum(key) <= n:
                out[key] = out.get(key, 0) + w * c
    return {k: v for k, v in out.items() if v}
