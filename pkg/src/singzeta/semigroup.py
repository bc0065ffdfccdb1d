"""Value semigroups S in N^d encoded by their small elements and conductor.

Membership beyond the conductor box is defined by truncation:
``n in S  <=>  min(n, c) in small``.  The dimension function

    h(n) = dim_k O / {z in O : v(z) >= n}

is computed combinatorially by walking a monotone lattice path from 0 to n.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from itertools import product

from .errors import DimensionMismatch, InvalidSemigroup, NotCoprime, NotUnibranch

ValueVec = tuple[int, ...]


def meet(a: Sequence[int], b: Sequence[int]) -> ValueVec:
    return tuple(min(x, y) for x, y in zip(a, b))


def join(a: Sequence[int], b: Sequence[int]) -> ValueVec:
    return tuple(max(x, y) for x, y in zip(a, b))


def vadd(a: Sequence[int], b: Sequence[int]) -> ValueVec:
    return tuple(x + y for x, y in zip(a, b))


def norm(a: Sequence[int]) -> int:
    return sum(a)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def unit(d: int, idx: Iterable[int]) -> ValueVec:
    """The 0/1 vector with ones at the (0-based) positions in ``idx``."""
    idx = set(idx)
    return tuple(int(i in idx) for i in range(d))


class GoodSemigroup:
    """Immutable finite description of a value semigroup.

    Build instances with :func:`from_small_elements`,
    :func:`numerical_from_generators` or :func:`from_modulus`; all of them
    validate the invariants.
    """

    __slots__ = ("d", "conductor", "small", "_h_cache", "_delta", "_fibers")

    def __init__(self, d: int, conductor: ValueVec, small: frozenset[ValueVec]):
        self.d = d
        self.conductor = tuple(conductor)
        self.small = frozenset(small)
        # benign races: cached values are deterministic
        self._h_cache: dict[ValueVec, int] = {}
        self._fibers: dict[tuple[ValueVec, int], bool] = {}
        self._delta: int | None = None

    def __repr__(self):
        return f"GoodSemigroup(d={self.d}, conductor={self.conductor}, small={sorted(self.small)})"

    def __eq__(self, other):
        if not isinstance(other, GoodSemigroup):
            return NotImplemented
        return (self.d, self.conductor, self.small) == (other.d, other.conductor, other.small)

    def __hash__(self):
        return hash((self.d, self.conductor, self.small))

    @property
    def delta(self) -> int:
        if self._delta is None:
            self._delta = norm(self.conductor) - h_dim(self, self.conductor)
        return self._delta

    def sorted_small(self) -> list[ValueVec]:
        return sorted(self.small, key=lambda v: (norm(v), v))


def _check_dim(S: GoodSemigroup, n: Sequence[int]) -> ValueVec:
    n = tuple(n)
    if len(n) != S.d:
        raise DimensionMismatch(f"vector {n} has {len(n)} components, semigroup has d={S.d}")
    if min(n) < 0:
        raise ValueError(f"negative component in {n}")
    return n


def contains(S: GoodSemigroup, n: Sequence[int]) -> bool:
    n = _check_dim(S, n)
    return meet(n, S.conductor) in S.small


def validate(d: int, conductor: Sequence[int], small: Iterable[Sequence[int]]) -> list[str]:
    """Return a list of violated invariants, each with a witness; empty if valid."""
    c = tuple(conductor)
    pts = {tuple(s) for s in small}
    out: list[str] = []
    if d < 1:
        return [f"d must be >= 1, got {d}"]
    if len(c) != d:
        return [f"conductor {c} does not have d={d} components"]
    for s in sorted(pts):
        if len(s) != d:
            out.append(f"element {s} does not have d={d} components")
        elif min(s) < 0 or not leq(s, c):
            out.append(f"element {s} is not in the box [0, {c}]")
    if out:
        return out
    zero = (0,) * d
    if zero not in pts:
        out.append(f"0 = {zero} is not a small element")
    if c not in pts:
        out.append(f"conductor {c} is not a small element")
    ordered = sorted(pts)
    for a in ordered:
        for b in ordered:
            if b < a:
                continue
            m = meet(a, b)
            if m not in pts:
                out.append(f"not closed under min: min({a}, {b}) = {m} missing")
            s = meet(vadd(a, b), c)
            if s not in pts:
                out.append(f"not closed under addition: ({a} + {b}) ^ c = {s} missing")
    for i in range(d):
        if c[i] > 0:
            below = tuple(x - (j == i) for j, x in enumerate(c))
            if below in pts:
                out.append(f"conductor not minimal: {below} lies in S, so c - e_{i + 1} works too")
    return out


def from_small_elements(d: int, conductor: Sequence[int], small: Iterable[Sequence[int]]) -> GoodSemigroup:
    small = [tuple(s) for s in small]
    problems = validate(d, conductor, small)
    if problems:
        raise InvalidSemigroup(problems)
    return GoodSemigroup(d, tuple(conductor), frozenset(small))


def numerical_from_generators(gens: Sequence[int]) -> GoodSemigroup:
    """The numerical semigroup generated by ``gens`` (d = 1)."""
    gens = sorted({int(g) for g in gens})
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    if math.gcd(*gens) != 1:
        raise NotCoprime(f"gcd{tuple(gens)} = {math.gcd(*gens)} > 1")
    bound = 2 * gens[-1] ** 2 + 1
    member = [False] * (bound + 1)
    member[0] = True
    for n in range(1, bound + 1):
        member[n] = any(g <= n and member[n - g] for g in gens)
    gaps = [n for n in range(bound + 1) if not member[n]]
    c = gaps[-1] + 1 if gaps else 0
    return from_small_elements(1, (c,), [(n,) for n in range(c + 1) if member[n]])


def from_modulus(multiplicities: Sequence[int]) -> GoodSemigroup:
    """Semigroup {0} U (m + N^b) of the point obtained by gluing a modulus."""
    m = tuple(int(x) for x in multiplicities)
    if not m or min(m) < 1:
        raise ValueError("a modulus needs b >= 1 multiplicities, all >= 1")
    if m == (1,):
        # gluing one simple point changes nothing: S = N, conductor 0
        return from_small_elements(1, (0,), [(0,)])
    return from_small_elements(len(m), m, [(0,) * len(m), m])


def fiber_step(S: GoodSemigroup, m: Sequence[int], i: int) -> int:
    """h(m + e_i) - h(m): 1 iff some s in S has s_i = m_i and s_j >= m_j elsewhere.

    Any such s can be cut down to min(s, m v c), so it suffices to look for a
    small element t with t_i = m_i and t_j >= min(m_j, c_j).
    """
    m = tuple(m)
    c = S.conductor
    if m[i] >= c[i]:
        return 1
    key = (m, i)
    hit = S._fibers.get(key)
    if hit is None:
        floor = meet(m, c)
        hit = any(
            t[i] == m[i] and all(t[j] >= floor[j] for j in range(S.d) if j != i)
            for t in S.small
        )
        S._fibers[key] = hit
    return int(hit)


def h_along(S: GoodSemigroup, directions: Iterable[int]) -> tuple[ValueVec, int]:
    """Walk from 0 taking unit steps in the given (0-based) directions.

    Returns the endpoint and the accumulated h value.
    """
    m = [0] * S.d
    h = 0
    for i in directions:
        h += fiber_step(S, m, i)
        m[i] += 1
    return tuple(m), h


def h_dim(S: GoodSemigroup, n: Sequence[int]) -> int:
    """dim_k O / {z : v(z) >= n}, memoized over the box [0, c + 1]."""
    n = _check_dim(S, n)
    cached = S._h_cache.get(n)
    if cached is not None:
        return cached
    c = S.conductor
    # beyond the conductor every step is free
    base = meet(n, vadd(c, (1,) * S.d))
    if base != n:
        return h_dim(S, base) + norm(n) - norm(base)
    m = [0] * S.d
    h = 0
    for i in range(S.d):
        for _ in range(n[i]):
            h += fiber_step(S, m, i)
            m[i] += 1
    S._h_cache[n] = h
    return h


def delta(S: GoodSemigroup) -> int:
    """Singularity degree, as ||c|| - h(c)."""
    return S.delta


def gaps(S: GoodSemigroup) -> list[int]:
    if S.d != 1:
        raise NotUnibranch("gaps are defined for d = 1 only")
    return [n for n in range(S.conductor[0]) if (n,) not in S.small]


def is_symmetric(S: GoodSemigroup) -> bool:
    """Gorenstein test for one branch: s in S iff c - 1 - s not in S."""
    if S.d != 1:
        raise NotUnibranch(f"symmetry test needs d = 1, got d = {S.d}")
    c = S.conductor[0]
    return all(contains(S, (s,)) != contains(S, (c - 1 - s,)) for s in range(c))


def box(upper: Sequence[int]) -> Iterable[ValueVec]:
    """All vectors 0 <= n <= upper."""
    return product(*(range(u + 1) for u in upper))


def elements_up_to_norm(S: GoodSemigroup, max_norm: int) -> list[ValueVec]:
    """Elements of S with ||n|| <= max_norm, sorted by (norm, lex)."""
    out = [n for n in box((max_norm,) * S.d) if norm(n) <= max_norm and contains(S, n)]
    return sorted(out, key=lambda v: (norm(v), v))
