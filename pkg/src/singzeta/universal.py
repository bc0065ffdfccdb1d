"""The universal zeta function of a value semigroup and its specializations.

U is kept as a formal variable.  Setting U = L gives the motivic zeta
function, U = q the principal-ideal counting series over F_q, and U = 1 the
monodromy zeta function of a plane curve singularity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .ratfun import MultiPoly, UniRatFun, ZetaRatFun, divide_exact, substitute
from .semigroup import (
    GoodSemigroup,
    ValueVec,
    contains,
    elements_up_to_norm,
    h_dim,
    norm,
    unit,
    vadd,
)

BIG_ENOUGH = "assumes the residue field k is big enough for the curve"


@dataclass(frozen=True)
class UniversalZeta:
    semigroup: GoodSemigroup
    value: ZetaRatFun
    notes: tuple[str, ...] = field(default=())

    def __str__(self):
        return str(self.value)


def _subsets(d: int):
    for r in range(d + 1):
        yield from combinations(range(d), r)


def ideal_class_poly(S: GoodSemigroup, n: ValueVec) -> ZetaRatFun:
    """I_n(U) = U^(|n|+1)/(U-1) * sum_I (-1)^#I U^(-h(n + 1_I)), as a Laurent polynomial in U.

    The result is a ZetaRatFun whose only possible denominator is a power of U.
    """
    n = tuple(n)
    hs = {I: h_dim(S, vadd(n, unit(S.d, I))) for I in _subsets(S.d)}
    top = max(hs.values())
    # sum_I (-1)^#I U^(top - h_I); the overall U-offset is tracked separately
    terms: dict[tuple[int, ...], int] = {}
    zeros = (0,) * S.d
    for I, h in hs.items():
        key = (top - h, *zeros)
        terms[key] = terms.get(key, 0) + (-1) ** len(I)
    quotient = divide_exact(MultiPoly(terms, S.d), "U-1")
    shift = norm(n) + 1 - top
    return ZetaRatFun.of_poly(quotient) * ZetaRatFun.u_power(shift, S.d)


def ideal_class_at_one(S: GoodSemigroup, n: ValueVec) -> int:
    """I_n(1) = sum_I (-1)^(#I+1) h(n + 1_I), the exact U -> 1 limit."""
    n = tuple(n)
    return sum((-1) ** (len(I) + 1) * h_dim(S, vadd(n, unit(S.d, I))) for I in _subsets(S.d))


def f_j(S: GoodSemigroup, J: tuple[int, ...], m: tuple[int, ...]) -> ValueVec:
    """Vector with c_j on J and the entries of m (in order) elsewhere; J is 0-based."""
    rest = iter(m)
    return tuple(S.conductor[i] if i in J else next(rest) for i in range(S.d))


def b_j_members(S: GoodSemigroup, J) -> list[tuple[int, ...]]:
    """Partial vectors m, indexed by [d] minus J, with m < c there and f_J(m) in S.

    ``J`` holds 0-based branch indices and must be a proper nonempty subset.
    """
    J = tuple(sorted(set(J)))
    if not J or len(J) >= S.d or min(J) < 0 or max(J) >= S.d:
        raise ValueError(f"J={J} must be a proper nonempty subset of range({S.d})")
    free = [i for i in range(S.d) if i not in J]
    ranges = [range(S.conductor[i]) for i in free]
    return [m for m in product(*ranges) if contains(S, f_j(S, J, m))]


def assemble_universal(S: GoodSemigroup) -> UniversalZeta:
    """Sum of the small region, the boundary pieces and the tail over the conductor."""
    d, c, delta = S.d, S.conductor, S.delta
    total = ZetaRatFun.const(0, d)

    # small region: n in S with n < c componentwise
    for n in sorted(S.small):
        if all(x < y for x, y in zip(n, c)):
            total = total + ideal_class_poly(S, n) * ZetaRatFun.u_power(-norm(n), d) \
                * ZetaRatFun.t_monomial(n)

    # boundary: values >= c exactly on J; every such n has I_n = I_{f_J(m)}
    for r in range(1, d):
        for J in combinations(range(d), r):
            geo = ZetaRatFun.const(1, d)
            for j in J:
                geo = geo * ZetaRatFun.geometric(j + 1, d)
            for m in b_j_members(S, J):
                f = f_j(S, J, m)
                total = total + ideal_class_poly(S, f) * ZetaRatFun.u_power(-norm(f), d) \
                    * ZetaRatFun.t_monomial(f) * geo

    # tail: (U-1)^(d-1) U^(delta-d+1) U^-|c| T^c / prod (1 - U^-1 Ti)
    tail = ZetaRatFun.of_poly(MultiPoly.linear("U-1", d) ** (d - 1)) \
        * ZetaRatFun.u_power(delta - d + 1 - norm(c), d) * ZetaRatFun.t_monomial(c)
    for i in range(1, d + 1):
        tail = tail * ZetaRatFun.geometric(i, d)
    total = total + tail
    return UniversalZeta(S, total)


def generalized_poincare(S: GoodSemigroup) -> UniversalZeta:
    """U^-(delta+1) times the universal zeta function."""
    z = assemble_universal(S)
    return UniversalZeta(S, z.value * ZetaRatFun.u_power(-(S.delta + 1), S.d), (BIG_ENOUGH,))


def motivic(S: GoodSemigroup) -> UniversalZeta:
    """Z(T1..Td, O) with U standing for the class of the affine line."""
    z = assemble_universal(S)
    return UniversalZeta(S, z.value, (BIG_ENOUGH,))


def specialize_monodromy(Z: UniversalZeta) -> UniRatFun:
    """Collapse all Ti to T and set U = 1."""
    return substitute(Z.value, collapse_t=True, u=1)


def specialize_counting(Z: UniversalZeta, q: int) -> UniRatFun:
    """Collapse all Ti to T and set U = q: the series Z_Ca(T/q, q, O)."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    return substitute(Z.value, collapse_t=True, u=q)


def counting_ca(S: GoodSemigroup, q: int) -> UniRatFun:
    """Generating series of principal ideals of O over F_q by codimension."""
    return specialize_counting(assemble_universal(S), q).scale(q)


def counting_form(Z: UniversalZeta) -> ZetaRatFun:
    """The collapsed universal zeta with U still symbolic (U later set to q or 1)."""
    return substitute(Z.value, collapse_t=True)


def monodromy_series_from_limits(S: GoodSemigroup, n_max: int) -> list[int]:
    """Power series of the monodromy zeta built term by term from I_n(1).

    Independent of the closed-form assembly: coefficient of T^k is the sum of
    I_n(1) over n in S with |n| = k.
    """
    out = [0] * (n_max + 1)
    for n in elements_up_to_norm(S, n_max):
        out[norm(n)] += ideal_class_at_one(S, n)
    return out


def ideal_count(S: GoodSemigroup, n: ValueVec, q: int) -> Fraction:
    """I_n(q): the number of principal ideals with value n over F_q."""
    return ideal_class_poly(S, n).evaluate(q)
