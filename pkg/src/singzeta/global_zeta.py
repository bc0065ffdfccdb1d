"""Global zeta functions of singular curves over F_q from local factors.

The divisor-counting normalization is used throughout: a smooth curve with
numerator P(T) has Z(T) = P(T) / ((1 - T)(1 - qT)), and a singular point
with semigroup S and d branches replaces the d smooth points above it by the
factor (1 - T)^d * Z_Ca(T, q, O).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedModel
from .oracle import modulus_ring_model, principal_ideal_series
from .ratfun import UniRatFun, format_ratfun, series_expand, substitute
from .semigroup import GoodSemigroup
from .universal import assemble_universal, counting_ca

MULTI_POINT_NOTE = "several singular points: assembled by the Euler product over points"


@dataclass(frozen=True)
class SmoothCurveZeta:
    q: int
    numerator: tuple[int, ...] = (1,)
    name: str = "P1"

    def __post_init__(self):
        if not self.numerator or self.numerator[0] != 1:
            raise ValueError("the numerator P(T) must satisfy P(0) = 1")

    def zeta(self) -> UniRatFun:
        return UniRatFun(self.numerator, [1, -(self.q + 1), self.q])


@dataclass(frozen=True)
class SingularPoint:
    semigroup: GoodSemigroup
    branches: int

    def __post_init__(self):
        if self.branches != self.semigroup.d:
            raise ValueError(f"branches={self.branches} but the semigroup has d={self.semigroup.d}")


@dataclass(frozen=True)
class SingularCurveModel:
    smooth: SmoothCurveZeta
    singular_points: tuple[SingularPoint, ...] = ()
    support_degrees: tuple[int, ...] = field(default=())
    modulus: bool = True

    @property
    def q(self) -> int:
        return self.smooth.q

    @property
    def notes(self) -> tuple[str, ...]:
        return (MULTI_POINT_NOTE,) if len(self.singular_points) > 1 else ()


def mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def p1_closed_point_counts(q: int, e_max: int) -> list[int]:
    """[a_1, ..., a_e_max]: closed points of P^1 over F_q by degree."""
    if e_max > 12:
        raise ValueError("e_max must be <= 12")
    out = []
    for e in range(1, e_max + 1):
        if e == 1:
            out.append(q + 1)
        else:
            total = sum(mobius(f) * q ** (e // f) for f in range(1, e + 1) if e % f == 0)
            out.append(total // e)
    return out


def assemble_global(model: SingularCurveModel) -> UniRatFun:
    """Z_smooth(T) * prod_P (1 - T)^d_P * Z_Ca(T, q, O_P)."""
    z = model.smooth.zeta()
    for point in model.singular_points:
        z = z * UniRatFun([1, -1]) ** point.branches * counting_ca(point.semigroup, model.q)
    return z


def divisor_series_oracle(model: SingularCurveModel, n: int, local: str = "formula") -> list[int]:
    """Effective Cartier divisors of degree 0..n, by expanding the Euler product.

    Smooth closed points of P^1 outside the singular support contribute
    1/(1 - T^e) each; singular points contribute their principal-ideal series,
    taken from the closed form (``local="formula"``) or counted by brute force
    in the ring k + (conductor ideal) (``local="enumerate"``, modulus points only).
    """
    if model.smooth.name != "P1" or model.smooth.numerator != (1,):
        raise UnsupportedModel("the divisor oracle needs the normalization to be P^1")
    if n > 10:
        raise ValueError("n must be <= 10")
    if any(deg != 1 for deg in model.support_degrees):
        raise UnsupportedModel("only totally rational singular points are supported")
    counts = p1_closed_point_counts(model.q, max(n, 1))
    removed = sum(p.branches for p in model.singular_points)
    if removed > counts[0]:
        raise UnsupportedModel(f"{removed} branch points exceed the {counts[0]} rational points of P^1")
    counts[0] -= removed
    series = [Fraction(1)] + [Fraction(0)] * n
    for e, a in enumerate(counts, start=1):
        for _ in range(a):
            # multiply by 1/(1 - T^e)
            for k in range(e, n + 1):
                series[k] += series[k - e]
    for point in model.singular_points:
        factor = _local_series(point, model.q, n, local)
        series = [sum(series[j] * factor[k - j] for j in range(k + 1)) for k in range(n + 1)]
    if any(c.denominator != 1 or c < 0 for c in series):
        raise AssertionError(f"divisor counts are not non-negative integers: {series}")
    return [int(c) for c in series]


def _local_series(point: SingularPoint, q: int, n: int, how: str) -> list:
    S = point.semigroup
    if how == "formula":
        return series_expand(counting_ca(S, q), n)
    if how != "enumerate":
        raise ValueError(f"unknown local factor source {how!r}")
    if S.small != {(0,) * S.d, S.conductor}:
        raise UnsupportedModel("enumerated local factors need a modulus point")
    return principal_ideal_series(modulus_ring_model(S.conductor, q), S, n)


def motivic_identity(model: SingularCurveModel) -> str:
    """Both sides of the motivic factorization with U in place of L, as text."""
    if model.smooth.name != "P1":
        smooth = "Zmot(normalization)(U^-1*T, U)"
    else:
        smooth = "U / ((U - T) * (1 - T))"
    parts = [smooth]
    for point in model.singular_points:
        local = substitute(assemble_universal(point.semigroup).value, collapse_t=True)
        parts.append(f"((U - T) / U)^{point.branches}")
        parts.append(f"[{format_ratfun(local).replace('T1', 'T')}]")
    return "Zmot(C)(U^-1*T, U) = " + " * ".join(parts)
