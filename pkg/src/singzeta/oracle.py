"""Brute-force ground truth over small prime fields.

A local ring O is modelled by generators inside prod_i F_p[t]/(t^B_i), one
truncated series per branch.  Everything here is computed by row reduction
and exhaustive enumeration: the value semigroup, the dimension function h,
and the number of principal ideals with a given value vector.  Nothing in
this module uses the closed-form zeta formulas.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidSemigroup, TruncationTooSmall, WorkLimitExceeded
from .ratfun import series_expand
from .semigroup import (
    GoodSemigroup,
    ValueVec,
    box,
    elements_up_to_norm,
    from_small_elements,
    h_dim,
    meet,
    norm,
    vadd,
)
from .universal import counting_ca, ideal_class_poly

DEFAULT_WORK_LIMIT = 10**7
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def work_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("SINGZETA_WORK_LIMIT", DEFAULT_WORK_LIMIT))


class ZeroDivisorFlag:
    """Marker for elements with a branch that vanishes up to the truncation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZeroDivisorFlag"


ZERO_DIVISOR = ZeroDivisorFlag()


@dataclass(frozen=True)
class TruncSeriesVec:
    """A tuple of truncated power series over F_p, little-endian in t."""

    p: int
    branches: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, p: int, branches) -> TruncSeriesVec:
        return cls(p, tuple(tuple(c % p for c in b) for b in branches))

    def __add__(self, other):
        return TruncSeriesVec(self.p, tuple(
            tuple((x + y) % self.p for x, y in zip(a, b)) for a, b in zip(self.branches, other.branches)))

    def __mul__(self, other):
        return TruncSeriesVec(self.p, tuple(
            tuple(_series_mul(a, b, len(a), self.p)) for a, b in zip(self.branches, other.branches)))

    def valuation(self):
        """Value vector, or ZERO_DIVISOR when a branch vanishes identically."""
        out = []
        for b in self.branches:
            k = next((i for i, c in enumerate(b) if c), None)
            if k is None:
                return ZERO_DIVISOR
            out.append(k)
        return tuple(out)


def _series_mul(a, b, n, p):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] = (out[i + j] + x * b[j]) % p
    return out


# ---------------------------------------------------------------------------
# flat vectors: branch blocks laid out one after another

class _Layout:
    def __init__(self, trunc: ValueVec):
        self.trunc = tuple(trunc)
        self.offsets = []
        pos = 0
        for b in self.trunc:
            self.offsets.append(pos)
            pos += b
        self.size = pos

    def columns(self, lo: ValueVec | None = None, hi: ValueVec | None = None) -> list[int]:
        """Flat columns with lo_i <= exponent < hi_i, ordered by (exponent, branch)."""
        lo = lo or (0,) * len(self.trunc)
        hi = hi or self.trunc
        cols = [(e, i) for i in range(len(self.trunc)) for e in range(lo[i], min(hi[i], self.trunc[i]))]
        cols.sort()
        return [self.offsets[i] + e for e, i in cols]

    def mul(self, a, b, p):
        out = []
        for off, n in zip(self.offsets, self.trunc):
            out += _series_mul(a[off:off + n], b[off:off + n], n, p)
        return out

    def project(self, v, target: ValueVec):
        out = []
        for off, n, t in zip(self.offsets, self.trunc, target):
            out += v[off:off + t]
        return out

    def valuation(self, v):
        out = []
        for off, n in zip(self.offsets, self.trunc):
            k = next((e for e in range(n) if v[off + e]), None)
            if k is None:
                return ZERO_DIVISOR
            out.append(k)
        return tuple(out)


class _Echelon:
    """Incrementally maintained reduced row-echelon basis over F_p."""

    def __init__(self, p: int, order: list[int]):
        self.p = p
        self.order = order
        self.rows: dict[int, list[int]] = {}

    def reduce(self, v):
        v = list(v)
        p = self.p
        for piv, row in self.rows.items():
            c = v[piv]
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] = (v[j] - c * x) % p
        return v

    def insert(self, v) -> bool:
        v = self.reduce(v)
        piv = next((j for j in self.order if v[j]), None)
        if piv is None:
            return False
        p = self.p
        inv = pow(v[piv], -1, p)
        v = [(x * inv) % p for x in v]
        for row in self.rows.values():
            c = row[piv]
            if c:
                for j, x in enumerate(v):
                    if x:
                        row[j] = (row[j] - c * x) % p
        self.rows[piv] = v
        return True

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        rank = {col: k for k, col in enumerate(self.order)}
        return tuple(tuple(self.rows[piv]) for piv in sorted(self.rows, key=rank.__getitem__))

    def __len__(self):
        return len(self.rows)


def rref(rows, p: int, order: list[int]) -> _Echelon:
    ech = _Echelon(p, order)
    for r in rows:
        ech.insert(r)
    return ech


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingModel:
    """O inside prod F_p[t]/(t^B_i), generated by ``generators`` and the unit."""

    p: int
    d: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    conductor: ValueVec
    truncation: ValueVec
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.p not in SMALL_PRIMES:
            raise ValueError(f"p must be a prime <= 13, got {self.p}")
        if len(self.conductor) != self.d or len(self.truncation) != self.d:
            raise ValueError("conductor and truncation need d components")
        gens = []
        for g in self.generators:
            if len(g) != self.d:
                raise ValueError(f"generator {g} does not have d={self.d} branches")
            branches = []
            for br in g:
                br = [c % self.p for c in br]
                while br and not br[-1]:
                    br.pop()
                branches.append(tuple(br))
            if any(br and br[0] for br in branches):
                raise ValueError(f"generator {g} has a nonzero constant term; O must be local")
            gens.append(tuple(branches))
        object.__setattr__(self, "generators", tuple(gens))

    def truncated_generators(self) -> list[list[int]]:
        """Generators as flat vectors at the current truncation."""
        out = []
        for g in self.generators:
            flat = []
            for br, b in zip(g, self.truncation):
                flat += list(br[:b]) + [0] * (b - len(br[:b]))
            out.append(flat)
        return out

    @classmethod
    def build(cls, p, d, generators, conductor, truncation=None) -> RingModel:
        c = tuple(conductor)
        if truncation is None:
            truncation = tuple(2 * x + 1 for x in c)
        return cls(p, d, tuple(generators), c, tuple(truncation))

    def with_truncation(self, truncation: ValueVec) -> RingModel:
        return RingModel(self.p, self.d, self.generators, self.conductor, tuple(truncation))

    def element(self, branches) -> TruncSeriesVec:
        padded = [list(b[:n]) + [0] * (n - len(b[:n])) for b, n in zip(branches, self.truncation)]
        return TruncSeriesVec.of(self.p, padded)

    @property
    def layout(self) -> _Layout:
        return _Layout(self.truncation)


def required_truncation(conductor: ValueVec, max_norm: int) -> ValueVec:
    """Truncation large enough to count ideals with |n| <= max_norm."""
    return tuple(max_norm + 2 * max(c, 1) + 1 for c in conductor)


def algebra_closure_basis(model: RingModel, limit: int | None = None) -> list[list[int]]:
    """Reduced row-echelon basis of the image of O, as flat vectors."""
    cached = model._cache.get("basis")
    if cached is not None:
        return cached
    lay = model.layout
    if lay.size > 4096 or lay.size * lay.size > work_limit(limit):
        raise WorkLimitExceeded(f"truncation {model.truncation} is too large")
    one = [0] * lay.size
    for off in lay.offsets:
        one[off] = 1
    gens = model.truncated_generators()
    ech = _Echelon(model.p, lay.columns())
    queue = [one] + gens
    while queue:
        v = queue.pop()
        if ech.insert(v):
            queue += [lay.mul(v, g, model.p) for g in gens]
    basis = [list(r) for r in ech.canonical()]
    model._cache["basis"] = basis
    return basis


def value_vector(z: TruncSeriesVec, model: RingModel | None = None):
    """Componentwise order of vanishing, or ZERO_DIVISOR."""
    return z.valuation()


def _projected_basis(model: RingModel, target: ValueVec, limit=None) -> list[list[int]]:
    lay = model.layout
    sub = _Layout(target)
    rows = [lay.project(r, target) for r in algebra_closure_basis(model, limit)]
    return [list(r) for r in rref(rows, model.p, sub.columns()).canonical()]


def h_dim_oracle(model: RingModel, n: ValueVec, limit: int | None = None) -> int:
    """dim O / {z : v(z) >= n} as the rank of O projected below n."""
    n = tuple(n)
    if not all(a + c <= b for a, c, b in zip(n, model.conductor, model.truncation)):
        raise TruncationTooSmall(f"n + c = {vadd(n, model.conductor)} exceeds truncation {model.truncation}")
    return len(_projected_basis(model, n, limit))


def check_conductor(model: RingModel, limit: int | None = None) -> list[str]:
    """Violations of 'every element with values >= c lies in O' (empty if fine)."""
    c, B = model.conductor, model.truncation
    if not all(x < y for x, y in zip(c, B)):
        return [f"truncation {B} must exceed the declared conductor {c}"]
    full = len(algebra_closure_basis(model, limit))
    below = len(_projected_basis(model, c, limit))
    have, want = full - below, norm(B) - norm(c)
    if have != want:
        return [f"declared conductor {c} is inconsistent: values >= c span dimension {have} < {want}"]
    return []


def extract_small_elements(model: RingModel, limit: int | None = None) -> frozenset[ValueVec]:
    """{v(z) ^ c} over all non-flagged z, enumerating O modulo values >= c + 1."""
    problems = check_conductor(model, limit)
    if problems:
        raise InvalidSemigroup(problems)
    c = model.conductor
    target = tuple(x + 1 for x in c)
    basis = _projected_basis(model, target, limit)
    p = model.p
    if p ** len(basis) > work_limit(limit):
        raise WorkLimitExceeded(f"{p}^{len(basis)} elements exceed the enumeration limit")
    sub = _Layout(target)
    found = set()
    size = sub.size
    for coeffs in product(range(p), repeat=len(basis)):
        z = [0] * size
        for a, row in zip(coeffs, basis):
            if a:
                for j, x in enumerate(row):
                    if x:
                        z[j] = (z[j] + a * x) % p
        v = sub.valuation(z)
        if v is not ZERO_DIVISOR:
            found.add(meet(v, c))
    return frozenset(found)


def semigroup_from_model(model: RingModel, limit: int | None = None) -> GoodSemigroup:
    small = extract_small_elements(model, limit)
    return from_small_elements(model.d, model.conductor, small)


def count_principal_ideals(model: RingModel, n: ValueVec, limit: int | None = None) -> int:
    """Number of distinct ideals zO with v(z) = n, found by enumeration.

    Works in O/J(N) with N = n + c (each conductor entry raised to >= 1):
    zO contains J(N) whenever v(z) = n, so each ideal is determined by its
    image there, which is canonicalized as a reduced echelon basis.
    """
    n = tuple(n)
    p = model.p
    stretch = tuple(n_i + max(c_i, 1) for n_i, c_i in zip(n, model.conductor))
    if not all(a <= b for a, b in zip(stretch, model.truncation)):
        raise TruncationTooSmall(f"need truncation >= {stretch}, have {model.truncation}")
    lay = model.layout
    full = algebra_closure_basis(model, limit)
    low = lay.columns(hi=n)
    mid = [col for col in lay.columns(hi=stretch) if col not in set(low)]
    rest = [col for col in lay.columns() if col not in set(low) | set(mid)]
    ech = rref(full, p, low + mid + rest)
    mid_set, rest_set = set(mid), set(rest)
    lifts = [ech.rows[piv] for piv in ech.rows if piv in mid_set]
    tail = [ech.rows[piv] for piv in ech.rows if piv in rest_set]
    if p ** len(lifts) > work_limit(limit):
        raise WorkLimitExceeded(f"{p}^{len(lifts)} candidates exceed the enumeration limit")

    sub = _Layout(stretch)
    quotient_basis = [lay.project(r, stretch) for r in full]
    order = sub.columns()
    lead = [sub.offsets[i] + n_i for i, n_i in enumerate(n)]
    ideals = set()
    checked = False
    for coeffs in product(range(p), repeat=len(lifts)):
        z = [0] * lay.size
        for a, row in zip(coeffs, lifts):
            if a:
                for j, x in enumerate(row):
                    if x:
                        z[j] = (z[j] + a * x) % p
        zq = lay.project(z, stretch)
        if not all(zq[k] for k in lead):
            continue
        if not checked:
            _assert_contains_conductor_shift(model, z, tail, full)
            checked = True
        span = rref((sub.mul(zq, b, p) for b in quotient_basis), p, order)
        ideals.add(span.canonical())
    return len(ideals)


def _assert_contains_conductor_shift(model, z, tail, full) -> None:
    """Sanity check that zO contains every element of O with values >= n + c."""
    lay = model.layout
    zo = rref((lay.mul(z, b, model.p) for b in full), model.p, lay.columns())
    for t in tail:
        if any(zo.reduce(t)):
            raise AssertionError("zO does not contain J(n + c); truncation too small")


# ---------------------------------------------------------------------------
# comparison harness

@dataclass
class CheckRow:
    check: str
    n: ValueVec | None
    expected: object
    got: object
    status: str  # PASS, FAIL or SKIP

    def line(self) -> str:
        where = "" if self.n is None else str(tuple(self.n))
        return f"{self.status:4}  {self.check:10} {where:18} expected={self.expected} got={self.got}"


@dataclass
class OracleReport:
    rows: list[CheckRow]
    extracted: frozenset[ValueVec] | None = None
    note: str = ""

    @property
    def skipped(self) -> bool:
        return any(r.status == "SKIP" for r in self.rows)

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.rows)


def verify_model(model: RingModel, S: GoodSemigroup | None = None, max_norm: int = 6,
                 limit: int | None = None) -> OracleReport:
    """Compare the oracle against the semigroup formulas on one model.

    When ``S`` is None it is taken from the model itself.  If the semigroup
    extracted over F_p differs from ``S`` (the field is too small) the report
    holds a single SKIP row and no formula comparison is made.
    """
    model = model.with_truncation(tuple(
        max(a, b) for a, b in zip(model.truncation, required_truncation(model.conductor, max_norm))))
    small = extract_small_elements(model, limit)
    if S is None:
        try:
            S = from_small_elements(model.d, model.conductor, small)
        except InvalidSemigroup as exc:
            return OracleReport([CheckRow("semigroup", None, "good semigroup", exc.violations, "SKIP")],
                                small, "field too small: extracted values do not form a good semigroup")
    if small != S.small or tuple(S.conductor) != tuple(model.conductor):
        missing = sorted(S.small - small)
        extra = sorted(small - S.small)
        return OracleReport([CheckRow("semigroup", None, sorted(S.small),
                                      f"missing={missing} extra={extra}", "SKIP")],
                            small, f"semigroup over F_{model.p} differs; field not big enough")

    rows = [CheckRow("semigroup", None, "match", "match", "PASS")]
    one = (1,) * S.d
    for n in box(vadd(S.conductor, one)):
        want, got = h_dim(S, n), h_dim_oracle(model, n, limit)
        rows.append(CheckRow("h", n, want, got, "PASS" if want == got else "FAIL"))
    want_delta = S.delta
    got_delta = norm(S.conductor) - h_dim_oracle(model, S.conductor, limit)
    rows.append(CheckRow("delta", None, want_delta, got_delta, "PASS" if want_delta == got_delta else "FAIL"))

    totals = [0] * (max_norm + 1)
    for n in elements_up_to_norm(S, max_norm):
        want = ideal_class_poly(S, n).evaluate(model.p)
        got = count_principal_ideals(model, n, limit)
        totals[norm(n)] += got
        rows.append(CheckRow("ideals", n, want, got, "PASS" if want == got else "FAIL"))
    series = series_expand(counting_ca(S, model.p), max_norm)
    for m, (want, got) in enumerate(zip(series, totals)):
        rows.append(CheckRow("total", (m,), want, got, "PASS" if want == got else "FAIL"))
    return OracleReport(rows, small)


def modulus_ring_model(multiplicities, p: int) -> RingModel:
    """O = k + (t^m_1, ..., t^m_b): the local ring at the glued point of a modulus."""
    m = tuple(multiplicities)
    gens = []
    for i, mi in enumerate(m):
        for j in range(mi, 2 * mi):
            gens.append(tuple((0,) * j + (1,) if k == i else () for k in range(len(m))))
    return RingModel.build(p, len(m), gens, m)


def principal_ideal_series(model: RingModel, S: GoodSemigroup, n_max: int,
                           limit: int | None = None) -> list[int]:
    """Number of principal ideals of each codimension 0..n_max, by enumeration."""
    model = model.with_truncation(tuple(
        max(a, b) for a, b in zip(model.truncation, required_truncation(model.conductor, n_max))))
    out = [0] * (n_max + 1)
    for n in elements_up_to_norm(S, n_max):
        out[norm(n)] += count_principal_ideals(model, n, limit)
    return out
