import pytest

from conftest import MODELS, model, semigroup
from singzeta.errors import InvalidSemigroup, TruncationTooSmall, WorkLimitExceeded
from singzeta.oracle import (
    ZERO_DIVISOR,
    RingModel,
    algebra_closure_basis,
    check_conductor,
    count_principal_ideals,
    extract_small_elements,
    h_dim_oracle,
    modulus_ring_model,
    principal_ideal_series,
    required_truncation,
    semigroup_from_model,
    value_vector,
    verify_model,
    work_limit,
)
from singzeta.ratfun import series_expand
from singzeta.semigroup import box, from_modulus, h_dim
from singzeta.universal import counting_ca


def pivots(basis):
    return sorted(next(j for j, x in enumerate(row) if x) for row in basis)


def test_closure_of_cusp():
    m = model("cusp_model_p3").with_truncation((8,))
    # k[t^2, t^3] mod t^8 is spanned by 1, t^2, ..., t^7
    assert pivots(algebra_closure_basis(m)) == [0, 2, 3, 4, 5, 6, 7]


def test_closure_of_node():
    m = model("node_model_p3").with_truncation((4, 4))
    # constants agree on both branches; everything else is free
    assert len(algebra_closure_basis(m)) == 1 + 3 + 3


def test_closure_of_constants_only():
    m = RingModel.build(2, 1, [], (0,), (4,))
    assert len(algebra_closure_basis(m)) == 1


def test_value_vector():
    m = model("triple_model_p2")
    x = m.element([[0, 1], [0], [0, 1]])
    y = m.element([[0], [0, 1], [0, 1]])
    assert value_vector(x + y * y) == (1, 2, 1)
    assert value_vector(x * y) == ZERO_DIVISOR
    assert value_vector(x + y) == ZERO_DIVISOR  # (t, t, 0) over F_2
    assert value_vector(m.element([[1], [0, 0, 1], [1]])) == (0, 2, 0)


@pytest.mark.parametrize("model_name, sg_name", MODELS)
def test_extracted_semigroup_matches_fixture(model_name, sg_name):
    assert semigroup_from_model(model(model_name)) == semigroup(sg_name)


def test_small_field_misses_values():
    small = extract_small_elements(model("triple_model_p2"))
    assert (1, 1, 1) not in small
    assert (1, 1, 1) in extract_small_elements(model("triple_model_p3"))


@pytest.mark.parametrize("model_name, sg_name", MODELS)
def test_h_dim_oracle_agrees(model_name, sg_name):
    S = semigroup(sg_name)
    m = model(model_name)
    m = m.with_truncation(tuple(2 * c + 2 for c in m.conductor))
    for n in box(tuple(c + 1 for c in S.conductor)):
        assert h_dim_oracle(m, n) == h_dim(S, n), n


@pytest.mark.parametrize("name, n, want", [
    ("node_model_p2", (1, 1), 1),      # q - 1
    ("node_model_p3", (1, 1), 2),
    ("cusp_model_p3", (2,), 3),        # t^2 + a t^3
    ("cusp_model_p3", (0,), 1),
    ("triple_model_p3", (1, 1, 2), 6),
    ("triple_model_p3", (1, 1, 1), 3),
])
def test_count_examples(name, n, want):
    m = model(name)
    m = m.with_truncation(required_truncation(m.conductor, sum(n)))
    assert count_principal_ideals(m, n) == want


def test_count_needs_truncation():
    m = model("cusp_model_p3").with_truncation((4,))
    with pytest.raises(TruncationTooSmall):
        count_principal_ideals(m, (3,))
    with pytest.raises(TruncationTooSmall):
        h_dim_oracle(m, (3,))


def test_work_limit(monkeypatch):
    m = model("cusp_model_p3")
    with pytest.raises(WorkLimitExceeded):
        extract_small_elements(m, limit=5)
    monkeypatch.setenv("SINGZETA_WORK_LIMIT", "42")
    assert work_limit() == 42
    assert work_limit(7) == 7


def test_bad_conductor_is_reported():
    m = RingModel.build(3, 1, [((0, 0, 1),), ((0, 0, 0, 1),)], (1,))
    assert check_conductor(m)
    with pytest.raises(InvalidSemigroup):
        extract_small_elements(m)


@pytest.mark.parametrize("kwargs", [
    dict(p=4, d=1, generators=[((0, 1),)], conductor=(0,)),
    dict(p=2, d=1, generators=[((1, 1),)], conductor=(0,)),
    dict(p=2, d=2, generators=[((0, 1),)], conductor=(0, 0)),
])
def test_model_validation(kwargs):
    with pytest.raises(ValueError):
        RingModel.build(**kwargs)


@pytest.mark.parametrize("model_name, sg_name", MODELS)
def test_verify_model_passes(model_name, sg_name):
    report = verify_model(model(model_name), semigroup(sg_name), max_norm=4)
    assert report.ok and not report.skipped
    assert all(r.status == "PASS" for r in report.rows)


def test_verify_model_skips_small_field():
    report = verify_model(model("triple_model_p2"), semigroup("triple"))
    assert report.skipped and report.ok
    assert "(1, 1, 1)" in report.rows[0].got


@pytest.mark.parametrize("mult, p", [([1, 1], 2), ([2], 3), ([2, 1], 2), ([1, 1, 1], 3)])
def test_modulus_rings(mult, p):
    S = from_modulus(mult)
    m = modulus_ring_model(mult, p)
    assert semigroup_from_model(m) == S
    assert principal_ideal_series(m, S, 4) == series_expand(counting_ca(S, p), 4)
