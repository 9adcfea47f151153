"""Identity testing, nonzero points, and sparse interpolation."""

import pytest

from polyfactor.rational import Q
from polyfactor.sparse import SparsePoly
from polyfactor.parse import parse_poly, parse_product
from polyfactor.pit import (
    ProbeCounter,
    berlekamp_massey,
    find_nonzero_point,
    interpolation_plan,
    sparse_interpolate,
    sparse_pit,
    trivial_hitting_set,
)
from polyfactor.errors import (
    CapError,
    InterpolationFailure,
    ZeroPolynomialError,
)

from conftest import rng_for, random_poly


def test_grid_univariate():
    h = trivial_hitting_set(1, 2)
    assert [tuple(map(int, p)) for p in h.points] == [(1,), (2,), (3,)]


def test_grid_two_vars():
    h = trivial_hitting_set(2, 1)
    assert sorted(tuple(map(int, p)) for p in h.points) == [
        (1, 1),
        (1, 2),
        (2, 1),
        (2, 2),
    ]


def test_grid_hits_every_nonzero():
    rng = rng_for("grid-hits")
    for _ in range(100):
        n = rng.randint(1, 3)
        d = rng.randint(1, 3)
        f = random_poly(rng, n, d, 4)
        grid = trivial_hitting_set(n, f.degree() or 0)
        assert any(f.eval_point(p) for p in grid.points)


def test_grid_cap():
    with pytest.raises(CapError):
        trivial_hitting_set(10, 9, max_size=100)


def test_whitebox_first_probe():
    f = parse_poly("z1*z2")
    assert find_nonzero_point(f, 2, 2) == (Q(1), Q(1))


def test_whitebox_skips_roots():
    f = parse_product("(z1-1)*(z2-1)")
    point = find_nonzero_point(f, 2, 2)
    assert point == (Q(2), Q(2))
    assert f.eval_point(point) != 0


def test_whitebox_budget():
    rng = rng_for("probe-budget")
    for _ in range(30):
        n = rng.randint(1, 4)
        f = random_poly(rng, n, 4, 5)
        d = f.degree() or 0
        counter = ProbeCounter()
        point = find_nonzero_point(f, n, d, counter=counter)
        assert f.eval_point(point) != 0
        assert all(c != 0 for c in point)
        assert counter.count <= n * (d + 1)


def test_whitebox_zero_poly():
    with pytest.raises(ZeroPolynomialError):
        find_nonzero_point(SparsePoly.zero(2), 2, 1)


def test_blackbox_shift_repair():
    f = parse_poly("z1 - z2")
    grid = trivial_hitting_set(2, 1)
    point = find_nonzero_point(
        f.eval_point, 2, 1, mode="blackbox", hitting_set=grid
    )
    assert all(c != 0 for c in point)
    assert f.eval_point(point) != 0


def test_sparse_pit():
    assert sparse_pit(SparsePoly.zero(3))
    assert not sparse_pit(parse_poly("z1 - z1 + 1"))
    expanded = parse_product("(z1+z2)^2") - parse_poly(
        "z1^2 + 2*z1*z2 + z2^2"
    )
    assert sparse_pit(expanded)


def test_plan_shape():
    plan = interpolation_plan(1, 1, 3)
    assert [tuple(map(int, p)) for p in plan.points] == [(1,), (2,)]
    plan = interpolation_plan(2, 2, 4)
    assert [tuple(map(int, p)) for p in plan.points] == [
        (1, 1),
        (2, 3),
        (4, 9),
        (8, 27),
    ]


def test_plan_size_and_prefix():
    rng = rng_for("plan-size")
    for _ in range(20):
        s = rng.randint(1, 20)
        n = rng.randint(1, 5)
        d = rng.randint(1, 8)
        plan = interpolation_plan(s, n, d)
        assert len(plan.points) == 2 * s
        assert len(set(plan.points)) == 2 * s
        bigger = interpolation_plan(s + rng.randint(1, 4), n, d)
        assert bigger.points[: 2 * s] == plan.points


def test_interpolate_worked_example():
    f = parse_poly("3*z1*z2 + 5*z2^2")
    plan = interpolation_plan(2, 2, 2)
    values = [f.eval_point(p) for p in plan.points]
    assert [int(v) for v in values[:2]] == [8, 63]
    assert sparse_interpolate(values, 2, 2, 2) == f


def test_interpolate_zero():
    values = [Q(0)] * 6
    assert sparse_interpolate(values, 3, 2, 4).is_zero()


def test_interpolate_round_trip():
    rng = rng_for("interp-round-trip")
    for _ in range(100):
        n = rng.randint(1, 4)
        d = rng.randint(1, 6)
        f = random_poly(rng, n, d, rng.randint(1, 8), ensure_nonzero=False)
        s = max(1, f.sparsity())
        plan = interpolation_plan(s, n, d)
        values = [f.eval_point(p) for p in plan.points]
        assert sparse_interpolate(values, s, n, d) == f


def test_interpolate_rejects_off_promise():
    # a polynomial with more terms than the declared sparsity bound
    f = parse_poly("z1^3 + z1^2 + z1 + 1")
    plan = interpolation_plan(2, 1, 3)
    values = [f.eval_point(p) for p in plan.points]
    with pytest.raises(InterpolationFailure):
        sparse_interpolate(values, 2, 1, 3)


def test_berlekamp_massey_recurrence():
    # geometric-mixture sequence: roots 6 and 9
    values = [Q(v) for v in (8, 63, 513, 4293)]
    char, L = berlekamp_massey(values)
    assert L == 2
    assert [int(c) for c in char] == [54, -15, 1]
