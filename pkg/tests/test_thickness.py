"""Grid sets, peeling, the recursive family, and the pruner."""

from fractions import Fraction
from itertools import combinations

import pytest

from gadgetforge import (
    GridError,
    GridSet,
    build_xn,
    degree_stats,
    inflate,
    load_gridset,
    peel_core,
    save_gridset,
    thickness_prune,
    verify_theorem5,
)
from gadgetforge.thickness import has_unique_element
from gadgetforge._rng import Stream


def full_cube(n, m):
    from gadgetforge.thickness import _all_tuples
    return GridSet(n=n, m=m, elements=frozenset(_all_tuples(m, n)))


def test_x2_contents():
    x = build_xn(2, 3)
    assert x.elements == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_x2_size(m):
    assert len(build_xn(2, m)) == 2 * m - 1


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_recurrence_and_lower_bound(m):
    sizes = {2: len(build_xn(2, m))}
    for n in range(3, 6):
        if m ** n > 4_000_000:
            break
        sizes[n] = len(build_xn(n, m))
        assert sizes[n] == (m - 1) * sizes[n - 1] + m ** (n - 1)
        assert sizes[n] >= n * (m - 1) ** (n - 1)


def test_degree_stats_x2():
    st = degree_stats(build_xn(2, 3))
    assert st.avg_deg == (Fraction(5, 3), Fraction(5, 3))
    assert st.min_deg == (1, 1)
    # construction guarantee: AvgDeg_i >= n (1 - 1/m)^(n-1)
    assert all(a >= 2 * Fraction(2, 3) for a in st.avg_deg)


def test_degree_stats_full_cube():
    st = degree_stats(full_cube(3, 4))
    assert st.avg_deg == (Fraction(4),) * 3
    assert st.min_deg == (4, 4, 4)
    with pytest.raises(GridError):
        degree_stats(GridSet(n=2, m=2, elements=frozenset()))


def test_inflate_tiny():
    x = GridSet(n=2, m=2, elements=frozenset({(0, 1)}))
    assert inflate(x, 2).elements == {(0, 2), (0, 3), (1, 2), (1, 3)}
    assert inflate(x, 1).elements == x.elements


@pytest.mark.parametrize("n,m,s", [(2, 3, 2), (2, 4, 3), (3, 3, 2)])
def test_inflate_scaling_laws(n, m, s):
    x = build_xn(n, m)
    y = inflate(x, s)
    assert len(y) == s ** n * len(x)
    sx, sy = degree_stats(x), degree_stats(y)
    for i in range(n):
        assert sy.avg_deg[i] == s * sx.avg_deg[i]  # AvgDeg scales exactly by s
        assert y.projection_size(i) == s ** (n - 1) * x.projection_size(i)


def test_peel_x2_threshold2_empty():
    # (0,0) is 1-unique first; the cascade empties the whole set
    assert not peel_core(build_xn(2, 3), 2).elements


def test_peel_inflated_x2_threshold3_empty():
    assert not peel_core(inflate(build_xn(2, 3), 2), 3).elements


def test_peel_full_cube_is_witness():
    cube = full_cube(2, 4)
    out = peel_core(cube, 4)
    assert out.elements == cube.elements


def test_peel_result_satisfies_threshold():
    stream = Stream(13)
    for trial in range(20):
        n = 2 + stream.below(2)
        m = 3 + stream.below(3)
        cube = full_cube(n, m)
        keep = frozenset(el for el in cube.elements if stream.below(100) < 70)
        if not keep:
            continue
        t = 2 + stream.below(2)
        out = peel_core(GridSet(n=n, m=m, elements=keep), t)
        if out.elements:
            st = degree_stats(out)
            assert all(d >= t for d in st.min_deg)


def test_peel_order_independent():
    x = inflate(build_xn(3, 3), 2)
    base = peel_core(x, 2).elements
    for seed in range(10):
        assert peel_core(x, 2, order_seed=seed).elements == base


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_x2_reducible_exhaustive(m):
    elements = sorted(build_xn(2, m).elements)
    for r in range(1, len(elements) + 1):
        for subset in combinations(elements, r):
            assert has_unique_element(subset, 2), subset


@pytest.mark.parametrize("n,m", [(3, 2), (4, 2)])
def test_xn_reducible_exhaustive_small(n, m):
    elements = sorted(build_xn(n, m).elements)
    for r in range(1, len(elements) + 1):
        for subset in combinations(elements, r):
            assert has_unique_element(subset, n)


def test_xn_reducible_spot_checks():
    x = build_xn(3, 3)
    assert not peel_core(x, 2).elements  # fixpoint certificate of reducibility
    elements = sorted(x.elements)
    stream = Stream(4)
    for _ in range(1000):
        size = 1 + stream.below(len(elements))
        subset = [elements[i] for i in stream.subset(len(elements), size)]
        assert has_unique_element(subset, 3)


def test_verify_theorem5_cases():
    rep = verify_theorem5(2, 1, "1")
    assert rep.ok and rep.m == 2
    rep = verify_theorem5(2, 1, 0.5)
    assert rep.ok and rep.m == 4
    rep = verify_theorem5(3, 2, 0.5)
    assert rep.ok and rep.m == 12
    with pytest.raises(GridError):
        verify_theorem5(3, 2, 0)


def test_thickness_prune_full_cube_unchanged():
    cube = full_cube(2, 5)
    out = thickness_prune(cube, 0.5, 5)
    assert out.elements == cube.elements


def test_thickness_prune_x2():
    x = build_xn(2, 9)
    d = min(degree_stats(x).avg_deg)
    out = thickness_prune(x, 0.5, d)
    assert len(out) >= Fraction(1, 2) * len(x)
    st = degree_stats(out)
    cut = Fraction(1, 2) * d / 2
    assert all(mn >= cut for mn in st.min_deg)


def test_thickness_prune_inflated_x3():
    x = inflate(build_xn(3, 4), 4)
    d = min(degree_stats(x).avg_deg)
    out = thickness_prune(x, 0.9, d)
    assert len(out) >= Fraction(1, 10) * len(x)


def test_thickness_prune_guards():
    cube = full_cube(2, 3)
    with pytest.raises(GridError):
        thickness_prune(cube, 0.5, 100)  # AvgDeg < d
    with pytest.raises(GridError):
        thickness_prune(cube, 0, 1)


def test_gridset_round_trip(tmp_path):
    x = build_xn(3, 4)
    p1, p2 = tmp_path / "x.txt", tmp_path / "x2.txt"
    save_gridset(x, p1)
    back = load_gridset(p1)
    assert back.elements == x.elements and (back.n, back.m) == (x.n, x.m)
    save_gridset(back, p2)
    assert p1.read_text() == p2.read_text()


def test_gridset_validation():
    with pytest.raises(GridError):
        GridSet(n=2, m=3, elements=frozenset({(0, 3)}))
    with pytest.raises(GridError):
        build_xn(1, 3)
    with pytest.raises(GridError):
        build_xn(8, 9)  # budget
