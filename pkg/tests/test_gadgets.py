"""Gadget construction, the SQR coloring, and Disjointness plumbing."""

from itertools import combinations
import math

import pytest

from gadgetforge import (
    Coloring,
    DisjGadget,
    GadgetError,
    UNDEF,
    build_gadget_from_colored_graph,
    build_sqr_coloring,
    build_sqr_gadget,
    eval_disj,
    eval_sqr,
    is_balanced,
    load_coloring,
    load_gadget,
    rank_colex,
    save_coloring,
    save_gadget,
    unrank_colex,
    verify_subfunction,
)
from gadgetforge.algebra import ExtContext
from gadgetforge.gadgets import find_subfunction_violation
from gadgetforge.graphs import RegularGraph


def test_is_balanced():
    assert is_balanced(Coloring((1,) * 5 + (0,) * 4))      # 3 <= 5 <= 6
    assert not is_balanced(Coloring((1,) * 2 + (0,) * 7))  # 2 < 3
    assert not is_balanced(Coloring((1,) * 7 + (0,) * 2))


def test_sqr_coloring_q3(sqr3):
    # 1 + w*0 = 1 is a square, so the a=0 column is all ones
    assert sqr3.bits[0:3] == (1, 1, 1)
    assert sqr3.ones() == 3  # q * #{a : 1 + wa square}, one good a at q=3
    assert is_balanced(sqr3)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_sqr_coloring_column_structure(q):
    c = build_sqr_coloring(q)
    for a in range(q):
        column = {c.bits[a * q + b] for b in range(q)}
        assert len(column) == 1  # color depends on a only
    assert c.ones() % q == 0
    if q >= 11:  # balancedness asserted above the calibration threshold
        assert is_balanced(c)


def test_sqr_coloring_balanced_at_101():
    assert is_balanced(build_sqr_coloring(101))


def test_sqr_rejects_even_q():
    from gadgetforge.algebra import FieldError
    with pytest.raises(FieldError):
        build_sqr_coloring(2)


def test_gadget_cell_on_demand(ap3, sqr3, gadget3):
    from gadgetforge.gadgets import gadget_cell
    for u in range(9):
        for v in range(9):
            assert gadget_cell(ap3, sqr3, u, v) == gadget3.value(u, v)


def test_gadget_from_ap3(ap3, sqr3, gadget3):
    assert gadget3.defined_count() == 54
    # definedness pattern is exactly {x != u}
    for u in range(9):
        for v in range(9):
            if u == v:
                assert gadget3.value(u, v) == UNDEF
            else:
                assert (gadget3.value(u, v) != UNDEF) == (u // 3 != v // 3)


def test_gadget_all_ones_coloring(ap3):
    gd = build_gadget_from_colored_graph(ap3, Coloring((1,) * 9))
    vals = {gd.value(u, v) for u in range(9) for v in range(9) if gd.value(u, v) != UNDEF}
    assert vals == {1}


def test_gadget_rejects_two_common_neighbors():
    cycle = RegularGraph(m=4, d=2, adjacency=((1, 3), (0, 2), (1, 3), (0, 2)))
    with pytest.raises(GadgetError):
        build_gadget_from_colored_graph(cycle, Coloring((0, 1, 0, 1)))


def test_gadget_symmetry_and_witness(ap3, sqr3, gadget3):
    sets = [frozenset(row) for row in ap3.adjacency]
    for u in range(9):
        for v in range(9):
            assert gadget3.value(u, v) == gadget3.value(v, u)
            if u != v and gadget3.value(u, v) != UNDEF:
                (w,) = sets[u] & sets[v]  # recompute the witness independently
                assert sqr3.bits[w] == gadget3.value(u, v)


def test_eval_sqr_cases():
    ctx = ExtContext.for_prime(3)
    a = ctx.elem(2, 1)
    assert eval_sqr(a, a) == 1  # 0 is a square
    for delta in range(1, 3):  # nonzero base-field differences are squares
        assert eval_sqr(a, a - ctx.elem(delta, 0)) == 1
    ones = sum(eval_sqr(x, y) for x in ctx.all_elements() for y in ctx.all_elements())
    assert ones == 45 and 81 - ones == 36  # 9 diagonal + 9*4 off-diagonal ones


@pytest.mark.parametrize("q", [3, 5])
def test_subfunction(q):
    assert verify_subfunction(build_sqr_gadget(q), q)


def test_subfunction_detects_flip(ap3, sqr3):
    gd = build_gadget_from_colored_graph(ap3, sqr3.flipped(4))
    witness = find_subfunction_violation(gd, 3)
    assert witness is not None
    u, v = witness
    assert gd.value(u, v) != UNDEF


def test_colex_round_trip():
    for m, k in [(6, 3), (10, 4), (20, 2), (8, 0), (5, 5)]:
        for r in range(math.comb(m, k)):
            s = unrank_colex(r, m, k)
            assert len(s) == k and rank_colex(s) == r
    with pytest.raises(GadgetError):
        unrank_colex(math.comb(6, 3), 6, 3)


def test_eval_disj_cases():
    d = DisjGadget(m=4, k=2)
    assert eval_disj(d, d.rank((0, 1)), d.rank((2, 3))) == 1
    assert eval_disj(d, d.rank((0, 1)), d.rank((1, 2))) == 0
    # each row has exactly binom(m-k, k) disjoint partners
    for a in combinations(range(4), 2):
        row = sum(eval_disj(d, d.rank(a), r) for r in range(d.side))
        assert row == math.comb(2, 2) == 1
    total = sum(eval_disj(d, ra, rb) for ra in range(d.side) for rb in range(d.side))
    assert total == 6  # 3 unordered disjoint pairs, both orders


def test_gadget_round_trip(tmp_path, gadget3):
    p1, p2 = tmp_path / "g.txt", tmp_path / "g2.txt"
    save_gadget(gadget3, p1)
    back = load_gadget(p1)
    assert (back.cells == gadget3.cells).all()
    save_gadget(back, p2)
    assert p1.read_text() == p2.read_text()


def test_coloring_round_trip(tmp_path, sqr3):
    path = tmp_path / "c.txt"
    save_coloring(sqr3, path)
    assert load_coloring(path) == sqr3
