"""Graph construction, the Jacobi eigensolver, and the structural checks."""

from fractions import Fraction

import numpy as np
import pytest

from gadgetforge import (
    GraphError,
    RegularGraph,
    build_ap,
    check_affine_like,
    check_vertex_expansion,
    load_graph,
    max_common_neighbors,
    save_graph,
    spectral_report,
)
from gadgetforge._jacobi import NoConvergenceError, symmetric_eigenvalues
from gadgetforge._rng import Stream


def k4():
    return RegularGraph(m=4, d=3, adjacency=tuple(
        tuple(u for u in range(4) if u != v) for v in range(4)))


def cycle4():
    return RegularGraph(m=4, d=2,
                        adjacency=((1, 3), (0, 2), (1, 3), (0, 2)))


def single_edge():
    return RegularGraph(m=2, d=1, adjacency=((1,), (0,)))


def test_build_ap_basics(ap3):
    assert ap3.m == 9 and ap3.d == 3
    loops = [v for v in range(9) if v in ap3.adjacency[v]]
    assert sorted(ap3.labels[v] for v in loops) == [(0, 0), (1, 2), (2, 2)]
    build_ap(2)  # the graph itself is fine; only SQR machinery needs odd q
    with pytest.raises(Exception):
        build_ap(4)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_ap_regular_and_symmetric(q):
    g = build_ap(q)  # RegularGraph.__post_init__ enforces symmetry + degree
    assert all(len(row) == q for row in g.adjacency)


def test_graph_validation_rejects_asymmetry():
    with pytest.raises(GraphError):
        RegularGraph(m=2, d=1, adjacency=((1,), (1,)))
    with pytest.raises(GraphError):
        RegularGraph(m=2, d=1, adjacency=((1,), ()))


def test_spectral_ap3(ap3):
    rep = spectral_report(ap3)
    assert rep.multiplicity_of_d == 1
    assert rep.gamma_hat <= 3 ** -0.5 + 1e-6
    assert abs(rep.eigenvalues[-1] - 3) < 1e-9


def test_spectral_ap5():
    rep = spectral_report(build_ap(5))
    assert rep.gamma_hat <= 5 ** -0.5 + 1e-6
    assert rep.multiplicity_of_d == 1


def test_spectral_k4():
    rep = spectral_report(k4())
    assert np.allclose(rep.eigenvalues, [-1, -1, -1, 3], atol=1e-8)
    assert rep.gamma_hat == pytest.approx(1 / 3, abs=1e-8)


def test_jacobi_matches_numpy_oracle():
    rng = np.random.default_rng(7)
    for n in (2, 5, 17, 40):
        a = rng.standard_normal((n, n))
        a = a + a.T
        mine = symmetric_eigenvalues(a)
        ref = np.linalg.eigvalsh(a)
        assert np.allclose(mine, ref, atol=1e-8), n


def test_jacobi_ap_vs_numpy():
    for q in (3, 5, 7):
        m = build_ap(q).adjacency_matrix()
        assert np.allclose(symmetric_eigenvalues(m), np.linalg.eigvalsh(m), atol=1e-8)


def test_jacobi_rejects_bad_input():
    with pytest.raises(ValueError):
        symmetric_eigenvalues(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(NoConvergenceError):
        symmetric_eigenvalues(k4().adjacency_matrix(), max_sweeps=0)


def test_max_common_neighbors_cases(ap3):
    assert max_common_neighbors(ap3) == 1
    assert max_common_neighbors(build_ap(5)) == 1
    assert max_common_neighbors(cycle4()) == 2
    assert max_common_neighbors(single_edge()) == 0


def test_check_affine_like_examples():
    # AP_q-shaped family (m, d, gamma) = (q^4, q^2, 1/q), q = 5
    assert check_affine_like(625, 25, gamma_sq=Fraction(1, 25))
    assert check_affine_like(4, 1, 0.5)
    assert not check_affine_like(10, 10, 0.9)
    with pytest.raises(ValueError):
        check_affine_like(4, 5, 0.5)
    with pytest.raises(ValueError):
        check_affine_like(4, 1, 1.5)


def test_check_affine_like_monotone_in_gamma():
    # shrinking gamma never flips True -> False
    stream = Stream(11)
    for _ in range(300):
        m = 1 + stream.below(400)
        d = 1 + stream.below(m)
        g_hi = Fraction(1 + stream.below(98), 100)
        g_lo = Fraction(1 + stream.below(g_hi.numerator), 100)
        if check_affine_like(m, d, gamma_sq=g_hi ** 2):
            assert check_affine_like(m, d, gamma_sq=g_lo ** 2), (m, d, g_lo, g_hi)


def test_vertex_expansion_full_set_equality(ap3):
    # A = V gives ratio 1 and bound exactly 1
    rep = check_vertex_expansion(ap3, gamma_sq=Fraction(1, 3), samples=40, rng_seed=5)
    assert rep.ok
    assert rep.min_slack >= 0


def test_vertex_expansion_single_vertex_bound(ap3):
    from gadgetforge.graphs import expansion_lower_bound
    bound = expansion_lower_bound(1, 9, Fraction(1, 3))
    assert bound == Fraction(1, Fraction(1, 3) + Fraction(2, 3) * Fraction(1, 9))
    assert 3 >= bound  # |Γ(v)| = 3 for every AP_3 vertex


def test_vertex_expansion_ap5_samples():
    rep = check_vertex_expansion(build_ap(5), gamma_sq=Fraction(1, 5),
                                 samples=500, rng_seed=1)
    assert rep.ok, rep.violations[:3]


def test_vertex_expansion_flags_underestimate(ap3):
    # gamma far too small: the claimed bound exceeds reality somewhere
    rep = check_vertex_expansion(ap3, gamma_sq=Fraction(1, 10 ** 6),
                                 samples=200, rng_seed=3)
    assert not rep.ok


def test_graph_round_trip(tmp_path, ap3):
    path = tmp_path / "g.txt"
    save_graph(ap3, path)
    back = load_graph(path)
    assert back.adjacency == ap3.adjacency
    assert back.labels == ap3.labels
    save_graph(back, tmp_path / "g2.txt")
    assert (tmp_path / "g.txt").read_text() == (tmp_path / "g2.txt").read_text()
