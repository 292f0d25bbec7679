import numpy as np
import pytest

from wholepart import matrixcore as mc
from wholepart import phasespace as ps
from wholepart.sampling import ginibre, random_density_matrix, sample_rngs
from oracles import weyl_star_by_loops, wigner_star_by_loops

ODD = [3, 5, 7, 9]


def herm(rng, n):
    g = ginibre(rng, n)
    return g + g.conj().T


def test_odd_only():
    with pytest.raises(ValueError):
        ps.wigner(np.eye(4), 4)
    with pytest.raises(ValueError):
        ps.PhaseFunction(2, np.zeros((2, 2)))
    with pytest.raises(ValueError):
        ps.PhaseFunction(3, np.zeros((2, 2)))


@pytest.mark.parametrize("n", ODD)
def test_wigner_fixed_values(n):
    assert np.allclose(ps.wigner(np.eye(n), n).values, 1)
    assert np.array_equal(ps.wigner(np.zeros((n, n)), n).values, np.zeros((n, n)))
    rng = np.random.default_rng(n)
    assert ps.wigner(herm(rng, n), n).is_real()
    rho = random_density_matrix(rng, n)
    assert abs(ps.wigner(rho, n).values.sum() - n) <= 1e-9


@pytest.mark.parametrize("n", ODD)
def test_weyl_fixed_values(n):
    expected = np.zeros((n, n))
    expected[0, 0] = n
    assert np.allclose(ps.weyl(np.eye(n), n).values, expected)
    assert np.array_equal(ps.weyl(np.zeros((n, n)), n).values, np.zeros((n, n)))
    rng = np.random.default_rng(n)
    t = ginibre(rng, n)
    parseval = np.sum(np.abs(ps.weyl(t, n).values) ** 2)
    assert abs(parseval - n * np.trace(t.conj().T @ t).real) <= 1e-9 * parseval


@pytest.mark.parametrize("n", ODD)
def test_wigner_inversion(n):
    for rng in sample_rngs(n, 10):
        t = ginibre(rng, n)
        assert np.max(np.abs(ps.wigner_inverse(ps.wigner(t, n)) - t)) <= 1e-9


def test_star_matches_loop_oracles():
    rng = np.random.default_rng(0)
    for n in (3, 5):
        w1, w2 = ps.wigner(ginibre(rng, n), n), ps.wigner(ginibre(rng, n), n)
        assert np.allclose(ps.wigner_star(w1, w2, 1.0).values, wigner_star_by_loops(w1.values, w2.values, n))
        v1, v2 = ps.weyl(ginibre(rng, n), n), ps.weyl(ginibre(rng, n), n)
        assert np.allclose(ps.weyl_star(v1, v2, 1.0).values, weyl_star_by_loops(v1.values, v2.values, n))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_calibration_gives_frozen_constants(n):
    assert ps.calibrate_star(ps.WIGNER, n) == pytest.approx(ps.wigner_star_constant(n), rel=1e-12)
    assert ps.calibrate_star(ps.WEYL, n) == pytest.approx(ps.weyl_star_constant(n), rel=1e-12)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_calibrated_star_reproduces_products(n):
    cw, ch = ps.wigner_star_constant(n), ps.weyl_star_constant(n)
    for rng in sample_rngs(100 + n, 100):
        t, f = ginibre(rng, n), ginibre(rng, n)
        got = ps.wigner_star(ps.wigner(t, n), ps.wigner(f, n), cw).values
        assert np.max(np.abs(got - ps.wigner(t @ f, n).values)) <= 1e-8
        got = ps.weyl_star(ps.weyl(t, n), ps.weyl(f, n), ch).values
        assert np.max(np.abs(got - ps.weyl(t @ f, n).values)) <= 1e-8


def test_star_zero_identity_and_associativity():
    n = 3
    rng = np.random.default_rng(1)
    cw, ch = ps.wigner_star_constant(n), ps.weyl_star_constant(n)
    t, f, x = (ginibre(rng, n) for _ in range(3))
    zero = ps.wigner(np.zeros((n, n)), n)
    assert np.allclose(ps.wigner_star(zero, ps.wigner(t, n), cw).values, 0)
    left = ps.wigner_star(ps.wigner_star(ps.wigner(t, n), ps.wigner(f, n), cw), ps.wigner(x, n), cw)
    right = ps.wigner_star(ps.wigner(t, n), ps.wigner_star(ps.wigner(f, n), ps.wigner(x, n), cw), cw)
    target = ps.wigner(t @ f @ x, n).values
    assert np.max(np.abs(left.values - target)) <= 1e-8
    assert np.max(np.abs(right.values - target)) <= 1e-8
    ident = ps.weyl(np.eye(n), n)
    assert np.allclose(ps.weyl_star(ident, ps.weyl(t, n), ch).values, ps.weyl(t, n).values)
    assert np.allclose(ps.weyl_star(ps.weyl(np.zeros((n, n)), n), ps.weyl(t, n), ch).values, 0)


def test_star_dimension_mismatch():
    with pytest.raises(ValueError):
        ps.wigner_star(ps.wigner(np.eye(3), 3), ps.wigner(np.eye(5), 5), 1.0)
    with pytest.raises(ValueError):
        ps.weyl_star(ps.wigner(np.eye(3), 3), ps.weyl(np.eye(3), 3), 1.0)


@pytest.mark.parametrize("m, n", [(3, 9), (3, 15), (5, 15)])
def test_wigner_ubiquity_selects_one_map(m, n):
    rep = ps.verify_wigner_ubiquity(m, n)
    assert rep.decisive
    assert rep.surviving == ["(alpha, d*beta)"]
    devs = {c.name: c.max_deviation for c in rep.candidates}
    assert devs["(d*alpha, beta)"] > 0.5


@pytest.mark.parametrize("m, n", [(3, 9), (3, 15), (5, 15)])
def test_weyl_ubiquity_selects_one_candidate(m, n):
    rep = ps.verify_weyl_ubiquity(m, n)
    assert rep.decisive
    assert rep.surviving == ["(alpha, d*beta) phase=0 scale=1"]


def test_ubiquity_trivial_case():
    for rep in (ps.verify_wigner_ubiquity(5, 5), ps.verify_weyl_ubiquity(5, 5)):
        assert rep.decisive
        assert len(rep.surviving) == 3


def test_surviving_wigner_map_on_random_density():
    # independent of the unit-basis protocol: a random density and the surviving map
    rng = np.random.default_rng(2)
    m, n = 3, 9
    rho = random_density_matrix(rng, m)
    small = ps.wigner(rho, m)
    big = ps.wigner(mc.embed_matrix(rho, n), n)
    for a in range(m):
        for b in range(m):
            assert abs(big[a, 3 * b] - small[a, b]) <= 1e-9


def test_phase_function_json_layout():
    w = ps.wigner(np.eye(3), 3)
    d = w.to_dict()
    assert d["dim"] == 3
    assert len(d["values"]) == 3 and len(d["values"][0]) == 3
    assert d["values"][1][2] == pytest.approx([1.0, 0.0])
