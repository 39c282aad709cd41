import pytest

from immcalc.algebra import GradedDims, hilbert_series_free
from immcalc.stable import (
    DimensionError,
    grassmannian_betti,
    grassmannian_presentation,
    imm_cohomology_hilbert,
    normal_euler_class,
    stable_cohomology,
    thom_shift,
)

from oracles import count_monomials, groebner_betti, poly_mul


def test_betti_examples():
    assert grassmannian_betti(5, 10).dims == {0: 1, 2: 1, 4: 1, 6: 1}
    assert grassmannian_betti(6, 8).coeffs() == [1, 0, 1, 0, 2, 0, 1, 0, 1]
    assert grassmannian_betti(4, 4).dims == {0: 1, 2: 2, 4: 1}
    assert grassmannian_betti(3, 10).dims == {0: 1, 2: 1}
    with pytest.raises(DimensionError):
        grassmannian_betti(2, 4)


@pytest.mark.parametrize("d", range(5, 13))
def test_betti_matches_groebner_oracle(d):
    top = 2 * (d - 2)
    assert dict(grassmannian_betti(d, top + 4).dims) == groebner_betti(d)


@pytest.mark.parametrize("d", range(3, 13))
def test_poincare_duality_and_euler(d):
    top = 2 * (d - 2)
    b = grassmannian_betti(d, top)
    assert [b[k] for k in range(top + 1)] == [b[top - k] for k in range(top + 1)]
    n = d // 2
    if d % 2 == 0:
        assert b.euler() == 2 * n
        assert b[2 * n - 2] == 2
    else:
        # Q[e]/(e^{2n}) has 2n classes, all in even degree
        assert b.euler() == 2 * n


def test_normal_euler_class_degree():
    for n in (3, 4, 5):
        eb = normal_euler_class(n)
        assert eb.degree() == 2 * n - 2
        assert grassmannian_presentation(2 * n).relations[1].degree() == 2 * n


def test_thom_shift():
    assert thom_shift(GradedDims(2, {0: 1, 2: 1})).dims == {-2: 1, 0: 1}
    assert thom_shift(GradedDims(0, {})).dims == {}
    s = thom_shift(GradedDims(4, {0: 1, 2: 2, 4: 1}))
    assert s.dims == {-2: 1, 0: 2, 2: 1}
    assert s.positive_part().dims == {2: 1}
    t = grassmannian_betti(8, 12)
    assert thom_shift(thom_shift(t), -2) == t


def test_stable_cohomology_examples():
    assert stable_cohomology(3, 10).generators == ()
    assert stable_cohomology(3, 10).hilbert.coeffs == (1,) + (0,) * 10
    a7 = stable_cohomology(7, 10)
    assert [(g.name, g.degree) for g in a7.generators] == [("kappa_1", 2), ("kappa_2", 4), ("kappa_3", 6), ("kappa_4", 8)]
    a6 = stable_cohomology(6, 10)
    assert sorted((g.name, g.degree) for g in a6.generators) == [
        ("Delta", 2), ("kappa_1", 2), ("kappa_2", 4), ("kappa_3", 6)]
    a4 = stable_cohomology(4, 6)
    assert [(g.name, g.degree) for g in a4.generators] == [("kappa_1", 2)]
    assert a4.aliases == {"a_2": "kappa_1"}
    assert a4.to_json()["hilbert"] == {"N": 6, "coeffs": [1, 0, 1, 0, 1, 0, 1]}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_odd_stable_hilbert_is_kappa_polynomial(n):
    N = 24
    got = stable_cohomology(2 * n + 1, N).hilbert.coeffs
    assert list(got) == count_monomials([2 * i for i in range(1, 2 * n - 1)], [False] * (2 * n - 2), N)


def test_imm_hilbert_examples():
    assert imm_cohomology_hilbert(0, 2, 14).dims == {0: 1, 5: 1, 7: 1, 12: 1}
    d = imm_cohomology_hilbert(2, 2, 12)
    assert d[6] == 4 and d[12] == 11
    with pytest.raises(DimensionError):
        imm_cohomology_hilbert(1, 1, 5)


@pytest.mark.parametrize("g,n", [(1, 2), (3, 2), (2, 3)])
def test_imm_hilbert_matches_brute_force(g, n):
    N = 30
    geom = [1 if k % (4 * n - 2) == 0 else 0 for k in range(N + 1)]
    want = poly_mul([1] + [0] * (4 * n - 4) + [1], [1] + [0] * (4 * n - 2) + [1], N)
    for _ in range(2 * g):
        want = poly_mul(want, geom, N)
    assert imm_cohomology_hilbert(g, n, N).coeffs() == want
