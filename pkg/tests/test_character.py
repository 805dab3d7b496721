import pytest

from clusterchar.algebra import (
    Quiver,
    build_algebra,
    canonical_modules,
    indecomposables,
    is_projective,
    ar_sequence,
    zero_module,
)
from clusterchar.character import (
    EXCHANGE_SIGN,
    BMatrix,
    DecoratedObject,
    b_matrix,
    c_prime,
    check_f_identities,
    check_index_identities,
    check_injective_g,
    check_undecorated,
    cluster_character,
    g_vector,
    index,
    verify_theorem,
)
from clusterchar.grassmann import f_polynomial
from clusterchar.laurent import LaurentPoly, monomial, substitute_yhat
from clusterchar.typea import algebra_from_triangulation, all_arcs, ar_triangle, enumerate_triangulations
from conftest import FIXTURES, a2, one_vertex, three_cycle
from oracles import classical_a2_variables


def test_b_matrix_examples():
    assert b_matrix(one_vertex()).entries == ((0,),)
    assert b_matrix(a2()).entries == ((0, -1), (1, 0))
    cyc = b_matrix(three_cycle()).entries
    plain = ((0, 1, -1), (-1, 0, 1), (1, -1, 0))
    assert cyc == tuple(tuple(EXCHANGE_SIGN * x for x in row) for row in plain)


def test_b_matrix_must_be_skew():
    with pytest.raises(ValueError):
        BMatrix(((0, 1), (1, 0)))


def test_g_vector_examples():
    alg = a2()
    assert g_vector(zero_module(alg)) == (0, 0)
    S1, S2 = canonical_modules(alg).simples
    assert g_vector(S1) == (-1, 0)
    assert g_vector(S2) == (1, -1)
    semisimple = build_algebra(Quiver.from_edges(2, []), [], 5)
    assert [g_vector(S) for S in canonical_modules(semisimple).simples] == [(-1, 0), (0, -1)]


def test_injectives_have_negative_unit_g_vectors(fixture_algebra):
    assert all(v.passed for v in check_injective_g(fixture_algebra))


def test_c_prime_examples():
    alg = a2()
    assert c_prime(zero_module(alg)).value == 1
    values = {c_prime(x).value for x in indecomposables(alg)}
    values |= {LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)}
    assert values == {LaurentPoly(2, d) for d in classical_a2_variables()}
    S = canonical_modules(one_vertex()).simples[0]
    assert c_prime(S).render() == "2*x1^-1"


def test_cluster_character_decorations():
    alg = a2()
    assert cluster_character(DecoratedObject(zero_module(alg), (0, 1))).render() == "x2"
    S1 = canonical_modules(alg).simples[0]
    plain = cluster_character(DecoratedObject(S1, (0, 0))).value
    assert plain == c_prime(S1).value
    decorated = cluster_character(DecoratedObject(S1, (1, 1))).value
    assert decorated == plain * monomial((1, 1))
    with pytest.raises(ValueError):
        DecoratedObject(S1, (0, -1))


def test_character_is_index_monomial_times_substituted_f():
    for ta, tri in ((ta, ar_triangle(ta, z)) for t in enumerate_triangulations(3)
                    for ta in [algebra_from_triangulation(t)] for z in all_arcs(3)):
        z = tri.ez
        B = b_matrix(ta.algebra)
        F = f_polynomial(z.counting_model).value
        assert cluster_character(z).value == monomial(index(z)) * substitute_yhat(F, B.entries)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_f_identities_on_fixtures(name):
    alg = FIXTURES[name]()
    for x in indecomposables(alg):
        if not is_projective(x):
            assert check_f_identities(alg, ar_sequence(x)).passed
    for k in range(alg.n):
        assert check_f_identities(alg, ("P", k)).passed
        assert check_f_identities(alg, ("I", k)).passed
    with pytest.raises(ValueError):
        check_f_identities(alg, ("X", 0))


def test_index_identities_trivial_case():
    alg = a2()
    z = DecoratedObject(zero_module(alg), (0, 0))
    assert check_index_identities(z, z, z).passed


def test_undecorated_identity_holds_for_hereditary_a2():
    S1 = canonical_modules(a2()).simples[0]
    assert check_undecorated(ar_sequence(S1)).passed


def test_undecorated_identity_fails_on_cycle():
    alg = three_cycle()
    verdicts = [check_undecorated(ar_sequence(x)) for x in indecomposables(alg) if not is_projective(x)]
    assert verdicts and not any(v.passed for v in verdicts)
    assert verdicts[0].lhs != verdicts[0].rhs


def _pentagon_index_failures(sign):
    bad = 0
    for t in enumerate_triangulations(2):
        ta = algebra_from_triangulation(t)
        B = b_matrix(ta.algebra, sign)
        for z in all_arcs(2):
            tri = ar_triangle(ta, z)
            bad += not check_index_identities(tri.ez, tri.esigma, tri.ey, B).passed
    return bad


def test_sign_convention_is_pinned():
    assert EXCHANGE_SIGN == -1
    assert _pentagon_index_failures(-1) == 0
    assert _pentagon_index_failures(1) > 0


def test_theorem_verdict_reports_both_sides():
    t = enumerate_triangulations(2)[0]
    ta = algebra_from_triangulation(t)
    tri = ar_triangle(ta, all_arcs(2)[0])
    wrong = b_matrix(ta.algebra, 1)
    v = verify_theorem(tri.esigma, tri.ez, tri.ey, B=wrong)
    ok = verify_theorem(tri.esigma, tri.ez, tri.ey)
    assert ok.passed and ok.lhs == ok.rhs
    if not v.passed:
        assert v.lhs != v.rhs and v.to_json()["lhs"] == v.lhs
