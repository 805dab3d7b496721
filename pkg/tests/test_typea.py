import random

import pytest

from clusterchar.algebra import canonical_modules, is_isomorphic
from clusterchar.character import cluster_character
from clusterchar.typea import (
    Arc,
    RankTooLarge,
    Triangulation,
    algebra_from_triangulation,
    all_arcs,
    ar_triangle,
    classify,
    crosscheck_remark,
    crossed_arcs,
    e_module,
    enumerate_triangulations,
    is_three_cycle,
    mesh,
    rotate,
    triangles,
)
from oracles import catalan, evaluate, ptolemy_values


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_triangulation_counts_are_catalan(n):
    ts = enumerate_triangulations(n)
    assert len(ts) == catalan(n + 1)
    assert len(set(ts)) == len(ts)


def test_rank_ceiling():
    with pytest.raises(RankTooLarge):
        enumerate_triangulations(8)


def test_triangulation_validation():
    with pytest.raises(ValueError):
        Triangulation(2, (Arc(1, 3), Arc(2, 4)))    # crossing
    with pytest.raises(ValueError):
        Triangulation(2, (Arc(1, 3),))              # too few
    with pytest.raises(ValueError):
        Triangulation(2, (Arc(1, 2), Arc(1, 3)))    # boundary edge
    with pytest.raises(ValueError):
        Arc(3, 1)


def test_serialization():
    fan = Triangulation(3, (Arc(1, 5), Arc(1, 3), Arc(1, 4)))
    assert fan.to_json() == [[1, 3], [1, 4], [1, 5]]
    assert Triangulation.from_json(3, [[5, 1], [1, 3], [1, 4]]) == fan


def test_fan_of_pentagon_gives_linear_a2():
    ta = algebra_from_triangulation(Triangulation(2, (Arc(1, 3), Arc(1, 4))))
    q = ta.algebra.quiver
    assert len(q.arrows) == 1 and not ta.algebra.relations
    assert ta.algebra.dimension == 3


def test_rank_one_is_one_vertex():
    for t in enumerate_triangulations(1):
        ta = algebra_from_triangulation(t)
        assert ta.algebra.n == 1 and not ta.algebra.quiver.arrows


def test_hexagon_has_exactly_two_three_cycles():
    cyc = [t.to_json() for t in enumerate_triangulations(3) if is_three_cycle(algebra_from_triangulation(t))]
    assert cyc == [[[1, 3], [1, 5], [3, 5]], [[2, 4], [2, 6], [4, 6]]]
    t = Triangulation.from_json(3, cyc[0])
    assert (1, 3, 5) in triangles(t)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rotation_has_period_dividing_polygon_size(n):
    for z in all_arcs(n):
        w = z
        for _ in range(n + 3):
            w = rotate(w, n)
        assert w == z


def test_mesh_shapes_on_pentagon():
    sizes = sorted(len(mesh(z, 2)[1]) for z in all_arcs(2))
    assert sizes == [1, 1, 1, 1, 1]   # every pentagon arc has one mesh neighbour
    sizes = sorted(len(mesh(z, 3)[1]) for z in all_arcs(3))
    assert sizes == [1] * 6 + [2] * 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_e_module_dims_are_crossing_counts(n):
    for t in enumerate_triangulations(n):
        ta = algebra_from_triangulation(t)
        for z in all_arcs(n):
            d = e_module(ta, z)
            cross = crossed_arcs(t, z)
            assert d.module.dims == tuple(int(w in cross) for w in t.arcs)
            assert d.module.is_zero() == (z in t)
            assert sum(d.t_mult) == int(z in t)


def test_e_module_examples():
    t = Triangulation(2, (Arc(1, 3), Arc(1, 4)))
    ta = algebra_from_triangulation(t)
    S = canonical_modules(ta.algebra).simples
    assert is_isomorphic(e_module(ta, Arc(2, 4)).module, S[0])
    assert e_module(ta, Arc(1, 3)).t_mult == (1, 0)
    hexfan = Triangulation(3, (Arc(1, 3), Arc(1, 4), Arc(1, 5)))
    long = e_module(algebra_from_triangulation(hexfan), Arc(2, 5))
    assert long.module.total_dim == 2


def test_case_b_and_c_patterns():
    t = Triangulation(3, (Arc(1, 3), Arc(1, 5), Arc(3, 5)))
    ta = algebra_from_triangulation(t)
    seen = set()
    for z in all_arcs(3):
        tri = ar_triangle(ta, z)
        seen.add(classify(t, tri))
        assert crosscheck_remark(ta, tri).passed
    assert seen == {"a", "b", "c"}


def test_wrong_orientation_is_caught():
    t = Triangulation(3, (Arc(1, 3), Arc(1, 4), Arc(1, 5)))
    ta = algebra_from_triangulation(t, orientation=-1)
    assert not all(crosscheck_remark(ta, ar_triangle(ta, z)).passed for z in all_arcs(3))


@pytest.mark.parametrize("n", [2, 3])
def test_characters_match_ptolemy_values(n):
    rng = random.Random(n)
    for t in enumerate_triangulations(n):
        ta = algebra_from_triangulation(t)
        point = [rng.randint(2, 9) for _ in range(n)]
        expected = ptolemy_values(t, point)
        for z in all_arcs(n):
            value = cluster_character(e_module(ta, z)).value
            assert evaluate(value, point) == expected[(z.i, z.j)], (t.to_json(), z)
