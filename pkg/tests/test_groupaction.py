import pytest
from hypothesis import given, strategies as st

from quantvar.groupaction import (
    GroupError,
    close_generators,
    compose,
    counting_measure,
    has_trivial_isotropy,
    identity,
    invert,
    is_invariant,
    is_transitive,
    orbits,
    verify_group,
)

ROT4 = (1, 2, 3, 0)  # cyclic rotation of a 4-point cycle


def cyclic4():
    # Composition table checked by hand: powers of the rotation.
    e = identity(4)
    r = ROT4
    r2 = compose(r, r)
    r3 = compose(r2, r)
    return verify_group([e, r, r2, r3])


def test_trivial_group_is_valid():
    g = verify_group([identity(3)])
    assert g.order == 1
    assert g.elements[g.identity_index] == (0, 1, 2)


def test_cyclic_four_is_valid():
    g = cyclic4()
    assert g.order == 4
    assert g.degree == 4


def test_missing_square_of_three_cycle_is_not_closed():
    with pytest.raises(GroupError, match="not-closed"):
        verify_group([identity(3), (1, 2, 0)])


def test_missing_identity_rejected():
    with pytest.raises(GroupError, match="missing-identity"):
        verify_group([(1, 0, 2, 3)])


def test_non_bijection_rejected():
    with pytest.raises(GroupError, match="not-a-bijection"):
        verify_group([(0, 0, 1)])


def test_composition_table_is_total():
    g = cyclic4()
    table = g.composition_table()
    assert all(0 <= idx < g.order for row in table for idx in row)


def test_close_generators_three_cycle():
    g = close_generators([(1, 2, 0)])
    assert g.order == 3


def test_close_generators_symmetric_group():
    g = close_generators([(1, 0, 2), (1, 2, 0)])
    assert g.order == 6


def test_close_generators_cap():
    # The full symmetric group on 8 points has 40320 > 10000 elements.
    with pytest.raises(GroupError, match="cap"):
        close_generators([(1, 0, 2, 3, 4, 5, 6, 7), (1, 2, 3, 4, 5, 6, 7, 0)])


def test_orbits_trivial_group_all_singletons():
    g = verify_group([identity(5)])
    assert orbits(g) == [{0}, {1}, {2}, {3}, {4}]
    assert not is_transitive(g)


def test_orbits_transitive_single():
    g = cyclic4()
    assert orbits(g) == [{0, 1, 2, 3}]
    assert is_transitive(g)


def test_orbits_product_of_disjoint_swaps():
    g = close_generators([(1, 0, 3, 2)])
    assert orbits(g) == [{0, 1}, {2, 3}]


def test_orbits_of_plane_reflection():
    # Points at 45, 135, 225, 315 degrees; the reflection angle -> 90-angle
    # swaps 135 and 315 and fixes the other two.
    g = close_generators([(0, 3, 2, 1)])
    assert orbits(g) == [{0}, {1, 3}, {2}]
    assert not is_transitive(g)


def test_counting_measure_uniform_and_invariant():
    points = ["p0", "p1", "p2", "p3"]
    measure = counting_measure(points)
    assert measure.total() == 4.0
    assert all(w == 1.0 for w in measure.weights.values())
    assert is_invariant(measure, cyclic4(), points)


def test_trivial_isotropy_of_cyclic_group():
    assert has_trivial_isotropy(cyclic4())


def test_nontrivial_isotropy_of_symmetric_group():
    g = close_generators([(1, 0, 2), (1, 2, 0)])
    assert not has_trivial_isotropy(g)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_isotropy_base_point_immaterial_for_transitive_groups(n):
    rotation = tuple((i + 1) % n for i in range(n))
    g = close_generators([rotation])
    assert is_transitive(g)
    verdicts = {has_trivial_isotropy(g, base_index=i) for i in range(n)}
    assert verdicts == {True}


def test_transitive_iff_single_orbit():
    for gens in [[(1, 0, 2)], [(1, 2, 0)], [(1, 0, 3, 2)], [ROT4]]:
        g = close_generators(gens)
        assert is_transitive(g) == (len(orbits(g)) == 1)


@st.composite
def permutations(draw, n):
    perm = draw(st.permutations(list(range(n))))
    return tuple(perm)


@given(st.integers(2, 5).flatmap(lambda n: st.lists(permutations(n), min_size=1, max_size=3)))
def test_closure_output_is_a_valid_group(gens):
    g = close_generators(gens)
    assert verify_group(g.elements).order == g.order
    points = [f"p{i}" for i in range(g.degree)]
    assert is_invariant(counting_measure(points), g, points)


@given(st.integers(2, 5).flatmap(lambda n: st.lists(permutations(n), min_size=1, max_size=3)))
def test_inverses_and_products_stay_inside(gens):
    g = close_generators(gens)
    elems = set(g.elements)
    for p in g.elements:
        assert invert(p) in elems
        for q in g.elements:
            assert compose(p, q) in elems
