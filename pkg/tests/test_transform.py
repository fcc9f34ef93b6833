from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontic_toy.errors import IllFormed, UndefinedForVariant
from ontic_toy.joint import canonicalize_joint, ontic_equal
from ontic_toy.model import standard_four_domain, standard_two_domain
from ontic_toy.states import Leaf, Superpose
from ontic_toy.transform import (PRIMITIVES, apply, compose, composition_table, dense_coding_set,
                                 equal_up_to_sign, group_closure, named, primitive)
from ontic_toy.values import Signed

from conftest import value

TWO = standard_two_domain()
FOUR = standard_four_domain()


def act(name, text, config=TWO, system=1):
    return apply(named(name, config), value(text, config), config, system).render()


def test_permutation_examples():
    assert act("Px", "|0>_x") == "|1>_x"
    assert act("Px", "|1>_y") == "-|1>_y"
    assert act("Px", "|0>_y") == "|0>_y"
    assert act("Pxz", "|1>_y", FOUR) == "-|1>_y"
    assert act("Pxz", "|0>_z", FOUR) == "|1>_z"
    assert act("Txy", "|1>_x") == "|1>_y"


def test_on_joint_states():
    assert act("Px", "C+1^xx") == "A+1^xx"
    assert act("Py", "C+1^xx") == "C-1^xx"
    assert act("PyPx", "C+1^xx") == "A-1^xx"
    assert act("Px", "|0>_x|1>_y", system=2) == "-|0>_x|1>_y"


def test_undefined_for_variant():
    with pytest.raises(UndefinedForVariant):
        named("Px", FOUR)
    with pytest.raises(UndefinedForVariant):
        named("Pxz", TWO)
    with pytest.raises(UndefinedForVariant):
        named("Qx", TWO)


def test_bad_system_index():
    with pytest.raises(IllFormed):
        apply(named("Px", TWO), value("C+1^xx", TWO), TWO, system=3)


def test_compositions():
    px, py, i = named("Px", TWO), named("Py", TWO), named("I", TWO)
    assert equal_up_to_sign(compose(px, px), i)
    assert compose(i, py) == py
    assert equal_up_to_sign(compose(py, px), compose(px, py))
    assert not equal_up_to_sign(px, py)


def test_composition_table_matches_application():
    for config in (TWO, FOUR):
        gens = [primitive(n, config) for n in PRIMITIVES[config.variant] if n != "I"]
        elements = group_closure(gens, config)
        table = composition_table(elements, config)
        by_name = {e.name: e for e in elements}
        for (a, b), c in table.items():
            for k in config.basis_states():
                lhs = apply(by_name[a], apply(by_name[b], Signed(1, k), config), config)
                assert ontic_equal(lhs, apply(by_name[c], Signed(1, k), config), config)


def _all_signed(config):
    return [Signed(s, k) for k in config.basis_states() for s in (1, -1)]


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_bijective_on_signed_states(config):
    states = _all_signed(config)
    for name in PRIMITIVES[config.variant]:
        t = primitive(name, config)
        images = [apply(t, s, config) for s in states]
        assert sorted(map(repr, images)) == sorted(map(repr, states))


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_commutes_with_superposition(config):
    for name in PRIMITIVES[config.variant]:
        t = primitive(name, config)
        for e, op in cartesian(config.edges, (1, -1)):
            for a, b in [(0, 1), (1, 0)]:
                left = value(f"|{a}>_{e.source}", config)
                right = value(f"|{b}>_{e.source}", config)
                before = canonicalize_joint(Superpose(e.kind, op, Leaf(left), Leaf(right)), config)
                moved = Superpose(e.kind, op, Leaf(apply(t, left, config)), Leaf(apply(t, right, config)))
                assert apply(t, before, config) == canonicalize_joint(moved, config), (name, e, op, a)


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_dense_coding_images_are_disjoint(config):
    shared = value("C+1^xx", config)
    images = [apply(g, shared, config) for g in dense_coding_set(config)]
    assert len({img.body for img in images}) == 4
    assert not any(ontic_equal(a, b, config) for i, a in enumerate(images) for b in images[i + 1:])


corr = st.sampled_from(["C+1^xx", "C-1^xx", "A+1^xx", "A-1^xx", "C+1^xy", "A-1^xy"])


@settings(max_examples=100, deadline=None)
@given(corr, st.sampled_from(["I", "Px", "Py", "Txy", "PyPx"]), st.sampled_from((1, 2)))
def test_local_action_agrees_with_expansion(state, name, system):
    # acting on the correlated label equals acting on its product expansion
    from ontic_toy.joint import expand
    t = named(name, TWO)
    sup = expand(value(state, TWO))
    moved = Superpose(sup.kind, sup.op, Leaf(apply(t, sup.left.value, TWO, system)),
                      Leaf(apply(t, sup.right.value, TWO, system)))
    assert apply(t, value(state, TWO), TWO, system) == canonicalize_joint(moved, TWO)
